#include "weylab/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace weylab {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        return Rational(std::stoll(s));
    }
    // decimal: sign + integer part + fractional digits over a power of ten
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    long long whole = (ip.empty() || ip == "-" || ip == "+") ? 0 : std::llabs(std::stoll(ip));
    long long num = whole, den = 1;
    for (char c : fp) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("Rational::parse: bad decimal '" + s + "'");
        if (den > INT64_MAX / 10) throw std::overflow_error("Rational::parse: too many digits");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(neg ? -num : num, den);
}

}  // namespace weylab
