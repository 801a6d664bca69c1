#include "weylab/exponent.hpp"

#include <cmath>
#include <stdexcept>

namespace weylab {

long long s_of_d(long long d) {
    if (d < 1) throw std::domain_error("s_of_d: d must be >= 1");
    return d * (d + 1) / 2;
}

double sigma_d(long long d, double alpha) {
    if (d < 1) throw std::domain_error("sigma_d: d must be >= 1");
    if (!(alpha >= 0.0 && alpha <= static_cast<double>(d)))
        throw std::domain_error("sigma_d: alpha must lie in [0, d]");
    double fr = alpha - std::floor(alpha);
    return (alpha * (2.0 * d - alpha + 1.0) - fr * (1.0 - fr)) / 2.0;
}

Rational sigma_d_exact(long long d, const Rational& alpha) {
    if (d < 1) throw std::domain_error("sigma_d: d must be >= 1");
    if (alpha < Rational(0) || alpha > Rational(d))
        throw std::domain_error("sigma_d: alpha must lie in [0, d]");
    Rational fr = alpha.frac();
    Rational main = alpha * (Rational(2 * d + 1) - alpha);
    return (main - fr * (Rational(1) - fr)) / Rational(2);
}

double alpha_0(long long d, double s) {
    if (d < 1) throw std::domain_error("alpha_0: d must be >= 1");
    double smax = static_cast<double>(s_of_d(d));
    if (!(s >= 0.0 && s <= smax))
        throw std::domain_error("alpha_0: s must lie in [0, s(d)]");
    double lo = 0.0, hi = static_cast<double>(d);
    // sigma_d is strictly increasing, so plain bisection converges.
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sigma_d(d, mid) < s)
            lo = mid;
        else
            hi = mid;
    }
    double a = 0.5 * (lo + hi);
    // Snap to nearby simple rationals so downstream curve slopes come out
    // exact in the common cases (alpha d = s on (0,1], integer alpha).
    for (long long den = 1; den <= 24; ++den) {
        double snapped = std::round(a * den) / den;
        if (snapped >= 0.0 && snapped <= static_cast<double>(d) &&
            std::abs(sigma_d(d, snapped) - s) < 1e-12 && std::abs(snapped - a) < 1e-9)
            return snapped;
    }
    return a;
}

Rational alpha_0_exact(long long d, const Rational& s) {
    if (d < 1) throw std::domain_error("alpha_0: d must be >= 1");
    if (s < Rational(0) || s > Rational(s_of_d(d)))
        throw std::domain_error("alpha_0: s must lie in [0, s(d)]");
    for (long long k = 0; k < d; ++k) {
        Rational lo = sigma_d_exact(d, Rational(k));
        Rational hi = sigma_d_exact(d, Rational(k + 1));
        if (s <= hi) return Rational(k) + (s - lo) / Rational(d - k);
    }
    return Rational(d);
}

double eta(double s, long long d, long long ell) {
    if (ell < 1 || ell > d - 1) throw std::domain_error("eta: ell must lie in [1, d-1]");
    return (static_cast<double>(s_of_d(d)) - s) * static_cast<double>(d - ell + 1) /
           static_cast<double>(d + ell + 1);
}

Rational eta_exact(const Rational& s, long long d, long long ell) {
    if (ell < 1 || ell > d - 1) throw std::domain_error("eta: ell must lie in [1, d-1]");
    return (Rational(s_of_d(d)) - s) * Rational(d - ell + 1, d + ell + 1);
}

Rational f_of(long long d, long long x) {
    return Rational(d + 1 - x) / (Rational(d + x + 1) * Rational(d - x));
}

static long long isqrt_ll(long long n) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

Rational theta(long long d) {
    if (d < 2) throw std::domain_error("theta: d must be >= 2");
    long long fl = isqrt_ll(2 * (d + 1));
    long long cl = (fl * fl == 2 * (d + 1)) ? fl : fl + 1;
    return rat_min(f_of(d, d + 1 - fl), f_of(d, d + 1 - cl));
}

Rational nu_dk(long long d, long long k) {
    if (k < 1 || k > d) throw std::domain_error("nu: k must lie in [1, d]");
    return rat_min(Rational(1, 2 * k), Rational(1, 2 * d - k));
}

Rational mu(long long d) {
    if (d < 2) throw std::domain_error("mu: d must be >= 2");
    Rational best = nu_dk(d, 1);
    for (long long k = 2; k <= d; ++k) best = rat_max(best, nu_dk(d, k));
    return best;
}

long long big_D(long long d) {
    if (d < 3) throw std::domain_error("big_D: d must be >= 3");
    if (d - 1 >= 62) return 2 * d * (d - 1);
    long long pow2 = 1LL << (d - 1);
    return std::min(pow2, 2 * d * (d - 1));
}

long long rho(long long d) {
    if (d < 1) throw std::domain_error("rho: d must be >= 1");
    return (3 * d * d + 3) / 4 - 1;
}

}  // namespace weylab
