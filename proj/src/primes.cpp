#include "weylab/primes.hpp"

#include <stdexcept>

namespace weylab {

unsigned long long mulmod_u64(unsigned long long a, unsigned long long b, unsigned long long m) {
    return static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

unsigned long long powmod_u64(unsigned long long a, unsigned long long e, unsigned long long m) {
    unsigned long long r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                                 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    unsigned long long d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (unsigned long long a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                                 29ULL, 31ULL, 37ULL}) {
        unsigned long long x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<long long> primes_in(long long lo, long long hi) {
    std::vector<long long> out;
    for (long long n = lo < 2 ? 2 : lo; n <= hi; ++n)
        if (is_prime_u64(static_cast<unsigned long long>(n))) out.push_back(n);
    return out;
}

long long next_prime(long long n) {
    if (n < 2) return 2;
    for (long long c = n;; ++c) {
        if (c < 0) throw std::overflow_error("next_prime: out of 63-bit range");
        if (is_prime_u64(static_cast<unsigned long long>(c))) return c;
    }
}

}  // namespace weylab
