#pragma once

#include <cstdint>

#include "weylab/rational.hpp"

namespace weylab {

// Closed-form exponents attached to mean values of Weyl sums. Everything here
// is a pure function of small integers (and alpha), returned exactly where the
// inputs are exact.

// s(d) = d(d+1)/2, the critical moment order.
long long s_of_d(long long d);

// sigma_d(alpha) = (alpha(2d - alpha + 1) - {alpha}(1 - {alpha})) / 2,
// continuous and strictly increasing on [0, d].
double sigma_d(long long d, double alpha);

// Exact evaluation for rational alpha.
Rational sigma_d_exact(long long d, const Rational& alpha);

// The unique alpha in [0, d] with sigma_d(alpha) = s, located by monotone
// bisection to 1e-12. The closed form d + 1/2 - sqrt(d(d+1) - 2s + nu) holds
// with nu = 1/4 - {alpha}(1-{alpha}) and is used as an a-posteriori check in
// the tests, not here (nu depends on the answer).
double alpha_0(long long d, double s);

// sigma_d has constant slope d - k on [k, k+1], so for rational s the
// inverse is the exact rational k + (s - sigma_d(k)) / (d - k).
Rational alpha_0_exact(long long d, const Rational& s);

// eta_{s,d}(l) = (s(d) - s)(d - l + 1)/(d + l + 1) for 1 <= l <= d-1.
double eta(double s, long long d, long long ell);
Rational eta_exact(const Rational& s, long long d, long long ell);

// f(x) = (d + 1 - x) / ((d + x + 1)(d - x)), the per-level cost of trading
// the j-th inhomogeneous saving against the box size.
Rational f_of(long long d, long long x);

// theta(d) = min{ f(d+1-floor(sqrt(2(d+1)))), f(d+1-ceil(sqrt(2(d+1)))) },
// which equals min over l = 1..d-1 of f(l). Exact rational, d >= 2.
Rational theta(long long d);

// nu(d, k) = min{ 1/(2k), 1/(2d - k) } for 1 <= k <= d.
Rational nu_dk(long long d, long long k);

// mu(d) = max over k = 1..d of nu(d, k), d >= 2.
Rational mu(long long d);

// D = min{ 2^(d-1), 2d(d-1) } for d >= 3.
long long big_D(long long d);

// rho(d) = ceil(3 d^2 / 4) - 1.
long long rho(long long d);

}  // namespace weylab
