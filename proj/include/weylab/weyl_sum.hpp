#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace weylab {

using cplx = std::complex<double>;

// A point on the d-dimensional unit torus; coordinates reduced to [0,1).
struct TorusPoint {
    std::vector<double> coords;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<double> xs);
    long long dim() const { return static_cast<long long>(coords.size()); }
};

// Complex weights a_1..a_N with cached norms.
struct WeightSeq {
    std::vector<cplx> values;
    double l1 = 0.0, l2 = 0.0, linf = 0.0;

    WeightSeq() = default;
    explicit WeightSeq(std::vector<cplx> v);
    static WeightSeq ones(long long n);
    long long size() const { return static_cast<long long>(values.size()); }
};

// frac(x * m) computed exactly: x is split into its IEEE mantissa and
// exponent, the integer product is reduced modulo a power of two, and only
// the final division rounds. m is given as 128-bit.
double frac_mul_exact(double x, unsigned __int128 m);

// n^j as exact 128-bit integer; throws std::overflow_error past 2^127.
unsigned __int128 pow_u128(unsigned long long n, int j);

enum class PhaseStrategy {
    Direct,      // exact per-term reduction of every x_j n^j
    Recurrence,  // order-d finite differences, resynchronised every 2^16 steps
};

// S_d(x; a, N) = sum_{n=1..N} a_n e(x_1 n + ... + x_d n^d), e(z) = e^{2 pi i z}.
cplx weyl_sum(const TorusPoint& x, const WeightSeq& a, long long N,
              PhaseStrategy strategy = PhaseStrategy::Direct);

// Unit-weight version (avoids materialising an all-ones sequence).
cplx weyl_sum(const TorusPoint& x, long long N,
              PhaseStrategy strategy = PhaseStrategy::Direct);

// G(x1, x2; N) = S_2((x1, x2); N); forwards to weyl_sum bit-for-bit.
cplx gauss_sum(double x1, double x2, long long N);

// Phase of the n-th term, sum_j frac(x_j n^j) mod 1; exact reduction path.
double weyl_phase(const TorusPoint& x, unsigned long long n);

}  // namespace weylab
