#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "weylab/weyl_sum.hpp"

namespace weylab {

// A frequency vector over F_p: modulus p (prime) and residues u_1..u_d.
struct PrimePoint {
    long long p;
    std::vector<long long> u;

    PrimePoint(long long prime, std::vector<long long> residues);
    long long dim() const { return static_cast<long long>(u.size()); }
};

// Root-of-unity table: e_p(k) = e(k/p) for k in [0, p).
std::vector<cplx> unity_table(long long p);

// T_{d,p}(u) = sum_{n=1..p} e_p(u_1 n + ... + u_d n^d), with the polynomial
// evaluated mod p in integer arithmetic before the phase is formed.
cplx rational_complete_sum(const PrimePoint& pt);
cplx rational_complete_sum(const PrimePoint& pt, const std::vector<cplx>& table);

// True unless u = (u_1, 0, ..., 0); the excluded line is where the
// square-root cancellation of incomplete sums genuinely fails.
bool in_Z_d(const std::vector<long long>& u);

struct IncompleteScanReport {
    long long p = 0, d = 0;
    long long samples = 0;              // number of u vectors scanned
    bool exhaustive = false;
    double max_prefix_ratio = 0.0;      // max_M |sum_{n<=M}| / (sqrt(p) log p)
    std::vector<long long> argmax_u;
    double max_window_ratio = 0.0;      // d=2 only: max over windows / sqrt(p)
    std::vector<long long> argmax_window_u;
};

// Scans u in Z_d and all prefix lengths M <= p. d=2 runs the full (a,b) grid
// and also the all-windows maximum; d >= 3 samples `samples` vectors (0 means
// the full grid, guarded by size).
IncompleteScanReport incomplete_ratio_scan(long long d, long long p, long long samples,
                                           unsigned long long seed = 1);

}  // namespace weylab
