#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace weylab {

// h in Z^d indexing the inhomogeneous power-sum system.
using PowerSumVector = std::vector<long long>;

struct CountResult {
    long long s = 0, d = 0, N = 0;
    std::optional<PowerSumVector> h;
    std::optional<double> delta;
    long long count = 0;
    double elapsed_sec = 0.0;
    std::string method;
};

// (sum n_i, sum n_i^2, ..., sum n_i^d) over the given tuple, exact.
PowerSumVector power_sum_profile(const std::vector<long long>& tuple, long long d);

// Multiplicity table of s-tuple profiles: profile -> number of ordered
// s-tuples from [1,N]^s realising it. Built from nondecreasing tuples with
// multinomial weights, sharded over the leading entry.
class ProfileTable {
  public:
    ProfileTable(long long s, long long d, long long N, long long mem_budget_bytes);

    long long s() const { return s_; }
    long long d() const { return d_; }
    long long N() const { return N_; }

    long long multiplicity(const PowerSumVector& g) const;
    const std::unordered_map<unsigned __int128, long long>& raw() const { return table_; }

    PowerSumVector unpack(unsigned __int128 key) const;
    unsigned __int128 pack(const PowerSumVector& g) const;  // throws if out of range

    // Per-coordinate profile bounds: coordinate i lies in [s, s N^{i+1}].
    long long coord_min(int i) const;
    long long coord_max(int i) const;

  private:
    long long s_, d_, N_;
    std::vector<int> bits_;      // bit width per coordinate
    std::vector<long long> lo_;  // packing offset per coordinate
    std::unordered_map<unsigned __int128, long long> table_;
};

// Estimated peak bytes for the profile table (pre-flight check).
double estimate_table_bytes(long long s, long long d, long long N);

inline constexpr long long kDefaultMemBudget = 2LL << 30;

// J_{s,d}(N): 2s-tuples in [1,N]^{2s} whose alternating power sums vanish.
// Meet-in-the-middle: sum of squared profile multiplicities.
CountResult count_J(long long s, long long d, long long N,
                    long long mem_budget_bytes = kDefaultMemBudget);

// J_{s,d}(h; N): alternating power sums equal to h. Correlation of the
// profile table with itself at shift h; 0 immediately when |h_i| > 2sN^i.
CountResult count_J_inhom(long long s, long long d, const PowerSumVector& h, long long N,
                          long long mem_budget_bytes = kDefaultMemBudget);

// Box count: tuples with |alternating power sum_i| <= 1/delta for every i.
CountResult count_J_box(long long s, long long d, double delta, long long N,
                        long long mem_budget_bytes = kDefaultMemBudget);

// Brute-force J over all N^{2s} tuples (oracle-grade, small instances only).
CountResult count_J_direct(long long s, long long d, const PowerSumVector* h, long long N,
                           double delta = 0.0);

struct HjSpec {
    long long j = 1;
    long long s = 1, d = 1, N = 1;
    double delta = 1.0;
};

// #H_j = (c_j - 1) prod_{i>j} c_i with c_i = 2 min(floor(1/delta), 2sN^i) + 1:
// vectors (0,..,0,h_j,..,h_d) in the window with h_j != 0.
long long hj_count(const HjSpec& spec);

// The piecewise model for #H_j with delta in [N^{-k-1}, N^{-k}).
double hj_asymptotic(const HjSpec& spec);

struct PartitionReport {
    long long lhs = 0;            // box count J_{s,d}(delta; N)
    long long rhs = 0;            // J(N) + sum_j sum_{h in H_j} J(h; N)
    long long J0 = 0;             // homogeneous term
    std::vector<long long> hj_sums;
    std::vector<long long> hj_sizes;
    bool equal = false;
};

// Exact check of the partition of the box count over {0} and the H_j.
// Mismatch throws: the identity has no tolerance.
PartitionReport verify_partition(long long s, long long d, double delta, long long N,
                                 long long mem_budget_bytes = kDefaultMemBudget);

struct CauchyReport {
    long long lhs = 0;          // sum over H of J(h)
    long long card = 0;         // #H
    long long J2s = 0;          // J_{2s,d}(N)
    bool holds = false;         // lhs^2 <= card * J2s, exact
};

// Cauchy bound for sums of inhomogeneous counts over a finite h-set.
CauchyReport verify_cauchy_lemma(long long s, long long d, long long N,
                                 const std::vector<PowerSumVector>& H,
                                 long long mem_budget_bytes = kDefaultMemBudget);

}  // namespace weylab
