#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylab/weyl_sum.hpp"

namespace weylab {

// The integration domain: corner xi and side length delta.
struct BoxSpec {
    TorusPoint xi;
    double delta = 1.0;

    BoxSpec() = default;
    BoxSpec(TorusPoint corner, double side);
};

enum class QuadMode { ExactTorus, MidpointGrid, Qmc };

struct MeanValueEstimate {
    double value = 0.0;
    double error_bound = 0.0;     // rigorous for exact/midpoint, empirical for qmc
    double empirical_error = 0.0; // halving / sample-doubling difference
    std::string scheme;
    std::vector<long long> resolution;  // per-axis node counts, or {samples}
};

// I_{s,d}(delta, xi; a, N) = integral of |S_d|^{2s} over xi + [0, delta]^d.
//  - ExactTorus: delta = 1, xi = 0, integer s; tensor rectangle rule with
//    more nodes per axis than the trigonometric degree, hence exact.
//  - MidpointGrid: node counts from the Lipschitz bound
//    2s ||a||_1^{2s-1} 2 pi N^{j+1}, one halving step as an empirical check.
//  - Qmc: Halton sequence with a sample-doubling error estimate.
MeanValueEstimate integrate_box(double s, long long d, const WeightSeq& a, const BoxSpec& box,
                                long long N, QuadMode mode, double tol = 1e-2,
                                long long node_budget = 1LL << 26);

// Twisted weights a_n e(xi_1 n + ... + xi_d n^d): integrating the twisted
// sequence over [0,delta]^d equals integrating a over xi + [0,delta]^d.
WeightSeq shifted_to_origin(const WeightSeq& a, const TorusPoint& xi, long long N);

struct SupInfResult {
    BoxSpec box;
    MeanValueEstimate estimate;
    bool budget_exhausted = false;
    long long evaluations = 0;
    bool heuristic = true;  // multistart + coordinate descent, no global claim
};

// Heuristic search for the box placement maximising (sup) or minimising
// (inf) the mean value: coarse xi lattice of step delta/2, then coordinate
// descent with shrinking step.
SupInfResult sup_inf_search(double s, long long d, long long N, double delta, bool want_sup,
                            long long eval_budget = 200, long long qmc_samples = 1024,
                            unsigned long long seed = 1);

struct KappaFit {
    double s = 0.0;
    long long d = 0;
    double tau = 0.0;
    std::vector<long long> N_list;
    std::vector<double> log_values;
    double slope = 0.0, intercept = 0.0;
    double residual = 0.0;  // max |fit - data|
    std::string variant;
};

// Least-squares slope of log I(N^-tau; N) against log N over a geometric
// N ladder. variant "origin" at tau = 0 with integer s uses the exact torus
// value (the full-torus mean equals the solution count).
KappaFit empirical_kappa(double s, long long d, double tau, std::vector<long long> N_list,
                         const std::string& variant, double tol = 5e-2,
                         long long qmc_samples = 4096, long long node_budget = 1LL << 26);

struct MajorArcReport {
    long long d = 0, N = 0, samples = 0;
    double c = 0.0;
    double max_abs_phase = 0.0;   // max over samples and n of |x_1 n + ... + x_d n^d|
    double min_re_ratio = 0.0;    // min over samples of Re S / N
    double volume = 0.0;          // vol of the major-arc box C
    double clipped_volume = 0.0;  // vol of C intersected with [-delta, delta]^d
    double delta = 0.0;
};

// Samples x in C = prod_j [-c N^-j, c N^-j] (c < 1/(8d)) and asserts the
// phase bound <= 1/8 and Re S_d(x; N) >= N cos(pi/4) on every sample.
// A violation throws: the bound is unconditional.
MajorArcReport majorarc_witness(long long d, long long N, double c, long long samples,
                                double delta = 1.0, unsigned long long seed = 1);

struct SchrodingerReport {
    double x0 = 0.0, t0 = 0.0, delta = 0.0;
    long long N = 0, t_samples = 0;
    double min_rho = 0.0, max_rho = 0.0;
    double argmin_t = 0.0, argmax_t = 0.0;
    double min_over_upper = 0.0;  // min_t rho / (delta N^{5/4})
    double max_over_lower = 0.0;  // max_t rho / delta
};

// rho(t, [x0, x0+delta]) = integral over the interval of |sum e(xn + tn^2)|^2,
// evaluated exactly (the integrand is a trigonometric polynomial in x), on a
// t grid across [t0, t0 + delta].
SchrodingerReport schrodinger_scan(double x0, double t0, double delta, long long N,
                                   long long t_samples);

}  // namespace weylab
