#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylab/box_mean.hpp"
#include "weylab/weyl_sum.hpp"

namespace weylab {

// Unspecified absolute constants from the structure/continuity lemmas.
// Every report echoes the values used.
struct ArcConstants {
    double c = 0.125;   // continuity neighbourhood scale
    double C = 4.0;     // N >= C p coupling
    double gamma = 0.5; // |T| >= gamma sqrt(p) threshold
    double Gamma = 1.0; // delta >= 2 Gamma p^{-nu} log p coupling
};

struct RationalApprox {
    long long q = 1;                    // modulus (product of the factors below)
    std::vector<long long> q_factors;   // d = 2: {q}; d >= 3: q_2 .. q_d
    std::vector<long long> numerators;  // nearest a_j to x_j q
    std::vector<double> errors;         // |x_j - a_j / q|
    std::vector<double> envelopes;      // allowed error per coordinate
    bool truncated = false;             // d >= 3 search hit the modulus cap
};

struct DetectionResult {
    std::optional<RationalApprox> witness;
    bool truncated = false;  // d >= 3: enumeration stopped at the modulus cap
};

// Finds the rational structure forced on x by |S_d(x;N)| >= A: denominators
// q <= (N/A)^2 N^0.01 (d = 2) or factored moduli with the power-full
// classification (d >= 3). Absence is a valid result: the sum is then small.
DetectionResult detect_rational_structure(const TorusPoint& x, long long N, double A,
                                          long long modulus_cap = 1000000);

struct LevelSetEstimate {
    long long d = 0, N = 0;
    double A = 0.0;
    double delta = 0.0;
    std::vector<double> xi;
    double measure = 0.0;               // fraction of hits times delta^d
    long long samples = 0, hits = 0;
    double confidence_halfwidth = 0.0;  // binomial, scaled by delta^d
    std::string sampler;
};

// Measure of {x in box : |S_d(x;N)| >= A} by sampling. When abs_values is
// given it receives |S| per sample in deterministic order (CSV export).
LevelSetEstimate level_set_measure(long long d, const BoxSpec& box, double A, long long N,
                                   const std::string& sampler, long long n_samples,
                                   unsigned long long seed = 1,
                                   std::vector<double>* abs_values = nullptr);

struct LevelSetBoundReport {
    long long d = 0, N = 0;
    double A = 0.0, delta = 0.0;
    double envelope = 0.0;      // the lemma's bound with o(1) dropped
    double slack = 0.0;         // N^slack_exponent
    double max_ratio = 0.0;     // max over xi of measured / envelope
    bool within_slack = false;
    std::vector<double> ratios;
};

// Measured level-set mass against the structural envelope
// (d=2: delta^2 N^3 A^-6; d>=3: N^{d^2+1-s(d)} A^{-d^2-1} delta^d),
// reported with a declared slack exponent, never hard-asserted.
LevelSetBoundReport check_levelset_bounds(long long d, long long N, double A, double delta,
                                          long long xi_samples, long long mc_samples,
                                          double slack_exponent = 0.1,
                                          unsigned long long seed = 1);

struct ContinuityReport {
    long long p = 0, a = 0, b = 0, N = 0;
    double c = 0.0;
    long long samples = 0;
    double min_gauss_ratio = 0.0;   // min |G(x)| sqrt(p) / N over samples
    double rational_ratio = 0.0;    // |G(a/p, b/p)| sqrt(p) / N
    double max_continuity_ratio = 0.0;  // |S(x)-S(u/p)| over its envelope
};

// Samples (x1, x2) with |x1 - a/p| <= c/N, |x2 - b/p| <= c/N^2 and reports
// how far |G| drops below its rational-point value, plus the observed
// constant in the continuity inequality.
ContinuityReport gauss_continuity_check(long long p, long long a, long long b, long long N,
                                        double c, long long samples,
                                        double C_coupling = 4.0, unsigned long long seed = 1);

struct FieldScanReport {
    long long d = 0, p = 0;
    double gamma = 0.0;
    long long domain = 0;        // #Z_d
    long long hits = 0;          // u in Z_d with |T| >= gamma sqrt(p)
    double density = 0.0;        // hits / p^d
    long long box_side = 0;
    std::vector<long long> box_corner;
    long long box_hits = 0;
    double box_density = 0.0;    // box_hits / L^d
};

// Exhaustive census of |T_{d,p}(u)| >= gamma sqrt(p) over u in Z_d, globally
// and inside a sub-box (side L, default floor(p^0.8)).
FieldScanReport prime_field_scan(long long d, long long p, double gamma,
                                 long long box_side = 0,
                                 const std::vector<long long>* box_corner = nullptr,
                                 unsigned long long seed = 1);

struct MonomialCurveReport {
    long long p = 0, k = 0, L = 0;
    std::vector<long long> a, corner;
    long long count = 0;          // exact #{lambda: (a_1 lambda, ..., a_k lambda^k) in box}
    double threshold = 0.0;       // L^k p^{1-k} / 2
    bool meets_threshold = false;
    bool hypothesis_applies = false;  // L >= C p^{1-1/(2k)} log p (k >= 2), any L (k = 1)
};

// Exact count of lambda in F_p^* whose monomial curve point lies in the box
// with intervals {corner_j + 1, ..., corner_j + L} mod p.
MonomialCurveReport monomial_curve_density(long long p, long long k,
                                           const std::vector<long long>& a, long long L,
                                           const std::vector<long long>& corner,
                                           double C_hyp = 4.0);

struct WitnessReport {
    long long s = 0, d = 0, N = 0;
    double delta = 0.0;
    std::vector<double> xi;
    long long k = 1;              // d >= 3 branch choice
    long long prime = 0;
    long long boxes = 0;          // witness boxes inside the target box
    double volume = 0.0;          // their total volume
    double min_abs_sum = 0.0;     // min sampled |S| over the witness set
    double lower_bound = 0.0;     // volume * min |S|^{2s}
    double predicted_kappa = 0.0; // exponent claimed by the matching theorem
    ArcConstants constants;
    long long sampled_points = 0;
};

// Builds the near-rational witness set inside B(xi, delta): d = 2 from
// Gauss-sum continuity around b/p, d >= 3 from the large-T_{d,p} census, and
// returns volume x min sampled |S|^{2s} as a lower bound for the mean value.
WitnessReport lower_bound_witness(long long s, long long d, long long N, double delta,
                                  const TorusPoint& xi, long long k = 1,
                                  const ArcConstants& consts = {},
                                  unsigned long long seed = 1);

}  // namespace weylab
