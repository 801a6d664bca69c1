#include "weylab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "weylab/arc_structure.hpp"
#include "weylab/bound_curves.hpp"
#include "weylab/box_mean.hpp"
#include "weylab/exponent.hpp"
#include "weylab/primes.hpp"
#include "weylab/rational_sums.hpp"
#include "weylab/vinogradov.hpp"

namespace weylab {

namespace {

double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = logx.size();
    for (size_t i = 0; i < n; ++i) {
        sx += logx[i]; sy += logy[i]; sxx += logx[i] * logx[i]; sxy += logx[i] * logy[i];
    }
    return (static_cast<double>(n) * sxy - sx * sy) /
           (static_cast<double>(n) * sxx - sx * sx);
}

// 1. Gauss modulus |T_{2,p}(a,b)| = sqrt(p) for every odd prime p <= 101,
//    a in [0,p), b in [1,p). (p = 2 sits outside the p >= 3 hypothesis.)
CriterionResult crit_gauss_modulus() {
    CriterionResult r{1, "gauss-modulus", true, 0, "", true};
    double worst = 0.0;
    for (long long p : primes_in(3, 101)) {
        auto table = unity_table(p);
        double sqp = std::sqrt(static_cast<double>(p));
        for (long long b = 1; b < p && r.pass; ++b) {
            for (long long a = 0; a < p; ++a) {
                cplx T = rational_complete_sum(PrimePoint(p, {a, b}), table);
                double rel = std::abs(std::abs(T) - sqp) / sqp;
                worst = std::max(worst, rel);
                if (rel > 1e-9) { r.pass = false; break; }
            }
        }
        if (!r.pass) break;
    }
    std::ostringstream os;
    os << "odd primes 3..101, all (a,b) with b != 0; worst relative deviation " << worst;
    r.detail = os.str();
    return r;
}

// 2. count_J(2,2,N) = 2N^2 - N: against brute force for N <= 30, against the
//    closed form for N in {100, 500, 2000}.
CriterionResult crit_counting_closed_form() {
    CriterionResult r{2, "counting-closed-form", true, 0, "", true};
    for (long long N = 1; N <= 30 && r.pass; ++N) {
        long long mim = count_J(2, 2, N).count;
        long long direct = count_J_direct(2, 2, nullptr, N).count;
        long long closed = 2 * N * N - N;
        if (mim != closed || direct != closed) {
            r.pass = false;
            r.detail = "mismatch at N=" + std::to_string(N);
        }
    }
    for (long long N : {100LL, 500LL, 2000LL}) {
        if (!r.pass) break;
        long long mim = count_J(2, 2, N).count;
        if (mim != 2 * N * N - N) {
            r.pass = false;
            r.detail = "mismatch at N=" + std::to_string(N);
        }
    }
    if (r.pass) r.detail = "N=1..30 vs brute force, N in {100,500,2000} vs 2N^2-N";
    return r;
}

// 3. Exact-torus quadrature equals count_J within 1e-6 relative.
CriterionResult crit_quadrature_bridge() {
    CriterionResult r{3, "quadrature-count-bridge", true, 0, "", true};
    double worst = 0.0;
    for (long long N : {4LL, 6LL, 8LL, 12LL}) {
        BoxSpec box(TorusPoint({0.0, 0.0}), 1.0);
        auto est = integrate_box(2, 2, WeightSeq::ones(N), box, N, QuadMode::ExactTorus);
        double J = static_cast<double>(count_J(2, 2, N).count);
        double rel = std::abs(est.value - J) / J;
        worst = std::max(worst, rel);
        if (rel > 1e-6) {
            r.pass = false;
            r.detail = "N=" + std::to_string(N) + " relative error " + std::to_string(rel);
            return r;
        }
    }
    r.detail = "N in {4,6,8,12}; worst relative deviation " + std::to_string(worst);
    return r;
}

// 4. Partition of the box count over {0} and the H_j, exact integers.
CriterionResult crit_partition_identity() {
    CriterionResult r{4, "partition-identity", true, 0, "", true};
    for (long long N : {6LL, 8LL, 10LL}) {
        for (double delta : {0.5, 0.2, 0.05}) {
            try {
                auto rep = verify_partition(2, 2, delta, N);
                if (!rep.equal) { r.pass = false; }
            } catch (const std::exception& e) {
                r.pass = false;
                r.detail = e.what();
                return r;
            }
        }
    }
    r.detail = "(s,d)=(2,2), N in {6,8,10}, delta in {0.5,0.2,0.05}, exact equality";
    return r;
}

// 5. Cauchy bound for sums over each H_j, exact integers.
CriterionResult crit_cauchy() {
    CriterionResult r{5, "cauchy-lemma", true, 0, "", true};
    auto run = [&](long long s, long long d, long long N, double delta) {
        long long W = static_cast<long long>(std::floor(1.0 / delta + 1e-9));
        for (long long j = 1; j <= d && r.pass; ++j) {
            // enumerate H_j
            std::vector<PowerSumVector> H;
            PowerSumVector h(static_cast<size_t>(d), 0);
            std::function<void(long long)> rec = [&](long long pos) {
                if (pos > d) { H.push_back(h); return; }
                long long lim = W;
                for (long long i = 0; i < pos; ++i) lim = std::min(lim, INT64_MAX / N);
                long long m = W;
                {
                    __int128 v = 2 * s;
                    for (long long t = 0; t < pos; ++t) v *= N;
                    if (v < m) m = static_cast<long long>(v);
                }
                if (pos < j) { h[static_cast<size_t>(pos - 1)] = 0; rec(pos + 1); }
                else if (pos == j) {
                    for (long long x = -m; x <= m; ++x) {
                        if (!x) continue;
                        h[static_cast<size_t>(pos - 1)] = x;
                        rec(pos + 1);
                    }
                } else {
                    for (long long x = -m; x <= m; ++x) {
                        h[static_cast<size_t>(pos - 1)] = x;
                        rec(pos + 1);
                    }
                }
            };
            rec(1);
            try {
                auto rep = verify_cauchy_lemma(s, d, N, H);
                if (!rep.holds) r.pass = false;
            } catch (const std::exception& e) {
                r.pass = false;
                r.detail = e.what();
            }
        }
    };
    for (long long N : {6LL, 8LL, 10LL})
        for (double delta : {0.5, 0.2, 0.05}) {
            run(1, 1, N, delta);
            run(2, 2, N, delta);
        }
    if (r.pass) r.detail = "(s,d) in {(1,1),(2,2)} x all H_j over the criterion-4 grid";
    return r;
}

// 6. theta(d) and mu(d) against the tabulated rationals for d = 2..10.
CriterionResult crit_tables() {
    CriterionResult r{6, "exponent-tables", true, 0, "", true};
    const std::pair<long long, Rational> theta_table[] = {
        {2, {1, 2}},  {3, {3, 10}}, {4, {3, 14}}, {5, {1, 6}},  {6, {2, 15}},
        {7, {1, 9}},  {8, {2, 21}}, {9, {1, 12}}, {10, {5, 68}}};
    const std::pair<long long, Rational> mu_table[] = {
        {2, {1, 3}},  {3, {1, 4}},  {4, {1, 6}},  {5, {1, 7}},  {6, {1, 8}},
        {7, {1, 10}}, {8, {1, 11}}, {9, {1, 12}}, {10, {1, 14}}};
    for (const auto& [d, v] : theta_table)
        if (theta(d) != v) {
            r.pass = false;
            r.detail = "theta(" + std::to_string(d) + ") = " + theta(d).str() + " != " + v.str();
            return r;
        }
    for (const auto& [d, v] : mu_table)
        if (mu(d) != v) {
            r.pass = false;
            r.detail = "mu(" + std::to_string(d) + ") = " + mu(d).str() + " != " + v.str();
            return r;
        }
    r.detail = "theta and mu reproduce the d = 2..10 tables exactly";
    return r;
}

// 7. sigma_d anchor values.
CriterionResult crit_sigma_anchors() {
    CriterionResult r{7, "sigma-anchors", true, 0, "", true};
    double worst = 0.0;
    for (long long d = 2; d <= 10; ++d) {
        worst = std::max(worst, std::abs(sigma_d(d, 0.0)));
        worst = std::max(worst, std::abs(sigma_d(d, static_cast<double>(d)) -
                                         static_cast<double>(s_of_d(d))));
        for (double alpha : {0.125, 0.37, 0.5, 0.81, 1.0})
            worst = std::max(worst,
                             std::abs(sigma_d(d, alpha) - alpha * static_cast<double>(d)));
        double mid = static_cast<double>(d - 1) / 2.0;
        double expect = static_cast<double>(rho(d)) / 2.0;
        worst = std::max(worst, std::abs(sigma_d(d, mid) - expect));
    }
    r.pass = worst <= 1e-12;
    r.detail = "sigma_d(0), sigma_d(d), sigma_d on (0,1], sigma_d((d-1)/2); worst |dev| " +
               std::to_string(worst);
    return r;
}

// 8. Figure polylines match the plotted segment sets exactly.
CriterionResult crit_figures() {
    CriterionResult r{8, "figure-polylines", true, 0, "", true};
    struct Expect {
        std::string figure;
        size_t curve;
        std::vector<std::array<Rational, 4>> segs;  // lo, hi, slope, intercept
    };
    auto R = [](long long n, long long d = 1) { return Rational(n, d); };
    std::vector<Expect> expects = {
        {"3.1", 0, {{R(0), R(2), R(-1), R(2)}}},
        {"3.1", 1, {{R(0), R(3), R(-3, 2), R(3)}}},
        {"3.1", 2, {{R(0), R(1, 2), R(-2), R(2)},
                     {R(1, 2), R(1), R(0), R(1)},
                     {R(1), R(2), R(-1), R(2)},
                     {R(2), R(3), R(-2), R(4)}}},
        {"3.2", 0, {{R(0), R(3), R(-2), R(3)}}},
        {"3.2", 1, {{R(0), R(2, 3), R(-3), R(3)}}},
        {"3.2", 2, {{R(0), R(4), R(-2), R(3)}}},
        {"3.2", 3, {{R(0), R(1, 3), R(-3), R(3)},
                     {R(1, 3), R(2, 3), R(0), R(2)},
                     {R(2, 3), R(1), R(-3, 2), R(3)},
                     {R(1), R(2), R(-2), R(7, 2)},
                     {R(2), R(3), R(-5, 2), R(9, 2)},
                     {R(3), R(4), R(-3), R(6)}}},
        {"3.3", 0, {{R(0), R(3), R(-7, 3), R(2)}}},
        {"3.3", 1, {{R(0), R(2, 3), R(-3), R(2)}}},
        {"3.3", 2, {{R(0), R(4), R(-2), R(2)}}},
        {"3.3", 3, {{R(0), R(1, 3), R(-3), R(2)},
                     {R(1, 3), R(2, 3), R(0), R(1)},
                     {R(2, 3), R(1), R(-3, 2), R(2)},
                     {R(1), R(3, 2), R(-2), R(5, 2)},
                     {R(3, 2), R(4), R(-3), R(4)}}},
    };
    for (const auto& e : expects) {
        auto curves = figure_polylines(e.figure);
        if (e.curve >= curves.size()) { r.pass = false; r.detail = "missing curve"; return r; }
        const auto& got = curves[e.curve].segments;
        bool ok = got.size() == e.segs.size();
        for (size_t i = 0; ok && i < got.size(); ++i)
            ok = got[i].tau_lo == e.segs[i][0] && got[i].tau_hi == e.segs[i][1] &&
                 got[i].slope == e.segs[i][2] && got[i].intercept == e.segs[i][3];
        if (!ok) {
            r.pass = false;
            r.detail = "figure " + e.figure + " curve " + curves[e.curve].label +
                       " differs from the plotted segments";
            return r;
        }
    }
    r.detail = "figures 3.1/3.2/3.3: all plotted segment sets reproduced exactly";
    return r;
}

// 9. Major-arc witness: phase bound and Re S >= N cos(pi/4), hard.
CriterionResult crit_majorarc(unsigned long long seed) {
    CriterionResult r{9, "major-arc-witness", true, 0, "", true};
    double worst = 1.0;
    for (long long d : {2LL, 3LL}) {
        for (long long N : {1000LL, 100000LL}) {
            try {
                auto rep = majorarc_witness(d, N, 1.0 / (10.0 * static_cast<double>(d)), 1000,
                                            1.0, seed);
                worst = std::min(worst, rep.min_re_ratio);
            } catch (const std::exception& e) {
                r.pass = false;
                r.detail = e.what();
                return r;
            }
        }
    }
    r.detail = "d in {2,3}, N in {1e3,1e5}, c = 1/(10d), 1000 samples; min Re S/N = " +
               std::to_string(worst) + " >= cos(pi/4)";
    return r;
}

// 10. Exponent slopes of the exact counts at tau = 0.
CriterionResult crit_kappa_tau0() {
    CriterionResult r{10, "kappa-at-tau0", true, 0, "", false};
    std::vector<double> lx, ly;
    for (long long N : {64LL, 128LL, 256LL, 512LL, 1024LL}) {
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(static_cast<double>(count_J(2, 2, N).count)));
    }
    double slope22 = fit_slope(lx, ly);
    lx.clear(); ly.clear();
    for (long long N : {16LL, 24LL, 32LL, 48LL}) {
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(static_cast<double>(count_J(3, 3, N).count)));
    }
    double slope33 = fit_slope(lx, ly);
    bool ok22 = std::abs(slope22 - 2.0) <= 0.1;
    bool ok33 = slope33 >= 3.0 - 0.3 && slope33 <= 3.0 + 0.3;
    r.pass = ok22 && ok33;
    std::ostringstream os;
    os << "slope J(2,2) = " << slope22 << " (want 2 +- 0.1), slope J(3,3) = " << slope33
       << " (want 3 +- 0.3)";
    r.detail = os.str();
    return r;
}

// 11. Level-set measure against the structural envelope with slack N^0.15.
CriterionResult crit_levelset(unsigned long long seed) {
    CriterionResult r{11, "level-set-envelope", true, 0, "", false};
    long long N = 4096;
    double A = std::pow(static_cast<double>(N), 0.62);
    double delta = std::pow(static_cast<double>(N), -0.3);
    auto rep = check_levelset_bounds(2, N, A, delta, 8, 20000, 0.15, seed);
    r.pass = rep.within_slack;
    std::ostringstream os;
    os << "d=2, N=4096, A=N^0.62, delta=N^-0.3, 8 xi; max measured/envelope = " << rep.max_ratio
       << " vs slack " << rep.slack;
    r.detail = os.str();
    return r;
}

// 12. Structure detector: sound on plants, complete on filtered random points.
CriterionResult crit_detector(unsigned long long seed) {
    CriterionResult r{12, "structure-detector", true, 0, "", true};
    const long long N = 4096;
    const double A = std::pow(static_cast<double>(N), 0.75);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> qpick(2, 50);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    auto measure = [&](double x1, double x2) {
        return std::abs(weyl_sum(TorusPoint({x1, x2}), N, PhaseStrategy::Recurrence));
    };
    const double fudge = std::pow(static_cast<double>(N), 0.01);
    const double NA2 = std::pow(static_cast<double>(N) / A, 2.0);

    long long planted = 0, sound = 0, divides = 0;
    for (long long trial = 0; planted < 1000 && trial < 20000; ++trial) {
        long long q = qpick(rng);
        std::uniform_int_distribution<long long> npick(0, q - 1);
        long long a = npick(rng), b = npick(rng);
        if (a == 0 && b == 0) continue;  // origin spike
        double e1 = 0.45 * unit(rng) * NA2 * fudge / (static_cast<double>(q) * N);
        double e2 = 0.45 * unit(rng) * NA2 * fudge /
                    (static_cast<double>(q) * static_cast<double>(N) * static_cast<double>(N));
        double x1 = static_cast<double>(a) / static_cast<double>(q) + e1;
        double x2 = static_cast<double>(b) / static_cast<double>(q) + e2;
        if (measure(x1, x2) < A) continue;
        ++planted;
        auto det = detect_rational_structure(TorusPoint({x1, x2}), N, A);
        if (!det.witness) continue;
        const auto& w = *det.witness;
        bool env_ok = true;
        for (size_t j = 0; j < w.errors.size(); ++j) env_ok &= w.errors[j] <= w.envelopes[j];
        if (env_ok) ++sound;
        if (q % w.q == 0) ++divides;
    }
    bool plants_ok = planted >= 500 && sound == planted && divides == planted;

    long long population = 0, found = 0;
    std::uniform_int_distribution<long long> qbig(2, 300);
    for (long long trial = 0; population < 1000 && trial < 60000; ++trial) {
        long long q = qbig(rng);
        std::uniform_int_distribution<long long> npick(0, q - 1);
        long long a = npick(rng), b = npick(rng);
        if (a == 0 && b == 0) continue;
        double e1 = unit(rng) * 0.5 / (static_cast<double>(q) * N);
        double e2 = unit(rng) * 0.5 /
                    (static_cast<double>(q) * static_cast<double>(N) * static_cast<double>(N));
        double x1 = static_cast<double>(a) / static_cast<double>(q) + e1;
        double x2 = static_cast<double>(b) / static_cast<double>(q) + e2;
        if (measure(x1, x2) < A) continue;
        ++population;
        if (detect_rational_structure(TorusPoint({x1, x2}), N, A).witness) ++found;
    }
    double completeness =
        population ? static_cast<double>(found) / static_cast<double>(population) : 0.0;
    bool complete_ok = population >= 200 && completeness >= 0.99;

    r.pass = plants_ok && complete_ok;
    std::ostringstream os;
    os << "plants: " << sound << "/" << planted << " sound, " << divides << "/" << planted
       << " with q | planted; random large-sum points: " << found << "/" << population
       << " detected (" << completeness * 100.0 << "%)";
    r.detail = os.str();
    return r;
}

// 13. Monomial-curve count >= L^2/(2p) at L = min(ceil(4 p^{3/4} log p), p).
CriterionResult crit_monomial(unsigned long long seed) {
    CriterionResult r{13, "monomial-curve-count", true, 0, "", true};
    std::mt19937_64 rng(seed);
    for (long long p : {211LL, 499LL}) {
        double raw = 4.0 * std::pow(static_cast<double>(p), 0.75) *
                     std::log(static_cast<double>(p));
        long long L = std::min<long long>(p, static_cast<long long>(std::ceil(raw)));
        std::uniform_int_distribution<long long> pick(0, p - 1);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<long long> corner{pick(rng), pick(rng)};
            auto rep = monomial_curve_density(p, 2, {1, 1}, L, corner);
            if (!rep.meets_threshold) {
                r.pass = false;
                r.detail = "p=" + std::to_string(p) + " corner trial " + std::to_string(trial) +
                           ": count " + std::to_string(rep.count) + " < threshold";
                return r;
            }
        }
    }
    r.detail = "p in {211,499}, a=(1,1), L = min(ceil(4 p^{3/4} log p), p), 20 corners each";
    return r;
}

// 14. Lower-bound witness growth in N at fixed delta.
CriterionResult crit_witness_slope(unsigned long long seed) {
    CriterionResult r{14, "witness-slope", true, 0, "", false};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 0.85);
    TorusPoint xi({unit(rng), unit(rng)});
    std::vector<double> lx, ly;
    for (long long N : {512LL, 1024LL, 2048LL, 4096LL}) {
        auto rep = lower_bound_witness(2, 2, N, 0.1, xi, 1, ArcConstants{}, seed);
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(rep.lower_bound));
    }
    double slope = fit_slope(lx, ly);
    r.pass = slope >= (2.0 - 1.0) - 0.25;
    std::ostringstream os;
    os << "d=2, s=2, delta=0.1, N in {512..4096}; witness bound slope " << slope
       << " (want >= 0.75)";
    r.detail = os.str();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    std::vector<std::function<CriterionResult()>> criteria = {
        [] { return crit_gauss_modulus(); },
        [] { return crit_counting_closed_form(); },
        [] { return crit_quadrature_bridge(); },
        [] { return crit_partition_identity(); },
        [] { return crit_cauchy(); },
        [] { return crit_tables(); },
        [] { return crit_sigma_anchors(); },
        [] { return crit_figures(); },
        [&] { return crit_majorarc(opt.seed); },
        [] { return crit_kappa_tau0(); },
        [&] { return crit_levelset(opt.seed); },
        [&] { return crit_detector(opt.seed); },
        [&] { return crit_monomial(opt.seed); },
        [&] { return crit_witness_slope(opt.seed); },
    };
    const bool slow[] = {false, false, false, false, false, false, false,
                         false, false, false, true,  true,  false, true};

    std::vector<CriterionResult> results;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (opt.fast_only && slow[i]) {
            out << "[SKIP] " << (i + 1) << " (full suite only)\n";
            continue;
        }
        auto t0 = clock::now();
        CriterionResult res;
        try {
            res = criteria[i]();
        } catch (const std::exception& e) {
            res.id = static_cast<int>(i + 1);
            res.name = "criterion-" + std::to_string(i + 1);
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        out << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << " " << res.name << " ("
            << res.seconds << " s): " << res.detail << "\n";
        results.push_back(res);
    }
    double total = 0.0;
    for (const auto& r : results) total += r.seconds;
    if (total > 1800.0)
        out << "[WARN] suite took " << total << " s, over the 30-minute budget\n";
    return results;
}

}  // namespace weylab
