#include "weylab/box_mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "weylab/errors.hpp"
#include "weylab/util.hpp"
#include "weylab/vinogradov.hpp"

namespace weylab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// |S|^{2s} at x for the given weights.
double integrand(const TorusPoint& x, const WeightSeq& a, long long N, double two_s) {
    cplx S = weyl_sum(x, a, N);
    return std::pow(std::norm(S), two_s / 2.0);
}

// Halton sequence point, bases = first d primes.
double halton(unsigned long long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<unsigned long long>(base));
        index /= static_cast<unsigned long long>(base);
    }
    return r;
}

const int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

double sum_over_grid(const std::vector<long long>& dims,
                     const std::function<double(const std::vector<long long>&)>& f) {
    long long total = 1;
    for (long long m : dims) total *= m;
    const int n_chunks = 64;
    std::vector<double> partials(n_chunks, 0.0);
    parallel_chunks(n_chunks, [&](int chunk) {
        long long lo = total * chunk / n_chunks, hi = total * (chunk + 1) / n_chunks;
        std::vector<long long> idx(dims.size());
        double acc = 0.0, comp = 0.0;
        for (long long t = lo; t < hi; ++t) {
            long long rem = t;
            for (size_t j = 0; j < dims.size(); ++j) {
                idx[j] = rem % dims[j];
                rem /= dims[j];
            }
            double y = f(idx) - comp;
            double s = acc + y;
            comp = (s - acc) - y;
            acc = s;
        }
        partials[static_cast<size_t>(chunk)] = acc;
    });
    return pairwise_sum(partials);
}

}  // namespace

BoxSpec::BoxSpec(TorusPoint corner, double side) : xi(std::move(corner)), delta(side) {
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("BoxSpec: delta must lie in (0, 1]");
}

MeanValueEstimate integrate_box(double s, long long d, const WeightSeq& a, const BoxSpec& box,
                                long long N, QuadMode mode, double tol, long long node_budget) {
    if (!(s > 0.0)) throw UsageError("integrate_box: s must be > 0");
    if (d < 1 || box.xi.dim() != d) throw UsageError("integrate_box: dimension mismatch");
    if (N < 1 || a.size() < N) throw UsageError("integrate_box: need N >= 1 weights");
    if (!(tol > 0.0)) throw UsageError("integrate_box: tolerance must be > 0");
    const double two_s = 2.0 * s;

    MeanValueEstimate est;
    if (mode == QuadMode::ExactTorus) {
        if (std::abs(box.delta - 1.0) > 1e-15) throw UsageError("exact-torus needs delta = 1");
        for (double c : box.xi.coords)
            if (c != 0.0) throw UsageError("exact-torus needs xi = 0");
        if (std::abs(s - std::round(s)) > 1e-12) throw UsageError("exact-torus needs integer s");
        long long si = static_cast<long long>(std::llround(s));
        std::vector<long long> dims;
        double total = 1.0;
        for (long long j = 1; j <= d; ++j) {
            // more nodes than twice the trig degree s N^j per axis
            double m = 2.0 * static_cast<double>(si) * std::pow(static_cast<double>(N), static_cast<double>(j)) + 1.0;
            total *= m;
            if (total > static_cast<double>(node_budget))
                throw BudgetError("exact-torus grid of ~" + std::to_string(total) +
                                  " nodes exceeds the node budget");
            dims.push_back(static_cast<long long>(m));
        }
        double inv = 1.0;
        for (long long m : dims) inv /= static_cast<double>(m);
        double sum = sum_over_grid(dims, [&](const std::vector<long long>& idx) {
            std::vector<double> xs(static_cast<size_t>(d));
            for (size_t j = 0; j < xs.size(); ++j)
                xs[j] = static_cast<double>(idx[j]) / static_cast<double>(dims[j]);
            return integrand(TorusPoint(xs), a, N, two_s);
        });
        est.value = sum * inv;
        est.error_bound = 1e-10 * est.value;  // rounding only: the rule is exact here
        est.scheme = "exact-torus";
        est.resolution = dims;
        return est;
    }

    if (mode == QuadMode::MidpointGrid) {
        // Per-axis counts so that the rigorous Lipschitz error stays below
        // tol relative to the trivial bound delta^d ||a||_1^{2s}.
        double l1pow = std::pow(a.l1, two_s);
        std::vector<long long> dims;
        double total = 1.0;
        for (long long j = 1; j <= d; ++j) {
            double lip = two_s * std::pow(a.l1, two_s - 1.0) * kTwoPi *
                         std::pow(static_cast<double>(N), static_cast<double>(j + 1));
            double m = std::ceil(static_cast<double>(d) * lip * box.delta / (2.0 * tol * l1pow));
            m = std::max(m, 4.0);
            total *= m;
            dims.push_back(static_cast<long long>(m));
        }
        if (total > static_cast<double>(node_budget))
            throw BudgetError("midpoint grid of ~" + std::to_string(total) +
                              " nodes exceeds the node budget; raise --tol or the budget");
        auto run = [&](const std::vector<long long>& dd) {
            double cellvol = std::pow(box.delta, static_cast<double>(d));
            for (long long m : dd) cellvol /= static_cast<double>(m);
            double sum = sum_over_grid(dd, [&](const std::vector<long long>& idx) {
                std::vector<double> xs(static_cast<size_t>(d));
                for (size_t j = 0; j < xs.size(); ++j)
                    xs[j] = box.xi.coords[j] +
                            box.delta * (static_cast<double>(idx[j]) + 0.5) /
                                static_cast<double>(dd[j]);
                return integrand(TorusPoint(xs), a, N, two_s);
            });
            return sum * cellvol;
        };
        est.value = run(dims);
        std::vector<long long> half;
        for (long long m : dims) half.push_back(std::max<long long>(2, m / 2));
        est.empirical_error = std::abs(est.value - run(half));
        est.error_bound = tol * std::pow(box.delta, static_cast<double>(d)) * l1pow;
        est.scheme = "midpoint-grid";
        est.resolution = dims;
        return est;
    }

    // QMC
    if (d > static_cast<long long>(sizeof(kHaltonBases) / sizeof(int)))
        throw UsageError("qmc mode supports d <= 10");
    long long n = std::max<long long>(64, std::min<long long>(node_budget, 1LL << 22));
    const int n_chunks = 64;
    std::vector<double> partial_all(n_chunks, 0.0), partial_half(n_chunks, 0.0);
    parallel_chunks(n_chunks, [&](int chunk) {
        long long lo = n * chunk / n_chunks, hi = n * (chunk + 1) / n_chunks;
        double acc = 0.0, acc_half = 0.0;
        std::vector<double> xs(static_cast<size_t>(d));
        for (long long i = lo; i < hi; ++i) {
            for (long long j = 0; j < d; ++j)
                xs[static_cast<size_t>(j)] =
                    box.xi.coords[static_cast<size_t>(j)] +
                    box.delta * halton(static_cast<unsigned long long>(i) + 1,
                                       kHaltonBases[static_cast<size_t>(j)]);
            double v = integrand(TorusPoint(xs), a, N, two_s);
            acc += v;
            if (i < n / 2) acc_half += v;
        }
        partial_all[static_cast<size_t>(chunk)] = acc;
        partial_half[static_cast<size_t>(chunk)] = acc_half;
    });
    double vol = std::pow(box.delta, static_cast<double>(d));
    double mean_all = pairwise_sum(partial_all) / static_cast<double>(n);
    double mean_half = pairwise_sum(partial_half) / static_cast<double>(n / 2);
    est.value = vol * mean_all;
    est.empirical_error = std::abs(vol * (mean_all - mean_half));
    est.error_bound = est.empirical_error;  // heuristic, not certified
    est.scheme = "qmc";
    est.resolution = {n};
    return est;
}

WeightSeq shifted_to_origin(const WeightSeq& a, const TorusPoint& xi, long long N) {
    if (a.size() < N) throw UsageError("shifted_to_origin: need N weights");
    std::vector<cplx> tw(static_cast<size_t>(N));
    for (long long n = 1; n <= N; ++n) {
        double ph = weyl_phase(xi, static_cast<unsigned long long>(n));
        tw[static_cast<size_t>(n - 1)] = a.values[static_cast<size_t>(n - 1)] *
                                         cplx(std::cos(kTwoPi * ph), std::sin(kTwoPi * ph));
    }
    return WeightSeq(std::move(tw));
}

SupInfResult sup_inf_search(double s, long long d, long long N, double delta, bool want_sup,
                            long long eval_budget, long long qmc_samples,
                            unsigned long long seed) {
    if (eval_budget < 1) throw UsageError("sup_inf_search: budget must be >= 1");
    WeightSeq ones = WeightSeq::ones(N);
    SupInfResult res;
    res.evaluations = 0;

    auto eval = [&](const std::vector<double>& corner) {
        ++res.evaluations;
        BoxSpec b(TorusPoint(corner), delta);
        return integrate_box(s, d, ones, b, N, QuadMode::Qmc, 1e-2, qmc_samples).value;
    };
    auto better = [&](double cand, double best) {
        return want_sup ? cand > best : cand < best;
    };

    std::vector<double> best_x(static_cast<size_t>(d), 0.0);
    double best_v = eval(best_x);

    // Coarse lattice of step delta/2; when the lattice exceeds half the
    // budget, stride through it so the whole torus is still covered.
    (void)seed;
    long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(2.0 / delta)));
    long long lattice_total = 1;
    for (long long j = 0; j < d; ++j)
        lattice_total = std::min<long long>(lattice_total * steps, 1LL << 40);
    long long stride =
        std::max<long long>(1, lattice_total / std::max<long long>(1, eval_budget / 2));
    res.budget_exhausted = false;
    std::vector<double> x(static_cast<size_t>(d));
    for (long long cell = 0; cell < lattice_total; cell += stride) {
        if (res.evaluations >= eval_budget) { res.budget_exhausted = true; break; }
        long long rem = cell;
        for (size_t j = 0; j < x.size(); ++j) {
            x[j] = static_cast<double>(rem % steps) * delta / 2.0;
            rem /= steps;
        }
        double v = eval(x);
        if (better(v, best_v)) { best_v = v; best_x = x; }
    }

    // Coordinate descent with shrinking step.
    double step = delta / 4.0;
    while (step > delta / 256.0 && res.evaluations + 2 * d <= eval_budget) {
        bool improved = false;
        for (long long j = 0; j < d; ++j) {
            for (double sgn : {+1.0, -1.0}) {
                std::vector<double> cand = best_x;
                cand[static_cast<size_t>(j)] += sgn * step;
                cand[static_cast<size_t>(j)] -= std::floor(cand[static_cast<size_t>(j)]);
                double v = eval(cand);
                if (better(v, best_v)) { best_v = v; best_x = cand; improved = true; }
            }
        }
        if (!improved) step /= 2.0;
    }

    res.box = BoxSpec(TorusPoint(best_x), delta);
    res.estimate = integrate_box(s, d, ones, res.box, N, QuadMode::Qmc, 1e-2, 4 * qmc_samples);
    return res;
}

KappaFit empirical_kappa(double s, long long d, double tau, std::vector<long long> N_list,
                         const std::string& variant, double tol, long long qmc_samples,
                         long long node_budget) {
    if (N_list.size() < 4) throw UsageError("empirical_kappa: need at least 4 ladder points");
    for (size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw UsageError("empirical_kappa: N ladder must be strictly increasing");
    if (variant != "origin" && variant != "sup" && variant != "inf")
        throw UsageError("empirical_kappa: variant must be origin, sup or inf");

    KappaFit fit;
    fit.s = s;
    fit.d = d;
    fit.tau = tau;
    fit.variant = variant;
    fit.N_list = N_list;

    bool integer_s = std::abs(s - std::round(s)) < 1e-12;
    for (long long N : N_list) {
        double delta = std::pow(static_cast<double>(N), -tau);
        double value;
        if (variant == "origin" && tau == 0.0 && integer_s) {
            // Full-torus mean of |S|^{2s} equals the exact solution count.
            value = static_cast<double>(
                count_J(static_cast<long long>(std::llround(s)), d, N).count);
        } else if (variant == "origin") {
            WeightSeq ones = WeightSeq::ones(N);
            BoxSpec b(TorusPoint(std::vector<double>(static_cast<size_t>(d), 0.0)), delta);
            value = integrate_box(s, d, ones, b, N, QuadMode::Qmc, tol,
                                  std::min(node_budget, qmc_samples))
                        .value;
        } else {
            value = sup_inf_search(s, d, N, delta, variant == "sup", 120, qmc_samples)
                        .estimate.value;
        }
        if (!(value > 0.0)) throw IdentityError("empirical_kappa: nonpositive mean value");
        fit.log_values.push_back(std::log(value));
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = N_list.size();
    for (size_t i = 0; i < n; ++i) {
        double lx = std::log(static_cast<double>(N_list[i]));
        sx += lx; sy += fit.log_values[i]; sxx += lx * lx; sxy += lx * fit.log_values[i];
    }
    double denom = static_cast<double>(n) * sxx - sx * sx;
    fit.slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
        double pred = fit.intercept + fit.slope * std::log(static_cast<double>(N_list[i]));
        fit.residual = std::max(fit.residual, std::abs(pred - fit.log_values[i]));
    }
    return fit;
}

MajorArcReport majorarc_witness(long long d, long long N, double c, long long samples,
                                double delta, unsigned long long seed) {
    if (!(c > 0.0 && c < 1.0 / (8.0 * static_cast<double>(d))))
        throw UsageError("majorarc_witness: need 0 < c < 1/(8d)");
    if (N < 1 || d < 1) throw UsageError("majorarc_witness: bad N or d");
    MajorArcReport rep;
    rep.d = d; rep.N = N; rep.c = c; rep.samples = samples; rep.delta = delta;
    rep.min_re_ratio = 1.0;

    rep.volume = 1.0;
    rep.clipped_volume = 1.0;
    for (long long j = 1; j <= d; ++j) {
        double half = c * std::pow(static_cast<double>(N), -static_cast<double>(j));
        rep.volume *= 2.0 * half;
        rep.clipped_volume *= 2.0 * std::min(half, delta);
    }

    const double re_floor = std::cos(kTwoPi / 8.0);  // cos(pi/4)
    const int n_chunks = 32;
    std::vector<double> worst_re(n_chunks, 1.0), worst_phase(n_chunks, 0.0);
    parallel_chunks(n_chunks, [&](int chunk) {
        std::mt19937_64 rng(seed + static_cast<unsigned long long>(chunk) * 0x9e3779b97f4a7c15ULL);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        long long lo = samples * chunk / n_chunks, hi = samples * (chunk + 1) / n_chunks;
        std::vector<double> x(static_cast<size_t>(d));
        for (long long i = lo; i < hi; ++i) {
            for (long long j = 1; j <= d; ++j)
                x[static_cast<size_t>(j - 1)] =
                    unit(rng) * c * std::pow(static_cast<double>(N), -static_cast<double>(j));
            // phases stay below 1/8 in modulus: plain Horner is exact enough
            double re = 0.0, maxph = 0.0;
            for (long long n = 1; n <= N; ++n) {
                double ph = 0.0;
                double nn = static_cast<double>(n);
                for (long long j = d; j >= 1; --j) ph = (ph + x[static_cast<size_t>(j - 1)]) * nn;
                maxph = std::max(maxph, std::abs(ph));
                re += std::cos(kTwoPi * ph);
            }
            worst_phase[static_cast<size_t>(chunk)] =
                std::max(worst_phase[static_cast<size_t>(chunk)], maxph);
            worst_re[static_cast<size_t>(chunk)] =
                std::min(worst_re[static_cast<size_t>(chunk)], re / static_cast<double>(N));
        }
    });
    for (int ch = 0; ch < n_chunks; ++ch) {
        rep.max_abs_phase = std::max(rep.max_abs_phase, worst_phase[static_cast<size_t>(ch)]);
        rep.min_re_ratio = std::min(rep.min_re_ratio, worst_re[static_cast<size_t>(ch)]);
    }
    if (rep.max_abs_phase > 0.125)
        throw IdentityError("majorarc_witness: phase bound 1/8 violated");
    if (rep.min_re_ratio < re_floor)
        throw IdentityError("majorarc_witness: Re S >= N cos(pi/4) violated");
    return rep;
}

SchrodingerReport schrodinger_scan(double x0, double t0, double delta, long long N,
                                   long long t_samples) {
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("schrodinger_scan: delta in (0, 1]");
    if (t_samples < 2) throw UsageError("schrodinger_scan: need >= 2 time samples");
    SchrodingerReport rep;
    rep.x0 = x0; rep.t0 = t0; rep.delta = delta; rep.N = N; rep.t_samples = t_samples;
    rep.min_rho = std::numeric_limits<double>::infinity();
    rep.max_rho = -std::numeric_limits<double>::infinity();

    // rho(t) = delta N + sum_{n != m} e(t(n^2 - m^2)) *
    //          (e((n-m)(x0+delta)) - e((n-m)x0)) / (2 pi i (n-m)):
    // with k = n - m >= 1, twice the real part of the k-sum.
    std::vector<cplx> ck(static_cast<size_t>(N), cplx(0, 0));
    for (long long k = 1; k < N; ++k) {
        double a1 = kTwoPi * static_cast<double>(k) * (x0 + delta);
        double a0 = kTwoPi * static_cast<double>(k) * x0;
        cplx diff = cplx(std::cos(a1), std::sin(a1)) - cplx(std::cos(a0), std::sin(a0));
        ck[static_cast<size_t>(k)] = diff / cplx(0.0, kTwoPi * static_cast<double>(k));
    }

    for (long long ti = 0; ti < t_samples; ++ti) {
        double t = t0 + delta * static_cast<double>(ti) / static_cast<double>(t_samples - 1);
        double rho = delta * static_cast<double>(N);
        for (long long k = 1; k < N; ++k) {
            // sum over n = k+1..N of e(t k (2n - k))
            cplx g(0.0, 0.0);
            for (long long n = k + 1; n <= N; ++n) {
                double ph = t * static_cast<double>(k) * static_cast<double>(2 * n - k);
                ph -= std::floor(ph);
                g += cplx(std::cos(kTwoPi * ph), std::sin(kTwoPi * ph));
            }
            rho += 2.0 * std::real(g * ck[static_cast<size_t>(k)]);
        }
        if (rho < rep.min_rho) { rep.min_rho = rho; rep.argmin_t = t; }
        if (rho > rep.max_rho) { rep.max_rho = rho; rep.argmax_t = t; }
    }
    rep.min_over_upper =
        rep.min_rho / (delta * std::pow(static_cast<double>(N), 1.25));
    rep.max_over_lower = rep.max_rho / delta;
    return rep;
}

}  // namespace weylab
