#include "weylab/arc_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "weylab/bound_curves.hpp"
#include "weylab/errors.hpp"
#include "weylab/exponent.hpp"
#include "weylab/primes.hpp"
#include "weylab/rational_sums.hpp"
#include "weylab/util.hpp"

namespace weylab {

namespace {

double dist_to_fraction(double x, long long q, long long* num_out) {
    double scaled = x * static_cast<double>(q);
    long long a = static_cast<long long>(std::llround(scaled));
    if (num_out) *num_out = a;
    return std::abs(x - static_cast<double>(a) / static_cast<double>(q));
}

// i-th power-full: every prime in n appears with exponent >= i. 1 counts.
bool is_power_full(long long n, long long i) {
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e < i) return false;
    }
    return n == 1 || i <= 1;  // a leftover prime factor has exponent 1
}

// i-th power-free: no prime appears with exponent >= i (i >= 2).
bool is_power_free(long long n, long long i) {
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e >= i) return false;
    }
    return true;  // a leftover prime has exponent 1 < i
}

long long gcd_ll(long long a, long long b) {
    while (b) { long long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

}  // namespace

DetectionResult detect_rational_structure(const TorusPoint& x, long long N, double A,
                                          long long modulus_cap) {
    const long long d = x.dim();
    if (d < 2) throw UsageError("detect_rational_structure: d must be >= 2");
    if (!(A > 0.0)) throw UsageError("detect_rational_structure: A must be > 0");
    const double fudge = std::pow(static_cast<double>(N), 0.01);  // stands in for N^{o(1)}
    // The modulus bound also carries an N^{o(1)}; searching a few times past
    // (N/A)^2 catches sums whose complete-sum modulus is sqrt(2q) rather than
    // sqrt(q). The error envelopes keep the bare N^0.01 allowance.
    const double kSearchCapFactor = 4.0;
    const double NA = static_cast<double>(N) / A;
    DetectionResult result;

    if (d == 2) {
        double Qmax = NA * NA * fudge * kSearchCapFactor;
        long long Q = static_cast<long long>(std::floor(Qmax));
        Q = std::min(Q, modulus_cap);
        for (long long q = 1; q <= Q; ++q) {
            RationalApprox cand;
            cand.q = q;
            cand.q_factors = {q};
            bool ok = true;
            for (long long j = 1; j <= 2; ++j) {
                long long a = 0;
                double err = dist_to_fraction(x.coords[static_cast<size_t>(j - 1)], q, &a);
                double env = NA * NA * fudge /
                             (static_cast<double>(q) *
                              std::pow(static_cast<double>(N), static_cast<double>(j)));
                if (err > env) { ok = false; break; }
                cand.numerators.push_back(a);
                cand.errors.push_back(err);
                cand.envelopes.push_back(env);
            }
            if (ok) {
                result.witness = cand;
                return result;
            }
        }
        return result;
    }

    // d >= 3: factored moduli q_2 .. q_d, q_2 cube-free, q_i i-power-full and
    // (i+1)-power-free for 3 <= i <= d-1, q_d d-power-full, pairwise coprime,
    // prod q_i^{1/i} <= N^{1.01} / A (times the same search allowance).
    const double size_cap = std::pow(static_cast<double>(N), 1.01) / A * kSearchCapFactor;
    bool truncated = false;
    std::vector<std::vector<long long>> tuples;
    std::vector<long long> cur(static_cast<size_t>(d - 1), 1);

    std::function<void(long long, double, long long)> rec = [&](long long pos, double size_sofar,
                                                                long long prod_sofar) {
        if (pos == d - 1) {
            tuples.push_back(cur);
            return;
        }
        long long i = pos + 2;  // the factor index q_i
        for (long long q = 1;; ++q) {
            double size = size_sofar * std::pow(static_cast<double>(q),
                                                1.0 / static_cast<double>(i));
            if (size > size_cap) break;
            if (prod_sofar > modulus_cap / q) { truncated = true; break; }
            bool classified;
            if (i == 2)
                classified = is_power_free(q, 3);
            else if (i < d)
                classified = is_power_full(q, i) && is_power_free(q, i + 1);
            else
                classified = is_power_full(q, d);
            if (!classified) continue;
            bool coprime = true;
            for (long long t = 0; t < pos; ++t)
                if (gcd_ll(cur[static_cast<size_t>(t)], q) != 1) { coprime = false; break; }
            if (!coprime) continue;
            cur[static_cast<size_t>(pos)] = q;
            rec(pos + 1, size, prod_sofar * q);
        }
        cur[static_cast<size_t>(pos)] = 1;
    };
    rec(0, 1.0, 1);

    std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
        long long pa = std::accumulate(a.begin(), a.end(), 1LL, std::multiplies<>());
        long long pb = std::accumulate(b.begin(), b.end(), 1LL, std::multiplies<>());
        return pa < pb;
    });

    result.truncated = truncated;
    for (const auto& t : tuples) {
        long long Q = std::accumulate(t.begin(), t.end(), 1LL, std::multiplies<>());
        double env_factor = std::pow(NA, static_cast<double>(d)) * fudge;
        for (size_t i = 0; i < t.size(); ++i)
            env_factor *= std::pow(static_cast<double>(t[i]),
                                   -static_cast<double>(d) / static_cast<double>(i + 2));
        RationalApprox cand;
        cand.q = Q;
        cand.q_factors = t;
        cand.truncated = truncated;
        bool ok = true;
        for (long long j = 1; j <= d; ++j) {
            long long a = 0;
            double err = dist_to_fraction(x.coords[static_cast<size_t>(j - 1)], Q, &a);
            double env = env_factor * std::pow(static_cast<double>(N), -static_cast<double>(j));
            if (err > env) { ok = false; break; }
            cand.numerators.push_back(a);
            cand.errors.push_back(err);
            cand.envelopes.push_back(env);
        }
        if (ok) {
            result.witness = cand;
            return result;
        }
    }
    return result;
}

LevelSetEstimate level_set_measure(long long d, const BoxSpec& box, double A, long long N,
                                   const std::string& sampler, long long n_samples,
                                   unsigned long long seed, std::vector<double>* abs_values) {
    if (n_samples < 1) throw UsageError("level_set_measure: need samples >= 1");
    if (sampler != "grid" && sampler != "monte-carlo")
        throw UsageError("level_set_measure: sampler must be grid or monte-carlo");
    LevelSetEstimate est;
    est.d = d; est.N = N; est.A = A; est.delta = box.delta;
    est.xi = box.xi.coords;
    est.sampler = sampler;

    const double A2 = A * A;
    const int n_chunks = 64;
    std::vector<long long> hits(n_chunks, 0), counts(n_chunks, 0);

    long long per_axis = 0, total = n_samples;
    if (sampler == "grid") {
        per_axis = std::max<long long>(
            1, static_cast<long long>(std::llround(
                   std::pow(static_cast<double>(n_samples), 1.0 / static_cast<double>(d)))));
        total = 1;
        for (long long j = 0; j < d; ++j) total *= per_axis;
    }
    est.samples = total;
    if (abs_values) abs_values->assign(static_cast<size_t>(total), 0.0);

    parallel_chunks(n_chunks, [&](int chunk) {
        long long lo = total * chunk / n_chunks, hi = total * (chunk + 1) / n_chunks;
        std::mt19937_64 rng(seed + 0x51ab5eedULL * static_cast<unsigned long long>(chunk));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> xs(static_cast<size_t>(d));
        for (long long i = lo; i < hi; ++i) {
            if (sampler == "grid") {
                long long rem = i;
                for (long long j = 0; j < d; ++j) {
                    long long c = rem % per_axis;
                    rem /= per_axis;
                    xs[static_cast<size_t>(j)] =
                        box.xi.coords[static_cast<size_t>(j)] +
                        box.delta * (static_cast<double>(c) + 0.5) /
                            static_cast<double>(per_axis);
                }
            } else {
                for (long long j = 0; j < d; ++j)
                    xs[static_cast<size_t>(j)] =
                        box.xi.coords[static_cast<size_t>(j)] + box.delta * unit(rng);
            }
            cplx S = weyl_sum(TorusPoint(xs), N, PhaseStrategy::Recurrence);
            if (abs_values) (*abs_values)[static_cast<size_t>(i)] = std::abs(S);
            ++counts[static_cast<size_t>(chunk)];
            if (std::norm(S) >= A2) ++hits[static_cast<size_t>(chunk)];
        }
    });
    est.hits = std::accumulate(hits.begin(), hits.end(), 0LL);
    double frac = static_cast<double>(est.hits) / static_cast<double>(est.samples);
    double voxel = std::pow(box.delta, static_cast<double>(d));
    est.measure = frac * voxel;
    est.confidence_halfwidth =
        1.96 * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) /
                         static_cast<double>(est.samples)) *
        voxel;
    return est;
}

LevelSetBoundReport check_levelset_bounds(long long d, long long N, double A, double delta,
                                          long long xi_samples, long long mc_samples,
                                          double slack_exponent, unsigned long long seed) {
    LevelSetBoundReport rep;
    rep.d = d; rep.N = N; rep.A = A; rep.delta = delta;
    double Nd = static_cast<double>(N);
    if (d == 2) {
        if (!(delta >= A / Nd))
            throw UsageError("check_levelset_bounds: d=2 needs delta >= A/N");
        rep.envelope = delta * delta * Nd * Nd * Nd * std::pow(A, -6.0);
    } else {
        if (!(delta >= std::pow(A / Nd, 1.0 / static_cast<double>(d))))
            throw UsageError("check_levelset_bounds: d>=3 needs delta >= (A/N)^{1/d}");
        double expo = static_cast<double>(d * d + 1 - s_of_d(d));
        rep.envelope = std::pow(Nd, expo) * std::pow(A, -static_cast<double>(d * d + 1)) *
                       std::pow(delta, static_cast<double>(d));
    }
    rep.slack = std::pow(Nd, slack_exponent);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long long i = 0; i < xi_samples; ++i) {
        std::vector<double> xs(static_cast<size_t>(d));
        for (auto& v : xs) v = unit(rng);
        BoxSpec box(TorusPoint(xs), delta);
        auto est = level_set_measure(d, box, A, N, "monte-carlo", mc_samples,
                                     seed + 1000 + static_cast<unsigned long long>(i));
        rep.ratios.push_back(est.measure / rep.envelope);
    }
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.within_slack = rep.max_ratio <= rep.slack;
    return rep;
}

ContinuityReport gauss_continuity_check(long long p, long long a, long long b, long long N,
                                        double c, long long samples, double C_coupling,
                                        unsigned long long seed) {
    if (!is_prime_u64(static_cast<unsigned long long>(p)))
        throw UsageError("gauss_continuity_check: p must be prime");
    if (gcd_ll(b, p) != 1) throw UsageError("gauss_continuity_check: gcd(b, p) must be 1");
    if (static_cast<double>(N) < C_coupling * static_cast<double>(p))
        throw UsageError("gauss_continuity_check: needs N >= C p");
    ContinuityReport rep;
    rep.p = p; rep.a = a; rep.b = b; rep.N = N; rep.c = c; rep.samples = samples;

    const double x1c = static_cast<double>(a) / static_cast<double>(p);
    const double x2c = static_cast<double>(b) / static_cast<double>(p);
    const double sqp = std::sqrt(static_cast<double>(p));
    const double logp = std::log(static_cast<double>(p));
    const double Nd = static_cast<double>(N);

    cplx S0 = gauss_sum(x1c, x2c, N);
    rep.rational_ratio = std::abs(S0) * sqp / Nd;
    rep.min_gauss_ratio = rep.rational_ratio;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (long long i = 0; i < samples; ++i) {
        double e1 = unit(rng) * c / Nd;
        double e2 = unit(rng) * c / (Nd * Nd);
        cplx S = gauss_sum(x1c + e1, x2c + e2, N);
        rep.min_gauss_ratio = std::min(rep.min_gauss_ratio, std::abs(S) * sqp / Nd);
        double rhs = Nd * logp / sqp * (std::abs(e1) * Nd + std::abs(e2) * Nd * Nd);
        if (rhs > 0.0)
            rep.max_continuity_ratio =
                std::max(rep.max_continuity_ratio, std::abs(S - S0) / rhs);
    }
    return rep;
}

FieldScanReport prime_field_scan(long long d, long long p, double gamma, long long box_side,
                                 const std::vector<long long>* box_corner,
                                 unsigned long long seed) {
    if (!is_prime_u64(static_cast<unsigned long long>(p)) || p < 3)
        throw UsageError("prime_field_scan: p must be an odd prime");
    if (d < 2) throw UsageError("prime_field_scan: d must be >= 2");
    if ((d == 2 && p > 2000) || (d == 3 && p > 150) || d > 3)
        throw BudgetError("prime_field_scan: desk-scale guard (d=2: p<=2000, d=3: p<=150)");
    FieldScanReport rep;
    rep.d = d; rep.p = p; rep.gamma = gamma;

    rep.box_side = box_side > 0
                       ? std::min(box_side, p)
                       : std::max<long long>(1, static_cast<long long>(std::floor(
                                                    std::pow(static_cast<double>(p), 0.8))));
    if (box_corner && static_cast<long long>(box_corner->size()) == d) {
        rep.box_corner = *box_corner;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long long> pick(0, p - 1);
        rep.box_corner.resize(static_cast<size_t>(d));
        for (auto& v : rep.box_corner) v = pick(rng);
    }

    const auto table = unity_table(p);
    // relative epsilon: for d = 2 the modulus equals gamma sqrt(p) exactly at
    // gamma = 1, and the census must not lose those to rounding
    const double thr2 = gamma * gamma * static_cast<double>(p) * (1.0 - 1e-9);
    auto in_interval = [&](long long v, long long corner) {
        long long off = v - (corner + 1);
        off %= p;
        if (off < 0) off += p;
        return off < rep.box_side;
    };

    const int n_chunks = 64;
    std::vector<long long> hits(n_chunks, 0), box_hits(n_chunks, 0), domain(n_chunks, 0);

    // enumerate u = (u_1, ..., u_d) with the leading coordinate chunked
    parallel_chunks(n_chunks, [&](int chunk) {
        long long lo = p * chunk / n_chunks, hi = p * (chunk + 1) / n_chunks;
        std::vector<long long> u(static_cast<size_t>(d), 0);
        for (long long u1 = lo; u1 < hi; ++u1) {
            u[0] = u1;
            std::vector<long long> rest(static_cast<size_t>(d - 1), 0);
            while (true) {
                for (size_t j = 0; j < rest.size(); ++j) u[j + 1] = rest[j];
                if (in_Z_d(u)) {
                    ++domain[static_cast<size_t>(chunk)];
                    // T_{d,p}(u) by direct summation
                    cplx acc(0.0, 0.0);
                    for (long long n = 1; n <= p; ++n) {
                        unsigned long long v = 0;
                        for (size_t j = u.size(); j-- > 0;) {
                            v = mulmod_u64(v, static_cast<unsigned long long>(n),
                                           static_cast<unsigned long long>(p));
                            v = (v + static_cast<unsigned long long>(u[j])) %
                                static_cast<unsigned long long>(p);
                        }
                        v = mulmod_u64(v, static_cast<unsigned long long>(n),
                                       static_cast<unsigned long long>(p));
                        acc += table[static_cast<size_t>(v)];
                    }
                    if (std::norm(acc) >= thr2) {
                        ++hits[static_cast<size_t>(chunk)];
                        bool inside = true;
                        for (long long j = 0; j < d && inside; ++j)
                            inside = in_interval(u[static_cast<size_t>(j)],
                                                 rep.box_corner[static_cast<size_t>(j)]);
                        if (inside) ++box_hits[static_cast<size_t>(chunk)];
                    }
                }
                size_t j = 0;
                while (j < rest.size() && ++rest[j] == p) rest[j++] = 0;
                if (j == rest.size()) break;
            }
        }
    });
    rep.domain = std::accumulate(domain.begin(), domain.end(), 0LL);
    rep.hits = std::accumulate(hits.begin(), hits.end(), 0LL);
    rep.box_hits = std::accumulate(box_hits.begin(), box_hits.end(), 0LL);
    double pd = std::pow(static_cast<double>(p), static_cast<double>(d));
    rep.density = static_cast<double>(rep.hits) / pd;
    rep.box_density = static_cast<double>(rep.box_hits) /
                      std::pow(static_cast<double>(rep.box_side), static_cast<double>(d));
    return rep;
}

MonomialCurveReport monomial_curve_density(long long p, long long k,
                                           const std::vector<long long>& a, long long L,
                                           const std::vector<long long>& corner,
                                           double C_hyp) {
    if (!is_prime_u64(static_cast<unsigned long long>(p)))
        throw UsageError("monomial_curve_density: p must be prime");
    if (static_cast<long long>(a.size()) != k || static_cast<long long>(corner.size()) != k)
        throw UsageError("monomial_curve_density: a and corner must have k entries");
    if (L < 1 || L > p) throw UsageError("monomial_curve_density: need 1 <= L <= p");
    for (long long ai : a)
        if (ai % p == 0) throw UsageError("monomial_curve_density: a_i must be nonzero mod p");
    MonomialCurveReport rep;
    rep.p = p; rep.k = k; rep.L = L; rep.a = a; rep.corner = corner;

    auto in_interval = [&](long long v, long long corner_j) {
        long long off = (v - (corner_j + 1)) % p;
        if (off < 0) off += p;
        return off < L;
    };
    for (long long lam = 1; lam < p; ++lam) {
        unsigned long long pw = 1;
        bool inside = true;
        for (long long j = 0; j < k && inside; ++j) {
            pw = mulmod_u64(pw, static_cast<unsigned long long>(lam),
                            static_cast<unsigned long long>(p));
            unsigned long long v = mulmod_u64(
                static_cast<unsigned long long>(((a[static_cast<size_t>(j)] % p) + p) % p), pw,
                static_cast<unsigned long long>(p));
            inside = in_interval(static_cast<long long>(v), corner[static_cast<size_t>(j)]);
        }
        if (inside) ++rep.count;
    }
    rep.threshold = 0.5 * std::pow(static_cast<double>(L), static_cast<double>(k)) *
                    std::pow(static_cast<double>(p), 1.0 - static_cast<double>(k));
    rep.meets_threshold = static_cast<double>(rep.count) >= rep.threshold;
    rep.hypothesis_applies =
        k == 1 || static_cast<double>(L) >=
                      C_hyp * std::pow(static_cast<double>(p),
                                       1.0 - 1.0 / (2.0 * static_cast<double>(k))) *
                          std::log(static_cast<double>(p));
    return rep;
}

namespace {

// Witness construction for d = 2: boxes of halfwidth c/N^i around (b1/p, b2/p)
// inside B(xi, delta), b2 nonzero mod p.
WitnessReport witness_d2(long long s, long long N, double delta, const TorusPoint& xi,
                         const ArcConstants& consts, unsigned long long seed) {
    WitnessReport rep;
    rep.s = s; rep.d = 2; rep.N = N; rep.delta = delta; rep.xi = xi.coords;
    rep.constants = consts;
    const double Nd = static_cast<double>(N);

    // prime regime: s <= 2 wants p ~ N/C, s > 2 wants p ~ 1/delta
    std::vector<long long> cands;
    if (s <= 2) {
        cands = primes_in(static_cast<long long>(Nd / (2.0 * consts.C)),
                          static_cast<long long>(Nd / consts.C));
        if (cands.empty())
            throw UsageError("lower_bound_witness: no prime in [N/(2C), N/C]");
    } else {
        cands = primes_in(static_cast<long long>(std::ceil(1.0 / delta)),
                          static_cast<long long>(std::floor(2.0 / delta)));
        if (cands.empty())
            throw UsageError("lower_bound_witness: no prime in [1/delta, 2/delta]");
    }
    long long p = cands.back();
    rep.prime = p;
    if (!(delta >= 2.0 * consts.C / Nd))
        throw UsageError("lower_bound_witness: needs delta >= 2C/N for the box to fit");

    const double pD = static_cast<double>(p);
    // numerator ranges so the c/N^i neighbourhood stays inside the box
    auto range = [&](double corner, double half) {
        long long lo = static_cast<long long>(std::ceil((corner + half) * pD));
        long long hi = static_cast<long long>(std::floor((corner + delta - half) * pD));
        return std::pair<long long, long long>{lo, hi};
    };
    auto [lo1, hi1] = range(xi.coords[0], consts.c / Nd);
    auto [lo2, hi2] = range(xi.coords[1], consts.c / (Nd * Nd));
    if (lo1 > hi1 || lo2 > hi2)
        throw UsageError("lower_bound_witness: box too small to hold any witness");

    const double vol_per_box = (2.0 * consts.c / Nd) * (2.0 * consts.c / (Nd * Nd));
    long long total_boxes = (hi1 - lo1 + 1) * (hi2 - lo2 + 1);
    if (total_boxes > 200000)
        throw BudgetError("lower_bound_witness: " + std::to_string(total_boxes) +
                          " witness boxes; reduce delta or N");

    // The witness set keeps exactly the boxes whose centre sum clears the
    // continuity floor, so its volume is known from the construction.
    const double keep_threshold = 0.5 * Nd / std::sqrt(pD);
    long long kept = 0, evaluated = 0;
    double min_abs = std::numeric_limits<double>::infinity();
    std::vector<std::pair<long long, long long>> kept_boxes;
    auto eval_G = [&](double x1, double x2) {
        return std::abs(weyl_sum(TorusPoint({x1, x2}), N, PhaseStrategy::Recurrence));
    };
    for (long long b1 = lo1; b1 <= hi1; ++b1) {
        for (long long b2 = lo2; b2 <= hi2; ++b2) {
            if (b2 % p == 0) continue;
            double v = eval_G(static_cast<double>(b1) / pD, static_cast<double>(b2) / pD);
            ++evaluated;
            if (v >= keep_threshold) {
                ++kept;
                kept_boxes.emplace_back(b1, b2);
                min_abs = std::min(min_abs, v);
            }
        }
    }
    if (kept == 0)
        throw UsageError("lower_bound_witness: no witness box passed the threshold " +
                         std::to_string(keep_threshold));
    // jitter inside a subset of the kept boxes
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (size_t i = 0; i < kept_boxes.size(); i += std::max<size_t>(1, kept_boxes.size() / 64)) {
        auto [b1, b2] = kept_boxes[i];
        double x1 = static_cast<double>(b1) / pD + unit(rng) * consts.c / Nd;
        double x2 = static_cast<double>(b2) / pD + unit(rng) * consts.c / (Nd * Nd);
        min_abs = std::min(min_abs, eval_G(x1, x2));
        ++evaluated;
    }
    rep.boxes = kept;
    rep.sampled_points = evaluated;
    rep.volume = static_cast<double>(kept) * vol_per_box;
    rep.min_abs_sum = min_abs;
    rep.lower_bound = rep.volume * std::pow(min_abs * min_abs, static_cast<double>(s));

    CurveParams cp{Rational(s), 2, {}, {}, {}};
    BoundCurve curve = bound_curve("thm3.9", cp);
    double tau = -std::log(delta) / std::log(Nd);
    rep.predicted_kappa = curve.kappa(std::min(tau, 1.0));
    return rep;
}

WitnessReport witness_general(long long s, long long d, long long N, double delta,
                              const TorusPoint& xi, long long k, const ArcConstants& consts,
                              unsigned long long seed) {
    WitnessReport rep;
    rep.s = s; rep.d = d; rep.N = N; rep.delta = delta; rep.xi = xi.coords; rep.k = k;
    rep.constants = consts;
    const double Nd = static_cast<double>(N);
    double nu = nu_dk(d, k).to_double();

    // prime p with delta >= 2 Gamma p^-nu log p and N >= C p
    long long p = 0;
    for (long long cand : primes_in(3, static_cast<long long>(Nd / consts.C))) {
        double lhs = 2.0 * consts.Gamma * std::pow(static_cast<double>(cand), -nu) *
                     std::log(static_cast<double>(cand));
        if (delta >= lhs) p = cand;  // keep the largest admissible
    }
    if (p == 0)
        throw UsageError(
            "lower_bound_witness: no prime satisfies delta >= 2 Gamma p^-nu log p with N >= C p");
    rep.prime = p;
    const double pD = static_cast<double>(p);
    const double logp = std::log(pD);

    // residue box C_p(xi, delta), shrunk so each witness neighbourhood fits
    std::vector<long long> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (long long j = 1; j <= d; ++j) {
        double half = consts.c / (std::pow(Nd, static_cast<double>(j)) * logp);
        lo[static_cast<size_t>(j - 1)] = static_cast<long long>(
            std::ceil((xi.coords[static_cast<size_t>(j - 1)] + half) * pD));
        hi[static_cast<size_t>(j - 1)] = static_cast<long long>(
            std::floor((xi.coords[static_cast<size_t>(j - 1)] + delta - half) * pD));
        if (lo[static_cast<size_t>(j - 1)] > hi[static_cast<size_t>(j - 1)])
            throw UsageError("lower_bound_witness: box too small for residue witnesses");
    }

    double cells = 1.0;
    for (long long j = 0; j < d; ++j)
        cells *= static_cast<double>(hi[static_cast<size_t>(j)] - lo[static_cast<size_t>(j)] + 1);
    if (cells > 2e6)
        throw BudgetError("lower_bound_witness: residue box has " + std::to_string(cells) +
                          " cells; reduce delta or N");

    const auto table = unity_table(p);
    const double thr = consts.gamma * std::sqrt(pD);
    std::vector<std::vector<long long>> witnesses;
    std::vector<long long> u(static_cast<size_t>(d));
    std::function<void(long long)> rec = [&](long long pos) {
        if (pos == d) {
            std::vector<long long> um(static_cast<size_t>(d));
            for (long long j = 0; j < d; ++j) {
                um[static_cast<size_t>(j)] = u[static_cast<size_t>(j)] % p;
                if (um[static_cast<size_t>(j)] < 0) um[static_cast<size_t>(j)] += p;
            }
            if (!in_Z_d(um)) return;
            PrimePoint pt(p, um);
            if (std::abs(rational_complete_sum(pt, table)) >= thr) witnesses.push_back(u);
            return;
        }
        for (long long v = lo[static_cast<size_t>(pos)]; v <= hi[static_cast<size_t>(pos)]; ++v) {
            u[static_cast<size_t>(pos)] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    if (witnesses.empty())
        throw UsageError("lower_bound_witness: no residues with |T| >= gamma sqrt(p) in the box");

    double vol_per = 1.0;
    for (long long j = 1; j <= d; ++j)
        vol_per *= 2.0 * consts.c / (std::pow(Nd, static_cast<double>(j)) * logp);
    rep.boxes = static_cast<long long>(witnesses.size());
    rep.volume = static_cast<double>(witnesses.size()) * vol_per;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double min_abs = std::numeric_limits<double>::infinity();
    size_t step = std::max<size_t>(1, witnesses.size() / 200);
    long long evaluated = 0;
    for (size_t i = 0; i < witnesses.size(); i += step) {
        std::vector<double> xs(static_cast<size_t>(d));
        for (long long j = 0; j < d; ++j)
            xs[static_cast<size_t>(j)] =
                static_cast<double>(witnesses[i][static_cast<size_t>(j)]) / pD +
                unit(rng) * consts.c / (std::pow(Nd, static_cast<double>(j + 1)) * logp);
        min_abs = std::min(min_abs, std::abs(weyl_sum(TorusPoint(xs), N)));
        ++evaluated;
    }
    rep.sampled_points = evaluated;
    rep.min_abs_sum = min_abs;
    rep.lower_bound = rep.volume * std::pow(min_abs * min_abs, static_cast<double>(s));

    CurveParams cp{Rational(s), d, {}, k, {}};
    BoundCurve curve = bound_curve("thm3.10", cp);
    double tau = -std::log(delta) / std::log(Nd);
    rep.predicted_kappa = curve.kappa(std::min(tau, nu));
    return rep;
}

}  // namespace

WitnessReport lower_bound_witness(long long s, long long d, long long N, double delta,
                                  const TorusPoint& xi, long long k,
                                  const ArcConstants& consts, unsigned long long seed) {
    if (s < 1 || d < 2 || N < 2) throw UsageError("lower_bound_witness: bad s, d or N");
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("lower_bound_witness: delta in (0,1]");
    if (xi.dim() != d) throw UsageError("lower_bound_witness: xi dimension mismatch");
    if (d == 2) return witness_d2(s, N, delta, xi, consts, seed);
    return witness_general(s, d, N, delta, xi, k, consts, seed);
}

}  // namespace weylab
