#include "weylab/vinogradov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>

#include "weylab/errors.hpp"
#include "weylab/util.hpp"

namespace weylab {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

double now_sec() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// floor(1/delta) with a snap: CLI deltas like 0.05 mean 1/20 even though the
// double sits a hair below it.
long long inverse_window(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("delta must lie in (0, 1]");
    return static_cast<long long>(std::floor(1.0 / delta + 1e-9));
}

// 2 s N^i clamped to `cap` (avoids overflow for large i).
long long two_s_pow_clamped(long long s, long long N, long long i, long long cap) {
    i128 v = 2 * s;
    for (long long t = 0; t < i; ++t) {
        v *= N;
        if (v > cap) return cap;
    }
    return static_cast<long long>(v < cap ? v : cap);
}

long long checked_ll(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(std::string(what) + ": count exceeds 64 bits");
    return static_cast<long long>(v);
}

}  // namespace

PowerSumVector power_sum_profile(const std::vector<long long>& tuple, long long d) {
    if (d < 1) throw UsageError("power_sum_profile: d must be >= 1");
    PowerSumVector g(static_cast<size_t>(d), 0);
    for (long long n : tuple) {
        if (n < 1) throw UsageError("power_sum_profile: entries must be >= 1");
        i128 p = 1;
        for (long long i = 0; i < d; ++i) {
            p *= n;
            i128 acc = static_cast<i128>(g[static_cast<size_t>(i)]) + p;
            g[static_cast<size_t>(i)] = checked_ll(acc, "power_sum_profile");
        }
    }
    return g;
}

double estimate_table_bytes(long long s, long long d, long long N) {
    (void)d;
    // Distinct profiles are at most the number of multisets C(N+s-1, s);
    // ~48 bytes per hash map slot.
    double multisets = 1.0;
    for (long long i = 0; i < s; ++i)
        multisets *= static_cast<double>(N + i) / static_cast<double>(i + 1);
    return multisets * 48.0;
}

ProfileTable::ProfileTable(long long s, long long d, long long N, long long mem_budget_bytes)
    : s_(s), d_(d), N_(N) {
    if (s < 1 || d < 1 || N < 1) throw UsageError("profile table: s, d, N must be >= 1");
    if (d > 16) throw UsageError("profile table: d capped at 16");
    double est = estimate_table_bytes(s, d, N);
    if (est > static_cast<double>(mem_budget_bytes))
        throw BudgetError("profile table would need ~" + std::to_string(est / 1e6) +
                          " MB, over the budget of " + std::to_string(mem_budget_bytes) +
                          " bytes");

    bits_.resize(static_cast<size_t>(d));
    lo_.resize(static_cast<size_t>(d));
    int total = 0;
    for (long long i = 0; i < d; ++i) {
        i128 hi = s;
        for (long long t = 0; t <= i; ++t) hi *= N;
        i128 range = hi - s;  // coordinate lies in [s, s N^{i+1}]
        int b = 1;
        while ((static_cast<i128>(1) << b) <= range) ++b;
        bits_[static_cast<size_t>(i)] = b;
        lo_[static_cast<size_t>(i)] = s;
        total += b;
    }
    if (total > 127)
        throw BudgetError("profile key needs " + std::to_string(total) +
                          " bits; instance too large for the 128-bit packing");

    // Shard the nondecreasing enumeration over the leading (smallest) entry.
    const int n_shards = static_cast<int>(std::min<long long>(N, 16));
    std::vector<std::unordered_map<u128, long long>> shards(static_cast<size_t>(n_shards));

    // weight(multiset) = s! / prod(mult_i!): ordered tuples per multiset.
    std::vector<long long> fact(static_cast<size_t>(s) + 1, 1);
    for (long long i = 1; i <= s; ++i)
        fact[static_cast<size_t>(i)] = fact[static_cast<size_t>(i - 1)] * i;

    parallel_chunks(n_shards, [&](int shard) {
        auto& local = shards[static_cast<size_t>(shard)];
        std::vector<long long> tuple(static_cast<size_t>(s));
        // Iterative nondecreasing enumeration with a fixed first element class.
        std::function<void(long long, long long, i128*, long long)> rec =
            [&](long long pos, long long minval, i128* partial, long long weight_denom) {
                if (pos == s) {
                    PowerSumVector g(static_cast<size_t>(d));
                    for (long long i = 0; i < d; ++i)
                        g[static_cast<size_t>(i)] = checked_ll(partial[i], "profile");
                    long long w = fact[static_cast<size_t>(s)] / weight_denom;
                    local[pack(g)] += w;
                    return;
                }
                for (long long n = minval; n <= N_; ++n) {
                    if (pos == 0 && (n - 1) % n_shards != shard) continue;
                    // run-length of equal entries factors into the weight
                    long long run = 1;
                    if (pos > 0 && n == tuple[static_cast<size_t>(pos - 1)]) {
                        long long k = pos - 1;
                        while (k >= 0 && tuple[static_cast<size_t>(k)] == n) { ++run; --k; }
                    }
                    tuple[static_cast<size_t>(pos)] = n;
                    i128 nxt[16];
                    i128 p = 1;
                    for (long long i = 0; i < d; ++i) {
                        p *= n;
                        nxt[i] = partial[i] + p;
                    }
                    rec(pos + 1, n, nxt, weight_denom * run);
                }
            };
        i128 zero[16] = {};
        rec(0, 1, zero, 1);
    });

    for (auto& sh : shards) {
        for (const auto& [k, v] : sh) table_[k] += v;
        sh.clear();
    }
}

u128 ProfileTable::pack(const PowerSumVector& g) const {
    u128 key = 0;
    int shift = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        long long v = g[i] - lo_[i];
        if (v < 0 || (static_cast<i128>(1) << bits_[i]) <= v)
            throw std::out_of_range("profile pack: coordinate outside build range");
        key |= static_cast<u128>(v) << shift;
        shift += bits_[i];
    }
    return key;
}

PowerSumVector ProfileTable::unpack(u128 key) const {
    PowerSumVector g(bits_.size());
    for (size_t i = 0; i < bits_.size(); ++i) {
        u128 mask = (static_cast<u128>(1) << bits_[i]) - 1;
        g[i] = static_cast<long long>(key & mask) + lo_[i];
        key >>= bits_[i];
    }
    return g;
}

long long ProfileTable::coord_min(int) const { return s_; }

long long ProfileTable::coord_max(int i) const {
    i128 hi = s_;
    for (int t = 0; t <= i; ++t) hi *= N_;
    return checked_ll(hi, "coord_max");
}

long long ProfileTable::multiplicity(const PowerSumVector& g) const {
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] < coord_min(static_cast<int>(i)) || g[i] > coord_max(static_cast<int>(i)))
            return 0;
    auto it = table_.find(pack(g));
    return it == table_.end() ? 0 : it->second;
}

CountResult count_J(long long s, long long d, long long N, long long mem_budget_bytes) {
    double t0 = now_sec();
    ProfileTable tab(s, d, N, mem_budget_bytes);
    i128 total = 0;
    for (const auto& [k, v] : tab.raw()) total += static_cast<i128>(v) * v;
    CountResult r;
    r.s = s; r.d = d; r.N = N;
    r.count = checked_ll(total, "count_J");
    r.elapsed_sec = now_sec() - t0;
    r.method = "meet-in-middle";
    return r;
}

CountResult count_J_inhom(long long s, long long d, const PowerSumVector& h, long long N,
                          long long mem_budget_bytes) {
    if (static_cast<long long>(h.size()) != d)
        throw UsageError("count_J_inhom: h must have d entries");
    double t0 = now_sec();
    CountResult r;
    r.s = s; r.d = d; r.N = N; r.h = h;
    r.method = "meet-in-middle";
    for (long long i = 0; i < d; ++i) {
        long long cap = two_s_pow_clamped(s, N, i + 1, INT64_MAX / 2);
        if (std::llabs(h[static_cast<size_t>(i)]) > cap) {
            r.count = 0;
            r.elapsed_sec = now_sec() - t0;
            return r;  // |h_i| > 2sN^i: no solutions
        }
    }
    ProfileTable tab(s, d, N, mem_budget_bytes);
    i128 total = 0;
    PowerSumVector g2(static_cast<size_t>(d));
    for (const auto& [k, v] : tab.raw()) {
        PowerSumVector g = tab.unpack(k);
        for (size_t i = 0; i < g.size(); ++i) g2[i] = g[i] + h[i];
        long long m = tab.multiplicity(g2);
        if (m) total += static_cast<i128>(v) * m;
    }
    r.count = checked_ll(total, "count_J_inhom");
    r.elapsed_sec = now_sec() - t0;
    return r;
}

namespace {

// Dense prefix-sum tensor over the profile bounding box (d small).
class WindowTensor {
  public:
    explicit WindowTensor(const ProfileTable& tab) {
        d_ = static_cast<int>(tab.d());
        lo_.resize(static_cast<size_t>(d_));
        dim_.resize(static_cast<size_t>(d_));
        i128 cells = 1;
        for (int i = 0; i < d_; ++i) {
            lo_[static_cast<size_t>(i)] = tab.coord_min(i);
            dim_[static_cast<size_t>(i)] = tab.coord_max(i) - tab.coord_min(i) + 1;
            cells *= dim_[static_cast<size_t>(i)];
        }
        cells_ = static_cast<long long>(cells);
        data_.assign(static_cast<size_t>(cells_), 0);
        for (const auto& [k, v] : tab.raw()) {
            PowerSumVector g = tab.unpack(k);
            data_[static_cast<size_t>(flatten(g))] += v;
        }
        // in-place prefix sums along each axis
        for (int axis = 0; axis < d_; ++axis) {
            long long stride = 1;
            for (int i = 0; i < axis; ++i) stride *= dim_[static_cast<size_t>(i)];
            long long n = dim_[static_cast<size_t>(axis)];
            for (long long base = 0; base < cells_; ++base) {
                long long coord = (base / stride) % n;
                if (coord > 0) data_[static_cast<size_t>(base)] += data_[static_cast<size_t>(base - stride)];
            }
        }
    }

    static double cells_estimate(const ProfileTable& tab) {
        double c = 1;
        for (int i = 0; i < tab.d(); ++i)
            c *= static_cast<double>(tab.coord_max(i) - tab.coord_min(i) + 1);
        return c;
    }

    // Sum of multiplicities over the clipped box [a_i, b_i] per coordinate.
    i128 box_sum(const PowerSumVector& a, const PowerSumVector& b) const {
        std::vector<long long> aa(static_cast<size_t>(d_)), bb(static_cast<size_t>(d_));
        for (int i = 0; i < d_; ++i) {
            aa[static_cast<size_t>(i)] = std::max(a[static_cast<size_t>(i)] - lo_[static_cast<size_t>(i)], 0LL);
            bb[static_cast<size_t>(i)] =
                std::min(b[static_cast<size_t>(i)] - lo_[static_cast<size_t>(i)], dim_[static_cast<size_t>(i)] - 1);
            if (aa[static_cast<size_t>(i)] > bb[static_cast<size_t>(i)]) return 0;
        }
        // inclusion-exclusion over the 2^d corners
        i128 total = 0;
        for (int mask = 0; mask < (1 << d_); ++mask) {
            long long idx = 0, stride = 1;
            int sign = 1;
            bool skip = false;
            for (int i = 0; i < d_; ++i) {
                long long c;
                if (mask & (1 << i)) {
                    c = aa[static_cast<size_t>(i)] - 1;
                    sign = -sign;
                } else {
                    c = bb[static_cast<size_t>(i)];
                }
                if (c < 0) { skip = true; break; }
                idx += c * stride;
                stride *= dim_[static_cast<size_t>(i)];
            }
            if (!skip) total += sign * static_cast<i128>(data_[static_cast<size_t>(idx)]);
        }
        return total;
    }

  private:
    long long flatten(const PowerSumVector& g) const {
        long long idx = 0, stride = 1;
        for (int i = 0; i < d_; ++i) {
            idx += (g[static_cast<size_t>(i)] - lo_[static_cast<size_t>(i)]) * stride;
            stride *= dim_[static_cast<size_t>(i)];
        }
        return idx;
    }

    int d_ = 0;
    long long cells_ = 0;
    std::vector<long long> lo_, dim_;
    std::vector<long long> data_;
};

}  // namespace

CountResult count_J_box(long long s, long long d, double delta, long long N,
                        long long mem_budget_bytes) {
    double t0 = now_sec();
    long long W = inverse_window(delta);
    CountResult r;
    r.s = s; r.d = d; r.N = N; r.delta = delta;
    r.method = "meet-in-middle";

    // Window covering everything: every tuple qualifies.
    bool covers_all = true;
    for (long long i = 0; i < d && covers_all; ++i)
        covers_all = two_s_pow_clamped(s, N, i + 1, INT64_MAX / 2) <= W;
    if (covers_all) {
        i128 total = 1;
        for (long long i = 0; i < 2 * s; ++i) total *= N;
        r.count = checked_ll(total, "count_J_box");
        r.elapsed_sec = now_sec() - t0;
        return r;
    }

    ProfileTable tab(s, d, N, mem_budget_bytes);
    double cells = WindowTensor::cells_estimate(tab);
    i128 total = 0;
    if (d <= 3 && cells * 8.0 <= static_cast<double>(mem_budget_bytes) && cells <= 2e8) {
        WindowTensor tensor(tab);
        PowerSumVector a(static_cast<size_t>(d)), b(static_cast<size_t>(d));
        for (const auto& [k, v] : tab.raw()) {
            PowerSumVector g = tab.unpack(k);
            for (size_t i = 0; i < g.size(); ++i) { a[i] = g[i] - W; b[i] = g[i] + W; }
            total += static_cast<i128>(v) * tensor.box_sum(a, b);
        }
    } else {
        // Per-shift accumulation over the h window.
        double window = 1.0;
        for (long long i = 0; i < d; ++i) {
            long long m = std::min(W, two_s_pow_clamped(s, N, i + 1, INT64_MAX / 2));
            window *= static_cast<double>(2 * m + 1);
        }
        if (window > 4e6)
            throw BudgetError("count_J_box: window of " + std::to_string(window) +
                              " shifts is too large for the per-shift path");
        PowerSumVector h(static_cast<size_t>(d));
        std::function<i128(long long)> rec = [&](long long pos) -> i128 {
            if (pos == d) {
                i128 sub = 0;
                PowerSumVector g2(static_cast<size_t>(d));
                for (const auto& [k, v] : tab.raw()) {
                    PowerSumVector g = tab.unpack(k);
                    for (size_t i = 0; i < g.size(); ++i) g2[i] = g[i] + h[i];
                    long long m = tab.multiplicity(g2);
                    if (m) sub += static_cast<i128>(v) * m;
                }
                return sub;
            }
            long long cap = std::min(W, two_s_pow_clamped(s, N, pos + 1, INT64_MAX / 2));
            i128 acc = 0;
            for (long long x = -cap; x <= cap; ++x) {
                h[static_cast<size_t>(pos)] = x;
                acc += rec(pos + 1);
            }
            return acc;
        };
        total = rec(0);
    }
    r.count = checked_ll(total, "count_J_box");
    r.elapsed_sec = now_sec() - t0;
    return r;
}

CountResult count_J_direct(long long s, long long d, const PowerSumVector* h, long long N,
                           double delta) {
    double t0 = now_sec();
    double tuples = std::pow(static_cast<double>(N), static_cast<double>(2 * s));
    if (tuples > 3e8)
        throw BudgetError("count_J_direct: N^(2s) too large for direct enumeration");
    long long W = delta > 0.0 ? inverse_window(delta) : 0;

    std::vector<long long> n(static_cast<size_t>(2 * s), 1);
    i128 count = 0;
    while (true) {
        bool ok = true;
        for (long long i = 1; i <= d && ok; ++i) {
            i128 acc = 0;
            for (size_t j = 0; j < n.size(); ++j) {
                i128 p = 1;
                for (long long t = 0; t < i; ++t) p *= n[j];
                acc += (j % 2 == 1) ? p : -p;  // indices 1..2s: odd j negative
            }
            if (h)
                ok = acc == static_cast<i128>((*h)[static_cast<size_t>(i - 1)]);
            else if (delta > 0.0)
                ok = acc >= -static_cast<i128>(W) && acc <= static_cast<i128>(W);
            else
                ok = acc == 0;
        }
        if (ok) ++count;
        size_t j = 0;
        while (j < n.size() && ++n[j] > N) n[j++] = 1;
        if (j == n.size()) break;
    }
    CountResult r;
    r.s = s; r.d = d; r.N = N;
    if (h) r.h = *h;
    if (delta > 0.0) r.delta = delta;
    r.count = checked_ll(count, "count_J_direct");
    r.elapsed_sec = now_sec() - t0;
    r.method = "direct";
    return r;
}

long long hj_count(const HjSpec& spec) {
    if (spec.j < 1 || spec.j > spec.d) throw UsageError("hj_count: j must lie in [1, d]");
    long long W = inverse_window(spec.delta);
    i128 out = 1;
    for (long long i = spec.j; i <= spec.d; ++i) {
        long long m = std::min(W, two_s_pow_clamped(spec.s, spec.N, i, INT64_MAX / 2));
        long long c = 2 * m + 1;
        out *= (i == spec.j) ? (c - 1) : c;
    }
    return checked_ll(out, "hj_count");
}

double hj_asymptotic(const HjSpec& spec) {
    double logN = std::log(static_cast<double>(spec.N));
    double tau = -std::log(spec.delta) / logN;
    long long k = static_cast<long long>(std::floor(tau + 1e-12));
    double j = static_cast<double>(spec.j), d = static_cast<double>(spec.d);
    if (k < spec.j) return std::pow(spec.delta, -(d - j + 1));
    if (k < spec.d)
        return std::pow(spec.delta, -(d - static_cast<double>(k))) *
               std::pow(static_cast<double>(spec.N),
                        (static_cast<double>(k) * (k + 1) - j * (j - 1)) / 2.0);
    return std::pow(static_cast<double>(spec.N), (d * (d + 1) - j * (j - 1)) / 2.0);
}

PartitionReport verify_partition(long long s, long long d, double delta, long long N,
                                 long long mem_budget_bytes) {
    PartitionReport rep;
    rep.lhs = count_J_box(s, d, delta, N, mem_budget_bytes).count;
    ProfileTable tab(s, d, N, mem_budget_bytes);

    auto correlation = [&](const PowerSumVector& h) -> long long {
        PowerSumVector g2(static_cast<size_t>(d));
        i128 total = 0;
        for (const auto& [k, v] : tab.raw()) {
            PowerSumVector g = tab.unpack(k);
            for (size_t i = 0; i < g.size(); ++i) g2[i] = g[i] + h[i];
            long long m = tab.multiplicity(g2);
            if (m) total += static_cast<i128>(v) * m;
        }
        return checked_ll(total, "verify_partition");
    };

    PowerSumVector zero(static_cast<size_t>(d), 0);
    rep.J0 = correlation(zero);

    long long W = inverse_window(delta);
    i128 rhs = rep.J0;
    for (long long j = 1; j <= d; ++j) {
        HjSpec hs{j, s, d, N, delta};
        rep.hj_sizes.push_back(hj_count(hs));
        PowerSumVector h(static_cast<size_t>(d), 0);
        i128 sum_j = 0;
        std::function<void(long long)> rec = [&](long long pos) {
            if (pos > d) {
                sum_j += correlation(h);
                return;
            }
            long long i = pos;
            long long m = std::min(W, two_s_pow_clamped(s, N, i, INT64_MAX / 2));
            if (i < j) {
                h[static_cast<size_t>(i - 1)] = 0;
                rec(pos + 1);
            } else if (i == j) {
                for (long long x = -m; x <= m; ++x) {
                    if (x == 0) continue;
                    h[static_cast<size_t>(i - 1)] = x;
                    rec(pos + 1);
                }
            } else {
                for (long long x = -m; x <= m; ++x) {
                    h[static_cast<size_t>(i - 1)] = x;
                    rec(pos + 1);
                }
            }
        };
        rec(1);
        rep.hj_sums.push_back(checked_ll(sum_j, "verify_partition"));
        rhs += sum_j;
    }
    rep.rhs = checked_ll(rhs, "verify_partition");
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal)
        throw IdentityError("partition identity failed: box count " + std::to_string(rep.lhs) +
                            " != assembled " + std::to_string(rep.rhs));
    return rep;
}

CauchyReport verify_cauchy_lemma(long long s, long long d, long long N,
                                 const std::vector<PowerSumVector>& H,
                                 long long mem_budget_bytes) {
    CauchyReport rep;
    rep.card = static_cast<long long>(H.size());
    i128 lhs = 0;
    for (const auto& h : H) lhs += count_J_inhom(s, d, h, N, mem_budget_bytes).count;
    rep.lhs = checked_ll(lhs, "verify_cauchy_lemma");
    rep.J2s = count_J(2 * s, d, N, mem_budget_bytes).count;
    i128 l2 = static_cast<i128>(rep.lhs) * rep.lhs;
    i128 r2 = static_cast<i128>(rep.card) * rep.J2s;
    rep.holds = l2 <= r2;
    if (!rep.holds)
        throw IdentityError("Cauchy bound failed: lhs^2 = " + std::to_string(rep.lhs) +
                            "^2 exceeds #H * J_{2s}");
    return rep;
}

}  // namespace weylab
