#include "weylab/weyl_sum.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace weylab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double reduce01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;  // floor rounding at the seam
    return r;
}

// 192-bit product of a 128-bit value and a 64-bit value, low limbs first.
struct U192 {
    unsigned long long w0, w1, w2;
};

U192 mul_128x64(unsigned __int128 a, unsigned long long b) {
    unsigned long long a0 = static_cast<unsigned long long>(a);
    unsigned long long a1 = static_cast<unsigned long long>(a >> 64);
    unsigned __int128 p0 = static_cast<unsigned __int128>(a0) * b;
    unsigned __int128 p1 = static_cast<unsigned __int128>(a1) * b;
    U192 r;
    r.w0 = static_cast<unsigned long long>(p0);
    unsigned __int128 mid = (p0 >> 64) + static_cast<unsigned long long>(p1);
    r.w1 = static_cast<unsigned long long>(mid);
    r.w2 = static_cast<unsigned long long>((mid >> 64) + static_cast<unsigned long long>(p1 >> 64));
    return r;
}

// Value of (v mod 2^shift) / 2^shift for a 192-bit v, 0 < shift <= 192.
double low_bits_to_unit(const U192& v, int shift) {
    // Keep only the low `shift` bits.
    unsigned long long w[3] = {v.w0, v.w1, v.w2};
    for (int i = 0; i < 3; ++i) {
        int lo = 64 * i, hi = 64 * (i + 1);
        if (shift <= lo)
            w[i] = 0;
        else if (shift < hi)
            w[i] &= (shift - lo == 64) ? ~0ULL : ((1ULL << (shift - lo)) - 1);
    }
    // Assemble from the most significant limb down; doubles absorb what the
    // 53-bit mantissa can hold, the rest is below 2^-53 of the result.
    double r = 0.0;
    r = r + std::ldexp(static_cast<double>(w[2]), 128 - shift);
    r = r + std::ldexp(static_cast<double>(w[1]), 64 - shift);
    r = r + std::ldexp(static_cast<double>(w[0]), -shift);
    if (r >= 1.0) r -= 1.0;
    return r;
}

}  // namespace

double frac_mul_exact(double x, unsigned __int128 m) {
    if (x == 0.0 || m == 0) return 0.0;
    if (x < 0.0 || x >= 1.0) x = reduce01(x);
    if (x == 0.0) return 0.0;
    int e;
    double f = std::frexp(x, &e);          // x = f * 2^e, f in [0.5, 1)
    double mant = std::ldexp(f, 53);       // integer-valued
    auto M = static_cast<unsigned long long>(mant);
    int shift = 53 - e;                    // x = M / 2^shift, shift >= 54 here
    if (shift > 192) {
        // x below 2^-139: the product is far from 1 at 128-bit m, no reduction
        // can occur and the rounded product is already exact enough.
        double prod = x * static_cast<double>(m);
        return prod < 1.0 ? prod : reduce01(prod);
    }
    return low_bits_to_unit(mul_128x64(m, M), shift);
}

unsigned __int128 pow_u128(unsigned long long n, int j) {
    unsigned __int128 r = 1;
    for (int i = 0; i < j; ++i) {
        if (n != 0 && r > (~(unsigned __int128)0) / n)
            throw std::overflow_error("pow_u128: n^j exceeds 128 bits");
        r *= n;
    }
    return r;
}

TorusPoint::TorusPoint(std::vector<double> xs) : coords(std::move(xs)) {
    if (coords.empty()) throw std::invalid_argument("TorusPoint: dimension must be >= 1");
    for (auto& c : coords) {
        if (!std::isfinite(c)) throw std::invalid_argument("TorusPoint: non-finite coordinate");
        c = reduce01(c);
    }
}

WeightSeq::WeightSeq(std::vector<cplx> v) : values(std::move(v)) {
    double l2sq = 0.0;
    for (const auto& a : values) {
        double m = std::abs(a);
        l1 += m;
        l2sq += m * m;
        if (m > linf) linf = m;
    }
    l2 = std::sqrt(l2sq);
}

WeightSeq WeightSeq::ones(long long n) {
    WeightSeq w;
    w.values.assign(static_cast<size_t>(n), cplx(1.0, 0.0));
    w.l1 = static_cast<double>(n);
    w.l2 = std::sqrt(static_cast<double>(n));
    w.linf = n > 0 ? 1.0 : 0.0;
    return w;
}

double weyl_phase(const TorusPoint& x, unsigned long long n) {
    double phase = 0.0;
    unsigned __int128 npow = 1;
    for (double xj : x.coords) {
        if (n != 0 && npow > (~(unsigned __int128)0) / n)
            throw std::overflow_error("weyl_phase: n^j exceeds 128 bits");
        npow *= n;
        phase += frac_mul_exact(xj, npow);
        if (phase >= 1.0) phase -= 1.0;
        if (phase >= 1.0) phase -= 1.0;
    }
    return phase;
}

namespace {

template <typename TermWeight>
cplx sum_direct(const TorusPoint& x, long long N, TermWeight&& weight) {
    cplx acc(0.0, 0.0), comp(0.0, 0.0);  // Kahan compensation
    for (long long n = 1; n <= N; ++n) {
        double ph = weyl_phase(x, static_cast<unsigned long long>(n));
        cplx term = weight(n) * cplx(std::cos(kTwoPi * ph), std::sin(kTwoPi * ph));
        cplx y = term - comp;
        cplx t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

// Phases of consecutive terms satisfy an order-d difference recurrence, so a
// block of terms costs d complex rotations each instead of a sincos. Blocks
// are reseeded from exact phases periodically: rounding integrates up the
// difference chain and grows like steps^d, so the block length shrinks with
// the degree to keep the block-end error near 1e-9.
long long resync_interval(int d) {
    double eps = 2.3e-16, budget = 1e-9;
    double fact = 1.0;
    for (int i = 2; i <= d + 1; ++i) fact *= i;
    double len = std::pow(budget * fact / eps, 1.0 / static_cast<double>(d));
    if (len > 65536.0) return 65536;
    return std::max<long long>(64, static_cast<long long>(len));
}

template <typename TermWeight>
cplx sum_recurrence(const TorusPoint& x, long long N, TermWeight&& weight) {
    const int d = static_cast<int>(x.coords.size());
    const long long resync = resync_interval(d);
    cplx acc(0.0, 0.0), comp(0.0, 0.0);
    std::vector<double> diff(static_cast<size_t>(d) + 1, 0.0);
    std::vector<cplx> rot(static_cast<size_t>(d) + 1);
    long long n = 1;
    while (n <= N) {
        // Forward differences of exact phases at n .. n+d, reduced mod 1.
        for (int i = 0; i <= d; ++i)
            diff[static_cast<size_t>(i)] = weyl_phase(x, static_cast<unsigned long long>(n + i));
        for (int level = 1; level <= d; ++level)
            for (int i = d; i >= level; --i)
                diff[static_cast<size_t>(i)] =
                    reduce01(diff[static_cast<size_t>(i)] - diff[static_cast<size_t>(i - 1)]);
        for (int i = 0; i <= d; ++i)
            rot[static_cast<size_t>(i)] = cplx(std::cos(kTwoPi * diff[static_cast<size_t>(i)]),
                                               std::sin(kTwoPi * diff[static_cast<size_t>(i)]));

        long long block_end = std::min(N, n + resync - 1);
        for (; n <= block_end; ++n) {
            cplx term = weight(n) * rot[0];
            cplx y = term - comp;
            cplx t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            for (int i = 0; i < d; ++i) rot[static_cast<size_t>(i)] *= rot[static_cast<size_t>(i) + 1];
        }
    }
    return acc;
}

void check_triangle(const cplx& s, double l1) {
    (void)s;
    (void)l1;
    assert(std::abs(s) <= l1 * (1.0 + 1e-9) + 1e-9);
}

}  // namespace

cplx weyl_sum(const TorusPoint& x, const WeightSeq& a, long long N, PhaseStrategy strategy) {
    if (N < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
    if (a.size() < N) throw std::invalid_argument("weyl_sum: weight sequence shorter than N");
    auto w = [&](long long n) { return a.values[static_cast<size_t>(n - 1)]; };
    cplx s = strategy == PhaseStrategy::Direct ? sum_direct(x, N, w) : sum_recurrence(x, N, w);
    check_triangle(s, a.l1);
    return s;
}

cplx weyl_sum(const TorusPoint& x, long long N, PhaseStrategy strategy) {
    if (N < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
    auto w = [](long long) { return cplx(1.0, 0.0); };
    cplx s = strategy == PhaseStrategy::Direct ? sum_direct(x, N, w) : sum_recurrence(x, N, w);
    check_triangle(s, static_cast<double>(N));
    return s;
}

cplx gauss_sum(double x1, double x2, long long N) {
    return weyl_sum(TorusPoint({x1, x2}), N);
}

}  // namespace weylab
