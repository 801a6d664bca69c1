#include <cmath>
#include <random>

#include "doctest.h"
#include "weylab/weyl_sum.hpp"

using namespace weylab;

namespace {
// oracle: straightforward long-double evaluation, safe for small N
cplx naive_sum(const std::vector<double>& x, long long N) {
    cplx acc(0, 0);
    for (long long n = 1; n <= N; ++n) {
        long double ph = 0;
        long double np = 1;
        for (double xj : x) {
            np *= static_cast<long double>(n);
            ph += static_cast<long double>(xj) * np;
        }
        ph -= std::floor(ph);
        acc += cplx(std::cos(2 * M_PI * static_cast<double>(ph)),
                    std::sin(2 * M_PI * static_cast<double>(ph)));
    }
    return acc;
}
}  // namespace

TEST_CASE("zero phase sums to N") {
    CHECK(std::abs(weyl_sum(TorusPoint({0.0, 0.0}), 7) - cplx(7, 0)) < 1e-12);
}

TEST_CASE("exact cancellation at x = 1/2, d = 1, N = 2") {
    CHECK(std::abs(weyl_sum(TorusPoint({0.5}), 2)) < 1e-12);
}

TEST_CASE("gauss_sum forwards to weyl_sum bit for bit") {
    cplx a = gauss_sum(0.3, 0.77, 50);
    cplx b = weyl_sum(TorusPoint({0.3, 0.77}), 50);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
}

TEST_CASE("periodicity under integer shifts") {
    cplx a = gauss_sum(0.3, 0.7, 40);
    cplx b = gauss_sum(1.3, 0.7, 40);
    CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("full-period quadratic rational sum has modulus sqrt(p)") {
    for (long long p : {5LL, 13LL, 101LL}) {
        for (long long b = 1; b < std::min<long long>(p, 6); ++b) {
            // sum_{n=1..p} e((b/p) n^2 + (a/p) n), full period
            cplx S = weyl_sum(TorusPoint({2.0 / static_cast<double>(p),
                                          static_cast<double>(b) / static_cast<double>(p)}),
                              p);
            CHECK(std::abs(S) ==
                  doctest::Approx(std::sqrt(static_cast<double>(p))).epsilon(1e-9));
        }
    }
}

TEST_CASE("matches the long-double oracle on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x(static_cast<size_t>(d));
            for (auto& v : x) v = unit(rng);
            long long N = 200;
            cplx got = weyl_sum(TorusPoint(x), N);
            cplx want = naive_sum(x, N);
            CHECK(std::abs(got - want) < 1e-8);
        }
    }
}

TEST_CASE("conjugate symmetry") {
    // Coordinates on a dyadic grid so that -x mod 1 is exactly representable;
    // for free coordinates the complement itself rounds and perturbs the input.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> grid(1, (1LL << 26) - 1);
    for (int trial = 0; trial < 1000; ++trial) {
        int d = 1 + trial % 3;
        std::vector<double> x(static_cast<size_t>(d)), mx(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            long long k = grid(rng);
            x[static_cast<size_t>(j)] = static_cast<double>(k) / 67108864.0;
            mx[static_cast<size_t>(j)] = static_cast<double>(67108864 - k) / 67108864.0;
        }
        long long N = 30;
        cplx a = weyl_sum(TorusPoint(x), N);
        cplx b = weyl_sum(TorusPoint(mx), N);
        CHECK(std::abs(b - std::conj(a)) < 1e-12 * static_cast<double>(N) + 1e-12);
    }
}

TEST_CASE("triangle inequality and weighted sums") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> w;
    for (int i = 0; i < 64; ++i)
        w.emplace_back(unit(rng) * 2 - 1, unit(rng) * 2 - 1);
    WeightSeq a(w);
    CHECK(a.l2 * a.l2 <= a.l1 * a.linf + 1e-9);
    cplx S = weyl_sum(TorusPoint({0.37, 0.21}), a, 64);
    CHECK(std::abs(S) <= a.l1 + 1e-9);
}

TEST_CASE("direct and recurrence strategies agree") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        int d = 1 + trial % 3;
        std::vector<double> x(static_cast<size_t>(d));
        for (auto& v : x) v = unit(rng);
        long long N = 100000;
        cplx a = weyl_sum(TorusPoint(x), N, PhaseStrategy::Direct);
        cplx b = weyl_sum(TorusPoint(x), N, PhaseStrategy::Recurrence);
        CHECK(std::abs(a - b) < 1e-8 * static_cast<double>(N));
    }
}

TEST_CASE("frac_mul_exact against exact integer arithmetic") {
    // x = a/2^k exactly representable: frac(x*m) = (a*m mod 2^k)/2^k
    double x = 13.0 / 1024.0;
    unsigned __int128 m = (static_cast<unsigned __int128>(1) << 100) + 12345;
    unsigned long long am_low = static_cast<unsigned long long>((13 * m) & 1023);
    CHECK(frac_mul_exact(x, m) ==
          doctest::Approx(static_cast<double>(am_low) / 1024.0).epsilon(1e-15));
    CHECK(frac_mul_exact(0.0, m) == 0.0);
    CHECK(frac_mul_exact(x, 0) == 0.0);
}

TEST_CASE("pow_u128 overflow raises") {
    CHECK_THROWS_AS(pow_u128(1ULL << 40, 4), std::overflow_error);
    CHECK(pow_u128(10, 3) == 1000);
}

TEST_CASE("phase computation refuses to wrap past 128 bits") {
    TorusPoint x({0.3, 0.7, 0.1});
    CHECK_THROWS_AS(weyl_phase(x, 10000000000000ULL), std::overflow_error);
    CHECK(weyl_phase(x, 1000000) >= 0.0);
}

TEST_CASE("torus point validation") {
    CHECK_THROWS(TorusPoint(std::vector<double>{}));
    TorusPoint x({1.25, -0.25});
    CHECK(x.coords[0] == doctest::Approx(0.25));
    CHECK(x.coords[1] == doctest::Approx(0.75));
}
