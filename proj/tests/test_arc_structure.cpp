#include <cmath>
#include <random>

#include "doctest.h"
#include "weylab/arc_structure.hpp"
#include "weylab/errors.hpp"
#include "weylab/primes.hpp"

using namespace weylab;

TEST_CASE("detector finds exact small-q rationals") {
    TorusPoint x({2.0 / 7.0, 3.0 / 7.0});
    auto det = detect_rational_structure(x, 10000, std::pow(10000.0, 0.8));
    REQUIRE(det.witness.has_value());
    CHECK(det.witness->q == 7);
    CHECK(det.witness->errors[0] <= 1e-12);
    CHECK(det.witness->errors[1] <= 1e-12);
}

TEST_CASE("detector locates a near-rational within envelope") {
    long long N = 10000;
    double A = std::pow(static_cast<double>(N), 0.8);
    TorusPoint x({1.0 / 3.0 + 1e-9, 2.0 / 3.0});
    auto det = detect_rational_structure(x, N, A);
    REQUIRE(det.witness.has_value());
    CHECK(det.witness->q == 3);
}

TEST_CASE("random points without structure return none and have small sums") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    long long N = 10000;
    double A = std::pow(static_cast<double>(N), 0.8);
    int none_count = 0, trials = 20;
    for (int i = 0; i < trials; ++i) {
        TorusPoint x({unit(rng), unit(rng)});
        auto det = detect_rational_structure(x, N, A);
        if (!det.witness) {
            ++none_count;
            // contrapositive: no structure means |G| < A (checked numerically)
            CHECK(std::abs(weyl_sum(x, N, PhaseStrategy::Recurrence)) < A);
        }
    }
    CHECK(none_count > trials / 2);
}

TEST_CASE("detector soundness: returned errors sit inside the envelopes") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long long> qpick(2, 40);
    long long N = 4096;
    double A = std::pow(static_cast<double>(N), 0.75);
    for (int i = 0; i < 50; ++i) {
        long long q = qpick(rng);
        std::uniform_int_distribution<long long> ab(0, q - 1);
        TorusPoint x({static_cast<double>(ab(rng)) / static_cast<double>(q),
                      static_cast<double>(ab(rng)) / static_cast<double>(q)});
        auto det = detect_rational_structure(x, N, A);
        REQUIRE(det.witness.has_value());
        for (size_t j = 0; j < det.witness->errors.size(); ++j)
            CHECK(det.witness->errors[j] <= det.witness->envelopes[j]);
        CHECK(q % det.witness->q == 0);
    }
}

TEST_CASE("detector with factored moduli for d = 3") {
    long long N = 4096;
    double A = std::pow(static_cast<double>(N), 0.9);
    // q_2 = 6 (cube-free), q_3 = 1
    TorusPoint x({1.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0});
    auto det = detect_rational_structure(x, N, A);
    REQUIRE(det.witness.has_value());
    CHECK(det.witness->q == 6);
    // q_3 = 8 is cube-full: modulus 8 must be representable too
    TorusPoint y({1.0 / 8.0, 3.0 / 8.0, 5.0 / 8.0});
    auto det8 = detect_rational_structure(y, N, A);
    REQUIRE(det8.witness.has_value());
    CHECK(det8.witness->q == 8);
    CHECK(det8.witness->q_factors == std::vector<long long>{1, 8});
}

TEST_CASE("level set measure endpoints") {
    BoxSpec box(TorusPoint({0.1, 0.2}), 0.25);
    auto zero = level_set_measure(2, box, 0.0, 64, "monte-carlo", 2000);
    CHECK(zero.measure == doctest::Approx(0.0625).epsilon(1e-12));
    auto huge = level_set_measure(2, box, 100.0, 64, "monte-carlo", 2000);
    CHECK(huge.measure == 0.0);
    // monotone nonincreasing in A on a fixed sample set (same seed)
    double prev = 1.0;
    for (double A : {1.0, 4.0, 8.0, 16.0, 32.0}) {
        auto est = level_set_measure(2, box, A, 64, "monte-carlo", 4000, 42);
        CHECK(est.measure <= prev + 1e-12);
        prev = est.measure;
    }
}

TEST_CASE("level set positive proportion at A = gamma sqrt(N)") {
    BoxSpec box(TorusPoint({0.0, 0.0}), 1.0);
    long long N = 256;
    auto est = level_set_measure(2, box, 0.5 * std::sqrt(static_cast<double>(N)), N,
                                 "monte-carlo", 4000, 7);
    CHECK(est.measure > 0.1);
    auto est2 = level_set_measure(2, box, 0.5 * std::sqrt(static_cast<double>(N)), N,
                                  "monte-carlo", 8000, 8);
    CHECK(est.measure == doctest::Approx(est2.measure).epsilon(0.25));
}

TEST_CASE("level set grid sampler agrees with monte-carlo") {
    BoxSpec box(TorusPoint({0.3, 0.6}), 0.5);
    long long N = 128;
    double A = 14.0;
    auto g = level_set_measure(2, box, A, N, "grid", 10000);
    auto m = level_set_measure(2, box, A, N, "monte-carlo", 10000, 3);
    CHECK(g.measure == doctest::Approx(m.measure).epsilon(0.3));
}

TEST_CASE("detector completeness at the invariant threshold A = N^0.7") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<long long> qpick(2, 400);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    long long N = 4096;
    double A = std::pow(static_cast<double>(N), 0.7);
    long long population = 0, found = 0;
    for (long long trial = 0; population < 300 && trial < 20000; ++trial) {
        long long q = qpick(rng);
        std::uniform_int_distribution<long long> ab(0, q - 1);
        long long a = ab(rng), b = ab(rng);
        if (a == 0 && b == 0) continue;
        double x1 = static_cast<double>(a) / static_cast<double>(q) +
                    unit(rng) * 0.5 / (static_cast<double>(q) * N);
        double x2 = static_cast<double>(b) / static_cast<double>(q) +
                    unit(rng) * 0.5 / (static_cast<double>(q) * N * static_cast<double>(N));
        if (std::abs(weyl_sum(TorusPoint({x1, x2}), N, PhaseStrategy::Recurrence)) < A)
            continue;
        ++population;
        if (detect_rational_structure(TorusPoint({x1, x2}), N, A).witness) ++found;
    }
    REQUIRE(population >= 100);
    CHECK(found == population);
}

TEST_CASE("d >= 3 search reports truncation at a tiny modulus cap") {
    TorusPoint x({1.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0});
    auto det = detect_rational_structure(x, 4096, std::pow(4096.0, 0.9), 3);
    CHECK(!det.witness.has_value());
    CHECK(det.truncated);
}

TEST_CASE("levelset bound check for d = 3") {
    long long N = 512;
    double A = std::pow(static_cast<double>(N), 0.85);
    double delta = 0.99;
    auto rep = check_levelset_bounds(3, N, A, delta, 2, 2000, 0.15, 17);
    CHECK(rep.ratios.size() == 2);
    CHECK(rep.envelope > 0.0);
    CHECK(std::isfinite(rep.max_ratio));
}

TEST_CASE("levelset bound check runs and reports") {
    auto rep = check_levelset_bounds(2, 1024, std::pow(1024.0, 0.62),
                                     std::pow(1024.0, -0.3), 3, 4000, 0.15, 5);
    CHECK(rep.ratios.size() == 3);
    CHECK(rep.envelope > 0.0);
    CHECK(rep.max_ratio >= 0.0);
    CHECK_THROWS_AS(
        check_levelset_bounds(2, 1024, std::pow(1024.0, 0.62), 1e-4, 2, 100, 0.15, 5),
        UsageError);
}

TEST_CASE("gauss continuity at the rational point itself") {
    long long p = 101, N = 50 * 101;
    auto rep = gauss_continuity_check(p, 7, 13, N, 0.0, 1);
    // p | N: |G(a/p,b/p)| = (N/p) sqrt(p), so the ratio is exactly 1
    CHECK(rep.rational_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.min_gauss_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gauss continuity in a small neighbourhood") {
    long long p = 101, N = 50 * 101;
    auto rep = gauss_continuity_check(p, 7, 13, N, 0.25, 500, 4.0, 11);
    CHECK(rep.min_gauss_ratio > 0.1);       // stays bounded away from zero
    CHECK(rep.max_continuity_ratio < 50.0);  // observed continuity constant
    CHECK_THROWS_AS(gauss_continuity_check(p, 7, 101, N, 0.25, 10), UsageError);
    CHECK_THROWS_AS(gauss_continuity_check(p, 7, 13, 200, 0.25, 10), UsageError);
}

TEST_CASE("prime field scan census for d = 2") {
    auto rep = prime_field_scan(2, 101, 1.0, 0, nullptr, 5);
    // every u with u_2 != 0 has |T| = sqrt(p): the census is exactly p^2 - p
    CHECK(rep.domain == 101LL * 101 - 101);
    CHECK(rep.hits == 101LL * 101 - 101);
    auto rep0 = prime_field_scan(2, 101, 0.0, 0, nullptr, 5);
    CHECK(rep0.hits == rep0.domain);  // gamma = 0 keeps everything
    CHECK_THROWS_AS(prime_field_scan(2, 4999, 0.5), BudgetError);
}

TEST_CASE("prime field scan for d = 3 has stable positive density") {
    auto rep37 = prime_field_scan(3, 37, 0.5, 0, nullptr, 5);
    auto rep = prime_field_scan(3, 53, 0.5, 0, nullptr, 5);
    CHECK(rep.hits > 0);
    CHECK(rep.density > 0.1);
    CHECK(rep.box_hits >= 0);
    CHECK(rep.box_side == static_cast<long long>(std::floor(std::pow(53.0, 0.8))));
    // density is stable as p moves at fixed gamma
    CHECK(std::abs(rep.density - rep37.density) < 0.15);
}

TEST_CASE("monomial curve counts") {
    // k = 1: multiples of a hit each residue once; count is L or L-1
    auto r1 = monomial_curve_density(101, 1, {5}, 20, {7});
    CHECK((r1.count == 20 || r1.count == 19));
    auto rfull = monomial_curve_density(101, 1, {3}, 101, {0});
    CHECK(rfull.count == 100);
    auto r2 = monomial_curve_density(499, 2, {1, 1}, 499, {0, 0});
    CHECK(r2.count == 498);  // full box holds every lambda
    CHECK(r2.meets_threshold);
    // interval partition of F_p sums to p - 1 (0 is never hit)
    long long total = 0;
    for (long long c : {0LL, 125LL, 250LL, 375LL}) {
        auto part = monomial_curve_density(499, 1, {1}, c == 375 ? 124LL : 125LL, {c});
        total += part.count;
    }
    CHECK(total == 498);
    CHECK_THROWS_AS(monomial_curve_density(101, 2, {0, 1}, 10, {0, 0}), UsageError);
    CHECK_THROWS_AS(monomial_curve_density(101, 1, {1}, 200, {0}), UsageError);
}

TEST_CASE("monomial curve threshold in the lemma regime") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long long> pick(0, 210);
    for (int trial = 0; trial < 5; ++trial) {
        auto rep = monomial_curve_density(211, 2, {1, 1}, 211, {pick(rng), pick(rng)});
        CHECK(rep.count >= rep.threshold);
    }
}

TEST_CASE("lower bound witness, d = 2") {
    TorusPoint xi({0.31, 0.57});
    auto rep = lower_bound_witness(2, 2, 1024, 0.1, xi, 1, ArcConstants{}, 3);
    CHECK(rep.prime >= 1024 / 8);
    CHECK(rep.prime <= 1024 / 4);
    CHECK(rep.boxes > 0);
    CHECK(rep.volume > 0.0);
    CHECK(rep.lower_bound > 0.0);
    // sanity: the witness bound cannot exceed the trivial bound delta^2 N^{2s}
    CHECK(rep.lower_bound <= 0.01 * std::pow(1024.0, 4.0));
}

TEST_CASE("witness bound never exceeds a direct quadrature of the same box") {
    TorusPoint xi({0.2, 0.4});
    long long N = 512;
    auto rep = lower_bound_witness(2, 2, N, 0.15, xi, 1, ArcConstants{}, 21);
    BoxSpec box(xi, 0.15);
    auto quad = integrate_box(2, 2, WeightSeq::ones(N), box, N, QuadMode::Qmc, 1e-2, 1 << 15);
    CHECK(rep.lower_bound <= quad.value * 1.1);
}

TEST_CASE("lower bound witness, d = 3 with explicit constants") {
    ArcConstants consts;
    consts.Gamma = 0.05;
    consts.C = 4.0;
    consts.gamma = 0.5;
    TorusPoint xi({0.1, 0.2, 0.3});
    long long N = 729;
    double nu = 0.2;  // nu(3,1) = min(1/2, 1/5)
    double delta = 2.0 * consts.Gamma * std::pow(static_cast<double>(N) / 8.0, -nu) *
                   std::log(static_cast<double>(N));
    auto rep = lower_bound_witness(2, 3, N, std::min(delta, 0.9), xi, 1, consts, 3);
    CHECK(rep.boxes > 0);
    CHECK(rep.lower_bound > 0.0);
    CHECK(rep.prime <= N / 4);
}

TEST_CASE("witness construction errors are named") {
    TorusPoint xi({0.5, 0.5});
    CHECK_THROWS_AS(lower_bound_witness(2, 2, 64, 0.01, xi, 1, ArcConstants{}, 1),
                    UsageError);
}
