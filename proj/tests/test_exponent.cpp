#include <cmath>
#include <random>

#include "doctest.h"
#include "weylab/exponent.hpp"

using namespace weylab;

TEST_CASE("s_of_d") {
    CHECK(s_of_d(2) == 3);
    CHECK(s_of_d(3) == 6);
    CHECK(s_of_d(10) == 55);
    CHECK_THROWS_AS(s_of_d(0), std::domain_error);
}

TEST_CASE("sigma_d anchor values") {
    CHECK(sigma_d(2, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sigma_d(3, 3.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(sigma_d(2, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    // identity at the half-integer point: sigma_d((d-1)/2) = (ceil(3d^2/4)-1)/2
    CHECK(sigma_d(4, 1.5) == doctest::Approx(5.5).epsilon(1e-14));
    for (long long d = 2; d <= 10; ++d) {
        double mid = static_cast<double>(d - 1) / 2.0;
        CHECK(sigma_d(d, mid) ==
              doctest::Approx(static_cast<double>(rho(d)) / 2.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(sigma_d(2, -0.1), std::domain_error);
    CHECK_THROWS_AS(sigma_d(2, 2.1), std::domain_error);
}

TEST_CASE("sigma_d is strictly increasing") {
    std::mt19937_64 rng(42);
    for (long long d = 1; d <= 10; ++d) {
        std::uniform_real_distribution<double> pick(0.0, static_cast<double>(d));
        for (int i = 0; i < 1000; ++i) {
            double a = pick(rng), b = pick(rng);
            if (a > b) std::swap(a, b);
            if (b - a < 1e-9) continue;
            CHECK(sigma_d(d, a) < sigma_d(d, b));
        }
    }
}

TEST_CASE("sigma_d equals alpha*d on (0,1]") {
    for (long long d = 1; d <= 10; ++d)
        for (double a : {0.1, 0.25, 0.5, 0.75, 0.99, 1.0})
            CHECK(sigma_d(d, a) == doctest::Approx(a * static_cast<double>(d)).epsilon(1e-13));
}

TEST_CASE("alpha_0 inverts sigma_d") {
    for (long long d = 2; d <= 8; ++d) {
        for (double s : {0.25, 1.0, 2.0, 0.5 * s_of_d(d), 0.9 * s_of_d(d)}) {
            double a = alpha_0(d, s);
            CHECK(std::abs(sigma_d(d, a) - s) <= 1e-9);
        }
    }
    CHECK(alpha_0(2, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(alpha_0(3, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(alpha_0(3, 6.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(alpha_0(2, 3.5), std::domain_error);
}

TEST_CASE("alpha_0 exact inversion agrees with the bisection") {
    for (long long d = 1; d <= 8; ++d) {
        for (long long num = 0; num <= 4 * s_of_d(d); ++num) {
            Rational s(num, 4);
            Rational a = alpha_0_exact(d, s);
            CHECK(sigma_d_exact(d, a) == s);
            CHECK(std::abs(a.to_double() - alpha_0(d, s.to_double())) < 1e-9);
        }
    }
    CHECK(alpha_0_exact(2, Rational(2)) == Rational(1));
    CHECK(alpha_0_exact(3, Rational(2)) == Rational(2, 3));
    CHECK(alpha_0_exact(3, Rational(6)) == Rational(3));
}

TEST_CASE("alpha_0 closed form holds a posteriori") {
    // alpha_0 = d + 1/2 - sqrt(d(d+1) - 2s + nu), nu = 1/4 - {a}(1-{a}).
    for (long long d = 2; d <= 6; ++d) {
        for (double s : {0.7, 1.3, 2.0, 3.7}) {
            if (s > static_cast<double>(s_of_d(d))) continue;
            double a = alpha_0(d, s);
            double fr = a - std::floor(a);
            double nu = 0.25 - fr * (1.0 - fr);
            double closed =
                static_cast<double>(d) + 0.5 -
                std::sqrt(static_cast<double>(d) * static_cast<double>(d + 1) - 2.0 * s + nu);
            CHECK(a == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("eta values") {
    CHECK(eta(5, 3, 1) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(eta(static_cast<double>(s_of_d(4)), 4, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eta(3, 3, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(eta(3, 3, 3), std::domain_error);
    CHECK_THROWS_AS(eta(3, 3, 0), std::domain_error);
}

TEST_CASE("theta equals the exhaustive minimum of f over 1..d-1") {
    for (long long d = 2; d <= 50; ++d) {
        Rational best = f_of(d, 1);
        for (long long l = 2; l <= d - 1; ++l) best = rat_min(best, f_of(d, l));
        CHECK(theta(d) == best);
    }
    CHECK(theta(2) == Rational(1, 2));
    CHECK(theta(5) == Rational(1, 6));
    CHECK(theta(10) == Rational(5, 68));
    CHECK_THROWS_AS(theta(1), std::domain_error);
}

TEST_CASE("nu and mu") {
    CHECK(nu_dk(2, 1) == Rational(1, 3));
    CHECK(mu(2) == Rational(1, 3));
    CHECK(mu(7) == Rational(1, 10));
    CHECK(mu(4) == Rational(1, 6));
    CHECK_THROWS_AS(nu_dk(3, 4), std::domain_error);
}

TEST_CASE("big_D") {
    CHECK(big_D(3) == 4);
    CHECK(big_D(7) == 64);
    CHECK(big_D(8) == 112);
    CHECK_THROWS_AS(big_D(2), std::domain_error);
}

TEST_CASE("rho") {
    CHECK(rho(2) == 2);
    CHECK(rho(3) == 6);
    CHECK(rho(4) == 11);
}
