#include <cmath>

#include "doctest.h"
#include "weylab/primes.hpp"
#include "weylab/rational_sums.hpp"

using namespace weylab;

TEST_CASE("primality certificate") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(2147483647ULL));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));        // Carmichael
    CHECK(!is_prime_u64(3215031751ULL));
    CHECK(primes_in(90, 101) == std::vector<long long>{97, 101});
    CHECK(next_prime(14) == 17);
}

TEST_CASE("zero frequency gives p") {
    PrimePoint pt(7, {0, 0, 0});
    CHECK(std::abs(rational_complete_sum(pt) - cplx(7, 0)) < 1e-10);
}

TEST_CASE("quadratic modulus sqrt(p)") {
    PrimePoint pt(11, {3, 1});
    CHECK(std::abs(rational_complete_sum(pt)) ==
          doctest::Approx(std::sqrt(11.0)).epsilon(1e-9));
}

TEST_CASE("cubic sum equals the 7-term direct evaluation") {
    PrimePoint pt(7, {0, 0, 1});
    cplx expect(0, 0);
    for (int n = 1; n <= 7; ++n) {
        double ph = static_cast<double>((n * n * n) % 7) / 7.0;
        expect += cplx(std::cos(2 * M_PI * ph), std::sin(2 * M_PI * ph));
    }
    CHECK(std::abs(rational_complete_sum(pt) - expect) < 1e-10);
}

TEST_CASE("PrimePoint validation and residue reduction") {
    CHECK_THROWS(PrimePoint(10, {1}));
    PrimePoint pt(7, {-1, 15});
    CHECK(pt.u[0] == 6);
    CHECK(pt.u[1] == 1);
}

TEST_CASE("Z_d membership") {
    CHECK(!in_Z_d({5}));
    CHECK(!in_Z_d({5, 0, 0}));
    CHECK(in_Z_d({5, 1, 0}));
    CHECK(in_Z_d({0, 0, 2}));
}

TEST_CASE("incomplete scan, d=2 exhaustive") {
    auto rep = incomplete_ratio_scan(2, 101, 0);
    CHECK(rep.exhaustive);
    CHECK(rep.samples == 101 * 100);
    CHECK(rep.max_prefix_ratio > 0.0);
    // FJK window bound: |window| / sqrt(p) is a modest constant
    CHECK(rep.max_window_ratio > 1.0);
    CHECK(rep.max_window_ratio < 4.0);
}

TEST_CASE("incomplete scan, d=3 full grid at p=31") {
    auto rep = incomplete_ratio_scan(3, 31, 0);
    CHECK(rep.exhaustive);
    CHECK(rep.samples == 31LL * 31 * 31 - 31);  // Z_3 only
    CHECK(rep.max_prefix_ratio <= 3.0);
}

TEST_CASE("incomplete scan rejects bad inputs") {
    CHECK_THROWS(incomplete_ratio_scan(2, 100, 0));  // not prime
    CHECK_THROWS(incomplete_ratio_scan(1, 101, 0));  // degenerate frequency line
}
