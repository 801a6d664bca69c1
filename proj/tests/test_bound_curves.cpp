#include "doctest.h"
#include "weylab/bound_curves.hpp"
#include "weylab/exponent.hpp"

using namespace weylab;

namespace {
CurveParams P(Rational s, long long d) {
    CurveParams p;
    p.s = s;
    p.d = d;
    return p;
}
}  // namespace

TEST_CASE("cor3.6 (2,2) matches the tabulated intervals") {
    BoundCurve c = bound_curve("cor3.6", P(Rational(2), 2));
    REQUIRE(c.segments.size() == 4);
    CHECK(c.segments[0].slope == Rational(-2));
    CHECK(c.segments[0].intercept == Rational(2));
    CHECK(c.segments[0].tau_hi == Rational(1, 2));
    CHECK(c.segments[1].slope == Rational(0));
    CHECK(c.segments[1].intercept == Rational(1));
    CHECK(c.segments[2].slope == Rational(-1));
    CHECK(c.segments[2].intercept == Rational(2));
    CHECK(c.segments[3].slope == Rational(-2));
    CHECK(c.segments[3].intercept == Rational(4));
    CHECK(c.segments[3].tau_hi == Rational(3));
}

TEST_CASE("conj2.5 slope is d - alpha_0") {
    BoundCurve c = bound_curve("conj2.5", P(Rational(2), 2));
    REQUIRE(c.segments.size() == 1);
    CHECK(c.segments[0].slope == Rational(-1));  // alpha_0(2,2) = 1
    CHECK(c.segments[0].intercept == Rational(2));
    CHECK(c.segments[0].tau_hi == Rational(2));
    CHECK(c.conditional);
    BoundCurve c33 = bound_curve("conj2.5", P(Rational(3), 3));
    CHECK(c33.segments[0].slope == Rational(-2));
    BoundCurve c23 = bound_curve("conj2.5", P(Rational(2), 3));
    CHECK(c23.segments[0].slope == Rational(-7, 3));  // alpha_0(3,2) = 2/3
}

TEST_CASE("D-L curve") {
    BoundCurve c = bound_curve("conj2.3", P(Rational(2), 3));
    REQUIRE(c.segments.size() == 1);
    CHECK(c.segments[0].slope == Rational(-2));
    CHECK(c.segments[0].intercept == Rational(2));
    BoundCurve c22 = bound_curve("dl", P(Rational(2), 2));
    CHECK(c22.segments[0].slope == Rational(-3, 2));
    CHECK(c22.segments[0].intercept == Rational(3));
}

TEST_CASE("thm3.7 value at tau = 0") {
    BoundCurve c = bound_curve("thm3.7", P(Rational(1), 2));
    CHECK(c.kappa_exact(Rational(0)) == Rational(5, 4));
    CHECK(c.valid_hi == Rational(3, 8));
    CHECK(bound_curve("thm3.7", P(Rational(1), 3)).has_validity == false);
}

TEST_CASE("thm3.8 validity gate") {
    // d=3: D=4, s(d)=6, needs s > (6*4 - 10)/2 = 7
    CHECK(bound_curve("thm3.8", P(Rational(7), 3)).has_validity == false);
    BoundCurve c = bound_curve("thm3.8", P(Rational(8), 3));
    CHECK(c.has_validity);
    // kappa(0) = 2s(1 - s(d)/(2s + d^2 + 1)) = 16(1 - 6/26) = 160/13
    CHECK(c.kappa_exact(Rational(0)) == Rational(160, 13));
}

TEST_CASE("wooley curve and validity ranges") {
    // (2,2): s < d(d+1)/4 + 1 = 2.5, so tau capped at (d+1)/4 - 1/d = 1/4
    BoundCurve c = bound_curve("wooley", P(Rational(2), 2));
    CHECK(c.valid_hi == Rational(1, 4));
    CHECK(c.kappa_exact(Rational(0)) == Rational(2));
    CHECK(c.kappa_exact(Rational(1, 4)) == Rational(3, 2));
    // large s: claim extends to all tau
    BoundCurve big = bound_curve("wooley", P(Rational(4), 2));
    CHECK(big.unbounded);
    // crossing of s - d tau with 2s - s(d) at tau = (s(d)-s)/d
    CHECK(big.kappa_exact(Rational(2)) == Rational(5));  // 2s - s(d) = 8 - 3
}

TEST_CASE("thm3.1 is continuous and matches hand values") {
    BoundCurve c = bound_curve("thm3.1", P(Rational(1), 2));
    // segments: s-(d-1/2)t, s-1/2, s-(d/2)t, then ladder
    CHECK(c.kappa_exact(Rational(0)) == Rational(1));
    CHECK(c.kappa_exact(Rational(1, 3)) == Rational(1, 2));
    CHECK(c.kappa_exact(Rational(1, 2)) == Rational(1, 2));
    CHECK(c.kappa_exact(Rational(1)) == Rational(0));
    // ladder k=1 on [1,2]: s + s(1)/2 - ((d+1)/2) t = 1.5 - 1.5t
    CHECK(c.kappa_exact(Rational(2)) == Rational(-3, 2));
    for (size_t i = 0; i + 1 < c.segments.size(); ++i)
        CHECK(c.segments[i].kappa_at(c.segments[i].tau_hi) ==
              c.segments[i + 1].kappa_at(c.segments[i + 1].tau_lo));
    CHECK(bound_curve("thm3.1", P(Rational(2), 2)).has_validity == false);  // s > s(d)/2
}

TEST_CASE("thm3.2, cor3.3, cor3.4 gates and values") {
    CHECK(bound_curve("thm3.2", P(Rational(1), 2)).has_validity == false);
    CHECK(bound_curve("thm3.2", P(Rational(5, 2), 2)).has_validity == false);  // non-integer
    BoundCurve c = bound_curve("thm3.2", P(Rational(2), 2));
    CHECK(c.has_validity);
    // at tau=0 every term is <= 0 except the constant branch: kappa(0) = s + max(0,...)
    CHECK(c.kappa_exact(Rational(0)) <= Rational(4));
    BoundCurve c33 = bound_curve("cor3.3", P(Rational(2), 2));
    CHECK(c33.kappa_exact(Rational(0)) == Rational(5, 2));  // 2s - s(d)/2 = 4 - 3/2
    BoundCurve c34 = bound_curve("cor3.4", P(Rational(2), 2));
    // validity min{1/(2d-2), (s(d)-s) theta(d)} = min{1/2, 1/2} = 1/2
    CHECK(c34.valid_hi == Rational(1, 2));
    CHECK(c34.segments[0].slope == Rational(-1));
}

TEST_CASE("thm3.5 conditional curve is continuous") {
    for (auto [s, d] : {std::pair<long long, long long>{1, 2}, {2, 2}, {3, 3}, {5, 3}}) {
        BoundCurve c = bound_curve("thm3.5", P(Rational(s), d));
        REQUIRE(c.has_validity);
        CHECK(c.conditional);
        for (size_t i = 0; i + 1 < c.segments.size(); ++i)
            CHECK(c.segments[i].kappa_at(c.segments[i].tau_hi) ==
                  c.segments[i + 1].kappa_at(c.segments[i + 1].tau_lo));
        CHECK(c.segments.front().tau_lo == Rational(0));
        CHECK(c.segments.back().tau_hi == Rational(d));
    }
    CHECK(bound_curve("thm3.5", P(Rational(6), 3)).has_validity == false);  // s = s(d)
}

TEST_CASE("lower bound curves") {
    BoundCurve c = bound_curve("thm3.9", P(Rational(2), 2));
    CHECK(c.lower_bound);
    CHECK(c.kappa_exact(Rational(0)) == Rational(1));  // s - 1
    CHECK(c.kappa_exact(Rational(1)) == Rational(-1));
    BoundCurve c4 = bound_curve("thm3.9", P(Rational(4), 2));
    // s=4: max(s-1-2t, (2s-3) - s t) = 5 - 4t near 0
    CHECK(c4.kappa_exact(Rational(0)) == Rational(5));
    BoundCurve c2 = bound_curve("thm3.9.2", P(Rational(2), 2));
    CHECK(c2.kappa_exact(Rational(0)) == Rational(3, 2));
    CHECK(c2.valid_hi == Rational(1, 2));

    BoundCurve t10 = bound_curve("thm3.10", P(Rational(2), 3));
    CHECK(t10.lower_bound);
    CHECK(t10.valid_hi == mu(3));
    // s <= d: flat branch d + s - s(d) - d tau = -1 - 3 tau
    CHECK(t10.kappa_exact(Rational(0)) == Rational(-1));
}

TEST_CASE("trivial and hoelder") {
    BoundCurve t = bound_curve("trivial", P(Rational(2), 2));
    CHECK(t.kappa_exact(Rational(0)) == Rational(4));
    CHECK(t.kappa_exact(Rational(1)) == Rational(2));
    CHECK(t.unbounded);
    BoundCurve h = bound_curve("hoelder", P(Rational(2), 2));
    // slope -(d - 2s/(d+1)) = -(2 - 4/3) = -2/3
    CHECK(h.segments[0].slope == Rational(-2, 3));
}

TEST_CASE("upper curves at tau=0 sit above the true exponent, lower below") {
    // (s,d) = (2,2): J_{2,2}(N) ~ 2N^2, true kappa(0) = 2.
    for (const char* src : {"trivial", "hoelder", "conj2.1", "conj2.3", "conj2.5", "thm3.2",
                            "cor3.3", "cor3.6"}) {
        BoundCurve c = bound_curve(src, P(Rational(2), 2));
        REQUIRE(c.has_validity);
        CHECK(c.kappa_exact(Rational(0)) >= Rational(2));
    }
    for (const char* src : {"thm3.9", "thm3.9.2", "thm3.10"}) {
        BoundCurve c = bound_curve(src, P(Rational(2), 2));
        REQUIRE(c.has_validity);
        CHECK(c.kappa_exact(Rational(0)) <= Rational(2));
    }
}

TEST_CASE("unknown source throws, out-of-range yields empty validity") {
    CHECK_THROWS(bound_curve("nosuch", P(Rational(2), 2)));
    BoundCurve c = bound_curve("cor3.6", P(Rational(4), 2));
    CHECK(c.has_validity == false);
    CHECK(c.segments.empty());
}

TEST_CASE("figure polylines carry the legend sets") {
    auto f1 = figure_polylines("3.1");
    REQUIRE(f1.size() == 3);
    CHECK(f1[0].label.find("Conj. 2.5") != std::string::npos);
    CHECK(f1[2].segments.size() == 4);
    auto f2 = figure_polylines("3.2");
    REQUIRE(f2.size() == 4);
    CHECK(f2[1].label.find("Wooley") != std::string::npos);
    CHECK(f2[1].segments[0].tau_hi == Rational(2, 3));
    CHECK(f2[3].segments.size() == 6);
    // the [2,3] piece of cor3.6 in figure 3.2 is 9/2 - (5/2) x
    CHECK(f2[3].segments[4].slope == Rational(-5, 2));
    CHECK(f2[3].segments[4].intercept == Rational(9, 2));
    auto f3 = figure_polylines("3.3");
    REQUIRE(f3.size() == 4);
    CHECK(f3[1].segments[0].slope == Rational(-3));
    CHECK_THROWS(figure_polylines("9.9"));
}

TEST_CASE("every emitted curve is contiguous and continuous") {
    std::vector<std::pair<Rational, long long>> grid = {
        {Rational(1), 2}, {Rational(2), 2}, {Rational(2), 3},
        {Rational(3), 3}, {Rational(5), 3}, {Rational(9), 4}};
    for (const auto& src : known_sources()) {
        for (const auto& [s, d] : grid) {
            CurveParams p;
            p.s = s;
            p.d = d;
            if (src == "conj2.4") p.alpha = Rational(1);
            BoundCurve c = bound_curve(src, p);
            if (!c.has_validity) continue;
            REQUIRE(!c.segments.empty());
            for (size_t i = 0; i + 1 < c.segments.size(); ++i) {
                CHECK(c.segments[i].tau_hi == c.segments[i + 1].tau_lo);
                CHECK(c.segments[i].kappa_at(c.segments[i].tau_hi) ==
                      c.segments[i + 1].kappa_at(c.segments[i + 1].tau_lo));
            }
            CHECK(c.segments.front().tau_lo == c.valid_lo);
        }
    }
}

TEST_CASE("every cor3.6 curve is continuous at its breakpoints") {
    for (auto [s, d] : {std::pair<long long, long long>{2, 2}, {2, 3}, {3, 3}}) {
        BoundCurve c = bound_curve("cor3.6", P(Rational(s), d));
        for (size_t i = 0; i + 1 < c.segments.size(); ++i) {
            CHECK(c.segments[i].tau_hi == c.segments[i + 1].tau_lo);
            CHECK(c.segments[i].kappa_at(c.segments[i].tau_hi) ==
                  c.segments[i + 1].kappa_at(c.segments[i + 1].tau_lo));
        }
    }
}
