#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylab/rational.hpp"

namespace weylab {

// One linear piece of a kappa(tau) curve: kappa = slope*tau + intercept on
// [tau_lo, tau_hi]. tau = -log_N(delta), kappa = limiting exponent of N.
struct CurveSegment {
    Rational tau_lo, tau_hi;
    Rational slope, intercept;

    Rational kappa_at(const Rational& tau) const { return slope * tau + intercept; }
};

// A theorem/conjecture/corollary rendered as a piecewise-linear exponent
// curve, o(1) factors and absolute constants dropped. Sources whose stated
// hypotheses exclude the requested (s, d) produce an empty-validity curve
// rather than an extrapolated guess.
struct BoundCurve {
    std::string label;
    std::vector<CurveSegment> segments;   // contiguous, non-overlapping, continuous
    bool has_validity = true;             // false: the source makes no claim here
    Rational valid_lo{0}, valid_hi{0};    // claimed tau range (emitted part)
    bool unbounded = false;               // claim extends to tau = +infinity
    bool lower_bound = false;             // true for lower bounds (Thm 3.9/3.10)
    bool conditional = false;             // rests on an unproved hypothesis
    std::string note;

    double kappa(double tau) const;
    Rational kappa_exact(const Rational& tau) const;
};

struct CurveParams {
    Rational s{0};
    long long d = 0;
    std::optional<Rational> alpha;    // conj2.4 needs it
    std::optional<long long> k;       // restrict thm3.10 to one branch
    std::optional<Rational> tau_max;  // emission cap for unbounded claims
};

// Evaluate one named source. Known identifiers (case-insensitive):
//   trivial, hoelder, conj2.1|wooley, conj2.3|dl, conj2.4, conj2.5,
//   thm3.1, thm3.2, cor3.3, cor3.4, thm3.5, cor3.6, thm3.7, thm3.8,
//   thm3.9|thm3.9.1, thm3.9.2, thm3.10
BoundCurve bound_curve(const std::string& source, const CurveParams& params);

std::vector<std::string> known_sources();

// The exact polylines of figures 3.1 ((s,d)=(2,2)), 3.2 ((3,3)) and
// 3.3 ((2,3)), with their legend labels.
std::vector<BoundCurve> figure_polylines(const std::string& figure);

}  // namespace weylab
