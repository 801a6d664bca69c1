#include "weylab/report.hpp"

#include <sstream>

namespace weylab {

json to_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}, {"str", r.str()}};
}

json to_json(const CurveSegment& s) {
    return json{{"tau_lo", s.tau_lo.to_double()},
                {"tau_hi", s.tau_hi.to_double()},
                {"slope", s.slope.to_double()},
                {"intercept", s.intercept.to_double()},
                {"slope_exact", s.slope.str()},
                {"intercept_exact", s.intercept.str()},
                {"tau_lo_exact", s.tau_lo.str()},
                {"tau_hi_exact", s.tau_hi.str()}};
}

json to_json(const BoundCurve& c) {
    json segs = json::array();
    for (const auto& s : c.segments) segs.push_back(to_json(s));
    json validity;
    if (c.has_validity) {
        validity = json{{"tau_lo", c.valid_lo.to_double()},
                        {"tau_hi", c.unbounded ? json() : json(c.valid_hi.to_double())},
                        {"unbounded", c.unbounded}};
    }
    return json{{"label", c.label},
                {"segments", segs},
                {"validity", validity},
                {"empty_validity", !c.has_validity},
                {"lower_bound", c.lower_bound},
                {"conditional", c.conditional},
                {"note", c.note}};
}

json to_json(const CountResult& r) {
    json j{{"s", r.s}, {"d", r.d}, {"N", r.N}, {"count", r.count},
           {"elapsed_sec", r.elapsed_sec}, {"method", r.method}};
    if (r.h) j["h"] = *r.h;
    if (r.delta) j["delta"] = *r.delta;
    return j;
}

json to_json(const MeanValueEstimate& e) {
    return json{{"value", e.value},
                {"error_bound", e.error_bound},
                {"empirical_error", e.empirical_error},
                {"scheme", e.scheme},
                {"resolution", e.resolution}};
}

json to_json(const SupInfResult& r) {
    return json{{"xi", r.box.xi.coords},
                {"delta", r.box.delta},
                {"estimate", to_json(r.estimate)},
                {"budget_exhausted", r.budget_exhausted},
                {"evaluations", r.evaluations},
                {"heuristic", r.heuristic}};
}

json to_json(const KappaFit& f) {
    return json{{"s", f.s},       {"d", f.d},           {"tau", f.tau},
                {"N_list", f.N_list}, {"log_values", f.log_values}, {"slope", f.slope},
                {"intercept", f.intercept}, {"residual", f.residual}, {"variant", f.variant}};
}

json to_json(const MajorArcReport& r) {
    return json{{"d", r.d},
                {"N", r.N},
                {"c", r.c},
                {"samples", r.samples},
                {"max_abs_phase", r.max_abs_phase},
                {"min_re_ratio", r.min_re_ratio},
                {"volume", r.volume},
                {"clipped_volume", r.clipped_volume},
                {"delta", r.delta}};
}

json to_json(const SchrodingerReport& r) {
    return json{{"x0", r.x0},
                {"t0", r.t0},
                {"delta", r.delta},
                {"N", r.N},
                {"t_samples", r.t_samples},
                {"min_rho", r.min_rho},
                {"max_rho", r.max_rho},
                {"argmin_t", r.argmin_t},
                {"argmax_t", r.argmax_t},
                {"min_over_delta_N54", r.min_over_upper},
                {"max_over_delta", r.max_over_lower}};
}

json to_json(const PartitionReport& r) {
    return json{{"lhs", r.lhs},   {"rhs", r.rhs},          {"J0", r.J0},
                {"hj_sums", r.hj_sums}, {"hj_sizes", r.hj_sizes}, {"equal", r.equal}};
}

json to_json(const CauchyReport& r) {
    return json{{"lhs", r.lhs}, {"card", r.card}, {"J2s", r.J2s}, {"holds", r.holds}};
}

json to_json(const RationalApprox& r) {
    return json{{"q", r.q},
                {"q_factors", r.q_factors},
                {"numerators", r.numerators},
                {"errors", r.errors},
                {"envelopes", r.envelopes},
                {"truncated", r.truncated}};
}

json to_json(const DetectionResult& r) {
    json j{{"found", r.witness.has_value()}, {"truncated", r.truncated}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

json to_json(const LevelSetEstimate& e) {
    return json{{"d", e.d},
                {"N", e.N},
                {"A", e.A},
                {"delta", e.delta},
                {"xi", e.xi},
                {"measure", e.measure},
                {"samples", e.samples},
                {"hits", e.hits},
                {"confidence_halfwidth", e.confidence_halfwidth},
                {"sampler", e.sampler}};
}

json to_json(const LevelSetBoundReport& r) {
    return json{{"d", r.d},
                {"N", r.N},
                {"A", r.A},
                {"delta", r.delta},
                {"envelope", r.envelope},
                {"slack", r.slack},
                {"max_ratio", r.max_ratio},
                {"within_slack", r.within_slack},
                {"ratios", r.ratios}};
}

json to_json(const ContinuityReport& r) {
    return json{{"p", r.p},
                {"a", r.a},
                {"b", r.b},
                {"N", r.N},
                {"c", r.c},
                {"samples", r.samples},
                {"min_gauss_ratio", r.min_gauss_ratio},
                {"rational_ratio", r.rational_ratio},
                {"max_continuity_ratio", r.max_continuity_ratio}};
}

json to_json(const FieldScanReport& r) {
    return json{{"d", r.d},
                {"p", r.p},
                {"gamma", r.gamma},
                {"domain", r.domain},
                {"hits", r.hits},
                {"density", r.density},
                {"box_side", r.box_side},
                {"box_corner", r.box_corner},
                {"box_hits", r.box_hits},
                {"box_density", r.box_density}};
}

json to_json(const MonomialCurveReport& r) {
    return json{{"p", r.p},
                {"k", r.k},
                {"L", r.L},
                {"a", r.a},
                {"corner", r.corner},
                {"count", r.count},
                {"threshold", r.threshold},
                {"meets_threshold", r.meets_threshold},
                {"hypothesis_applies", r.hypothesis_applies}};
}

json to_json(const WitnessReport& r) {
    return json{{"s", r.s},
                {"d", r.d},
                {"N", r.N},
                {"delta", r.delta},
                {"xi", r.xi},
                {"k", r.k},
                {"prime", r.prime},
                {"boxes", r.boxes},
                {"volume", r.volume},
                {"min_abs_sum", r.min_abs_sum},
                {"lower_bound", r.lower_bound},
                {"predicted_kappa", r.predicted_kappa},
                {"sampled_points", r.sampled_points},
                {"constants",
                 json{{"c", r.constants.c},
                      {"C", r.constants.C},
                      {"gamma", r.constants.gamma},
                      {"Gamma", r.constants.Gamma}}}};
}

json to_json(const IncompleteScanReport& r) {
    return json{{"p", r.p},
                {"d", r.d},
                {"samples", r.samples},
                {"exhaustive", r.exhaustive},
                {"max_prefix_ratio", r.max_prefix_ratio},
                {"argmax_u", r.argmax_u},
                {"max_window_ratio", r.max_window_ratio},
                {"argmax_window_u", r.argmax_window_u}};
}

namespace {

// Contiguous segments share interior breakpoints, so a curve with n segments
// prints n + 1 rows.
void curve_rows(std::ostringstream& os, const BoundCurve& c) {
    if (c.segments.empty()) return;
    auto row = [&](const Rational& t, const Rational& k) {
        os << '"' << c.label << "\"," << t.to_double() << ',' << k.to_double() << ','
           << t.str() << ',' << k.str() << '\n';
    };
    const auto& first = c.segments.front();
    row(first.tau_lo, first.kappa_at(first.tau_lo));
    for (const auto& s : c.segments) row(s.tau_hi, s.kappa_at(s.tau_hi));
}

}  // namespace

std::string curve_csv(const BoundCurve& c) {
    std::ostringstream os;
    os << "label,tau,kappa,tau_exact,kappa_exact\n";
    curve_rows(os, c);
    return os.str();
}

std::string curves_csv(const std::vector<BoundCurve>& cs) {
    std::ostringstream os;
    os << "label,tau,kappa,tau_exact,kappa_exact\n";
    for (const auto& c : cs) curve_rows(os, c);
    return os.str();
}

}  // namespace weylab
