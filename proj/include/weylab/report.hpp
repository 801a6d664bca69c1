#pragma once

#include <string>

#include "json.hpp"
#include "weylab/arc_structure.hpp"
#include "weylab/bound_curves.hpp"
#include "weylab/box_mean.hpp"
#include "weylab/rational_sums.hpp"
#include "weylab/vinogradov.hpp"

namespace weylab {

using json = nlohmann::json;

json to_json(const Rational& r);
json to_json(const CurveSegment& s);
json to_json(const BoundCurve& c);
json to_json(const CountResult& r);
json to_json(const MeanValueEstimate& e);
json to_json(const SupInfResult& r);
json to_json(const KappaFit& f);
json to_json(const MajorArcReport& r);
json to_json(const SchrodingerReport& r);
json to_json(const PartitionReport& r);
json to_json(const CauchyReport& r);
json to_json(const RationalApprox& r);
json to_json(const DetectionResult& r);
json to_json(const LevelSetEstimate& e);
json to_json(const LevelSetBoundReport& r);
json to_json(const ContinuityReport& r);
json to_json(const FieldScanReport& r);
json to_json(const MonomialCurveReport& r);
json to_json(const WitnessReport& r);
json to_json(const IncompleteScanReport& r);

// One breakpoint per row: label,tau,kappa (both endpoints of every segment).
std::string curve_csv(const BoundCurve& c);
std::string curves_csv(const std::vector<BoundCurve>& cs);

}  // namespace weylab
