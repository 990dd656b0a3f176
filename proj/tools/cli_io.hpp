#pragma once

#include "mdisc/discrepancy.hpp"
#include "mdisc/spectra.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mdisc::cli {

using nlohmann::json;

// Name as printed by Manifold::name() or one of sphere/so3/g24/interval/brownian.
Manifold manifold_from_name(const std::string& name, int d = 3, double s = 1.0);

json table_to_json(const SpectralTable& t);

// {"manifold": str, "points": [[...], ...]} with canonical coordinates.
json points_to_json(const PointSet& ps);
PointSet points_from_json(const json& j);

struct RunConfig {
  Manifold manifold = Manifold::sphere_of(3);
  int M = 8;
  int n = 10;
  double p = 1.0;
  json target = {{"type", "uniform"}};
  MinimizeOptions opts;
};

// Validates ranges; throws DomainError naming the violated precondition.
RunConfig parse_run_config(const json& j);
TargetMeasure build_target(const RunConfig& cfg);

std::string trace_csv(const std::vector<TraceRow>& trace);
std::string study_csv(const std::vector<StudyRow>& rows);

} // namespace mdisc::cli
