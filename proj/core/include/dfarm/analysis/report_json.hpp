#pragma once

#include "dfarm/analysis/eda.hpp"
#include "dfarm/analysis/features.hpp"
#include "dfarm/analysis/fit.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/outliers.hpp"
#include "dfarm/analysis/pareto.hpp"

#include <string>
#include <vector>

namespace dfarm::analysis {

// Every report document carries "schema_version" and "kind". Non-finite
// numbers are written as null.
inline constexpr int kReportSchemaVersion = 1;

std::string to_json(const TestReport& report);
std::string to_json(const FitReport& report);
std::string to_json(const EdaReport& report);
std::string to_json(const OutlierReport& report, const std::string& column = {});
std::string to_json(const ParetoResult& result, const std::vector<std::string>& objectives = {});
std::string to_json(const std::vector<FeatureScore>& scores, const std::string& target = {});

}  // namespace dfarm::analysis
