#pragma once

#include "dfarm/models/model.hpp"
#include "dfarm/models/search.hpp"

#include <string>

namespace dfarm::models {

inline constexpr int kModelFormatVersion = 1;

// JSON with "format_version", the family tag, hyperparameters, preprocessor
// statistics and estimator parameter arrays. Reals use their shortest
// round-trip form, so a reloaded model predicts bit-identically.
std::string model_to_json(const TrainedModel& model);
// A different format_version is a ConfigError; malformed documents are a
// ParseError.
TrainedModel model_from_json(const std::string& text);

std::string cv_report_to_json(const CvReport& report);

// {"family", "task", "target", "features", "params", "ranges": {name: {lo, hi, log, integer}},
//  "preprocess": [{column, scaling, encoding, imputation}]}
struct ModelConfig {
    ModelSpec spec;
    std::string target;
    std::vector<std::string> features;
    PreprocessorSpec preprocess;  // empty means defaults
};

ModelConfig model_config_from_json(const std::string& text);

}  // namespace dfarm::models
