#pragma once

#include "dfarm/models/model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dfarm::models {

struct EvaluatedConfig {
    Hyperparameters params;
    std::vector<double> fold_scores;
    double mean = 0.0;
    double sd = 0.0;
};

struct CvReport {
    std::size_t k = 0;
    std::string metric;  // "mse" (lower is better) or "accuracy" (higher is better)
    std::vector<EvaluatedConfig> configs;
    std::size_t best = 0;

    const EvaluatedConfig& best_config() const { return configs.at(best); }
};

struct SearchResult {
    TrainedModel model;
    CvReport report;
};

struct SearchOptions {
    std::size_t k = 5;
    std::size_t budget = 20;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // 0 = hardware concurrency
    // Empty means default_preprocessor(); it is refitted inside every fold.
    PreprocessorSpec preprocess;
};

// Samples `budget` configurations from the spec's ranges (defaults for
// families without any), scores each by k-fold CV on shared folds and
// refits the best on all rows. Configuration i samples from substream
// (seed, i) and trains fold f with (seed, i, f), so the report does not
// depend on the thread count. Ties keep the earlier configuration.
SearchResult random_search_cv(const ModelSpec& spec, const Dataset& data, const SearchOptions& options);

Hyperparameters sample_configuration(const ModelSpec& spec, std::uint64_t seed, std::size_t index);

}  // namespace dfarm::models
