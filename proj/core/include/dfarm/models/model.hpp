#pragma once

#include "dfarm/models/estimators.hpp"
#include "dfarm/models/preprocess.hpp"
#include "dfarm/table.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dfarm::models {

enum class ModelFamily { linear_ridge, knn, cart_tree, random_forest, mlp };
enum class Task { regression, classification };

const char* to_string(ModelFamily f) noexcept;
const char* to_string(Task t) noexcept;
ModelFamily family_from_string(std::string_view text);
Task task_from_string(std::string_view text);

// All hyperparameters are numbers; integer ones hold whole values.
//   linear_ridge:  lambda
//   knn:           k
//   cart_tree:     max_depth, min_leaf
//   random_forest: n_trees, max_depth, min_leaf, feature_fraction, bootstrap (0/1)
//   mlp:           hidden1, hidden2 (0 = single layer), learning_rate, epochs, batch_size
using Hyperparameters = std::map<std::string, double>;

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
    bool integer = false;
    bool log = false;  // log-uniform sampling, needs lo > 0
};

struct ModelSpec {
    ModelFamily family = ModelFamily::linear_ridge;
    Task task = Task::regression;
    std::map<std::string, ParamRange> ranges;  // searched
    Hyperparameters fixed;                     // overrides defaults, not searched
};

Hyperparameters default_hyperparameters(ModelFamily family);
std::map<std::string, ParamRange> default_ranges(ModelFamily family);
bool is_integer_parameter(ModelFamily family, const std::string& name);
// Throws ConfigError for unknown names, empty or reversed ranges, log ranges
// touching zero and fractional bounds on integer parameters.
void validate_spec(const ModelSpec& spec);
// Fills in defaults and checks every value.
Hyperparameters resolve_hyperparameters(ModelFamily family, const Hyperparameters& given);

struct Dataset {
    std::vector<DataColumn> features;
    DataColumn target;

    std::size_t rows() const noexcept { return target.size(); }
    Dataset select(std::span<const std::size_t> rows) const;
};

// Builds a dataset from a table: `features` empty means every non-target column.
Dataset dataset_from_table(const ResultTable& table, const std::string& target,
                           const std::vector<std::string>& features = {});

struct Prediction {
    std::vector<double> values;       // regression values, or class ids
    std::vector<std::string> labels;  // classification only
};

using EstimatorState = std::variant<RidgeModel, KnnModel, TreeModel, ForestModel, MlpModel>;

// A fitted surrogate. Immutable after training; predict() is const and safe
// to call concurrently.
struct TrainedModel {
    ModelFamily family = ModelFamily::linear_ridge;
    Task task = Task::regression;
    Hyperparameters params;
    std::uint64_t seed = 0;
    FittedPreprocessor preprocessor;
    std::vector<std::string> features;
    std::string target;
    std::vector<std::string> classes;  // sorted; class id = position
    EstimatorState state;

    Prediction predict(std::span<const DataColumn> features) const;
    Eigen::VectorXd predict_matrix(const Eigen::MatrixXd& x) const;
};

// Regression needs a numeric target without missing values. Classification
// reads categorical labels, or numeric values formatted as labels. Fewer
// than two rows or a single class is a TrainingError.
TrainedModel train(ModelFamily family, Task task, const Hyperparameters& params, const PreprocessorSpec& preprocess,
                   const Dataset& data, std::uint64_t seed);
// Uses default_preprocessor(): z-scored numerics, except tree models which
// see unscaled values.
TrainedModel train(ModelFamily family, Task task, const Hyperparameters& params, const Dataset& data,
                   std::uint64_t seed);

Targets encode_targets(const DataColumn& target, Task task, const std::vector<std::string>& classes);
std::vector<std::string> class_labels(const DataColumn& target);
// Per-row labels as classification sees them; empty for missing rows.
std::vector<std::string> target_labels(const DataColumn& target);

}  // namespace dfarm::models
