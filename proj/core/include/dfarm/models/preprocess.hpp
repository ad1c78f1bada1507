#pragma once

#include "dfarm/table.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm::models {

enum class Scaling { none, minmax, zscore };
enum class Encoding { none, onehot };
enum class Imputation { none, mean, mode };

const char* to_string(Scaling s) noexcept;
const char* to_string(Encoding e) noexcept;
const char* to_string(Imputation i) noexcept;
Scaling scaling_from_string(std::string_view text);
Encoding encoding_from_string(std::string_view text);
Imputation imputation_from_string(std::string_view text);

struct ColumnDirective {
    std::string column;
    Scaling scaling = Scaling::none;
    Encoding encoding = Encoding::none;
    Imputation imputation = Imputation::none;
};

// One directive per input column, in output order.
struct PreprocessorSpec {
    std::vector<ColumnDirective> columns;
};

// Numeric columns get `scaling` (skipped for constant columns) and mean
// imputation; categorical columns one-hot with mode imputation.
PreprocessorSpec default_preprocessor(std::span<const DataColumn> features, Scaling scaling = Scaling::zscore);

struct ColumnStats {
    ColumnDirective directive;
    bool numeric = true;
    double min = 0.0, max = 0.0;
    double mean = 0.0, sd = 0.0;
    std::vector<std::string> levels;  // one-hot order
    double impute_number = 0.0;
    std::string impute_label;
};

struct Transformed {
    Eigen::MatrixXd matrix;
    std::vector<std::string> names;
    // Rows holding a level not seen at fit time; their one-hot block is zero.
    std::vector<std::size_t> unseen_level_rows;
};

// Statistics are learned once by fit(); apply() only reads them.
class FittedPreprocessor {
public:
    FittedPreprocessor() = default;
    explicit FittedPreprocessor(std::vector<ColumnStats> stats) : stats_(std::move(stats)) {}

    // Throws ConfigError for directives that do not suit the column kind, a
    // categorical column left unencoded, or z-scoring a zero-sd column.
    static FittedPreprocessor fit(const PreprocessorSpec& spec, std::span<const DataColumn> table);

    // Columns are looked up by name. Missing values without imputation are an
    // InvalidArgument.
    Transformed apply(std::span<const DataColumn> table) const;

    std::vector<std::string> output_names() const;
    std::size_t output_width() const;
    const std::vector<ColumnStats>& stats() const noexcept { return stats_; }

private:
    std::vector<ColumnStats> stats_;
};

// Partitions {0..n-1} into k folds after a seeded shuffle. The first n % k
// folds hold one extra index; indices within a fold are ascending.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace dfarm::models
