#include "dfarm/models/preprocess.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dfarm::models {

const char* to_string(Scaling s) noexcept {
    switch (s) {
    case Scaling::none: return "none";
    case Scaling::minmax: return "minmax";
    case Scaling::zscore: return "zscore";
    }
    return "?";
}

const char* to_string(Encoding e) noexcept { return e == Encoding::onehot ? "onehot" : "none"; }

const char* to_string(Imputation i) noexcept {
    switch (i) {
    case Imputation::none: return "none";
    case Imputation::mean: return "mean";
    case Imputation::mode: return "mode";
    }
    return "?";
}

Scaling scaling_from_string(std::string_view text) {
    if (text == "none") return Scaling::none;
    if (text == "minmax") return Scaling::minmax;
    if (text == "zscore") return Scaling::zscore;
    throw ConfigError("unknown scaling '" + std::string(text) + "'");
}

Encoding encoding_from_string(std::string_view text) {
    if (text == "none") return Encoding::none;
    if (text == "onehot") return Encoding::onehot;
    throw ConfigError("unknown encoding '" + std::string(text) + "'");
}

Imputation imputation_from_string(std::string_view text) {
    if (text == "none") return Imputation::none;
    if (text == "mean") return Imputation::mean;
    if (text == "mode") return Imputation::mode;
    throw ConfigError("unknown imputation '" + std::string(text) + "'");
}

PreprocessorSpec default_preprocessor(std::span<const DataColumn> features, Scaling scaling) {
    PreprocessorSpec spec;
    for (const auto& col : features) {
        ColumnDirective d{col.name()};
        if (col.is_numeric()) {
            const auto values = col.present_numbers();
            bool constant = true;
            for (double v : values) constant = constant && v == values.front();
            d.scaling = constant ? Scaling::none : scaling;
            d.imputation = Imputation::mean;
        } else {
            d.encoding = Encoding::onehot;
            d.imputation = Imputation::mode;
        }
        spec.columns.push_back(std::move(d));
    }
    return spec;
}

namespace {

const DataColumn& find_column(std::span<const DataColumn> table, const std::string& name) {
    for (const auto& c : table)
        if (c.name() == name) return c;
    throw InvalidArgument("column '" + name + "' not found");
}

// Most frequent label; ties go to the lexicographically smallest.
std::string mode_label(const DataColumn& col) {
    std::map<std::string, std::size_t> counts;
    for (const auto& v : col.labels())
        if (v) counts[*v]++;
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [level, count] : counts)
        if (count > best_count) {
            best = level;
            best_count = count;
        }
    return best;
}

double mode_number(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double best = values.front();
    std::size_t best_run = 0;
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        if (j - i > best_run) {
            best_run = j - i;
            best = values[i];
        }
        i = j;
    }
    return best;
}

}  // namespace

FittedPreprocessor FittedPreprocessor::fit(const PreprocessorSpec& spec, std::span<const DataColumn> table) {
    std::vector<ColumnStats> stats;
    for (const auto& d : spec.columns) {
        const DataColumn& col = find_column(table, d.column);
        ColumnStats s;
        s.directive = d;
        s.numeric = col.is_numeric();
        if (s.numeric) {
            if (d.encoding == Encoding::onehot)
                throw ConfigError("column '" + d.column + "': onehot encoding needs a categorical column");
            const auto values = col.present_numbers();
            if (values.empty()) throw ConfigError("column '" + d.column + "' has no values");
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            s.min = *lo;
            s.max = *hi;
            s.mean = analysis::mean(values);
            s.sd = values.size() > 1 ? analysis::stddev(values) : 0.0;
            if (d.scaling == Scaling::zscore && !(s.sd > 0.0))
                throw ConfigError("column '" + d.column + "': zscore scaling of a zero-variance column");
            if (d.imputation == Imputation::mean) s.impute_number = s.mean;
            if (d.imputation == Imputation::mode) s.impute_number = mode_number(values);
        } else {
            if (d.scaling != Scaling::none)
                throw ConfigError("column '" + d.column + "': scaling needs a numeric column");
            if (d.imputation == Imputation::mean)
                throw ConfigError("column '" + d.column + "': mean imputation needs a numeric column");
            if (d.encoding != Encoding::onehot)
                throw ConfigError("column '" + d.column + "': categorical columns must be one-hot encoded");
            s.levels = col.levels();
            std::sort(s.levels.begin(), s.levels.end());
            if (s.levels.empty()) throw ConfigError("column '" + d.column + "' has no values");
            if (d.imputation == Imputation::mode) s.impute_label = mode_label(col);
        }
        stats.push_back(std::move(s));
    }
    return FittedPreprocessor(std::move(stats));
}

std::vector<std::string> FittedPreprocessor::output_names() const {
    std::vector<std::string> names;
    for (const auto& s : stats_) {
        if (s.numeric)
            names.push_back(s.directive.column);
        else
            for (const auto& level : s.levels) names.push_back(s.directive.column + "=" + level);
    }
    return names;
}

std::size_t FittedPreprocessor::output_width() const {
    std::size_t w = 0;
    for (const auto& s : stats_) w += s.numeric ? 1 : s.levels.size();
    return w;
}

Transformed FittedPreprocessor::apply(std::span<const DataColumn> table) const {
    Transformed out;
    out.names = output_names();
    std::size_t rows = 0;
    if (!stats_.empty()) rows = find_column(table, stats_.front().directive.column).size();
    out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(output_width()));

    std::vector<bool> unseen(rows, false);
    Eigen::Index offset = 0;
    for (const auto& s : stats_) {
        const auto& d = s.directive;
        const DataColumn& col = find_column(table, d.column);
        if (col.size() != rows) throw InvalidArgument("column '" + d.column + "' has a different length");
        if (col.is_numeric() != s.numeric)
            throw InvalidArgument("column '" + d.column + "' changed kind since fitting");
        if (s.numeric) {
            const auto values = col.numbers();
            for (std::size_t r = 0; r < rows; ++r) {
                double v = values[r];
                if (std::isnan(v)) {
                    if (d.imputation == Imputation::none)
                        throw InvalidArgument("column '" + d.column + "' has a missing value at row " +
                                              std::to_string(r) + " and no imputation");
                    v = s.impute_number;
                }
                if (d.scaling == Scaling::minmax)
                    v = s.max > s.min ? (v - s.min) / (s.max - s.min) : 0.0;
                else if (d.scaling == Scaling::zscore)
                    v = (v - s.mean) / s.sd;
                out.matrix(static_cast<Eigen::Index>(r), offset) = v;
            }
            offset += 1;
        } else {
            const auto& labels = col.labels();
            for (std::size_t r = 0; r < rows; ++r) {
                std::string v;
                if (labels[r]) {
                    v = *labels[r];
                } else {
                    if (d.imputation == Imputation::none)
                        throw InvalidArgument("column '" + d.column + "' has a missing value at row " +
                                              std::to_string(r) + " and no imputation");
                    v = s.impute_label;
                }
                const auto it = std::lower_bound(s.levels.begin(), s.levels.end(), v);
                if (it == s.levels.end() || *it != v) {
                    unseen[r] = true;
                    continue;
                }
                out.matrix(static_cast<Eigen::Index>(r), offset + (it - s.levels.begin())) = 1.0;
            }
            offset += static_cast<Eigen::Index>(s.levels.size());
        }
    }
    for (std::size_t r = 0; r < rows; ++r)
        if (unseen[r]) out.unseen_level_rows.push_back(r);
    return out;
}

}  // namespace dfarm::models
