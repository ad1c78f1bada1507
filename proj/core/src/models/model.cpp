#include "dfarm/models/model.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dfarm::models {

const char* to_string(ModelFamily f) noexcept {
    switch (f) {
    case ModelFamily::linear_ridge: return "linear_ridge";
    case ModelFamily::knn: return "knn";
    case ModelFamily::cart_tree: return "cart_tree";
    case ModelFamily::random_forest: return "random_forest";
    case ModelFamily::mlp: return "mlp";
    }
    return "?";
}

const char* to_string(Task t) noexcept { return t == Task::regression ? "regression" : "classification"; }

ModelFamily family_from_string(std::string_view text) {
    for (auto f : {ModelFamily::linear_ridge, ModelFamily::knn, ModelFamily::cart_tree, ModelFamily::random_forest,
                   ModelFamily::mlp})
        if (text == to_string(f)) return f;
    throw ConfigError("unknown model family '" + std::string(text) + "'");
}

Task task_from_string(std::string_view text) {
    if (text == "regression") return Task::regression;
    if (text == "classification") return Task::classification;
    throw ConfigError("unknown task '" + std::string(text) + "'");
}

Hyperparameters default_hyperparameters(ModelFamily family) {
    switch (family) {
    case ModelFamily::linear_ridge: return {{"lambda", 1e-3}};
    case ModelFamily::knn: return {{"k", 5}};
    case ModelFamily::cart_tree: return {{"max_depth", 8}, {"min_leaf", 1}};
    case ModelFamily::random_forest:
        return {{"n_trees", 50}, {"max_depth", 12}, {"min_leaf", 1}, {"feature_fraction", 0.5}, {"bootstrap", 1}};
    case ModelFamily::mlp:
        return {{"hidden1", 16}, {"hidden2", 0}, {"learning_rate", 0.01}, {"epochs", 100}, {"batch_size", 32}};
    }
    return {};
}

std::map<std::string, ParamRange> default_ranges(ModelFamily family) {
    switch (family) {
    case ModelFamily::linear_ridge: return {{"lambda", {1e-6, 1e2, false, true}}};
    case ModelFamily::knn: return {{"k", {1, 25, true, false}}};
    case ModelFamily::cart_tree: return {{"max_depth", {2, 12, true, false}}, {"min_leaf", {1, 20, true, false}}};
    case ModelFamily::random_forest:
        return {{"n_trees", {10, 100, true, false}},
                {"max_depth", {2, 12, true, false}},
                {"feature_fraction", {0.3, 1.0, false, false}}};
    case ModelFamily::mlp:
        return {{"hidden1", {4, 64, true, false}},
                {"learning_rate", {1e-3, 1e-1, false, true}},
                {"epochs", {20, 200, true, false}}};
    }
    return {};
}

bool is_integer_parameter(ModelFamily, const std::string& name) {
    static const std::set<std::string> integers{"k",       "max_depth", "min_leaf", "n_trees",   "bootstrap",
                                                "hidden1", "hidden2",   "epochs",   "batch_size"};
    return integers.count(name) > 0;
}

namespace {

void check_value(const std::string& name, double v) {
    auto fail = [&](const char* rule) {
        throw ConfigError("hyperparameter " + name + " = " + csv::format_short(v) + " must be " + rule);
    };
    if (!std::isfinite(v)) fail("finite");
    if (name == "lambda" && v < 0) fail(">= 0");
    if ((name == "k" || name == "min_leaf" || name == "n_trees" || name == "hidden1" || name == "epochs" ||
         name == "batch_size") && v < 1)
        fail(">= 1");
    if ((name == "max_depth" || name == "hidden2") && v < 0) fail(">= 0");
    if (name == "feature_fraction" && !(v > 0.0 && v <= 1.0)) fail("in (0, 1]");
    if (name == "bootstrap" && v != 0.0 && v != 1.0) fail("0 or 1");
    if (name == "learning_rate" && !(v > 0.0)) fail("> 0");
}

}  // namespace

Hyperparameters resolve_hyperparameters(ModelFamily family, const Hyperparameters& given) {
    Hyperparameters out = default_hyperparameters(family);
    for (const auto& [name, value] : given) {
        if (!out.count(name))
            throw ConfigError("unknown hyperparameter '" + name + "' for " + to_string(family));
        if (is_integer_parameter(family, name) && value != std::floor(value))
            throw ConfigError("hyperparameter " + name + " must be a whole number");
        out[name] = value;
    }
    for (const auto& [name, value] : out) check_value(name, value);
    return out;
}

void validate_spec(const ModelSpec& spec) {
    const auto defaults = default_hyperparameters(spec.family);
    for (const auto& [name, r] : spec.ranges) {
        if (!defaults.count(name))
            throw ConfigError("unknown hyperparameter '" + name + "' for " + to_string(spec.family));
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
            throw ConfigError("range for " + name + " is empty or reversed");
        if (r.log && !(r.lo > 0.0)) throw ConfigError("log range for " + name + " needs lo > 0");
        const bool integer = r.integer || is_integer_parameter(spec.family, name);
        if (integer && (r.lo != std::floor(r.lo) || r.hi != std::floor(r.hi)))
            throw ConfigError("range for integer hyperparameter " + name + " needs whole bounds");
        check_value(name, r.lo);
        check_value(name, r.hi);
    }
    resolve_hyperparameters(spec.family, spec.fixed);
}

Dataset Dataset::select(std::span<const std::size_t> rows) const {
    Dataset out;
    for (const auto& c : features) out.features.push_back(c.select(rows));
    out.target = target.select(rows);
    return out;
}

Dataset dataset_from_table(const ResultTable& table, const std::string& target, const std::vector<std::string>& features) {
    const ResultTable ok = table.ok_rows();
    Dataset d;
    d.target = ok.column(target);
    if (features.empty()) {
        for (const auto& c : ok.columns())
            if (c.name() != target) d.features.push_back(c);
    } else {
        for (const auto& name : features) d.features.push_back(ok.column(name));
    }
    if (d.features.empty()) throw ConfigError("no feature columns");
    return d;
}

namespace {

std::string label_of(double v) { return csv::format_short(v, 15); }

}  // namespace

std::vector<std::string> class_labels(const DataColumn& target) {
    std::set<std::string> levels;
    if (target.is_numeric()) {
        for (double v : target.present_numbers()) levels.insert(label_of(v));
    } else {
        for (const auto& v : target.labels())
            if (v) levels.insert(*v);
    }
    return {levels.begin(), levels.end()};
}

std::vector<std::string> target_labels(const DataColumn& target) {
    std::vector<std::string> out(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target.is_missing(i)) continue;
        out[i] = target.is_numeric() ? label_of(target.numbers()[i]) : *target.labels()[i];
    }
    return out;
}

Targets encode_targets(const DataColumn& target, Task task, const std::vector<std::string>& classes) {
    Targets t;
    const std::size_t n = target.size();
    if (task == Task::regression) {
        if (!target.is_numeric()) throw TrainingError("regression target '" + target.name() + "' is not numeric");
        t.values.resize(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const double v = target.numbers()[i];
            if (std::isnan(v)) throw TrainingError("target '" + target.name() + "' has missing values");
            t.values(static_cast<Eigen::Index>(i)) = v;
        }
        return t;
    }
    t.n_classes = static_cast<int>(classes.size());
    t.classes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (target.is_missing(i)) throw TrainingError("target '" + target.name() + "' has missing values");
        const std::string label = target.is_numeric() ? label_of(target.numbers()[i]) : *target.labels()[i];
        const auto it = std::lower_bound(classes.begin(), classes.end(), label);
        if (it == classes.end() || *it != label) throw InvalidArgument("unknown class label '" + label + "'");
        t.classes[i] = static_cast<int>(it - classes.begin());
    }
    return t;
}

Targets Targets::select(const std::vector<std::size_t>& rows) const {
    Targets out;
    out.n_classes = n_classes;
    if (classification()) {
        out.classes.reserve(rows.size());
        for (auto r : rows) out.classes.push_back(classes[r]);
    } else {
        out.values.resize(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.values(static_cast<Eigen::Index>(i)) = values(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

namespace {

int whole(const Hyperparameters& p, const char* name) { return static_cast<int>(p.at(name)); }

TreeParams tree_params(const Hyperparameters& p, double fraction) {
    return TreeParams{whole(p, "max_depth"), whole(p, "min_leaf"), fraction};
}

}  // namespace

TrainedModel train(ModelFamily family, Task task, const Hyperparameters& params, const PreprocessorSpec& preprocess,
                   const Dataset& data, std::uint64_t seed) {
    if (data.rows() < 2) throw TrainingError("training needs at least two rows");
    for (const auto& c : data.features)
        if (c.size() != data.rows()) throw InvalidArgument("feature '" + c.name() + "' length differs from target");

    TrainedModel m;
    m.family = family;
    m.task = task;
    m.params = resolve_hyperparameters(family, params);
    m.seed = seed;
    m.target = data.target.name();
    for (const auto& d : preprocess.columns) m.features.push_back(d.column);
    if (m.features.empty()) throw TrainingError("training needs at least one feature");
    if (task == Task::classification) {
        m.classes = class_labels(data.target);
        if (m.classes.size() < 2) throw TrainingError("classification needs at least two classes");
    }
    const Targets t = encode_targets(data.target, task, m.classes);
    m.preprocessor = FittedPreprocessor::fit(preprocess, data.features);
    const Eigen::MatrixXd x = m.preprocessor.apply(data.features).matrix;

    const auto& p = m.params;
    switch (family) {
    case ModelFamily::linear_ridge: m.state = RidgeModel::fit(x, t, p.at("lambda")); break;
    case ModelFamily::knn: m.state = KnnModel::fit(x, t, whole(p, "k")); break;
    case ModelFamily::cart_tree: m.state = TreeModel::fit(x, t, tree_params(p, 1.0), seed); break;
    case ModelFamily::random_forest:
        m.state = ForestModel::fit(x, t, whole(p, "n_trees"), p.at("bootstrap") != 0.0,
                                   tree_params(p, p.at("feature_fraction")), seed);
        break;
    case ModelFamily::mlp: {
        MlpParams mp;
        mp.hidden = {whole(p, "hidden1")};
        if (whole(p, "hidden2") > 0) mp.hidden.push_back(whole(p, "hidden2"));
        mp.learning_rate = p.at("learning_rate");
        mp.epochs = whole(p, "epochs");
        mp.batch_size = whole(p, "batch_size");
        m.state = MlpModel::fit(x, t, mp, seed);
        break;
    }
    }
    return m;
}

TrainedModel train(ModelFamily family, Task task, const Hyperparameters& params, const Dataset& data,
                   std::uint64_t seed) {
    const bool trees = family == ModelFamily::cart_tree || family == ModelFamily::random_forest;
    return train(family, task, params, default_preprocessor(data.features, trees ? Scaling::none : Scaling::zscore),
                 data, seed);
}

Eigen::VectorXd TrainedModel::predict_matrix(const Eigen::MatrixXd& x) const {
    return std::visit([&](const auto& est) -> Eigen::VectorXd { return est.predict(x); }, state);
}

Prediction TrainedModel::predict(std::span<const DataColumn> input) const {
    const Eigen::VectorXd raw = predict_matrix(preprocessor.apply(input).matrix);
    Prediction out;
    out.values.assign(raw.data(), raw.data() + raw.size());
    if (task == Task::classification)
        for (double id : out.values) out.labels.push_back(classes.at(static_cast<std::size_t>(id)));
    return out;
}

}  // namespace dfarm::models
