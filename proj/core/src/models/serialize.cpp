#include "dfarm/models/serialize.hpp"

#include "dfarm/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfarm::models {

namespace {

using nlohmann::ordered_json;

ordered_json real(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double real_of(const ordered_json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ordered_json vector_json(const Eigen::VectorXd& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real(v(i)));
    return a;
}

Eigen::VectorXd vector_of(const ordered_json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = real_of(j[i]);
    return v;
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_json(m.row(r).transpose()));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Eigen::MatrixXd matrix_of(const ordered_json& j) {
    Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != m.rows()) throw ConfigError("matrix row count mismatch");
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto& row = data[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw ConfigError("matrix column count mismatch");
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = real_of(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

ordered_json targets_json(const Targets& t) {
    ordered_json j{{"n_classes", t.n_classes}};
    if (t.classification())
        j["classes"] = t.classes;
    else
        j["values"] = vector_json(t.values);
    return j;
}

Targets targets_of(const ordered_json& j) {
    Targets t;
    t.n_classes = j.at("n_classes").get<int>();
    if (t.classification())
        t.classes = j.at("classes").get<std::vector<int>>();
    else
        t.values = vector_of(j.at("values"));
    return t;
}

ordered_json tree_json(const TreeModel& tree) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : tree.nodes) nodes.push_back({n.feature, real(n.threshold), n.left, n.right, real(n.value)});
    return {{"classification", tree.classification}, {"nodes", std::move(nodes)}};
}

TreeModel tree_of(const ordered_json& j) {
    TreeModel tree;
    tree.classification = j.at("classification").get<bool>();
    for (const auto& n : j.at("nodes")) {
        TreeModel::Node node;
        node.feature = n.at(0).get<int>();
        node.threshold = real_of(n.at(1));
        node.left = n.at(2).get<int>();
        node.right = n.at(3).get<int>();
        node.value = real_of(n.at(4));
        tree.nodes.push_back(node);
    }
    const auto count = static_cast<int>(tree.nodes.size());
    if (count == 0) throw ConfigError("tree without nodes");
    for (const auto& n : tree.nodes)
        if (n.feature >= 0 && (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count))
            throw ConfigError("tree node points outside the tree");
    return tree;
}

ordered_json state_json(const EstimatorState& state) {
    return std::visit(
        [](const auto& est) -> ordered_json {
            using T = std::decay_t<decltype(est)>;
            if constexpr (std::is_same_v<T, RidgeModel>) {
                return {{"coef", matrix_json(est.coef)},
                        {"intercept", vector_json(est.intercept)},
                        {"classification", est.classification},
                        {"used_pseudo_inverse", est.used_pseudo_inverse}};
            } else if constexpr (std::is_same_v<T, KnnModel>) {
                return {{"k", est.k}, {"x", matrix_json(est.x)}, {"targets", targets_json(est.t)}};
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                return tree_json(est);
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                ordered_json trees = ordered_json::array();
                for (const auto& t : est.trees) trees.push_back(tree_json(t));
                return {{"classification", est.classification}, {"n_classes", est.n_classes}, {"trees", std::move(trees)}};
            } else {
                return {{"layers", est.layers()},
                        {"classification", est.classification()},
                        {"target_mean", real(est.target_mean())},
                        {"target_scale", real(est.target_scale())},
                        {"parameters", vector_json(est.parameters())}};
            }
        },
        state);
}

EstimatorState state_of(ModelFamily family, const ordered_json& j) {
    switch (family) {
    case ModelFamily::linear_ridge: {
        RidgeModel m;
        m.coef = matrix_of(j.at("coef"));
        m.intercept = vector_of(j.at("intercept"));
        m.classification = j.at("classification").get<bool>();
        m.used_pseudo_inverse = j.at("used_pseudo_inverse").get<bool>();
        return m;
    }
    case ModelFamily::knn: return KnnModel{matrix_of(j.at("x")), targets_of(j.at("targets")), j.at("k").get<int>()};
    case ModelFamily::cart_tree: return tree_of(j);
    case ModelFamily::random_forest: {
        ForestModel m;
        m.classification = j.at("classification").get<bool>();
        m.n_classes = j.at("n_classes").get<int>();
        for (const auto& t : j.at("trees")) m.trees.push_back(tree_of(t));
        return m;
    }
    case ModelFamily::mlp: {
        const auto layers = j.at("layers").get<std::vector<int>>();
        if (layers.size() < 3) throw ConfigError("mlp needs at least one hidden layer");
        MlpModel m(layers.front(), std::vector<int>(layers.begin() + 1, layers.end() - 1), layers.back(),
                   j.at("classification").get<bool>(), 0);
        m.set_parameters(vector_of(j.at("parameters")));
        m.set_target_scaling(real_of(j.at("target_mean")), real_of(j.at("target_scale")));
        return m;
    }
    }
    throw ConfigError("unknown family");
}

ordered_json preprocessor_json(const FittedPreprocessor& p) {
    ordered_json cols = ordered_json::array();
    for (const auto& s : p.stats())
        cols.push_back({{"column", s.directive.column},
                        {"scaling", to_string(s.directive.scaling)},
                        {"encoding", to_string(s.directive.encoding)},
                        {"imputation", to_string(s.directive.imputation)},
                        {"numeric", s.numeric},
                        {"min", real(s.min)},
                        {"max", real(s.max)},
                        {"mean", real(s.mean)},
                        {"sd", real(s.sd)},
                        {"levels", s.levels},
                        {"impute_number", real(s.impute_number)},
                        {"impute_label", s.impute_label}});
    return cols;
}

FittedPreprocessor preprocessor_of(const ordered_json& j) {
    std::vector<ColumnStats> stats;
    for (const auto& c : j) {
        ColumnStats s;
        s.directive.column = c.at("column").get<std::string>();
        s.directive.scaling = scaling_from_string(c.at("scaling").get<std::string>());
        s.directive.encoding = encoding_from_string(c.at("encoding").get<std::string>());
        s.directive.imputation = imputation_from_string(c.at("imputation").get<std::string>());
        s.numeric = c.at("numeric").get<bool>();
        s.min = real_of(c.at("min"));
        s.max = real_of(c.at("max"));
        s.mean = real_of(c.at("mean"));
        s.sd = real_of(c.at("sd"));
        s.levels = c.at("levels").get<std::vector<std::string>>();
        s.impute_number = real_of(c.at("impute_number"));
        s.impute_label = c.at("impute_label").get<std::string>();
        stats.push_back(std::move(s));
    }
    return FittedPreprocessor(std::move(stats));
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

ordered_json parse_document(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(line_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
    ordered_json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["family"] = to_string(model.family);
    doc["task"] = to_string(model.task);
    doc["seed"] = model.seed;
    doc["target"] = model.target;
    doc["features"] = model.features;
    doc["classes"] = model.classes;
    ordered_json params;
    for (const auto& [k, v] : model.params) params[k] = v;
    doc["params"] = std::move(params);
    doc["preprocessor"] = preprocessor_json(model.preprocessor);
    doc["state"] = state_json(model.state);
    return doc.dump(1) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
    const auto doc = parse_document(text);
    try {
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw ConfigError("model format_version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kModelFormatVersion) + ")");
        TrainedModel m;
        m.family = family_from_string(doc.at("family").get<std::string>());
        m.task = task_from_string(doc.at("task").get<std::string>());
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.target = doc.at("target").get<std::string>();
        m.features = doc.at("features").get<std::vector<std::string>>();
        m.classes = doc.at("classes").get<std::vector<std::string>>();
        for (const auto& [k, v] : doc.at("params").items()) m.params[k] = v.get<double>();
        m.preprocessor = preprocessor_of(doc.at("preprocessor"));
        m.state = state_of(m.family, doc.at("state"));
        return m;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed model document: ") + e.what());
    }
}

std::string cv_report_to_json(const CvReport& report) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "cv_report";
    doc["k"] = report.k;
    doc["metric"] = report.metric;
    doc["best"] = report.best;
    ordered_json configs = ordered_json::array();
    for (const auto& c : report.configs) {
        ordered_json params;
        for (const auto& [k, v] : c.params) params[k] = v;
        ordered_json scores = ordered_json::array();
        for (double s : c.fold_scores) scores.push_back(real(s));
        configs.push_back({{"params", std::move(params)},
                           {"fold_scores", std::move(scores)},
                           {"mean", real(c.mean)},
                           {"sd", real(c.sd)}});
    }
    if (!report.configs.empty()) doc["best_config"] = configs[report.best];
    doc["configs"] = std::move(configs);
    return doc.dump(2) + "\n";
}

ModelConfig model_config_from_json(const std::string& text) {
    const auto doc = parse_document(text);
    try {
        ModelConfig c;
        c.spec.family = family_from_string(doc.at("family").get<std::string>());
        c.spec.task = task_from_string(doc.value("task", std::string("regression")));
        c.target = doc.at("target").get<std::string>();
        if (doc.contains("features")) c.features = doc.at("features").get<std::vector<std::string>>();
        if (doc.contains("params"))
            for (const auto& [k, v] : doc.at("params").items()) c.spec.fixed[k] = v.get<double>();
        if (doc.contains("ranges"))
            for (const auto& [k, v] : doc.at("ranges").items()) {
                ParamRange r;
                r.lo = v.at("lo").get<double>();
                r.hi = v.at("hi").get<double>();
                r.log = v.value("log", false);
                r.integer = v.value("integer", is_integer_parameter(c.spec.family, k));
                c.spec.ranges[k] = r;
            }
        if (doc.contains("preprocess"))
            for (const auto& d : doc.at("preprocess")) {
                ColumnDirective cd;
                cd.column = d.at("column").get<std::string>();
                cd.scaling = scaling_from_string(d.value("scaling", std::string("none")));
                cd.encoding = encoding_from_string(d.value("encoding", std::string("none")));
                cd.imputation = imputation_from_string(d.value("imputation", std::string("none")));
                c.preprocess.columns.push_back(cd);
            }
        validate_spec(c.spec);
        return c;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed model config: ") + e.what());
    }
}

}  // namespace dfarm::models
