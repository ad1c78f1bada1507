#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"
#include "dfarm/models/metrics.hpp"
#include "dfarm/models/model.hpp"
#include "dfarm/models/preprocess.hpp"
#include "dfarm/models/search.hpp"
#include "dfarm/models/serialize.hpp"
#include "dfarm/models/smote.hpp"
#include "dfarm/rng.hpp"

using namespace dfarm;
using namespace dfarm::models;

namespace {

Targets regression_targets(const Eigen::VectorXd& y) {
    Targets t;
    t.values = y;
    return t;
}

Targets class_targets(std::vector<int> c, int k) {
    Targets t;
    t.classes = std::move(c);
    t.n_classes = k;
    return t;
}

Dataset noisy_line(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.uniform(-3.0, 3.0);
        y[i] = 2.0 * x[i] + 1.0 + rng.normal(0.0, 0.1);
    }
    return {{DataColumn::numeric("x", x)}, DataColumn::numeric("y", y)};
}

Eigen::MatrixXd random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    CounterRng rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

double max_relative_gradient_error(const MlpModel& net, const Eigen::MatrixXd& x, const Targets& t) {
    const Eigen::VectorXd g = net.gradient(x, t);
    const double h = 1e-5;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        MlpModel probe = net;
        Eigen::VectorXd p = net.parameters();
        p[i] += h;
        probe.set_parameters(p);
        const double up = probe.loss(x, t);
        p[i] -= 2 * h;
        probe.set_parameters(p);
        const double down = probe.loss(x, t);
        const double fd = (up - down) / (2 * h);
        const double denom = std::max({std::abs(fd), std::abs(g[i]), 1e-8});
        worst = std::max(worst, std::abs(fd - g[i]) / denom);
    }
    return worst;
}

}  // namespace

TEST_CASE("preprocessing transforms") {
    const std::vector<DataColumn> cols{DataColumn::numeric("a", {0, 5, 10}),
                                       DataColumn::categorical("c", std::vector<std::string>{"A", "B", "C"}),
                                       DataColumn::numeric("m", {1, std::nan(""), 3})};
    PreprocessorSpec spec{{{"a", Scaling::minmax, Encoding::none, Imputation::none},
                           {"c", Scaling::none, Encoding::onehot, Imputation::none},
                           {"m", Scaling::none, Encoding::none, Imputation::mean}}};
    const auto pre = FittedPreprocessor::fit(spec, cols);
    const auto out = pre.apply(cols);
    REQUIRE(out.matrix.cols() == 5);
    CHECK(out.matrix(0, 0) == 0.0);
    CHECK(out.matrix(1, 0) == 0.5);
    CHECK(out.matrix(2, 0) == 1.0);
    CHECK(out.matrix(1, 1) == 0.0);
    CHECK(out.matrix(1, 2) == 1.0);
    CHECK(out.matrix(1, 3) == 0.0);
    CHECK(out.matrix(1, 4) == 2.0);
    CHECK(out.names[2] == "c=B");
}

TEST_CASE("preprocessing rejects invalid directives") {
    const std::vector<DataColumn> cols{DataColumn::numeric("a", {0, 5, 10}),
                                       DataColumn::categorical("c", std::vector<std::string>{"A", "B", "C"})};
    CHECK_THROWS_AS(FittedPreprocessor::fit({{{"a", Scaling::none, Encoding::onehot, Imputation::none}}}, cols),
                    ConfigError);
    CHECK_THROWS_AS(FittedPreprocessor::fit({{{"c", Scaling::zscore, Encoding::onehot, Imputation::none}}}, cols),
                    ConfigError);
    CHECK_THROWS_AS(FittedPreprocessor::fit({{{"c", Scaling::none, Encoding::none, Imputation::none}}}, cols),
                    ConfigError);
}

TEST_CASE("validation-fold transform does not disturb training-fold statistics") {
    const auto data = noisy_line(100, 3);
    const auto folds = kfold_split(100, 5, 1);
    std::vector<std::size_t> train_rows;
    for (std::size_t f = 1; f < 5; ++f) train_rows.insert(train_rows.end(), folds[f].begin(), folds[f].end());
    const Dataset tr = data.select(train_rows), va = data.select(folds[0]);
    const auto spec = default_preprocessor(tr.features);
    const auto pre = FittedPreprocessor::fit(spec, tr.features);
    const Eigen::MatrixXd before = pre.apply(tr.features).matrix;
    pre.apply(va.features);
    CHECK(pre.apply(tr.features).matrix == before);
    double m = 0.0;
    for (double v : tr.features[0].numbers()) m += v;
    CHECK(pre.stats()[0].mean == doctest::Approx(m / static_cast<double>(tr.rows())));
}

TEST_CASE("k-fold splits") {
    auto folds = kfold_split(10, 5, 3);
    std::set<std::size_t> all;
    for (const auto& f : folds) {
        CHECK(f.size() == 2);
        all.insert(f.begin(), f.end());
    }
    CHECK(all.size() == 10);
    folds = kfold_split(11, 5, 3);
    std::vector<std::size_t> sizes;
    for (const auto& f : folds) sizes.push_back(f.size());
    std::sort(sizes.rbegin(), sizes.rend());
    CHECK(sizes == std::vector<std::size_t>{3, 2, 2, 2, 2});
    CHECK(kfold_split(37, 4, 9) == kfold_split(37, 4, 9));
    CHECK_THROWS_AS(kfold_split(3, 5, 1), InvalidArgument);
}

TEST_CASE("ridge with lambda 0 recovers an exact line") {
    Eigen::MatrixXd x(5, 1);
    x << -2, -1, 0, 1.5, 4;
    const Eigen::VectorXd y = (2.0 * x.col(0)).array() + 1.0;
    const auto m = RidgeModel::fit(x, regression_targets(y), 0.0);
    CHECK(std::abs(m.coef(0, 0) - 2.0) < 1e-9);
    CHECK(std::abs(m.intercept(0) - 1.0) < 1e-9);
}

TEST_CASE("ridge falls back to the pseudo-inverse on collinear features") {
    Eigen::MatrixXd x(4, 2);
    x << 1, 2, 2, 4, 3, 6, 4, 8;
    const Eigen::VectorXd y = x.col(0) * 3.0;
    const auto m = RidgeModel::fit(x, regression_targets(y), 0.0);
    CHECK(m.used_pseudo_inverse);
    CHECK((m.predict(x) - y).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("depth-2 tree separates XOR") {
    Eigen::MatrixXd x(4, 2);
    x << 0, 0, 0, 1, 1, 0, 1, 1;
    const auto t = class_targets({0, 1, 1, 0}, 2);
    const auto tree = TreeModel::fit(x, t, {2, 1, 1.0}, 0);
    const Eigen::VectorXd p = tree.predict(x);
    for (int i = 0; i < 4; ++i) CHECK(p[i] == t.classes[i]);
    CHECK(tree.depth() <= 2);
}

TEST_CASE("one-tree forest without bootstrap equals a tree") {
    const Eigen::MatrixXd x = random_matrix(120, 3, 17);
    Eigen::VectorXd y(120);
    for (int i = 0; i < 120; ++i) y[i] = std::sin(3 * x(i, 0)) + x(i, 1) * x(i, 2);
    const TreeParams p{6, 2, 1.0};
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto forest = ForestModel::fit(x, regression_targets(y), 1, false, p, seed);
        const auto tree = TreeModel::fit(x, regression_targets(y), p, seed);
        const Eigen::MatrixXd q = random_matrix(50, 3, seed + 100);
        CHECK(forest.predict(q) == tree.predict(q));
    }
}

TEST_CASE("1-nn has zero training error on duplicate-free data") {
    const Eigen::MatrixXd x = random_matrix(60, 2, 4);
    std::vector<int> c(60);
    for (int i = 0; i < 60; ++i) c[i] = i % 3;
    const auto knn = KnnModel::fit(x, class_targets(c, 3), 1);
    const Eigen::VectorXd p = knn.predict(x);
    for (int i = 0; i < 60; ++i) CHECK(p[i] == c[i]);
}

TEST_CASE("mlp gradient matches central differences") {
    const Eigen::MatrixXd x = random_matrix(16, 3, 8);
    Eigen::VectorXd y(16);
    for (int i = 0; i < 16; ++i) y[i] = x(i, 0) - 2 * x(i, 1) * x(i, 2);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const MlpModel reg(3, {5}, 1, false, seed);
        CHECK(max_relative_gradient_error(reg, x, regression_targets(y)) < 1e-4);
        const MlpModel deep(3, {4, 3}, 1, false, seed);
        CHECK(max_relative_gradient_error(deep, x, regression_targets(y)) < 1e-4);
        std::vector<int> c(16);
        for (int i = 0; i < 16; ++i) c[i] = i % 3;
        const MlpModel cls(3, {6}, 3, true, seed);
        CHECK(max_relative_gradient_error(cls, x, class_targets(c, 3)) < 1e-4);
    }
}

TEST_CASE("one small sgd step lowers the batch loss") {
    const Eigen::MatrixXd x = random_matrix(32, 2, 21);
    Eigen::VectorXd y(32);
    for (int i = 0; i < 32; ++i) y[i] = x(i, 0) + x(i, 1);
    MlpModel net(2, {8}, 1, false, 5);
    const auto t = regression_targets(y);
    const double before = net.loss(x, t);
    net.sgd_step(x, t, 1e-4);
    CHECK(net.loss(x, t) < before);
}

TEST_CASE("classification and regression metrics") {
    const std::vector<std::string> truth{"a", "b", "a", "c"};
    auto cm = classification_metrics(truth, truth);
    CHECK(cm.accuracy == 1.0);
    CHECK(cm.macro_f1 == 1.0);
    // Class x: TP=1, FP=1, FN=1.
    const std::vector<std::string> pred{"x", "x", "y", "z"};
    const std::vector<std::string> real{"x", "y", "x", "z"};
    cm = classification_metrics(pred, real);
    const auto& x = cm.per_class[0];
    CHECK(x.label == "x");
    CHECK(x.precision == 0.5);
    CHECK(x.recall == 0.5);
    CHECK(x.f1 == 0.5);

    const std::vector<double> yt{1, 2, 3, 4};
    auto rm = regression_metrics(yt, yt);
    CHECK(rm.mse == 0.0);
    const std::vector<double> flat(4, 2.5);
    rm = regression_metrics(flat, yt);
    REQUIRE(rm.r2.has_value());
    CHECK(*rm.r2 == 0.0);
    CHECK_THROWS_AS(regression_metrics(flat, std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("random search reports every configuration and picks the minimum") {
    const auto data = noisy_line(300, 11);
    ModelSpec spec{ModelFamily::linear_ridge, Task::regression, default_ranges(ModelFamily::linear_ridge), {}};
    SearchOptions opt;
    opt.k = 5;
    opt.budget = 20;
    opt.seed = 9;
    const auto res = random_search_cv(spec, data, opt);
    CHECK(res.report.configs.size() == 20);
    CHECK(res.report.metric == "mse");
    for (const auto& c : res.report.configs) CHECK(res.report.best_config().mean <= c.mean);

    const auto holdout = noisy_line(200, 12);
    const auto pred = res.model.predict(holdout.features);
    const auto rm = regression_metrics(pred.values, holdout.target.numbers());
    CHECK(*rm.r2 >= 0.95);
}

TEST_CASE("search, train and smote are reproducible per seed") {
    const auto data = noisy_line(120, 4);
    ModelSpec spec{ModelFamily::random_forest, Task::regression, {}, {{"n_trees", 5}}};
    spec.ranges["max_depth"] = {2, 8, true, false};
    SearchOptions opt;
    opt.k = 3;
    opt.budget = 4;
    opt.seed = 2;
    opt.threads = 1;
    const auto a = random_search_cv(spec, data, opt);
    opt.threads = 4;
    const auto b = random_search_cv(spec, data, opt);
    CHECK(model_to_json(a.model) == model_to_json(b.model));
    CHECK(cv_report_to_json(a.report) == cv_report_to_json(b.report));

    for (auto fam : {ModelFamily::knn, ModelFamily::cart_tree, ModelFamily::mlp}) {
        const auto m1 = train(fam, Task::regression, {}, data, 6);
        const auto m2 = train(fam, Task::regression, {}, data, 6);
        CHECK(model_to_json(m1) == model_to_json(m2));
    }
}

TEST_CASE("model json round-trip preserves predictions") {
    const auto data = noisy_line(80, 5);
    for (auto fam : {ModelFamily::linear_ridge, ModelFamily::knn, ModelFamily::cart_tree, ModelFamily::random_forest,
                     ModelFamily::mlp}) {
        const Hyperparameters hp = fam == ModelFamily::mlp ? Hyperparameters{{"epochs", 20}} : Hyperparameters{};
        const auto m = train(fam, Task::regression, hp, data, 3);
        const auto back = model_from_json(model_to_json(m));
        CHECK(back.predict(data.features).values == m.predict(data.features).values);
    }
    CHECK_THROWS_AS(model_from_json("{\"format_version\": 99}"), ConfigError);
    CHECK_THROWS_AS(model_from_json("{\n  oops"), ParseError);
}

TEST_CASE("classification training on separable labels") {
    CounterRng rng(8);
    std::vector<double> a(200), b(200);
    std::vector<std::string> lab(200);
    for (std::size_t i = 0; i < 200; ++i) {
        a[i] = rng.uniform(-1, 1);
        b[i] = rng.uniform(-1, 1);
        lab[i] = a[i] + b[i] > 0 ? "up" : "down";
    }
    const Dataset d{{DataColumn::numeric("a", a), DataColumn::numeric("b", b)}, DataColumn::categorical("l", lab)};
    for (auto fam : {ModelFamily::linear_ridge, ModelFamily::knn, ModelFamily::random_forest}) {
        const auto m = train(fam, Task::classification, {}, d, 1);
        const auto p = m.predict(d.features);
        const auto cm = classification_metrics(p.labels, lab);
        CHECK(cm.accuracy > 0.9);
    }
}

TEST_CASE("smote counts, segments and k reduction") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXd x = random_matrix(40, 3, seed);
        std::vector<std::string> lab(40, "maj");
        for (int i = 0; i < 10; ++i) lab[i * 4] = "min";
        const auto r = smote(x, lab, "min", 5, 200, seed);
        REQUIRE(r.samples.rows() == 20);
        for (Eigen::Index s = 0; s < r.samples.rows(); ++s) {
            const auto p = r.parent[s], q = r.neighbor[s];
            CHECK(lab[p] == "min");
            CHECK(lab[q] == "min");
            CHECK(p != q);
            CHECK(r.gap[s] >= 0.0);
            CHECK(r.gap[s] <= 1.0);
            const Eigen::RowVectorXd expect = x.row(p) + r.gap[s] * (x.row(q) - x.row(p));
            CHECK((r.samples.row(s) - expect).cwiseAbs().maxCoeff() < 1e-12);
            // q must be among the 5 nearest minority neighbours of p.
            const double dq = (x.row(q) - x.row(p)).norm();
            int closer = 0;
            for (int i = 0; i < 40; ++i)
                if (lab[i] == "min" && static_cast<std::size_t>(i) != p && (x.row(i) - x.row(p)).norm() < dq) ++closer;
            CHECK(closer < 5);
        }
    }
    Eigen::MatrixXd tiny = random_matrix(3, 2, 1);
    const std::vector<std::string> lab{"m", "m", "m"};
    const auto r = smote(tiny, lab, "m", 5, 100, 0);
    CHECK(r.k_used == 2);
    CHECK(r.k_reduced);
    CHECK(r.samples.rows() == 3);
    CHECK_THROWS_AS(smote(tiny, lab, "m", 5, 150, 0), InvalidArgument);
}

TEST_CASE("model config parsing") {
    const auto cfg = model_config_from_json(R"({"family":"knn","task":"regression","target":"y",
        "features":["x"],"ranges":{"k":{"lo":1,"hi":9,"integer":true}}})");
    CHECK(cfg.spec.family == ModelFamily::knn);
    CHECK(cfg.spec.ranges.at("k").hi == 9.0);
    CHECK_THROWS_AS(model_config_from_json(R"({"family":"svm","target":"y"})"), ConfigError);
}
