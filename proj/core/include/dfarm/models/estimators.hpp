#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dfarm::models {

// Targets for the numeric estimators. Regression uses `values`; classification
// uses `classes` (ids 0..n_classes-1).
struct Targets {
    Eigen::VectorXd values;
    std::vector<int> classes;
    int n_classes = 0;

    bool classification() const noexcept { return n_classes > 0; }
    std::size_t size() const noexcept { return classification() ? classes.size() : static_cast<std::size_t>(values.size()); }
    Targets select(const std::vector<std::size_t>& rows) const;
};

// Predictions are real values for regression and class ids (as doubles) for
// classification.

// Ridge with an unpenalized intercept, solved by Cholesky on the centred
// normal equations; falls back to a pseudo-inverse when the system is
// singular. Classification fits one-vs-rest 0/1 indicators and predicts the
// highest score.
struct RidgeModel {
    Eigen::MatrixXd coef;       // features x outputs
    Eigen::VectorXd intercept;  // outputs
    bool classification = false;
    bool used_pseudo_inverse = false;

    static RidgeModel fit(const Eigen::MatrixXd& x, const Targets& t, double lambda);
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// Euclidean k nearest neighbours. Distance ties go to the lower row; vote
// ties to the lower class id.
struct KnnModel {
    Eigen::MatrixXd x;
    Targets t;
    int k = 5;

    static KnnModel fit(const Eigen::MatrixXd& x, const Targets& t, int k);
    Eigen::VectorXd predict(const Eigen::MatrixXd& q) const;
};

struct TreeParams {
    int max_depth = 8;
    int min_leaf = 1;
    // Share of features examined per split. At 1 every feature is scanned in
    // column order and no random draws happen.
    double feature_fraction = 1.0;
};

// CART with MSE (regression) or Gini (classification) impurity. An impure
// node is always split when a legal split exists, even without impurity
// gain. Equal-cost splits keep the lower feature, then the lower threshold.
struct TreeModel {
    struct Node {
        int feature = -1;  // -1 for a leaf
        double threshold = 0.0;  // go left when x[feature] <= threshold
        int left = -1, right = -1;
        double value = 0.0;  // mean or majority class id
    };
    std::vector<Node> nodes;
    bool classification = false;

    static TreeModel fit(const Eigen::MatrixXd& x, const Targets& t, const TreeParams& params, std::uint64_t seed);
    double predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
    int depth() const;
};

// Bagged trees. Tree i draws its bootstrap sample and split features from
// substream i of the seed. Prediction is the mean or majority vote (ties to
// the lower class id).
struct ForestModel {
    std::vector<TreeModel> trees;
    bool classification = false;
    int n_classes = 0;

    static ForestModel fit(const Eigen::MatrixXd& x, const Targets& t, int n_trees, bool bootstrap,
                           const TreeParams& params, std::uint64_t seed);
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

struct MlpParams {
    std::vector<int> hidden{16};  // one or two ReLU layers
    double learning_rate = 0.01;
    int epochs = 100;
    int batch_size = 32;
};

// Fully connected network: ReLU hidden layers, identity output with
// 0.5 * squared error for regression, softmax with cross-entropy for
// classification. Losses are averaged over the batch. Parameters are stored
// flat, layer by layer, each as a row-major weight matrix followed by biases.
class MlpModel {
public:
    MlpModel() = default;
    // He-uniform weights and U(-0.1, 0.1) biases drawn from `seed`.
    MlpModel(int inputs, std::vector<int> hidden, int outputs, bool classification, std::uint64_t seed);

    // Minibatch SGD with a fixed rate, reshuffling every epoch. Regression
    // targets are standardized internally and mapped back on prediction.
    static MlpModel fit(const Eigen::MatrixXd& x, const Targets& t, const MlpParams& params, std::uint64_t seed);

    double loss(const Eigen::MatrixXd& x, const Targets& t) const;
    // Gradient of loss() with respect to parameters(), by backpropagation.
    Eigen::VectorXd gradient(const Eigen::MatrixXd& x, const Targets& t) const;
    void sgd_step(const Eigen::MatrixXd& x, const Targets& t, double learning_rate);

    // Raw network output (regression: in standardized units when fitted).
    Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;

    const Eigen::VectorXd& parameters() const noexcept { return params_; }
    void set_parameters(Eigen::VectorXd params);
    const std::vector<int>& layers() const noexcept { return layers_; }
    bool classification() const noexcept { return classification_; }
    double target_mean() const noexcept { return y_mean_; }
    double target_scale() const noexcept { return y_scale_; }
    void set_target_scaling(double mean, double scale) noexcept {
        y_mean_ = mean;
        y_scale_ = scale;
    }

private:
    double loss_and_gradient(const Eigen::MatrixXd& x, const Targets& t, Eigen::VectorXd* grad) const;

    std::vector<int> layers_;  // inputs, hidden..., outputs
    bool classification_ = false;
    Eigen::VectorXd params_;
    double y_mean_ = 0.0;
    double y_scale_ = 1.0;
};

}  // namespace dfarm::models
