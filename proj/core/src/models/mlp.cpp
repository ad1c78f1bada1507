#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"
#include "dfarm/rng.hpp"

#include <cmath>
#include <numeric>

namespace dfarm::models {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t parameter_count(const std::vector<int>& layers) {
    std::size_t n = 0;
    for (std::size_t l = 1; l < layers.size(); ++l)
        n += static_cast<std::size_t>(layers[l]) * static_cast<std::size_t>(layers[l - 1] + 1);
    return n;
}

}  // namespace

MlpModel::MlpModel(int inputs, std::vector<int> hidden, int outputs, bool classification, std::uint64_t seed)
    : classification_(classification) {
    if (hidden.empty() || hidden.size() > 2) throw InvalidArgument("mlp needs one or two hidden layers");
    if (inputs < 1 || outputs < 1) throw InvalidArgument("mlp needs at least one input and one output");
    layers_.push_back(inputs);
    for (int h : hidden) {
        if (h < 1) throw InvalidArgument("mlp hidden layer sizes must be >= 1");
        layers_.push_back(h);
    }
    layers_.push_back(outputs);

    params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(parameter_count(layers_)));
    auto rng = CounterRng::substream(seed, 0);
    Eigen::Index pos = 0;
    for (std::size_t l = 1; l < layers_.size(); ++l) {
        const double limit = std::sqrt(6.0 / layers_[l - 1]);
        const Eigen::Index weights = static_cast<Eigen::Index>(layers_[l]) * layers_[l - 1];
        for (Eigen::Index i = 0; i < weights; ++i) params_(pos + i) = rng.uniform(-limit, limit);
        pos += weights;
        // Small random biases keep pre-activations off the ReLU kink at 0.
        for (int i = 0; i < layers_[l]; ++i) params_(pos + i) = rng.uniform(-0.1, 0.1);
        pos += layers_[l];
    }
}

void MlpModel::set_parameters(Eigen::VectorXd params) {
    if (params.size() != params_.size()) throw InvalidArgument("mlp parameter vector has the wrong length");
    params_ = std::move(params);
}

Eigen::MatrixXd MlpModel::forward(const Eigen::MatrixXd& x) const {
    if (x.cols() != layers_.front()) throw InvalidArgument("mlp input width mismatch");
    Eigen::MatrixXd a = x;
    Eigen::Index pos = 0;
    for (std::size_t l = 1; l < layers_.size(); ++l) {
        const Eigen::Map<const RowMajor> w(params_.data() + pos, layers_[l], layers_[l - 1]);
        pos += w.size();
        const Eigen::Map<const Eigen::VectorXd> b(params_.data() + pos, layers_[l]);
        pos += b.size();
        Eigen::MatrixXd z = (a * w.transpose()).rowwise() + b.transpose();
        if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
        a = std::move(z);
    }
    return a;
}

double MlpModel::loss_and_gradient(const Eigen::MatrixXd& x, const Targets& t, Eigen::VectorXd* grad) const {
    const Eigen::Index m = x.rows();
    if (m == 0 || static_cast<Eigen::Index>(t.size()) != m) throw InvalidArgument("mlp batch and targets disagree");
    const std::size_t L = layers_.size() - 1;

    // Activations per layer (index 0 is the input) and pre-activations.
    std::vector<Eigen::MatrixXd> acts{x}, pre;
    std::vector<Eigen::Index> offsets;
    Eigen::Index pos = 0;
    for (std::size_t l = 1; l <= L; ++l) {
        offsets.push_back(pos);
        const Eigen::Map<const RowMajor> w(params_.data() + pos, layers_[l], layers_[l - 1]);
        pos += w.size();
        const Eigen::Map<const Eigen::VectorXd> b(params_.data() + pos, layers_[l]);
        pos += b.size();
        Eigen::MatrixXd z = (acts.back() * w.transpose()).rowwise() + b.transpose();
        pre.push_back(z);
        acts.push_back(l < L ? Eigen::MatrixXd(z.cwiseMax(0.0)) : z);
    }

    const Eigen::MatrixXd& out = acts.back();
    Eigen::MatrixXd delta(m, out.cols());
    double loss = 0.0;
    if (classification_) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double top = out.row(i).maxCoeff();
            const Eigen::RowVectorXd e = (out.row(i).array() - top).exp();
            const double sum = e.sum();
            const int c = t.classes[static_cast<std::size_t>(i)];
            loss -= out(i, c) - top - std::log(sum);
            delta.row(i) = e / sum;
            delta(i, c) -= 1.0;
        }
    } else {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double r = out(i, 0) - t.values(i);
            loss += 0.5 * r * r;
            delta(i, 0) = r;
        }
    }
    loss /= static_cast<double>(m);
    if (!grad) return loss;

    delta /= static_cast<double>(m);
    grad->setZero(params_.size());
    for (std::size_t l = L; l >= 1; --l) {
        const Eigen::Index off = offsets[l - 1];
        const Eigen::Map<const RowMajor> w(params_.data() + off, layers_[l], layers_[l - 1]);
        Eigen::Map<RowMajor> gw(grad->data() + off, layers_[l], layers_[l - 1]);
        Eigen::Map<Eigen::VectorXd> gb(grad->data() + off + w.size(), layers_[l]);
        gw = delta.transpose() * acts[l - 1];
        gb = delta.colwise().sum().transpose();
        if (l > 1) {
            // Evaluate the product first: delta changes shape and must not alias it.
            const Eigen::MatrixXd back = delta * w;
            delta = (back.array() * (pre[l - 2].array() > 0.0).cast<double>()).matrix();
        }
    }
    return loss;
}

double MlpModel::loss(const Eigen::MatrixXd& x, const Targets& t) const { return loss_and_gradient(x, t, nullptr); }

Eigen::VectorXd MlpModel::gradient(const Eigen::MatrixXd& x, const Targets& t) const {
    Eigen::VectorXd g;
    loss_and_gradient(x, t, &g);
    return g;
}

void MlpModel::sgd_step(const Eigen::MatrixXd& x, const Targets& t, double learning_rate) {
    Eigen::VectorXd g;
    loss_and_gradient(x, t, &g);
    params_ -= learning_rate * g;
}

MlpModel MlpModel::fit(const Eigen::MatrixXd& x, const Targets& t, const MlpParams& params, std::uint64_t seed) {
    if (x.rows() < 2 || static_cast<Eigen::Index>(t.size()) != x.rows())
        throw TrainingError("mlp needs at least two aligned rows");
    if (!(params.learning_rate > 0.0) || params.epochs < 1 || params.batch_size < 1)
        throw InvalidArgument("mlp needs learning_rate > 0, epochs >= 1 and batch_size >= 1");

    const int outputs = t.classification() ? t.n_classes : 1;
    MlpModel model(static_cast<int>(x.cols()), params.hidden, outputs, t.classification(), seed);

    Targets scaled = t;
    if (!t.classification()) {
        const double mean = t.values.mean();
        const double sd = std::sqrt((t.values.array() - mean).square().sum() / static_cast<double>(t.values.size()));
        model.y_mean_ = mean;
        model.y_scale_ = sd > 0.0 ? sd : 1.0;
        scaled.values = (t.values.array() - mean) / model.y_scale_;
    }

    const auto n = static_cast<std::size_t>(x.rows());
    const auto batch = static_cast<std::size_t>(params.batch_size);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        auto rng = CounterRng::substream(seed, 1 + static_cast<std::uint64_t>(epoch));
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t start = 0; start < n; start += batch) {
            const std::vector<std::size_t> rows(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                order.begin() + static_cast<std::ptrdiff_t>(std::min(n, start + batch)));
            Eigen::MatrixXd xb(static_cast<Eigen::Index>(rows.size()), x.cols());
            for (std::size_t r = 0; r < rows.size(); ++r) xb.row(static_cast<Eigen::Index>(r)) = x.row(static_cast<Eigen::Index>(rows[r]));
            model.sgd_step(xb, scaled.select(rows), params.learning_rate);
        }
        if (!model.params_.allFinite()) throw TrainingError("mlp training diverged; lower the learning rate");
    }
    return model;
}

Eigen::VectorXd MlpModel::predict(const Eigen::MatrixXd& x) const {
    const Eigen::MatrixXd out = forward(x);
    Eigen::VectorXd pred(out.rows());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        if (classification_) {
            Eigen::Index best = 0;
            out.row(i).maxCoeff(&best);
            pred(i) = static_cast<double>(best);
        } else {
            pred(i) = out(i, 0) * y_scale_ + y_mean_;
        }
    }
    return pred;
}

}  // namespace dfarm::models
