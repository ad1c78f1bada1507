#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dfarm::models {

namespace {

using Rows = std::vector<std::size_t>;

class Builder {
public:
    Builder(const Eigen::MatrixXd& x, const Targets& t, const TreeParams& p, std::uint64_t seed)
        : x_(x), t_(t), p_(p), rng_(CounterRng::substream(seed, 0)) {}

    std::vector<TreeModel::Node> nodes;

    int build(const Rows& rows, int depth) {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<std::size_t>(id)].value = leaf_value(rows);

        const auto m = rows.size();
        if (depth >= p_.max_depth || m < 2 * static_cast<std::size_t>(p_.min_leaf) || pure(rows)) return id;

        int best_feature = -1;
        double best_threshold = 0.0;
        // An impure node accepts a zero-gain split (XOR needs one at the root);
        // later candidates must then improve strictly.
        const double node_cost = impurity_sum(rows);
        double best_cost = node_cost + 1e-9 * std::max(node_cost, 1.0);
        const double tolerance = 1e-12 * std::max(node_cost, 1.0);
        std::vector<std::pair<double, std::size_t>> sorted(m);
        for (int f : candidate_features()) {
            for (std::size_t i = 0; i < m; ++i) sorted[i] = {x_(static_cast<Eigen::Index>(rows[i]), f), rows[i]};
            std::sort(sorted.begin(), sorted.end());
            Sweep sweep(t_, sorted);
            for (std::size_t i = 1; i < m; ++i) {
                sweep.move_left(sorted[i - 1].second);
                if (sorted[i - 1].first == sorted[i].first) continue;
                if (i < static_cast<std::size_t>(p_.min_leaf) || m - i < static_cast<std::size_t>(p_.min_leaf)) continue;
                const double cost = sweep.cost();
                if (cost < best_cost - tolerance) {
                    best_cost = cost;
                    best_feature = f;
                    const double a = sorted[i - 1].first, b = sorted[i].first;
                    double mid = a + (b - a) / 2.0;
                    if (!(mid < b)) mid = a;
                    best_threshold = mid;
                }
            }
        }
        if (best_feature < 0) return id;

        Rows left, right;
        for (auto r : rows) (x_(static_cast<Eigen::Index>(r), best_feature) <= best_threshold ? left : right).push_back(r);
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        auto& node = nodes[static_cast<std::size_t>(id)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = l;
        node.right = r;
        return id;
    }

private:
    // Running left/right sufficient statistics for one sorted feature.
    class Sweep {
    public:
        Sweep(const Targets& t, const std::vector<std::pair<double, std::size_t>>& sorted) : t_(t) {
            if (t.classification()) {
                left_counts_.assign(static_cast<std::size_t>(t.n_classes), 0.0);
                right_counts_ = left_counts_;
                for (const auto& s : sorted) right_counts_[static_cast<std::size_t>(t.classes[s.second])] += 1.0;
            } else {
                for (const auto& s : sorted) {
                    const double y = t.values(static_cast<Eigen::Index>(s.second));
                    right_sum_ += y;
                    right_sq_ += y * y;
                }
            }
            right_n_ = static_cast<double>(sorted.size());
        }

        void move_left(std::size_t row) {
            if (t_.classification()) {
                const auto c = static_cast<std::size_t>(t_.classes[row]);
                left_counts_[c] += 1.0;
                right_counts_[c] -= 1.0;
            } else {
                const double y = t_.values(static_cast<Eigen::Index>(row));
                left_sum_ += y;
                left_sq_ += y * y;
                right_sum_ -= y;
                right_sq_ -= y * y;
            }
            left_n_ += 1.0;
            right_n_ -= 1.0;
        }

        // n_left * impurity_left + n_right * impurity_right.
        double cost() const {
            if (t_.classification()) return gini_mass(left_counts_, left_n_) + gini_mass(right_counts_, right_n_);
            return std::max(0.0, left_sq_ - left_sum_ * left_sum_ / left_n_) +
                   std::max(0.0, right_sq_ - right_sum_ * right_sum_ / right_n_);
        }

    private:
        static double gini_mass(const std::vector<double>& counts, double n) {
            double s = 0.0;
            for (double c : counts) s += c * c;
            return n - s / n;
        }

        const Targets& t_;
        std::vector<double> left_counts_, right_counts_;
        double left_sum_ = 0.0, left_sq_ = 0.0, right_sum_ = 0.0, right_sq_ = 0.0;
        double left_n_ = 0.0, right_n_ = 0.0;
    };

    std::vector<int> candidate_features() {
        const int p = static_cast<int>(x_.cols());
        std::vector<int> all(static_cast<std::size_t>(p));
        std::iota(all.begin(), all.end(), 0);
        if (p_.feature_fraction >= 1.0) return all;
        const int take = std::clamp(static_cast<int>(std::lround(p_.feature_fraction * p)), 1, p);
        for (int i = 0; i < take; ++i) {
            const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(p - i)));
            std::swap(all[static_cast<std::size_t>(i)], all[j]);
        }
        all.resize(static_cast<std::size_t>(take));
        std::sort(all.begin(), all.end());
        return all;
    }

    bool pure(const Rows& rows) const {
        for (auto r : rows) {
            if (t_.classification() ? t_.classes[r] != t_.classes[rows.front()]
                                    : t_.values(static_cast<Eigen::Index>(r)) != t_.values(static_cast<Eigen::Index>(rows.front())))
                return false;
        }
        return true;
    }

    double impurity_sum(const Rows& rows) const {
        const double n = static_cast<double>(rows.size());
        if (t_.classification()) {
            std::vector<double> counts(static_cast<std::size_t>(t_.n_classes), 0.0);
            for (auto r : rows) counts[static_cast<std::size_t>(t_.classes[r])] += 1.0;
            double s = 0.0;
            for (double c : counts) s += c * c;
            return n - s / n;
        }
        double sum = 0.0, sq = 0.0;
        for (auto r : rows) {
            const double y = t_.values(static_cast<Eigen::Index>(r));
            sum += y;
            sq += y * y;
        }
        return std::max(0.0, sq - sum * sum / n);
    }

    double leaf_value(const Rows& rows) const {
        if (t_.classification()) {
            std::vector<std::size_t> counts(static_cast<std::size_t>(t_.n_classes), 0);
            for (auto r : rows) counts[static_cast<std::size_t>(t_.classes[r])]++;
            return static_cast<double>(std::max_element(counts.begin(), counts.end()) - counts.begin());
        }
        double sum = 0.0;
        for (auto r : rows) sum += t_.values(static_cast<Eigen::Index>(r));
        return sum / static_cast<double>(rows.size());
    }

    const Eigen::MatrixXd& x_;
    const Targets& t_;
    TreeParams p_;
    CounterRng rng_;
};

}  // namespace

TreeModel TreeModel::fit(const Eigen::MatrixXd& x, const Targets& t, const TreeParams& params, std::uint64_t seed) {
    if (params.max_depth < 0 || params.min_leaf < 1) throw InvalidArgument("tree needs max_depth >= 0 and min_leaf >= 1");
    if (!(params.feature_fraction > 0.0 && params.feature_fraction <= 1.0))
        throw InvalidArgument("feature_fraction must lie in (0, 1]");
    if (x.rows() < 2 || static_cast<Eigen::Index>(t.size()) != x.rows())
        throw TrainingError("tree needs at least two aligned rows");
    Builder builder(x, t, params, seed);
    Rows rows(static_cast<std::size_t>(x.rows()));
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    builder.build(rows, 0);
    TreeModel m;
    m.nodes = std::move(builder.nodes);
    m.classification = t.classification();
    return m;
}

double TreeModel::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
    std::size_t i = 0;
    while (nodes[i].feature >= 0)
        i = static_cast<std::size_t>(row(nodes[i].feature) <= nodes[i].threshold ? nodes[i].left : nodes[i].right);
    return nodes[i].value;
}

Eigen::VectorXd TreeModel::predict(const Eigen::MatrixXd& x) const {
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = predict_row(x.row(i));
    return out;
}

int TreeModel::depth() const {
    std::vector<int> d(nodes.size(), 0);
    int best = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        best = std::max(best, d[i]);
        if (nodes[i].feature >= 0) {
            d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
            d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
        }
    }
    return best;
}

}  // namespace dfarm::models
