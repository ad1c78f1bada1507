#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>

namespace dfarm::models {

ForestModel ForestModel::fit(const Eigen::MatrixXd& x, const Targets& t, int n_trees, bool bootstrap,
                             const TreeParams& params, std::uint64_t seed) {
    if (n_trees < 1) throw InvalidArgument("forest needs n_trees >= 1");
    if (x.rows() < 2 || static_cast<Eigen::Index>(t.size()) != x.rows())
        throw TrainingError("forest needs at least two aligned rows");
    ForestModel m;
    m.classification = t.classification();
    m.n_classes = t.n_classes;
    const auto n = static_cast<std::size_t>(x.rows());
    for (int i = 0; i < n_trees; ++i) {
        const std::uint64_t tree_seed = CounterRng::derive_key(seed, static_cast<std::uint64_t>(i));
        if (!bootstrap) {
            m.trees.push_back(TreeModel::fit(x, t, params, tree_seed));
            continue;
        }
        auto rng = CounterRng::substream(tree_seed, 1);
        std::vector<std::size_t> rows(n);
        for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
        Eigen::MatrixXd xb(static_cast<Eigen::Index>(n), x.cols());
        for (std::size_t r = 0; r < n; ++r) xb.row(static_cast<Eigen::Index>(r)) = x.row(static_cast<Eigen::Index>(rows[r]));
        m.trees.push_back(TreeModel::fit(xb, t.select(rows), params, tree_seed));
    }
    return m;
}

Eigen::VectorXd ForestModel::predict(const Eigen::MatrixXd& x) const {
    Eigen::VectorXd out(x.rows());
    std::vector<int> votes(static_cast<std::size_t>(std::max(n_classes, 1)));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        if (classification) {
            std::fill(votes.begin(), votes.end(), 0);
            for (const auto& tree : trees) votes[static_cast<std::size_t>(tree.predict_row(x.row(i)))]++;
            out(i) = static_cast<double>(std::max_element(votes.begin(), votes.end()) - votes.begin());
        } else {
            double s = 0.0;
            for (const auto& tree : trees) s += tree.predict_row(x.row(i));
            out(i) = s / static_cast<double>(trees.size());
        }
    }
    return out;
}

}  // namespace dfarm::models
