#include "dfarm/error.hpp"
#include "dfarm/models/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace dfarm::models {

KnnModel KnnModel::fit(const Eigen::MatrixXd& x, const Targets& t, int k) {
    if (k < 1) throw InvalidArgument("knn needs k >= 1");
    if (x.rows() < 2 || static_cast<Eigen::Index>(t.size()) != x.rows())
        throw TrainingError("knn needs at least two aligned rows");
    return KnnModel{x, t, std::min<int>(k, static_cast<int>(x.rows()))};
}

Eigen::VectorXd KnnModel::predict(const Eigen::MatrixXd& q) const {
    Eigen::VectorXd out(q.rows());
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(x.rows()));
    const auto kk = static_cast<std::size_t>(k);
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index r = 0; r < x.rows(); ++r)
            dist[static_cast<std::size_t>(r)] = {(x.row(r) - q.row(i)).squaredNorm(), r};
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
        if (t.classification()) {
            std::vector<int> votes(static_cast<std::size_t>(t.n_classes), 0);
            for (std::size_t j = 0; j < kk; ++j) votes[static_cast<std::size_t>(t.classes[static_cast<std::size_t>(dist[j].second)])]++;
            out(i) = static_cast<double>(std::max_element(votes.begin(), votes.end()) - votes.begin());
        } else {
            double s = 0.0;
            for (std::size_t j = 0; j < kk; ++j) s += t.values(dist[j].second);
            out(i) = s / static_cast<double>(kk);
        }
    }
    return out;
}

}  // namespace dfarm::models
