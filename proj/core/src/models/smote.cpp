#include "dfarm/models/smote.hpp"

#include "dfarm/error.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>
#include <utility>

namespace dfarm::models {

SmoteResult smote(const Eigen::MatrixXd& features, std::span<const std::string> labels, const std::string& minority,
                  int k, int amount_pct, std::uint64_t seed) {
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw InvalidArgument("smote: features and labels differ in length");
    if (amount_pct < 100 || amount_pct % 100 != 0)
        throw InvalidArgument("smote: amount must be a positive multiple of 100");
    if (k < 1) throw InvalidArgument("smote: k must be >= 1");

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == minority) rows.push_back(i);
    if (rows.size() < 2)
        throw InvalidArgument("smote: minority class '" + minority + "' needs at least 2 samples, found " +
                              std::to_string(rows.size()));

    SmoteResult out;
    out.k_requested = k;
    out.k_used = k;
    if (static_cast<std::size_t>(k) >= rows.size()) {
        out.k_used = static_cast<int>(rows.size() - 1);
        out.k_reduced = true;
        out.note = "k reduced from " + std::to_string(k) + " to " + std::to_string(out.k_used) +
                   " (minority count " + std::to_string(rows.size()) + ")";
    }
    const auto kk = static_cast<std::size_t>(out.k_used);
    const auto reps = static_cast<std::size_t>(amount_pct / 100);
    const std::size_t total = reps * rows.size();
    out.samples.resize(static_cast<Eigen::Index>(total), features.cols());

    auto rng = CounterRng::substream(seed, 0);
    std::vector<std::pair<double, std::size_t>> dist;
    std::size_t s = 0;
    for (std::size_t a : rows) {
        dist.clear();
        for (std::size_t b : rows)
            if (b != a) dist.emplace_back((features.row(static_cast<Eigen::Index>(b)) - features.row(static_cast<Eigen::Index>(a))).squaredNorm(), b);
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
        for (std::size_t r = 0; r < reps; ++r, ++s) {
            const std::size_t nb = dist[static_cast<std::size_t>(rng.below(kk))].second;
            const double gap = rng.uniform();
            const auto x = features.row(static_cast<Eigen::Index>(a));
            out.samples.row(static_cast<Eigen::Index>(s)) = x + gap * (features.row(static_cast<Eigen::Index>(nb)) - x);
            out.parent.push_back(a);
            out.neighbor.push_back(nb);
            out.gap.push_back(gap);
        }
    }
    return out;
}

}  // namespace dfarm::models
