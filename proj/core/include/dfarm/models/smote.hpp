#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dfarm::models {

struct SmoteResult {
    Eigen::MatrixXd samples;           // one synthetic point per row
    std::vector<std::size_t> parent;   // source row of each sample
    std::vector<std::size_t> neighbor; // neighbour row the sample moves towards
    std::vector<double> gap;           // sample = parent + gap * (neighbor - parent)
    int k_requested = 0;
    int k_used = 0;
    bool k_reduced = false;
    std::string note;
};

// amount_pct / 100 synthetic points per minority row. Each minority row, in
// order, spawns its points towards neighbours drawn uniformly from its k
// nearest minority rows (Euclidean, distance ties to the lower row). When k
// is not below the minority count it is reduced to count - 1 and flagged.
SmoteResult smote(const Eigen::MatrixXd& features, std::span<const std::string> labels, const std::string& minority,
                  int k, int amount_pct, std::uint64_t seed);

}  // namespace dfarm::models
