#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dfarm::analysis {

enum class Direction { minimize, maximize };

const char* to_string(Direction d) noexcept;
Direction direction_from_string(std::string_view text);

struct ParetoResult {
    std::vector<std::size_t> front;  // ascending row indices
    std::vector<Direction> directions;
};

// True when `a` is at least as good as `b` in every objective and strictly
// better in one.
bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions);

// Fast non-dominated sorting: fronts[0] is the Pareto front, fronts[r] the
// points dominated only by points in earlier fronts. Indices ascending.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> points,
                                                         std::span<const Direction> directions);

// Points with identical coordinates never dominate each other, so duplicates
// of a front point are all on the front.
ParetoResult pareto_front(std::span<const std::vector<double>> points, std::span<const Direction> directions);

}  // namespace dfarm::analysis
