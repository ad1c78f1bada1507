#include "dfarm/analysis/pareto.hpp"

#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dfarm::analysis {

const char* to_string(Direction d) noexcept { return d == Direction::minimize ? "minimize" : "maximize"; }

Direction direction_from_string(std::string_view text) {
    if (text == "min" || text == "minimize") return Direction::minimize;
    if (text == "max" || text == "maximize") return Direction::maximize;
    throw InvalidArgument("unknown objective direction '" + std::string(text) + "'");
}

bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions) {
    bool strictly = false;
    for (std::size_t j = 0; j < directions.size(); ++j) {
        const double x = directions[j] == Direction::minimize ? a[j] : -a[j];
        const double y = directions[j] == Direction::minimize ? b[j] : -b[j];
        if (x > y) return false;
        if (x < y) strictly = true;
    }
    return strictly;
}

namespace {

void check_points(std::span<const std::vector<double>> points, std::span<const Direction> directions) {
    if (points.empty()) throw InvalidArgument("pareto analysis needs at least one point");
    if (directions.size() < 2) throw InvalidArgument("pareto analysis needs at least two objectives");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != directions.size())
            throw InvalidArgument("point " + std::to_string(i) + " has the wrong number of objectives");
        for (double v : points[i])
            if (!std::isfinite(v)) throw InvalidArgument("point " + std::to_string(i) + " has a non-finite value");
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> points,
                                                         std::span<const Direction> directions) {
    check_points(points, directions);
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q], directions)) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(points[q], points[p], directions)) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p)
        if (domination_count[p] == 0) fronts[0].push_back(p);

    std::size_t current = 0;
    while (!fronts[current].empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts[current])
            for (std::size_t q : dominated_by_me[p])
                if (--domination_count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
        ++current;
    }
    fronts.pop_back();
    return fronts;
}

ParetoResult pareto_front(std::span<const std::vector<double>> points, std::span<const Direction> directions) {
    check_points(points, directions);
    // A dominator precedes its victim in lexicographic order of the oriented
    // objectives, and dominance is transitive, so testing each point against
    // the front found so far is enough.
    auto oriented = [&](std::size_t i, std::size_t k) {
        return directions[k] == Direction::minimize ? points[i][k] : -points[i][k];
    };
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < directions.size(); ++k)
            if (oriented(a, k) != oriented(b, k)) return oriented(a, k) < oriented(b, k);
        return a < b;
    });
    std::vector<std::size_t> front;
    for (std::size_t i : order) {
        const bool dominated = std::any_of(front.begin(), front.end(),
                                           [&](std::size_t f) { return dominates(points[f], points[i], directions); });
        if (!dominated) front.push_back(i);
    }
    std::sort(front.begin(), front.end());
    return {std::move(front), {directions.begin(), directions.end()}};
}

}  // namespace dfarm::analysis
