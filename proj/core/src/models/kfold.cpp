#include "dfarm/error.hpp"
#include "dfarm/models/preprocess.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>
#include <numeric>

namespace dfarm::models {

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n) throw InvalidArgument("kfold_split needs 2 <= k <= n");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = CounterRng::substream(seed, 0);
    rng.shuffle(std::span<std::size_t>(order));

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(folds[f].begin(), folds[f].end());
        pos += size;
    }
    return folds;
}

}  // namespace dfarm::models
