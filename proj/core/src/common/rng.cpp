#include "dfarm/rng.hpp"

#include <cmath>
#include <numbers>

namespace dfarm {

double CounterRng::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    // Reject the low partial block so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = (*this)();
        if (r >= threshold) return r % bound;
    }
}

double CounterRng::normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dfarm
