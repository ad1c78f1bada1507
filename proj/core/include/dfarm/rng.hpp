#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace dfarm {

// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based 64-bit generator.
//
// Output i of a stream with key K is mix64(K + (i + 1) * 0x9e3779b97f4a7c15),
// which is exactly the SplitMix64 sequence seeded with K. Any output can be
// recomputed from (key, counter) alone, so the stream is reproducible across
// platforms and can be skipped ahead in O(1).
//
// Substreams: the key for substream `id` of seed `s` is
//   mix64(s ^ mix64(id + 0x9e3779b97f4a7c15)).
// Nested derivations (seed, a, b) apply the rule twice.
class CounterRng {
public:
    using result_type = std::uint64_t;
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr CounterRng substream(std::uint64_t seed, std::uint64_t id) noexcept {
        return CounterRng(derive_key(seed, id));
    }
    static constexpr CounterRng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
        return CounterRng(derive_key(derive_key(seed, a), b));
    }
    static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t id) noexcept {
        return mix64(seed ^ mix64(id + kGamma));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

    constexpr result_type operator()() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * kGamma);
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    // Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept;
    // Unbiased integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) noexcept;
    // Standard normal via Box-Muller (no cached second variate).
    double normal() noexcept;
    double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

    template <class T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace dfarm
