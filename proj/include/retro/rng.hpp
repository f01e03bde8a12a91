#pragma once

#include <cstdint>
#include <limits>

namespace retro {

/// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for trial `trial_index` of a run started from `master_seed`.
constexpr std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return splitmix64_mix(master_seed ^ ((trial_index + 1) * 0x9E3779B97F4A7C15ULL));
}

/// Deterministic generator with a single 64-bit word of state (SplitMix64).
///
/// Distributions are implemented here rather than taken from <random> because
/// the standard distributions are allowed to differ between library vendors,
/// and every report must be reproducible from its seed.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, bound). `bound` must be non-zero.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform in [lo, hi], inclusive on both ends.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

} // namespace retro
