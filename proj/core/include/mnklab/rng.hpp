#ifndef MNKLAB_RNG_HPP
#define MNKLAB_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace mnklab {

/// SplitMix64 finalizer applied to (base, stream). Used to derive independent
/// child seeds, e.g. one per (objective, bit) when generating a landscape.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

/// Seedable generator with a portable draw contract.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here rather than taken from
/// <random>, because the standard distributions are implementation-defined
/// and would make runs differ across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution; one draw.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection sampling; n must be > 0.
    std::size_t below(std::size_t n);

    /// One uniform() draw compared against p. p = 0 never fires, p = 1 always does.
    bool bernoulli(double p) { return uniform() < p; }

    /// One draw, top bit.
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace mnklab

#endif
