#include "mnklab/rng.hpp"

#include <cassert>

namespace mnklab {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n)
{
    assert(n > 0);
    const std::uint64_t bound = n;
    // 2^64 mod bound; the accepted range [threshold, 2^64) is a multiple of bound
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) {
            return static_cast<std::size_t>(x % bound);
        }
    }
}

} // namespace mnklab
