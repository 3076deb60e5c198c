#ifndef MNKLAB_GENOTYPE_HPP
#define MNKLAB_GENOTYPE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mnklab {

inline constexpr unsigned max_genotype_bits = 64;

/// Fixed-width bit string of up to 64 bits. Bits at positions >= size() are
/// always zero, so equality and hashing reduce to the machine word.
class Genotype {
public:
    Genotype() = default;

    /// Throws std::invalid_argument if n_bits > 64 or any bit >= n_bits is set.
    Genotype(std::uint64_t bits, unsigned n_bits);

    static constexpr std::uint64_t mask(unsigned n_bits) noexcept
    {
        return n_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_bits) - 1;
    }

    std::uint64_t bits() const noexcept { return bits_; }
    unsigned size() const noexcept { return n_bits_; }

    bool operator[](unsigned i) const noexcept { return (bits_ >> i) & 1U; }
    void flip(unsigned i) noexcept { bits_ ^= std::uint64_t{1} << i; }
    void set(unsigned i, bool value) noexcept
    {
        bits_ = value ? bits_ | (std::uint64_t{1} << i) : bits_ & ~(std::uint64_t{1} << i);
    }

    /// Bit 0 first, e.g. "0110".
    std::string to_string() const;
    /// Lowercase hex of bits(), zero-padded to ceil(size()/4) digits.
    std::string to_hex() const;
    static Genotype from_hex(const std::string& hex, unsigned n_bits);

    friend bool operator==(const Genotype&, const Genotype&) = default;

private:
    std::uint64_t bits_ = 0;
    unsigned n_bits_ = 0;
};

using ObjectiveVector = std::vector<double>;

} // namespace mnklab

template <>
struct std::hash<mnklab::Genotype> {
    std::size_t operator()(const mnklab::Genotype& g) const noexcept
    {
        return std::hash<std::uint64_t>{}(g.bits());
    }
};

#endif
