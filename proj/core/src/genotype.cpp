#include "mnklab/genotype.hpp"

#include <charconv>
#include <stdexcept>

namespace mnklab {

Genotype::Genotype(std::uint64_t bits, unsigned n_bits) : bits_(bits), n_bits_(n_bits)
{
    if (n_bits > max_genotype_bits) {
        throw std::invalid_argument("genotype width exceeds 64 bits");
    }
    if ((bits & ~mask(n_bits)) != 0) {
        throw std::invalid_argument("genotype has bits set beyond its width");
    }
}

std::string Genotype::to_string() const
{
    std::string s(n_bits_, '0');
    for (unsigned i = 0; i < n_bits_; ++i) {
        if ((*this)[i]) {
            s[i] = '1';
        }
    }
    return s;
}

std::string Genotype::to_hex() const
{
    const unsigned digits = n_bits_ == 0 ? 1 : (n_bits_ + 3) / 4;
    char buf[17];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), bits_, 16);
    std::string body(buf, end);
    if (body.size() < digits) {
        body.insert(0, digits - body.size(), '0');
    }
    return body;
}

Genotype Genotype::from_hex(const std::string& hex, unsigned n_bits)
{
    std::uint64_t value = 0;
    const char* first = hex.data();
    const char* last = hex.data() + hex.size();
    if (hex.starts_with("0x")) {
        first += 2;
    }
    auto [ptr, ec] = std::from_chars(first, last, value, 16);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("invalid genotype hex '" + hex + "'");
    }
    return Genotype(value, n_bits);
}

} // namespace mnklab
