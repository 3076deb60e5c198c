#ifndef MNKLAB_LANDSCAPE_HPP
#define MNKLAB_LANDSCAPE_HPP

#include "mnklab/genotype.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mnklab {

inline constexpr unsigned max_objectives = 16;

/// Identity of an instance; everything else is regenerated from it.
struct LandscapeParams {
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const LandscapeParams&, const LandscapeParams&) = default;
};

/// Multi-objective NK landscape with random epistatic neighbours.
///
/// Objective j of genotype x is the mean over bits i of
/// table(j, i)[index], where index = x_i * 2^K + sum_t x_{nb[t]} * 2^(K-1-t)
/// and nb = neighbors(j, i). All objectives are maximized.
///
/// Generation: each (objective j, bit i) pair owns an Rng seeded with
/// derive_seed(seed, j * n + i). It first draws the K neighbours by a partial
/// Fisher-Yates shuffle of the ascending candidate list [0, n) \ {i}
/// (draw t picks position t + below(n - 1 - t)), then the 2^(K+1) table
/// entries with uniform().
class MnkLandscape {
public:
    /// Throws std::invalid_argument unless 1 <= m <= 16, 1 <= n <= 64, k < n.
    static MnkLandscape generate(unsigned m, unsigned n, unsigned k, std::uint64_t seed);
    static MnkLandscape generate(const LandscapeParams& p) { return generate(p.m, p.n, p.k, p.seed); }

    const LandscapeParams& params() const noexcept { return params_; }
    unsigned m() const noexcept { return params_.m; }
    unsigned n() const noexcept { return params_.n; }
    unsigned k() const noexcept { return params_.k; }
    std::uint64_t seed() const noexcept { return params_.seed; }
    std::size_t table_size() const noexcept { return std::size_t{1} << (params_.k + 1); }

    std::span<const unsigned> neighbors(unsigned objective, unsigned bit) const;
    std::span<const double> table(unsigned objective, unsigned bit) const;

    /// Throws std::invalid_argument if g.size() != n().
    ObjectiveVector evaluate(const Genotype& g) const;

    /// Unchecked hot path: writes m() values for the raw bit pattern into out.
    void evaluate_into(std::uint64_t bits, std::span<double> out) const noexcept;

    friend bool operator==(const MnkLandscape&, const MnkLandscape&) = default;

private:
    MnkLandscape() = default;
    friend MnkLandscape landscape_from_parts(const LandscapeParams&, std::vector<unsigned>,
                                             std::vector<double>);

    LandscapeParams params_;
    // row-major over (objective, bit), K entries each
    std::vector<unsigned> neighbors_;
    // row-major over (objective, bit), 2^(K+1) entries each
    std::vector<double> tables_;
};

/// Assembles a landscape from materialized data and checks every structural
/// invariant (neighbour ranges and distinctness, table values in [0, 1)).
/// Does not compare against regeneration; see read_instance for that.
MnkLandscape landscape_from_parts(const LandscapeParams& params, std::vector<unsigned> neighbors,
                                  std::vector<double> tables);

/// Instance file: a JSON object {m, n, k, instance_seed, neighbor_model,
/// neighbors, tables}. Tables are written with 17 significant digits so that
/// reading them back is bit-exact.
void write_instance(std::ostream& out, const MnkLandscape& landscape);

/// Reads an instance file. neighbors/tables are optional; when present they
/// must pass the structural checks and equal the regeneration from the seed
/// bit-for-bit. Throws std::runtime_error on any violation.
MnkLandscape read_instance(std::istream& in);

} // namespace mnklab

#endif
