#ifndef MNKLAB_ENGINE_HPP
#define MNKLAB_ENGINE_HPP

#include "mnklab/genotype.hpp"
#include "mnklab/landscape.hpp"
#include "mnklab/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mnklab {

struct Individual {
    Genotype genotype;
    ObjectiveVector objectives;
};

using Population = std::vector<Individual>;

enum class Algorithm { nsga2, ibea, aeseh };

std::string_view to_string(Algorithm a) noexcept;
/// Accepts "nsga2", "ibea", "aeseh" (case-insensitive); throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);

/// Constants of the epsilon adaptation rule, shared by eps_s and eps_h.
struct EpsilonSettings {
    double initial_eps = 0.0;
    double initial_step = 0.005;
    double step_floor = 1e-6;
    double step_cap = 0.5;
};

struct RunConfig {
    Algorithm algorithm = Algorithm::aeseh;
    std::size_t population_size = 100;
    std::size_t generations = 100;
    double crossover_rate = 1.0;
    /// Per-bit flip probability; unset means 1/n.
    std::optional<double> mutation_rate;
    double kappa = 0.001;
    std::size_t hood_reference_size = 20;
    EpsilonSettings sampling_eps;
    EpsilonSettings hood_eps;
    std::uint64_t seed = 1;

    double mutation_rate_for(unsigned n_bits) const { return mutation_rate.value_or(1.0 / n_bits); }

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// Survival and parent selection of one algorithm. A scheme keeps whatever
/// state it needs to pick parents from the population it last produced.
class SelectionScheme {
public:
    virtual ~SelectionScheme() = default;

    /// Prepares parent selection on the initial population.
    virtual void initialize(const Population& population, Rng& rng) = 0;

    /// Reduces the merged parents+offspring to `size` survivors, and prepares
    /// parent selection on them.
    virtual Population survive(Population merged, std::size_t size, Rng& rng) = 0;

    /// Indices of two parents in the population last returned or initialized.
    virtual std::pair<std::size_t, std::size_t> select_parents(Rng& rng) = 0;
};

std::unique_ptr<SelectionScheme> make_scheme(const RunConfig& config);

/// Exchanges bits [first_cut, second_cut) of the two parents.
std::pair<Genotype, Genotype> crossover_at(const Genotype& p1, const Genotype& p2, unsigned first_cut,
                                           unsigned second_cut);

/// With probability `rate` (one uniform draw), draws two cuts uniformly from
/// [0, n], orders them and exchanges the segment; otherwise returns clones.
std::pair<Genotype, Genotype> two_point_crossover(const Genotype& p1, const Genotype& p2, double rate,
                                                  Rng& rng);

/// Flips each bit independently with probability `rate`, bit 0 first.
Genotype bitflip_mutation(Genotype g, double rate, Rng& rng);

/// Distinct-genotype non-dominated front of a population, in population order.
std::vector<Individual> first_front(std::span<const Individual> population);

/// Called once per generation t = 0..T with F1 of the surviving population.
using GenerationObserver = std::function<void(std::size_t t, std::span<const Individual> front)>;

/// Elitist (mu + mu) loop.
///
/// Draw order on the single run stream: |P| random initial genotypes; then
/// per offspring pair the parent-selection draws, the crossover draws, and
/// the mutation draws for child 1 and child 2; then the survival draws.
Population run(const RunConfig& config, const MnkLandscape& landscape, const GenerationObserver& observer);

} // namespace mnklab

#endif
