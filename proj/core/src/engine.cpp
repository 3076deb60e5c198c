#include "mnklab/engine.hpp"

#include "mnklab/aeseh.hpp"
#include "mnklab/ibea.hpp"
#include "mnklab/nsga2.hpp"
#include "mnklab/pareto.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace mnklab {

std::string_view to_string(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::nsga2:
        return "nsga2";
    case Algorithm::ibea:
        return "ibea";
    case Algorithm::aeseh:
        return "aeseh";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "nsga2" || lower == "nsga-ii") {
        return Algorithm::nsga2;
    }
    if (lower == "ibea") {
        return Algorithm::ibea;
    }
    if (lower == "aeseh") {
        return Algorithm::aeseh;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

namespace {

void validate_eps(const EpsilonSettings& e, const char* which)
{
    const std::string name(which);
    if (!(e.initial_eps >= 0.0)) {
        throw std::invalid_argument(name + " initial epsilon must be >= 0");
    }
    if (!(e.step_floor > 0.0) || !(e.step_cap >= e.step_floor)) {
        throw std::invalid_argument(name + " step bounds must satisfy 0 < floor <= cap");
    }
    if (!(e.initial_step >= e.step_floor && e.initial_step <= e.step_cap)) {
        throw std::invalid_argument(name + " initial step must lie within [floor, cap]");
    }
}

} // namespace

void RunConfig::validate() const
{
    if (population_size < 2 || population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and >= 2");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw std::invalid_argument("crossover rate must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw std::invalid_argument("mutation rate must lie in [0, 1]");
    }
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("kappa must be > 0");
    }
    if (hood_reference_size < 1) {
        throw std::invalid_argument("reference hood size must be >= 1");
    }
    validate_eps(sampling_eps, "sampling");
    validate_eps(hood_eps, "hood");
}

std::unique_ptr<SelectionScheme> make_scheme(const RunConfig& config)
{
    switch (config.algorithm) {
    case Algorithm::nsga2:
        return std::make_unique<Nsga2Scheme>();
    case Algorithm::ibea:
        return std::make_unique<IbeaScheme>(config.kappa);
    case Algorithm::aeseh:
        return std::make_unique<AesehScheme>(config.sampling_eps, config.hood_eps, config.hood_reference_size);
    }
    throw std::invalid_argument("unknown algorithm");
}

std::pair<Genotype, Genotype> crossover_at(const Genotype& p1, const Genotype& p2, unsigned first_cut,
                                           unsigned second_cut)
{
    if (p1.size() != p2.size()) {
        throw std::invalid_argument("crossover parents differ in width");
    }
    if (first_cut > second_cut || second_cut > p1.size()) {
        throw std::invalid_argument("crossover cuts must satisfy c1 <= c2 <= n");
    }
    const std::uint64_t segment = Genotype::mask(second_cut) & ~Genotype::mask(first_cut);
    const std::uint64_t diff = (p1.bits() ^ p2.bits()) & segment;
    return {Genotype(p1.bits() ^ diff, p1.size()), Genotype(p2.bits() ^ diff, p2.size())};
}

std::pair<Genotype, Genotype> two_point_crossover(const Genotype& p1, const Genotype& p2, double rate,
                                                  Rng& rng)
{
    if (!rng.bernoulli(rate)) {
        return {p1, p2};
    }
    const std::size_t positions = std::size_t{p1.size()} + 1;
    auto c1 = static_cast<unsigned>(rng.below(positions));
    auto c2 = static_cast<unsigned>(rng.below(positions));
    if (c1 > c2) {
        std::swap(c1, c2);
    }
    return crossover_at(p1, p2, c1, c2);
}

Genotype bitflip_mutation(Genotype g, double rate, Rng& rng)
{
    for (unsigned i = 0; i < g.size(); ++i) {
        if (rng.bernoulli(rate)) {
            g.flip(i);
        }
    }
    return g;
}

std::vector<Individual> first_front(std::span<const Individual> population)
{
    std::vector<Individual> front;
    if (population.empty()) {
        return front;
    }
    const auto partition = nondominated_sort_by(
        population.size(), [&](std::size_t i) -> const ObjectiveVector& { return population[i].objectives; });
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i : partition[0]) {
        if (seen.insert(population[i].genotype.bits()).second) {
            front.push_back(population[i]);
        }
    }
    return front;
}

Population run(const RunConfig& config, const MnkLandscape& landscape, const GenerationObserver& observer)
{
    config.validate();
    const unsigned n = landscape.n();
    const std::size_t size = config.population_size;
    const double mutation_rate = config.mutation_rate_for(n);

    Rng rng(config.seed);
    auto make_individual = [&](Genotype g) {
        ObjectiveVector f = landscape.evaluate(g);
        return Individual{g, std::move(f)};
    };

    Population population;
    population.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        population.push_back(make_individual(Genotype(rng.next() & Genotype::mask(n), n)));
    }

    auto scheme = make_scheme(config);
    scheme->initialize(population, rng);
    if (observer) {
        observer(0, first_front(population));
    }

    for (std::size_t t = 1; t <= config.generations; ++t) {
        Population merged = population;
        merged.reserve(2 * size);
        while (merged.size() < 2 * size) {
            auto [a, b] = scheme->select_parents(rng);
            auto [c1, c2] = two_point_crossover(population[a].genotype, population[b].genotype,
                                                config.crossover_rate, rng);
            c1 = bitflip_mutation(c1, mutation_rate, rng);
            c2 = bitflip_mutation(c2, mutation_rate, rng);
            merged.push_back(make_individual(c1));
            merged.push_back(make_individual(c2));
        }
        population = scheme->survive(std::move(merged), size, rng);
        if (observer) {
            observer(t, first_front(population));
        }
    }
    return population;
}

} // namespace mnklab
