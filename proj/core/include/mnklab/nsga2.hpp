#ifndef MNKLAB_NSGA2_HPP
#define MNKLAB_NSGA2_HPP

#include "mnklab/engine.hpp"

#include <span>
#include <vector>

namespace mnklab {

/// Crowding distance of each point within its front.
///
/// Fronts of one or two points are all +infinity. Otherwise, per objective,
/// points are ordered by (value, whole vector lexicographically, index): if
/// every value is equal the objective adds nothing; the first point of that
/// order and the lowest-indexed copy of the last vector get +infinity; an
/// interior point whose value is shared with a sorted neighbour adds 0; any
/// other interior point adds (next - prev) / (max - min). Only identical
/// vectors can trade values when the input is permuted.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

struct RankedIndividual {
    std::size_t front_rank = 0; // 1-based
    double crowding = 0.0;
};

/// Front rank and crowding distance of every point.
std::vector<RankedIndividual> rank_population(std::span<const ObjectiveVector> population);

/// Indices (ascending) of the `size` survivors: whole fronts in rank order,
/// the overflowing front truncated by descending crowding distance computed
/// on that front alone. When the cut falls inside a group of equal distance,
/// the members kept from that group are a uniform random subset (partial
/// Fisher-Yates over the group in index order). No draws otherwise.
std::vector<std::size_t> nsga2_survival(std::span<const ObjectiveVector> merged, std::size_t size, Rng& rng);

/// Crowded binary tournament: two uniform picks, lower rank wins, then
/// larger crowding distance, then a coin flip (always drawn on a full tie).
std::size_t nsga2_tournament(std::span<const RankedIndividual> ranked, Rng& rng);

class Nsga2Scheme final : public SelectionScheme {
public:
    void initialize(const Population& population, Rng& rng) override;
    Population survive(Population merged, std::size_t size, Rng& rng) override;
    std::pair<std::size_t, std::size_t> select_parents(Rng& rng) override;

private:
    std::vector<RankedIndividual> ranked_;
};

} // namespace mnklab

#endif
