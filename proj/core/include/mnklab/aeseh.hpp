#ifndef MNKLAB_AESEH_HPP
#define MNKLAB_AESEH_HPP

#include "mnklab/engine.hpp"

#include <span>
#include <vector>

namespace mnklab {

/// Additive epsilon dominance: every f_i(a) + eps >= f_i(b). Equal vectors
/// eps-dominate each other for any eps >= 0; callers never test a solution
/// against itself (samples and hood heads leave their list before the scan),
/// so copies of the same genotype are absorbed like any other equal vector.
bool eps_dominates(std::span<const double> a, std::span<const double> b, double eps) noexcept;

enum class Direction { none, coarser, finer };

/// One adaptively-stepped epsilon.
struct EpsilonController {
    double eps = 0.0;
    double step = 0.005;
    Direction last = Direction::none;

    static EpsilonController from(const EpsilonSettings& s) { return {s.initial_eps, s.initial_step, Direction::none}; }
};

struct EpsilonState {
    EpsilonController sampling;
    EpsilonController hood;
};

/// Moves eps toward producing `target` items.
///
/// observed > target: eps grows by step; observed < target: eps shrinks by
/// step, never below 0; observed == target: unchanged. Before moving, the
/// step doubles if the direction repeats the previous move and halves if it
/// reverses it, then is clamped to [floor, cap]. Requires target > 0.
EpsilonController adapt_epsilon(EpsilonController state, double observed, double target,
                                const EpsilonSettings& settings);

struct SamplingResult {
    std::vector<std::size_t> survivors; // ascending indices into the input
    std::size_t samples = 0;            // 0 when F1 fit without sampling
    bool sampled = false;
};

/// Survival by epsilon-sampling.
///
/// If |F1| <= size, whole fronts are copied in rank order and the
/// overflowing front is cut to a uniform random subset. Otherwise, until F1
/// is exhausted: draw a uniform position in the remaining F1 list, move that
/// solution to the survivors and move every remaining solution it
/// eps-dominates to a side pool (both lists keep their order). Excess samples
/// are then removed one uniform position at a time; a shortfall is refilled
/// one uniform position at a time from the side pool.
///
/// All "uniform random subset" steps draw rng.below(list size) and erase
/// that position, repeated.
SamplingResult eps_sampling_survival(std::span<const Individual> merged, std::size_t size, double eps,
                                     Rng& rng);

struct HoodPartition {
    std::vector<std::vector<std::size_t>> hoods; // hoods[h][0] is the head
};

/// Repeatedly draws a uniform head among unassigned solutions (list kept in
/// population order) and forms its hood from the head plus every unassigned
/// solution the head eps-dominates.
HoodPartition eps_hood_creation(std::span<const Individual> population, double eps, Rng& rng);

/// Round-robin mating over hoods. Pair k comes from hood k mod H; two
/// distinct members are drawn uniformly (below(s), then below(s - 1) with the
/// usual skip), a singleton hood supplies its member twice with no draws.
class HoodMating {
public:
    explicit HoodMating(HoodPartition partition);

    std::pair<std::size_t, std::size_t> next_pair(Rng& rng);
    std::size_t cursor() const noexcept { return cursor_; }
    const HoodPartition& partition() const noexcept { return partition_; }

private:
    HoodPartition partition_;
    std::size_t cursor_ = 0;
};

class AesehScheme final : public SelectionScheme {
public:
    AesehScheme(EpsilonSettings sampling, EpsilonSettings hood, std::size_t hood_reference_size);

    void initialize(const Population& population, Rng& rng) override;
    Population survive(Population merged, std::size_t size, Rng& rng) override;
    std::pair<std::size_t, std::size_t> select_parents(Rng& rng) override;

    const EpsilonState& state() const noexcept { return state_; }

private:
    void build_hoods(const Population& population, Rng& rng);

    EpsilonSettings sampling_settings_;
    EpsilonSettings hood_settings_;
    std::size_t hood_reference_size_;
    EpsilonState state_;
    HoodMating mating_{HoodPartition{}};
};

} // namespace mnklab

#endif
