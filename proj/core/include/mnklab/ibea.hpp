#ifndef MNKLAB_IBEA_HPP
#define MNKLAB_IBEA_HPP

#include "mnklab/engine.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace mnklab {

/// Binary additive epsilon indicator under maximization:
/// max_i (b_i - a_i), the smallest shift that lets a weakly dominate b.
double eps_indicator(std::span<const double> a, std::span<const double> b) noexcept;

/// Min-max rescaling of each objective to [0, 1] over the given set. A
/// dimension with max == min maps to 0 for every point.
std::vector<ObjectiveVector> normalize_objectives(std::span<const ObjectiveVector> points);

/// IBEA fitness, sum over x' != x of -exp(-I(x', x) / kappa).
///
/// With kappa = 0.001 the individual terms span roughly e^-1000 .. e^+1000,
/// well outside double range, so the fitness is carried as the natural log of
/// its magnitude. Lower fitness means larger log_magnitude.
struct IndicatorFitness {
    double log_magnitude = -HUGE_VAL; // empty sum

    double value() const noexcept { return -std::exp(log_magnitude); }
    friend bool operator<(const IndicatorFitness& a, const IndicatorFitness& b) noexcept
    {
        return a.log_magnitude > b.log_magnitude;
    }
};

/// From-scratch fitness of every point. Expects already-normalized objectives.
std::vector<IndicatorFitness> ibea_fitness(std::span<const ObjectiveVector> normalized, double kappa);

struct IbeaSurvival {
    std::vector<std::size_t> survivors;      // ascending indices into the input
    std::vector<IndicatorFitness> fitness;   // fitness of each survivor, same order
};

/// Environmental selection. Objectives are normalized once over the whole
/// input, then the worst individual (earliest index on ties) is deleted and
/// its term is removed from every remaining fitness until `size` remain.
///
/// `on_step`, when given, is called after each deletion with the remaining
/// indices and their stored fitness.
using IbeaStepHook = std::function<void(std::span<const std::size_t>, std::span<const IndicatorFitness>)>;
IbeaSurvival ibea_survival(std::span<const ObjectiveVector> merged, std::size_t size, double kappa,
                           const IbeaStepHook& on_step = {});

/// Binary tournament on fitness: two uniform picks, higher fitness wins,
/// coin flip on ties.
std::size_t ibea_tournament(std::span<const IndicatorFitness> fitness, Rng& rng);

class IbeaScheme final : public SelectionScheme {
public:
    explicit IbeaScheme(double kappa) : kappa_(kappa) {}

    void initialize(const Population& population, Rng& rng) override;
    Population survive(Population merged, std::size_t size, Rng& rng) override;
    std::pair<std::size_t, std::size_t> select_parents(Rng& rng) override;

private:
    double kappa_;
    std::vector<IndicatorFitness> fitness_;
};

} // namespace mnklab

#endif
