#include "mnklab/ibea.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mnklab {

double eps_indicator(std::span<const double> a, std::span<const double> b) noexcept
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, b[i] - a[i]);
    }
    return worst;
}

std::vector<ObjectiveVector> normalize_objectives(std::span<const ObjectiveVector> points)
{
    std::vector<ObjectiveVector> out(points.begin(), points.end());
    if (points.empty()) {
        return out;
    }
    const std::size_t m = points[0].size();
    for (std::size_t obj = 0; obj < m; ++obj) {
        double lo = points[0][obj];
        double hi = points[0][obj];
        for (const auto& p : points) {
            lo = std::min(lo, p[obj]);
            hi = std::max(hi, p[obj]);
        }
        const double range = hi - lo;
        for (auto& p : out) {
            p[obj] = range > 0.0 ? (p[obj] - lo) / range : 0.0;
        }
    }
    return out;
}

namespace {

// log of sum_{j in alive, j != self} exp(-I(j, self) / kappa)
double log_fitness_magnitude(std::span<const ObjectiveVector> points, std::span<const char> alive,
                             std::size_t self, double kappa, std::vector<double>& scratch)
{
    scratch.clear();
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == self || !alive[j]) {
            continue;
        }
        const double exponent = -eps_indicator(points[j], points[self]) / kappa;
        scratch.push_back(exponent);
        peak = std::max(peak, exponent);
    }
    if (scratch.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    double sum = 0.0;
    for (double e : scratch) {
        sum += std::exp(e - peak);
    }
    return peak + std::log(sum);
}

} // namespace

std::vector<IndicatorFitness> ibea_fitness(std::span<const ObjectiveVector> normalized, double kappa)
{
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("kappa must be > 0");
    }
    const std::vector<char> alive(normalized.size(), 1);
    std::vector<double> scratch;
    std::vector<IndicatorFitness> fitness(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        fitness[i].log_magnitude = log_fitness_magnitude(normalized, alive, i, kappa, scratch);
    }
    return fitness;
}

IbeaSurvival ibea_survival(std::span<const ObjectiveVector> merged, std::size_t size, double kappa,
                           const IbeaStepHook& on_step)
{
    const auto points = normalize_objectives(merged);
    std::vector<IndicatorFitness> fitness = ibea_fitness(points, kappa);
    std::vector<char> alive(points.size(), 1);
    std::size_t remaining = points.size();
    std::vector<double> scratch;

    auto collect = [&] {
        IbeaSurvival out;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (alive[i]) {
                out.survivors.push_back(i);
                out.fitness.push_back(fitness[i]);
            }
        }
        return out;
    };

    // Removing a term that carries at least half of the sum would cancel
    // catastrophically in log1p; such entries are recomputed instead.
    constexpr double cancellation_limit = -std::numbers::ln2;

    while (remaining > size) {
        std::size_t worst = points.size();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (alive[i] && (worst == points.size() || fitness[i] < fitness[worst])) {
                worst = i;
            }
        }
        alive[worst] = 0;
        --remaining;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!alive[i]) {
                continue;
            }
            const double term = -eps_indicator(points[worst], points[i]) / kappa;
            const double relative = term - fitness[i].log_magnitude;
            if (relative < cancellation_limit) {
                fitness[i].log_magnitude += std::log1p(-std::exp(relative));
            } else {
                fitness[i].log_magnitude = log_fitness_magnitude(points, alive, i, kappa, scratch);
            }
        }
        if (on_step) {
            const auto step = collect();
            on_step(step.survivors, step.fitness);
        }
    }
    return collect();
}

std::size_t ibea_tournament(std::span<const IndicatorFitness> fitness, Rng& rng)
{
    const std::size_t a = rng.below(fitness.size());
    const std::size_t b = rng.below(fitness.size());
    if (fitness[b] < fitness[a]) {
        return a;
    }
    if (fitness[a] < fitness[b]) {
        return b;
    }
    return rng.coin() ? a : b;
}

void IbeaScheme::initialize(const Population& population, Rng&)
{
    std::vector<ObjectiveVector> raw;
    raw.reserve(population.size());
    for (const auto& ind : population) {
        raw.push_back(ind.objectives);
    }
    fitness_ = ibea_fitness(normalize_objectives(raw), kappa_);
}

Population IbeaScheme::survive(Population merged, std::size_t size, Rng&)
{
    std::vector<ObjectiveVector> raw;
    raw.reserve(merged.size());
    for (const auto& ind : merged) {
        raw.push_back(ind.objectives);
    }
    auto result = ibea_survival(raw, size, kappa_);
    Population next;
    next.reserve(result.survivors.size());
    for (std::size_t idx : result.survivors) {
        next.push_back(std::move(merged[idx]));
    }
    fitness_ = std::move(result.fitness);
    return next;
}

std::pair<std::size_t, std::size_t> IbeaScheme::select_parents(Rng& rng)
{
    const std::size_t first = ibea_tournament(fitness_, rng);
    const std::size_t second = ibea_tournament(fitness_, rng);
    return {first, second};
}

} // namespace mnklab
