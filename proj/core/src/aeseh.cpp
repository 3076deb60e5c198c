#include "mnklab/aeseh.hpp"

#include "mnklab/pareto.hpp"

#include <algorithm>
#include <stdexcept>

namespace mnklab {

bool eps_dominates(std::span<const double> a, std::span<const double> b, double eps) noexcept
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] + eps < b[i]) {
            return false;
        }
    }
    return true;
}

EpsilonController adapt_epsilon(EpsilonController state, double observed, double target,
                                const EpsilonSettings& settings)
{
    if (!(target > 0.0)) {
        throw std::invalid_argument("epsilon adaptation target must be > 0");
    }
    if (observed == target) {
        return state;
    }
    const Direction direction = observed > target ? Direction::coarser : Direction::finer;
    if (state.last == direction) {
        state.step *= 2.0;
    } else if (state.last != Direction::none) {
        state.step *= 0.5;
    }
    state.step = std::clamp(state.step, settings.step_floor, settings.step_cap);
    state.eps = direction == Direction::coarser ? state.eps + state.step : std::max(0.0, state.eps - state.step);
    state.last = direction;
    return state;
}

namespace {

template <class T>
T take_at(std::vector<T>& list, std::size_t pos)
{
    T value = list[pos];
    list.erase(list.begin() + static_cast<std::ptrdiff_t>(pos));
    return value;
}

} // namespace

SamplingResult eps_sampling_survival(std::span<const Individual> merged, std::size_t size, double eps,
                                     Rng& rng)
{
    SamplingResult result;
    if (size >= merged.size()) {
        result.survivors.resize(merged.size());
        for (std::size_t i = 0; i < merged.size(); ++i) {
            result.survivors[i] = i;
        }
        return result;
    }

    const FrontPartition partition = nondominated_sort_by(
        merged.size(), [&](std::size_t i) -> const ObjectiveVector& { return merged[i].objectives; });

    if (partition[0].size() <= size) {
        for (const auto& front : partition.fronts) {
            const std::size_t room = size - result.survivors.size();
            if (room == 0) {
                break;
            }
            if (front.size() <= room) {
                result.survivors.insert(result.survivors.end(), front.begin(), front.end());
                continue;
            }
            std::vector<std::size_t> pool = front;
            for (std::size_t i = 0; i < room; ++i) {
                result.survivors.push_back(take_at(pool, rng.below(pool.size())));
            }
        }
        std::sort(result.survivors.begin(), result.survivors.end());
        return result;
    }

    result.sampled = true;
    std::vector<std::size_t> remaining = partition[0];
    std::vector<std::size_t> samples;
    std::vector<std::size_t> side_pool;
    while (!remaining.empty()) {
        const std::size_t sample = take_at(remaining, rng.below(remaining.size()));
        samples.push_back(sample);
        std::vector<std::size_t> kept;
        kept.reserve(remaining.size());
        for (std::size_t idx : remaining) {
            if (eps_dominates(merged[sample].objectives, merged[idx].objectives, eps)) {
                side_pool.push_back(idx);
            } else {
                kept.push_back(idx);
            }
        }
        remaining = std::move(kept);
    }
    result.samples = samples.size();

    while (samples.size() > size) {
        take_at(samples, rng.below(samples.size()));
    }
    while (samples.size() < size) {
        samples.push_back(take_at(side_pool, rng.below(side_pool.size())));
    }
    std::sort(samples.begin(), samples.end());
    result.survivors = std::move(samples);
    return result;
}

HoodPartition eps_hood_creation(std::span<const Individual> population, double eps, Rng& rng)
{
    HoodPartition partition;
    std::vector<std::size_t> unassigned(population.size());
    for (std::size_t i = 0; i < unassigned.size(); ++i) {
        unassigned[i] = i;
    }
    while (!unassigned.empty()) {
        const std::size_t head = take_at(unassigned, rng.below(unassigned.size()));
        std::vector<std::size_t> hood{head};
        std::vector<std::size_t> rest;
        rest.reserve(unassigned.size());
        for (std::size_t idx : unassigned) {
            if (eps_dominates(population[head].objectives, population[idx].objectives, eps)) {
                hood.push_back(idx);
            } else {
                rest.push_back(idx);
            }
        }
        unassigned = std::move(rest);
        partition.hoods.push_back(std::move(hood));
    }
    return partition;
}

HoodMating::HoodMating(HoodPartition partition) : partition_(std::move(partition)) {}

std::pair<std::size_t, std::size_t> HoodMating::next_pair(Rng& rng)
{
    if (partition_.hoods.empty()) {
        throw std::logic_error("hood mating needs at least one hood");
    }
    const auto& hood = partition_.hoods[cursor_ % partition_.hoods.size()];
    ++cursor_;
    if (hood.size() == 1) {
        return {hood[0], hood[0]};
    }
    const std::size_t first = rng.below(hood.size());
    std::size_t second = rng.below(hood.size() - 1);
    if (second >= first) {
        ++second;
    }
    return {hood[first], hood[second]};
}

AesehScheme::AesehScheme(EpsilonSettings sampling, EpsilonSettings hood, std::size_t hood_reference_size)
    : sampling_settings_(sampling)
    , hood_settings_(hood)
    , hood_reference_size_(hood_reference_size)
    , state_{EpsilonController::from(sampling), EpsilonController::from(hood)}
{
}

void AesehScheme::build_hoods(const Population& population, Rng& rng)
{
    HoodPartition partition = eps_hood_creation(population, state_.hood.eps, rng);
    const double target = static_cast<double>(population.size()) / static_cast<double>(hood_reference_size_);
    state_.hood = adapt_epsilon(state_.hood, static_cast<double>(partition.hoods.size()), target, hood_settings_);
    mating_ = HoodMating(std::move(partition));
}

void AesehScheme::initialize(const Population& population, Rng& rng)
{
    build_hoods(population, rng);
}

Population AesehScheme::survive(Population merged, std::size_t size, Rng& rng)
{
    const SamplingResult result = eps_sampling_survival(merged, size, state_.sampling.eps, rng);
    if (result.sampled) {
        state_.sampling = adapt_epsilon(state_.sampling, static_cast<double>(result.samples),
                                        static_cast<double>(size), sampling_settings_);
    }
    Population next;
    next.reserve(result.survivors.size());
    for (std::size_t idx : result.survivors) {
        next.push_back(std::move(merged[idx]));
    }
    build_hoods(next, rng);
    return next;
}

std::pair<std::size_t, std::size_t> AesehScheme::select_parents(Rng& rng)
{
    return mating_.next_pair(rng);
}

} // namespace mnklab
