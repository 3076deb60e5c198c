#include "mnklab/nsga2.hpp"

#include "mnklab/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mnklab {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> population)
{
    std::vector<ObjectiveVector> out;
    out.reserve(population.size());
    for (const auto& ind : population) {
        out.push_back(ind.objectives);
    }
    return out;
}

} // namespace

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front)
{
    const std::size_t count = front.size();
    std::vector<double> distance(count, 0.0);
    if (count <= 2) {
        std::fill(distance.begin(), distance.end(), infinity);
        return distance;
    }
    const std::size_t m = front[0].size();
    std::vector<std::size_t> order(count);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (front[a][obj] != front[b][obj]) {
                return front[a][obj] < front[b][obj];
            }
            if (front[a] != front[b]) {
                return front[a] < front[b];
            }
            return a < b;
        });
        const double lo = front[order.front()][obj];
        const double hi = front[order.back()][obj];
        if (lo == hi) {
            continue;
        }
        // among identical copies of the top vector, the lowest index is the boundary point
        std::size_t top = count - 1;
        while (top > 0 && front[order[top - 1]] == front[order.back()]) {
            --top;
        }
        distance[order.front()] = infinity;
        distance[order[top]] = infinity;
        const double range = hi - lo;
        for (std::size_t pos = 1; pos + 1 < count; ++pos) {
            const double prev = front[order[pos - 1]][obj];
            const double next = front[order[pos + 1]][obj];
            const double v = front[order[pos]][obj];
            if (prev == v || next == v) {
                continue;
            }
            distance[order[pos]] += (next - prev) / range;
        }
    }
    return distance;
}

std::vector<RankedIndividual> rank_population(std::span<const ObjectiveVector> population)
{
    std::vector<RankedIndividual> ranked(population.size());
    const FrontPartition partition = nondominated_sort(population);
    std::vector<ObjectiveVector> front_points;
    for (std::size_t f = 0; f < partition.size(); ++f) {
        front_points.clear();
        for (std::size_t idx : partition[f]) {
            front_points.push_back(population[idx]);
        }
        const auto distance = crowding_distance(front_points);
        for (std::size_t i = 0; i < partition[f].size(); ++i) {
            ranked[partition[f][i]] = {f + 1, distance[i]};
        }
    }
    return ranked;
}

std::vector<std::size_t> nsga2_survival(std::span<const ObjectiveVector> merged, std::size_t size, Rng& rng)
{
    std::vector<std::size_t> survivors;
    survivors.reserve(size);
    if (size >= merged.size()) {
        survivors.resize(merged.size());
        std::iota(survivors.begin(), survivors.end(), std::size_t{0});
        return survivors;
    }

    const FrontPartition partition = nondominated_sort(merged);
    for (const auto& front : partition.fronts) {
        const std::size_t room = size - survivors.size();
        if (room == 0) {
            break;
        }
        if (front.size() <= room) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            continue;
        }

        std::vector<ObjectiveVector> points;
        points.reserve(front.size());
        for (std::size_t idx : front) {
            points.push_back(merged[idx]);
        }
        const auto distance = crowding_distance(points);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return distance[a] > distance[b]; });

        const double boundary = distance[order[room - 1]];
        std::vector<std::size_t> tied;
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const double d = distance[order[pos]];
            if (d > boundary) {
                survivors.push_back(front[order[pos]]);
            } else if (d == boundary) {
                tied.push_back(front[order[pos]]);
            }
        }
        std::sort(tied.begin(), tied.end());
        const std::size_t wanted = size - survivors.size();
        if (wanted < tied.size()) {
            for (std::size_t i = 0; i < wanted; ++i) {
                std::swap(tied[i], tied[i + rng.below(tied.size() - i)]);
            }
            tied.resize(wanted);
        }
        survivors.insert(survivors.end(), tied.begin(), tied.end());
        break;
    }
    std::sort(survivors.begin(), survivors.end());
    return survivors;
}

std::size_t nsga2_tournament(std::span<const RankedIndividual> ranked, Rng& rng)
{
    const std::size_t a = rng.below(ranked.size());
    const std::size_t b = rng.below(ranked.size());
    if (ranked[a].front_rank != ranked[b].front_rank) {
        return ranked[a].front_rank < ranked[b].front_rank ? a : b;
    }
    if (ranked[a].crowding != ranked[b].crowding) {
        return ranked[a].crowding > ranked[b].crowding ? a : b;
    }
    return rng.coin() ? a : b;
}

void Nsga2Scheme::initialize(const Population& population, Rng&)
{
    ranked_ = rank_population(objectives_of(population));
}

Population Nsga2Scheme::survive(Population merged, std::size_t size, Rng& rng)
{
    const auto chosen = nsga2_survival(objectives_of(merged), size, rng);
    Population next;
    next.reserve(chosen.size());
    for (std::size_t idx : chosen) {
        next.push_back(std::move(merged[idx]));
    }
    ranked_ = rank_population(objectives_of(next));
    return next;
}

std::pair<std::size_t, std::size_t> Nsga2Scheme::select_parents(Rng& rng)
{
    const std::size_t first = nsga2_tournament(ranked_, rng);
    const std::size_t second = nsga2_tournament(ranked_, rng);
    return {first, second};
}

} // namespace mnklab
