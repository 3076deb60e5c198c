#include "mnklab/engine.hpp"
#include "mnklab/ibea.hpp"
#include "mnklab/landscape.hpp"
#include "mnklab/nsga2.hpp"
#include "mnklab/pareto.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<mnklab::ObjectiveVector> random_points(std::size_t count, std::size_t m, std::uint64_t seed)
{
    mnklab::Rng rng(seed);
    std::vector<mnklab::ObjectiveVector> out(count, mnklab::ObjectiveVector(m));
    for (auto& p : out) {
        for (auto& v : p) {
            v = rng.uniform();
        }
    }
    return out;
}

void BM_Evaluate(benchmark::State& state)
{
    const auto l = mnklab::MnkLandscape::generate(static_cast<unsigned>(state.range(0)), 20, 1, 1);
    std::vector<double> out(l.m());
    std::uint64_t g = 0;
    for (auto _ : state) {
        l.evaluate_into(g, out);
        benchmark::DoNotOptimize(out.data());
        g = (g + 0x9e3779b9) & mnklab::Genotype::mask(20);
    }
}
BENCHMARK(BM_Evaluate)->Arg(3)->Arg(6);

void BM_NondominatedSort(benchmark::State& state)
{
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 6, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mnklab::nondominated_sort(pts));
    }
}
BENCHMARK(BM_NondominatedSort)->Arg(100)->Arg(400);

void BM_Nsga2Survival(benchmark::State& state)
{
    const auto pts = random_points(400, 6, 3);
    mnklab::Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mnklab::nsga2_survival(pts, 200, rng));
    }
}
BENCHMARK(BM_Nsga2Survival);

void BM_IbeaSurvival(benchmark::State& state)
{
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 6, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mnklab::ibea_survival(pts, pts.size() / 2, 0.001));
    }
}
BENCHMARK(BM_IbeaSurvival)->Arg(100)->Arg(400);

void BM_EnumeratePos(benchmark::State& state)
{
    const auto l = mnklab::MnkLandscape::generate(static_cast<unsigned>(state.range(0)), 16, 1, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mnklab::enumerate_pos(l));
    }
}
BENCHMARK(BM_EnumeratePos)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Run(benchmark::State& state)
{
    const auto l = mnklab::MnkLandscape::generate(6, 20, 1, 7);
    mnklab::RunConfig c;
    c.algorithm = static_cast<mnklab::Algorithm>(state.range(0));
    c.population_size = 100;
    c.generations = 20;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mnklab::run(c, l, {}));
    }
}
BENCHMARK(BM_Run)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
