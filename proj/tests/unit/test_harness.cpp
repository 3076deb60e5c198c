#include "mnklab/harness.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using mnklab::Algorithm;
using mnklab::BatteryConfig;
using mnklab::ConfigError;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("mnklab_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t line_count(const std::string& text)
{
    std::size_t n = 0;
    for (char c : text) {
        n += c == '\n';
    }
    return n;
}

} // namespace

TEST_CASE("config defaults")
{
    const auto c = mnklab::parse_battery_config(R"({"landscape": {"m": 6, "n": 20, "k": 1, "seed": 3}})");
    CHECK(c.landscape == mnklab::LandscapeParams{6, 20, 1, 3});
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::aeseh, Algorithm::nsga2, Algorithm::ibea});
    CHECK(c.population_sizes == std::vector<std::size_t>{50, 100, 200});
    CHECK(c.runs == 30);
    CHECK(c.run.generations == 100);
    CHECK(c.run.crossover_rate == 1.0);
    CHECK_FALSE(c.run.mutation_rate.has_value());
    CHECK(c.run.kappa == 0.001);
    CHECK(c.run.hood_reference_size == 20);
    CHECK(c.run_seed(0) == 1);
    CHECK(c.run_seed(29) == 30);
}

TEST_CASE("config fields and relative paths")
{
    const auto c = mnklab::parse_battery_config(R"({
        "name": "m4", "instance": "inst.json", "pos": "sub/pos.jsonl",
        "algorithms": ["ibea", "NSGA2"], "population_sizes": [10, 20], "runs": 3, "base_seed": 100,
        "workers": 2, "output_dir": "out", "generations": 7, "crossover_rate": 0.9, "mutation_rate": 0.1,
        "kappa": 0.05, "hood_reference_size": 5,
        "epsilon": {"sampling": {"initial": 0.01, "step": 0.002}, "hood": {"step_cap": 0.25}}
    })",
                                                "/data/b");
    CHECK(c.name == "m4");
    CHECK(*c.instance_path == fs::path("/data/b/inst.json"));
    CHECK(*c.pos_path == fs::path("/data/b/sub/pos.jsonl"));
    CHECK(c.output_dir == fs::path("/data/b/out"));
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::ibea, Algorithm::nsga2});
    CHECK(c.population_sizes == std::vector<std::size_t>{10, 20});
    CHECK(c.run_seed(2) == 102);
    CHECK(c.workers == 2);
    CHECK(c.run.generations == 7);
    CHECK(*c.run.mutation_rate == 0.1);
    CHECK(c.run.kappa == 0.05);
    CHECK(c.run.hood_reference_size == 5);
    CHECK(c.run.sampling_eps.initial_eps == 0.01);
    CHECK(c.run.sampling_eps.initial_step == 0.002);
    CHECK(c.run.hood_eps.step_cap == 0.25);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(mnklab::parse_battery_config("{"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{}"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config(R"({"landscape": {"m": 2}})"), ConfigError);
    const std::string base = R"("landscape": {"m": 2, "n": 8, "k": 1, "seed": 1})";
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "algorithms": ["moead"]})"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "population_sizes": [7]})"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "runs": 0})"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "crossover_rate": 2})"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "algorithms": []})"), ConfigError);
    CHECK_THROWS_AS(mnklab::parse_battery_config("{" + base + R"(, "name": ""})"), ConfigError);
    CHECK_THROWS_AS(mnklab::load_battery_config("/nonexistent/battery.json"), ConfigError);
    CHECK_THROWS_AS(mnklab::load_instance_file("/nonexistent/instance.json"), ConfigError);
    CHECK_THROWS_AS(mnklab::load_pos_file("/nonexistent/pos.jsonl"), ConfigError);
}

TEST_CASE("trace of a run has T+1 records")
{
    const auto l = mnklab::MnkLandscape::generate(2, 10, 1, 4);
    const auto pos = mnklab::enumerate_pos(l);
    mnklab::RunConfig rc;
    rc.population_size = 10;
    rc.generations = 0;
    CHECK(mnklab::trace_run(rc, l, pos).size() == 1);
    rc.generations = 9;
    const auto records = mnklab::trace_run(rc, l, pos);
    CHECK(records.size() == 10);
    CHECK(records.back().t == 9);
}

TEST_CASE("battery layout, pairing and determinism")
{
    const fs::path dir = scratch_dir("battery");
    auto config = mnklab::parse_battery_config(R"({
        "name": "small", "landscape": {"m": 3, "n": 10, "k": 1, "seed": 8},
        "population_sizes": [10, 20], "runs": 2, "generations": 5, "base_seed": 40
    })");
    config.output_dir = dir / "a";
    const auto l = mnklab::load_or_generate_landscape(config);
    const auto pos = mnklab::enumerate_pos(l);
    const auto first = mnklab::run_battery(config, l, pos);

    REQUIRE(first.rows.size() == 3 * 2 * 2);
    std::set<std::uint64_t> seeds;
    for (const auto& row : first.rows) {
        CHECK(row.status == "ok");
        seeds.insert(row.run_seed);
    }
    CHECK(seeds == std::set<std::uint64_t>{40, 41});
    CHECK(first.rows[0].algorithm == Algorithm::aeseh);
    CHECK(first.rows[0].population_size == 10);
    CHECK(first.rows[1].run_index == 1);
    CHECK(first.rows[2].population_size == 20);

    const fs::path out = dir / "a" / "small";
    CHECK(fs::exists(out / "aeseh_p10" / "run0.csv"));
    CHECK(fs::exists(out / "ibea_p20" / "run1.csv"));
    CHECK(line_count(slurp(out / "nsga2_p10" / "run0.csv")) == 1 + 6);
    const std::string aggregate = slurp(out / "aggregate.csv");
    CHECK(line_count(aggregate) == 1 + 12);
    CHECK(aggregate.rfind(mnklab::aggregate_csv_header, 0) == 0);
    CHECK(line_count(slurp(out / "cells.csv")) == 1 + 6);

    config.output_dir = dir / "b";
    config.workers = 3;
    mnklab::run_battery(config, l, pos);
    CHECK(slurp(dir / "b" / "small" / "aggregate.csv") == aggregate);
    CHECK(slurp(dir / "b" / "small" / "ibea_p20" / "run1.csv") == slurp(out / "ibea_p20" / "run1.csv"));

    const auto other = mnklab::MnkLandscape::generate(3, 10, 1, 9);
    CHECK_THROWS_AS(mnklab::run_battery(config, l, mnklab::enumerate_pos(other)), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("population fraction")
{
    mnklab::AggregateRow row;
    row.population_size = 200;
    row.pos_size = 16845;
    CHECK(row.population_fraction_pct() == doctest::Approx(1.1873));
    row.pos_size = 0;
    CHECK(row.population_fraction_pct() == 0.0);
}
