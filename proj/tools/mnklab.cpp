// mnklab: generate MNK-landscape instances, enumerate their Pareto optimal
// sets, and run traced experiments.
//
// Exit codes: 0 ok, 1 configuration error, 2 runtime error.

#include "mnklab/engine.hpp"
#include "mnklab/harness.hpp"
#include "mnklab/landscape.hpp"
#include "mnklab/pareto.hpp"
#include "mnklab/tracing.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace mnklab;

namespace {

constexpr int exit_config_error = 1;
constexpr int exit_runtime_error = 2;

template <class Writer>
void write_file(const fs::path& path, Writer&& writer)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    writer(out);
    if (!out) {
        throw std::runtime_error("error while writing " + path.string());
    }
}

struct GenerateOptions {
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::uint64_t seed = 0;
    fs::path out;
};

int cmd_generate(const GenerateOptions& o)
{
    MnkLandscape landscape = [&] {
        try {
            return MnkLandscape::generate(o.m, o.n, o.k, o.seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    write_file(o.out, [&](std::ostream& out) { write_instance(out, landscape); });
    std::cout << "wrote " << o.out.string() << " (m=" << o.m << ", n=" << o.n << ", k=" << o.k
              << "); genotype space 2^" << o.n;
    if (o.n < 64) {
        std::cout << " = " << (std::uint64_t{1} << o.n);
    }
    std::cout << '\n';
    return 0;
}

struct EnumerateOptions {
    fs::path instance;
    fs::path out;
    bool with_fronts = false;
};

int cmd_enumerate(const EnumerateOptions& o)
{
    const MnkLandscape landscape = load_instance_file(o.instance);
    if (landscape.n() > 30) {
        throw ConfigError("enumeration is limited to n <= 30");
    }
    if (landscape.n() > 20) {
        std::cerr << "warning: enumerating 2^" << landscape.n() << " genotypes\n";
    }
    ParetoOptimalSet pos = enumerate_pos(landscape);
    if (o.with_fronts) {
        if (landscape.n() >= 20) {
            std::cerr << "warning: counting fronts over 2^" << landscape.n()
                      << " genotypes can take several minutes\n";
        }
        pos.set_fronts(count_fronts(landscape));
    }
    write_file(o.out, [&](std::ostream& out) { write_pos(out, pos); });
    std::cout << "pos_size " << pos.size();
    if (pos.fronts()) {
        std::cout << " fronts " << *pos.fronts();
    }
    std::cout << '\n';
    return 0;
}

struct RunOptions {
    fs::path instance;
    fs::path pos;
    std::string algorithm = "aeseh";
    std::size_t pop_size = 100;
    std::size_t generations = 100;
    std::uint64_t seed = 1;
    fs::path out_dir = ".";
    double crossover_rate = 1.0;
    double mutation_rate = -1.0;
    double kappa = 0.001;
    std::size_t hood_reference_size = 20;
};

int cmd_run(const RunOptions& o)
{
    const MnkLandscape landscape = load_instance_file(o.instance);
    const ParetoOptimalSet pos = load_pos_file(o.pos);
    if (!pos.matches(landscape.params())) {
        throw ConfigError("POS file header does not match the instance (m, n, k, instance_seed)");
    }

    RunConfig config;
    try {
        config.algorithm = parse_algorithm(o.algorithm);
        config.population_size = o.pop_size;
        config.generations = o.generations;
        config.seed = o.seed;
        config.crossover_rate = o.crossover_rate;
        if (o.mutation_rate >= 0.0) {
            config.mutation_rate = o.mutation_rate;
        }
        config.kappa = o.kappa;
        config.hood_reference_size = o.hood_reference_size;
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const auto records = trace_run(config, landscape, pos);
    const std::string stem =
        std::string(to_string(config.algorithm)) + "_p" + std::to_string(o.pop_size) + "_s" + std::to_string(o.seed);
    write_file(o.out_dir / (stem + ".csv"), [&](std::ostream& out) {
        write_trace_csv(out, {"0", std::string(to_string(config.algorithm)), landscape.m(), o.pop_size}, records);
    });

    AggregateRow row;
    row.battery = "single";
    row.algorithm = config.algorithm;
    row.landscape = landscape.params();
    row.population_size = o.pop_size;
    row.pos_size = pos.size();
    row.run_seed = o.seed;
    row.generations = o.generations;
    row.summary = summarize_run(records);
    write_file(o.out_dir / (stem + "_summary.csv"),
               [&](std::ostream& out) { write_aggregate_csv(out, std::span<const AggregateRow>(&row, 1)); });
    std::cout << "alpha(T) " << row.summary.final_alpha << " beta(T) " << row.summary.final_beta << '\n';
    return 0;
}

struct BatteryOptions {
    fs::path config;
    unsigned workers = 0;
    fs::path out_dir;
    std::size_t runs = 0;
    std::size_t generations = 0;
    std::uint64_t base_seed = 0;
    bool has_base_seed = false;
};

int cmd_battery(const BatteryOptions& o)
{
    BatteryConfig config = load_battery_config(o.config);
    if (o.workers > 0) {
        config.workers = o.workers;
    }
    if (!o.out_dir.empty()) {
        config.output_dir = o.out_dir;
    }
    if (o.runs > 0) {
        config.runs = o.runs;
    }
    if (o.generations > 0) {
        config.run.generations = o.generations;
    }
    if (o.has_base_seed) {
        config.base_seed = o.base_seed;
    }
    config.validate();

    const MnkLandscape landscape = load_or_generate_landscape(config);
    const fs::path dir = config.output_dir / config.name;
    ParetoOptimalSet pos;
    if (config.pos_path) {
        pos = load_pos_file(*config.pos_path);
        if (!pos.matches(landscape.params())) {
            throw ConfigError("POS file header does not match the battery's landscape");
        }
    } else {
        pos = enumerate_pos(landscape);
    }
    write_file(dir / "instance.json", [&](std::ostream& out) { write_instance(out, landscape); });
    write_file(dir / "pos.jsonl", [&](std::ostream& out) { write_pos(out, pos); });

    const BatteryResult result = run_battery(config, landscape, pos);
    std::size_t failed = 0;
    for (const auto& row : result.rows) {
        failed += row.status == "ok" ? 0 : 1;
    }
    std::cout << "battery " << config.name << ": " << result.rows.size() << " runs, " << failed << " failed, |POS| "
              << pos.size() << ", results in " << result.directory.string() << '\n';
    return failed == 0 ? 0 : exit_runtime_error;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MNK-landscape many-objective optimization lab"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Generate an MNK-landscape instance file");
    generate->add_option("-m,--objectives", gen.m, "Number of objectives")->required();
    generate->add_option("-n,--bits", gen.n, "Number of bits")->required();
    generate->add_option("-k,--epistasis", gen.k, "Epistatic bits per bit")->required();
    generate->add_option("-s,--seed", gen.seed, "Instance seed")->required();
    generate->add_option("-o,--out", gen.out, "Output instance file")->required();

    EnumerateOptions en;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate the Pareto optimal set of an instance");
    enumerate->add_option("instance", en.instance, "Instance file")->required();
    enumerate->add_option("-o,--out", en.out, "Output POS file (JSON lines)")->required();
    enumerate->add_flag("--with-fronts", en.with_fronts, "Also count the non-dominated fronts of the whole space");

    RunOptions ro;
    auto* run_cmd = app.add_subcommand("run", "Run one traced optimization");
    run_cmd->add_option("instance", ro.instance, "Instance file")->required();
    run_cmd->add_option("pos", ro.pos, "POS file of the instance")->required();
    run_cmd->add_option("-a,--algorithm", ro.algorithm, "nsga2 | ibea | aeseh")->capture_default_str();
    run_cmd->add_option("-p,--pop-size", ro.pop_size, "Population size (even)")->capture_default_str();
    run_cmd->add_option("-T,--generations", ro.generations, "Generations")->capture_default_str();
    run_cmd->add_option("-s,--seed", ro.seed, "Run seed")->capture_default_str();
    run_cmd->add_option("-o,--out-dir", ro.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--crossover-rate", ro.crossover_rate, "Two-point crossover rate")->capture_default_str();
    run_cmd->add_option("--mutation-rate", ro.mutation_rate, "Bit-flip rate (default 1/n)");
    run_cmd->add_option("--kappa", ro.kappa, "IBEA scaling factor")->capture_default_str();
    run_cmd->add_option("--hood-size", ro.hood_reference_size, "AeSeH reference hood size")->capture_default_str();

    BatteryOptions bo;
    auto* battery = app.add_subcommand("battery", "Run an experiment battery from a config file");
    battery->add_option("config", bo.config, "Battery config (JSON)")->required();
    battery->add_option("--workers", bo.workers, "Concurrent runs (overrides config)");
    battery->add_option("-o,--out-dir", bo.out_dir, "Output root (overrides config)");
    battery->add_option("--runs", bo.runs, "Runs per cell (overrides config)");
    battery->add_option("-T,--generations", bo.generations, "Generations (overrides config)");
    auto* seed_opt = battery->add_option("--base-seed", bo.base_seed, "Base run seed (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }
    bo.has_base_seed = seed_opt->count() > 0;

    try {
        if (*generate) {
            return cmd_generate(gen);
        }
        if (*enumerate) {
            return cmd_enumerate(en);
        }
        if (*run_cmd) {
            return cmd_run(ro);
        }
        if (*battery) {
            return cmd_battery(bo);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime_error;
    }
    return 0;
}
