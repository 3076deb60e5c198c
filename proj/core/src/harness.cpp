#include "mnklab/harness.hpp"

#include "number_format.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace mnklab {

namespace fs = std::filesystem;
using nlohmann::json;

void BatteryConfig::validate() const
{
    if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("battery name must be a non-empty path component");
    }
    if (algorithms.empty()) {
        throw ConfigError("battery needs at least one algorithm");
    }
    if (population_sizes.empty()) {
        throw ConfigError("battery needs at least one population size");
    }
    if (runs == 0) {
        throw ConfigError("battery needs at least one run per cell");
    }
    if (workers == 0) {
        throw ConfigError("worker count must be >= 1");
    }
    for (std::size_t size : population_sizes) {
        RunConfig probe = run;
        probe.population_size = size;
        try {
            probe.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
}

namespace {

void read_eps(const json& node, EpsilonSettings& eps)
{
    eps.initial_eps = node.value("initial", eps.initial_eps);
    eps.initial_step = node.value("step", eps.initial_step);
    eps.step_floor = node.value("step_floor", eps.step_floor);
    eps.step_cap = node.value("step_cap", eps.step_cap);
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

} // namespace

BatteryConfig parse_battery_config(std::string_view text, const fs::path& base_dir)
{
    BatteryConfig c;
    try {
        const json doc = json::parse(text);
        c.name = doc.value("name", c.name);
        if (doc.contains("instance")) {
            c.instance_path = resolve(base_dir, doc["instance"].get<std::string>());
        } else if (doc.contains("landscape")) {
            const auto& l = doc["landscape"];
            c.landscape.m = l.at("m").get<unsigned>();
            c.landscape.n = l.at("n").get<unsigned>();
            c.landscape.k = l.at("k").get<unsigned>();
            c.landscape.seed = l.at("seed").get<std::uint64_t>();
        } else {
            throw ConfigError("battery config needs either \"instance\" or \"landscape\"");
        }
        if (doc.contains("pos")) {
            c.pos_path = resolve(base_dir, doc["pos"].get<std::string>());
        }
        if (doc.contains("algorithms")) {
            c.algorithms.clear();
            for (const auto& a : doc["algorithms"]) {
                c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
            }
        }
        if (doc.contains("population_sizes")) {
            c.population_sizes = doc["population_sizes"].get<std::vector<std::size_t>>();
        }
        c.runs = doc.value("runs", c.runs);
        c.base_seed = doc.value("base_seed", c.base_seed);
        c.workers = doc.value("workers", c.workers);
        if (doc.contains("output_dir")) {
            c.output_dir = resolve(base_dir, doc["output_dir"].get<std::string>());
        }

        RunConfig& r = c.run;
        r.generations = doc.value("generations", r.generations);
        r.crossover_rate = doc.value("crossover_rate", r.crossover_rate);
        if (doc.contains("mutation_rate") && !doc["mutation_rate"].is_null()) {
            r.mutation_rate = doc["mutation_rate"].get<double>();
        }
        r.kappa = doc.value("kappa", r.kappa);
        r.hood_reference_size = doc.value("hood_reference_size", r.hood_reference_size);
        if (doc.contains("epsilon")) {
            const auto& eps = doc["epsilon"];
            if (eps.contains("sampling")) {
                read_eps(eps["sampling"], r.sampling_eps);
            }
            if (eps.contains("hood")) {
                read_eps(eps["hood"], r.hood_eps);
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid battery config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid battery config: ") + e.what());
    }
    c.validate();
    return c;
}

BatteryConfig load_battery_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open battery config " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_battery_config(buffer.str(), path.parent_path());
}

MnkLandscape load_instance_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open instance file " + path.string());
    }
    try {
        return read_instance(in);
    } catch (const std::runtime_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ParetoOptimalSet load_pos_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open POS file " + path.string());
    }
    try {
        return read_pos(in);
    } catch (const std::runtime_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

MnkLandscape load_or_generate_landscape(const BatteryConfig& config)
{
    if (config.instance_path) {
        return load_instance_file(*config.instance_path);
    }
    try {
        return MnkLandscape::generate(config.landscape);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<IndexRecord> trace_run(const RunConfig& config, const MnkLandscape& landscape,
                                   const ParetoOptimalSet& pos)
{
    RunTracer tracer(pos, landscape.params(), config.population_size);
    run(config, landscape, [&](std::size_t t, std::span<const Individual> front) { tracer.observe(t, front); });
    return tracer.records();
}

double AggregateRow::population_fraction_pct() const
{
    return pos_size == 0 ? 0.0 : 100.0 * static_cast<double>(population_size) / static_cast<double>(pos_size);
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows)
{
    using detail::format_double;
    out << aggregate_csv_header << '\n';
    for (const AggregateRow& r : rows) {
        const RunSummary& s = r.summary;
        std::string status = r.status;
        for (char& ch : status) {
            if (ch == ',' || ch == '\n' || ch == '\r') {
                ch = ' ';
            }
        }
        out << r.battery << ',' << to_string(r.algorithm) << ',' << r.landscape.m << ',' << r.landscape.n << ','
            << r.landscape.k << ',' << r.landscape.seed << ',' << r.population_size << ',' << r.pos_size << ','
            << format_double(r.population_fraction_pct()) << ',' << r.run_index << ',' << r.run_seed << ','
            << r.generations << ',' << format_double(s.mean_tau) << ',' << format_double(s.mean_tau_minus) << ','
            << format_double(s.mean_tau_plus) << ',' << format_double(s.mean_tau_star) << ','
            << format_double(s.mean_delta) << ',' << format_double(s.mean_gamma) << ','
            << format_double(s.final_alpha) << ',' << format_double(s.final_beta) << ',' << status << '\n';
    }
}

BatteryResult run_battery(const BatteryConfig& config, const MnkLandscape& landscape, const ParetoOptimalSet& pos)
{
    config.validate();
    if (!pos.matches(landscape.params())) {
        throw ConfigError("POS file does not belong to the battery's landscape");
    }

    BatteryResult result;
    result.directory = config.output_dir / config.name;
    fs::create_directories(result.directory);

    for (Algorithm algorithm : config.algorithms) {
        for (std::size_t size : config.population_sizes) {
            for (std::size_t k = 0; k < config.runs; ++k) {
                AggregateRow row;
                row.battery = config.name;
                row.algorithm = algorithm;
                row.landscape = landscape.params();
                row.population_size = size;
                row.pos_size = pos.size();
                row.run_index = k;
                row.run_seed = config.run_seed(k);
                row.generations = config.run.generations;
                result.rows.push_back(std::move(row));
            }
        }
    }

    auto execute = [&](AggregateRow& row) {
        RunConfig rc = config.run;
        rc.algorithm = row.algorithm;
        rc.population_size = row.population_size;
        rc.seed = row.run_seed;
        const std::string cell = std::string(to_string(row.algorithm)) + "_p" + std::to_string(row.population_size);
        try {
            const auto records = trace_run(rc, landscape, pos);
            row.summary = summarize_run(records);
            const fs::path cell_dir = result.directory / cell;
            fs::create_directories(cell_dir);
            std::ofstream out(cell_dir / ("run" + std::to_string(row.run_index) + ".csv"), std::ios::binary);
            write_trace_csv(out, {std::to_string(row.run_index), std::string(to_string(row.algorithm)),
                                  landscape.m(), row.population_size},
                            records);
            if (!out) {
                throw std::runtime_error("failed to write trace for " + cell);
            }
        } catch (const std::exception& e) {
            row.summary = RunSummary{};
            row.status = std::string("error: ") + e.what();
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < result.rows.size(); job = next++) {
            execute(result.rows[job]);
        }
    };
    const unsigned threads = std::min<std::size_t>(config.workers, result.rows.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    {
        std::ofstream out(result.directory / "aggregate.csv", std::ios::binary);
        write_aggregate_csv(out, result.rows);
    }
    {
        std::ofstream out(result.directory / "cells.csv", std::ios::binary);
        out << "algorithm,pop_size,pos_size,pop_pos_pct\n";
        for (Algorithm algorithm : config.algorithms) {
            for (std::size_t size : config.population_sizes) {
                AggregateRow probe;
                probe.population_size = size;
                probe.pos_size = pos.size();
                out << to_string(algorithm) << ',' << size << ',' << pos.size() << ','
                    << detail::format_double(probe.population_fraction_pct()) << '\n';
            }
        }
    }
    return result;
}

} // namespace mnklab
