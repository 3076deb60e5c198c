#ifndef MNKLAB_HARNESS_HPP
#define MNKLAB_HARNESS_HPP

#include "mnklab/engine.hpp"
#include "mnklab/pareto.hpp"
#include "mnklab/tracing.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mnklab {

/// Bad user input (config file, flags, mismatched instance/POS). The CLI maps
/// it to exit code 1; every other exception is a runtime error (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment grid on one landscape. Run k of every cell uses seed
/// base_seed + k, so algorithms and population sizes are compared on paired
/// seeds.
struct BatteryConfig {
    std::string name = "battery";
    LandscapeParams landscape{};
    std::optional<std::filesystem::path> instance_path;
    std::optional<std::filesystem::path> pos_path;
    std::vector<Algorithm> algorithms{Algorithm::aeseh, Algorithm::nsga2, Algorithm::ibea};
    std::vector<std::size_t> population_sizes{50, 100, 200};
    std::size_t runs = 30;
    std::uint64_t base_seed = 1;
    /// Shared run parameters; algorithm, population_size and seed are set per run.
    RunConfig run;
    unsigned workers = 1;
    std::filesystem::path output_dir = "results";

    std::uint64_t run_seed(std::size_t run_index) const noexcept { return base_seed + run_index; }
    void validate() const;
};

/// Parses a battery config document (JSON). Relative paths are resolved
/// against `base_dir`. Throws ConfigError.
BatteryConfig parse_battery_config(std::string_view text, const std::filesystem::path& base_dir = {});
BatteryConfig load_battery_config(const std::filesystem::path& path);

/// Loads the landscape named by the config: the instance file if given,
/// otherwise regenerated from config.landscape.
MnkLandscape load_or_generate_landscape(const BatteryConfig& config);

MnkLandscape load_instance_file(const std::filesystem::path& path);
ParetoOptimalSet load_pos_file(const std::filesystem::path& path);

/// Runs one configuration with a tracer attached and returns its T + 1 records.
std::vector<IndexRecord> trace_run(const RunConfig& config, const MnkLandscape& landscape,
                                   const ParetoOptimalSet& pos);

struct AggregateRow {
    std::string battery;
    Algorithm algorithm = Algorithm::aeseh;
    LandscapeParams landscape{};
    std::size_t population_size = 0;
    std::size_t pos_size = 0;
    std::size_t run_index = 0;
    std::uint64_t run_seed = 0;
    std::size_t generations = 0;
    RunSummary summary;
    std::string status = "ok";

    /// |P| / |POS| in percent.
    double population_fraction_pct() const;
};

inline constexpr const char* aggregate_csv_header =
    "battery,algorithm,m,n,k,instance_seed,pop_size,pos_size,pop_pos_pct,run_id,run_seed,generations,"
    "mean_tau,mean_tau_minus,mean_tau_plus,mean_tau_star,mean_delta,mean_gamma,alpha_T,beta_T,status";

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);

struct BatteryResult {
    std::filesystem::path directory;
    std::vector<AggregateRow> rows; // config order: algorithm, then population size, then run
};

/// Executes every (algorithm, population size, run) job on up to
/// config.workers threads and writes
///   <output_dir>/<name>/<algorithm>_p<size>/run<k>.csv
///   <output_dir>/<name>/aggregate.csv
///   <output_dir>/<name>/cells.csv
/// A failing run is recorded in its row's status and the battery continues.
/// Output bytes depend only on the config, not on the worker count.
BatteryResult run_battery(const BatteryConfig& config, const MnkLandscape& landscape, const ParetoOptimalSet& pos);

} // namespace mnklab

#endif
