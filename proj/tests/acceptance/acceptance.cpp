// Acceptance gate: one PASS/FAIL line per criterion. Every threshold and
// every seed used here is fixed in this file.
#include "mnklab/harness.hpp"
#include "mnklab/ibea.hpp"
#include "mnklab/nsga2.hpp"
#include "mnklab/pareto.hpp"
#include "mnklab/tracing.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using mnklab::Algorithm;
using mnklab::ObjectiveVector;
using mnklab::Rng;

namespace {

// ---- pinned constants -------------------------------------------------------

constexpr double oracle_time_limit_s = 10.0;
constexpr double ibea_fitness_rel_tol = 1e-9;
constexpr std::size_t algebra_min_runs = 90;

constexpr std::uint64_t qualitative_instance_seed = 6020;
constexpr std::uint64_t qualitative_base_seed = 1;
constexpr std::size_t qualitative_runs = 30;
constexpr std::size_t qualitative_pop = 200;
constexpr std::size_t qualitative_generations = 100;
constexpr double alpha_ratio_lo = 1.3;
constexpr double alpha_ratio_hi = 3.0;
constexpr double aeseh_beta_lo = 8.0;
constexpr double aeseh_beta_hi = 16.0;
constexpr double ibea_beta_lo = 4.0;
constexpr double ibea_beta_hi = 9.0;

constexpr std::uint64_t crossover_instance_seeds[] = {101, 102, 103};
constexpr std::size_t crossover_runs = 30;
constexpr std::size_t crossover_small_pop = 50;
constexpr std::size_t crossover_large_pop = 200;
constexpr std::size_t crossover_min_flips = 2;

constexpr std::uint64_t growth_seeds[] = {1, 2, 3, 4, 5};
constexpr double growth_min_ratio_6_over_3 = 10.0;

// ---- helpers ----------------------------------------------------------------

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail)
{
    std::cout << (pass ? "PASS " : "FAIL ") << name << " | " << detail << std::endl;
    failures += pass ? 0 : 1;
}

std::string fmt(double v, int precision = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string sci(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t count, std::size_t m)
{
    std::vector<ObjectiveVector> out(count, ObjectiveVector(m));
    for (auto& p : out) {
        for (auto& v : p) {
            v = rng.uniform();
        }
    }
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Checks every record invariant on count form, plus the stored doubles.
// Returns an empty string or the first violation.
std::string algebra_violation(const std::vector<mnklab::IndexRecord>& rs, std::size_t pop, std::size_t pos_size)
{
    const auto p = static_cast<double>(pop);
    for (std::size_t t = 0; t < rs.size(); ++t) {
        const auto& r = rs[t];
        const std::string at = " at t=" + std::to_string(t);
        if (r.t != t) {
            return "record order" + at;
        }
        if (r.po != r.po_old + r.po_new) {
            return "tau != tau_minus + tau_plus" + at;
        }
        if (t > 0 && rs[t - 1].po != r.po_old + r.po_dropped) {
            return "tau(t-1) != tau_minus + delta" + at;
        }
        if (t == 0 && (r.po_dropped != 0 || r.po_old != 0)) {
            return "nonzero delta or tau_minus" + at;
        }
        if (r.po_fresh > r.po_new) {
            return "tau_star > tau_plus" + at;
        }
        if (r.po + r.non_po != r.f1_size) {
            return "(tau + gamma)|P| != |F1|" + at;
        }
        if (t > 0 && r.archive_po < rs[t - 1].archive_po) {
            return "alpha decreased" + at;
        }
        if (r.archive_po > pos_size) {
            return "alpha > 1" + at;
        }
        const double beta_from_alpha = r.alpha * static_cast<double>(pos_size) / p;
        if (std::abs(r.beta - beta_from_alpha) > 1e-12 * std::max(1.0, r.beta)) {
            return "beta != alpha |POS| / |P|" + at;
        }
        if (r.tau != static_cast<double>(r.po) / p || r.tau_minus != static_cast<double>(r.po_old) / p ||
            r.tau_plus != static_cast<double>(r.po_new) / p || r.tau_star != static_cast<double>(r.po_fresh) / p ||
            r.delta != static_cast<double>(r.po_dropped) / p || r.gamma != static_cast<double>(r.non_po) / p ||
            r.beta != static_cast<double>(r.archive_po) / p ||
            r.alpha != static_cast<double>(r.archive_po) / static_cast<double>(pos_size)) {
            return "normalized index differs from its count" + at;
        }
    }
    return {};
}

struct RunOutcome {
    mnklab::RunSummary summary;
    bool algebra_ok = true;
    std::string violation;
};

// One traced run with the algebra checked on its full record list.
RunOutcome traced_run(const mnklab::RunConfig& rc, const mnklab::MnkLandscape& l, const mnklab::ParetoOptimalSet& pos,
                      std::size_t& algebra_runs, std::string& first_violation)
{
    const auto records = mnklab::trace_run(rc, l, pos);
    RunOutcome out;
    out.summary = mnklab::summarize_run(records);
    out.violation = algebra_violation(records, rc.population_size, pos.size());
    out.algebra_ok = out.violation.empty();
    ++algebra_runs;
    if (!out.algebra_ok && first_violation.empty()) {
        first_violation = std::string(mnklab::to_string(rc.algorithm)) + " seed " + std::to_string(rc.seed) + ": " +
                          out.violation;
    }
    return out;
}

// ---- criteria ---------------------------------------------------------------

void enumeration_oracle()
{
    const auto start = Clock::now();
    const unsigned ns[] = {8, 10, 12};
    const unsigned ms[] = {2, 3, 4};
    Rng rng(20240601);
    int matched = 0;
    for (int i = 0; i < 10; ++i) {
        const unsigned n = ns[i % 3];
        const unsigned m = ms[(i / 3) % 3];
        const unsigned k = static_cast<unsigned>(i % 2);
        const auto l = mnklab::MnkLandscape::generate(m, n, k, rng.next());
        const auto pos = mnklab::enumerate_pos(l);
        std::set<std::uint64_t> got;
        for (const auto& member : pos.members()) {
            got.insert(member.genotype.bits());
        }
        matched += got == oracle::brute_force_pos(l) ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    report(matched == 10 && elapsed < oracle_time_limit_s, "enumeration-oracle",
           std::to_string(matched) + "/10 instances equal all-pairs maxima, " + fmt(elapsed, 2) + " s (limit " +
               fmt(oracle_time_limit_s, 0) + " s)");
}

void sorting_selection_oracle()
{
    const auto start = Clock::now();
    Rng data(777);
    int sort_ok = 0;
    int nsga_ok = 0;
    int nsga_tied = 0;
    int ibea_ok = 0;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto merged = random_points(data, 40, 4);

        sort_ok += mnklab::nondominated_sort(merged).fronts == oracle::peel_fronts(merged) ? 1 : 0;

        Rng rng(static_cast<std::uint64_t>(trial));
        const auto kept = mnklab::nsga2_survival(merged, 20, rng);
        const auto expect = oracle::nsga2_expectation(merged, 20);
        std::size_t from_tied = 0;
        bool consistent = kept.size() == 20;
        for (auto i : kept) {
            if (expect.tied.contains(i)) {
                ++from_tied;
            } else {
                consistent = consistent && expect.forced.contains(i);
            }
        }
        consistent = consistent && from_tied == expect.tied_needed;
        nsga_tied += expect.tied.size() > expect.tied_needed ? 1 : 0;
        nsga_ok += consistent ? 1 : 0;

        const auto normalized = mnklab::normalize_objectives(merged);
        auto hook = [&](std::span<const std::size_t> alive, std::span<const mnklab::IndicatorFitness> fitness) {
            const auto want = oracle::ibea_log_fitness(normalized, {alive.begin(), alive.end()}, 0.001);
            for (std::size_t i = 0; i < alive.size(); ++i) {
                // relative error of -exp(L) is |exp(dL) - 1|
                const double rel = std::abs(std::expm1(fitness[i].log_magnitude - static_cast<double>(want[i])));
                worst_rel = std::max(worst_rel, rel);
            }
        };
        const auto ibea = mnklab::ibea_survival(merged, 20, 0.001, hook);
        ibea_ok += ibea.survivors == oracle::ibea_recompute_survivors(normalized, 20, 0.001) ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    const bool pass = sort_ok == 50 && nsga_ok == 50 && ibea_ok == 50 && worst_rel <= ibea_fitness_rel_tol &&
                      elapsed < oracle_time_limit_s;
    report(pass, "sorting-selection-oracle",
           "sort " + std::to_string(sort_ok) + "/50, nsga2 " + std::to_string(nsga_ok) + "/50 (" +
               std::to_string(nsga_tied) + " with a random tie cut, checked as forced set + tied subset), ibea " +
               std::to_string(ibea_ok) + "/50, worst fitness rel err " + sci(worst_rel) + " (tol " + sci(ibea_fitness_rel_tol) + "), " +
               fmt(elapsed, 2) + " s");
}

void archive_consistency()
{
    Rng rng(31337);
    int matched = 0;
    for (int stream = 0; stream < 10; ++stream) {
        mnklab::ParetoArchive archive;
        std::vector<mnklab::Individual> everything;
        for (int step = 0; step < 10; ++step) {
            std::vector<mnklab::Individual> batch;
            for (int i = 0; i < 20; ++i) {
                // 200 points per stream, repeated genotypes carry their own vector
                const std::uint64_t g = rng.below(150);
                Rng value_rng(g ^ (static_cast<std::uint64_t>(stream) << 32));
                ObjectiveVector v(3);
                for (auto& x : v) {
                    x = static_cast<double>(value_rng.below(10)) / 10.0;
                }
                batch.push_back({mnklab::Genotype(g, 8), v});
            }
            archive.update(batch);
            everything.insert(everything.end(), batch.begin(), batch.end());
        }
        std::set<std::uint64_t> got;
        for (const auto& m : archive.members()) {
            got.insert(m.genotype.bits());
        }
        matched += got == oracle::batch_archive(everything) ? 1 : 0;
    }
    report(matched == 10, "archive-consistency", std::to_string(matched) + "/10 streams equal the batch filter");
}

void battery_determinism(const fs::path& workdir)
{
    auto config = mnklab::parse_battery_config(R"({
        "name": "determinism", "landscape": {"m": 3, "n": 14, "k": 1, "seed": 5},
        "population_sizes": [20, 40], "runs": 3, "generations": 20, "base_seed": 9
    })");
    const auto l = mnklab::load_or_generate_landscape(config);
    const auto pos = mnklab::enumerate_pos(l);
    std::vector<std::string> outputs;
    for (unsigned workers : {1U, 1U, 4U, 4U}) {
        config.workers = workers;
        config.output_dir = workdir / ("determinism_" + std::to_string(outputs.size()));
        fs::remove_all(config.output_dir);
        mnklab::run_battery(config, l, pos);
        outputs.push_back(slurp(config.output_dir / config.name / "aggregate.csv"));
    }
    const bool same = std::all_of(outputs.begin(), outputs.end(), [&](const auto& s) { return s == outputs[0]; });
    report(same && !outputs[0].empty(), "battery-determinism",
           "aggregate.csv byte-identical over executions with workers 1,1,4,4 (" + std::to_string(outputs[0].size()) +
               " bytes)");
}

struct QualitativeResult {
    std::size_t algebra_runs = 0;
    std::string first_violation;
};

void qualitative(QualitativeResult& algebra)
{
    const auto start = Clock::now();
    const auto l = mnklab::MnkLandscape::generate(6, 20, 1, qualitative_instance_seed);
    const auto pos = mnklab::enumerate_pos(l);
    std::map<Algorithm, std::vector<double>> alpha, tau, tau_star, beta;
    for (Algorithm alg : {Algorithm::aeseh, Algorithm::nsga2, Algorithm::ibea}) {
        for (std::size_t k = 0; k < qualitative_runs; ++k) {
            mnklab::RunConfig rc;
            rc.algorithm = alg;
            rc.population_size = qualitative_pop;
            rc.generations = qualitative_generations;
            rc.seed = qualitative_base_seed + k;
            const auto out = traced_run(rc, l, pos, algebra.algebra_runs, algebra.first_violation);
            alpha[alg].push_back(out.summary.final_alpha);
            tau[alg].push_back(out.summary.mean_tau);
            tau_star[alg].push_back(out.summary.mean_tau_star);
            beta[alg].push_back(out.summary.final_beta);
        }
    }
    auto med = [](auto& table, Algorithm a) { return median(table[a]); };
    const double a_e = med(alpha, Algorithm::aeseh);
    const double a_n = med(alpha, Algorithm::nsga2);
    const double a_i = med(alpha, Algorithm::ibea);
    const double ratio = a_i > 0.0 ? a_e / a_i : INFINITY;
    const double t_e = med(tau, Algorithm::aeseh);
    const double t_n = med(tau, Algorithm::nsga2);
    const double t_i = med(tau, Algorithm::ibea);
    const double s_e = med(tau_star, Algorithm::aeseh);
    const double s_n = med(tau_star, Algorithm::nsga2);
    const double s_i = med(tau_star, Algorithm::ibea);
    const double b_e = med(beta, Algorithm::aeseh);
    const double b_i = med(beta, Algorithm::ibea);
    const std::string header = "m=6 n=20 k=1 seed " + std::to_string(qualitative_instance_seed) + ", |POS|=" +
                               std::to_string(pos.size()) + ", |P|=200, T=100, R=30: ";

    report(a_e > a_i && a_e > a_n && ratio >= alpha_ratio_lo && ratio <= alpha_ratio_hi, "qualitative-alpha",
           header + "median alpha(T) aeseh " + fmt(a_e, 4) + ", ibea " + fmt(a_i, 4) + ", nsga2 " + fmt(a_n, 4) +
               ", aeseh/ibea " + fmt(ratio, 2) + " (need [" + fmt(alpha_ratio_lo, 1) + ", " + fmt(alpha_ratio_hi, 1) +
               "])");
    report(t_i > t_e && t_e > t_n, "qualitative-tau",
           "median mean tau ibea " + fmt(t_i) + " > aeseh " + fmt(t_e) + " > nsga2 " + fmt(t_n));
    report(s_e > s_i && s_e > s_n, "qualitative-tau-star",
           "median mean tau* aeseh " + fmt(s_e, 4) + ", ibea " + fmt(s_i, 4) + ", nsga2 " + fmt(s_n, 4));
    report(b_e >= aeseh_beta_lo && b_e <= aeseh_beta_hi && b_i >= ibea_beta_lo && b_i <= ibea_beta_hi,
           "qualitative-beta",
           "median beta(T) aeseh " + fmt(b_e, 2) + " (need [8, 16]), ibea " + fmt(b_i, 2) + " (need [4, 9]); " +
               fmt(seconds_since(start), 0) + " s");
}

void crossover_flip(QualitativeResult& algebra)
{
    std::size_t flips = 0;
    std::string detail;
    for (std::uint64_t seed : crossover_instance_seeds) {
        const auto l = mnklab::MnkLandscape::generate(4, 20, 1, seed);
        const auto pos = mnklab::enumerate_pos(l);
        double diff[2] = {0.0, 0.0}; // median alpha(T): ibea - nsga2
        int slot = 0;
        for (std::size_t pop : {crossover_small_pop, crossover_large_pop}) {
            std::map<Algorithm, std::vector<double>> alpha;
            for (Algorithm alg : {Algorithm::nsga2, Algorithm::ibea}) {
                for (std::size_t k = 0; k < crossover_runs; ++k) {
                    mnklab::RunConfig rc;
                    rc.algorithm = alg;
                    rc.population_size = pop;
                    rc.generations = 100;
                    rc.seed = 1 + k;
                    alpha[alg].push_back(
                        traced_run(rc, l, pos, algebra.algebra_runs, algebra.first_violation).summary.final_alpha);
                }
            }
            diff[slot++] = median(alpha[Algorithm::ibea]) - median(alpha[Algorithm::nsga2]);
        }
        const bool flipped = diff[0] > 0.0 && diff[1] < 0.0;
        flips += flipped ? 1 : 0;
        detail += "seed " + std::to_string(seed) + " (|POS|=" + std::to_string(pos.size()) + "): ibea-nsga2 " +
                  fmt(diff[0], 4) + " at 50, " + fmt(diff[1], 4) + " at 200" + (flipped ? " flip; " : " no flip; ");
    }
    report(flips >= crossover_min_flips, "small-population-crossover",
           detail + std::to_string(flips) + "/3 flip (need >= " + std::to_string(crossover_min_flips) + ")");
}

void pos_growth()
{
    std::vector<double> medians;
    std::string detail;
    for (unsigned m = 2; m <= 6; ++m) {
        std::vector<double> sizes;
        for (std::uint64_t seed : growth_seeds) {
            sizes.push_back(static_cast<double>(mnklab::enumerate_pos(mnklab::MnkLandscape::generate(m, 20, 1, seed)).size()));
        }
        medians.push_back(median(sizes));
        detail += "M=" + std::to_string(m) + ":" + fmt(medians.back(), 0) + " ";
    }
    bool monotone = true;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        monotone = monotone && medians[i] >= medians[i - 1];
    }
    const double ratio = medians[4] / medians[1];
    report(monotone && ratio >= growth_min_ratio_6_over_3, "pos-growth",
           "median |POS| " + detail + "; M6/M3 = " + fmt(ratio, 1) + " (need >= 10)");
}

} // namespace

int main(int argc, char** argv)
{
    fs::path workdir = fs::temp_directory_path() / "mnklab_acceptance";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--workdir") == 0 && i + 1 < argc) {
            workdir = argv[++i];
        }
    }
    fs::create_directories(workdir);

    enumeration_oracle();
    sorting_selection_oracle();

    QualitativeResult algebra;
    qualitative(algebra);
    crossover_flip(algebra);
    report(algebra.algebra_runs >= algebra_min_runs && algebra.first_violation.empty(), "index-algebra",
           std::to_string(algebra.algebra_runs) + " full traced runs, " +
               (algebra.first_violation.empty() ? std::string("no violation") : algebra.first_violation));

    archive_consistency();
    battery_determinism(workdir);
    pos_growth();

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
