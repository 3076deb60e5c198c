#ifndef MNKLAB_TRACING_HPP
#define MNKLAB_TRACING_HPP

#include "mnklab/engine.hpp"
#include "mnklab/pareto.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mnklab {

using GenotypeSet = std::unordered_set<Genotype>;

/// Accumulated non-dominated set of every front seen so far, one entry per
/// genotype. No member is strictly dominated by another.
class ParetoArchive {
public:
    /// Adds the candidates one by one: a known genotype or one dominated by a
    /// member is skipped; otherwise the members it dominates are removed and
    /// it is inserted. The result equals a batch non-dominated filter over the
    /// deduplicated union of everything ever offered.
    void update(std::span<const Individual> candidates);

    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<Individual>& members() const noexcept { return members_; }
    bool contains(const Genotype& g) const { return slot_.contains(g); }
    std::size_t count_in(const ParetoOptimalSet& pos) const;

private:
    void erase_at(std::size_t pos);

    std::vector<Individual> members_;
    std::unordered_map<Genotype, std::size_t> slot_;
};

/// One generation of search-assessment indices. Counts are exact; the
/// normalized indices are count / |P| (alpha: count / |POS|).
struct IndexRecord {
    std::size_t t = 0;
    std::size_t f1_size = 0;
    std::size_t po = 0;         // F1(t) in POS
    std::size_t po_old = 0;     // ... and in F1(t-1)
    std::size_t po_new = 0;     // ... and not in F1(t-1)
    std::size_t po_fresh = 0;   // ... and in no earlier F1
    std::size_t po_dropped = 0; // F1(t-1) in POS but not in F1(t)
    std::size_t non_po = 0;     // F1(t) not in POS
    std::size_t archive_po = 0; // A(t) in POS

    double tau = 0.0;
    double tau_minus = 0.0;
    double tau_plus = 0.0;
    double tau_star = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Indices for generation t. `previous` is F1(t-1) (ignored when t == 0,
/// where delta is 0 and nothing counts as old), `history` holds every
/// genotype of F1(0..t-1). Membership is by genotype. Throws
/// std::invalid_argument if `pos` was not enumerated for `landscape`.
IndexRecord compute_indices(std::size_t t, std::span<const Individual> front, const GenotypeSet& previous,
                            const GenotypeSet& history, const ParetoOptimalSet& pos,
                            const LandscapeParams& landscape, std::size_t population_size,
                            const ParetoArchive& archive);

/// Feeds each generation's front through the archive and the indices.
class RunTracer {
public:
    RunTracer(const ParetoOptimalSet& pos, const LandscapeParams& landscape, std::size_t population_size);

    /// Must be called for t = 0, 1, 2, ... in order.
    const IndexRecord& observe(std::size_t t, std::span<const Individual> front);

    const std::vector<IndexRecord>& records() const noexcept { return records_; }
    const ParetoArchive& archive() const noexcept { return archive_; }

private:
    const ParetoOptimalSet* pos_;
    LandscapeParams landscape_;
    std::size_t population_size_;
    ParetoArchive archive_;
    GenotypeSet previous_;
    GenotypeSet history_;
    std::vector<IndexRecord> records_;
};

struct RunSummary {
    std::size_t generations = 0; // T; means are over T + 1 records
    double mean_tau = 0.0;
    double mean_tau_minus = 0.0;
    double mean_tau_plus = 0.0;
    double mean_tau_star = 0.0;
    double mean_delta = 0.0;
    double mean_gamma = 0.0;
    double final_alpha = 0.0;
    double final_beta = 0.0;
};

/// Arithmetic means over all records; alpha and beta from the last one.
/// Throws std::invalid_argument on an empty list.
RunSummary summarize_run(std::span<const IndexRecord> records);

/// Labels written in front of every trace row.
struct TraceLabels {
    std::string run_id;
    std::string algorithm;
    unsigned m = 0;
    std::size_t population_size = 0;
};

inline constexpr const char* trace_csv_header =
    "run_id,algorithm,m,pop_size,t,f1_size,tau,tau_minus,tau_plus,tau_star,delta,gamma,alpha,beta";

/// Header plus one row per record.
void write_trace_csv(std::ostream& out, const TraceLabels& labels, std::span<const IndexRecord> records);

} // namespace mnklab

#endif
