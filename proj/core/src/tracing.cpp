#include "mnklab/tracing.hpp"

#include "number_format.hpp"

#include <ostream>
#include <stdexcept>

namespace mnklab {

void ParetoArchive::update(std::span<const Individual> candidates)
{
    for (const Individual& candidate : candidates) {
        if (slot_.contains(candidate.genotype)) {
            continue;
        }
        bool dominated = false;
        for (const Individual& member : members_) {
            if (dominates(member.objectives, candidate.objectives)) {
                dominated = true;
                break;
            }
        }
        if (dominated) {
            continue;
        }
        for (std::size_t pos = members_.size(); pos-- > 0;) {
            if (dominates(candidate.objectives, members_[pos].objectives)) {
                erase_at(pos);
            }
        }
        slot_.emplace(candidate.genotype, members_.size());
        members_.push_back(candidate);
    }
}

void ParetoArchive::erase_at(std::size_t pos)
{
    slot_.erase(members_[pos].genotype);
    if (pos + 1 != members_.size()) {
        members_[pos] = std::move(members_.back());
        slot_[members_[pos].genotype] = pos;
    }
    members_.pop_back();
}

std::size_t ParetoArchive::count_in(const ParetoOptimalSet& pos) const
{
    std::size_t count = 0;
    for (const auto& member : members_) {
        count += pos.contains(member.genotype) ? 1 : 0;
    }
    return count;
}

IndexRecord compute_indices(std::size_t t, std::span<const Individual> front, const GenotypeSet& previous,
                            const GenotypeSet& history, const ParetoOptimalSet& pos,
                            const LandscapeParams& landscape, std::size_t population_size,
                            const ParetoArchive& archive)
{
    if (!pos.matches(landscape)) {
        throw std::invalid_argument("Pareto optimal set was not enumerated for this landscape");
    }
    if (population_size == 0) {
        throw std::invalid_argument("population size must be positive");
    }

    IndexRecord r;
    r.t = t;
    GenotypeSet current;
    for (const Individual& ind : front) {
        if (!current.insert(ind.genotype).second) {
            continue;
        }
        if (!pos.contains(ind.genotype)) {
            ++r.non_po;
            continue;
        }
        ++r.po;
        if (t > 0 && previous.contains(ind.genotype)) {
            ++r.po_old;
        } else {
            ++r.po_new;
        }
        if (!history.contains(ind.genotype)) {
            ++r.po_fresh;
        }
    }
    if (t > 0) {
        for (const Genotype& g : previous) {
            if (pos.contains(g) && !current.contains(g)) {
                ++r.po_dropped;
            }
        }
    }
    r.f1_size = current.size();
    r.archive_po = archive.count_in(pos);

    const auto p = static_cast<double>(population_size);
    r.tau = static_cast<double>(r.po) / p;
    r.tau_minus = static_cast<double>(r.po_old) / p;
    r.tau_plus = static_cast<double>(r.po_new) / p;
    r.tau_star = static_cast<double>(r.po_fresh) / p;
    r.delta = static_cast<double>(r.po_dropped) / p;
    r.gamma = static_cast<double>(r.non_po) / p;
    r.alpha = pos.size() == 0 ? 0.0 : static_cast<double>(r.archive_po) / static_cast<double>(pos.size());
    r.beta = static_cast<double>(r.archive_po) / p;
    return r;
}

RunTracer::RunTracer(const ParetoOptimalSet& pos, const LandscapeParams& landscape, std::size_t population_size)
    : pos_(&pos), landscape_(landscape), population_size_(population_size)
{
    if (!pos.matches(landscape)) {
        throw std::invalid_argument("Pareto optimal set was not enumerated for this landscape");
    }
}

const IndexRecord& RunTracer::observe(std::size_t t, std::span<const Individual> front)
{
    if (t != records_.size()) {
        throw std::logic_error("generations must be observed in order starting at 0");
    }
    archive_.update(front);
    history_.insert(previous_.begin(), previous_.end());
    records_.push_back(
        compute_indices(t, front, previous_, history_, *pos_, landscape_, population_size_, archive_));

    previous_.clear();
    for (const Individual& ind : front) {
        previous_.insert(ind.genotype);
    }
    return records_.back();
}

RunSummary summarize_run(std::span<const IndexRecord> records)
{
    if (records.empty()) {
        throw std::invalid_argument("cannot summarize a run without records");
    }
    RunSummary s;
    for (const IndexRecord& r : records) {
        s.mean_tau += r.tau;
        s.mean_tau_minus += r.tau_minus;
        s.mean_tau_plus += r.tau_plus;
        s.mean_tau_star += r.tau_star;
        s.mean_delta += r.delta;
        s.mean_gamma += r.gamma;
    }
    const auto count = static_cast<double>(records.size());
    s.generations = records.size() - 1;
    s.mean_tau /= count;
    s.mean_tau_minus /= count;
    s.mean_tau_plus /= count;
    s.mean_tau_star /= count;
    s.mean_delta /= count;
    s.mean_gamma /= count;
    s.final_alpha = records.back().alpha;
    s.final_beta = records.back().beta;
    return s;
}

void write_trace_csv(std::ostream& out, const TraceLabels& labels, std::span<const IndexRecord> records)
{
    using detail::format_double;
    out << trace_csv_header << '\n';
    for (const IndexRecord& r : records) {
        out << labels.run_id << ',' << labels.algorithm << ',' << labels.m << ',' << labels.population_size
            << ',' << r.t << ',' << r.f1_size << ',' << format_double(r.tau) << ','
            << format_double(r.tau_minus) << ',' << format_double(r.tau_plus) << ','
            << format_double(r.tau_star) << ',' << format_double(r.delta) << ',' << format_double(r.gamma)
            << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << '\n';
    }
}

} // namespace mnklab
