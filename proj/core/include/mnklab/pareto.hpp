#ifndef MNKLAB_PARETO_HPP
#define MNKLAB_PARETO_HPP

#include "mnklab/genotype.hpp"
#include "mnklab/landscape.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace mnklab {

/// Strict Pareto dominance under maximization: a >= b everywhere and a > b somewhere.
inline bool dominates(std::span<const double> a, std::span<const double> b) noexcept
{
    assert(a.size() == b.size());
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
            return false;
        }
        if (a[i] > b[i]) {
            strictly = true;
        }
    }
    return strictly;
}

/// Fronts of indices into the sorted input; each front is in ascending index order.
struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;

    std::size_t size() const noexcept { return fronts.size(); }
    const std::vector<std::size_t>& operator[](std::size_t i) const { return fronts[i]; }
};

namespace detail {

// Efficient non-dominated sort with binary search over fronts. Points are
// visited in lexicographically descending order, so every dominator of a
// point is placed before it; "some member of front f dominates p" is then
// monotone in f and the front of p can be found by bisection.
template <class ObjectivesOf>
FrontPartition nondominated_sort_impl(std::size_t count, ObjectivesOf&& objectives_of)
{
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        std::span<const double> fa = objectives_of(a);
        std::span<const double> fb = objectives_of(b);
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (fa[i] != fb[i]) {
                return fa[i] > fb[i];
            }
        }
        return a < b;
    });

    FrontPartition result;
    auto dominated_by_front = [&](std::size_t front, std::span<const double> p) {
        const auto& members = result.fronts[front];
        for (auto it = members.rbegin(); it != members.rend(); ++it) {
            if (dominates(objectives_of(*it), p)) {
                return true;
            }
        }
        return false;
    };

    for (std::size_t idx : order) {
        std::span<const double> p = objectives_of(idx);
        std::size_t lo = 0;
        std::size_t hi = result.fronts.size();
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (dominated_by_front(mid, p)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo == result.fronts.size()) {
            result.fronts.emplace_back();
        }
        result.fronts[lo].push_back(idx);
    }
    for (auto& front : result.fronts) {
        std::sort(front.begin(), front.end());
    }
    return result;
}

} // namespace detail

/// Partitions points into non-dominated fronts F1, F2, ... Empty input yields no fronts.
FrontPartition nondominated_sort(std::span<const ObjectiveVector> points);

/// Same, for any indexable container; objectives_of(i) must return something
/// convertible to std::span<const double>.
template <class ObjectivesOf>
FrontPartition nondominated_sort_by(std::size_t count, ObjectivesOf&& objectives_of)
{
    return detail::nondominated_sort_impl(count, [&](std::size_t i) -> std::span<const double> {
        return objectives_of(i);
    });
}

struct ParetoMember {
    Genotype genotype;
    ObjectiveVector objectives;
};

/// Exact Pareto optimal set of a landscape, members in ascending genotype order.
class ParetoOptimalSet {
public:
    ParetoOptimalSet() = default;
    ParetoOptimalSet(LandscapeParams params, std::vector<ParetoMember> members,
                     std::optional<std::size_t> fronts = std::nullopt);

    const LandscapeParams& params() const noexcept { return params_; }
    const std::vector<ParetoMember>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(const Genotype& g) const { return lookup_.contains(g.bits()); }

    /// Whole-space front count, if it was computed.
    std::optional<std::size_t> fronts() const noexcept { return fronts_; }
    void set_fronts(std::size_t fronts) { fronts_ = fronts; }

    /// True if this set was enumerated from the landscape with these parameters.
    bool matches(const LandscapeParams& p) const noexcept { return params_ == p; }

private:
    LandscapeParams params_;
    std::vector<ParetoMember> members_;
    std::unordered_set<std::uint64_t> lookup_;
    std::optional<std::size_t> fronts_;
};

/// Evaluates all 2^n genotypes; row g holds the m objectives of genotype g.
std::vector<double> evaluate_all(const MnkLandscape& landscape);

/// Exact POS by exhaustive enumeration.
///
/// Points dominated by one of their Hamming-1 neighbours are discarded first
/// (they are not optimal, and every dominated survivor of the pre-filter is
/// still dominated by an optimal point that the filter keeps); the rest are
/// scanned in order of descending objective sum against a running skyline.
ParetoOptimalSet enumerate_pos(const MnkLandscape& landscape);

/// Number of non-dominated fronts of the whole genotype space. Expensive for n = 20.
std::size_t count_fronts(const MnkLandscape& landscape);

/// POS file: JSON lines. The first line is a header
/// {"m","n","k","instance_seed","pos_size","fronts"?}; each following line is
/// {"genotype_hex", "objectives"}.
void write_pos(std::ostream& out, const ParetoOptimalSet& pos);
ParetoOptimalSet read_pos(std::istream& in);

} // namespace mnklab

#endif
