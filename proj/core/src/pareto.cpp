#include "mnklab/pareto.hpp"

#include "number_format.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mnklab {

FrontPartition nondominated_sort(std::span<const ObjectiveVector> points)
{
    return detail::nondominated_sort_impl(
        points.size(), [&](std::size_t i) -> std::span<const double> { return points[i]; });
}

ParetoOptimalSet::ParetoOptimalSet(LandscapeParams params, std::vector<ParetoMember> members,
                                   std::optional<std::size_t> fronts)
    : params_(params), members_(std::move(members)), fronts_(fronts)
{
    std::sort(members_.begin(), members_.end(), [](const ParetoMember& a, const ParetoMember& b) {
        return a.genotype.bits() < b.genotype.bits();
    });
    lookup_.reserve(members_.size());
    for (const auto& member : members_) {
        if (!lookup_.insert(member.genotype.bits()).second) {
            throw std::invalid_argument("duplicate genotype in Pareto optimal set");
        }
    }
}

std::vector<double> evaluate_all(const MnkLandscape& landscape)
{
    if (landscape.n() > 30) {
        throw std::invalid_argument("exhaustive evaluation is limited to n <= 30");
    }
    const std::size_t m = landscape.m();
    const std::size_t space = std::size_t{1} << landscape.n();
    std::vector<double> values(space * m);
    for (std::size_t g = 0; g < space; ++g) {
        landscape.evaluate_into(g, std::span<double>(values.data() + g * m, m));
    }
    return values;
}

ParetoOptimalSet enumerate_pos(const MnkLandscape& landscape)
{
    const std::size_t m = landscape.m();
    const unsigned n = landscape.n();
    const std::vector<double> values = evaluate_all(landscape);
    const std::size_t space = std::size_t{1} << n;
    auto row = [&](std::size_t g) { return std::span<const double>(values.data() + g * m, m); };

    std::vector<std::uint32_t> candidates;
    for (std::size_t g = 0; g < space; ++g) {
        bool dominated = false;
        for (unsigned b = 0; b < n && !dominated; ++b) {
            dominated = dominates(row(g ^ (std::size_t{1} << b)), row(g));
        }
        if (!dominated) {
            candidates.push_back(static_cast<std::uint32_t>(g));
        }
    }

    std::vector<double> sums(space, 0.0);
    for (std::uint32_t g : candidates) {
        double s = 0.0;
        for (double v : row(g)) {
            s += v;
        }
        sums[g] = s;
    }
    // Floating-point summation is monotone, so a dominator never has a smaller
    // sum; on equal sums it is lexicographically larger.
    std::sort(candidates.begin(), candidates.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (sums[a] != sums[b]) {
            return sums[a] > sums[b];
        }
        auto ra = row(a);
        auto rb = row(b);
        for (std::size_t i = 0; i < m; ++i) {
            if (ra[i] != rb[i]) {
                return ra[i] > rb[i];
            }
        }
        return a < b;
    });

    std::vector<std::uint32_t> skyline;
    std::vector<double> skyline_values;
    for (std::uint32_t g : candidates) {
        auto p = row(g);
        bool dominated = false;
        for (std::size_t s = 0; s < skyline.size() && !dominated; ++s) {
            dominated = dominates(std::span<const double>(skyline_values.data() + s * m, m), p);
        }
        if (!dominated) {
            skyline.push_back(g);
            skyline_values.insert(skyline_values.end(), p.begin(), p.end());
        }
    }

    std::vector<ParetoMember> members;
    members.reserve(skyline.size());
    for (std::uint32_t g : skyline) {
        auto p = row(g);
        members.push_back({Genotype(g, n), ObjectiveVector(p.begin(), p.end())});
    }
    return ParetoOptimalSet(landscape.params(), std::move(members));
}

std::size_t count_fronts(const MnkLandscape& landscape)
{
    const std::size_t m = landscape.m();
    const std::vector<double> values = evaluate_all(landscape);
    const std::size_t space = std::size_t{1} << landscape.n();
    return nondominated_sort_by(space, [&](std::size_t g) {
               return std::span<const double>(values.data() + g * m, m);
           })
        .size();
}

void write_pos(std::ostream& out, const ParetoOptimalSet& pos)
{
    const auto& p = pos.params();
    out << "{\"m\":" << p.m << ",\"n\":" << p.n << ",\"k\":" << p.k << ",\"instance_seed\":" << p.seed
        << ",\"pos_size\":" << pos.size();
    if (pos.fronts()) {
        out << ",\"fronts\":" << *pos.fronts();
    }
    out << "}\n";
    for (const auto& member : pos.members()) {
        out << "{\"genotype_hex\":\"" << member.genotype.to_hex() << "\",\"objectives\":[";
        for (std::size_t i = 0; i < member.objectives.size(); ++i) {
            out << (i ? "," : "") << detail::format_double(member.objectives[i]);
        }
        out << "]}\n";
    }
}

ParetoOptimalSet read_pos(std::istream& in)
{
    using nlohmann::json;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("POS file is empty");
    }
    LandscapeParams params;
    std::size_t declared = 0;
    std::optional<std::size_t> fronts;
    try {
        const json header = json::parse(line);
        params.m = header.at("m").get<unsigned>();
        params.n = header.at("n").get<unsigned>();
        params.k = header.at("k").get<unsigned>();
        params.seed = header.at("instance_seed").get<std::uint64_t>();
        declared = header.at("pos_size").get<std::size_t>();
        if (header.contains("fronts") && !header["fronts"].is_null()) {
            fronts = header["fronts"].get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("invalid POS header: ") + e.what());
    }
    if (params.n < 1 || params.n > max_genotype_bits) {
        throw std::runtime_error("POS header has invalid n");
    }

    std::vector<ParetoMember> members;
    members.reserve(declared);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            const json record = json::parse(line);
            ParetoMember member{Genotype::from_hex(record.at("genotype_hex").get<std::string>(), params.n),
                                record.at("objectives").get<ObjectiveVector>()};
            if (member.objectives.size() != params.m) {
                throw std::runtime_error("objective count does not match header m");
            }
            members.push_back(std::move(member));
        } catch (const std::exception& e) {
            throw std::runtime_error("invalid POS record on line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    if (members.size() != declared) {
        throw std::runtime_error("POS file declares " + std::to_string(declared) + " members but has " +
                                 std::to_string(members.size()));
    }
    try {
        return ParetoOptimalSet(params, std::move(members), fronts);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

} // namespace mnklab
