#include "mnklab/landscape.hpp"

#include "mnklab/rng.hpp"
#include "number_format.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mnklab {

namespace {

void check_params(const LandscapeParams& p)
{
    if (p.m < 1 || p.m > max_objectives) {
        throw std::invalid_argument("objective count m must be in [1, 16], got " + std::to_string(p.m));
    }
    if (p.n < 1 || p.n > max_genotype_bits) {
        throw std::invalid_argument("bit count n must be in [1, 64], got " + std::to_string(p.n));
    }
    if (p.k >= p.n) {
        throw std::invalid_argument("epistasis k must be < n (k=" + std::to_string(p.k) +
                                    ", n=" + std::to_string(p.n) + ")");
    }
}

} // namespace

MnkLandscape MnkLandscape::generate(unsigned m, unsigned n, unsigned k, std::uint64_t seed)
{
    const LandscapeParams params{m, n, k, seed};
    check_params(params);

    MnkLandscape l;
    l.params_ = params;
    const std::size_t entries = std::size_t{1} << (k + 1);
    l.neighbors_.reserve(std::size_t{m} * n * k);
    l.tables_.reserve(std::size_t{m} * n * entries);

    std::vector<unsigned> candidates;
    candidates.reserve(n);
    for (unsigned j = 0; j < m; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            Rng rng(derive_seed(seed, std::uint64_t{j} * n + i));
            candidates.clear();
            for (unsigned c = 0; c < n; ++c) {
                if (c != i) {
                    candidates.push_back(c);
                }
            }
            for (unsigned t = 0; t < k; ++t) {
                const std::size_t pick = t + rng.below(candidates.size() - t);
                std::swap(candidates[t], candidates[pick]);
                l.neighbors_.push_back(candidates[t]);
            }
            for (std::size_t e = 0; e < entries; ++e) {
                l.tables_.push_back(rng.uniform());
            }
        }
    }
    return l;
}

std::span<const unsigned> MnkLandscape::neighbors(unsigned objective, unsigned bit) const
{
    const std::size_t row = std::size_t{objective} * params_.n + bit;
    return std::span<const unsigned>(neighbors_).subspan(row * params_.k, params_.k);
}

std::span<const double> MnkLandscape::table(unsigned objective, unsigned bit) const
{
    const std::size_t row = std::size_t{objective} * params_.n + bit;
    return std::span<const double>(tables_).subspan(row * table_size(), table_size());
}

ObjectiveVector MnkLandscape::evaluate(const Genotype& g) const
{
    if (g.size() != params_.n) {
        throw std::invalid_argument("genotype width " + std::to_string(g.size()) +
                                    " does not match landscape n=" + std::to_string(params_.n));
    }
    ObjectiveVector out(params_.m);
    evaluate_into(g.bits(), out);
    return out;
}

void MnkLandscape::evaluate_into(std::uint64_t bits, std::span<double> out) const noexcept
{
    const unsigned n = params_.n;
    const unsigned k = params_.k;
    const std::size_t entries = table_size();
    const unsigned* nb = neighbors_.data();
    const double* table = tables_.data();
    for (unsigned j = 0; j < params_.m; ++j) {
        double sum = 0.0;
        for (unsigned i = 0; i < n; ++i) {
            std::size_t index = (bits >> i) & 1U;
            for (unsigned t = 0; t < k; ++t) {
                index = (index << 1) | ((bits >> nb[t]) & 1U);
            }
            sum += table[index];
            nb += k;
            table += entries;
        }
        out[j] = sum / n;
    }
}

MnkLandscape landscape_from_parts(const LandscapeParams& params, std::vector<unsigned> neighbors,
                                  std::vector<double> tables)
{
    check_params(params);
    const std::size_t rows = std::size_t{params.m} * params.n;
    const std::size_t entries = std::size_t{1} << (params.k + 1);
    if (neighbors.size() != rows * params.k) {
        throw std::invalid_argument("neighbor data has wrong size");
    }
    if (tables.size() != rows * entries) {
        throw std::invalid_argument("table data has wrong size");
    }
    for (std::size_t row = 0; row < rows; ++row) {
        const unsigned bit = static_cast<unsigned>(row % params.n);
        auto first = neighbors.begin() + static_cast<std::ptrdiff_t>(row * params.k);
        std::vector<unsigned> nb(first, first + params.k);
        for (unsigned v : nb) {
            if (v >= params.n || v == bit) {
                throw std::invalid_argument("neighbor index out of range or equal to its own bit");
            }
        }
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
            throw std::invalid_argument("duplicate neighbor index");
        }
    }
    for (double v : tables) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw std::invalid_argument("table value outside [0, 1)");
        }
    }
    MnkLandscape l;
    l.params_ = params;
    l.neighbors_ = std::move(neighbors);
    l.tables_ = std::move(tables);
    return l;
}

void write_instance(std::ostream& out, const MnkLandscape& l)
{
    out << "{\n";
    out << "  \"m\": " << l.m() << ",\n";
    out << "  \"n\": " << l.n() << ",\n";
    out << "  \"k\": " << l.k() << ",\n";
    out << "  \"instance_seed\": " << l.seed() << ",\n";
    out << "  \"neighbor_model\": \"random\",\n";
    out << "  \"neighbors\": [";
    for (unsigned j = 0; j < l.m(); ++j) {
        out << (j ? ",\n    [" : "\n    [");
        for (unsigned i = 0; i < l.n(); ++i) {
            out << (i ? ", [" : "[");
            auto nb = l.neighbors(j, i);
            for (std::size_t t = 0; t < nb.size(); ++t) {
                out << (t ? ", " : "") << nb[t];
            }
            out << ']';
        }
        out << ']';
    }
    out << "\n  ],\n";
    out << "  \"tables\": [";
    for (unsigned j = 0; j < l.m(); ++j) {
        out << (j ? ",\n    [" : "\n    [");
        for (unsigned i = 0; i < l.n(); ++i) {
            out << (i ? ",\n      [" : "\n      [");
            auto table = l.table(j, i);
            for (std::size_t e = 0; e < table.size(); ++e) {
                out << (e ? ", " : "") << detail::format_double(table[e]);
            }
            out << ']';
        }
        out << "\n    ]";
    }
    out << "\n  ]\n}\n";
}

MnkLandscape read_instance(std::istream& in)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance file is not valid JSON: ") + e.what());
    }

    LandscapeParams params;
    try {
        params.m = doc.at("m").get<unsigned>();
        params.n = doc.at("n").get<unsigned>();
        params.k = doc.at("k").get<unsigned>();
        params.seed = doc.at("instance_seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance file missing header field: ") + e.what());
    }
    if (doc.contains("neighbor_model") && doc["neighbor_model"] != "random") {
        throw std::runtime_error("unsupported neighbor_model " + doc["neighbor_model"].dump());
    }

    MnkLandscape regenerated = [&] {
        try {
            return MnkLandscape::generate(params);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("invalid instance parameters: ") + e.what());
        }
    }();

    const bool has_neighbors = doc.contains("neighbors");
    const bool has_tables = doc.contains("tables");
    if (!has_neighbors && !has_tables) {
        return regenerated;
    }
    if (has_neighbors != has_tables) {
        throw std::runtime_error("instance file must carry both neighbors and tables, or neither");
    }

    std::vector<unsigned> neighbors;
    std::vector<double> tables;
    try {
        const auto& nb = doc["neighbors"];
        const auto& tb = doc["tables"];
        if (nb.size() != params.m || tb.size() != params.m) {
            throw std::runtime_error("neighbors/tables must have one entry per objective");
        }
        for (unsigned j = 0; j < params.m; ++j) {
            if (nb[j].size() != params.n || tb[j].size() != params.n) {
                throw std::runtime_error("neighbors/tables must have one entry per bit");
            }
            for (unsigned i = 0; i < params.n; ++i) {
                if (nb[j][i].size() != params.k) {
                    throw std::runtime_error("neighbor list must have exactly k entries");
                }
                for (const auto& v : nb[j][i]) {
                    neighbors.push_back(v.get<unsigned>());
                }
                for (const auto& v : tb[j][i]) {
                    tables.push_back(v.get<double>());
                }
            }
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed neighbors/tables: ") + e.what());
    }

    MnkLandscape materialized = [&] {
        try {
            return landscape_from_parts(params, std::move(neighbors), std::move(tables));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("instance violates landscape invariants: ") + e.what());
        }
    }();
    if (!(materialized == regenerated)) {
        throw std::runtime_error("instance data does not match regeneration from instance_seed");
    }
    return materialized;
}

} // namespace mnklab
