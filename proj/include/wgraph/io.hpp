#ifndef WGRAPH_IO_HPP_
#define WGRAPH_IO_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/groups.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/neighbouring.hpp"
#include "wgraph/rational.hpp"
#include "wgraph/rigidity.hpp"
#include "wgraph/suite.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "wgraph 1.0.0";

namespace detail {

// Runs a JSON accessor, turning library exceptions into ParseError.
template <class F>
auto json_guard(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, what + ": " + e.what());
    }
}

} // namespace detail

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return detail::json_guard("'" + path + "'", [&] { return Json::parse(in); });
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

// Graph: {"vertices": [...], "edges": [[a, b], ...]}. Edges are written once,
// lower index first, in index order.
inline Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto [a, b] : g.edges())
        edges.push_back({g.name(a), g.name(b)});
    return Json{{"vertices", g.names()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j) {
    auto [vertices, edges] = detail::json_guard("graph", [&] {
        auto v = j.at("vertices").get<std::vector<std::string>>();
        auto e = j.at("edges").get<std::vector<std::pair<std::string, std::string>>>();
        return std::pair{std::move(v), std::move(e)};
    });
    return build_graph(std::move(vertices), edges);
}

// Measure: {"mass": {"v0": "1/2", ...}}, keys in vertex order.
inline Json measure_to_json(const Graph& g, const Measure& mu) {
    Json mass = Json::object();
    for (const auto& [v, w] : mu.entries())
        mass[g.name(v)] = to_string(w);
    return Json{{"mass", std::move(mass)}};
}

inline Measure measure_from_json(const Graph& g, const Json& j) {
    auto raw = detail::json_guard("measure", [&] { return j.at("mass").get<std::map<std::string, std::string>>(); });
    WeightMap w;
    for (const auto& [name, text] : raw)
        w[g.index_of(name)] = parse_rational(text);
    return make_measure(w);
}

inline Json group_to_json(const FiniteGroup& h) {
    return Json{{"order", h.order()}, {"table", h.table()}};
}

inline FiniteGroup group_from_json(const Json& j) {
    auto [order, table] = detail::json_guard("group", [&] {
        return std::pair{j.at("order").get<std::size_t>(), j.at("table").get<CayleyTable>()};
    });
    if (order != table.size())
        throw Error(ErrorCode::NotLatinSquare, "order " + std::to_string(order) + " but table has " +
                                                   std::to_string(table.size()) + " rows");
    return validate_group(std::move(table));
}

// Plan: {"entries": [["v0", "v1", "1/2"], ...], "cost_p": "1/2"}.
inline Json plan_to_json(const Graph& g, const Coupling& plan, const Rational& cost_p) {
    Json entries = Json::array();
    for (const auto& [cell, w] : plan.entries())
        entries.push_back({g.name(cell.first), g.name(cell.second), to_string(w)});
    return Json{{"entries", std::move(entries)}, {"cost_p", to_string(cost_p)}};
}

/// Reads a plan back as a coupling of (μ, ν); marginals are not checked here.
inline std::pair<Coupling, Rational> plan_from_json(const Graph& g, const Json& j, const Measure& mu,
                                                    const Measure& nu) {
    auto [rows, cost] = detail::json_guard("plan", [&] {
        return std::pair{j.at("entries").get<std::vector<std::vector<std::string>>>(),
                         j.at("cost_p").get<std::string>()};
    });
    PlanEntries e;
    for (const auto& row : rows) {
        if (row.size() != 3)
            throw Error(ErrorCode::ParseError, "plan entries are [source, target, mass] triples");
        e[{g.index_of(row[0]), g.index_of(row[1])}] += parse_rational(row[2]);
    }
    return {Coupling(std::move(e), mu, nu), parse_rational(cost)};
}

inline Json permutation_to_json(const Graph& g, const Permutation& psi) {
    Json m = Json::object();
    for (Vertex v = 0; v < psi.size(); ++v)
        m[g.name(v)] = g.name(psi(v));
    return m;
}

inline Json certificate_to_json(const Graph& g, const NeighbouringCertificate& c) {
    Json eta = Json::object();
    for (const auto& [v, w] : c.eta.entries())
        eta[g.name(v)] = to_string(w);
    return Json{{"u", g.name(c.u)}, {"v", g.name(c.v)}, {"alpha", to_string(c.alpha)}, {"eta", std::move(eta)}};
}

inline Json property_to_json(const PropertyResult& r) {
    Json j{{"name", r.name}, {"passed", r.passed()}, {"checked", r.checked}, {"failed", r.failed}};
    if (!r.note.empty())
        j["note"] = r.note;
    j["counterexamples"] = r.counterexamples;
    return j;
}

inline Json suite_report_to_json(const SuiteReport& r) {
    Json props = Json::array();
    for (const auto& prop : r.properties)
        props.push_back(property_to_json(prop));
    return Json{{"vertices", r.vertices}, {"p", r.p},          {"seed", r.seed},
                {"samples", r.samples},   {"passed", r.passed()}, {"properties", std::move(props)}};
}

inline Json genericity_to_json(const Graph& g, const GenericityReport& r) {
    Json j{{"input", measure_to_json(g, r.input)},
           {"output", measure_to_json(g, r.output)},
           {"K", r.K},
           {"epsilon", to_string(r.epsilon)},
           {"epsilon_used", to_string(r.epsilon_used)},
           {"radius", to_string(r.radius)},
           {"p1", r.p1},
           {"p2", r.p2},
           {"bound", to_string(r.bound)},
           {"attempts", r.attempts},
           {"unchanged", r.unchanged}};
    if (r.coupling)
        j["coupling"] = plan_to_json(g, *r.coupling, r.bound);
    return j;
}

// The CLI's output document. Key order is fixed and no timing or host data
// is recorded, so identical invocations serialize to identical bytes.
struct RunReport {
    std::vector<std::string> command;
    std::vector<std::pair<std::string, std::string>> input_digests; // path, sha256
    std::uint64_t seed = 0;
    Json results = Json::object();
    std::vector<std::pair<std::string, bool>> checks;

    [[nodiscard]] bool passed() const {
        for (const auto& [name, ok] : checks)
            if (!ok)
                return false;
        return true;
    }

    [[nodiscard]] Json to_json() const {
        Json digests = Json::object();
        for (const auto& [path, hex] : input_digests)
            digests[path] = hex;
        Json list = Json::array();
        for (const auto& [name, ok] : checks)
            list.push_back({{"name", name}, {"passed", ok}});
        return Json{{"version", kVersion}, {"command", command},       {"input_digests", std::move(digests)},
                    {"seed", seed},        {"results", results},       {"checks", std::move(list)},
                    {"passed", passed()}};
    }
};

} // namespace wgraph

#endif
