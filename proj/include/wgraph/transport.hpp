#ifndef WGRAPH_TRANSPORT_HPP_
#define WGRAPH_TRANSPORT_HPP_

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/rational.hpp"

namespace wgraph {

using PlanEntries = std::map<std::pair<Vertex, Vertex>, Rational>;

// Transport plan π between a source and a target measure. Entries are the
// positive cells only; whether the marginals match is validate_coupling's job.
class Coupling {
public:
    Coupling(PlanEntries entries, Measure source, Measure target)
        : source_(std::move(source)), target_(std::move(target)) {
        for (auto& [cell, w] : entries)
            if (w != 0)
                entries_.emplace(cell, std::move(w));
    }

    [[nodiscard]] const PlanEntries& entries() const noexcept { return entries_; }
    [[nodiscard]] const Measure& source() const noexcept { return source_; }
    [[nodiscard]] const Measure& target() const noexcept { return target_; }

    [[nodiscard]] Rational operator()(Vertex x, Vertex y) const {
        auto it = entries_.find({x, y});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    /// Entries with x ≠ y, in (x, y) order.
    [[nodiscard]] std::vector<std::pair<std::pair<Vertex, Vertex>, Rational>> off_diagonal() const {
        std::vector<std::pair<std::pair<Vertex, Vertex>, Rational>> out;
        for (const auto& [cell, w] : entries_)
            if (cell.first != cell.second)
                out.emplace_back(cell, w);
        return out;
    }

private:
    PlanEntries entries_;
    Measure source_;
    Measure target_;
};

struct CouplingCheck {
    bool ok = true;
    std::string report;
    explicit operator bool() const noexcept { return ok; }
};

/// π_μ(x, x) = μ(x).
inline Coupling diagonal_coupling(const Measure& mu) {
    PlanEntries e;
    for (const auto& [v, w] : mu.entries())
        e.emplace(std::pair{v, v}, w);
    return Coupling(std::move(e), mu, mu);
}

inline Coupling product_coupling(const Measure& mu, const Measure& nu) {
    PlanEntries e;
    for (const auto& [x, a] : mu.entries())
        for (const auto& [y, b] : nu.entries())
            e.emplace(std::pair{x, y}, a * b);
    return Coupling(std::move(e), mu, nu);
}

/// Exact check of both marginal equations; reports the first violation.
inline CouplingCheck validate_coupling(const Coupling& pi) {
    std::map<Vertex, Rational> rows, cols;
    for (const auto& [cell, w] : pi.entries()) {
        if (w <= 0)
            return {false, "nonpositive entry at (" + std::to_string(cell.first) + "," + std::to_string(cell.second) + ")"};
        rows[cell.first] += w;
        cols[cell.second] += w;
    }
    for (const auto& [x, w] : pi.source().entries())
        rows.try_emplace(x, 0);
    for (const auto& [y, w] : pi.target().entries())
        cols.try_emplace(y, 0);
    for (const auto& [x, sum] : rows)
        if (sum != pi.source()[x])
            return {false, "row " + std::to_string(x) + " sums to " + to_string(sum) + ", source marginal is " +
                               to_string(pi.source()[x])};
    for (const auto& [y, sum] : cols)
        if (sum != pi.target()[y])
            return {false, "column " + std::to_string(y) + " sums to " + to_string(sum) + ", target marginal is " +
                               to_string(pi.target()[y])};
    return {};
}

/// Σ ϱ(x, y)^p π(x, y).
inline Rational coupling_cost(const Coupling& pi, const DistanceMatrix& d, unsigned p) {
    Rational sum = 0;
    for (const auto& [cell, w] : pi.entries())
        sum += Rational(ipow(Integer(d(cell.first, cell.second)), p)) * w;
    return sum;
}

struct TransportResult {
    Rational cost_p;      // d_p^p, exact
    std::string distance; // cost_p^{1/p}, decimal rendering
    Coupling plan;
};

namespace detail {

// Successive shortest augmenting paths with node potentials on the bipartite
// transportation network S → sources → sinks → T. Forward arcs are
// uncapacitated; residual reverse arcs carry the current flow. Values at or
// below `eps` count as zero (eps = 0 in exact arithmetic).
template <class Num>
std::vector<std::vector<Num>> min_cost_transport(const std::vector<Num>& supply, const std::vector<Num>& demand,
                                                 const std::vector<std::vector<Num>>& cost, const Num& eps) {
    const std::size_t m = supply.size();
    const std::size_t n = demand.size();
    const std::size_t V = m + n + 2;
    const std::size_t S = 0, T = V - 1;
    auto src = [](std::size_t i) { return 1 + i; };
    auto snk = [m](std::size_t j) { return 1 + m + j; };

    std::vector<std::vector<Num>> flow(m, std::vector<Num>(n, Num(0)));
    std::vector<Num> sent(m, Num(0)), received(n, Num(0)), potential(V, Num(0));

    struct Arc {
        std::size_t to;
        Num cost;
    };
    auto arcs_from = [&](std::size_t u) {
        std::vector<Arc> out;
        if (u == S) {
            for (std::size_t i = 0; i < m; ++i)
                if (supply[i] - sent[i] > eps)
                    out.push_back({src(i), Num(0)});
        } else if (u <= m) {
            std::size_t i = u - 1;
            for (std::size_t j = 0; j < n; ++j)
                out.push_back({snk(j), cost[i][j]});
        } else if (u < T) {
            std::size_t j = u - 1 - m;
            for (std::size_t i = 0; i < m; ++i)
                if (flow[i][j] > eps)
                    out.push_back({src(i), Num(-cost[i][j])});
            if (demand[j] - received[j] > eps)
                out.push_back({T, Num(0)});
        }
        return out;
    };

    while (true) {
        std::vector<std::optional<Num>> dist(V);
        std::vector<bool> settled(V, false);
        std::vector<std::size_t> parent(V, V);
        dist[S] = Num(0);
        for (std::size_t round = 0; round < V; ++round) {
            std::size_t u = V;
            for (std::size_t v = 0; v < V; ++v)
                if (!settled[v] && dist[v] && (u == V || *dist[v] < *dist[u]))
                    u = v;
            if (u == V)
                break;
            settled[u] = true;
            for (const Arc& a : arcs_from(u)) {
                Num reduced = a.cost + potential[u] - potential[a.to];
                if (reduced < Num(0))
                    reduced = Num(0);
                Num candidate = *dist[u] + reduced;
                if (!settled[a.to] && (!dist[a.to] || candidate < *dist[a.to])) {
                    dist[a.to] = candidate;
                    parent[a.to] = u;
                }
            }
        }
        if (!dist[T])
            break;

        const Num reach = *dist[T];
        for (std::size_t v = 0; v < V; ++v)
            potential[v] += (dist[v] && *dist[v] < reach) ? *dist[v] : reach;

        // Bottleneck along the path. Forward source→sink arcs are uncapacitated.
        std::optional<Num> push;
        auto tighten = [&push](const Num& cap) {
            if (!push || cap < *push)
                push = cap;
        };
        for (std::size_t v = T; v != S; v = parent[v]) {
            std::size_t u = parent[v];
            if (u == S)
                tighten(supply[v - 1] - sent[v - 1]);
            else if (v == T)
                tighten(demand[u - 1 - m] - received[u - 1 - m]);
            else if (u > m)
                tighten(flow[v - 1][u - 1 - m]);
        }
        for (std::size_t v = T; v != S; v = parent[v]) {
            std::size_t u = parent[v];
            if (u == S)
                sent[v - 1] += *push;
            else if (v == T)
                received[u - 1 - m] += *push;
            else if (u <= m)
                flow[u - 1][v - 1 - m] += *push;
            else
                flow[v - 1][u - 1 - m] -= *push;
        }
    }
    return flow;
}

inline void check_on_graph(const Measure& mu, const DistanceMatrix& d) {
    if (mu.max_vertex() >= d.size())
        throw Error(ErrorCode::GraphMismatch, "measure is supported outside the graph (vertex index " +
                                                  std::to_string(mu.max_vertex()) + ")");
}

} // namespace detail

/// Exactly optimal plan for the transportation problem between supp μ and
/// supp ν with cost ϱ^p.
inline TransportResult solve_ot(const Measure& mu, const Measure& nu, const DistanceMatrix& d, unsigned p) {
    if (p == 0)
        throw Error(ErrorCode::BadParameter, "exponent must be >= 1");
    detail::check_on_graph(mu, d);
    detail::check_on_graph(nu, d);
    const auto rows = mu.support();
    const auto cols = nu.support();
    std::vector<Rational> supply, demand;
    for (Vertex x : rows)
        supply.push_back(mu[x]);
    for (Vertex y : cols)
        demand.push_back(nu[y]);
    std::vector<std::vector<Rational>> cost(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            cost[i][j] = Rational(ipow(Integer(d(rows[i], cols[j])), p));

    auto flow = detail::min_cost_transport<Rational>(supply, demand, cost, Rational(0));
    PlanEntries entries;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (flow[i][j] > 0)
                entries.emplace(std::pair{rows[i], cols[j]}, flow[i][j]);
    Coupling plan(std::move(entries), mu, nu);
    Rational c = coupling_cost(plan, d, p);
    return {c, render_root(c, p), std::move(plan)};
}

/// Signature shared by solve_ot and any substitute handed to the suites.
using TransportSolver = std::function<TransportResult(const Measure&, const Measure&, const DistanceMatrix&, unsigned)>;

/// Minimum transport cost by enumerating the vertices of the transportation
/// polytope: every spanning-tree support pattern on supp μ × supp ν is solved
/// by peeling leaves against the marginals, and the feasible ones are scored.
inline Rational oracle_ot(const Measure& mu, const Measure& nu, const DistanceMatrix& d, unsigned p,
                          std::size_t max_cells = 16) {
    detail::check_on_graph(mu, d);
    detail::check_on_graph(nu, d);
    const auto rows = mu.support();
    const auto cols = nu.support();
    const std::size_t m = rows.size(), n = cols.size();
    if (m * n > max_cells)
        throw Error(ErrorCode::TooLarge, "oracle limited to " + std::to_string(max_cells) + " cells, got " +
                                             std::to_string(m * n));
    const std::size_t basis = m + n - 1;

    std::optional<Rational> best;
    std::vector<std::size_t> chosen;

    // Union-find over m row nodes and n column nodes, copied per branch.
    auto find = [](std::vector<std::size_t>& parent, std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };

    auto evaluate = [&]() {
        std::vector<Rational> row_left, col_left;
        for (Vertex x : rows)
            row_left.push_back(mu[x]);
        for (Vertex y : cols)
            col_left.push_back(nu[y]);
        std::vector<std::optional<Rational>> value(chosen.size());
        for (std::size_t assigned = 0; assigned < chosen.size(); ++assigned) {
            bool progressed = false;
            for (std::size_t line = 0; line < m + n && !progressed; ++line) {
                std::size_t open = chosen.size(), count = 0;
                for (std::size_t k = 0; k < chosen.size(); ++k) {
                    if (value[k])
                        continue;
                    std::size_t i = chosen[k] / n, j = chosen[k] % n;
                    if ((line < m && i == line) || (line >= m && j == line - m)) {
                        ++count;
                        open = k;
                    }
                }
                if (count != 1)
                    continue;
                std::size_t i = chosen[open] / n, j = chosen[open] % n;
                Rational v = line < m ? row_left[i] : col_left[j];
                if (v < 0)
                    return;
                value[open] = v;
                row_left[i] -= v;
                col_left[j] -= v;
                progressed = true;
            }
            if (!progressed)
                return;
        }
        for (const auto& r : row_left)
            if (r != 0)
                return;
        for (const auto& c : col_left)
            if (c != 0)
                return;
        Rational total = 0;
        for (std::size_t k = 0; k < chosen.size(); ++k)
            total += Rational(ipow(Integer(d(rows[chosen[k] / n], cols[chosen[k] % n])), p)) * *value[k];
        if (!best || total < *best)
            best = total;
    };

    std::function<void(std::size_t, std::vector<std::size_t>)> extend = [&](std::size_t next,
                                                                            std::vector<std::size_t> parent) {
        if (chosen.size() == basis) {
            evaluate();
            return;
        }
        if (m * n - next < basis - chosen.size())
            return;
        for (std::size_t cell = next; cell < m * n; ++cell) {
            auto trial = parent;
            std::size_t a = find(trial, cell / n), b = find(trial, m + cell % n);
            if (a == b)
                continue;
            trial[a] = b;
            chosen.push_back(cell);
            extend(cell + 1, std::move(trial));
            chosen.pop_back();
        }
    };

    std::vector<std::size_t> parent(m + n);
    for (std::size_t k = 0; k < parent.size(); ++k)
        parent[k] = k;
    extend(0, std::move(parent));
    return *best;
}

struct Distance {
    Rational cost_p;
    std::string distance;
};

/// d_p^p exactly plus its p-th root rendered to `digits` decimals.
inline Distance wasserstein_distance(const Measure& mu, const Measure& nu, const DistanceMatrix& d, unsigned p,
                                     unsigned digits = 12) {
    auto r = solve_ot(mu, nu, d, p);
    return {r.cost_p, render_root(r.cost_p, p, digits)};
}

// Floating mode: real exponent p >= 1. Costs agree with the exact solver to an
// absolute 1e-9 on desk-scale instances.
struct FloatTransportResult {
    double cost_p = 0;
    double distance = 0;
    std::vector<std::tuple<Vertex, Vertex, double>> plan;
};

inline constexpr double kFloatTolerance = 1e-9;

inline FloatTransportResult solve_ot_float(const Measure& mu, const Measure& nu, const DistanceMatrix& d, double p) {
    if (!(p >= 1.0))
        throw Error(ErrorCode::BadParameter, "floating mode needs real p >= 1");
    detail::check_on_graph(mu, d);
    detail::check_on_graph(nu, d);
    const auto rows = mu.support();
    const auto cols = nu.support();
    std::vector<double> supply, demand;
    for (Vertex x : rows)
        supply.push_back(mu[x].convert_to<double>());
    for (Vertex y : cols)
        demand.push_back(nu[y].convert_to<double>());
    std::vector<std::vector<double>> cost(rows.size(), std::vector<double>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            cost[i][j] = std::pow(static_cast<double>(d(rows[i], cols[j])), p);

    auto flow = detail::min_cost_transport<double>(supply, demand, cost, 1e-15);
    FloatTransportResult out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (flow[i][j] > 1e-15) {
                out.plan.emplace_back(rows[i], cols[j], flow[i][j]);
                out.cost_p += cost[i][j] * flow[i][j];
            }
    out.distance = std::pow(out.cost_p, 1.0 / p);
    return out;
}

} // namespace wgraph

#endif
