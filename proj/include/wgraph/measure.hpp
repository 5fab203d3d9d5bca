#ifndef WGRAPH_MEASURE_HPP_
#define WGRAPH_MEASURE_HPP_

#include <map>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/permutation.hpp"
#include "wgraph/rational.hpp"

namespace wgraph {

using WeightMap = std::map<Vertex, Rational>;

// Nonzero rational weights of any sign; used for μ − ν and for the
// decompositions η + αδ_u.
class SignedMass {
public:
    SignedMass() = default;
    explicit SignedMass(WeightMap weights) {
        for (auto& [v, w] : weights)
            if (w != 0)
                weights_.emplace(v, std::move(w));
    }

    [[nodiscard]] const WeightMap& entries() const noexcept { return weights_; }
    [[nodiscard]] bool empty() const noexcept { return weights_.empty(); }
    [[nodiscard]] std::size_t support_size() const noexcept { return weights_.size(); }

    [[nodiscard]] Rational operator[](Vertex v) const {
        auto it = weights_.find(v);
        return it == weights_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] Rational total() const {
        Rational t = 0;
        for (const auto& [v, w] : weights_)
            t += w;
        return t;
    }

    void add(Vertex v, const Rational& w) {
        Rational updated = (*this)[v] + w;
        if (updated == 0)
            weights_.erase(v);
        else
            weights_[v] = updated;
    }

    friend bool operator==(const SignedMass&, const SignedMass&) = default;

private:
    WeightMap weights_;
};

// Finitely supported probability measure with exact weights; only the
// support is stored.
class Measure {
public:
    [[nodiscard]] const WeightMap& entries() const noexcept { return mass_; }
    [[nodiscard]] std::size_t support_size() const noexcept { return mass_.size(); }

    [[nodiscard]] std::vector<Vertex> support() const {
        std::vector<Vertex> s;
        s.reserve(mass_.size());
        for (const auto& [v, w] : mass_)
            s.push_back(v);
        return s;
    }

    [[nodiscard]] Rational operator[](Vertex v) const {
        auto it = mass_.find(v);
        return it == mass_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] bool contains(Vertex v) const { return mass_.contains(v); }

    /// Largest vertex index in the support.
    [[nodiscard]] Vertex max_vertex() const { return mass_.rbegin()->first; }

    friend bool operator==(const Measure&, const Measure&) = default;
    friend Measure make_measure(const WeightMap& weights);

private:
    Measure() = default;
    WeightMap mass_;
};

/// Drops zero entries, then checks positivity and unit total mass.
inline Measure make_measure(const WeightMap& weights) {
    Measure m;
    Rational total = 0;
    for (const auto& [v, w] : weights) {
        if (w < 0)
            throw Error(ErrorCode::NegativeWeight, "weight " + to_string(w) + " at vertex index " + std::to_string(v));
        if (w == 0)
            continue;
        m.mass_.emplace(v, w);
        total += w;
    }
    if (total != 1)
        throw Error(ErrorCode::MassNotOne, "total mass is " + to_string(total));
    return m;
}

inline Measure dirac(Vertex x) {
    return make_measure({{x, Rational(1)}});
}

inline Measure dirac(const Graph& g, Vertex x) {
    if (x >= g.size())
        throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(x) + " out of range");
    return dirac(x);
}

inline Measure dirac(const Graph& g, const std::string& name) {
    return dirac(g.index_of(name));
}

/// (ψ_# μ)(x) = μ(ψ^{-1}(x)): the mass at y moves to ψ(y).
inline Measure pushforward(const Permutation& psi, const Measure& mu) {
    WeightMap moved;
    for (const auto& [v, w] : mu.entries()) {
        if (v >= psi.size())
            throw Error(ErrorCode::SizeMismatch, "permutation of size " + std::to_string(psi.size()) +
                                                     " cannot move vertex index " + std::to_string(v));
        moved.emplace(psi(v), w);
    }
    return make_measure(moved);
}

/// (1 − s)μ + sν.
inline Measure interpolate(const Measure& mu, const Measure& nu, const Rational& s) {
    if (s < 0 || s > 1)
        throw Error(ErrorCode::BadParameter, "interpolation parameter " + to_string(s) + " outside [0,1]");
    WeightMap out;
    for (const auto& [v, w] : mu.entries())
        out[v] += (1 - s) * w;
    for (const auto& [v, w] : nu.entries())
        out[v] += s * w;
    return make_measure(out);
}

/// Pointwise μ − ν.
inline SignedMass difference(const Measure& mu, const Measure& nu) {
    SignedMass d(mu.entries());
    for (const auto& [v, w] : nu.entries())
        d.add(v, -w);
    return d;
}

/// μ + δ, revalidated as a probability measure.
inline Measure perturb(const Measure& mu, const SignedMass& delta) {
    WeightMap out = mu.entries();
    for (const auto& [v, w] : delta.entries())
        out[v] += w;
    return make_measure(out);
}

/// Σ_x ϱ(x, x̂)^p μ(x).
inline Rational p_moment(const Measure& mu, Vertex center, unsigned p, const DistanceMatrix& d) {
    if (center >= d.size())
        throw Error(ErrorCode::UnknownVertex, "center vertex index out of range");
    if (p == 0)
        throw Error(ErrorCode::BadParameter, "exponent must be >= 1");
    Rational sum = 0;
    for (const auto& [v, w] : mu.entries()) {
        if (v >= d.size())
            throw Error(ErrorCode::UnknownVertex, "measure support outside the graph");
        sum += Rational(ipow(Integer(d(v, center)), p)) * w;
    }
    return sum;
}

/// "{v0: 1/2, v2: 1/2}" using the graph's vertex names.
inline std::string describe(const Graph& g, const Measure& mu) {
    std::string out = "{";
    for (const auto& [v, w] : mu.entries()) {
        if (out.size() > 1)
            out += ", ";
        out += (v < g.size() ? g.name(v) : "#" + std::to_string(v)) + ": " + to_string(w);
    }
    return out + "}";
}

} // namespace wgraph

#endif
