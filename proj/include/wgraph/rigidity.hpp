#ifndef WGRAPH_RIGIDITY_HPP_
#define WGRAPH_RIGIDITY_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/neighbouring.hpp"
#include "wgraph/pushforward.hpp"
#include "wgraph/sampling.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {

// The two extremes of sliding the contested mass c = μ(u) + μ(w) across the
// edge uw: μ* holds all of it at u, μ_* all of it at w.
struct TeleportFrame {
    Measure mu_star;
    Measure mu_low;
    Vertex u = 0;
    Vertex w = 0;
    Rational c;
};

inline TeleportFrame teleport_extremes(const Measure& mu, Vertex u, Vertex w, const DistanceMatrix& d) {
    detail::check_on_graph(mu, d);
    if (u >= d.size() || w >= d.size())
        throw Error(ErrorCode::UnknownVertex, "teleport endpoint out of range");
    if (d(u, w) != 1)
        throw Error(ErrorCode::NotAdjacent, "teleport endpoints must be adjacent");
    const Rational c = mu[u] + mu[w];
    if (c == 0)
        throw Error(ErrorCode::ZeroContestedMass, "μ(u) + μ(w) = 0");
    SignedMass to_u, to_w;
    to_u.add(w, -mu[w]);
    to_u.add(u, mu[w]);
    to_w.add(u, -mu[u]);
    to_w.add(w, mu[u]);
    return {perturb(mu, to_u), perturb(mu, to_w), u, w, c};
}

/// γ(t) = μ* + tδ_w − tδ_u for 0 <= t <= c.
inline Measure teleport_curve(const TeleportFrame& frame, const Rational& t) {
    if (t < 0 || t > frame.c)
        throw Error(ErrorCode::BadParameter, "t = " + to_string(t) + " outside [0, " + to_string(frame.c) + "]");
    SignedMass slide;
    slide.add(frame.w, t);
    slide.add(frame.u, -t);
    return perturb(frame.mu_star, slide);
}

/// μ* ≡ μ_* [c], or nullopt when c > 1 puts the relation out of range.
inline std::optional<bool> extremes_neighbouring(const TeleportFrame& frame, const DistanceMatrix& d) {
    if (frame.c > 1)
        return std::nullopt;
    auto cert = check_neighbouring(frame.mu_star, frame.mu_low, d);
    return cert && cert->u == frame.u && cert->v == frame.w && cert->alpha == frame.c;
}

enum class CurveStatus {
    Certified,
    SkippedReflexive, // t = μ(w), γ(t) = μ
    SkippedTooFar,    // |t − μ(w)| > 1
    Failed,
};

inline std::string to_string(CurveStatus s) {
    switch (s) {
    case CurveStatus::Certified: return "certified";
    case CurveStatus::SkippedReflexive: return "skipped (t = mu(w))";
    case CurveStatus::SkippedTooFar: return "skipped (|t - mu(w)| > 1)";
    case CurveStatus::Failed: return "failed";
    }
    return "unknown";
}

struct CurveSample {
    Rational t;
    Rational expected_alpha; // |t − μ(w)|
    CurveStatus status = CurveStatus::Failed;
};

struct CurveProfile {
    std::vector<CurveSample> samples;

    [[nodiscard]] bool ok() const {
        for (const auto& s : samples)
            if (s.status == CurveStatus::Failed)
                return false;
        return true;
    }
};

/// γ(t) ≡ μ [|t − μ(w)|] at each sampled t.
inline CurveProfile curve_neighbouring_profile(const TeleportFrame& frame, const Measure& mu,
                                               const std::vector<Rational>& samples, const DistanceMatrix& d) {
    const Rational at_mu = mu[frame.w];
    if (mu[frame.u] + at_mu != frame.c || teleport_curve(frame, at_mu) != mu)
        throw Error(ErrorCode::IncompatibleMeasure, "the teleport curve does not pass through μ");
    CurveProfile profile;
    for (const Rational& t : samples) {
        CurveSample s{t, abs(t - at_mu)};
        if (s.expected_alpha == 0) {
            s.status = CurveStatus::SkippedReflexive;
        } else if (s.expected_alpha > 1) {
            s.status = CurveStatus::SkippedTooFar;
        } else {
            auto cert = check_neighbouring(teleport_curve(frame, t), mu, d);
            s.status = cert && cert->alpha == s.expected_alpha ? CurveStatus::Certified : CurveStatus::Failed;
        }
        profile.samples.push_back(std::move(s));
    }
    return profile;
}

/// k values t = c·j/64 with j uniform in [0, 64].
inline std::vector<Rational> sample_curve_times(Rng& rng, const Rational& c, std::size_t k) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(c * Rational(static_cast<long>(uniform_below(rng, 65)), 64));
    return out;
}

/// (p1): distinct support points carry distinct weights.
inline bool satisfies_p1(const Measure& mu) {
    std::vector<Rational> w;
    for (const auto& [v, x] : mu.entries())
        w.push_back(x);
    std::sort(w.begin(), w.end());
    return std::adjacent_find(w.begin(), w.end()) == w.end();
}

/// (p2): μ(x) + μ(y) ≠ μ(z) for pairwise different x, y, z in the support.
inline bool satisfies_p2(const Measure& mu) {
    std::vector<Rational> w;
    for (const auto& [v, x] : mu.entries())
        w.push_back(x);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            for (std::size_t k = 0; k < w.size(); ++k)
                if (k != i && k != j && w[i] + w[j] == w[k])
                    return false;
    return true;
}

struct GenericityReport {
    Measure input;
    Measure output;
    int K = 0;              // max distance within the support
    Rational epsilon;       // requested ε
    Rational epsilon_used;  // ε̃
    Rational radius;        // ε̃^p / (K^p L^2), 0 when ν is returned unchanged
    bool p1 = false;
    bool p2 = false;
    std::optional<Coupling> coupling; // shared-mass coupling of (ν, ν′)
    Rational bound;                   // its cost, an upper bound on cost_p(ν, ν′)
    std::size_t attempts = 0;
    bool unchanged = false;
};

inline constexpr std::size_t kGenericityRetryCap = 1000;

/// Keeps the shared mass m_i = min(a_i, c_i) on the diagonal and spreads the
/// residuals ζ, ζ′ proportionally: π(u_i, u_j) = ζ_i ζ′_j / Σζ.
inline Coupling shared_mass_coupling(const Measure& nu, const Measure& nu_prime) {
    PlanEntries e;
    WeightMap zeta, zeta_prime;
    Rational residual = 0;
    for (const auto& [v, a] : nu.entries()) {
        Rational m = std::min(a, nu_prime[v]);
        if (m > 0)
            e[{v, v}] = m;
        if (a > m) {
            zeta[v] = a - m;
            residual += a - m;
        }
    }
    for (const auto& [v, c] : nu_prime.entries())
        if (c > nu[v])
            zeta_prime[v] = c - nu[v];
    for (const auto& [x, a] : zeta)
        for (const auto& [y, b] : zeta_prime)
            e[{x, y}] += a * b / residual;
    return Coupling(std::move(e), nu, nu_prime);
}

/// Perturbs ν inside the cube of radius ε̃^p/(K^p L^2) on the hyperplane
/// Σ c_i = 1 until (p1) and (p2) hold. Rejection sampling over rationals
/// c_i = a_i + r·k_i/(1024 L), k_i ∈ [−1024, 1024], the last coordinate
/// absorbing the sum.
inline GenericityReport genericize(const Measure& nu, const Rational& epsilon, std::uint64_t seed,
                                   const DistanceMatrix& d, unsigned p) {
    detail::check_on_graph(nu, d);
    if (epsilon <= 0)
        throw Error(ErrorCode::EpsilonTooSmall, "ε must be positive, got " + to_string(epsilon));
    GenericityReport r{nu, nu};
    r.epsilon = epsilon;
    r.epsilon_used = epsilon;
    const auto support = nu.support();
    const std::size_t L = support.size();
    for (Vertex a : support)
        for (Vertex b : support)
            r.K = std::max(r.K, d(a, b));
    r.p1 = satisfies_p1(nu);
    r.p2 = satisfies_p2(nu);
    if (L == 1 || (r.p1 && r.p2)) {
        r.unchanged = true;
        r.coupling = diagonal_coupling(nu);
        return r;
    }

    Rational min_weight = nu[support.front()];
    for (Vertex v : support)
        min_weight = std::min(min_weight, nu[v]);
    const Rational scale = Rational(ipow(Integer(r.K), p) * Integer(L * L));
    Rational radius = ipow(r.epsilon_used, p) / scale;
    for (int halvings = 0; radius >= min_weight; ++halvings) {
        if (halvings == 4096)
            throw Error(ErrorCode::EpsilonTooSmall, "no ε̃ <= ε keeps every weight positive");
        r.epsilon_used /= 2;
        radius = ipow(r.epsilon_used, p) / scale;
    }
    r.radius = radius;

    Rng rng(seed);
    const Rational step = radius / Rational(static_cast<long>(1024 * L));
    for (r.attempts = 1; r.attempts <= kGenericityRetryCap; ++r.attempts) {
        WeightMap c;
        Rational sum = 0;
        for (std::size_t i = 0; i + 1 < L; ++i) {
            const long k = static_cast<long>(uniform_below(rng, 2049)) - 1024;
            c[support[i]] = nu[support[i]] + step * k;
            sum += c[support[i]];
        }
        c[support.back()] = 1 - sum;
        Measure candidate = make_measure(c);
        if (satisfies_p1(candidate) && satisfies_p2(candidate)) {
            r.output = std::move(candidate);
            r.p1 = r.p2 = true;
            r.coupling = shared_mass_coupling(nu, r.output);
            r.bound = coupling_cost(*r.coupling, d, p);
            return r;
        }
    }
    throw Error(ErrorCode::RetryCapExhausted, "no generic point found in " + std::to_string(kGenericityRetryCap) +
                                                  " draws");
}

struct GenericityCheck {
    bool ok = true;
    std::string report;
};

/// Re-derives every claim of a GenericityReport from scratch.
inline GenericityCheck check_genericity(const GenericityReport& r, const DistanceMatrix& d, unsigned p) {
    auto fail = [](std::string why) { return GenericityCheck{false, std::move(why)}; };
    if (!satisfies_p1(r.output))
        return fail("(p1) violated");
    if (!satisfies_p2(r.output))
        return fail("(p2) violated");
    if (r.output.support() != r.input.support())
        return fail("support changed");
    if (!r.coupling)
        return fail("no coupling");
    if (auto c = validate_coupling(*r.coupling); !c)
        return fail("shared-mass coupling invalid: " + c.report);
    if (r.coupling->source() != r.input || r.coupling->target() != r.output)
        return fail("coupling marginals are not (ν, ν′)");
    const Rational bound = coupling_cost(*r.coupling, d, p);
    if (bound != r.bound)
        return fail("reported bound " + to_string(r.bound) + " differs from coupling cost " + to_string(bound));
    if (!(bound <= ipow(r.epsilon_used, p)) || !(bound < ipow(r.epsilon, p)))
        return fail("bound " + to_string(bound) + " is not below ε^p");
    for (Vertex v : r.input.support())
        if (abs(r.output[v] - r.input[v]) > r.radius)
            return fail("coordinate moved beyond the cube");
    if (solve_ot(r.input, r.output, d, p).cost_p > bound)
        return fail("optimal cost exceeds the coupling bound");
    return {};
}

} // namespace wgraph

#endif
