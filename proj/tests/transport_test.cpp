#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "wgraph/sampling.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {
namespace {

using testing::M;
using testing::Q;

TEST(DiagonalCoupling, Examples) {
    auto d = shortest_path_matrix(testing::path_graph(3));
    Coupling a = diagonal_coupling(dirac(0));
    EXPECT_EQ(a.entries().size(), 1u);
    EXPECT_EQ(a(0, 0), 1);
    Measure mu = M({{0, "1/2"}, {2, "1/2"}});
    Coupling b = diagonal_coupling(mu);
    EXPECT_EQ(b(0, 0), Q("1/2"));
    EXPECT_EQ(b(2, 2), Q("1/2"));
    EXPECT_EQ(b(0, 2), 0);
    for (unsigned p = 1; p <= 3; ++p)
        EXPECT_EQ(coupling_cost(b, d, p), 0);
}

TEST(ValidateCoupling, Examples) {
    Measure mu = M({{0, "1/3"}, {1, "2/3"}});
    Measure nu = M({{1, "1/4"}, {2, "3/4"}});
    EXPECT_TRUE(validate_coupling(product_coupling(mu, nu)));
    EXPECT_TRUE(validate_coupling(diagonal_coupling(mu)));
    Coupling wrong(diagonal_coupling(mu).entries(), mu, nu);
    auto check = validate_coupling(wrong);
    EXPECT_FALSE(check);
    EXPECT_FALSE(check.report.empty());
}

TEST(CouplingCost, Examples) {
    auto p4 = shortest_path_matrix(testing::path_graph(4));
    Measure mu = M({{0, "1/2"}, {2, "1/2"}});
    Measure nu = M({{1, "1/2"}, {3, "1/2"}});
    Coupling pi({{{0, 1}, Q("1/2")}, {{2, 3}, Q("1/2")}}, mu, nu);
    EXPECT_EQ(coupling_cost(pi, p4, 1), 1);

    auto p3 = shortest_path_matrix(testing::path_graph(3));
    Coupling sigma({{{0, 2}, Q("1/4")}, {{1, 1}, Q("3/4")}}, M({{0, "1/4"}, {1, "3/4"}}), M({{1, "3/4"}, {2, "1/4"}}));
    EXPECT_EQ(coupling_cost(sigma, p3, 2), 1);
}

TEST(SolveOt, DiracPairsRecoverTheMetric) {
    for (const Graph& g : {testing::path_graph(4), testing::cycle_graph(5), testing::grid_graph(3, 3)}) {
        auto d = shortest_path_matrix(g);
        for (unsigned p = 1; p <= 3; ++p)
            for (Vertex x = 0; x < g.size(); ++x)
                for (Vertex y = 0; y < g.size(); ++y) {
                    auto r = solve_ot(dirac(x), dirac(y), d, p);
                    EXPECT_EQ(r.cost_p, Rational(ipow(Integer(d(x, y)), p)));
                    EXPECT_EQ(r.distance, std::to_string(d(x, y)) + ".000000000000");
                }
    }
}

TEST(SolveOt, WorkedExamples) {
    auto c4 = shortest_path_matrix(testing::cycle_graph(4));
    Measure uniform = M({{0, "1/4"}, {1, "1/4"}, {2, "1/4"}, {3, "1/4"}});
    EXPECT_EQ(solve_ot(dirac(0), uniform, c4, 2).cost_p, Q("3/2"));

    auto p4 = shortest_path_matrix(testing::path_graph(4));
    Measure mu = M({{0, "1/2"}, {2, "1/2"}});
    Measure nu = M({{1, "1/2"}, {3, "1/2"}});
    auto r = solve_ot(mu, nu, p4, 1);
    EXPECT_EQ(r.cost_p, 1);
    EXPECT_EQ(oracle_ot(mu, nu, p4, 1), 1);
    EXPECT_TRUE(validate_coupling(r.plan));
    EXPECT_EQ(coupling_cost(r.plan, p4, 1), r.cost_p);
}

TEST(SolveOt, GraphMismatch) {
    auto p3 = shortest_path_matrix(testing::path_graph(3));
    try {
        solve_ot(dirac(0), dirac(5), p3, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GraphMismatch);
    }
}

TEST(WassersteinDistance, Examples) {
    auto p3 = shortest_path_matrix(testing::path_graph(3));
    // α = 1/2 neighbouring pair: d_2 = sqrt(1/2).
    auto w = wasserstein_distance(M({{0, "1/2"}, {1, "1/2"}}), dirac(1), p3, 2);
    EXPECT_EQ(w.cost_p, Q("1/2"));
    EXPECT_EQ(w.distance, "0.707106781187");
    auto z = wasserstein_distance(dirac(1), dirac(1), p3, 2);
    EXPECT_EQ(z.cost_p, 0);
    EXPECT_EQ(z.distance, "0.000000000000");
    auto e = wasserstein_distance(dirac(0), dirac(2), p3, 3);
    EXPECT_EQ(e.cost_p, 8);
    EXPECT_EQ(e.distance, "2.000000000000");
}

TEST(OracleOt, Basics) {
    auto p4 = shortest_path_matrix(testing::path_graph(4));
    EXPECT_EQ(oracle_ot(dirac(0), dirac(3), p4, 2), 9);
    Measure mu = M({{0, "1/3"}, {3, "2/3"}});
    EXPECT_EQ(oracle_ot(mu, mu, p4, 3), 0);
    auto k5 = shortest_path_matrix(testing::complete_graph(5));
    Measure wide = M({{0, "1/5"}, {1, "1/5"}, {2, "1/5"}, {3, "1/5"}, {4, "1/5"}});
    try {
        oracle_ot(wide, wide, k5, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLarge);
    }
}

// All measures on P4 whose weights have denominator 1..4.
std::vector<Measure> small_denominator_measures() {
    std::set<std::vector<Rational>> seen;
    std::vector<Measure> out;
    for (long q = 1; q <= 4; ++q)
        for (long a = 0; a <= q; ++a)
            for (long b = 0; a + b <= q; ++b)
                for (long c = 0; a + b + c <= q; ++c) {
                    std::vector<Rational> w{Rational(a, q), Rational(b, q), Rational(c, q), Rational(q - a - b - c, q)};
                    if (!seen.insert(w).second)
                        continue;
                    WeightMap m;
                    for (Vertex v = 0; v < 4; ++v)
                        m[v] = w[v];
                    out.push_back(make_measure(m));
                }
    return out;
}

TEST(OracleOt, AgreesWithSolverOnAllSmallMeasuresOnP4) {
    auto p4 = shortest_path_matrix(testing::path_graph(4));
    auto all = small_denominator_measures();
    ASSERT_EQ(all.size(), 51u); // 35 quarters + 20 thirds − 4 shared Diracs
    for (unsigned p : {1u, 2u})
        for (const auto& mu : all)
            for (const auto& nu : all) {
                auto r = solve_ot(mu, nu, p4, p);
                ASSERT_EQ(r.cost_p, oracle_ot(mu, nu, p4, p));
                ASSERT_TRUE(validate_coupling(r.plan));
            }
}

class TransportProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(TransportProperties, MetricAndBoundsOnGrid) {
    const unsigned p = GetParam();
    Graph g = testing::grid_graph(3, 3);
    auto d = shortest_path_matrix(g);
    Rng rng(100 + p);
    Permutation transpose({0, 3, 6, 1, 4, 7, 2, 5, 8});
    for (int trial = 0; trial < 60; ++trial) {
        Measure mu = random_measure(rng, g.size());
        Measure nu = random_measure(rng, g.size());
        auto forward = solve_ot(mu, nu, d, p);
        auto backward = solve_ot(nu, mu, d, p);
        EXPECT_EQ(forward.cost_p, backward.cost_p);
        EXPECT_EQ(forward.cost_p == 0, mu == nu);
        EXPECT_EQ(solve_ot(mu, mu, d, p).cost_p, 0);
        EXPECT_TRUE(validate_coupling(forward.plan)) << validate_coupling(forward.plan).report;
        for (Vertex x = 0; x < g.size(); ++x)
            EXPECT_GE(forward.cost_p, abs(nu[x] - mu[x]));
        for (const char* s : {"1/4", "1/2", "3/4"}) {
            Measure xi = interpolate(mu, nu, Q(s));
            EXPECT_LE(solve_ot(mu, xi, d, p).cost_p, Q(s) * forward.cost_p);
            EXPECT_LE(solve_ot(xi, nu, d, p).cost_p, (1 - Q(s)) * forward.cost_p);
        }
        EXPECT_EQ(solve_ot(pushforward(transpose, mu), pushforward(transpose, nu), d, p).cost_p, forward.cost_p);
        if (mu.support_size() * nu.support_size() <= 16)
            EXPECT_EQ(oracle_ot(mu, nu, d, p), forward.cost_p);
    }
}

INSTANTIATE_TEST_SUITE_P(Exponents, TransportProperties, ::testing::Values(1u, 2u, 3u));

TEST(SolveOtFloat, MatchesExactForIntegerExponents) {
    Graph g = testing::grid_graph(3, 3);
    auto d = shortest_path_matrix(g);
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Measure mu = random_measure(rng, g.size());
        Measure nu = random_measure(rng, g.size());
        for (unsigned p = 1; p <= 3; ++p) {
            auto exact = solve_ot(mu, nu, d, p);
            auto approx = solve_ot_float(mu, nu, d, static_cast<double>(p));
            EXPECT_NEAR(approx.cost_p, exact.cost_p.convert_to<double>(), kFloatTolerance);
        }
    }
}

TEST(SolveOtFloat, RealExponentProperties) {
    auto d = shortest_path_matrix(testing::path_graph(3));
    auto r = solve_ot_float(dirac(0), dirac(2), d, 1.5);
    EXPECT_NEAR(r.cost_p, std::pow(2.0, 1.5), kFloatTolerance);
    EXPECT_NEAR(r.distance, 2.0, kFloatTolerance);
    // Neighbouring pair: cost is α for every real p.
    auto n = solve_ot_float(M({{0, "1/2"}, {1, "1/2"}}), dirac(1), d, 2.5);
    EXPECT_NEAR(n.cost_p, 0.5, kFloatTolerance);
    EXPECT_THROW(solve_ot_float(dirac(0), dirac(1), d, 0.5), Error);
}

} // namespace
} // namespace wgraph
