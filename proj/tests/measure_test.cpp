#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "wgraph/measure.hpp"

namespace wgraph {
namespace {

using testing::M;
using testing::Q;

TEST(MakeMeasure, ValidAndInvalid) {
    Measure m = M({{0, "1/2"}, {2, "1/2"}});
    EXPECT_EQ(m.support(), (std::vector<Vertex>{0, 2}));
    try {
        M({{0, "1/2"}, {1, "1/3"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MassNotOne);
        EXPECT_NE(std::string(e.what()).find("5/6"), std::string::npos);
    }
    try {
        M({{0, "3/2"}, {1, "-1/2"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeWeight);
    }
}

TEST(MakeMeasure, DropsZeroEntries) {
    Measure m = M({{0, "1"}, {3, "0"}});
    EXPECT_EQ(m.support_size(), 1u);
    EXPECT_FALSE(m.contains(3));
}

TEST(Dirac, UnitMass) {
    Graph g = testing::path_graph(3);
    EXPECT_EQ(dirac(g, "v0"), M({{0, "1"}}));
    EXPECT_EQ(dirac(g, "v1"), M({{1, "1"}}));
    EXPECT_THROW(dirac(g, "v9"), Error);
    EXPECT_THROW(dirac(g, Vertex{7}), Error);
}

TEST(Pushforward, Examples) {
    Measure mu = M({{0, "1/3"}, {1, "2/3"}});
    EXPECT_EQ(pushforward(Permutation::identity(3), mu), mu);
    EXPECT_EQ(pushforward(Permutation({1, 0, 2}), mu), M({{0, "2/3"}, {1, "1/3"}}));
    Permutation rotation({1, 2, 3, 0});
    EXPECT_EQ(pushforward(rotation, dirac(0)), dirac(1));
    try {
        pushforward(Permutation({1, 0}), M({{3, "1"}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
    }
}

// (ψ∘χ)_# = ψ_# ∘ χ_# over random permutations and measures.
TEST(Pushforward, HomomorphismProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::size_t> a(6), b(6);
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), 0);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        Permutation psi(a), chi(b);
        WeightMap w;
        for (Vertex v = 0; v < 6; ++v)
            w[v] = Rational(static_cast<long>(rng() % 5));
        Rational total = 0;
        for (auto& [v, x] : w)
            total += x;
        if (total == 0)
            continue;
        for (auto& [v, x] : w)
            x /= total;
        Measure mu = make_measure(w);
        EXPECT_EQ(pushforward(compose(psi, chi), mu), pushforward(psi, pushforward(chi, mu)));
    }
}

TEST(Interpolate, Examples) {
    Measure mu = M({{0, "1/2"}, {1, "1/2"}});
    Measure nu = dirac(1);
    EXPECT_EQ(interpolate(mu, nu, 0), mu);
    EXPECT_EQ(interpolate(mu, nu, 1), nu);
    EXPECT_EQ(interpolate(dirac(0), dirac(2), Q("1/2")), M({{0, "1/2"}, {2, "1/2"}}));
    EXPECT_EQ(interpolate(mu, nu, Q("1/2")), M({{0, "1/4"}, {1, "3/4"}}));
    EXPECT_THROW(interpolate(mu, nu, Q("3/2")), Error);
    EXPECT_THROW(interpolate(mu, nu, Q("-1/5")), Error);
}

TEST(Difference, Examples) {
    Measure mu = M({{0, "1/2"}, {1, "1/2"}});
    EXPECT_TRUE(difference(mu, mu).empty());
    SignedMass d = difference(mu, dirac(1));
    EXPECT_EQ(d.support_size(), 2u);
    EXPECT_EQ(d[0], Q("1/2"));
    EXPECT_EQ(d[1], Q("-1/2"));
    SignedMass e = difference(dirac(0), dirac(2));
    EXPECT_EQ(e[0], 1);
    EXPECT_EQ(e[2], -1);
    EXPECT_EQ(e.total(), 0);
}

TEST(PMoment, Examples) {
    auto d = shortest_path_matrix(testing::path_graph(3));
    EXPECT_EQ(p_moment(dirac(1), 1, 3, d), 0);
    EXPECT_EQ(p_moment(M({{0, "1/2"}, {2, "1/2"}}), 0, 2, d), 2);
    EXPECT_EQ(p_moment(M({{0, "1/4"}, {1, "3/4"}}), 0, 1, d), Q("3/4"));
    EXPECT_THROW(p_moment(dirac(0), 5, 1, d), Error);
}

} // namespace
} // namespace wgraph
