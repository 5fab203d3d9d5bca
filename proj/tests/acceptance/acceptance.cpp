// Acceptance run over the fixture graphs and groups. Prints one PASS/FAIL line
// per criterion and exits non-zero if any criterion fails.
//
// usage: acceptance <fixtures-dir> <wgraph-cli>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wgraph/automorphisms.hpp"
#include "wgraph/frucht.hpp"
#include "wgraph/io.hpp"
#include "wgraph/neighbouring.hpp"
#include "wgraph/rigidity.hpp"
#include "wgraph/suite.hpp"
#include "wgraph/transport.hpp"

namespace fs = std::filesystem;
using namespace wgraph;

namespace {

constexpr std::uint64_t kSeed = 0;
constexpr std::size_t kPairs = 200;
constexpr unsigned kExponents[] = {1, 2, 3};

struct Fixture {
    std::string name;
    Graph graph;
    DistanceMatrix d;
    std::vector<MeasurePair> pairs;
};

// Collects failures for one criterion; the first few are printed.
class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    void expect(bool ok, const std::string& what) {
        ++checked_;
        if (ok)
            return;
        if (failures_.size() < 5)
            failures_.push_back(what);
        ++failed_;
    }

    void note(std::string text) { notes_.push_back(std::move(text)); }

    bool report() const {
        const bool ok = failed_ == 0 && checked_ > 0;
        std::cout << (ok ? "PASS " : "FAIL ") << number_ << ". " << title_ << " (" << checked_ - failed_ << "/"
                  << checked_ << " checks)";
        for (const auto& n : notes_)
            std::cout << "; " << n;
        std::cout << '\n';
        for (const auto& f : failures_)
            std::cout << "       " << f << '\n';
        return ok;
    }

private:
    int number_;
    std::string title_;
    std::size_t checked_ = 0, failed_ = 0;
    std::vector<std::string> failures_, notes_;
};

std::string pair_text(const Fixture& f, const MeasurePair& pr, unsigned p) {
    return f.name + " p=" + std::to_string(p) + " mu=" + describe(f.graph, pr.first) +
           " nu=" + describe(f.graph, pr.second);
}

std::vector<Fixture> load_fixtures(const fs::path& dir) {
    std::vector<Fixture> out;
    for (const char* name : {"p3", "p4", "c4", "k3", "grid3x3"}) {
        Graph g = graph_from_json(read_json_file((dir / "graphs" / (std::string(name) + ".json")).string()));
        DistanceMatrix d = shortest_path_matrix(g);
        Rng rng(kSeed);
        auto pairs = detail::suite_pairs(g, d, rng, kPairs);
        out.push_back({name, std::move(g), std::move(d), std::move(pairs)});
    }
    return out;
}

bool dirac_embedding(const std::vector<Fixture>& fixtures) {
    Criterion c(1, "Dirac embedding: cost_p(delta_x, delta_y) = dist^p");
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (Vertex x = 0; x < f.graph.size(); ++x)
                for (Vertex y = 0; y < f.graph.size(); ++y) {
                    const Rational cost = solve_ot(dirac(x), dirac(y), f.d, p).cost_p;
                    c.expect(cost == ipow(Rational(f.d(x, y)), p),
                             f.name + " p=" + std::to_string(p) + " " + f.graph.name(x) + "," + f.graph.name(y) +
                                 " cost " + to_string(cost));
                }
    return c.report();
}

bool oracle_equivalence(const std::vector<Fixture>& fixtures) {
    Criterion c(2, "solver agrees with the extreme-point oracle");
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (const auto& pr : f.pairs) {
                if (pr.first.support_size() > 4 || pr.second.support_size() > 4)
                    continue;
                const Rational a = solve_ot(pr.first, pr.second, f.d, p).cost_p;
                const Rational b = oracle_ot(pr.first, pr.second, f.d, p);
                c.expect(a == b, pair_text(f, pr, p) + " solver " + to_string(a) + " oracle " + to_string(b));
            }
    return c.report();
}

bool interpolation_membership(const std::vector<Fixture>& fixtures) {
    Criterion c(3, "interpolate(mu, nu, s) lies in B_s for s in {1/4, 1/2, 3/4}");
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (const auto& pr : f.pairs)
                for (const Rational& s : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
                    c.expect(bs_membership(interpolate(pr.first, pr.second, s), pr.first, pr.second, s, f.d, p),
                             pair_text(f, pr, p) + " s=" + to_string(s));
    return c.report();
}

bool neighbouring_distance(const std::vector<Fixture>& fixtures) {
    Criterion c(4, "certified alpha-neighbouring pairs have cost_p = alpha");
    std::size_t certified = 0;
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (const auto& pr : f.pairs)
                if (auto cert = check_neighbouring(pr.first, pr.second, f.d)) {
                    ++certified;
                    const Rational cost = solve_ot(pr.first, pr.second, f.d, p).cost_p;
                    c.expect(cost == cert->alpha,
                             pair_text(f, pr, p) + " alpha " + to_string(cert->alpha) + " cost " + to_string(cost));
                }
    const Graph& p3 = fixtures.front().graph;
    const DistanceMatrix& d3 = fixtures.front().d;
    Measure mu = make_measure({{p3.index_of("v0"), Rational(1, 2)}, {p3.index_of("v1"), Rational(1, 2)}});
    Measure nu = dirac(p3, "v1");
    for (unsigned p : kExponents) {
        auto cert = check_neighbouring(mu, nu, d3);
        const Rational cost = solve_ot(mu, nu, d3, p).cost_p;
        c.expect(cert && cert->alpha == Rational(1, 2) && cost == Rational(1, 2),
                 "P3 example p=" + std::to_string(p) + " cost " + to_string(cost));
    }
    c.note(std::to_string(certified) + " certified sampled pairs");
    return c.report();
}

bool witnesses(const std::vector<Fixture>& fixtures) {
    Criterion c(5, "non-neighbouring pairs with cost_p in (0,1] have a second member of B_1/2");
    std::size_t built = 0;
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (const auto& pr : f.pairs) {
                const Rational cost = solve_ot(pr.first, pr.second, f.d, p).cost_p;
                if (cost <= 0 || cost > 1 || check_neighbouring(pr.first, pr.second, f.d))
                    continue;
                try {
                    auto w = bs_witness(f.graph, pr.first, pr.second, f.d, p);
                    const Rational half(1, 2);
                    c.expect(w && w->xi != interpolate(pr.first, pr.second, half) &&
                                 bs_membership(w->xi, pr.first, pr.second, half, f.d, p),
                             pair_text(f, pr, p) + " witness missing or not verified");
                    ++built;
                } catch (const Error& e) {
                    c.expect(false, pair_text(f, pr, p) + " " + e.what());
                }
            }
    c.note(std::to_string(built) + " witnesses built");

    auto worked_example = [&](const Fixture& f, const WeightMap& mu_w, const WeightMap& nu_w,
                              const WeightMap& expected_w, const Rational& budget, const std::string& label) {
        Measure mu = make_measure(mu_w), nu = make_measure(nu_w), expected = make_measure(expected_w);
        const Rational half(1, 2);
        auto q = make_bs_query(mu, nu, half, f.d, 1);
        auto m = check_bs_membership(expected, q, f.d, 1);
        std::optional<BsWitness> w;
        try {
            w = bs_witness(f.graph, mu, nu, f.d, 1);
        } catch (const Error&) {
        }
        std::ostringstream why;
        why << label << ": expected xi=" << describe(f.graph, expected) << " costs "
            << to_string(m.cost_from_mu) << ", " << to_string(m.cost_to_nu) << " against budgets "
            << to_string(q.budget_from_mu) << ", " << to_string(q.budget_to_nu)
            << "; library witness " << (w ? describe(f.graph, w->xi) : std::string("none"));
        c.expect(q.budget_from_mu == budget && q.budget_to_nu == budget && m.member && w && w->xi == expected,
                 why.str());
    };
    const Fixture& p3 = fixtures[0];
    const Fixture& p4 = fixtures[1];
    const Rational h(1, 2), q(1, 4);
    worked_example(p4, {{0, h}, {2, h}}, {{1, h}, {3, h}},
                   {{0, Rational(3, 8)}, {1, Rational(3, 8)}, {2, Rational(1, 8)}, {3, Rational(1, 8)}}, h,
                   "P4 pair-perturbation example");
    worked_example(p3, {{1, Rational(3, 4)}, {0, q}}, {{1, Rational(3, 4)}, {2, q}},
                   {{0, Rational(1, 16)}, {1, Rational(7, 8)}, {2, Rational(1, 16)}}, q,
                   "P3 path-perturbation example");
    return c.report();
}

bool pushforward_neighbouring(const std::vector<Fixture>& fixtures) {
    Criterion c(6, "automorphism push-forwards preserve alpha-neighbouring");
    for (const auto& f : fixtures) {
        const auto autos = enumerate_automorphisms(f.graph);
        for (const auto& pr : f.pairs)
            for (const auto& psi : autos) {
                auto before = check_neighbouring(pr.first, pr.second, f.d);
                auto after = check_neighbouring(pushforward(psi, pr.first), pushforward(psi, pr.second), f.d);
                const bool same = before.has_value() == after.has_value() && (!before || before->alpha == after->alpha);
                c.expect(same, pair_text(f, pr, 1) + " under an automorphism");
            }
    }
    return c.report();
}

bool teleport(const std::vector<Fixture>& fixtures) {
    Criterion c(7, "teleport curve endpoints and neighbouring certificates");
    std::size_t frames = 0, certified = 0;
    for (const auto& f : fixtures) {
        Rng rng(kSeed);
        const auto edges = f.graph.edges();
        for (const auto& pr : f.pairs) {
            const Measure& mu = pr.first;
            std::vector<std::pair<Vertex, Vertex>> live;
            for (auto [a, b] : edges) {
                if (mu[a] + mu[b] > 0) {
                    live.emplace_back(a, b);
                    live.emplace_back(b, a);
                }
            }
            if (live.empty())
                continue;
            auto [u, w] = live[uniform_below(rng, live.size())];
            auto frame = teleport_extremes(mu, u, w, f.d);
            ++frames;
            const std::string where = f.name + " mu=" + describe(f.graph, mu) + " u=" + f.graph.name(u) +
                                      " w=" + f.graph.name(w);
            c.expect(teleport_curve(frame, Rational(0)) == frame.mu_star, where + " gamma(0) != mu_star");
            c.expect(teleport_curve(frame, frame.c) == frame.mu_low, where + " gamma(c) != mu_low");
            c.expect(teleport_curve(frame, mu[w]) == mu, where + " gamma(mu(w)) != mu");
            auto profile = curve_neighbouring_profile(frame, mu, sample_curve_times(rng, frame.c, 8), f.d);
            for (const auto& s : profile.samples) {
                c.expect(s.status != CurveStatus::Failed, where + " t=" + to_string(s.t) + " not certified");
                certified += s.status == CurveStatus::Certified;
            }
        }
    }
    c.note(std::to_string(frames) + " frames, " + std::to_string(certified) + " certified samples");
    return c.report();
}

bool genericity(const std::vector<Fixture>& fixtures) {
    Criterion c(8, "genericize meets (p1), (p2) and the coupling bound");
    std::size_t exhausted = 0;
    const Rational epsilon(1, 10);
    for (const auto& f : fixtures)
        for (unsigned p : kExponents)
            for (std::uint64_t run = 0; run < 50; ++run) {
                const Measure& nu = f.pairs[run].second;
                try {
                    auto r = genericize(nu, epsilon, kSeed + run, f.d, p);
                    auto check = check_genericity(r, f.d, p);
                    c.expect(check.ok, f.name + " p=" + std::to_string(p) + " run " + std::to_string(run) + ": " +
                                           check.report);
                } catch (const Error& e) {
                    exhausted += e.code() == ErrorCode::RetryCapExhausted;
                    c.expect(false, f.name + " p=" + std::to_string(p) + " run " + std::to_string(run) + ": " +
                                        e.what());
                }
            }
    c.note(std::to_string(exhausted) + " retry-cap exhaustions");
    return c.report();
}

struct GroupFixture {
    std::string name;
    FiniteGroup group;
};

std::vector<GroupFixture> load_groups(const fs::path& dir) {
    std::vector<GroupFixture> out;
    for (const char* name : {"trivial", "z2", "z3", "z2xz2", "s3", "z6"})
        out.push_back({name, group_from_json(read_json_file((dir / "groups" / (std::string(name) + ".json")).string()))});
    return out;
}

bool isom_equals_aut(const std::vector<Fixture>& fixtures, const std::vector<GroupFixture>& groups) {
    Criterion c(9, "Isom = Aut on fixtures and Frucht graphs");
    for (const auto& f : fixtures)
        c.expect(isometries_equal_automorphisms(f.graph), f.name);
    for (const auto& h : groups) {
        Graph g = frucht_graph(h.group);
        c.expect(isometries_equal_automorphisms(g, 4096), "Frucht graph of " + h.name);
    }
    return c.report();
}

bool prescribed(const std::vector<GroupFixture>& groups) {
    Criterion c(10, "prescribed isometry groups, under 10 s each");
    double slowest = 0;
    for (const auto& h : groups) {
        const auto start = std::chrono::steady_clock::now();
        auto r = prescribed_isometry_space(h.group, 1);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        slowest = std::max(slowest, seconds);
        c.expect(r.aut_order == h.group.order() && r.isomorphism.has_value() && r.passed(),
                 h.name + ": |Aut| = " + std::to_string(r.aut_order));
        c.expect(seconds < 10.0, h.name + " took " + std::to_string(seconds) + " s");
    }
    std::ostringstream note;
    note.precision(3);
    note << "slowest " << slowest << " s";
    c.note(note.str());
    return c.report();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool determinism(const fs::path& fixtures, const std::string& cli) {
    Criterion c(11, "identical suite invocations give byte-identical reports");
    const fs::path dir = fs::temp_directory_path() / ("wgraph-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string graph = (fixtures / "graphs" / "p4.json").string();
    std::vector<std::string> reports;
    const fs::path out = dir / "suite.json";
    for (int k = 0; k < 2; ++k) {
        const std::string cmd = "\"" + cli + "\" --p 1 --seed 0 --json \"" + out.string() +
                                "\" suite --graph \"" + graph + "\" --samples 200 > /dev/null";
        c.expect(std::system(cmd.c_str()) == 0, "suite run " + std::to_string(k) + " did not exit 0");
        reports.push_back(slurp(out));
    }
    c.expect(!reports[0].empty() && reports[0] == reports[1], "reports differ");
    fs::remove_all(dir);
    return c.report();
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <fixtures-dir> <wgraph-cli>\n";
        return 2;
    }
    const fs::path dir = argv[1];
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto fixtures = load_fixtures(dir);
        const auto groups = load_groups(dir);
        int failed = 0;
        failed += !dirac_embedding(fixtures);
        failed += !oracle_equivalence(fixtures);
        failed += !interpolation_membership(fixtures);
        failed += !neighbouring_distance(fixtures);
        failed += !witnesses(fixtures);
        failed += !pushforward_neighbouring(fixtures);
        failed += !teleport(fixtures);
        failed += !genericity(fixtures);
        failed += !isom_equals_aut(fixtures, groups);
        failed += !prescribed(groups);
        failed += !determinism(dir, argv[2]);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (11 - failed) << "/11 criteria passed in " << seconds << " s\n";
        return failed == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
