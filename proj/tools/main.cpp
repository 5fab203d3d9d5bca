#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "wgraph/automorphisms.hpp"
#include "wgraph/frucht.hpp"
#include "wgraph/io.hpp"
#include "wgraph/neighbouring.hpp"
#include "wgraph/rigidity.hpp"
#include "wgraph/suite.hpp"
#include "wgraph/transport.hpp"

namespace {

using namespace wgraph;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string describe_mass(const Graph& g, const SignedMass& m) {
    std::string out = "{";
    for (const auto& [v, w] : m.entries())
        out += (out.size() > 1 ? ", " : "") + g.name(v) + ": " + to_string(w);
    return out + "}";
}

struct Globals {
    std::string p_text = "1";
    bool float_mode = false;
    std::uint64_t seed = 0;
    std::string json_out;
};

// One invocation: loaded inputs with their digests, checks, exit status.
class Run {
public:
    Run(const Globals& globals, std::vector<std::string> argv) : globals_(globals) {
        report_.command = std::move(argv);
        report_.seed = globals.seed;
    }

    Json load(const std::string& path) {
        report_.input_digests.emplace_back(path, sha256_file(path));
        return read_json_file(path);
    }
    Graph graph(const std::string& path) { return graph_from_json(load(path)); }
    Measure measure(const Graph& g, const std::string& path) { return measure_from_json(g, load(path)); }

    [[nodiscard]] unsigned exact_p() const {
        if (globals_.float_mode)
            throw Error(ErrorCode::BadParameter, "--float-mode is only supported by 'distance'");
        static const std::regex integer(R"(^[0-9]{1,6}$)");
        if (!std::regex_match(globals_.p_text, integer) || std::stoul(globals_.p_text) == 0)
            throw Error(ErrorCode::BadParameter, "--p must be an integer >= 1 (use --float-mode for real p)");
        return static_cast<unsigned>(std::stoul(globals_.p_text));
    }

    [[nodiscard]] double real_p() const {
        std::size_t used = 0;
        double p = 0;
        try {
            p = std::stod(globals_.p_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != globals_.p_text.size() || !(p >= 1.0))
            throw Error(ErrorCode::BadParameter, "--p must be a real number >= 1");
        return p;
    }

    [[nodiscard]] bool float_mode() const { return globals_.float_mode; }
    [[nodiscard]] std::uint64_t seed() const { return globals_.seed; }
    Json& results() { return report_.results; }

    void check(const std::string& name, bool ok) {
        report_.checks.emplace_back(name, ok);
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    }

    int finish() {
        if (!globals_.json_out.empty())
            write_json_file(globals_.json_out, report_.to_json());
        return report_.passed() ? kOk : kCheckFailed;
    }

private:
    Globals globals_;
    RunReport report_;
};

struct PairArgs {
    std::string graph, mu, nu;
};

int cmd_distance(Run& run, const PairArgs& a, const std::string& plan_out) {
    Graph g = run.graph(a.graph);
    Measure mu = run.measure(g, a.mu);
    Measure nu = run.measure(g, a.nu);
    DistanceMatrix d = shortest_path_matrix(g);
    if (run.float_mode()) {
        const double p = run.real_p();
        auto r = solve_ot_float(mu, nu, d, p);
        std::ostringstream out;
        out.precision(15);
        out << "cost_p   " << r.cost_p << " (floating mode, tolerance " << kFloatTolerance << ")\n"
            << "distance " << r.distance << '\n';
        std::cout << out.str();
        run.results() = {{"mode", "float"}, {"p", p}, {"cost_p", r.cost_p}, {"distance", r.distance}};
        return run.finish();
    }
    const unsigned p = run.exact_p();
    auto r = solve_ot(mu, nu, d, p);
    std::cout << "cost_p   " << to_string(r.cost_p) << "\ndistance " << r.distance << '\n';
    Json plan = plan_to_json(g, r.plan, r.cost_p);
    run.results() = {{"mode", "exact"}, {"p", p}, {"cost_p", to_string(r.cost_p)}, {"distance", r.distance},
                     {"plan", plan}};
    run.check("plan is a coupling of (mu, nu)", validate_coupling(r.plan).ok);
    run.check("plan cost equals cost_p", coupling_cost(r.plan, d, p) == r.cost_p);
    if (!plan_out.empty())
        write_json_file(plan_out, plan);
    return run.finish();
}

int cmd_neighbouring(Run& run, const PairArgs& a) {
    Graph g = run.graph(a.graph);
    Measure mu = run.measure(g, a.mu);
    Measure nu = run.measure(g, a.nu);
    DistanceMatrix d = shortest_path_matrix(g);
    const unsigned p = run.exact_p();
    auto cert = check_neighbouring(mu, nu, d);
    const Rational cost = solve_ot(mu, nu, d, p).cost_p;
    std::cout << "cost_p " << to_string(cost) << '\n';
    if (!cert) {
        std::cout << "none\n";
        run.results() = {{"cost_p", to_string(cost)}, {"certificate", nullptr}};
        return run.finish();
    }
    std::cout << "certificate u=" << g.name(cert->u) << " v=" << g.name(cert->v) << " alpha=" << to_string(cert->alpha)
              << " eta=" << describe_mass(g, cert->eta) << '\n';
    run.results() = {{"cost_p", to_string(cost)}, {"certificate", certificate_to_json(g, *cert)}};
    run.check("certificate reconstructs mu and nu", cert->source() == mu && cert->target() == nu);
    run.check("cost_p equals alpha", cost == cert->alpha);
    return run.finish();
}

int cmd_bs_witness(Run& run, const PairArgs& a, const std::string& s_text, const std::string& xi_path,
                   const std::string& out) {
    Graph g = run.graph(a.graph);
    Measure mu = run.measure(g, a.mu);
    Measure nu = run.measure(g, a.nu);
    DistanceMatrix d = shortest_path_matrix(g);
    const unsigned p = run.exact_p();
    const Rational s = parse_rational(s_text);

    if (!xi_path.empty()) {
        Measure xi = run.measure(g, xi_path);
        auto q = make_bs_query(mu, nu, s, d, p);
        auto m = check_bs_membership(xi, q, d, p);
        std::cout << "cost_p(mu,xi) " << to_string(m.cost_from_mu) << " budget " << to_string(q.budget_from_mu) << '\n'
                  << "cost_p(xi,nu) " << to_string(m.cost_to_nu) << " budget " << to_string(q.budget_to_nu) << '\n';
        run.results() = {{"s", to_string(s)},
                         {"xi", measure_to_json(g, xi)},
                         {"cost_from_mu", to_string(m.cost_from_mu)},
                         {"cost_to_nu", to_string(m.cost_to_nu)},
                         {"budget_from_mu", to_string(q.budget_from_mu)},
                         {"budget_to_nu", to_string(q.budget_to_nu)}};
        run.check("xi is in B_s(mu, nu)", m.member);
        return run.finish();
    }
    if (s != Rational(1, 2))
        throw Error(ErrorCode::BadParameter, "witnesses are built for s = 1/2 only; pass --xi to test membership");
    auto w = bs_witness(g, mu, nu, d, p);
    if (!w) {
        std::cout << "none (neighbouring pair)\n";
        run.results() = {{"witness", nullptr}};
        return run.finish();
    }
    std::cout << "witness " << describe(g, w->xi) << " (" << to_string(w->kind) << ")\n"
              << "cost_p(mu,xi) " << to_string(w->membership.cost_from_mu) << " budget "
              << to_string(w->query.budget_from_mu) << '\n'
              << "cost_p(xi,nu) " << to_string(w->membership.cost_to_nu) << " budget "
              << to_string(w->query.budget_to_nu) << '\n';
    run.results() = {{"witness", measure_to_json(g, w->xi)},
                     {"kind", to_string(w->kind)},
                     {"cost_from_mu", to_string(w->membership.cost_from_mu)},
                     {"cost_to_nu", to_string(w->membership.cost_to_nu)},
                     {"budget", to_string(w->query.budget_from_mu)}};
    run.check("witness differs from the midpoint", w->xi != interpolate(mu, nu, s));
    run.check("witness is in B_1/2(mu, nu)", bs_membership(w->xi, mu, nu, s, d, p));
    if (!out.empty())
        write_json_file(out, measure_to_json(g, w->xi));
    return run.finish();
}

int cmd_teleport(Run& run, const std::string& graph_path, const std::string& mu_path, const std::string& u,
                 const std::string& w, const std::vector<std::string>& t_texts) {
    Graph g = run.graph(graph_path);
    Measure mu = run.measure(g, mu_path);
    DistanceMatrix d = shortest_path_matrix(g);
    auto frame = teleport_extremes(mu, g.index_of(u), g.index_of(w), d);
    std::vector<Rational> ts;
    for (const auto& t : t_texts)
        ts.push_back(parse_rational(t));
    if (ts.empty()) {
        Rng rng(run.seed());
        ts = sample_curve_times(rng, frame.c, 8);
    }
    std::cout << "c        " << to_string(frame.c) << "\nmu_star  " << describe(g, frame.mu_star) << "\nmu_low   "
              << describe(g, frame.mu_low) << '\n';
    Json curve = Json::array();
    auto profile = curve_neighbouring_profile(frame, mu, ts, d);
    for (const auto& sample : profile.samples) {
        Measure gamma = teleport_curve(frame, sample.t);
        std::cout << "t=" << to_string(sample.t) << " gamma=" << describe(g, gamma) << " alpha="
                  << to_string(sample.expected_alpha) << " " << to_string(sample.status) << '\n';
        curve.push_back({{"t", to_string(sample.t)},
                         {"gamma", measure_to_json(g, gamma)},
                         {"alpha", to_string(sample.expected_alpha)},
                         {"status", to_string(sample.status)}});
    }
    run.results() = {{"c", to_string(frame.c)},
                     {"mu_star", measure_to_json(g, frame.mu_star)},
                     {"mu_low", measure_to_json(g, frame.mu_low)},
                     {"curve", std::move(curve)}};
    run.check("gamma(mu(w)) = mu", teleport_curve(frame, mu[frame.w]) == mu);
    if (auto extremes = extremes_neighbouring(frame, d))
        run.check("mu_star and mu_low are c-neighbouring", *extremes);
    run.check("gamma(t) neighbours mu at every sampled t", profile.ok());
    return run.finish();
}

int cmd_genericize(Run& run, const std::string& graph_path, const std::string& nu_path, const std::string& eps,
                   const std::string& out) {
    Graph g = run.graph(graph_path);
    Measure nu = run.measure(g, nu_path);
    DistanceMatrix d = shortest_path_matrix(g);
    const unsigned p = run.exact_p();
    auto r = genericize(nu, parse_rational(eps), run.seed(), d, p);
    std::cout << "output       " << describe(g, r.output) << "\nepsilon_used " << to_string(r.epsilon_used)
              << "\nbound        " << to_string(r.bound) << (r.unchanged ? "\n(input already generic)\n" : "\n");
    run.results() = genericity_to_json(g, r);
    auto check = check_genericity(r, d, p);
    if (!check.ok)
        std::cout << check.report << '\n';
    run.check("(p1), (p2), support and epsilon bound", check.ok);
    if (!out.empty())
        write_json_file(out, measure_to_json(g, r.output));
    return run.finish();
}

int cmd_suite(Run& run, const std::string& graph_path, std::size_t samples) {
    Graph g = run.graph(graph_path);
    const unsigned p = run.exact_p();
    auto report = run_rigidity_suite(g, p, run.seed(), samples);
    for (const auto& prop : report.properties) {
        run.check(prop.name + " (" + std::to_string(prop.checked - prop.failed) + "/" + std::to_string(prop.checked) +
                      ")",
                  prop.passed());
        for (const auto& c : prop.counterexamples)
            std::cout << "  counterexample: " << c << '\n';
    }
    run.results() = suite_report_to_json(report);
    return run.finish();
}

int cmd_automorphisms(Run& run, const std::string& graph_path) {
    Graph g = run.graph(graph_path);
    auto autos = enumerate_automorphisms(g);
    Json list = Json::array();
    for (const auto& psi : autos) {
        std::string line;
        for (Vertex v = 0; v < g.size(); ++v)
            line += (v ? " " : "") + g.name(psi(v));
        std::cout << line << '\n';
        list.push_back(permutation_to_json(g, psi));
    }
    std::cout << "|Aut| = " << autos.size() << '\n';
    run.results() = {{"order", autos.size()}, {"automorphisms", std::move(list)}};
    run.check("Isom(X) = Aut(G)", isometries_equal_automorphisms(g));
    return run.finish();
}

std::optional<std::vector<std::size_t>> parse_generators(const std::string& text) {
    if (text.empty())
        return std::nullopt;
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    static const std::regex index(R"(^[0-9]{1,9}$)");
    while (std::getline(in, item, ',')) {
        if (!std::regex_match(item, index))
            throw Error(ErrorCode::ParseError, "generators are comma-separated element indices");
        out.push_back(std::stoul(item));
    }
    return out;
}

int cmd_frucht(Run& run, const std::string& group_path, const std::string& generators, const std::string& out) {
    FiniteGroup h = group_from_json(run.load(group_path));
    Graph g = frucht_graph(h, parse_generators(generators));
    auto aut = automorphism_group(g, 4096);
    auto phi = groups_isomorphic(aut, h);
    std::cout << "vertices " << g.size() << "\nedges    " << g.edge_count() << "\n|Aut|    " << aut.order()
              << "\n|H|      " << h.order() << '\n';
    run.results() = {{"vertices", g.size()}, {"edges", g.edge_count()}, {"aut_order", aut.order()},
                     {"group_order", h.order()}};
    if (phi)
        run.results()["isomorphism"] = phi->image();
    run.check("|Aut(G)| = |H|", aut.order() == h.order());
    run.check("Aut(G) isomorphic to H", phi.has_value());
    if (!out.empty())
        write_json_file(out, graph_to_json(g));
    return run.finish();
}

int cmd_prescribe(Run& run, const std::string& group_path, const std::string& generators, std::size_t samples) {
    FiniteGroup h = group_from_json(run.load(group_path));
    const unsigned p = run.exact_p();
    PrescribeOptions options;
    options.generators = parse_generators(generators);
    options.samples = samples;
    options.seed = run.seed();
    auto r = prescribed_isometry_space(h, p, options);
    std::cout << "vertices " << r.graph.size() << "\n|Aut|    " << r.aut_order << "\n|H|      " << r.group_order
              << "\npush-forward pairs checked " << r.pushforward.pairs_checked << '\n';
    run.results() = {{"graph", graph_to_json(r.graph)},
                     {"aut_order", r.aut_order},
                     {"group_order", r.group_order},
                     {"pushforward_pairs", r.pushforward.pairs_checked}};
    if (r.isomorphism)
        run.results()["isomorphism"] = r.isomorphism->image();
    run.check("|Aut(G)| = |H|", r.aut_order == r.group_order);
    run.check("Isom(X) = Aut(G)", r.isom_equals_aut);
    run.check("Aut(G) isomorphic to H", r.isomorphism.has_value());
    run.check("push-forwards preserve cost_p", r.pushforward.ok());
    return run.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Wasserstein-space toolkit for graph metric spaces"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--p", globals.p_text, "Exponent: integer >= 1, or real >= 1 with --float-mode");
    app.add_flag("--float-mode", globals.float_mode, "Floating-point transport for real p (distance only)");
    app.add_option("--seed", globals.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--json", globals.json_out, "Write the full run report as JSON");

    PairArgs pair;
    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("--graph", pair.graph, "Graph JSON")->required();
        sub->add_option("--mu", pair.mu, "Measure JSON")->required();
        sub->add_option("--nu", pair.nu, "Measure JSON")->required();
    };

    std::string plan_out, s_text = "1/2", xi_path, out, graph_path, mu_path, u, w, nu_path, epsilon, group_path,
                          generators;
    std::vector<std::string> t_texts;
    std::size_t samples = 200, prescribe_samples = 4;

    auto* distance = app.add_subcommand("distance", "Exact cost_p and distance between two measures");
    add_pair(distance);
    distance->add_option("--plan", plan_out, "Write the optimal plan as JSON");

    auto* neighbouring = app.add_subcommand("neighbouring", "Neighbouring certificate, or none");
    add_pair(neighbouring);

    auto* witness = app.add_subcommand("bs-witness", "Member of B_1/2 other than the midpoint");
    add_pair(witness);
    witness->add_option("--s", s_text, "Interpolation parameter")->capture_default_str();
    witness->add_option("--xi", xi_path, "Test membership of this measure instead");
    witness->add_option("--out", out, "Write the witness measure as JSON");

    auto* teleport = app.add_subcommand("teleport", "Teleport frame and curve along an edge");
    teleport->add_option("--graph", graph_path, "Graph JSON")->required();
    teleport->add_option("--mu", mu_path, "Measure JSON")->required();
    teleport->add_option("--u", u, "Vertex receiving the contested mass in mu_star")->required();
    teleport->add_option("--w", w, "Adjacent vertex")->required();
    teleport->add_option("--t", t_texts, "Curve parameters (default: 8 seeded samples)");

    auto* generic = app.add_subcommand("genericize", "Nearby measure satisfying (p1) and (p2)");
    generic->add_option("--graph", graph_path, "Graph JSON")->required();
    generic->add_option("--nu", nu_path, "Measure JSON")->required();
    generic->add_option("--epsilon", epsilon, "Distance bound")->required();
    generic->add_option("--out", out, "Write the generic measure as JSON");

    auto* suite = app.add_subcommand("suite", "Seeded property suite on a graph");
    suite->add_option("--graph", graph_path, "Graph JSON")->required();
    suite->add_option("--samples", samples, "Measure pairs")->capture_default_str();

    auto* automorphisms = app.add_subcommand("automorphisms", "Enumerate graph automorphisms");
    automorphisms->add_option("--graph", graph_path, "Graph JSON")->required();

    auto* frucht = app.add_subcommand("frucht", "Graph whose automorphism group is the given group");
    frucht->add_option("--group", group_path, "Group JSON")->required();
    frucht->add_option("--generators", generators, "Comma-separated element indices");
    frucht->add_option("--out", out, "Write the graph as JSON");

    auto* prescribe = app.add_subcommand("prescribe", "Certify Isom(W_p(X)) isomorphic to a group");
    prescribe->add_option("--group", group_path, "Group JSON")->required();
    prescribe->add_option("--generators", generators, "Comma-separated element indices");
    prescribe->add_option("--samples", prescribe_samples, "Measure pairs per automorphism")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    Run run(globals, std::vector<std::string>(argv + 1, argv + argc));
    try {
        if (*distance)
            return cmd_distance(run, pair, plan_out);
        if (*neighbouring)
            return cmd_neighbouring(run, pair);
        if (*witness)
            return cmd_bs_witness(run, pair, s_text, xi_path, out);
        if (*teleport)
            return cmd_teleport(run, graph_path, mu_path, u, w, t_texts);
        if (*generic)
            return cmd_genericize(run, graph_path, nu_path, epsilon, out);
        if (*suite)
            return cmd_suite(run, graph_path, samples);
        if (*automorphisms)
            return cmd_automorphisms(run, graph_path);
        if (*frucht)
            return cmd_frucht(run, group_path, generators, out);
        if (*prescribe)
            return cmd_prescribe(run, group_path, generators, prescribe_samples);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
        case ErrorCode::WitnessRejected:
        case ErrorCode::RetryCapExhausted: return kCheckFailed;
        default: return kInputError;
        }
    }
    return kInputError;
}
