// Property tests over seeded random inputs.
#include "spinnet/evaluator.hpp"
#include "spinnet/identities.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace spinnet;

namespace {

std::multiset<std::vector<int>> partition_census(const Graph& g)
{
    std::multiset<std::vector<int>> out;
    enumerate_schemes(g, [&](const RotationScheme& r) {
        out.insert(trace_faces(g, r).partition());
        return true;
    });
    return out;
}

Graph relabelled(const Graph& g, std::mt19937_64& rng)
{
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Graph h;
    for (int v = 0; v < g.vertex_count(); ++v)
        h.add_vertex("w" + std::to_string(v));
    for (int e : order) {
        const Edge& ed = g.edge(e);
        h.add_edge("f" + std::to_string(e), perm[ed.v], perm[ed.u]);
    }
    return h;
}

Graph random_graph(std::mt19937_64& rng, int n, int m, int max_degree)
{
    for (;;) {
        Graph g;
        for (int v = 0; v < n; ++v)
            g.add_vertex(std::to_string(v));
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                pairs.emplace_back(a, b);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        std::vector<int> deg(n, 0);
        int k = 0;
        for (auto [a, b] : pairs) {
            if (k == m)
                break;
            if (deg[a] == max_degree || deg[b] == max_degree)
                continue;
            g.add_edge("e" + std::to_string(k++), a, b);
            ++deg[a];
            ++deg[b];
        }
        bool ok = k == m && g.connected();
        for (int d : deg)
            ok = ok && d >= 2;
        if (ok)
            return g;
    }
}

} // namespace

TEST_CASE("side conservation and Euler parity over every K3,3 and Petersen scheme")
{
    for (const Graph& g : {complete_bipartite(3, 3), petersen_graph()}) {
        enumerate_schemes(g, [&](const RotationScheme& r) {
            FaceTrace ft = trace_faces(g, r);
            std::vector<int> seen(2 * g.edge_count(), 0);
            for (const auto& f : ft.faces)
                for (HalfEdge h : f)
                    ++seen[h];
            CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
            int chi = g.vertex_count() - g.edge_count() + static_cast<int>(ft.faces.size());
            CHECK(chi % 2 == 0);
            CHECK(embedding_genus(g, ft) == (2 - chi) / 2);
            return true;
        });
    }
}

TEST_CASE("census is invariant under relabelling")
{
    std::mt19937_64 rng(7);
    Graph k33 = complete_bipartite(3, 3);
    auto base = partition_census(k33);
    for (int i = 0; i < 5; ++i)
        CHECK(partition_census(relabelled(k33, rng)) == base);
    Graph k4 = complete_graph(4);
    auto b4 = partition_census(k4);
    for (int i = 0; i < 5; ++i)
        CHECK(partition_census(relabelled(k4, rng)) == b4);
    Graph p = petersen_graph();
    CHECK(graph_genus(relabelled(p, rng)) == graph_genus(p));
}

TEST_CASE("Kuratowski consistency: forbidden minor iff non-planar")
{
    std::mt19937_64 rng(11);
    int nonplanar = 0;
    for (int i = 0; i < 40; ++i) {
        int n = 5 + static_cast<int>(rng() % 3);
        int m = n + 2 + static_cast<int>(rng() % (n - 1));
        Graph g = random_graph(rng, n, m, 4);
        bool planar = is_planar(g);
        CHECK(has_forbidden_minor(g) == !planar);
        nonplanar += !planar;
    }
    CHECK(nonplanar > 0);
}

TEST_CASE("random reduction orders agree on planar networks")
{
    std::mt19937_64 rng(5);
    for (const char* name : {"tetrahedron.graph", "prism.graph", "cube.graph"}) {
        SpinNetwork net = SpinNetwork::from_file(load_graph(std::string(SPINNET_DATA_DIR) + "/" + name));
        for (int k = 0; k < 10; ++k) {
            for (;;) {
                for (int e = 0; e < net.graph.edge_count(); ++e)
                    net.graph.edge(e).spin = static_cast<int>(rng() % 4);
                bool ok = true;
                for (int v = 0; v < net.graph.vertex_count(); ++v) {
                    const auto& in = net.graph.incident(v);
                    ok = ok && admissible(net.spin(edge_of(in[0])), net.spin(edge_of(in[1])), net.spin(edge_of(in[2])));
                }
                if (ok)
                    break;
            }
            Scalar ref = evaluate_numeric(decompose(net).expr, Deformation::classical());
            DecomposeOptions o;
            o.policy = DecomposeOptions::Policy::Random;
            o.seed = rng();
            Decomposition alt = decompose(net, o);
            CHECK(evaluate_numeric(alt.expr, Deformation::classical()).surd() == ref.surd());
            CHECK(Expression::parse(alt.expr.str()).str() == alt.expr.str());
        }
    }
}

TEST_CASE("identities at a generic phase")
{
    Deformation d = Deformation::phase(617, 5000);
    SuiteOptions o;
    o.max2j = 2;
    for (const CheckResult& r : {check_orthogonality(d, o), check_biedenharn_elliott(d, o), check_claim(d, o),
                                 check_exchange(d, o, false), check_k33_sym4410(d, o), check_k33_sym666(d, o, false),
                                 check_k33_proportionality(d, o)}) {
        INFO(r.name << " " << r.first_failure);
        CHECK(r.ok());
        CHECK(r.singular == 0);
    }
}

TEST_CASE("fault injection flips the named identity only")
{
    Deformation c = Deformation::classical();
    SuiteOptions o;
    o.max2j = 1;
    o.corrupt = {"claim"};
    CheckResult bad = check_claim(c, o);
    CHECK_FALSE(bad.ok());
    CHECK(bad.name == "claim");
    CHECK(check_orthogonality(c, o).ok());
}

TEST_CASE("zero propagation")
{
    std::mt19937_64 rng(3);
    SpinNetwork net = SpinNetwork::from_file(load_graph(std::string(SPINNET_DATA_DIR) + "/cube.graph"));
    for (int k = 0; k < 10; ++k) {
        int e = static_cast<int>(rng() % net.graph.edge_count());
        SpinNetwork bad = net;
        bad.graph.edge(e).spin = 3; // odd spin against even neighbours
        CHECK(evaluate_numeric(decompose(bad).expr, Deformation::phase(1, 9)).is_zero());
    }
}
