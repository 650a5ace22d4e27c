#include "spinnet/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace spinnet;

namespace {

std::string data(const char* name) { return std::string(SPINNET_DATA_DIR) + "/" + name; }

Graph theta_graph()
{
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge("x", 0, 1);
    g.add_edge("y", 0, 1);
    g.add_edge("z", 0, 1);
    return g;
}

} // namespace

TEST_CASE("graph construction rejects loops and excess multiplicity")
{
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b");
    CHECK_THROWS_AS(g.add_edge("l", 0, 0), GraphError);
    g.add_edge("e1", 0, 1);
    CHECK_THROWS_AS(g.add_edge("e1", 0, 1), GraphError);
    CHECK_THROWS_AS(g.add_vertex("a"), GraphError);
    CHECK(g.degree(0) == 1);
    CHECK(g.vertex_of(0) == 0);
    CHECK(g.vertex_of(1) == 1);
}

TEST_CASE("theta faces match a hand trace")
{
    // darts x0 x1 y0 y1 z0 z1 = 0..5; same cyclic order at both ends gives
    // the walk x0 y1 z0 x1 y0 z1
    Graph g = theta_graph();
    RotationScheme same{{{0, 2, 4}, {1, 3, 5}}};
    FaceTrace one = trace_faces(g, same);
    REQUIRE(one.faces.size() == 1);
    CHECK(one.faces[0] == Face{0, 3, 4, 1, 2, 5});
    CHECK(embedding_genus(g, one) == 1);
    CHECK_FALSE(is_embedded_cycle(one.faces[0]));

    // reversed at b: three bigons x0 z1, y0 x1, z0 y1
    RotationScheme planar{{{0, 2, 4}, {1, 5, 3}}};
    FaceTrace three = trace_faces(g, planar);
    CHECK(three.partition() == std::vector<int>{2, 2, 2});
    CHECK(three.faces[0] == Face{0, 5});
    CHECK(three.faces[1] == Face{1, 2});
    CHECK(three.faces[2] == Face{3, 4});
    CHECK(embedding_genus(g, three) == 0);
}

TEST_CASE("scheme enumeration is exhaustive and distinct")
{
    Graph k4 = complete_graph(4);
    CHECK(scheme_count(k4) == 16);
    std::set<std::vector<std::vector<HalfEdge>>> seen;
    enumerate_schemes(k4, [&](const RotationScheme& r) {
        validate_scheme(k4, r);
        seen.insert(r.order);
        return true;
    });
    CHECK(seen.size() == 16);
    CHECK(scheme_count(complete_graph(5)) == 7776);
    CHECK_THROWS_AS(enumerate_schemes(complete_graph(5), [](const RotationScheme&) { return true; }, 100),
                    BoundExceeded);
}

TEST_CASE("orientation signs round-trip through scheme_from_signs")
{
    Graph g = complete_bipartite(3, 3);
    std::vector<int> signs{1, -1, -1, 1, 1, -1};
    RotationScheme r = scheme_from_signs(g, signs);
    for (int v = 0; v < 6; ++v)
        CHECK(orientation_sign(g, r, v) == signs[v]);
    CHECK(declaration_scheme(g).order == scheme_from_signs(g, std::vector<int>(6, 1)).order);
}

TEST_CASE("parser reads spins, rotations and orientations")
{
    GraphFile f = parse_graph_string("# theta\n"
                                     "vertex a\nvertex b\n"
                                     "edge x a b spin=1\nedge y a b spin=1\nedge z a b spin=2\n"
                                     "rotation a : x y z\n"
                                     "orient b -1\n");
    CHECK(f.has_rotation);
    CHECK(*f.graph.edge(2).spin == 2);
    CHECK(trace_faces(f.graph, f.scheme).partition() == std::vector<int>{2, 2, 2});

    GraphFile plain = parse_graph_string("vertex a\nvertex b\nedge x a b\nedge y a b\nedge z a b\n");
    CHECK_FALSE(plain.has_rotation);
    CHECK(plain.scheme.order == declaration_scheme(plain.graph).order);
}

TEST_CASE("parser errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_graph_string(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("vertex a\nedge e a b\n") == 2);
    CHECK(line_of("vertex a\nvertex b\nedge e a b spin=x\n") == 3);
    CHECK(line_of("vertex a\nvertex b\nedge e a b\nrotation a : q\n") == 4);
    CHECK(line_of("vertex a\nvertex b\nedge e a b\nrotation a : e\nrotation a : e\n") == 5);
    CHECK(line_of("vertex a\nbogus line\n") == 2);
    CHECK(line_of("vertex a\nvertex b\nedge e a a\n") == 3);
    CHECK_THROWS_AS(load_graph(data("does-not-exist.graph")), GraphError);
}

TEST_CASE("DOT export lists vertices, edges and faces")
{
    GraphFile f = load_graph(data("tetrahedron.graph"));
    FaceTrace ft = trace_faces(f.graph, f.scheme);
    std::string dot = to_dot(f.graph, &ft);
    CHECK(dot.rfind("graph G {", 0) == 0);
    CHECK(dot.find("\"1\" -- \"2\" [label=\"j=1/2\", id=\"e12\"]") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 4 + 4 + 6 + 1);
    CHECK(dot.find("// face 4 length 3") != std::string::npos);
}

TEST_CASE("K3,3 helpers")
{
    Graph g = complete_bipartite(3, 3);
    CHECK(is_k33(g));
    CHECK_FALSE(is_k33(complete_graph(4)));
    K33Parts p = k33_parts(g);
    CHECK(p.r == std::vector<int>{0, 1, 2});
    CHECK(p.s == std::vector<int>{3, 4, 5});
    CHECK(classify_k33(load_graph(data("k33_sym666.graph")).graph, load_graph(data("k33_sym666.graph")).scheme) ==
          K33Family::Sym666);
    auto f4 = load_graph(data("k33_sym4410.graph"));
    CHECK(classify_k33(f4.graph, f4.scheme) == K33Family::Sym4410);
    CHECK(set_value(f4.graph, f4.scheme, k33_parts(f4.graph).r) == 1);
    auto f18 = load_graph(data("k33_asym18.graph"));
    CHECK(classify_k33(f18.graph, f18.scheme) == K33Family::Asym18);
    CHECK(trace_faces(f18.graph, f18.scheme).partition() == std::vector<int>{18});
}

TEST_CASE("bipartite genus formula against exhaustive search")
{
    CHECK(bipartite_genus(2, 7) == 0);
    CHECK(bipartite_genus(3, 3) == 1);
    CHECK(bipartite_genus(3, 4) == 1);
    CHECK(bipartite_genus(4, 4) == 1);
    CHECK(bipartite_genus(4, 5) == 2);
    CHECK(graph_genus(complete_bipartite(2, 4)) == 0);
    CHECK(graph_genus(complete_bipartite(3, 4)) == 1);
}

TEST_CASE("forbidden minors")
{
    CHECK(has_forbidden_minor(complete_graph(5)));
    CHECK(has_forbidden_minor(complete_bipartite(3, 3)));
    CHECK(has_forbidden_minor(petersen_graph()));
    CHECK_FALSE(has_forbidden_minor(complete_graph(4)));
    CHECK_FALSE(has_forbidden_minor(load_graph(data("cube.graph")).graph));
    CHECK_FALSE(has_forbidden_minor(load_graph(data("prism.graph")).graph));
    // K5 with every edge subdivided once: 15 vertices, over the default bound
    Graph s;
    for (int i = 0; i < 5; ++i)
        s.add_vertex("v" + std::to_string(i));
    int k = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            int m = s.add_vertex("m" + std::to_string(k++));
            s.add_edge("a" + std::to_string(m), i, m);
            s.add_edge("b" + std::to_string(m), m, j);
        }
    CHECK_THROWS_AS(has_forbidden_minor(s), BoundExceeded);
    CHECK(has_forbidden_minor(s, 16));
}
