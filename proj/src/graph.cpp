#include "spinnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace spinnet {

ParseError::ParseError(int line, const std::string& msg)
    : GraphError("line " + std::to_string(line) + ": " + msg), line_(line) {}

BoundExceeded::BoundExceeded(const std::string& what, std::uint64_t count)
    : GraphError(what), count_(count) {}

int Graph::add_vertex(const std::string& id)
{
    if (find_vertex(id))
        throw GraphError("duplicate vertex id '" + id + "'");
    vertices_.push_back(id);
    incident_.emplace_back();
    return vertex_count() - 1;
}

int Graph::add_edge(const std::string& id, int u, int v, std::optional<int> spin)
{
    if (find_edge(id))
        throw GraphError("duplicate edge id '" + id + "'");
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw GraphError("edge '" + id + "' has an undeclared endpoint");
    if (u == v)
        throw GraphError("edge '" + id + "' is a self-loop");
    if (spin && *spin < 0)
        throw GraphError("edge '" + id + "' has a negative spin");
    int mult = 0;
    for (const auto& e : edges_)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u))
            ++mult;
    if (mult >= 3)
        throw GraphError("edge '" + id + "' exceeds multiplicity 3 between '" + vertices_[u] +
                         "' and '" + vertices_[v] + "'");
    int e = edge_count();
    edges_.push_back(Edge{id, u, v, spin});
    incident_[u].push_back(2 * e);
    incident_[v].push_back(2 * e + 1);
    return e;
}

std::optional<int> Graph::find_vertex(const std::string& id) const
{
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[i] == id)
            return i;
    return std::nullopt;
}

std::optional<int> Graph::find_edge(const std::string& id) const
{
    for (int i = 0; i < edge_count(); ++i)
        if (edges_[i].id == id)
            return i;
    return std::nullopt;
}

int Graph::vertex_of(HalfEdge h) const
{
    const Edge& e = edges_.at(edge_of(h));
    return (h & 1) ? e.v : e.u;
}

bool Graph::connected() const
{
    if (vertices_.empty())
        return true;
    std::vector<char> seen(vertices_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int n = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (HalfEdge h : incident_[v]) {
            int w = vertex_of(opposite(h));
            if (!seen[w]) {
                seen[w] = 1;
                ++n;
                stack.push_back(w);
            }
        }
    }
    return n == vertex_count();
}

RotationScheme declaration_scheme(const Graph& g)
{
    RotationScheme r;
    for (int v = 0; v < g.vertex_count(); ++v)
        r.order.push_back(g.incident(v));
    return r;
}

RotationScheme scheme_from_signs(const Graph& g, const std::vector<int>& signs)
{
    if (static_cast<int>(signs.size()) != g.vertex_count())
        throw GraphError("one orientation sign per vertex expected");
    RotationScheme r = declaration_scheme(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (signs[v] != 1 && signs[v] != -1)
            throw GraphError("orientation must be +1 or -1");
        if (signs[v] == -1) {
            if (g.degree(v) != 3)
                throw GraphError("orientation given for non-trivalent vertex '" + g.vertex_id(v) + "'");
            std::swap(r.order[v][1], r.order[v][2]);
        }
    }
    return r;
}

void validate_scheme(const Graph& g, const RotationScheme& r)
{
    if (static_cast<int>(r.order.size()) != g.vertex_count())
        throw GraphError("rotation scheme does not cover every vertex");
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<HalfEdge> a = r.order[v], b = g.incident(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw GraphError("rotation at '" + g.vertex_id(v) + "' is not a permutation of its half-edges");
    }
}

int orientation_sign(const Graph& g, const RotationScheme& r, int v)
{
    if (g.degree(v) != 3)
        throw GraphError("vertex '" + g.vertex_id(v) + "' is not trivalent");
    const auto& ref = g.incident(v);
    const auto& cur = r.order.at(v);
    auto it = std::find(cur.begin(), cur.end(), ref[0]);
    std::size_t i = static_cast<std::size_t>(it - cur.begin());
    return cur[(i + 1) % 3] == ref[1] ? 1 : -1;
}

std::vector<int> FaceTrace::lengths() const
{
    std::vector<int> out;
    for (const auto& f : faces)
        out.push_back(static_cast<int>(f.size()));
    return out;
}

std::vector<int> FaceTrace::partition() const
{
    auto out = lengths();
    std::sort(out.begin(), out.end());
    return out;
}

FaceTrace trace_faces(const Graph& g, const RotationScheme& r)
{
    validate_scheme(g, r);
    if (!g.connected())
        throw GraphError("graph is disconnected");
    int nh = 2 * g.edge_count();
    // succ[h]: next half-edge clockwise at the vertex of h
    std::vector<HalfEdge> succ(nh);
    for (const auto& ord : r.order)
        for (std::size_t i = 0; i < ord.size(); ++i)
            succ[ord[i]] = ord[(i + 1) % ord.size()];
    std::vector<char> used(nh, 0);
    FaceTrace out;
    for (HalfEdge s = 0; s < nh; ++s) {
        if (used[s])
            continue;
        Face f;
        for (HalfEdge h = s; !used[h]; h = succ[opposite(h)]) {
            used[h] = 1;
            f.push_back(h);
        }
        out.faces.push_back(std::move(f));
    }
    return out;
}

int embedding_genus(const Graph& g, const FaceTrace& f)
{
    int chi = g.vertex_count() - g.edge_count() + static_cast<int>(f.faces.size());
    int twice = 2 - chi;
    if (twice < 0 || twice % 2 != 0)
        throw std::logic_error("inconsistent face trace: Euler characteristic " + std::to_string(chi));
    return twice / 2;
}

bool is_embedded_cycle(const Face& face)
{
    std::set<int> seen;
    for (HalfEdge h : face)
        if (!seen.insert(edge_of(h)).second)
            return false;
    return true;
}

std::uint64_t scheme_count(const Graph& g)
{
    // saturates at UINT64_MAX
    std::uint64_t n = 1;
    const std::uint64_t cap = ~std::uint64_t{0};
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int k = 2; k < g.degree(v); ++k) {
            if (n > cap / static_cast<std::uint64_t>(k))
                return cap;
            n *= static_cast<std::uint64_t>(k);
        }
    return n;
}

void enumerate_schemes(const Graph& g, const std::function<bool(const RotationScheme&)>& visit,
                       std::uint64_t bound)
{
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) < 2)
            throw GraphError("vertex '" + g.vertex_id(v) + "' has degree below 2");
    std::uint64_t count = scheme_count(g);
    if (count > bound)
        throw BoundExceeded("refusing to enumerate " + std::to_string(count) +
                                " rotation schemes (bound " + std::to_string(bound) + ")",
                            count);
    // The first half-edge stays fixed; the rest run through all permutations.
    int n = g.vertex_count();
    RotationScheme r = declaration_scheme(g);
    for (;;) {
        if (!visit(r))
            return;
        int v = n - 1;
        for (; v >= 0; --v) {
            auto& ord = r.order[v];
            if (std::next_permutation(ord.begin() + 1, ord.end()))
                break;
        }
        if (v < 0)
            return;
    }
}

int graph_genus(const Graph& g, std::uint64_t bound)
{
    if (!g.connected())
        throw GraphError("graph is disconnected");
    int best = -1;
    enumerate_schemes(
        g,
        [&](const RotationScheme& r) {
            int h = embedding_genus(g, trace_faces(g, r));
            if (best < 0 || h < best)
                best = h;
            return best != 0;
        },
        bound);
    return best;
}

bool is_planar(const Graph& g, std::uint64_t bound) { return graph_genus(g, bound) == 0; }

int set_value(const Graph& g, const RotationScheme& r, const std::vector<int>& vertices)
{
    int s = 0;
    for (int v : vertices)
        s += orientation_sign(g, r, v);
    return std::abs(s);
}

const char* family_name(K33Family f)
{
    switch (f) {
    case K33Family::Sym666: return "Sym666";
    case K33Family::Sym4410: return "Sym4410";
    case K33Family::Asym18: return "Asym18";
    }
    return "?";
}

bool is_k33(const Graph& g)
{
    if (g.vertex_count() != 6 || g.edge_count() != 9)
        return false;
    std::vector<int> side(6, -1);
    side[0] = 0;
    // two-colour by BFS, then require every cross pair joined once
    std::vector<int> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        for (HalfEdge h : g.incident(v)) {
            int w = g.vertex_of(opposite(h));
            if (side[w] < 0) {
                side[w] = 1 - side[v];
                queue.push_back(w);
            } else if (side[w] == side[v])
                return false;
        }
    }
    if (std::count(side.begin(), side.end(), 0) != 3 || std::count(side.begin(), side.end(), 1) != 3)
        return false;
    std::set<std::pair<int, int>> pairs;
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (!pairs.insert({std::min(u, v), std::max(u, v)}).second)
            return false;
    }
    return true;
}

K33Parts k33_parts(const Graph& g)
{
    if (!is_k33(g))
        throw GraphError("graph is not K3,3");
    K33Parts p;
    p.r.push_back(0);
    std::set<int> nb;
    for (HalfEdge h : g.incident(0))
        nb.insert(g.vertex_of(opposite(h)));
    for (int v = 1; v < 6; ++v)
        (nb.count(v) ? p.s : p.r).push_back(v);
    return p;
}

std::vector<int> k33_signs(const Graph& g, const RotationScheme& r)
{
    K33Parts p = k33_parts(g);
    validate_scheme(g, r);
    std::vector<int> signs(6, 0);
    auto orient = [&](const std::vector<int>& part, const std::vector<int>& other) {
        for (int v : part) {
            std::vector<int> seq;
            for (HalfEdge h : r.order[v])
                seq.push_back(g.vertex_of(opposite(h)));
            auto it = std::find(seq.begin(), seq.end(), other[0]);
            std::size_t i = static_cast<std::size_t>(it - seq.begin());
            signs[v] = seq[(i + 1) % 3] == other[1] ? 1 : -1;
        }
    };
    orient(p.r, p.s);
    orient(p.s, p.r);
    return signs;
}

K33Family classify_k33(const Graph& g, const RotationScheme& r)
{
    K33Parts p = k33_parts(g);
    auto s = k33_signs(g, r);
    auto value = [&](const std::vector<int>& part) {
        int t = 0;
        for (int v : part)
            t += s[v];
        return std::abs(t);
    };
    int vr = value(p.r), vs = value(p.s);
    if (vr == 3 && vs == 3)
        return K33Family::Sym666;
    if (vr == 1 && vs == 1)
        return K33Family::Sym4410;
    return K33Family::Asym18;
}

int bipartite_genus(int s, int r)
{
    if (s < 1 || r < 1)
        throw GraphError("bipartite_genus needs positive part sizes");
    int n = (r - 2) * (s - 2);
    if (n <= 0)
        return 0;
    return (n + 3) / 4;
}

Graph complete_graph(int n)
{
    Graph g;
    for (int i = 1; i <= n; ++i)
        g.add_vertex(std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge("e" + std::to_string(i + 1) + std::to_string(j + 1), i, j);
    return g;
}

// Vertices 1..s+r; odd-first naming matches the usual K3,3 drawing when s=r=3.
Graph complete_bipartite(int s, int r)
{
    Graph g;
    for (int i = 1; i <= s + r; ++i)
        g.add_vertex(std::to_string(i));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < r; ++j)
            g.add_edge("e" + std::to_string(i + 1) + "_" + std::to_string(s + j + 1), i, s + j);
    return g;
}

Graph petersen_graph()
{
    Graph g;
    for (int i = 0; i < 10; ++i)
        g.add_vertex(std::to_string(i));
    int k = 0;
    auto add = [&](int a, int b) { g.add_edge("p" + std::to_string(k++), a, b); };
    for (int i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);
        add(i, i + 5);
        add(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

} // namespace spinnet
