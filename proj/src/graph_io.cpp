#include "spinnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace spinnet {
namespace {

struct Pending {
    int line;
    std::string vertex;
    std::vector<std::string> edges; // rotation
    int sign = 0;                   // orient
};

int parse_int(const std::string& s, int line, const char* what)
{
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
    }
}

} // namespace

GraphFile parse_graph(std::istream& in)
{
    GraphFile out;
    Graph& g = out.graph;
    std::vector<Pending> pending;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        const std::string& kw = tok[0];
        try {
            if (kw == "vertex") {
                if (tok.size() != 2)
                    throw ParseError(line, "expected 'vertex <id>'");
                g.add_vertex(tok[1]);
            } else if (kw == "edge") {
                if (tok.size() != 4 && tok.size() != 5)
                    throw ParseError(line, "expected 'edge <id> <vid> <vid> [spin=<2j>]'");
                auto u = g.find_vertex(tok[2]), v = g.find_vertex(tok[3]);
                if (!u)
                    throw ParseError(line, "unknown vertex '" + tok[2] + "'");
                if (!v)
                    throw ParseError(line, "unknown vertex '" + tok[3] + "'");
                std::optional<int> spin;
                if (tok.size() == 5) {
                    if (tok[4].rfind("spin=", 0) != 0)
                        throw ParseError(line, "expected spin=<2j>, got '" + tok[4] + "'");
                    spin = parse_int(tok[4].substr(5), line, "spin");
                }
                g.add_edge(tok[1], *u, *v, spin);
            } else if (kw == "rotation") {
                // accept "rotation v : a b c" and "rotation v: a b c"
                std::vector<std::string> rest(tok.begin() + 1, tok.end());
                if (!rest.empty() && rest[0].size() > 1 && rest[0].back() == ':') {
                    rest[0].pop_back();
                    rest.insert(rest.begin() + 1, ":");
                }
                if (rest.size() < 2 || rest[1] != ":")
                    throw ParseError(line, "expected 'rotation <vid> : <edge ids>'");
                Pending p{line, rest[0], {rest.begin() + 2, rest.end()}, 0};
                pending.push_back(p);
            } else if (kw == "orient") {
                if (tok.size() != 3)
                    throw ParseError(line, "expected 'orient <vid> +1|-1'");
                int s = parse_int(tok[2], line, "orientation");
                if (s != 1 && s != -1)
                    throw ParseError(line, "orientation must be +1 or -1");
                pending.push_back(Pending{line, tok[1], {}, s});
            } else {
                throw ParseError(line, "unknown keyword '" + kw + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const GraphError& e) {
            throw ParseError(line, e.what());
        }
    }

    out.scheme = declaration_scheme(g);
    std::vector<int> given(g.vertex_count(), 0);
    for (const auto& p : pending) {
        auto v = g.find_vertex(p.vertex);
        if (!v)
            throw ParseError(p.line, "unknown vertex '" + p.vertex + "'");
        if (given[*v])
            throw ParseError(p.line, "second rotation for vertex '" + p.vertex + "'");
        given[*v] = 1;
        out.has_rotation = true;
        if (p.sign != 0) {
            if (g.degree(*v) != 3)
                throw ParseError(p.line, "orient needs a trivalent vertex, '" + p.vertex + "' has degree " +
                                             std::to_string(g.degree(*v)));
            if (p.sign < 0)
                std::swap(out.scheme.order[*v][1], out.scheme.order[*v][2]);
            continue;
        }
        std::vector<HalfEdge> ord;
        for (const auto& eid : p.edges) {
            auto e = g.find_edge(eid);
            if (!e)
                throw ParseError(p.line, "unknown edge '" + eid + "'");
            const Edge& ed = g.edge(*e);
            if (ed.u == *v)
                ord.push_back(2 * *e);
            else if (ed.v == *v)
                ord.push_back(2 * *e + 1);
            else
                throw ParseError(p.line, "edge '" + eid + "' is not incident to '" + p.vertex + "'");
        }
        auto a = ord, b = g.incident(*v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw ParseError(p.line, "rotation at '" + p.vertex + "' must list each of its " +
                                         std::to_string(g.degree(*v)) + " edges once");
        out.scheme.order[*v] = ord;
    }
    return out;
}

GraphFile parse_graph_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

GraphFile load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open '" + path + "'");
    return parse_graph(in);
}

std::string side_string(const Graph& g, HalfEdge h)
{
    return "(" + g.vertex_id(g.vertex_of(h)) + " " + g.vertex_id(g.vertex_of(opposite(h))) + ")";
}

std::string face_string(const Graph& g, const Face& f)
{
    std::string s;
    for (HalfEdge h : f)
        s += side_string(g, h);
    return s;
}

namespace {
std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}
} // namespace

std::string to_dot(const Graph& g, const FaceTrace* faces)
{
    std::ostringstream os;
    os << "graph G {\n";
    if (faces) {
        int i = 0;
        for (const auto& f : faces->faces) {
            os << "  // face " << ++i << " length " << f.size() << ": ";
            for (std::size_t k = 0; k < f.size(); ++k)
                os << (k ? " " : "") << g.edge(edge_of(f[k])).id << ((f[k] & 1) ? "-" : "+");
            os << "  " << face_string(g, f) << "\n";
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        os << "  " << quoted(g.vertex_id(v)) << ";\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        os << "  " << quoted(g.vertex_id(ed.u)) << " -- " << quoted(g.vertex_id(ed.v));
        std::string label = ed.spin ? "j=" + std::to_string(*ed.spin) + "/2" : ed.id;
        os << " [label=" << quoted(label) << ", id=" << quoted(ed.id) << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace spinnet
