#include "spinnet/evaluator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spinnet {

const std::array<const char*, 9> kK33EdgeNames{"j1", "j2", "j3", "j4", "j5", "j6", "k", "l", "m"};

namespace {

using Ends = std::array<std::pair<int, int>, 9>;

// endpoints (R vertex, S vertex) in kK33EdgeNames order
constexpr Ends kNaming4410{{{1, 4}, {5, 4}, {5, 2}, {3, 2}, {3, 6}, {1, 6}, {1, 2}, {3, 4}, {5, 6}}};
constexpr Ends kNaming666{{{1, 2}, {3, 2}, {3, 6}, {5, 6}, {5, 4}, {1, 4}, {1, 6}, {5, 2}, {3, 4}}};

int label(const K33Labels& L, const char* name)
{
    auto it = L.find(name);
    if (it == L.end())
        throw std::invalid_argument(std::string("missing K3,3 label '") + name + "'");
    return it->second;
}

bool symmetric666(const std::array<int, 3>& r, const std::array<int, 3>& s)
{
    return std::abs(r[0] + r[1] + r[2]) == 3 && std::abs(s[0] + s[1] + s[2]) == 3;
}

// the edge shared by the two 4-faces of a Sym4410 embedding
std::string common_edge(const SpinNetwork& net)
{
    auto ft = trace_faces(net.graph, net.scheme);
    std::vector<std::set<int>> quads;
    for (const auto& f : ft.faces)
        if (f.size() == 4) {
            std::set<int> es;
            for (HalfEdge h : f)
                es.insert(edge_of(h));
            quads.push_back(es);
        }
    if (quads.size() != 2)
        throw std::logic_error("Sym4410 embedding without two 4-faces");
    for (int e : quads[0])
        if (quads[1].count(e))
            return net.graph.edge(e).id;
    throw std::logic_error("4-faces share no edge");
}

std::string grid_text(const char* g, const char* pair, int s)
{
    return std::string(g) + "^" + pair + "_" + (s > 0 ? "+" : "-");
}

} // namespace

SpinNetwork k33_network(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                        const K33Labels& labels)
{
    for (int s : r_signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("orientation signs must be +1 or -1");
    for (int s : s_signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("orientation signs must be +1 or -1");
    const Ends& ends = symmetric666(r_signs, s_signs) ? kNaming666 : kNaming4410;
    Graph g;
    for (int v = 1; v <= 6; ++v)
        g.add_vertex(std::to_string(v));
    for (std::size_t i = 0; i < ends.size(); ++i)
        g.add_edge(kK33EdgeNames[i], ends[i].first - 1, ends[i].second - 1, label(labels, kK33EdgeNames[i]));

    auto dart = [&](int v, int w) {
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            if (ed.u == v && ed.v == w)
                return 2 * e;
            if (ed.v == v && ed.u == w)
                return 2 * e + 1;
        }
        throw std::logic_error("K3,3 edge missing");
    };
    RotationScheme r;
    r.order.resize(6);
    for (int i = 0; i < 3; ++i) {
        int v = 2 * i; // vertices 1,3,5
        std::array<int, 3> nb = r_signs[i] > 0 ? std::array<int, 3>{1, 3, 5} : std::array<int, 3>{1, 5, 3};
        for (int w : nb)
            r.order[v].push_back(dart(v, w));
        int u = 2 * i + 1; // vertices 2,4,6
        std::array<int, 3> nb2 = s_signs[i] > 0 ? std::array<int, 3>{0, 2, 4} : std::array<int, 3>{0, 4, 2};
        for (int w : nb2)
            r.order[u].push_back(dart(u, w));
    }
    SpinNetwork net{g, r};
    validate_scheme(net.graph, net.scheme);
    return net;
}

K33Result evaluate_k33(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                       const K33Labels& labels, const Deformation& d, const K33Options& opt)
{
    SpinNetwork net = k33_network(r_signs, s_signs, labels);
    K33Result res{classify_k33(net.graph, net.scheme), {}, d.zero(), std::nullopt, {}};
    DecomposeOptions o;
    o.crossing = opt.crossing;
    if (res.family == K33Family::Sym4410)
        o.edge_priority = {common_edge(net)};
    else if (res.family == K33Family::Sym666)
        o.edge_priority = {"j2", "j6"};
    res.decomposition = decompose(net, o);
    res.value = evaluate_numeric(res.decomposition.expr, d, opt.eval);

    int s = opt.crossing == Crossing::Over ? 1 : -1;
    if (opt.eval.phase_to_one)
        return res;
    if (r_signs == kSym4410R && s_signs == kSym4410S) {
        res.closed_form = k33_sym4410_closed_form(labels, d, s);
        res.closed_form_text = grid_text("[j1 j6 k; l j5 j4; j2 m j3]", "(j2,j6)", s);
    } else if (r_signs == kSym666R && s_signs == kSym666S) {
        res.closed_form = k33_sym666_closed_form(labels, d, s);
        res.closed_form_text = std::string("A^") + (s > 0 ? "+" : "-") + "_{(m,m,j1,j4)-(j2,j5)} " +
                               grid_text("[j1 k j6; j2 j3 m; l j4 j5]", "(k,m)", -s);
    }
    return res;
}

Scalar k33_sym4410_closed_form(const K33Labels& L, const Deformation& d, int s)
{
    Grid g{{{label(L, "j1"), label(L, "j6"), label(L, "k")},
            {label(L, "l"), label(L, "j5"), label(L, "j4")},
            {label(L, "j2"), label(L, "m"), label(L, "j3")}}};
    return toroidal_symbol(g, d, s, IndexPair::P26);
}

namespace {
Grid grid666(const K33Labels& L)
{
    return Grid{{{label(L, "j1"), label(L, "k"), label(L, "j6")},
                 {label(L, "j2"), label(L, "j3"), label(L, "m")},
                 {label(L, "l"), label(L, "j4"), label(L, "j5")}}};
}
} // namespace

Scalar k33_sym666_closed_form(const K33Labels& L, const Deformation& d, int s)
{
    int m = label(L, "m");
    Scalar pre = a_factor({m, m, label(L, "j1"), label(L, "j4")}, {label(L, "j2"), label(L, "j5")}, s, d);
    return pre * toroidal_symbol(grid666(L), d, -s, IndexPair::P48);
}

Scalar k33_sym666_printed_form(const K33Labels& L, const Deformation& d)
{
    int k = label(L, "k");
    Scalar pre = a_factor({k, k, label(L, "j5"), label(L, "j4")}, {label(L, "j1"), label(L, "j2")}, 1, d);
    return pre * toroidal_symbol(grid666(L), d, -1, IndexPair::P48);
}

Scalar k33_sym666_two_sum_form(const K33Labels& L, const Deformation& d, int s)
{
    int j1 = label(L, "j1"), j2 = label(L, "j2"), j3 = label(L, "j3"), j4 = label(L, "j4");
    int j5 = label(L, "j5"), j6 = label(L, "j6"), k = label(L, "k"), l = label(L, "l"), m = label(L, "m");
    Scalar sum = d.zero();
    for (int x = std::abs(m - l); x <= m + l; x += 2) {
        Scalar fx = sixj(j1, j2, l, m, x, j3, d);
        if (fx.is_zero())
            continue;
        fx *= loop_value(x, d);
        for (int y = std::abs(m - k); y <= m + k; y += 2) {
            Scalar fy = sixj(j1, j6, k, m, y, j5, d);
            if (fy.is_zero())
                continue;
            Grid g{{{j5, l, j4}, {y, m, k}, {j1, x, j3}}};
            sum += fx * fy * loop_value(y, d) * toroidal_symbol(g, d, s, IndexPair::P26);
        }
    }
    return sum;
}

std::vector<Scalar> k33_sym666_chain(const K33Labels& L, const Deformation& d, int s)
{
    int j1 = label(L, "j1"), j2 = label(L, "j2"), j3 = label(L, "j3"), j4 = label(L, "j4");
    int j5 = label(L, "j5"), j6 = label(L, "j6"), k = label(L, "k"), l = label(L, "l"), m = label(L, "m");
    std::vector<Scalar> out;
    out.push_back(k33_sym666_two_sum_form(L, d, s));

    // same toroidal symbol, rewritten on the grid the exchange acts on
    Scalar reflected = d.zero(), exchanged = d.zero();
    Scalar pre = a_factor({k, j5}, {j1, m}, -s, d);
    for (int x = std::abs(m - l); x <= m + l; x += 2) {
        Scalar fx = sixj(j1, j2, l, m, x, j3, d);
        if (fx.is_zero())
            continue;
        fx *= loop_value(x, d);
        for (int y = std::abs(m - k); y <= m + k; y += 2) {
            Scalar fy = sixj(j1, j6, k, m, y, j5, d);
            if (fy.is_zero())
                continue;
            fy *= loop_value(y, d) * fx;
            Grid g1{{{y, k, m}, {j5, j4, l}, {j1, j3, x}}};
            Grid g2{{{y, j1, j5}, {m, x, l}, {k, j3, j4}}};
            reflected += fy * toroidal_symbol(g1, d, s, IndexPair::P19);
            exchanged += fy * pre * toroidal_symbol(g2, d, s, IndexPair::P19);
        }
    }
    out.push_back(reflected);
    out.push_back(exchanged);

    // the x sum collapses to two 6j symbols and a phase
    Scalar single = d.zero();
    for (int y = std::abs(m - k); y <= m + k; y += 2) {
        Scalar fy = sixj(j1, j6, k, m, y, j5, d);
        if (fy.is_zero() || !admissible(y, j4, j2))
            continue;
        single += fy * loop_value(y, d) * pre * a_factor(y, j4, j2, s, d) * sixj(y, m, k, j3, j4, j2, d) *
                  sixj(j2, l, j1, j5, y, j4, d);
    }
    out.push_back(single);
    out.push_back(k33_sym666_closed_form(L, d, s));
    return out;
}

} // namespace spinnet
