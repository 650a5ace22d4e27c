#include "spinnet/evaluator.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace spinnet {

// ---- SpinNetwork ----------------------------------------------------------

SpinNetwork SpinNetwork::from_file(const GraphFile& f)
{
    SpinNetwork n{f.graph, f.scheme};
    n.validate();
    return n;
}

void SpinNetwork::validate() const
{
    validate_scheme(graph, scheme);
    if (!graph.connected())
        throw GraphError("spin network is disconnected");
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (graph.degree(v) != 3)
            throw GraphError("vertex '" + graph.vertex_id(v) + "' is not trivalent");
    for (int e = 0; e < graph.edge_count(); ++e)
        if (!graph.edge(e).spin)
            throw GraphError("edge '" + graph.edge(e).id + "' has no spin");
}

const char* step_name(ReductionStep::Kind k)
{
    switch (k) {
    case ReductionStep::Kind::Crossing: return "crossing";
    case ReductionStep::Kind::Triangle: return "triangle";
    case ReductionStep::Kind::Bigon: return "bigon";
    case ReductionStep::Kind::Phase: return "phase";
    case ReductionStep::Kind::Theta: return "theta";
    case ReductionStep::Kind::Zero: return "zero";
    }
    return "?";
}

std::string ReductionTrace::str(const Expression& e) const
{
    std::ostringstream os;
    int i = 0;
    for (const auto& s : steps) {
        os << ++i << " " << step_name(s.kind);
        if (!s.face.empty()) {
            os << " face=(";
            for (std::size_t k = 0; k < s.face.size(); ++k)
                os << (k ? " " : "") << s.face[k];
            os << ")";
        }
        if (!s.edge.empty())
            os << " edge=" << s.edge;
        if (!s.variable.empty())
            os << " var=" << s.variable;
        if (!s.factors.empty()) {
            Expression one;
            one.vars = e.vars;
            one.terms.push_back(Term{s.factors});
            std::string t = one.str();
            // strip the (sum (...)) wrapper for readability
            auto p = t.find("(term");
            os << " emits " << (p == std::string::npos ? t : t.substr(p, t.size() - p - (one.vars.empty() ? 0 : 1)));
        }
        os << "\n";
    }
    os << "terminal " << terminal << "\n";
    return os.str();
}

// ---- ReductionState -------------------------------------------------------

ReductionState::ReductionState(const SpinNetwork& net, const std::vector<std::string>& priority)
{
    net.validate();
    const Graph& g = net.graph;
    std::vector<std::string> names;
    for (int e = 0; e < g.edge_count(); ++e)
        names.push_back(g.edge(e).id);
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& p : priority)
        if (!g.find_edge(p))
            throw std::invalid_argument("edge priority names unknown edge '" + p + "'");
    for (int e = 0; e < g.edge_count(); ++e) {
        WEdge w;
        w.name = names[e];
        w.spin = SpinArg::lit(net.spin(e));
        w.order = next_order_++;
        auto pit = std::find(priority.begin(), priority.end(), names[e]);
        if (pit != priority.end())
            w.rank = {0, static_cast<int>(pit - priority.begin())};
        else
            w.rank = {1, static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), names[e]) - sorted.begin())};
        edges_.push_back(w);
        dart_vertex_.push_back(g.edge(e).u);
        dart_vertex_.push_back(g.edge(e).v);
    }
    rot_ = net.scheme.order;
    alive_vertices_ = g.vertex_count();
}

int ReductionState::edge_count() const
{
    int n = 0;
    for (const auto& e : edges_)
        n += e.alive;
    return n;
}

int ReductionState::succ(int d) const
{
    const auto& r = rot_.at(dart_vertex_.at(d));
    auto it = std::find(r.begin(), r.end(), d);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    return r[(i + 1) % r.size()];
}

std::vector<Face> ReductionState::faces() const
{
    std::vector<char> used(dart_vertex_.size(), 0);
    std::vector<Face> out;
    for (int s = 0; s < static_cast<int>(dart_vertex_.size()); ++s) {
        if (used[s] || dart_vertex_[s] < 0)
            continue;
        Face f;
        for (int d = s; !used[d]; d = succ(other(d))) {
            used[d] = 1;
            f.push_back(d);
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<int> ReductionState::partition() const
{
    std::vector<int> p;
    for (const auto& f : faces())
        p.push_back(static_cast<int>(f.size()));
    std::sort(p.begin(), p.end());
    return p;
}

int ReductionState::genus() const
{
    int chi = alive_vertices_ - edge_count() + static_cast<int>(faces().size());
    return (2 - chi) / 2;
}

bool ReductionState::is_cycle(const Face& f) const { return is_embedded_cycle(f); }

std::vector<std::string> ReductionState::face_names(const Face& f) const
{
    std::vector<std::string> out;
    for (int d : f)
        out.push_back(edges_[edge_of(d)].name);
    return out;
}

std::optional<Face> ReductionState::find_face(const std::vector<std::string>& names) const
{
    auto want = names;
    std::sort(want.begin(), want.end());
    for (const auto& f : faces()) {
        auto have = face_names(f);
        std::sort(have.begin(), have.end());
        if (have == want)
            return f;
    }
    return std::nullopt;
}

std::optional<int> ReductionState::find_edge(const std::string& name) const
{
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (edges_[e].alive && edges_[e].name == name)
            return e;
    return std::nullopt;
}

std::pair<int, std::vector<std::pair<int, int>>> ReductionState::face_key(const Face& f) const
{
    std::vector<std::pair<int, int>> ranks;
    for (int d : f)
        ranks.push_back(edges_[edge_of(d)].rank);
    std::sort(ranks.begin(), ranks.end());
    return {static_cast<int>(f.size()), ranks};
}

std::optional<Face> ReductionState::smallest_embedded_cycle() const
{
    std::optional<Face> best;
    for (const auto& f : faces()) {
        if (!is_cycle(f))
            continue;
        if (!best || face_key(f) < face_key(*best))
            best = f;
    }
    return best;
}

bool ReductionState::crossing_valid(int e) const
{
    if (e < 0 || e >= static_cast<int>(edges_.size()) || !edges_[e].alive)
        return false;
    int u = dart_vertex_[2 * e], v = dart_vertex_[2 * e + 1];
    if (u == v)
        return false;
    std::set<int> legs;
    for (int w : {u, v})
        for (int d : rot_[w])
            if (edge_of(d) != e)
                legs.insert(edge_of(d));
    return legs.size() == 4;
}

bool ReductionState::triangle_valid(const Face& f) const
{
    if (f.size() != 3 || !is_cycle(f))
        return false;
    std::set<int> verts, inner, legs;
    for (int d : f) {
        verts.insert(dart_vertex_[d]);
        inner.insert(edge_of(d));
    }
    if (verts.size() != 3)
        return false;
    for (int v : verts)
        for (int d : rot_[v])
            if (!inner.count(edge_of(d)))
                legs.insert(edge_of(d));
    return legs.size() == 3;
}

int ReductionState::new_vertex()
{
    rot_.emplace_back();
    ++alive_vertices_;
    return static_cast<int>(rot_.size()) - 1;
}

int ReductionState::new_edge(const std::string& name, SpinArg spin, int u, int v)
{
    WEdge w;
    w.name = name;
    w.spin = spin;
    w.order = next_order_++;
    w.rank = {2, w.order};
    edges_.push_back(w);
    dart_vertex_.push_back(u);
    dart_vertex_.push_back(v);
    return static_cast<int>(edges_.size()) - 1;
}

void ReductionState::kill_edge(int e)
{
    edges_[e].alive = false;
    dart_vertex_[2 * e] = -1;
    dart_vertex_[2 * e + 1] = -1;
}

std::pair<int, int> ReductionState::range_of(SpinArg s) const
{
    if (s.is_var())
        return {vars_[s.var].lo, vars_[s.var].hi};
    return {s.value, s.value};
}

std::string ReductionState::fresh_name()
{
    for (;;) {
        std::string n = "x" + std::to_string(++created_);
        bool clash = false;
        for (const auto& e : edges_)
            clash = clash || e.name == n;
        for (const auto& v : vars_)
            clash = clash || v.name == n;
        if (!clash)
            return n;
    }
}

namespace {
// bounds of |p - q| and p + q when p, q run over parity-fixed intervals
int gap(std::pair<int, int> p, std::pair<int, int> q)
{
    int g = std::max(p.first - q.second, q.first - p.second);
    int par = (p.first + q.first) & 1;
    return std::max(g, par);
}
} // namespace

ReductionStep ReductionState::cross_edge(int e)
{
    if (!crossing_valid(e))
        throw std::invalid_argument("crossing not applicable on edge '" + edges_.at(e).name + "'");
    int du = 2 * e, dv = 2 * e + 1;
    int u = dart_vertex_[du], v = dart_vertex_[dv];
    auto around = [&](int vert, int d) {
        const auto& r = rot_[vert];
        std::size_t i = static_cast<std::size_t>(std::find(r.begin(), r.end(), d) - r.begin());
        return std::pair<int, int>{r[(i + 1) % 3], r[(i + 2) % 3]};
    };
    auto [a, b] = around(u, du);
    auto [c, d] = around(v, dv);
    SpinArg sa = edges_[edge_of(a)].spin, sb = edges_[edge_of(b)].spin;
    SpinArg sc = edges_[edge_of(c)].spin, sd = edges_[edge_of(d)].spin;
    SpinArg se = edges_[e].spin;

    auto ra = range_of(sa), rb = range_of(sb), rc = range_of(sc), rd = range_of(sd);
    BoundVar bv;
    bv.name = fresh_name();
    bv.lo = std::max(gap(rb, rc), gap(rd, ra));
    bv.hi = std::min(rb.second + rc.second, rd.second + ra.second);
    vars_.push_back(bv);
    SpinArg x = SpinArg::of(static_cast<int>(vars_.size()) - 1);

    ReductionStep step;
    step.kind = ReductionStep::Kind::Crossing;
    step.edge = edges_[e].name;
    step.variable = bv.name;
    step.factors = {Factor::loop(x), Factor::six(sb, sc, x, sd, sa, se)};

    kill_edge(e);
    int ne = new_edge(bv.name, x, u, v);
    rot_[u] = {2 * ne, b, c};
    rot_[v] = {2 * ne + 1, d, a};
    dart_vertex_[c] = u;
    dart_vertex_[a] = v;
    return step;
}

ReductionStep ReductionState::apply_crossing(const Face& f, const std::string& edge)
{
    if (!is_cycle(f))
        throw std::invalid_argument("crossing needs an embedded cycle");
    if (f.size() < 4)
        throw std::invalid_argument("crossing needs a face of length at least 4");
    auto e = find_edge(edge);
    if (!e)
        throw std::invalid_argument("unknown edge '" + edge + "'");
    bool on = std::any_of(f.begin(), f.end(), [&](int d) { return edge_of(d) == *e; });
    if (!on)
        throw std::invalid_argument("edge '" + edge + "' is not on the face");
    auto names = face_names(f);
    ReductionStep s = cross_edge(*e);
    s.face = names;
    return s;
}

ReductionStep ReductionState::excise_triangle(const Face& f)
{
    if (!triangle_valid(f))
        throw std::invalid_argument("face is not an excisable triangle");
    std::set<int> inner;
    for (int d : f) {
        inner.insert(d);
        inner.insert(other(d));
    }
    int legs[3];
    SpinArg a[3], s[3];
    for (int i = 0; i < 3; ++i) {
        int vert = dart_vertex_[f[i]];
        for (int d : rot_[vert])
            if (!inner.count(d))
                legs[i] = d;
        a[i] = edges_[edge_of(legs[i])].spin;
        s[i] = edges_[edge_of(f[i])].spin;
    }
    ReductionStep step;
    step.kind = ReductionStep::Kind::Triangle;
    step.face = face_names(f);
    step.factors = {Factor::six(a[0], a[1], a[2], s[1], s[2], s[0])};

    // cyclic order at the merged vertex: walk around the triangle from each leg
    std::vector<int> order{legs[0]};
    while (order.size() < 3) {
        int d = succ(order.back());
        while (inner.count(d))
            d = succ(other(d));
        order.push_back(d);
    }
    int verts[3] = {dart_vertex_[f[0]], dart_vertex_[f[1]], dart_vertex_[f[2]]};
    for (int d : f)
        kill_edge(edge_of(d));
    for (int vert : verts) {
        rot_[vert].clear();
        --alive_vertices_;
    }
    int w = new_vertex();
    rot_[w] = order;
    for (int d : order)
        dart_vertex_[d] = w;
    return step;
}

ReductionStep ReductionState::reduce_bigon(const Face& f)
{
    if (f.size() != 2 || !is_cycle(f))
        throw std::invalid_argument("face is not a bigon");
    if (alive_vertices_ <= 2)
        throw std::invalid_argument("bigon of a theta net; use the V=2 terminal");
    int u = dart_vertex_[f[0]], v = dart_vertex_[f[1]];
    int e1 = edge_of(f[0]), e2 = edge_of(f[1]);
    auto leg = [&](int vert) {
        for (int d : rot_[vert])
            if (edge_of(d) != e1 && edge_of(d) != e2)
                return d;
        throw std::logic_error("bigon vertex without a leg");
    };
    int la = leg(u), lb = leg(v);
    int ea = edge_of(la), eb = edge_of(lb);
    int fa = other(la), fb = other(lb);
    if (ea == eb || dart_vertex_[fa] == dart_vertex_[fb])
        throw std::invalid_argument("bigon would leave a loop");

    ReductionStep step;
    step.kind = ReductionStep::Kind::Bigon;
    step.face = face_names(f);
    step.factors = {Factor::delta(edges_[ea].spin, edges_[eb].spin), Factor::loop(edges_[ea].spin, -1)};

    int keep = edges_[ea].order <= edges_[eb].order ? ea : eb;
    WEdge kept = edges_[keep];
    int wa = dart_vertex_[fa], wb = dart_vertex_[fb];
    for (int e : {e1, e2, ea, eb})
        kill_edge(e);
    rot_[u].clear();
    rot_[v].clear();
    alive_vertices_ -= 2;
    edges_.push_back(kept);
    int ne = static_cast<int>(edges_.size()) - 1;
    edges_[ne].alive = true;
    dart_vertex_.push_back(wa);
    dart_vertex_.push_back(wb);
    std::replace(rot_[wa].begin(), rot_[wa].end(), fa, 2 * ne);
    std::replace(rot_[wb].begin(), rot_[wb].end(), fb, 2 * ne + 1);
    return step;
}

ReductionStep ReductionState::evaluate_phase_factor(Crossing c)
{
    if (alive_vertices_ != 2)
        throw std::invalid_argument("phase factor needs exactly two vertices");
    std::vector<int> es;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (edges_[e].alive)
            es.push_back(e);
    std::sort(es.begin(), es.end(), [&](int x, int y) { return edges_[x].order < edges_[y].order; });
    auto fs = faces();
    ReductionStep step;
    if (fs.size() == 3) {
        step.kind = ReductionStep::Kind::Theta;
        return step;
    }
    if (fs.size() != 1)
        throw std::logic_error("two-vertex net with " + std::to_string(fs.size()) + " faces");
    // twist the newest edge against the two older ones
    step.kind = ReductionStep::Kind::Phase;
    step.face = face_names(fs[0]);
    step.edge = edges_[es[2]].name;
    step.factors = {Factor::twist(edges_[es[0]].spin, edges_[es[1]].spin, edges_[es[2]].spin,
                                  c == Crossing::Over ? 1 : -1)};
    return step;
}

// ---- decompose ------------------------------------------------------------

namespace {

struct Move {
    ReductionStep::Kind kind;
    Face face;
    int edge = -1;
};

std::vector<Move> ordered_moves(const ReductionState& st, int crossings_left)
{
    std::vector<Face> cyc;
    for (auto& f : st.faces())
        if (st.is_cycle(f))
            cyc.push_back(f);
    std::sort(cyc.begin(), cyc.end(), [&](const Face& a, const Face& b) { return st.face_key(a) < st.face_key(b); });
    std::vector<Move> out;
    std::set<int> crossed;
    for (const auto& f : cyc) {
        if (f.size() == 2) {
            out.push_back({ReductionStep::Kind::Bigon, f});
        } else if (f.size() == 3) {
            if (st.triangle_valid(f))
                out.push_back({ReductionStep::Kind::Triangle, f});
        } else if (crossings_left > 0) {
            std::vector<int> es;
            for (int d : f)
                es.push_back(edge_of(d));
            std::sort(es.begin(), es.end(), [&](int a, int b) { return st.edge_rank(a) < st.edge_rank(b); });
            for (int e : es)
                if (!crossed.count(e) && st.crossing_valid(e)) {
                    crossed.insert(e);
                    out.push_back({ReductionStep::Kind::Crossing, f, e});
                }
        }
    }
    return out;
}

bool apply_move(ReductionState& st, const Move& m, ReductionStep& out)
{
    try {
        switch (m.kind) {
        case ReductionStep::Kind::Bigon: out = st.reduce_bigon(m.face); return true;
        case ReductionStep::Kind::Triangle: out = st.excise_triangle(m.face); return true;
        case ReductionStep::Kind::Crossing: out = st.apply_crossing(m.face, st.edge_name(m.edge)); return true;
        default: return false;
        }
    } catch (const std::invalid_argument&) {
        return false;
    }
}

bool dfs(const ReductionState& st, int crossings_left, const DecomposeOptions& opt,
         std::vector<ReductionStep>& steps, ReductionState& final_state)
{
    if (st.vertex_count() == 2) {
        ReductionState end = st;
        steps.push_back(end.evaluate_phase_factor(opt.crossing));
        final_state = end;
        return true;
    }
    for (const auto& m : ordered_moves(st, crossings_left)) {
        ReductionState next = st;
        ReductionStep s;
        if (!apply_move(next, m, s))
            continue;
        steps.push_back(s);
        int left = crossings_left - (m.kind == ReductionStep::Kind::Crossing ? 1 : 0);
        if (dfs(next, left, opt, steps, final_state))
            return true;
        steps.pop_back();
    }
    return false;
}

std::string partition_str(const std::vector<int>& p)
{
    std::string s = "{";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + "}";
}

[[noreturn]] void irreducible(const ReductionState& st, const std::string& why)
{
    auto p = st.partition();
    int h = st.genus();
    throw IrreducibleNetwork(why + " (V=" + std::to_string(st.vertex_count()) + ", faces " + partition_str(p) +
                                 ", genus " + std::to_string(h) + ")",
                             p, h);
}

// Random policy: pick a random cycle face and shorten it by random crossings
// until it can be excised, then start a new round.
bool random_run(ReductionState st, const DecomposeOptions& opt, std::vector<ReductionStep>& steps,
                ReductionState& final_state)
{
    std::mt19937_64 rng(opt.seed);
    int committed = -1; // a dart on the face being shortened
    int crossings = 0;
    const int budget = std::max(opt.crossing_budget, 4 * st.vertex_count() + 8);
    while (st.vertex_count() > 2) {
        std::optional<Face> face;
        if (committed >= 0) {
            for (auto& f : st.faces())
                if (std::find(f.begin(), f.end(), committed) != f.end() && st.is_cycle(f))
                    face = f;
        }
        auto moves_on = [&](const Face& f) {
            std::vector<Move> ms;
            if (f.size() == 2)
                ms.push_back({ReductionStep::Kind::Bigon, f});
            else if (f.size() == 3) {
                if (st.triangle_valid(f))
                    ms.push_back({ReductionStep::Kind::Triangle, f});
            } else if (crossings < budget) {
                for (int d : f)
                    if (st.crossing_valid(edge_of(d)))
                        ms.push_back({ReductionStep::Kind::Crossing, f, edge_of(d)});
            }
            return ms;
        };
        std::vector<Move> ms;
        if (face)
            ms = moves_on(*face);
        if (ms.empty()) {
            std::vector<Face> cand;
            for (auto& f : st.faces())
                if (st.is_cycle(f) && !moves_on(f).empty())
                    cand.push_back(f);
            if (cand.empty())
                return false;
            face = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
            ms = moves_on(*face);
        }
        Move m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
        ReductionStep s;
        if (!apply_move(st, m, s))
            return false;
        steps.push_back(s);
        committed = -1;
        if (m.kind == ReductionStep::Kind::Crossing) {
            ++crossings;
            for (int d : *face)
                if (edge_of(d) != m.edge) {
                    committed = d;
                    break;
                }
        }
    }
    steps.push_back(st.evaluate_phase_factor(opt.crossing));
    final_state = st;
    return true;
}

Expression assemble(const ReductionState& st, const std::vector<ReductionStep>& steps)
{
    Expression e;
    e.vars = st.vars();
    Term t;
    for (const auto& s : steps)
        t.factors.insert(t.factors.end(), s.factors.begin(), s.factors.end());
    e.terms.push_back(std::move(t));
    return e;
}

} // namespace

Decomposition decompose(const SpinNetwork& net, const DecomposeOptions& opt)
{
    net.validate();
    const Graph& g = net.graph;
    Decomposition out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& r = net.scheme.order[v];
        if (!admissible(net.spin(edge_of(r[0])), net.spin(edge_of(r[1])), net.spin(edge_of(r[2])))) {
            ReductionStep z;
            z.kind = ReductionStep::Kind::Zero;
            z.edge = "";
            z.face = {g.edge(edge_of(r[0])).id, g.edge(edge_of(r[1])).id, g.edge(edge_of(r[2])).id};
            out.trace.steps.push_back(z);
            out.trace.terminal = "zero";
            out.expr = Expression::zero();
            return out;
        }
    }
    ReductionState st(net, opt.edge_priority);
    if (st.vertex_count() > 2 && !st.smallest_embedded_cycle())
        irreducible(st, "no embedded cycle");
    std::vector<ReductionStep> steps;
    ReductionState final_state = st;
    bool ok = opt.policy == DecomposeOptions::Policy::Random ? random_run(st, opt, steps, final_state)
                                                              : dfs(st, opt.crossing_budget, opt, steps, final_state);
    if (!ok)
        irreducible(st, "no reduction reaches a terminal within " + std::to_string(opt.crossing_budget) +
                            " crossings");
    out.expr = assemble(final_state, steps);
    out.trace.steps = std::move(steps);
    out.trace.terminal = out.trace.steps.back().kind == ReductionStep::Kind::Phase ? "phase" : "theta";
    return out;
}

Expression replay(const SpinNetwork& net, const ReductionTrace& trace, const DecomposeOptions& opt)
{
    if (trace.terminal == "zero")
        return Expression::zero();
    ReductionState st(net, opt.edge_priority);
    std::vector<ReductionStep> steps;
    for (const auto& s : trace.steps) {
        switch (s.kind) {
        case ReductionStep::Kind::Crossing: {
            auto f = st.find_face(s.face);
            if (!f)
                throw std::invalid_argument("replay: face not found for crossing on '" + s.edge + "'");
            steps.push_back(st.apply_crossing(*f, s.edge));
            break;
        }
        case ReductionStep::Kind::Triangle:
        case ReductionStep::Kind::Bigon: {
            auto f = st.find_face(s.face);
            if (!f)
                throw std::invalid_argument("replay: face not found");
            steps.push_back(s.kind == ReductionStep::Kind::Triangle ? st.excise_triangle(*f) : st.reduce_bigon(*f));
            break;
        }
        case ReductionStep::Kind::Phase:
        case ReductionStep::Kind::Theta:
            steps.push_back(st.evaluate_phase_factor(opt.crossing));
            break;
        case ReductionStep::Kind::Zero:
            return Expression::zero();
        }
    }
    return assemble(st, steps);
}

} // namespace spinnet
