// spinnet: command-line front end.
#include "spinnet/evaluator.hpp"
#include "spinnet/identities.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace spinnet;

namespace {

struct RunConfig {
    std::string input;
    std::string q;
    std::string q_phase;
    double tol = kDefaultTolerance;
    int max2j = 3;
    int k33_max2j = 2;
    std::uint64_t scheme_bound = kDefaultSchemeBound;
    std::uint64_t seed = 1;
    std::string format = "text";
    bool all_schemes = false;
    bool positive_part = false;
    bool halves = false;
    std::string crossing = "over";
    std::string policy = "deterministic";
    std::vector<std::string> priority;
    std::vector<std::string> corrupt;
};

Deformation deformation(const RunConfig& c)
{
    if (!c.q_phase.empty()) {
        if (!c.q.empty())
            throw std::invalid_argument("--q and --q-phase are exclusive");
        return Deformation::parse_phase(c.q_phase);
    }
    if (c.q.empty() || c.q == "1")
        return Deformation::classical();
    throw std::invalid_argument("--q accepts only 1 (classical); use --q-phase p/r for q = exp(i pi p/r)");
}

std::string spin_text(int two_j, bool halves)
{
    if (!halves)
        return std::to_string(two_j);
    return two_j % 2 ? std::to_string(two_j) + "/2" : std::to_string(two_j / 2);
}

std::string partition_text(const std::vector<int>& p)
{
    std::string s = "{";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + "}";
}

void print_faces(const Graph& g, const RotationScheme& r, const RunConfig& c, std::ostream& os)
{
    FaceTrace ft = trace_faces(g, r);
    if (c.format == "dot") {
        os << to_dot(g, &ft);
        return;
    }
    if (c.format == "sexp") {
        os << "(faces";
        for (const auto& f : ft.faces) {
            os << " (face";
            for (HalfEdge h : f)
                os << " " << side_string(g, h);
            os << ")";
        }
        os << ")\n";
        return;
    }
    for (std::size_t i = 0; i < ft.faces.size(); ++i)
        os << "face " << i + 1 << " length " << ft.faces[i].size() << ": " << face_string(g, ft.faces[i]) << "\n";
    os << "partition " << partition_text(ft.partition()) << "\n";
    os << "genus " << embedding_genus(g, ft) << "\n";
}

int cmd_faces(const RunConfig& c)
{
    GraphFile f = load_graph(c.input);
    if (!c.all_schemes) {
        print_faces(f.graph, f.scheme, c, std::cout);
        return 0;
    }
    std::map<std::pair<std::vector<int>, int>, std::uint64_t> census;
    std::uint64_t n = 0;
    enumerate_schemes(
        f.graph,
        [&](const RotationScheme& r) {
            FaceTrace ft = trace_faces(f.graph, r);
            int h = embedding_genus(f.graph, ft);
            ++n;
            ++census[{ft.partition(), h}];
            if (c.format == "text")
                std::cout << "scheme " << n << ": partition " << partition_text(ft.partition()) << " genus " << h
                          << "\n";
            return true;
        },
        c.scheme_bound);
    std::cout << "census over " << n << " schemes\n";
    for (const auto& [key, count] : census)
        std::cout << "  " << partition_text(key.first) << " genus " << key.second << ": " << count << "\n";
    return 0;
}

int cmd_classify(const RunConfig& c)
{
    GraphFile f = load_graph(c.input);
    if (!is_k33(f.graph))
        throw GraphError("classify needs a K3,3 graph");
    K33Parts parts = k33_parts(f.graph);
    struct Row {
        std::map<std::vector<int>, std::uint64_t> partitions;
        std::set<int> genera;
        std::uint64_t count = 0;
    };
    std::map<K33Family, Row> rows;
    std::uint64_t total = 0;
    enumerate_schemes(
        f.graph,
        [&](const RotationScheme& r) {
            if (c.positive_part) {
                auto s = k33_signs(f.graph, r);
                for (int v : parts.r)
                    if (s[v] < 0)
                        return true;
            }
            FaceTrace ft = trace_faces(f.graph, r);
            Row& row = rows[classify_k33(f.graph, r)];
            ++row.count;
            ++row.partitions[ft.partition()];
            row.genera.insert(embedding_genus(f.graph, ft));
            ++total;
            return true;
        },
        c.scheme_bound);
    std::cout << std::left << std::setw(9) << "family" << std::setw(11) << "partition" << std::setw(7) << "genus"
              << "count\n";
    for (K33Family fam : {K33Family::Sym666, K33Family::Sym4410, K33Family::Asym18}) {
        const Row& row = rows[fam];
        std::string parts_s, genus_s;
        for (const auto& [p, n] : row.partitions)
            parts_s += (parts_s.empty() ? "" : "|") + partition_text(p);
        for (int h : row.genera)
            genus_s += (genus_s.empty() ? "" : ",") + std::to_string(h);
        std::cout << std::setw(9) << family_name(fam) << std::setw(11) << (parts_s.empty() ? "-" : parts_s)
                  << std::setw(7) << (genus_s.empty() ? "-" : genus_s) << row.count << "\n";
    }
    std::cout << "total " << total << "\n";
    return 0;
}

int cmd_genus(const RunConfig& c)
{
    GraphFile f = load_graph(c.input);
    int h = graph_genus(f.graph, c.scheme_bound);
    std::cout << "schemes " << scheme_count(f.graph) << "\n";
    std::cout << "genus " << h << "\n";
    std::cout << "planar " << (h == 0 ? "yes" : "no") << "\n";
    if (f.graph.vertex_count() <= kDefaultMinorVertexBound)
        std::cout << "forbidden-minor " << (has_forbidden_minor(f.graph) ? "yes" : "no") << "\n";
    if (f.has_rotation) {
        FaceTrace ft = trace_faces(f.graph, f.scheme);
        std::cout << "given-scheme genus " << embedding_genus(f.graph, ft) << " partition "
                  << partition_text(ft.partition()) << "\n";
    }
    return 0;
}

DecomposeOptions decompose_options(const RunConfig& c)
{
    DecomposeOptions o;
    o.seed = c.seed;
    o.edge_priority = c.priority;
    o.crossing = c.crossing == "under" ? Crossing::Under : Crossing::Over;
    o.policy = c.policy == "random" ? DecomposeOptions::Policy::Random : DecomposeOptions::Policy::Deterministic;
    return o;
}

int cmd_decompose(const RunConfig& c)
{
    if (c.format == "dot")
        throw std::invalid_argument("decompose has no DOT output; use export-dot");
    SpinNetwork net = SpinNetwork::from_file(load_graph(c.input));
    Decomposition d = decompose(net, decompose_options(c));
    if (c.format == "text")
        std::cout << d.trace.str(d.expr);
    std::cout << d.expr.str() << "\n";
    return 0;
}

int cmd_eval(const RunConfig& c)
{
    Deformation q = deformation(c);
    std::ifstream in(c.input);
    if (!in)
        throw std::runtime_error("cannot open '" + c.input + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    Expression e;
    if (first != std::string::npos && (text[first] == '(' || std::isdigit(static_cast<unsigned char>(text[first]))))
        e = Expression::parse(text);
    else
        e = decompose(SpinNetwork::from_file(parse_graph_string(text)), decompose_options(c)).expr;
    Scalar v = evaluate_numeric(e, q);
    if (c.format == "sexp")
        std::cout << "(value \"" << q.str() << "\" \"" << v.str() << "\")\n";
    else
        std::cout << v.str() << "\n";
    return 0;
}

int cmd_verify(const RunConfig& c)
{
    Deformation q = deformation(c);
    SuiteOptions o;
    o.max2j = c.max2j;
    o.k33_max2j = std::min(c.k33_max2j, c.max2j);
    o.tol = c.tol;
    o.corrupt.insert(c.corrupt.begin(), c.corrupt.end());
    auto results = run_identity_suite(q, o);
    bool ok = true;
    std::cout << "deformation " << q.str() << ", 2j <= " << o.max2j << " (K3,3: " << o.k33_max2j << "), tol " << c.tol
              << "\n";
    std::cout << std::left << std::setw(24) << "identity" << std::right << std::setw(8) << "pass" << std::setw(8)
              << "fail" << std::setw(10) << "singular"
              << "  status\n";
    for (const auto& r : results) {
        ok = ok && r.ok();
        std::cout << std::left << std::setw(24) << r.name << std::right << std::setw(8) << r.passed << std::setw(8)
                  << r.failed << std::setw(10) << r.singular << "  " << (r.ok() ? "PASS" : "FAIL") << "\n";
        if (!r.first_failure.empty())
            std::cout << "    first failure: " << r.first_failure << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_export_dot(const RunConfig& c)
{
    GraphFile f = load_graph(c.input);
    FaceTrace ft = trace_faces(f.graph, f.scheme);
    std::string dot = to_dot(f.graph, &ft);
    if (c.halves) {
        // relabel j=<2j>/2 labels as plain spins
        for (int e = 0; e < f.graph.edge_count(); ++e) {
            const auto& s = f.graph.edge(e).spin;
            if (!s)
                continue;
            std::string from = "label=\"j=" + std::to_string(*s) + "/2\", id=\"" + f.graph.edge(e).id + "\"";
            std::string to = "label=\"j=" + spin_text(*s, true) + "\", id=\"" + f.graph.edge(e).id + "\"";
            auto p = dot.find(from);
            if (p != std::string::npos)
                dot.replace(p, from.size(), to);
        }
    }
    std::cout << dot;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spinnet: spin networks on embedded graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    app.add_option("--q", c.q, "deformation parameter; only 1 (classical, exact) is accepted");
    app.add_option("--q-phase", c.q_phase, "q = exp(i pi p/r), given as p/r");
    app.add_option("--tol", c.tol, "relative tolerance for numeric comparisons")->check(CLI::PositiveNumber);
    app.add_option("--max-2j", c.max2j, "largest 2j in identity sweeps")->check(CLI::NonNegativeNumber);
    app.add_option("--k33-max-2j", c.k33_max2j, "largest 2j in K3,3 sweeps")->check(CLI::NonNegativeNumber);
    app.add_option("--scheme-bound", c.scheme_bound, "refuse enumerations beyond this many schemes");
    app.add_option("--seed", c.seed, "seed for randomized reduction orders");
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "sexp", "dot"}));
    app.add_option("--crossing", c.crossing, "twist convention")->check(CLI::IsMember({"over", "under"}));
    app.add_option("--policy", c.policy, "reduction order")->check(CLI::IsMember({"deterministic", "random"}));
    app.add_option("--priority", c.priority, "edges ranked ahead of the lexicographic order")->delimiter(',');
    app.add_flag("--halves", c.halves, "print spins as j instead of 2j where supported");

    auto* faces = app.add_subcommand("faces", "trace the faces of the given (or every) rotation scheme");
    faces->add_option("graph", c.input)->required();
    faces->add_flag("--all", c.all_schemes, "enumerate all rotation schemes");
    auto* classify = app.add_subcommand("classify", "K3,3 embedding census by family");
    classify->add_option("graph", c.input)->required();
    classify->add_flag("--positive-part", c.positive_part, "only schemes with every vertex of the first part at +1");
    auto* genus = app.add_subcommand("genus", "orientable genus by exhaustive scheme search");
    genus->add_option("graph", c.input)->required();
    auto* dec = app.add_subcommand("decompose", "reduce a spin network to an expression");
    dec->add_option("graph", c.input)->required();
    auto* ev = app.add_subcommand("eval", "evaluate a spin network or an expression file");
    ev->add_option("input", c.input)->required();
    auto* ver = app.add_subcommand("verify", "run the recoupling identity suite");
    ver->add_option("--corrupt", c.corrupt, "negate the right-hand side of the named identity");
    auto* dot = app.add_subcommand("export-dot", "write the graph and its faces as DOT");
    dot->add_option("graph", c.input)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*faces)
            return cmd_faces(c);
        if (*classify)
            return cmd_classify(c);
        if (*genus)
            return cmd_genus(c);
        if (*dec)
            return cmd_decompose(c);
        if (*ev)
            return cmd_eval(c);
        if (*ver)
            return cmd_verify(c);
        if (*dot)
            return cmd_export_dot(c);
    } catch (const IrreducibleNetwork& e) {
        std::cerr << "irreducible: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << c.input << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
