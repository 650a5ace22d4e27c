#ifndef SPINNET_EVALUATOR_HPP
#define SPINNET_EVALUATOR_HPP

#include "spinnet/graph.hpp"
#include "spinnet/recoupling.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinnet {

// ---- expressions ----------------------------------------------------------

// A literal 2j or a reference to a bound variable.
struct SpinArg {
    int value = 0;
    int var = -1;
    bool is_var() const { return var >= 0; }
    static SpinArg lit(int v) { return SpinArg{v, -1}; }
    static SpinArg of(int var) { return SpinArg{0, var}; }
    bool operator==(const SpinArg& o) const { return value == o.value && var == o.var; }
};

struct Factor {
    enum class Kind { Loop, SixJ, Twist, AFactor, Delta, Const };
    Kind kind = Kind::Const;
    std::vector<SpinArg> args; // loop: x; sixj: 6; twist: l m x; afactor: plus list; delta: a b
    std::vector<SpinArg> minus; // afactor only
    int power = 1;              // loop: +1 or -1
    int sign = 1;               // twist, afactor
    Rational constant = 1;      // const

    static Factor loop(SpinArg x, int power = 1);
    static Factor six(SpinArg a, SpinArg b, SpinArg e, SpinArg c, SpinArg d, SpinArg f);
    static Factor twist(SpinArg l, SpinArg m, SpinArg x, int sign);
    static Factor afactor(std::vector<SpinArg> plus, std::vector<SpinArg> minus, int sign);
    static Factor delta(SpinArg a, SpinArg b);
    static Factor scalar(const Rational& c);
};

// Bound variable over lo, lo+2, ..., hi (2j units; admissibility fixes parity).
struct BoundVar {
    std::string name;
    int lo = 0;
    int hi = -1;
};

struct Term {
    std::vector<Factor> factors;
};

// Sum over all bound-variable assignments of the sum of the terms.
struct Expression {
    std::vector<BoundVar> vars;
    std::vector<Term> terms;

    static Expression one();
    static Expression zero();
    std::size_t atom_count() const;
    std::size_t count(Factor::Kind k) const;

    std::string str() const;
    static Expression parse(const std::string& text);
};

class ExpressionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalOptions {
    bool phase_to_one = false; // twist/afactor atoms evaluate to their admissibility only
};

Scalar evaluate_factor(const Factor& f, const std::vector<int>& values, const Deformation& d,
                       const EvalOptions& opt = {});
// Deterministic nested summation, variables in declaration order, ascending.
Scalar evaluate_numeric(const Expression& e, const Deformation& d, const EvalOptions& opt = {});

// ---- networks -------------------------------------------------------------

struct SpinNetwork {
    Graph graph; // every edge carries a spin
    RotationScheme scheme;

    static SpinNetwork from_file(const GraphFile& f);
    void validate() const;
    int spin(int edge) const { return *graph.edge(edge).spin; }
};

class IrreducibleNetwork : public std::runtime_error {
public:
    IrreducibleNetwork(const std::string& what, std::vector<int> partition, int genus)
        : std::runtime_error(what), partition_(std::move(partition)), genus_(genus) {}
    const std::vector<int>& partition() const { return partition_; }
    int genus() const { return genus_; }

private:
    std::vector<int> partition_;
    int genus_;
};

struct ReductionStep {
    enum class Kind { Crossing, Triangle, Bigon, Phase, Theta, Zero };
    Kind kind;
    std::vector<std::string> face; // edge names around the face, walk order
    std::string edge;              // crossed edge, or the twisted edge for Phase
    std::string variable;          // introduced bound variable
    std::vector<Factor> factors;
};

const char* step_name(ReductionStep::Kind k);

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::string terminal; // "theta", "phase", "zero"
    std::string str(const Expression& e) const;
};

// Trivalent ribbon graph whose spins may be bound variables. Rewrites act in
// place. Darts: 2*edge + end, the same convention as graph_core half-edges.
class ReductionState {
public:
    explicit ReductionState(const SpinNetwork& net, const std::vector<std::string>& priority = {});

    int vertex_count() const { return alive_vertices_; }
    int edge_count() const;
    std::vector<Face> faces() const;
    std::vector<int> partition() const;
    int genus() const;
    bool is_cycle(const Face& f) const;
    std::vector<std::string> face_names(const Face& f) const;
    std::optional<Face> find_face(const std::vector<std::string>& names) const;
    std::optional<Face> smallest_embedded_cycle() const;

    std::optional<int> find_edge(const std::string& name) const;
    const std::string& edge_name(int e) const { return edges_.at(e).name; }
    SpinArg edge_spin(int e) const { return edges_.at(e).spin; }
    const std::vector<BoundVar>& vars() const { return vars_; }

    bool crossing_valid(int e) const;
    bool triangle_valid(const Face& f) const;

    // Crossing identity on edge e; no face precondition.
    ReductionStep cross_edge(int e);
    ReductionStep apply_crossing(const Face& f, const std::string& edge);
    ReductionStep excise_triangle(const Face& f);
    ReductionStep reduce_bigon(const Face& f);
    // V = 2 terminals: theta (3 faces) or toroidal phase factor (1 face)
    ReductionStep evaluate_phase_factor(Crossing c);

    // Sort key used for lexicographic choices: (length, ranks of its edges).
    std::pair<int, std::vector<std::pair<int, int>>> face_key(const Face& f) const;
    std::pair<int, int> edge_rank(int e) const { return edges_.at(e).rank; }

private:
    struct WEdge {
        std::string name;
        SpinArg spin;
        int order = 0;               // creation order
        std::pair<int, int> rank{};  // priority / name / creation
        bool alive = true;
    };
    int new_vertex();
    int new_edge(const std::string& name, SpinArg spin, int dart_u_vertex, int dart_v_vertex);
    void kill_edge(int e);
    int other(int d) const { return d ^ 1; }
    int succ(int d) const;
    std::pair<int, int> range_of(SpinArg s) const;
    std::string fresh_name();

    std::vector<WEdge> edges_;
    std::vector<int> dart_vertex_; // -1 when dead
    std::vector<std::vector<int>> rot_;
    int alive_vertices_ = 0;
    int created_ = 0;
    int next_order_ = 0;
    std::vector<BoundVar> vars_;
};

struct DecomposeOptions {
    enum class Policy { Deterministic, Random };
    Policy policy = Policy::Deterministic;
    std::uint64_t seed = 1;
    std::vector<std::string> edge_priority;
    int crossing_budget = 8;
    Crossing crossing = Crossing::Over;
};

struct Decomposition {
    Expression expr;
    ReductionTrace trace;
};

Decomposition decompose(const SpinNetwork& net, const DecomposeOptions& opt = {});
// Reapplies a trace to the network; yields the same expression.
Expression replay(const SpinNetwork& net, const ReductionTrace& trace, const DecomposeOptions& opt = {});

// ---- K3,3 -----------------------------------------------------------------

// Spins by edge name: j1..j6, k, l, m.
using K33Labels = std::map<std::string, int>;
extern const std::array<const char*, 9> kK33EdgeNames;

// Orientation signs of vertices 1,3,5 (reference (2 4 6)) and 2,4,6
// (reference (1 3 5)).
SpinNetwork k33_network(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                        const K33Labels& labels);

struct K33Result {
    K33Family family;
    Decomposition decomposition;
    Scalar value;
    std::optional<Scalar> closed_form; // reference configurations only
    std::string closed_form_text;
};

struct K33Options {
    Crossing crossing = Crossing::Over;
    EvalOptions eval{};
};

K33Result evaluate_k33(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                       const K33Labels& labels, const Deformation& d, const K33Options& opt = {});

// Closed forms in the K3,3 edge naming, s = +1 for over-crossings.
Scalar k33_sym4410_closed_form(const K33Labels& L, const Deformation& d, int s = 1);
Scalar k33_sym666_closed_form(const K33Labels& L, const Deformation& d, int s = 1);
Scalar k33_sym666_printed_form(const K33Labels& L, const Deformation& d);
Scalar k33_sym666_two_sum_form(const K33Labels& L, const Deformation& d, int s = 1);
// Successive forms from the two-sum form down to the single toroidal symbol:
// two-sum, exchange-ready grid, after exchange, after the claim over x, final.
std::vector<Scalar> k33_sym666_chain(const K33Labels& L, const Deformation& d, int s = 1);

// Configurations for which the closed forms apply.
constexpr std::array<int, 3> kSym4410R{1, -1, -1}, kSym4410S{1, -1, -1};
constexpr std::array<int, 3> kSym666R{-1, -1, -1}, kSym666S{1, 1, 1};

} // namespace spinnet

#endif
