#include "spinnet/evaluator.hpp"

#include <cctype>
#include <sstream>

namespace spinnet {

Factor Factor::loop(SpinArg x, int power)
{
    Factor f;
    f.kind = Kind::Loop;
    f.args = {x};
    f.power = power;
    return f;
}

Factor Factor::six(SpinArg a, SpinArg b, SpinArg e, SpinArg c, SpinArg d, SpinArg fl)
{
    Factor f;
    f.kind = Kind::SixJ;
    f.args = {a, b, e, c, d, fl};
    return f;
}

Factor Factor::twist(SpinArg l, SpinArg m, SpinArg x, int sign)
{
    Factor f;
    f.kind = Kind::Twist;
    f.args = {l, m, x};
    f.sign = sign;
    return f;
}

Factor Factor::afactor(std::vector<SpinArg> plus, std::vector<SpinArg> minus, int sign)
{
    Factor f;
    f.kind = Kind::AFactor;
    f.args = std::move(plus);
    f.minus = std::move(minus);
    f.sign = sign;
    return f;
}

Factor Factor::delta(SpinArg a, SpinArg b)
{
    Factor f;
    f.kind = Kind::Delta;
    f.args = {a, b};
    return f;
}

Factor Factor::scalar(const Rational& c)
{
    Factor f;
    f.kind = Kind::Const;
    f.constant = c;
    return f;
}

Expression Expression::one()
{
    Expression e;
    e.terms.emplace_back();
    return e;
}

Expression Expression::zero() { return Expression{}; }

std::size_t Expression::atom_count() const
{
    std::size_t n = 0;
    for (const auto& t : terms)
        n += t.factors.size();
    return n;
}

std::size_t Expression::count(Factor::Kind k) const
{
    std::size_t n = 0;
    for (const auto& t : terms)
        for (const auto& f : t.factors)
            n += f.kind == k;
    return n;
}

// ---- printing -------------------------------------------------------------

namespace {

std::string arg_str(const SpinArg& a, const std::vector<BoundVar>& vars)
{
    if (a.is_var())
        return vars.at(a.var).name;
    return std::to_string(a.value);
}

std::string args_str(const std::vector<SpinArg>& v, const std::vector<BoundVar>& vars)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + arg_str(v[i], vars);
    return s;
}

std::string factor_str(const Factor& f, const std::vector<BoundVar>& vars)
{
    const char* sg = f.sign > 0 ? "+" : "-";
    switch (f.kind) {
    case Factor::Kind::Loop:
        return "(loop " + arg_str(f.args[0], vars) + (f.power < 0 ? " -1)" : ")");
    case Factor::Kind::SixJ:
        return "(sixj " + args_str(f.args, vars) + ")";
    case Factor::Kind::Twist:
        return std::string("(twist ") + sg + " " + args_str(f.args, vars) + ")";
    case Factor::Kind::AFactor:
        return std::string("(afactor ") + sg + " (" + args_str(f.args, vars) + ") (" + args_str(f.minus, vars) + "))";
    case Factor::Kind::Delta:
        return "(delta " + args_str(f.args, vars) + ")";
    case Factor::Kind::Const: {
        std::ostringstream os;
        os << "(const " << f.constant << ")";
        return os.str();
    }
    }
    return "";
}

std::string term_str(const Term& t, const std::vector<BoundVar>& vars)
{
    std::string s = "(term";
    for (const auto& f : t.factors)
        s += " " + factor_str(f, vars);
    return s + ")";
}

} // namespace

std::string Expression::str() const
{
    if (terms.empty())
        return "0";
    if (vars.empty() && terms.size() == 1) {
        if (terms[0].factors.empty())
            return "1";
        return term_str(terms[0], vars);
    }
    std::string s = "(sum (";
    for (std::size_t i = 0; i < vars.size(); ++i)
        s += (i ? " (" : "(") + vars[i].name + " " + std::to_string(vars[i].lo) + ".." +
             std::to_string(vars[i].hi) + ")";
    s += ")";
    for (const auto& t : terms)
        s += " " + term_str(t, vars);
    return s + ")";
}

// ---- parsing --------------------------------------------------------------

namespace {

struct Node {
    bool list = false;
    std::string atom;
    std::vector<Node> items;
};

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}

    Node read()
    {
        skip();
        if (pos_ >= s_.size())
            throw ExpressionError("unexpected end of expression");
        if (s_[pos_] == ')')
            throw ExpressionError("unexpected ')' at offset " + std::to_string(pos_));
        Node n;
        if (s_[pos_] == '(') {
            ++pos_;
            n.list = true;
            for (;;) {
                skip();
                if (pos_ >= s_.size())
                    throw ExpressionError("missing ')'");
                if (s_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                n.items.push_back(read());
            }
            return n;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')')
            ++pos_;
        n.atom = s_.substr(start, pos_ - start);
        return n;
    }

    bool done()
    {
        skip();
        return pos_ >= s_.size();
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
};

const std::string& atom(const Node& n, const char* what)
{
    if (n.list)
        throw ExpressionError(std::string("expected ") + what);
    return n.atom;
}

int parse_int(const std::string& s)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ExpressionError("bad integer '" + s + "'");
    }
    if (used != s.size())
        throw ExpressionError("bad integer '" + s + "'");
    return v;
}

SpinArg parse_arg(const Node& n, const std::vector<BoundVar>& vars)
{
    const std::string& a = atom(n, "spin");
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == a)
            return SpinArg::of(static_cast<int>(i));
    int v = parse_int(a);
    if (v < 0)
        throw ExpressionError("negative spin '" + a + "'");
    return SpinArg::lit(v);
}

int parse_sign(const Node& n)
{
    const std::string& a = atom(n, "sign");
    if (a == "+")
        return 1;
    if (a == "-")
        return -1;
    throw ExpressionError("expected + or -, got '" + a + "'");
}

std::vector<SpinArg> parse_args(const Node& n, const std::vector<BoundVar>& vars)
{
    if (!n.list)
        throw ExpressionError("expected a spin list");
    std::vector<SpinArg> out;
    for (const auto& c : n.items)
        out.push_back(parse_arg(c, vars));
    return out;
}

Factor parse_factor(const Node& n, const std::vector<BoundVar>& vars)
{
    if (!n.list || n.items.empty())
        throw ExpressionError("expected a factor");
    const std::string& head = atom(n.items[0], "factor name");
    auto need = [&](std::size_t k) {
        if (n.items.size() != k + 1)
            throw ExpressionError("(" + head + ") takes " + std::to_string(k) + " arguments");
    };
    auto arg = [&](std::size_t i) { return parse_arg(n.items[i], vars); };
    if (head == "loop") {
        if (n.items.size() == 3) {
            if (atom(n.items[2], "power") != "-1")
                throw ExpressionError("loop power must be -1 when given");
            return Factor::loop(arg(1), -1);
        }
        need(1);
        return Factor::loop(arg(1));
    }
    if (head == "sixj") {
        need(6);
        return Factor::six(arg(1), arg(2), arg(3), arg(4), arg(5), arg(6));
    }
    if (head == "twist") {
        need(4);
        return Factor::twist(arg(2), arg(3), arg(4), parse_sign(n.items[1]));
    }
    if (head == "afactor") {
        need(3);
        return Factor::afactor(parse_args(n.items[2], vars), parse_args(n.items[3], vars), parse_sign(n.items[1]));
    }
    if (head == "delta") {
        need(2);
        return Factor::delta(arg(1), arg(2));
    }
    if (head == "const") {
        need(1);
        try {
            return Factor::scalar(Rational(atom(n.items[1], "constant")));
        } catch (const std::runtime_error&) {
            throw ExpressionError("bad constant '" + n.items[1].atom + "'");
        }
    }
    throw ExpressionError("unknown factor '" + head + "'");
}

Term parse_term(const Node& n, const std::vector<BoundVar>& vars)
{
    if (!n.list || n.items.empty() || n.items[0].list || n.items[0].atom != "term")
        throw ExpressionError("expected (term ...)");
    Term t;
    for (std::size_t i = 1; i < n.items.size(); ++i)
        t.factors.push_back(parse_factor(n.items[i], vars));
    return t;
}

} // namespace

Expression Expression::parse(const std::string& text)
{
    Reader rd(text);
    Node n = rd.read();
    if (!rd.done())
        throw ExpressionError("trailing text after expression");
    if (!n.list) {
        if (n.atom == "0")
            return zero();
        if (n.atom == "1")
            return one();
        throw ExpressionError("expected an expression, got '" + n.atom + "'");
    }
    Expression e;
    if (!n.items.empty() && !n.items[0].list && n.items[0].atom == "term") {
        e.terms.push_back(parse_term(n, e.vars));
        return e;
    }
    if (n.items.size() < 2 || n.items[0].list || n.items[0].atom != "sum" || !n.items[1].list)
        throw ExpressionError("expected (sum (<vars>) <terms>)");
    for (const auto& v : n.items[1].items) {
        if (!v.list || v.items.size() != 2)
            throw ExpressionError("expected (<name> <lo>..<hi>)");
        BoundVar bv;
        bv.name = atom(v.items[0], "variable name");
        const std::string& r = atom(v.items[1], "range");
        auto dots = r.find("..");
        if (dots == std::string::npos)
            throw ExpressionError("bad range '" + r + "'");
        bv.lo = parse_int(r.substr(0, dots));
        bv.hi = parse_int(r.substr(dots + 2));
        if (bv.lo < 0)
            throw ExpressionError("negative range bound in '" + r + "'");
        if (!bv.name.empty() && (std::isdigit(static_cast<unsigned char>(bv.name[0])) || bv.name[0] == '-'))
            throw ExpressionError("variable name '" + bv.name + "' must not start with a digit");
        for (const auto& o : e.vars)
            if (o.name == bv.name)
                throw ExpressionError("duplicate variable '" + bv.name + "'");
        e.vars.push_back(bv);
    }
    for (std::size_t i = 2; i < n.items.size(); ++i)
        e.terms.push_back(parse_term(n.items[i], e.vars));
    return e;
}

// ---- evaluation -----------------------------------------------------------

namespace {
int value_of(const SpinArg& a, const std::vector<int>& values)
{
    return a.is_var() ? values.at(a.var) : a.value;
}
} // namespace

Scalar evaluate_factor(const Factor& f, const std::vector<int>& values, const Deformation& d, const EvalOptions& opt)
{
    auto v = [&](std::size_t i) { return value_of(f.args[i], values); };
    switch (f.kind) {
    case Factor::Kind::Loop: {
        Scalar l = loop_value(v(0), d);
        if (f.power >= 0)
            return l;
        if (d.vanishes(v(0) + 1))
            throw DomainError("loop value of spin " + std::to_string(v(0)) + "/2 vanishes in a denominator",
                              v(0) + 1);
        return d.one() / l;
    }
    case Factor::Kind::SixJ:
        return sixj(v(0), v(1), v(2), v(3), v(4), v(5), d);
    case Factor::Kind::Twist:
        if (!admissible(v(0), v(1), v(2)))
            return d.zero();
        if (opt.phase_to_one)
            return d.one();
        return a_factor({v(0), v(1)}, {v(2)}, f.sign, d);
    case Factor::Kind::AFactor: {
        if (opt.phase_to_one)
            return d.one();
        std::vector<int> p, m;
        for (const auto& a : f.args)
            p.push_back(value_of(a, values));
        for (const auto& a : f.minus)
            m.push_back(value_of(a, values));
        return a_factor(p, m, f.sign, d);
    }
    case Factor::Kind::Delta:
        return v(0) == v(1) ? d.one() : d.zero();
    case Factor::Kind::Const:
        if (d.classical_mode())
            return Scalar(Surd(f.constant));
        return Scalar(std::complex<double>(f.constant.convert_to<double>(), 0.0));
    }
    return d.zero();
}

namespace {

int depth_of(const Factor& f)
{
    int m = -1;
    for (const auto& a : f.args)
        m = std::max(m, a.var);
    for (const auto& a : f.minus)
        m = std::max(m, a.var);
    return m;
}

struct TermEval {
    const Expression& e;
    const Deformation& d;
    const EvalOptions& opt;
    std::vector<std::vector<const Factor*>> bucket; // index depth+1
    std::vector<int> values;
    Scalar total;

    void run(int level, const Scalar& acc)
    {
        int n = static_cast<int>(e.vars.size());
        if (level == n) {
            total += acc;
            return;
        }
        const BoundVar& bv = e.vars[level];
        for (int x = bv.lo; x <= bv.hi; x += 2) {
            values[level] = x;
            Scalar p = acc;
            for (const Factor* f : bucket[level + 1]) {
                p *= evaluate_factor(*f, values, d, opt);
                if (p.is_zero())
                    break;
            }
            if (!p.is_zero())
                run(level + 1, p);
        }
    }
};

} // namespace

Scalar evaluate_numeric(const Expression& e, const Deformation& d, const EvalOptions& opt)
{
    Scalar sum = d.zero();
    for (const auto& t : e.terms) {
        TermEval te{e, d, opt, std::vector<std::vector<const Factor*>>(e.vars.size() + 1),
                    std::vector<int>(e.vars.size(), 0), d.zero()};
        for (const auto& f : t.factors) {
            int k = depth_of(f);
            if (k >= static_cast<int>(e.vars.size()))
                throw ExpressionError("factor refers to an undeclared variable");
            te.bucket[k + 1].push_back(&f);
        }
        Scalar acc = d.one();
        for (const Factor* f : te.bucket[0]) {
            acc *= evaluate_factor(*f, te.values, d, opt);
            if (acc.is_zero())
                break;
        }
        if (!acc.is_zero())
            te.run(0, acc);
        sum += te.total;
    }
    return sum;
}

} // namespace spinnet
