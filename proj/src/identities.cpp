#include "spinnet/identities.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace spinnet {

namespace {

// Compares lhs with rhs (negated when corrupted) and files the outcome.
class Tally {
public:
    Tally(std::string name, const SuiteOptions& o) : opt_(o)
    {
        res_.name = std::move(name);
        flip_ = o.corrupt.count(res_.name) > 0;
    }

    template <class F>
    void run(F&& instance)
    {
        try {
            instance();
        } catch (const DomainError&) {
            ++res_.singular;
        }
    }

    void compare(const Scalar& lhs, const Scalar& rhs, const std::function<std::string()>& where)
    {
        Scalar r = flip_ ? -rhs : rhs;
        if (approx_equal(lhs, r, opt_.tol)) {
            ++res_.passed;
            return;
        }
        if (res_.failed++ == 0)
            res_.first_failure = where() + ": " + lhs.str() + " vs " + r.str();
    }

    CheckResult result() const { return res_; }

private:
    const SuiteOptions& opt_;
    CheckResult res_;
    bool flip_ = false;
};

std::string join(std::initializer_list<int> v)
{
    std::ostringstream os;
    bool first = true;
    for (int x : v) {
        os << (first ? "" : " ") << x;
        first = false;
    }
    return os.str();
}

std::string grid_str(const Grid& g)
{
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < 3; ++r)
        os << (r ? "; " : "") << g[r][0] << " " << g[r][1] << " " << g[r][2];
    os << "]";
    return os.str();
}

// every grid with admissible rows and columns, entries 0..M
std::vector<Grid> admissible_grids(int M)
{
    std::vector<Grid> out;
    Grid g{};
    std::function<void(int)> fill = [&](int pos) {
        if (pos == 9) {
            for (int i = 0; i < 3; ++i)
                if (!admissible(g[i][0], g[i][1], g[i][2]) || !admissible(g[0][i], g[1][i], g[2][i]))
                    return;
            out.push_back(g);
            return;
        }
        for (int v = 0; v <= M; ++v) {
            g[pos / 3][pos % 3] = v;
            if (pos % 3 == 2 && !admissible(g[pos / 3][0], g[pos / 3][1], v))
                continue;
            fill(pos + 1);
        }
    };
    fill(0);
    return out;
}

Scalar exchange_rhs(const Grid& g, const Deformation& d, int prefactor_sign)
{
    // g = [y k m; j5 j4 l; j1 j3 x]
    int y = g[0][0], k = g[0][1], m = g[0][2];
    int j5 = g[1][0], j4 = g[1][1], l = g[1][2];
    int j1 = g[2][0], j3 = g[2][1], x = g[2][2];
    Grid h{{{y, j1, j5}, {m, x, l}, {k, j3, j4}}};
    return a_factor({k, j5}, {j1, m}, prefactor_sign, d) * toroidal_symbol(h, d, 1, IndexPair::P19);
}

Grid exchanged(const Grid& g)
{
    return Grid{{{g[0][0], g[2][0], g[1][0]}, {g[0][2], g[2][2], g[1][2]}, {g[0][1], g[2][1], g[1][1]}}};
}

} // namespace

CheckResult check_orthogonality(const Deformation& d, const SuiteOptions& o)
{
    Tally t("orthogonality", o);
    const int M = o.max2j;
    for (int a = 0; a <= M; ++a)
        for (int b = 0; b <= M; ++b)
            for (int c = 0; c <= M; ++c)
                for (int dd = 0; dd <= M; ++dd)
                    for (int x = 0; x <= 2 * M; ++x) {
                        if (!admissible(a, dd, x) || !admissible(b, c, x))
                            continue;
                        for (int y = 0; y <= 2 * M; ++y) {
                            if (!admissible(a, dd, y) || !admissible(b, c, y))
                                continue;
                            t.run([&] {
                                Scalar s = d.zero();
                                for (int m = 0; m <= 2 * M; ++m)
                                    s += loop_value(m, d) * sixj(a, b, m, c, dd, x, d) * sixj(a, b, m, c, dd, y, d);
                                s *= loop_value(x, d);
                                t.compare(s, x == y ? d.one() : d.zero(),
                                          [&] { return "a b c d x y = " + join({a, b, c, dd, x, y}); });
                            });
                        }
                    }
    return t.result();
}

CheckResult check_biedenharn_elliott(const Deformation& d, const SuiteOptions& o)
{
    Tally t("biedenharn-elliott", o);
    const int M = o.max2j;
    for (int a = 0; a <= M; ++a)
        for (int b = 0; b <= M; ++b)
            for (int c = 0; c <= M; ++c)
                for (int dd = 0; dd <= M; ++dd)
                    for (int p = 0; p <= M; ++p) {
                        if (!admissible(a, dd, p) || !admissible(b, c, p))
                            continue;
                        for (int e = 0; e <= M; ++e)
                            for (int f = 0; f <= M; ++f)
                                for (int q = 0; q <= M; ++q) {
                                    if (!admissible(c, f, q) || !admissible(dd, e, q))
                                        continue;
                                    for (int r = 0; r <= M; ++r) {
                                        if (!admissible(e, a, r) || !admissible(f, b, r))
                                            continue;
                                        t.run([&] {
                                            Scalar s = d.zero();
                                            for (int x = 0; x <= 2 * M; ++x)
                                                s += loop_value(x, d) * sixj(a, b, x, c, dd, p, d) *
                                                     sixj(c, dd, x, e, f, q, d) * sixj(e, f, x, b, a, r, d);
                                            Scalar rhs = sixj(p, q, r, e, a, dd, d) * sixj(p, q, r, f, b, c, d);
                                            t.compare(s, rhs, [&] {
                                                return "a b c d e f p q r = " + join({a, b, c, dd, e, f, p, q, r});
                                            });
                                        });
                                    }
                                }
                    }
    return t.result();
}

CheckResult check_tetrahedral_symmetry(const Deformation& d, const SuiteOptions& o)
{
    Tally t("tetrahedral-symmetry", o);
    // positions {j1 j2 j3; j4 j5 j6}; generators: two column swaps and an
    // upper/lower swap in the first two columns
    using P = std::array<int, 6>;
    const std::vector<P> gens{{1, 0, 2, 4, 3, 5}, {0, 2, 1, 3, 5, 4}, {3, 4, 2, 0, 1, 5}};
    std::vector<P> group{{0, 1, 2, 3, 4, 5}};
    for (std::size_t i = 0; i < group.size(); ++i)
        for (const auto& g : gens) {
            P h;
            for (int k = 0; k < 6; ++k)
                h[k] = group[i][g[k]];
            if (std::find(group.begin(), group.end(), h) == group.end())
                group.push_back(h);
        }
    const int M = o.max2j;
    std::array<int, 6> w;
    std::function<void(int)> fill = [&](int pos) {
        if (pos == 6) {
            if (!admissible(w[0], w[1], w[2]) || !admissible(w[3], w[4], w[2]) || !admissible(w[0], w[4], w[5]) ||
                !admissible(w[1], w[3], w[5]))
                return;
            t.run([&] {
                Scalar base = sixj(w[0], w[1], w[2], w[3], w[4], w[5], d);
                for (const auto& g : group) {
                    std::array<int, 6> v;
                    for (int k = 0; k < 6; ++k)
                        v[k] = w[g[k]];
                    t.compare(sixj(v[0], v[1], v[2], v[3], v[4], v[5], d), base, [&] {
                        return "{" + join({w[0], w[1], w[2]}) + "; " + join({w[3], w[4], w[5]}) + "}";
                    });
                }
            });
            return;
        }
        for (int v = 0; v <= M; ++v) {
            w[pos] = v;
            fill(pos + 1);
        }
    };
    fill(0);
    CheckResult r = t.result();
    if (group.size() != 24) {
        ++r.failed;
        r.first_failure = "symmetry group has " + std::to_string(group.size()) + " elements";
    }
    return r;
}

CheckResult check_exchange(const Deformation& d, const SuiteOptions& o, bool printed)
{
    Tally t(printed ? "exchange-printed" : "exchange-corrected", o);
    for (const Grid& g : admissible_grids(o.max2j))
        t.run([&] {
            Scalar lhs = toroidal_symbol(g, d, 1, IndexPair::P19);
            t.compare(lhs, exchange_rhs(g, d, printed ? 1 : -1), [&] { return grid_str(g); });
        });
    return t.result();
}

CheckResult check_exchange_involution(const Deformation& d, const SuiteOptions& o)
{
    Tally t("exchange-involution", o);
    for (const Grid& g : admissible_grids(o.max2j))
        t.run([&] {
            Grid h = exchanged(g);
            bool back = exchanged(h) == g;
            // the two prefactors cancel for either sign convention
            Scalar twice = a_factor({g[0][1], g[1][0]}, {g[2][0], g[0][2]}, 1, d) *
                           a_factor({h[0][1], h[1][0]}, {h[2][0], h[0][2]}, 1, d);
            t.compare(back ? twice : d.zero(), d.one(), [&] { return grid_str(g); });
        });
    return t.result();
}

CheckResult check_claim(const Deformation& d, const SuiteOptions& o)
{
    Tally t("claim", o);
    const int M = o.max2j;
    std::array<int, 9> v; // j1 j2 j3 j4 j5 j6 j8 j9 lambda
    std::function<void(int)> fill = [&](int pos) {
        if (pos == 9) {
            auto [j1, j2, j3, j4, j5, j6, j8, j9, lam] = v;
            if (!admissible(j1, j2, j3) || !admissible(j4, j5, j6) || !admissible(j2, j5, j8) ||
                !admissible(j3, j6, j9) || !admissible(j1, j9, lam) || !admissible(j4, j8, lam))
                return;
            t.run([&] {
                Scalar s = d.zero();
                for (int mu = 0; mu <= 2 * M; ++mu) {
                    if (!admissible(j1, j4, mu) || !admissible(mu, j8, j9))
                        continue;
                    Grid g{{{j1, j4, mu}, {j2, j5, j8}, {j3, j6, j9}}};
                    s += loop_value(mu, d) * toroidal_symbol(g, d, 1, IndexPair::P26) *
                         sixj(j1, j4, mu, j8, j9, lam, d);
                }
                Scalar rhs = admissible(j2, j6, lam) ? a_factor(j2, j6, lam, 1, d) * sixj(j2, j5, j8, j4, lam, j6, d) *
                                                           sixj(j3, j6, j9, lam, j1, j2, d)
                                                     : d.zero();
                t.compare(s, rhs, [&] { return "j1 j2 j3 j4 j5 j6 j8 j9 lambda = " +
                                               join({j1, j2, j3, j4, j5, j6, j8, j9, lam}); });
            });
            return;
        }
        for (int x = 0; x <= M; ++x) {
            v[pos] = x;
            fill(pos + 1);
        }
    };
    fill(0);
    return t.result();
}

CheckResult check_ninej_contraction(const Deformation& d, const SuiteOptions& o)
{
    Tally t("ninej-sixj-contraction", o);
    if (!d.classical_mode())
        return t.result();
    const int M = o.max2j;
    std::array<int, 8> v; // j11 j12 j21 j22 j23 j31 j32 j33
    std::function<void(int)> fill = [&](int pos) {
        if (pos < 8) {
            for (int x = 0; x <= M; ++x) {
                v[pos] = x;
                fill(pos + 1);
            }
            return;
        }
        auto [j11, j12, j21, j22, j23, j31, j32, j33] = v;
        if (!admissible(j21, j22, j23) || !admissible(j31, j32, j33) || !admissible(j11, j21, j31) ||
            !admissible(j12, j22, j32))
            return;
        for (int lam = 0; lam <= 2 * M; ++lam)
            t.run([&] {
                Scalar s = d.zero();
                for (int mu = 0; mu <= 2 * M; ++mu) {
                    Scalar w6 = wigner_sixj(j11, j12, mu, j23, j33, lam, d);
                    if (w6.is_zero())
                        continue;
                    Grid h{{{j11, j12, mu}, {j21, j22, j23}, {j31, j32, j33}}};
                    s += d.constant(mu + 1) * wigner_ninej(h, d) * w6;
                }
                Scalar rhs = wigner_sixj(j21, j22, j23, j12, lam, j32, d) * wigner_sixj(j31, j32, j33, lam, j11, j21, d);
                if (lam % 2)
                    rhs = -rhs;
                if (s.is_zero() && rhs.is_zero())
                    return;
                t.compare(s, rhs, [&] {
                    return "j11 j12 j21 j22 j23 j31 j32 j33 = " + join({j11, j12, j21, j22, j23, j31, j32, j33}) +
                           " lambda=" + std::to_string(lam);
                });
            });
    };
    fill(0);
    return t.result();
}

std::vector<K33Labels> k33_label_sweep(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                                       int max2j)
{
    K33Labels zero;
    for (const char* n : kK33EdgeNames)
        zero[n] = 0;
    SpinNetwork net = k33_network(r_signs, s_signs, zero);
    std::vector<K33Labels> out;
    std::array<int, 9> v{};
    std::function<void(int)> fill = [&](int pos) {
        if (pos == 9) {
            for (int u = 0; u < 6; ++u) {
                const auto& inc = net.graph.incident(u);
                if (!admissible(v[edge_of(inc[0])], v[edge_of(inc[1])], v[edge_of(inc[2])]))
                    return;
            }
            K33Labels L;
            for (int e = 0; e < 9; ++e)
                L[net.graph.edge(e).id] = v[e];
            out.push_back(L);
            return;
        }
        for (int x = 0; x <= max2j; ++x) {
            v[pos] = x;
            fill(pos + 1);
        }
    };
    fill(0);
    return out;
}

namespace {
std::string labels_str(const K33Labels& L)
{
    std::string s;
    for (const char* n : kK33EdgeNames)
        s += std::string(s.empty() ? "" : " ") + n + "=" + std::to_string(L.at(n));
    return s;
}
} // namespace

CheckResult check_k33_sym4410(const Deformation& d, const SuiteOptions& o)
{
    Tally t("k33-sym4410", o);
    for (const auto& L : k33_label_sweep(kSym4410R, kSym4410S, o.k33_max2j))
        t.run([&] {
            K33Result r = evaluate_k33(kSym4410R, kSym4410S, L, d);
            t.compare(r.value, k33_sym4410_closed_form(L, d, 1), [&] { return labels_str(L); });
        });
    return t.result();
}

CheckResult check_k33_sym4410_ninej(const SuiteOptions& o)
{
    Tally t("k33-sym4410-ninej", o);
    Deformation d = Deformation::classical();
    K33Options ko;
    ko.eval.phase_to_one = true;
    for (const auto& L : k33_label_sweep(kSym4410R, kSym4410S, o.k33_max2j))
        t.run([&] {
            K33Result r = evaluate_k33(kSym4410R, kSym4410S, L, d, ko);
            Grid g{{{L.at("j1"), L.at("j6"), L.at("k")},
                    {L.at("l"), L.at("j5"), L.at("j4")},
                    {L.at("j2"), L.at("m"), L.at("j3")}}};
            t.compare(r.value, ninej(g, d), [&] { return labels_str(L); });
        });
    return t.result();
}

CheckResult check_k33_sym666(const Deformation& d, const SuiteOptions& o, bool printed)
{
    Tally t(printed ? "k33-sym666-printed" : "k33-sym666-corrected", o);
    for (const auto& L : k33_label_sweep(kSym666R, kSym666S, o.k33_max2j))
        t.run([&] {
            K33Result r = evaluate_k33(kSym666R, kSym666S, L, d);
            Scalar cf = printed ? k33_sym666_printed_form(L, d) : k33_sym666_closed_form(L, d, 1);
            t.compare(r.value, cf, [&] { return labels_str(L); });
        });
    return t.result();
}

CheckResult check_k33_sym666_chain(const Deformation& d, const SuiteOptions& o)
{
    Tally t("k33-sym666-chain", o);
    static const char* step[] = {"two-sum", "reflected", "exchanged", "claim", "closed"};
    for (const auto& L : k33_label_sweep(kSym666R, kSym666S, o.k33_max2j))
        t.run([&] {
            K33Result r = evaluate_k33(kSym666R, kSym666S, L, d);
            auto chain = k33_sym666_chain(L, d, 1);
            Scalar prev = r.value;
            std::string prev_name = "decompose";
            for (std::size_t i = 0; i < chain.size(); ++i) {
                t.compare(chain[i], prev, [&] { return prev_name + "->" + step[i] + " " + labels_str(L); });
                prev = chain[i];
                prev_name = step[i];
            }
        });
    return t.result();
}

CheckResult check_k33_proportionality(const Deformation& d, const SuiteOptions& o)
{
    Tally t("k33-proportionality", o);
    for (const auto& L : k33_label_sweep(kPropMinusR, kPropMinusS, o.k33_max2j))
        t.run([&] {
            Scalar minus = evaluate_k33(kPropMinusR, kPropMinusS, L, d).value;
            Scalar plus = evaluate_k33(kPropPlusR, kPropPlusS, L, d).value;
            Scalar pre = a_factor({L.at("j4"), L.at("j6")}, {L.at("l"), L.at("m")}, 1, d);
            t.compare(minus, pre * plus, [&] { return labels_str(L); });
        });
    return t.result();
}

std::vector<CheckResult> run_identity_suite(const Deformation& d, const SuiteOptions& o)
{
    std::vector<CheckResult> out;
    out.push_back(check_orthogonality(d, o));
    out.push_back(check_biedenharn_elliott(d, o));
    out.push_back(check_tetrahedral_symmetry(d, o));
    out.push_back(check_exchange(d, o, true));
    out.push_back(check_exchange(d, o, false));
    out.push_back(check_exchange_involution(d, o));
    out.push_back(check_claim(d, o));
    if (d.classical_mode())
        out.push_back(check_ninej_contraction(d, o));
    out.push_back(check_k33_sym4410(d, o));
    if (d.classical_mode())
        out.push_back(check_k33_sym4410_ninej(o));
    out.push_back(check_k33_sym666(d, o, true));
    out.push_back(check_k33_sym666(d, o, false));
    out.push_back(check_k33_sym666_chain(d, o));
    out.push_back(check_k33_proportionality(d, o));
    return out;
}

} // namespace spinnet
