#include "spinnet/recoupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace spinnet {

Deformation Deformation::phase(long p, long r)
{
    if (r <= 0)
        throw std::invalid_argument("q-phase denominator must be positive");
    long g = std::gcd(std::labs(p), r);
    if (g == 0)
        g = 1;
    Deformation d;
    d.classical_ = false;
    d.p_ = p / g;
    d.r_ = r / g;
    return d;
}

Deformation Deformation::parse_phase(const std::string& text)
{
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            long p = std::stol(text, &used);
            if (used != text.size())
                throw std::invalid_argument(text);
            return phase(p, 1);
        }
        std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        long p = std::stol(a, &used);
        if (used != a.size())
            throw std::invalid_argument(text);
        long r = std::stol(b, &used);
        if (used != b.size())
            throw std::invalid_argument(text);
        return phase(p, r);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad q-phase '" + text + "', expected p/r");
    }
}

bool Deformation::vanishes(long n) const
{
    if (n == 0)
        return true;
    if (classical_ || r_ == 1)
        return false;
    return n % r_ == 0;
}

double Deformation::qint(long n) const
{
    if (vanishes(n))
        return 0.0;
    if (classical_)
        return static_cast<double>(n);
    if (r_ == 1) {
        // q = +-1: limit of the defining quotient
        bool minus = (p_ % 2 != 0) && (n % 2 == 0);
        return minus ? -static_cast<double>(n) : static_cast<double>(n);
    }
    double pt = std::numbers::pi * t();
    return std::sin(static_cast<double>(n) * pt) / std::sin(pt);
}

std::string Deformation::str() const
{
    if (classical_)
        return "q=1";
    return "q=exp(i*pi*" + std::to_string(p_) + "/" + std::to_string(r_) + ")";
}

Scalar Deformation::constant(long v) const
{
    return classical_ ? Scalar(Surd(v)) : Scalar(std::complex<double>(static_cast<double>(v)));
}

const char* index_pair_name(IndexPair p)
{
    switch (p) {
    case IndexPair::P26: return "26";
    case IndexPair::P19: return "19";
    case IndexPair::P48: return "48";
    }
    return "?";
}

namespace {

// Real-valued q-arithmetic: exact rationals at q = 1, doubles on the circle.
struct ExactField {
    using T = Rational;
    static T qint(long n, const Deformation&) { return T(n); }
};
struct NumField {
    using T = double;
    static T qint(long n, const Deformation& d) { return d.qint(n); }
};

void require_nonvanishing(long n, const Deformation& d, const char* where)
{
    for (long k = 1; k <= n; ++k)
        if (d.vanishes(k))
            throw DomainError(std::string("[") + std::to_string(k) + "] vanishes in a denominator of " + where, k);
}

template <class F>
typename F::T qfact(long n, const Deformation& d)
{
    typename F::T r = 1;
    for (long k = 2; k <= n; ++k)
        r *= F::qint(k, d);
    return r;
}

template <class F>
typename F::T theta_net(int a, int b, int c, const Deformation& d)
{
    long m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
    require_nonvanishing(std::max({m + n, n + p, m + p}), d, "a theta net");
    typename F::T v = qfact<F>(m + n + p + 1, d) * qfact<F>(m, d) * qfact<F>(n, d) * qfact<F>(p, d) /
                      (qfact<F>(m + n, d) * qfact<F>(n + p, d) * qfact<F>(m + p, d));
    return ((m + n + p) % 2) ? typename F::T(-v) : v;
}

// Tetrahedral net in the usual labelling, edges A B E C D F.
template <class F>
typename F::T tet(int A, int B, int E, int C, int D, int Fl, const Deformation& d)
{
    long a[4] = {(A + D + E) / 2, (B + C + E) / 2, (A + B + Fl) / 2, (C + D + Fl) / 2};
    long b[3] = {(B + D + E + Fl) / 2, (A + C + E + Fl) / 2, (A + B + C + D) / 2};
    require_nonvanishing(std::max({A, B, C, D, E, Fl}), d, "a tetrahedral net");
    typename F::T num = 1;
    for (long i : a)
        for (long j : b)
            num *= qfact<F>(j - i, d);
    typename F::T den = qfact<F>(A, d) * qfact<F>(B, d) * qfact<F>(C, d) * qfact<F>(D, d) * qfact<F>(E, d) *
                        qfact<F>(Fl, d);
    long lo = *std::max_element(a, a + 4), hi = *std::min_element(b, b + 3);
    typename F::T sum = 0;
    for (long s = lo; s <= hi; ++s) {
        long worst = 0;
        for (long i : a)
            worst = std::max(worst, s - i);
        for (long j : b)
            worst = std::max(worst, j - s);
        require_nonvanishing(worst, d, "a tetrahedral net");
        typename F::T t = qfact<F>(s + 1, d);
        for (long i : a)
            t /= qfact<F>(s - i, d);
        for (long j : b)
            t /= qfact<F>(j - s, d);
        if (s % 2)
            sum -= t;
        else
            sum += t;
    }
    return num / den * sum;
}

struct Key {
    std::array<long, 9> v;
    bool operator==(const Key& o) const { return v == o.v; }
};
struct KeyHash {
    std::size_t operator()(const Key& k) const
    {
        std::size_t h = 1469598103934665603ull;
        for (long x : k.v)
            h = (h ^ static_cast<std::size_t>(x + 0x9e37)) * 1099511628211ull;
        return h;
    }
};

Scalar sixj_uncached(int a, int b, int e, int c, int dd, int f, const Deformation& d)
{
    const int tri[4][3] = {{a, b, e}, {c, dd, e}, {a, dd, f}, {b, c, f}};
    if (d.classical_mode()) {
        Rational t = tet<ExactField>(a, dd, e, c, b, f, d);
        if (t == 0)
            return Scalar(Surd());
        Surd den(1);
        for (const auto& tr : tri)
            den *= Surd::sqrt_of(theta_net<ExactField>(tr[0], tr[1], tr[2], d));
        return Scalar(Surd(t) / den);
    }
    std::complex<double> den = 1;
    for (const auto& tr : tri) {
        double th = theta_net<NumField>(tr[0], tr[1], tr[2], d);
        if (th == 0.0) {
            long s = (tr[0] + tr[1] + tr[2]) / 2 + 1;
            long k = 1;
            while (k <= s && !d.vanishes(k))
                ++k;
            throw DomainError("theta net vanishes ([" + std::to_string(k) + "] = 0) in a 6j denominator", k);
        }
        den *= std::sqrt(std::complex<double>(th, 0.0));
    }
    double t = tet<NumField>(a, dd, e, c, b, f, d);
    return Scalar(std::complex<double>(t, 0.0) / den);
}

} // namespace

Scalar quantum_integer(long n, const Deformation& d)
{
    if (d.classical_mode())
        return Scalar(Surd(n));
    return Scalar(std::complex<double>(d.qint(n), 0.0));
}

Scalar loop_value(int x, const Deformation& d)
{
    Scalar v = quantum_integer(x + 1, d);
    return (x % 2) ? -v : v;
}

bool admissible(int a, int b, int c)
{
    return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && std::abs(a - b) <= c && c <= a + b;
}

Scalar theta(int a, int b, int c, const Deformation& d)
{
    return admissible(a, b, c) ? d.one() : d.zero();
}

Scalar sixj(int a, int b, int e, int c, int dd, int f, const Deformation& d)
{
    if (!admissible(a, b, e) || !admissible(c, dd, e) || !admissible(a, dd, f) || !admissible(b, c, f))
        return d.zero();
    thread_local std::unordered_map<Key, Scalar, KeyHash> cache;
    Key key{{d.classical_mode() ? 0L : 1L, d.p(), d.r(), a, b, e, c, dd, f}};
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    Scalar v = sixj_uncached(a, b, e, c, dd, f, d);
    if (cache.size() > 200000)
        cache.clear();
    cache.emplace(key, v);
    return v;
}

Scalar coupling_coefficient(int a, int b, int x, int c, int dd, int j, const Deformation& d)
{
    Scalar s = sixj(a, b, x, c, dd, j, d);
    if (s.is_zero())
        return s;
    return loop_value(x, d) * s;
}

int sixj_phase_count(int a, int b, int e, int c, int d, int f)
{
    const int tri[4][3] = {{a, b, e}, {c, d, e}, {a, d, f}, {b, c, f}};
    int nu = 0;
    for (const auto& t : tri)
        nu += ((t[0] + t[1] + t[2]) / 2) % 2;
    return nu;
}

Scalar wigner_sixj(int a, int b, int e, int c, int dd, int f, const Deformation& d)
{
    Scalar s = sixj(a, b, e, c, dd, f, d);
    if (s.is_zero())
        return s;
    int nu = sixj_phase_count(a, b, e, c, dd, f);
    if (d.classical_mode())
        return s * Scalar(Surd::i_pow(nu));
    static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return s * Scalar(ip[nu % 4]);
}

Scalar a_factor(const std::vector<int>& plus, const std::vector<int>& minus, int sign, const Deformation& d)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("a_factor sign must be +1 or -1");
    long n = 0, e = 0;
    for (int a : plus) {
        n += a;
        e += static_cast<long>(a) * (a + 2);
    }
    for (int b : minus) {
        n -= b;
        e -= static_cast<long>(b) * (b + 2);
    }
    // (-1)^{n/2} == i^n; the A exponent 2[sum j(j+1)] equals e/2 in 2j units
    long ni = ((n % 4) + 4) % 4;
    if (d.classical_mode())
        return Scalar(Surd::i_pow(ni));
    static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    double ang = std::numbers::pi * d.t() * A_OF_Q * static_cast<double>(sign) * static_cast<double>(e) / 2.0;
    return Scalar(ip[ni] * std::polar(1.0, ang));
}

Scalar twist_factor(int a, int b, int j, Crossing c, const Deformation& d)
{
    if (!admissible(a, b, j))
        throw std::invalid_argument("twist_factor needs an admissible triple");
    return a_factor({a, b}, {j}, c == Crossing::Over ? 1 : -1, d);
}

Scalar toroidal_symbol(const Grid& g, const Deformation& d, const ToroidalOptions& opt)
{
    int J1 = g[0][0], J4 = g[0][1], J7 = g[0][2];
    int J2 = g[1][0], J5 = g[1][1], J8 = g[1][2];
    int J3 = g[2][0], J6 = g[2][1], J9 = g[2][2];
    int p0 = J2, p1 = J6;
    if (opt.pair == IndexPair::P19) {
        p0 = J1;
        p1 = J9;
    } else if (opt.pair == IndexPair::P48) {
        p0 = J4;
        p1 = J8;
    }
    Scalar sum = d.zero();
    for (int z = std::abs(J1 - J9); z <= J1 + J9; z += 2) {
        if (!admissible(J2, J6, z) || !admissible(J4, J8, z))
            continue;
        Scalar t = sixj(J1, J2, J3, J6, J9, z, d);
        if (t.is_zero())
            continue;
        t *= sixj(J4, J5, J6, J2, z, J8, d);
        if (t.is_zero())
            continue;
        t *= sixj(J7, J8, J9, z, J1, J4, d);
        if (t.is_zero())
            continue;
        t *= loop_value(z, d);
        if (opt.phase)
            t *= a_factor(p0, p1, z, opt.sign, d);
        sum += t;
    }
    return sum;
}

namespace {
template <class Six>
Scalar ninej_impl(const Grid& g, const Deformation& d, Six six)
{
    int a = g[0][0], b = g[0][1], c = g[0][2];
    int dd = g[1][0], e = g[1][1], f = g[1][2];
    int gg = g[2][0], h = g[2][1], i = g[2][2];
    Scalar sum = d.zero();
    for (int x = std::abs(a - i); x <= a + i; x += 2) {
        Scalar t = six(a, dd, gg, h, i, x, d);
        if (t.is_zero())
            continue;
        t *= six(b, e, h, dd, x, f, d);
        if (t.is_zero())
            continue;
        t *= six(c, f, i, x, a, b, d);
        if (t.is_zero())
            continue;
        sum += loop_value(x, d) * t;
    }
    return sum;
}
} // namespace

Scalar ninej(const Grid& g, const Deformation& d)
{
    return ninej_impl(g, d, [](int a, int b, int e, int c, int dd, int f, const Deformation& df) {
        return sixj(a, b, e, c, dd, f, df);
    });
}

Scalar wigner_ninej(const Grid& g, const Deformation& d)
{
    return ninej_impl(g, d, [](int a, int b, int e, int c, int dd, int f, const Deformation& df) {
        return wigner_sixj(a, b, e, c, dd, f, df);
    });
}

} // namespace spinnet
