#include "spinnet/scalar.hpp"

#include <cmath>
#include <sstream>

namespace spinnet {
namespace {

// n = k^2 * s with s squarefree. Factors are small primes in practice
// (quotients of q-factorials), the perfect-square test covers the rest.
std::pair<BigInt, BigInt> square_split(BigInt n)
{
    BigInt k = 1, s = 1;
    for (unsigned p = 2; p < 100000 && BigInt(p) * p <= n; ++p) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i)
            k *= p;
        if (e % 2)
            s *= p;
    }
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n)
        k *= r;
    else
        s *= n;
    return {k, s};
}

} // namespace

void Surd::add_term(int ipow, const BigInt& radicand, const Rational& c)
{
    if (c == 0)
        return;
    ipow &= 3;
    Rational v = c;
    if (ipow >= 2) {
        v = -v;
        ipow -= 2;
    }
    Key key{ipow, radicand};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, v);
        return;
    }
    it->second += v;
    if (it->second == 0)
        terms_.erase(it);
}

Surd Surd::sqrt_of(const Rational& v)
{
    Surd out;
    if (v == 0)
        return out;
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    int ipow = 0;
    if (num < 0) {
        num = -num;
        ipow = 1;
    }
    // sqrt(n/d) = sqrt(n*d)/d
    auto [k, s] = square_split(num * den);
    out.add_term(ipow, s, Rational(k, den));
    return out;
}

Surd Surd::i_pow(long n)
{
    Surd out;
    out.add_term(static_cast<int>(((n % 4) + 4) % 4), 1, Rational(1));
    return out;
}

Surd Surd::operator-() const
{
    Surd out = *this;
    for (auto& kv : out.terms_)
        kv.second = -kv.second;
    return out;
}

Surd& Surd::operator+=(const Surd& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k.first, k.second, c);
    return *this;
}

Surd& Surd::operator-=(const Surd& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k.first, k.second, -c);
    return *this;
}

Surd Surd::operator*(const Surd& o) const
{
    Surd out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            BigInt g = boost::multiprecision::gcd(ka.second, kb.second);
            BigInt s = (ka.second / g) * (kb.second / g);
            out.add_term(ka.first + kb.first, s, ca * cb * Rational(g));
        }
    return out;
}

Surd Surd::operator/(const Surd& o) const
{
    if (!o.is_monomial())
        throw std::domain_error("exact division needs a single-term divisor");
    const auto& [k, c] = *o.terms_.begin();
    // 1/(c i^e sqrt s) = i^-e sqrt(s) / (c s)
    Surd inv;
    inv.add_term(-k.first, k.second, Rational(1) / (c * Rational(k.second)));
    return *this * inv;
}

std::complex<double> Surd::to_complex() const
{
    std::complex<double> z = 0;
    for (const auto& [k, c] : terms_) {
        double v = c.convert_to<double>() * std::sqrt(k.second.convert_to<double>());
        z += k.first ? std::complex<double>(0, v) : std::complex<double>(v, 0);
    }
    return z;
}

std::string Surd::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational a = c;
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        if (a < 0)
            a = -a;
        first = false;
        bool unit = a == 1 && (k.first || k.second != 1);
        if (!unit)
            os << a;
        if (k.first)
            os << (unit ? "" : "*") << "i";
        if (k.second != 1)
            os << ((unit && !k.first) ? "" : "*") << "sqrt(" << k.second << ")";
    }
    return os.str();
}

const Surd& Scalar::surd() const
{
    if (mode_ != Mode::Exact)
        throw ModeError("numeric scalar has no exact value");
    return exact_;
}

std::complex<double> Scalar::value() const
{
    return mode_ == Mode::Exact ? exact_.to_complex() : num_;
}

bool Scalar::is_zero() const
{
    return mode_ == Mode::Exact ? exact_.is_zero() : num_ == std::complex<double>(0);
}

void Scalar::check(const Scalar& o) const
{
    if (mode_ != o.mode_)
        throw ModeError("mixing exact and numeric scalars");
}

Scalar Scalar::operator-() const
{
    return mode_ == Mode::Exact ? Scalar(-exact_) : Scalar(-num_);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    check(o);
    if (mode_ == Mode::Exact)
        exact_ += o.exact_;
    else
        num_ += o.num_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    check(o);
    if (mode_ == Mode::Exact)
        exact_ -= o.exact_;
    else
        num_ -= o.num_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    check(o);
    if (mode_ == Mode::Exact)
        exact_ = exact_ * o.exact_;
    else
        num_ *= o.num_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    check(o);
    if (o.is_zero())
        throw std::domain_error("division by zero scalar");
    if (mode_ == Mode::Exact)
        exact_ = exact_ / o.exact_;
    else
        num_ /= o.num_;
    return *this;
}

std::string Scalar::str() const
{
    if (mode_ == Mode::Exact)
        return exact_.str();
    std::ostringstream os;
    os.precision(12);
    double re = num_.real(), im = num_.imag();
    if (std::abs(im) <= 1e-13 * std::max(1.0, std::abs(re)))
        os << re;
    else
        os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol)
{
    if (a.mode() != b.mode())
        throw ModeError("comparing exact and numeric scalars");
    if (a.exact())
        return a.surd() == b.surd();
    auto x = a.value(), y = b.value();
    double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= tol * scale;
}

} // namespace spinnet
