#ifndef SPINNET_SCALAR_HPP
#define SPINNET_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinnet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact element of Q(i, sqrt 2, sqrt 3, ...): a sum of c * i^e * sqrt(s)
// with rational c, e in {0,1} and s squarefree. The basis is linearly
// independent over Q, so equality of canonical forms is exact equality.
class Surd {
public:
    using Key = std::pair<int, BigInt>; // (power of i, squarefree radicand)

    Surd() = default;
    Surd(long v) { add_term(0, 1, Rational(v)); }
    Surd(const Rational& v) { add_term(0, 1, v); }

    static Surd sqrt_of(const Rational& v); // principal branch
    static Surd i_pow(long n);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const std::map<Key, Rational>& terms() const { return terms_; }

    Surd operator-() const;
    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd operator*(const Surd& o) const;
    Surd& operator*=(const Surd& o) { return *this = *this * o; }
    // divisor must be a single term
    Surd operator/(const Surd& o) const;
    bool operator==(const Surd& o) const { return terms_ == o.terms_; }

    std::complex<double> to_complex() const;
    std::string str() const;

private:
    void add_term(int ipow, const BigInt& radicand, const Rational& c);
    std::map<Key, Rational> terms_;
};

class ModeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Tagged value: exact (classical q = 1) or complex double (unit circle).
class Scalar {
public:
    enum class Mode { Exact, Numeric };

    Scalar() : mode_(Mode::Exact) {}
    explicit Scalar(Surd v) : mode_(Mode::Exact), exact_(std::move(v)) {}
    explicit Scalar(std::complex<double> v) : mode_(Mode::Numeric), num_(v) {}

    static Scalar zero(Mode m) { return m == Mode::Exact ? Scalar(Surd()) : Scalar(std::complex<double>(0)); }
    static Scalar one(Mode m) { return m == Mode::Exact ? Scalar(Surd(1)) : Scalar(std::complex<double>(1)); }

    Mode mode() const { return mode_; }
    bool exact() const { return mode_ == Mode::Exact; }
    const Surd& surd() const;
    std::complex<double> value() const;
    bool is_zero() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    std::string str() const;

private:
    void check(const Scalar& o) const;
    Mode mode_;
    Surd exact_;
    std::complex<double> num_{};
};

constexpr double kDefaultTolerance = 1e-9;

// Exact comparison in exact mode; |a-b| <= tol * max(1, |a|, |b|) otherwise.
bool approx_equal(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance);

} // namespace spinnet

#endif
