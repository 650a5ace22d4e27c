#ifndef SPINNET_RECOUPLING_HPP
#define SPINNET_RECOUPLING_HPP

#include "spinnet/scalar.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinnet {

// All spins are passed as 2j integers.

// A = q^A_OF_Q. The phase identities of the toroidal symbols close only
// with A = q^(1/2); set to 2.0 for the A = q^2 reading.
constexpr double A_OF_Q = 0.5;

class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, long integer) : std::domain_error(what), integer_(integer) {}
    long integer() const { return integer_; }

private:
    long integer_;
};

// q = 1 exactly, or q = exp(i pi p/r) evaluated in double precision.
class Deformation {
public:
    static Deformation classical() { return Deformation(); }
    static Deformation phase(long p, long r);
    static Deformation parse_phase(const std::string& text); // "p/r"

    bool classical_mode() const { return classical_; }
    Scalar::Mode mode() const { return classical_ ? Scalar::Mode::Exact : Scalar::Mode::Numeric; }
    long p() const { return p_; }
    long r() const { return r_; }
    double t() const { return static_cast<double>(p_) / static_cast<double>(r_); }
    // exact test for [n] == 0
    bool vanishes(long n) const;
    double qint(long n) const;
    std::string str() const;

    Scalar zero() const { return Scalar::zero(mode()); }
    Scalar one() const { return Scalar::one(mode()); }
    Scalar constant(long v) const;

private:
    bool classical_ = true;
    long p_ = 0, r_ = 1;
};

enum class Crossing { Over, Under };
enum class IndexPair { P26, P19, P48 };

const char* index_pair_name(IndexPair p);

Scalar quantum_integer(long n, const Deformation& d);
Scalar loop_value(int x, const Deformation& d);
bool admissible(int a, int b, int c);
Scalar theta(int a, int b, int c, const Deformation& d);

// Theta-normalized 6j. Triads (a,b,e), (c,d,e), (a,d,f), (b,c,f).
Scalar sixj(int a, int b, int e, int c, int d, int f, const Deformation& d6);
Scalar coupling_coefficient(int a, int b, int x, int c, int d, int j, const Deformation& d6);

// 6j/9j in the usual Wigner (Racah) normalization, from sixj by a phase.
Scalar wigner_sixj(int a, int b, int e, int c, int d, int f, const Deformation& d6);

// (-1)^{(sum plus - sum minus)/2} A^{sign*2[sum p(p+1) - sum m(m+1)]}
Scalar a_factor(const std::vector<int>& plus, const std::vector<int>& minus, int sign, const Deformation& d);
inline Scalar a_factor(int a, int b, int x, int sign, const Deformation& d)
{
    return a_factor({a, b}, {x}, sign, d);
}
// requires admissible(a, b, j)
Scalar twist_factor(int a, int b, int j, Crossing c, const Deformation& d);

// Grid rows as displayed: {{J1 J4 J7}, {J2 J5 J8}, {J3 J6 J9}}.
using Grid = std::array<std::array<int, 3>, 3>;

struct ToroidalOptions {
    IndexPair pair = IndexPair::P26;
    int sign = +1;
    bool phase = true; // false: phase factor forced to 1
};

Scalar toroidal_symbol(const Grid& g, const Deformation& d, const ToroidalOptions& opt = {});
inline Scalar toroidal_symbol(const Grid& g, const Deformation& d, int sign, IndexPair pair = IndexPair::P26)
{
    return toroidal_symbol(g, d, ToroidalOptions{pair, sign, true});
}

// sum_x Delta_x {a d g; h i x}{b e h; d x f}{c f i; x a b} on rows (a b c; d e f; g h i)
Scalar ninej(const Grid& g, const Deformation& d);
Scalar wigner_ninej(const Grid& g, const Deformation& d);

// number of triads of {a b e; c d f} with odd total spin
int sixj_phase_count(int a, int b, int e, int c, int d, int f);

} // namespace spinnet

#endif
