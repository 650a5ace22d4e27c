#ifndef SPINNET_IDENTITIES_HPP
#define SPINNET_IDENTITIES_HPP

#include "spinnet/evaluator.hpp"

#include <set>
#include <string>
#include <vector>

namespace spinnet {

// Outcome of one identity over a spin sweep. Instances that hit a vanishing
// quantum integer in a denominator are counted as singular.
struct CheckResult {
    std::string name;
    long passed = 0;
    long failed = 0;
    long singular = 0;
    std::string first_failure;
    bool ok() const { return failed == 0 && passed > 0; }
};

struct SuiteOptions {
    int max2j = 3;
    int k33_max2j = 2;
    double tol = kDefaultTolerance;
    // identity names whose right-hand side is negated (fault injection)
    std::set<std::string> corrupt;
};

CheckResult check_orthogonality(const Deformation& d, const SuiteOptions& o);
CheckResult check_biedenharn_elliott(const Deformation& d, const SuiteOptions& o);
CheckResult check_tetrahedral_symmetry(const Deformation& d, const SuiteOptions& o);
// printed: prefactor sign equal to the symbol sign; otherwise opposite
CheckResult check_exchange(const Deformation& d, const SuiteOptions& o, bool printed);
CheckResult check_exchange_involution(const Deformation& d, const SuiteOptions& o);
CheckResult check_claim(const Deformation& d, const SuiteOptions& o);
// classical only: 9j-6j contraction in the Wigner normalization
CheckResult check_ninej_contraction(const Deformation& d, const SuiteOptions& o);

// K3,3 sweeps over all admissible labels with 2j <= k33_max2j
CheckResult check_k33_sym4410(const Deformation& d, const SuiteOptions& o);
CheckResult check_k33_sym4410_ninej(const SuiteOptions& o); // phase forced to 1, classical
CheckResult check_k33_sym666(const Deformation& d, const SuiteOptions& o, bool printed);
CheckResult check_k33_sym666_chain(const Deformation& d, const SuiteOptions& o);
CheckResult check_k33_proportionality(const Deformation& d, const SuiteOptions& o);

std::vector<CheckResult> run_identity_suite(const Deformation& d, const SuiteOptions& o);

// all label maps j1..m with 2j <= max2j admissible at every K3,3 vertex of
// the given configuration
std::vector<K33Labels> k33_label_sweep(const std::array<int, 3>& r_signs, const std::array<int, 3>& s_signs,
                                       int max2j);

// configurations of the proportionality relation
constexpr std::array<int, 3> kPropMinusR{-1, -1, 1}, kPropMinusS{-1, 1, -1};
constexpr std::array<int, 3> kPropPlusR{-1, 1, 1}, kPropPlusS{-1, 1, 1};

} // namespace spinnet

#endif
