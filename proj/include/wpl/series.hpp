#pragma once

#include <map>
#include <vector>

#include "wpl/enumerate.hpp"
#include "wpl/lattice.hpp"
#include "wpl/torsionpair.hpp"

namespace wpl {

// Generating series over the dimension lattice, truncated componentwise.
//
// The volumes of nilpotent pairs (M, theta) assemble into a series whose
// logarithm has a predicted shape: the coefficient of z^d collects
// A_{d/l}(q^l) / (l (q^l - 1)) over the scalings l of d, where A_alpha
// counts absolutely indecomposable modules.  Restricted to modules lying
// entirely in the sheaf cone the identity is exact, and inverting it
// recovers the counts A from nilpotent volumes alone.  Refining by the
// Jordan type of theta gives one stratum per type, and each stratum volume
// is a q-power times the volume of a stack of vertexwise-surjective chains.
// The functions below verify all of that by exhaustive enumeration.

// A series sum_{d <= bound} coeff[d] * z^d; missing keys are zero, the
// constant term sits at the zero vector.  Products drop every monomial
// beyond the bound.
struct GradedSeries {
    DimVec bound;
    std::map<DimVec, Rat> coeff;

    Rat at(const DimVec& d) const;
};

// Truncated product; the operands must share one bound.
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);

// exp needs constant term 0, log constant term 1; they invert each other
// within the truncation.  Both throw std::invalid_argument otherwise.
GradedSeries series_exp(const GradedSeries& s);
GradedSeries series_log(const GradedSeries& s);

struct CoeffCheck {
    DimVec d;
    Rat lhs, rhs;
    bool ok = false;
};

// Compares the nilpotent-pair series against exp of the predicted
// logarithm, coefficient by coefficient up to `bound`.  `torsion` restricts
// both sides to the sheaf cone and must come out equal; `full` runs the
// same comparison over the whole module category and is reported without
// being required (pass covers the restricted identity only).
struct NilExpReport {
    DimVec bound;
    bool pass = false;
    bool full_pass = false;
    std::vector<CoeffCheck> torsion, full;
};

NilExpReport nil_exp_check(const Presentation& A, const ModuleLattice& L, const DimVec& bound,
                           const EnumOptions& opt = {});

// Inverts the identity: reads absolutely-indecomposable counts off the
// logarithm of the sheaf-cone nilpotent series, recursing into scalar
// extensions for the divisible dimensions.  Never calls count_abs_indec,
// so it is an independent route to the same numbers; a non-integer value
// raises std::logic_error.
std::map<DimVec, Int> recover_A_from_nil(const Presentation& A, const ModuleLattice& L,
                                         const DimVec& bound, const EnumOptions& opt = {});

// Exponent of the q-power relating a Jordan stratum to its chain stack:
// for parts alpha_1..alpha_s (1-based),
//
//   - { sum_i (i-1) <a_i, a_i>  +  sum_{i<j} i (a_i, a_j) }
//   + sum_{i<j} <a_i, a_j>
//
// with <,> the Euler pairing and (,) its symmetrization.  The orientation
// of the last term follows the same transposition as euler_mod; the mixed
// two-part strata are the ones that see it.  Zero parts keep their
// position: they still shift the weights of later parts.
long long rank_r(const std::vector<unsigned>& p, const std::vector<KClass>& parts);

struct StratumReport {
    DimVec dim;
    JordanType type;  // trailing zero parts trimmed
    long long rank = 0;
    Rat lhs;     // volume of pairs (M, theta) in the stratum, M in the sheaf cone
    Rat chains;  // volume of the chain stack, before the q^rank twist
    Rat rhs;     // q^rank * chains
    bool pass = false;
};

// One Jordan stratum, both sides enumerated.  The left side counts pairs
// (M, theta) with M of dimension d entirely in the sheaf cone and theta
// nilpotent of the given type.  The right side counts chains G_1 ->> ... ->> G_s
// of sheaf-cone modules, dim G_i = sum_{j >= i} alpha_j, with every map
// surjective at every vertex, weighted by 1 / prod |GL_{dim G_i}|.  Parts
// must classify into the sheaf cone; a shifted part is rejected with
// std::invalid_argument.
StratumReport stratum_check(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                            const JordanType& type, const EnumOptions& opt = {});

}  // namespace wpl
