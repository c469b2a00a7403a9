#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wpl/presentations.hpp"
#include "wpl/rational.hpp"

namespace wpl {

// Exhaustive enumeration of module structures.  A "solution" for (A, d) is
// an assignment of arrow matrices satisfying every relation of A; the tuple
// space of all assignments has size q^n with n = sum over arrows s->t of
// d_s*d_t.  Tuples are visited in lexicographic order keyed by
// (arrow index, row, column, field element index), the first entry being
// the most significant digit.  All counts here are exact; when a scan would
// exceed its cap we refuse loudly rather than truncate.
//
// Orbit counting convention: GL_d = prod_v GL_{d_v}(F_q) acts by base
// change, the stabilizer of a solution M is Aut(M), and groupoid volumes
// are (number of objects) / |GL_d|.

class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct EnumOptions {
    Int tuple_cap = 100'000'000;          // whole tuple space q^n
    std::uint64_t span_cap = 10'000'000;  // per-module endomorphism span q^e
    unsigned workers = 1;
};

// n in q^n above.
unsigned tuple_exponent(const Presentation& A, const DimVec& d);
Int tuple_space_size(const Presentation& A, const DimVec& d);

// Visits every solution.  The tuple space is split into `workers` contiguous
// index ranges; make_visitor(w) is called once per worker, in worker order,
// and the returned callback receives that worker's solutions in increasing
// tuple order.  Callbacks run concurrently across workers, so each should
// write only to its own accumulator.  The Representation reference is the
// worker's scratch tuple, overwritten between calls: copy it to keep it.
using SolutionFn = std::function<void(const Representation&)>;
void for_each_solution(const Presentation& A, const DimVec& d, const EnumOptions& opt,
                       const std::function<SolutionFn(unsigned)>& make_visitor);

Int count_solutions(const Presentation& A, const DimVec& d, const EnumOptions& opt = {});

// Endomorphisms of a solution: per-vertex square matrices phi_v with
// phi_t * M_a = M_a * phi_s for every arrow a: s -> t.  `basis` spans the
// solution space of that linear system; the identity tuple always lies in
// the span, so dim >= 1 whenever the module is nonzero.
using Endo = std::vector<Mat>;
struct EndRing {
    unsigned dim = 0;
    std::vector<Endo> basis;
};

EndRing end_basis(const Presentation& A, const Representation& M);

// Basis of Hom(M, N): per-vertex (N.dim_v x M.dim_v) matrices phi_v with
// phi_t * M_a = N_a * phi_s for every arrow a: s -> t.  end_basis is the
// square case N = M.
std::vector<Endo> hom_basis(const Presentation& A, const Representation& M,
                            const Representation& N);

// Number of phi in Hom(M, N) with every phi_v of full row rank, i.e. the
// surjective module maps M ->> N.  Scans the whole q^h span; throws
// ResourceError past span_cap.
std::uint64_t surjective_hom_count(const Presentation& A, const Representation& M,
                                   const Representation& N,
                                   std::uint64_t span_cap = EnumOptions{}.span_cap);

// Element of the F_q-span of E.basis with coefficient tuple given by the
// base-q digits of `index` (digit k scales basis[k], least significant
// first).  index < q^dim.
Endo span_element(const Field& F, const EndRing& E, std::uint64_t index);

// q^dim as a machine integer, refusing past `cap` (ResourceError) so span
// scans cannot overflow.
std::uint64_t span_size_checked(const Field& F, unsigned dim, std::uint64_t cap);

bool endo_is_unit(const Field& F, const Endo& phi);
bool endo_is_nilpotent(const Field& F, const Endo& phi);

// Exhaustive scans over the q^dim span elements; throw ResourceError when
// q^dim exceeds span_cap.
std::uint64_t unit_count(const Field& F, const EndRing& E, std::uint64_t span_cap = EnumOptions{}.span_cap);
std::uint64_t nilpotent_count(const Field& F, const EndRing& E, std::uint64_t span_cap = EnumOptions{}.span_cap);

// A module with endomorphism ring E over F_q is absolutely indecomposable
// exactly when E is local with residue field F_q, i.e. when the unit count
// hits q^e - q^{e-1}.  is_abs_indec checks that literally; the _fast variant
// first rejects via cheap necessary conditions on basis elements (each must
// be a scalar plus a nilpotent) and then confirms through the equivalent
// criterion #nilpotents = q^{e-1}.  The two agree on every input.
bool is_abs_indec(const Field& F, const EndRing& E, std::uint64_t span_cap = EnumOptions{}.span_cap);
bool is_abs_indec_fast(const Field& F, const EndRing& E, std::uint64_t span_cap = EnumOptions{}.span_cap);

// Indecomposability over F_q itself: no idempotent in E other than 0, 1.
bool is_indec(const Field& F, const EndRing& E, std::uint64_t span_cap = EnumOptions{}.span_cap);

// Splits M into indecomposable summands (unordered; dimension vectors sum
// to dim M).  Looks for a basis endomorphism that is neither nilpotent nor
// invertible and splits along the image/kernel of a stabilized power;
// failing that, scans the span for a nontrivial idempotent.
std::vector<Representation> decompose(const Presentation& A, const Representation& M,
                                      const EnumOptions& opt = {});

// Jordan data of a nilpotent endomorphism theta of M: alpha[i-1] is the
// dimension vector of blocks of size i, computed per vertex from the rank
// sequence r_k(v) = rank(theta_v^k) as r_{k-1} - 2 r_k + r_{k+1}.
// sum_i i*alpha_i = dim M.  Throws std::invalid_argument if theta is not a
// nilpotent endomorphism of M.
using JordanType = std::vector<std::vector<unsigned>>;
JordanType jordan_type(const Presentation& A, const Representation& M, const Endo& theta);

// |GL_d(F_q)| = prod_v prod_{k<d_v} (q^{d_v} - q^k).
Int gl_order(const DimVec& d, unsigned long q);

// Number of absolutely indecomposable modules of dimension d up to
// isomorphism: sum of |Aut(M)| over abs-indec solutions divided by |GL_d|.
// The quotient is an integer by orbit-stabilizer; a remainder is a bug and
// raises std::logic_error.
Int count_abs_indec(const Presentation& A, const DimVec& d, const EnumOptions& opt = {});

// #solutions / |GL_d| and #{(M, theta) : theta nilpotent in End M} / |GL_d|.
Rat stack_volume(const Presentation& A, const DimVec& d, const EnumOptions& opt = {});
Rat nil_volume(const Presentation& A, const DimVec& d, const EnumOptions& opt = {});

}  // namespace wpl
