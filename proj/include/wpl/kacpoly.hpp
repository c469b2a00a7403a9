#pragma once

#include <vector>

#include "wpl/enumerate.hpp"
#include "wpl/presentations.hpp"

namespace wpl {

// Counts of absolutely indecomposable modules, taken at several field
// sizes, assemble into one integer polynomial in q per dimension vector.
// The polynomial depends on the weights alone: not on lambda, not on which
// of the two presentations produced it (for dimensions naming the same
// lattice class), and evaluating it at a prime power predicts the count
// over that field.  interpolate discovers the degree adaptively, since no
// a-priori bound is available; everything downstream double-checks the
// result against fresh enumeration.

enum class SampleSource { direct_count, nil_inversion };

struct KacSample {
    unsigned long q = 0;  // prime power
    Int value;
    SampleSource source = SampleSource::direct_count;
};

struct KacPolynomial {
    AlgebraKind kind = AlgebraKind::canonical;
    std::vector<unsigned> p;
    DimVec dim;
    std::vector<Int> coeffs;  // lowest degree first; empty = zero polynomial

    Int eval(const Int& x) const;
    unsigned degree() const;  // 0 for the zero polynomial
    bool nonnegative() const;
};

// (characteristic, degree) with characteristic^degree = q; rejects q < 2
// and non-prime-powers with std::invalid_argument.
std::pair<unsigned, unsigned> parse_prime_power(unsigned long q);

// One count per field size; lambda entries are taken into each field with
// from_int, so they must stay distinct and nonzero at every q requested.
std::vector<KacSample> sample_counts(AlgebraKind kind, const std::vector<unsigned>& p,
                                     const std::vector<long long>& lambda, const DimVec& d,
                                     const std::vector<unsigned long>& qs,
                                     const EnumOptions& opt = {});

// Fits the samples with the lowest-degree integer polynomial that the data
// supports: interpolates through a growing prefix until every remaining
// sample is reproduced, and insists on at least two such surplus samples.
// Throws std::invalid_argument when the samples cannot settle that way
// ("underdetermined") or repeat a q, and std::logic_error when the settled
// interpolant has a non-integer coefficient ("integrality violation").
KacPolynomial interpolate(AlgebraKind kind, const std::vector<unsigned>& p, const DimVec& dim,
                          const std::vector<KacSample>& samples);

struct ExtensionReport {
    unsigned long q = 0;   // base field size
    unsigned ext = 1;      // extension degree
    Int predicted;         // poly evaluated at q^ext
    Int counted;           // direct enumeration over F_{q^ext}
    bool pass = false;
};

// Evaluates the polynomial at |F_{q^ext}| and checks it against direct
// enumeration of A's scalar extension.
ExtensionReport verify_extension(const KacPolynomial& poly, const Presentation& A, unsigned ext,
                                 const EnumOptions& opt = {});

struct LambdaReport {
    std::vector<std::vector<Fel>> lambda_sets;
    std::vector<Int> counts;  // one per set, same order
    bool pass = false;        // all counts equal (vacuous for one set)
};

// Same count for every parameter choice; the weights are what matters.
LambdaReport verify_lambda_independence(AlgebraKind kind, const std::vector<unsigned>& p,
                                        const DimVec& d, FieldPtr field,
                                        const std::vector<std::vector<Fel>>& lambda_sets,
                                        const EnumOptions& opt = {});

}  // namespace wpl
