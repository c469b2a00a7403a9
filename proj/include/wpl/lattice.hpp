#pragma once

#include <vector>

#include "wpl/presentations.hpp"
#include "wpl/rational.hpp"

namespace wpl {

// Numerical invariants live in the lattice spanned by e, delta and the arm
// generators e_{i,s} (i = 1..N, s in Z/p_i), modulo the relations
// sum_s e_{i,s} = sum_s e_{j,s} =: delta. We store classes in the normal
// form that eliminates every e_{i,0}:
//
//   x  =  e_coeff * e  +  delta_coeff * delta  +  sum_{i, s>=1} arms[i][s-1] * e_{i,s}
//
// using e_{i,0} = delta - sum_{s>=1} e_{i,s}. Two raw coordinate vectors
// represent the same class iff they have equal normal forms.
struct KClass {
    long long e = 0;
    long long delta = 0;
    std::vector<std::vector<long long>> arms;  // arms[i-1] has p_i - 1 entries

    static KClass zero(const std::vector<unsigned>& p);
    bool is_zero() const;
    bool operator==(const KClass&) const = default;
};

KClass operator+(const KClass& x, const KClass& y);
KClass operator-(const KClass& x, const KClass& y);
KClass operator*(long long c, const KClass& x);

// Raw coordinates: e plus one coefficient per pair (i, s), s = 0..p_i-1.
struct RawKClass {
    long long e = 0;
    std::vector<std::vector<long long>> b;
};

KClass normal_form(const std::vector<unsigned>& p, const RawKClass& raw);
// Expands delta along arm 1.
RawKClass expand(const std::vector<unsigned>& p, const KClass& x);

// Basis classes.
KClass e_class(const std::vector<unsigned>& p);
KClass delta_class(const std::vector<unsigned>& p);
KClass arm_class(const std::vector<unsigned>& p, unsigned i, unsigned s);  // e_{i,s}, 0 <= s < p_i

// The (non-symmetric) Euler pairing. On generators:
//   <e,e> = 1            <e,delta> = 1            <delta,e> = -1
//   <e,e_{i,s}> = [s = p_i - 1]                   <e_{i,s},e> = -[s = 0]
//   <e_{i,s},e_{i',s'}> = [i = i'] ([s = s'] - [s = s'+1 mod p_i])
// and zero between delta and the arm generators.
long long euler(const std::vector<unsigned>& p, const KClass& x, const KClass& y);
long long sym(const std::vector<unsigned>& p, const KClass& x, const KClass& y);

long long weight_lcm(const std::vector<unsigned>& p);
long long rank_of(const KClass& x);
long long degree_of(const std::vector<unsigned>& p, const KClass& x);

// degree/rank; rank-zero nonzero classes sit at slope infinity regardless of
// degree sign. The zero class has no slope.
struct Slope {
    bool infinite = false;
    Rat value;
};
Slope slope(const std::vector<unsigned>& p, const KClass& x);

// Euler characteristic data of the weight sequence: kappa = lcm*(N-2) -
// sum_i lcm/p_i, and the genus 1 + kappa/2 (often fractional).
long long kappa(const std::vector<unsigned>& p);
Rat genus(const std::vector<unsigned>& p);

// Per-vertex classes of the indecomposable summands of the tilting object
// that presents the module category, in vertex order:
//   canonical:  0 |-> e,  1 |-> e + delta,  (i,j) |-> e + sum_{s <= p_i-j-1} e_{i,s}
//   squid:      0 |-> e,  1 |-> e + delta,  (i,j) |-> sum_{s >= p_i-j} e_{i,s}
// The arm assignment runs against the arrow flow; it is the unique one
// compatible with cartan_matrix (see the pairing check in the tests).
std::vector<KClass> tilting_classes(const Presentation& A);

// cartan[v][w] = dim e_w A e_v: paths v -> w modulo the two-sided ideal
// spanned by the relations. Throws if |det| != 1 (it never is for these
// families, but the check is cheap and guards the dual-basis solve below).
std::vector<std::vector<long long>> cartan_matrix(const Presentation& A);

// Everything needed to translate between dimension vectors and classes.
// simples[] is the dual basis to tilting[] under euler(): it solves
// tilting[v] = sum_w cartan[w][v] * simples[w].
struct ModuleLattice {
    std::vector<unsigned> p;
    std::vector<KClass> tilting;
    std::vector<std::vector<long long>> cartan;
    std::vector<KClass> simples;

    KClass class_of_dim(const std::vector<long long>& dim) const;
    std::vector<long long> dim_of_class(const KClass& x) const;

    // Euler form of the module category in terms of dimension vectors. The
    // lattice pairing sees the derived equivalence from the sheaf side, which
    // reverses the arguments: <M,N>_mod = euler(class(N), class(M)).
    long long euler_mod(const std::vector<long long>& d, const std::vector<long long>& e) const;
};

ModuleLattice module_lattice(const Presentation& A);

// Direct count on the presentation: sum_v d_v e_v - sum_{arrows s->t} d_s e_t
// + sum_{relations u => z} d_u e_z. Independent of the lattice translation,
// used to cross-check euler_mod.
long long ringel_form(const Presentation& A, const std::vector<long long>& d,
                      const std::vector<long long>& e);

std::vector<long long> signed_dims(const DimVec& d);

}  // namespace wpl
