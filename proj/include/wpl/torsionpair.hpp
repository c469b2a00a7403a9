#pragma once

#include <map>
#include <utility>
#include <vector>

#include "wpl/enumerate.hpp"
#include "wpl/lattice.hpp"

namespace wpl {

// Every indecomposable module sits, through its lattice class, in exactly
// one of two signed cones: the sheaf cone (positive rank, or rank zero with
// positive degree) and its negative.  Sorting summands by cone splits any
// module into a "shifted" part and a "sheaf" part, and the split is visible
// in dimension vectors alone.  Volumes of the resulting strata factor
// through the Euler form; check_factorization verifies that exactly.

enum class Side { T, FShift };

// Cone position of a nonzero class.  Throws std::invalid_argument on the
// zero class and std::domain_error when rank and degree both vanish; a
// genuine summand class never does.
Side indec_side(const std::vector<unsigned>& p, const KClass& c);

// Dimension vectors of the two halves of M: first the shifted part, then
// the sheaf part.  Their sum is dim M.
std::pair<DimVec, DimVec> split_dims(const Presentation& A, const ModuleLattice& L,
                                     const Representation& M, const EnumOptions& opt = {});

// Volume of the locus of modules of dimension d1+d2 whose split is exactly
// (d1, d2).
Rat bigraded_volume(const Presentation& A, const ModuleLattice& L, const DimVec& d1,
                    const DimVec& d2, const EnumOptions& opt = {});

// All bigraded volumes of ambient dimension d in one sweep, keyed by the
// shifted part d1; splits that never occur are omitted.
std::map<DimVec, Rat> bigraded_volumes(const Presentation& A, const ModuleLattice& L,
                                       const DimVec& d, const EnumOptions& opt = {});

// Volumes restricted to modules lying entirely on one side: the stack
// volume of such modules, and the volume of pairs (M, theta) with M on
// `side` and theta a nilpotent endomorphism.
Rat stack_volume_pure(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                      Side side, const EnumOptions& opt = {});
Rat nil_volume_pure(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                    Side side, const EnumOptions& opt = {});

struct FactorizationEntry {
    DimVec d1, d2;
    Rat volume;    // bigraded volume inside the ambient dimension
    Rat factored;  // q^{-<d1,d2>} * vol(d1, 0) * vol(0, d2)
    bool ok = false;
};

struct FactorizationReport {
    DimVec dim;
    bool pass = false;
    Rat stack;  // volume of the whole ambient stack
    Rat total;  // sum of the bigraded volumes
    std::vector<FactorizationEntry> entries;
};

// Two identities, both as exact rationals: each bigraded volume equals the
// Euler-twisted product of the pure volumes of its two halves, and the
// bigraded volumes add up to the ambient stack volume.
FactorizationReport check_factorization(const Presentation& A, const ModuleLattice& L,
                                        const DimVec& d, const EnumOptions& opt = {});

}  // namespace wpl
