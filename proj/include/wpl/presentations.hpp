#pragma once

#include <string>
#include <vector>

#include "wpl/gf.hpp"

namespace wpl {

// Both algebra families are presented over the same vertex set:
//
//   index 0      source vertex "0"
//   index 1      vertex "1"
//   2 onwards    arm vertices (i,j), arm-major: i = 1..N, j = 1..p_i-1
//
// Arms are 1-based, p_i >= 1; an arm of weight 1 contributes no vertices.
// The marked points behind the parameters are normalized so that arm 1
// sits at infinity, arm 2 at zero, and arm i >= 3 at lambda_i; hence
// lambda has N-2 entries, all nonzero and pairwise distinct.
//
// Arrow matrices act on column vectors: an arrow s -> t carries a
// (dim_t x dim_s) matrix, and a path multiplies later arrows on the left.

struct Arrow {
    unsigned src = 0, dst = 0;
    std::string name;
};

// One summand of a relation: coeff * (arrows traversed first-to-last).
struct PathTerm {
    Fel coeff = 0;
    std::vector<unsigned> arrows;
};

struct Relation {
    unsigned src = 0, dst = 0;
    std::vector<PathTerm> terms;
};

enum class AlgebraKind { canonical, squid };

struct Presentation {
    AlgebraKind kind = AlgebraKind::canonical;
    FieldPtr field;
    std::vector<unsigned> p;
    std::vector<Fel> lambda;  // lambda_3..lambda_N

    std::vector<std::string> vertex_names;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    unsigned num_vertices() const { return unsigned(vertex_names.size()); }
    unsigned num_arms() const { return unsigned(p.size()); }

    // Arm vertex (i,j), i 1-based, 1 <= j <= p_i - 1.
    unsigned arm_vertex(unsigned i, unsigned j) const;
};

Presentation canonical_presentation(FieldPtr field, std::vector<unsigned> p, std::vector<Fel> lambda);
Presentation squid_presentation(FieldPtr field, std::vector<unsigned> p, std::vector<Fel> lambda);

// Same presentation with scalars pushed along F_q -> F_{q^ext}. Dimension
// counts over extension fields must use this, not a fresh lambda.
Presentation extend_presentation(const Presentation& A, unsigned ext);

using DimVec = std::vector<unsigned>;

struct Representation {
    DimVec dim;             // per vertex
    std::vector<Mat> mats;  // per arrow, shape dim[dst] x dim[src]
};

// Product of the arrow matrices along a path (traversal order), as a map
// dim[path src] -> dim[path dst].
Mat path_eval(const Presentation& A, const Representation& R, const std::vector<unsigned>& arrows);

// All defining relations vanish on R.
bool rep_satisfies(const Presentation& A, const Representation& R);

}  // namespace wpl
