#include "wpl/presentations.hpp"

#include <set>
#include <stdexcept>

namespace wpl {
namespace {

void validate(const Field& F, const std::vector<unsigned>& p, const std::vector<Fel>& lambda) {
    if (p.size() < 2) throw std::invalid_argument("need at least two arms");
    for (unsigned w : p)
        if (w < 1) throw std::invalid_argument("arm weights must be positive");
    if (lambda.size() + 2 != p.size())
        throw std::invalid_argument("expected one parameter per arm beyond the second");
    std::set<Fel> seen;
    for (Fel l : lambda) {
        if (l == 0) throw std::invalid_argument("parameters must be nonzero");
        if (l >= F.order()) throw std::invalid_argument("parameter outside the field");
        if (!seen.insert(l).second) throw std::invalid_argument("parameters must be distinct");
    }
}

std::string arm_name(unsigned i, unsigned j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void build_vertices(Presentation& A) {
    A.vertex_names = {"0", "1"};
    for (unsigned i = 1; i <= A.num_arms(); ++i)
        for (unsigned j = 1; j < A.p[i - 1]; ++j) A.vertex_names.push_back(arm_name(i, j));
}

}  // namespace

unsigned Presentation::arm_vertex(unsigned i, unsigned j) const {
    unsigned idx = 2;
    for (unsigned k = 1; k < i; ++k) idx += p[k - 1] - 1;
    return idx + (j - 1);
}

Presentation canonical_presentation(FieldPtr field, std::vector<unsigned> p, std::vector<Fel> lambda) {
    validate(*field, p, lambda);
    Presentation A;
    A.kind = AlgebraKind::canonical;
    A.field = std::move(field);
    A.p = std::move(p);
    A.lambda = std::move(lambda);
    build_vertices(A);

    const unsigned N = A.num_arms();
    // arm i is the chain 0 -> (i,1) -> ... -> (i,p_i-1) -> 1; weight-one arms
    // degenerate to a single arrow 0 -> 1
    std::vector<std::vector<unsigned>> arm_path(N);
    for (unsigned i = 1; i <= N; ++i) {
        unsigned prev = 0;
        for (unsigned j = 1; j < A.p[i - 1]; ++j) {
            unsigned v = A.arm_vertex(i, j);
            arm_path[i - 1].push_back(unsigned(A.arrows.size()));
            A.arrows.push_back({prev, v, "x[" + std::to_string(i) + "," + std::to_string(j - 1) + "]"});
            prev = v;
        }
        arm_path[i - 1].push_back(unsigned(A.arrows.size()));
        A.arrows.push_back({prev, 1, "x[" + std::to_string(i) + "," + std::to_string(A.p[i - 1] - 1) + "]"});
    }

    const Field& F = *A.field;
    for (unsigned i = 3; i <= N; ++i) {
        Relation r;
        r.src = 0;
        r.dst = 1;
        r.terms.push_back({1, arm_path[i - 1]});
        r.terms.push_back({F.neg(1), arm_path[0]});
        r.terms.push_back({A.lambda[i - 3], arm_path[1]});
        A.relations.push_back(std::move(r));
    }
    return A;
}

Presentation squid_presentation(FieldPtr field, std::vector<unsigned> p, std::vector<Fel> lambda) {
    validate(*field, p, lambda);
    Presentation A;
    A.kind = AlgebraKind::squid;
    A.field = std::move(field);
    A.p = std::move(p);
    A.lambda = std::move(lambda);
    build_vertices(A);

    const unsigned N = A.num_arms();
    A.arrows.push_back({0, 1, "a"});
    A.arrows.push_back({0, 1, "b"});
    // arm i is the chain 1 -> (i,1) -> ... -> (i,p_i-1); weight-one arms are empty
    std::vector<int> first_arm_arrow(N, -1);
    for (unsigned i = 1; i <= N; ++i) {
        unsigned prev = 1;
        for (unsigned j = 1; j < A.p[i - 1]; ++j) {
            unsigned v = A.arm_vertex(i, j);
            if (j == 1) first_arm_arrow[i - 1] = int(A.arrows.size());
            A.arrows.push_back({prev, v, "x[" + std::to_string(i) + "," + std::to_string(j) + "]"});
            prev = v;
        }
    }

    const Field& F = *A.field;
    // relations kill the composite 0 -> 1 -> (i,1) through the point of arm i
    for (unsigned i = 1; i <= N; ++i) {
        if (first_arm_arrow[i - 1] < 0) continue;
        unsigned x = unsigned(first_arm_arrow[i - 1]);
        Relation r;
        r.src = 0;
        r.dst = A.arm_vertex(i, 1);
        if (i == 1) {
            r.terms.push_back({1, {0, x}});  // x a
        } else if (i == 2) {
            r.terms.push_back({1, {1, x}});  // x b
        } else {
            r.terms.push_back({A.lambda[i - 3], {0, x}});  // x (lambda a - b)
            r.terms.push_back({F.neg(1), {1, x}});
        }
        A.relations.push_back(std::move(r));
    }
    return A;
}

Presentation extend_presentation(const Presentation& A, unsigned ext) {
    if (ext == 0) throw std::invalid_argument("extension degree must be positive");
    const Field& F = *A.field;
    FieldPtr big = make_field(F.characteristic(), F.degree() * ext);
    auto phi = embed_map(F, *big);
    std::vector<Fel> lam;
    lam.reserve(A.lambda.size());
    for (Fel l : A.lambda) lam.push_back(phi[l]);
    return A.kind == AlgebraKind::canonical ? canonical_presentation(big, A.p, lam)
                                            : squid_presentation(big, A.p, lam);
}

Mat path_eval(const Presentation& A, const Representation& R, const std::vector<unsigned>& arrows) {
    if (arrows.empty()) throw std::invalid_argument("empty path");
    Mat out = R.mats[arrows.front()];
    for (std::size_t k = 1; k < arrows.size(); ++k)
        out = mat_mul(*A.field, R.mats[arrows[k]], out);
    return out;
}

bool rep_satisfies(const Presentation& A, const Representation& R) {
    const Field& F = *A.field;
    for (const Relation& rel : A.relations) {
        Mat sum(R.dim[rel.dst], R.dim[rel.src]);
        for (const PathTerm& t : rel.terms)
            sum = mat_add(F, sum, mat_scale(F, t.coeff, path_eval(A, R, t.arrows)));
        if (!sum.is_zero()) return false;
    }
    return true;
}

}  // namespace wpl
