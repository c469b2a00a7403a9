#include "wpl/enumerate.hpp"

#include <algorithm>
#include <iterator>
#include <string>
#include <thread>

namespace wpl {

namespace {

void check_dim(const Presentation& A, const DimVec& d) {
    if (d.size() != A.num_vertices())
        throw std::invalid_argument("dimension vector has " + std::to_string(d.size()) +
                                    " entries, presentation has " +
                                    std::to_string(A.num_vertices()) + " vertices");
}

Representation zero_rep(const Presentation& A, const DimVec& d) {
    Representation rep;
    rep.dim = d;
    rep.mats.reserve(A.arrows.size());
    for (const Arrow& a : A.arrows) rep.mats.emplace_back(d[a.dst], d[a.src]);
    return rep;
}

Endo zero_endo_like(const EndRing& E) {
    Endo out;
    out.reserve(E.basis[0].size());
    for (const Mat& m : E.basis[0]) out.emplace_back(m.rows, m.cols);
    return out;
}

Endo identity_endo_like(const EndRing& E) {
    Endo out;
    out.reserve(E.basis[0].size());
    for (const Mat& m : E.basis[0]) out.push_back(Mat::identity(m.rows));
    return out;
}

bool endo_is_idempotent(const Field& F, const Endo& phi) {
    for (const Mat& m : phi)
        if (!(mat_mul(F, m, m) == m)) return false;
    return true;
}

}  // namespace

unsigned tuple_exponent(const Presentation& A, const DimVec& d) {
    check_dim(A, d);
    unsigned n = 0;
    for (const Arrow& a : A.arrows) n += d[a.src] * d[a.dst];
    return n;
}

Int tuple_space_size(const Presentation& A, const DimVec& d) {
    return int_pow(Int(A.field->order()), tuple_exponent(A, d));
}

void for_each_solution(const Presentation& A, const DimVec& d, const EnumOptions& opt,
                       const std::function<SolutionFn(unsigned)>& make_visitor) {
    check_dim(A, d);
    const Field& F = *A.field;
    const Fel q = F.order();
    const unsigned n = tuple_exponent(A, d);
    const Int total = tuple_space_size(A, d);
    if (total > opt.tuple_cap)
        throw ResourceError("tuple space " + std::to_string(q) + "^" + std::to_string(n) +
                            " exceeds cap " + rat_to_string(Rat(opt.tuple_cap)) +
                            " (exponent " + std::to_string(n) + ")");

    const unsigned workers = std::max(1u, opt.workers);
    std::vector<SolutionFn> visitors;
    visitors.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) visitors.push_back(make_visitor(w));

    auto run_chunk = [&](unsigned w) {
        const std::uint64_t lo = ((total * w) / workers).convert_to<std::uint64_t>();
        const std::uint64_t hi = ((total * (w + 1)) / workers).convert_to<std::uint64_t>();
        if (lo == hi) return;

        Representation rep = zero_rep(A, d);
        std::vector<Fel*> slots;
        slots.reserve(n);
        for (Mat& m : rep.mats)
            for (unsigned r = 0; r < m.rows; ++r)
                for (unsigned c = 0; c < m.cols; ++c) slots.push_back(&m.at(r, c));

        std::uint64_t seek = lo;
        for (unsigned k = n; k-- > 0;) {
            *slots[k] = Fel(seek % q);
            seek /= q;
        }

        for (std::uint64_t i = lo; i < hi; ++i) {
            if (rep_satisfies(A, rep)) visitors[w](rep);
            for (unsigned k = n; k-- > 0;) {
                if (++*slots[k] < q) break;
                *slots[k] = 0;
            }
        }
    };

    if (workers == 1) {
        run_chunk(0);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                run_chunk(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::uint64_t span_size_checked(const Field& F, unsigned dim, std::uint64_t cap) {
    std::uint64_t size = 1;
    for (unsigned k = 0; k < dim; ++k) {
        if (size > cap / F.order())
            throw ResourceError("endomorphism span " + std::to_string(F.order()) + "^" +
                                std::to_string(dim) + " exceeds cap " + std::to_string(cap));
        size *= F.order();
    }
    return size;
}

Int count_solutions(const Presentation& A, const DimVec& d, const EnumOptions& opt) {
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<std::uint64_t> partial(workers, 0);
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        return [&partial, w](const Representation&) { ++partial[w]; };
    });
    Int total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

std::vector<Endo> hom_basis(const Presentation& A, const Representation& M,
                            const Representation& N) {
    const Field& F = *A.field;
    const DimVec& dm = M.dim;
    const DimVec& dn = N.dim;
    const unsigned nv = unsigned(dm.size());
    if (dn.size() != nv) throw std::invalid_argument("hom_basis: vertex counts differ");

    std::vector<unsigned> off(nv + 1, 0);
    for (unsigned v = 0; v < nv; ++v) off[v + 1] = off[v] + dn[v] * dm[v];

    unsigned rows = 0;
    for (const Arrow& a : A.arrows) rows += dn[a.dst] * dm[a.src];

    // Unknowns are the entries of phi_v (vertex-major, row-major); one
    // equation per entry of phi_t*M_a - N_a*phi_s.
    Mat sys(rows, off[nv]);
    unsigned row0 = 0;
    for (std::size_t ai = 0; ai < A.arrows.size(); ++ai) {
        const unsigned s = A.arrows[ai].src, t = A.arrows[ai].dst;
        const Mat& Ma = M.mats[ai];
        const Mat& Na = N.mats[ai];
        for (unsigned i = 0; i < dn[t]; ++i)
            for (unsigned j = 0; j < dm[s]; ++j) {
                const unsigned row = row0 + i * dm[s] + j;
                for (unsigned c = 0; c < dm[t]; ++c) {
                    Fel& slot = sys.at(row, off[t] + i * dm[t] + c);
                    slot = F.add(slot, Ma.at(c, j));
                }
                for (unsigned c = 0; c < dn[s]; ++c) {
                    Fel& slot = sys.at(row, off[s] + c * dm[s] + j);
                    slot = F.sub(slot, Na.at(i, c));
                }
            }
        row0 += dn[t] * dm[s];
    }

    std::vector<Endo> basis;
    for (const auto& vec : solve_homogeneous(F, sys)) {
        Endo phi;
        phi.reserve(nv);
        for (unsigned v = 0; v < nv; ++v) {
            Mat m(dn[v], dm[v]);
            for (unsigned r = 0; r < dn[v]; ++r)
                for (unsigned c = 0; c < dm[v]; ++c) m.at(r, c) = vec[off[v] + r * dm[v] + c];
            phi.push_back(std::move(m));
        }
        basis.push_back(std::move(phi));
    }
    return basis;
}

EndRing end_basis(const Presentation& A, const Representation& M) {
    EndRing E;
    E.basis = hom_basis(A, M, M);
    E.dim = unsigned(E.basis.size());
    return E;
}

std::uint64_t surjective_hom_count(const Presentation& A, const Representation& M,
                                   const Representation& N, std::uint64_t span_cap) {
    const Field& F = *A.field;
    unsigned total_n = 0;
    for (unsigned dv : N.dim) total_n += dv;

    EndRing H;
    H.basis = hom_basis(A, M, N);
    H.dim = unsigned(H.basis.size());
    if (H.dim == 0) return total_n == 0 ? 1 : 0;  // only the zero map

    const std::uint64_t size = span_size_checked(F, H.dim, span_cap);
    std::uint64_t surjective = 0;
    for (std::uint64_t i = 0; i < size; ++i) {
        const Endo phi = span_element(F, H, i);
        bool onto = true;
        for (const Mat& m : phi)
            if (mat_rank(F, m) != m.rows) {
                onto = false;
                break;
            }
        if (onto) ++surjective;
    }
    return surjective;
}

Endo span_element(const Field& F, const EndRing& E, std::uint64_t index) {
    if (E.dim == 0) return {};
    Endo acc = zero_endo_like(E);
    for (unsigned k = 0; k < E.dim; ++k) {
        const Fel c = Fel(index % F.order());
        index /= F.order();
        if (c == 0) continue;
        for (std::size_t v = 0; v < acc.size(); ++v)
            acc[v] = mat_add(F, acc[v], mat_scale(F, c, E.basis[k][v]));
    }
    return acc;
}

bool endo_is_unit(const Field& F, const Endo& phi) {
    for (const Mat& m : phi)
        if (!mat_invertible(F, m)) return false;
    return true;
}

bool endo_is_nilpotent(const Field& F, const Endo& phi) {
    for (const Mat& m : phi)
        if (!mat_nilpotent(F, m)) return false;
    return true;
}

std::uint64_t unit_count(const Field& F, const EndRing& E, std::uint64_t span_cap) {
    const std::uint64_t size = span_size_checked(F, E.dim, span_cap);
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < size; ++i)
        if (endo_is_unit(F, span_element(F, E, i))) ++units;
    return units;
}

std::uint64_t nilpotent_count(const Field& F, const EndRing& E, std::uint64_t span_cap) {
    const std::uint64_t size = span_size_checked(F, E.dim, span_cap);
    std::uint64_t nils = 0;
    for (std::uint64_t i = 0; i < size; ++i)
        if (endo_is_nilpotent(F, span_element(F, E, i))) ++nils;
    return nils;
}

bool is_abs_indec(const Field& F, const EndRing& E, std::uint64_t span_cap) {
    if (E.dim == 0) return false;  // zero module
    std::uint64_t target = 1;
    for (unsigned k = 0; k + 1 < E.dim; ++k) target *= F.order();
    target *= F.order() - 1;
    return unit_count(F, E, span_cap) == target;
}

bool is_abs_indec_fast(const Field& F, const EndRing& E, std::uint64_t span_cap) {
    if (E.dim == 0) return false;
    if (E.dim == 1) return true;  // span of the identity alone

    // In a local ring with residue field F_q every element is a scalar plus
    // a nilpotent; reject any basis element that is not.  (The converse
    // fails, e.g. M_2(F_q) has bases of scalar-plus-nilpotent elements, so
    // this is only a filter.)
    for (const Endo& b : E.basis) {
        bool shifted_nilpotent = false;
        for (Fel c = 0; c < F.order() && !shifted_nilpotent; ++c) {
            shifted_nilpotent = true;
            for (const Mat& m : b) {
                if (!mat_nilpotent(F, mat_sub(F, m, mat_scale(F, c, Mat::identity(m.rows))))) {
                    shifted_nilpotent = false;
                    break;
                }
            }
        }
        if (!shifted_nilpotent) return false;
    }

    // Exact criterion: nilpotents = non-units of a local F_q-residue ring,
    // q^{e-1} of them; any other ring structure gives a different count.
    std::uint64_t target = 1;
    for (unsigned k = 0; k + 1 < E.dim; ++k) target *= F.order();
    return nilpotent_count(F, E, span_cap) == target;
}

bool is_indec(const Field& F, const EndRing& E, std::uint64_t span_cap) {
    if (E.dim == 0) return false;
    const std::uint64_t size = span_size_checked(F, E.dim, span_cap);
    const Endo zero = zero_endo_like(E);
    const Endo one = identity_endo_like(E);
    for (std::uint64_t i = 0; i < size; ++i) {
        const Endo phi = span_element(F, E, i);
        if (endo_is_idempotent(F, phi) && phi != zero && phi != one) return false;
    }
    return true;
}

std::vector<Representation> decompose(const Presentation& A, const Representation& M,
                                      const EnumOptions& opt) {
    const Field& F = *A.field;
    const DimVec& d = M.dim;
    unsigned total = 0;
    for (unsigned dv : d) total += dv;
    if (total == 0) return {};

    const EndRing E = end_basis(A, M);
    if (E.dim == 1) return {M};

    // A splitting endomorphism: image and kernel of a stabilized power are
    // complementary submodules.  Basis elements that are neither nilpotent
    // nor invertible give one directly (Fitting); otherwise fall back to
    // scanning the span for a nontrivial idempotent, which exists exactly
    // when M is decomposable.
    Endo split;
    bool found = false;
    for (const Endo& b : E.basis) {
        if (endo_is_nilpotent(F, b) || endo_is_unit(F, b)) continue;
        split.clear();
        for (const Mat& m : b) split.push_back(mat_pow(F, m, total));
        found = true;
        break;
    }
    if (!found) {
        const std::uint64_t size = span_size_checked(F, E.dim, opt.span_cap);
        const Endo zero = zero_endo_like(E);
        const Endo one = identity_endo_like(E);
        for (std::uint64_t i = 0; i < size && !found; ++i) {
            Endo phi = span_element(F, E, i);
            if (endo_is_idempotent(F, phi) && phi != zero && phi != one) {
                split = std::move(phi);
                found = true;
            }
        }
    }
    if (!found) return {M};

    // Change basis to [image | kernel] at every vertex; arrow matrices
    // become block-diagonal because both subspaces are subrepresentations.
    const unsigned nv = unsigned(d.size());
    std::vector<Mat> P(nv, Mat(0, 0)), Pinv;
    DimVec d1(nv, 0);
    for (unsigned v = 0; v < nv; ++v) {
        const Mat im = column_space_basis(F, split[v]);
        const auto ker = solve_homogeneous(F, split[v]);
        d1[v] = im.cols;
        Mat pv(d[v], d[v]);
        for (unsigned r = 0; r < d[v]; ++r) {
            for (unsigned c = 0; c < im.cols; ++c) pv.at(r, c) = im.at(r, c);
            for (unsigned c = 0; c < ker.size(); ++c) pv.at(r, im.cols + c) = ker[c][r];
        }
        P[v] = std::move(pv);
    }
    Pinv.reserve(nv);
    for (unsigned v = 0; v < nv; ++v) Pinv.push_back(mat_inverse(F, P[v]));

    Representation M1, M2;
    M1.dim = d1;
    M2.dim.resize(nv);
    for (unsigned v = 0; v < nv; ++v) M2.dim[v] = d[v] - d1[v];
    for (std::size_t ai = 0; ai < A.arrows.size(); ++ai) {
        const unsigned s = A.arrows[ai].src, t = A.arrows[ai].dst;
        const Mat conj = mat_mul(F, Pinv[t], mat_mul(F, M.mats[ai], P[s]));
        Mat b1(d1[t], d1[s]), b2(d[t] - d1[t], d[s] - d1[s]);
        for (unsigned r = 0; r < conj.rows; ++r)
            for (unsigned c = 0; c < conj.cols; ++c) {
                const bool rt = r < d1[t], ct = c < d1[s];
                if (rt && ct)
                    b1.at(r, c) = conj.at(r, c);
                else if (!rt && !ct)
                    b2.at(r - d1[t], c - d1[s]) = conj.at(r, c);
                else if (conj.at(r, c) != 0)
                    throw std::logic_error("splitting endomorphism produced a non-block");
            }
        M1.mats.push_back(std::move(b1));
        M2.mats.push_back(std::move(b2));
    }

    std::vector<Representation> out = decompose(A, M1, opt);
    std::vector<Representation> rest = decompose(A, M2, opt);
    out.insert(out.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
    return out;
}

JordanType jordan_type(const Presentation& A, const Representation& M, const Endo& theta) {
    const Field& F = *A.field;
    const DimVec& d = M.dim;
    const unsigned nv = unsigned(d.size());
    if (theta.size() != nv) throw std::invalid_argument("endomorphism has wrong vertex count");
    for (unsigned v = 0; v < nv; ++v)
        if (theta[v].rows != d[v] || theta[v].cols != d[v])
            throw std::invalid_argument("endomorphism has wrong shape at a vertex");
    for (std::size_t ai = 0; ai < A.arrows.size(); ++ai) {
        const unsigned s = A.arrows[ai].src, t = A.arrows[ai].dst;
        if (!(mat_mul(F, theta[t], M.mats[ai]) == mat_mul(F, M.mats[ai], theta[s])))
            throw std::invalid_argument("theta is not an endomorphism");
    }
    for (unsigned v = 0; v < nv; ++v)
        if (!mat_nilpotent(F, theta[v])) throw std::invalid_argument("theta is not nilpotent");

    // r[v][k] = rank(theta_v^k), continued until it hits zero.
    std::vector<std::vector<unsigned>> r(nv);
    std::size_t longest = 0;
    for (unsigned v = 0; v < nv; ++v) {
        r[v].push_back(d[v]);
        Mat power = Mat::identity(d[v]);
        while (r[v].back() > 0) {
            power = mat_mul(F, power, theta[v]);
            r[v].push_back(mat_rank(F, power));
        }
        longest = std::max(longest, r[v].size() - 1);
    }
    auto rank_at = [&](unsigned v, std::size_t k) -> long {
        return k < r[v].size() ? long(r[v][k]) : 0L;
    };

    JordanType alpha(longest, std::vector<unsigned>(nv, 0));
    for (std::size_t i = 1; i <= longest; ++i)
        for (unsigned v = 0; v < nv; ++v) {
            const long a = rank_at(v, i - 1) - 2 * rank_at(v, i) + rank_at(v, i + 1);
            if (a < 0) throw std::logic_error("rank sequence is not concave");
            alpha[i - 1][v] = unsigned(a);
        }
    return alpha;
}

Int gl_order(const DimVec& d, unsigned long q) {
    Int out = 1;
    for (unsigned dv : d) {
        const Int qd = int_pow(Int(q), dv);
        for (unsigned k = 0; k < dv; ++k) out *= qd - int_pow(Int(q), k);
    }
    return out;
}

Int count_abs_indec(const Presentation& A, const DimVec& d, const EnumOptions& opt) {
    const Field& F = *A.field;
    const unsigned long q = F.order();
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<Int> partial(workers, Int(0));
    const std::uint64_t span_cap = opt.span_cap;
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        Int* acc = &partial[w];
        return [&A, &F, acc, span_cap, q](const Representation& M) {
            const EndRing E = end_basis(A, M);
            if (is_abs_indec_fast(F, E, span_cap))
                // |Aut M| = q^e - q^{e-1}: the unit count of a local ring
                // with residue field F_q.
                *acc += int_pow(Int(q), E.dim) - int_pow(Int(q), E.dim - 1);
        };
    });
    Int total = 0;
    for (const Int& c : partial) total += c;
    const Int g = gl_order(d, q);
    if (total % g != 0)
        throw std::logic_error("orbit-stabilizer integrality violated: automorphism sum " +
                               rat_to_string(Rat(total)) + " not divisible by " +
                               rat_to_string(Rat(g)));
    return total / g;
}

Rat stack_volume(const Presentation& A, const DimVec& d, const EnumOptions& opt) {
    return Rat(count_solutions(A, d, opt), gl_order(d, A.field->order()));
}

Rat nil_volume(const Presentation& A, const DimVec& d, const EnumOptions& opt) {
    const Field& F = *A.field;
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<Int> partial(workers, Int(0));
    const std::uint64_t span_cap = opt.span_cap;
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        Int* acc = &partial[w];
        return [&A, &F, acc, span_cap](const Representation& M) {
            *acc += nilpotent_count(F, end_basis(A, M), span_cap);
        };
    });
    Int pairs = 0;
    for (const Int& c : partial) pairs += c;
    return Rat(pairs, gl_order(d, F.order()));
}

}  // namespace wpl
