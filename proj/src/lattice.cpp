#include "wpl/lattice.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace wpl {
namespace {

void check_shape(const KClass& x, const KClass& y) {
    if (x.arms.size() != y.arms.size()) throw std::invalid_argument("mixed weight data");
    for (std::size_t i = 0; i < x.arms.size(); ++i)
        if (x.arms[i].size() != y.arms[i].size()) throw std::invalid_argument("mixed weight data");
}

// Exact determinant; matrices here are tiny (one row per vertex).
Rat rat_det(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

// Solves m * x = rhs for square invertible m.
std::vector<Rat> rat_solve(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular system");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat inv = Rat(1) / m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

std::vector<long long> flatten(const KClass& x) {
    std::vector<long long> out{x.e, x.delta};
    for (const auto& arm : x.arms) out.insert(out.end(), arm.begin(), arm.end());
    return out;
}

KClass unflatten(const std::vector<unsigned>& p, const std::vector<long long>& v) {
    KClass x = KClass::zero(p);
    std::size_t k = 0;
    x.e = v[k++];
    x.delta = v[k++];
    for (auto& arm : x.arms)
        for (auto& c : arm) c = v[k++];
    return x;
}

// All paths v -> w as arrow lists in traversal order; includes the trivial
// path when v == w. The quivers are acyclic, so plain DFS terminates.
std::vector<std::vector<unsigned>> paths_between(const Presentation& A, unsigned v, unsigned w) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto dfs = [&](auto&& self, unsigned at) -> void {
        if (at == w) out.push_back(cur);
        for (unsigned k = 0; k < A.arrows.size(); ++k) {
            if (A.arrows[k].src != at) continue;
            cur.push_back(k);
            self(self, A.arrows[k].dst);
            cur.pop_back();
        }
    };
    dfs(dfs, v);
    return out;
}

}  // namespace

KClass KClass::zero(const std::vector<unsigned>& p) {
    KClass x;
    x.arms.reserve(p.size());
    for (unsigned w : p) x.arms.emplace_back(w - 1, 0);
    return x;
}

bool KClass::is_zero() const {
    if (e || delta) return false;
    for (const auto& arm : arms)
        for (long long c : arm)
            if (c) return false;
    return true;
}

KClass operator+(const KClass& x, const KClass& y) {
    check_shape(x, y);
    KClass z = x;
    z.e += y.e;
    z.delta += y.delta;
    for (std::size_t i = 0; i < z.arms.size(); ++i)
        for (std::size_t s = 0; s < z.arms[i].size(); ++s) z.arms[i][s] += y.arms[i][s];
    return z;
}

KClass operator-(const KClass& x, const KClass& y) { return x + (-1LL) * y; }

KClass operator*(long long c, const KClass& x) {
    KClass z = x;
    z.e *= c;
    z.delta *= c;
    for (auto& arm : z.arms)
        for (auto& v : arm) v *= c;
    return z;
}

KClass normal_form(const std::vector<unsigned>& p, const RawKClass& raw) {
    if (raw.b.size() != p.size()) throw std::invalid_argument("raw class does not match weights");
    KClass x = KClass::zero(p);
    x.e = raw.e;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (raw.b[i].size() != p[i]) throw std::invalid_argument("raw class does not match weights");
        x.delta += raw.b[i][0];
        for (unsigned s = 1; s < p[i]; ++s) x.arms[i][s - 1] = raw.b[i][s] - raw.b[i][0];
    }
    return x;
}

RawKClass expand(const std::vector<unsigned>& p, const KClass& x) {
    RawKClass raw;
    raw.e = x.e;
    raw.b.reserve(p.size());
    for (unsigned w : p) raw.b.emplace_back(w, 0);
    for (unsigned s = 0; s < p[0]; ++s) raw.b[0][s] += x.delta;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (unsigned s = 1; s < p[i]; ++s) raw.b[i][s] += x.arms[i][s - 1];
    return raw;
}

KClass e_class(const std::vector<unsigned>& p) {
    KClass x = KClass::zero(p);
    x.e = 1;
    return x;
}

KClass delta_class(const std::vector<unsigned>& p) {
    KClass x = KClass::zero(p);
    x.delta = 1;
    return x;
}

KClass arm_class(const std::vector<unsigned>& p, unsigned i, unsigned s) {
    if (i < 1 || i > p.size() || s >= p[i - 1]) throw std::invalid_argument("no such arm generator");
    RawKClass raw;
    for (unsigned w : p) raw.b.emplace_back(w, 0);
    raw.b[i - 1][s] = 1;
    return normal_form(p, raw);
}

long long euler(const std::vector<unsigned>& p, const KClass& x, const KClass& y) {
    check_shape(x, y);
    RawKClass a = expand(p, x), b = expand(p, y);
    long long out = a.e * b.e;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += a.e * b.b[i][p[i] - 1];
        out -= a.b[i][0] * b.e;
        for (unsigned s = 0; s < p[i]; ++s)
            out += a.b[i][s] * (b.b[i][s] - b.b[i][(s + 1) % p[i]]);
    }
    return out;
}

long long sym(const std::vector<unsigned>& p, const KClass& x, const KClass& y) {
    return euler(p, x, y) + euler(p, y, x);
}

long long weight_lcm(const std::vector<unsigned>& p) {
    long long l = 1;
    for (unsigned w : p) l = std::lcm(l, (long long)w);
    return l;
}

long long rank_of(const KClass& x) { return x.e; }

long long degree_of(const std::vector<unsigned>& p, const KClass& x) {
    const long long l = weight_lcm(p);
    long long deg = x.delta * l;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (long long c : x.arms[i]) deg += c * (l / p[i]);
    return deg;
}

Slope slope(const std::vector<unsigned>& p, const KClass& x) {
    if (x.is_zero()) throw std::domain_error("the zero class has no slope");
    const long long r = rank_of(x);
    if (r == 0) return {true, Rat(0)};
    return {false, Rat(degree_of(p, x)) / Rat(r)};
}

long long kappa(const std::vector<unsigned>& p) {
    const long long l = weight_lcm(p);
    long long k = l * (static_cast<long long>(p.size()) - 2);
    for (unsigned w : p) k -= l / w;
    return k;
}

Rat genus(const std::vector<unsigned>& p) { return Rat(1) + Rat(kappa(p)) / Rat(2); }

std::vector<KClass> tilting_classes(const Presentation& A) {
    const auto& p = A.p;
    std::vector<KClass> theta(A.num_vertices(), KClass::zero(p));
    theta[0] = e_class(p);
    theta[1] = e_class(p) + delta_class(p);
    // Arm vertices count DOWN the twist as the arrows flow towards vertex 1:
    // the maps the arrows stand for are O(l x_i) -> O((l+1) x_i) (canonical)
    // and O(c)/O((l+1) x_i) -> O(c)/O(l x_i) (squid), both contravariant to
    // the arrow direction, so (i,j) carries the summand of "height" p_i - j.
    for (unsigned i = 1; i <= A.num_arms(); ++i)
        for (unsigned j = 1; j < p[i - 1]; ++j) {
            KClass t = KClass::zero(p);
            if (A.kind == AlgebraKind::canonical) {
                t = e_class(p);  // [O((p_i - j) x_i)]
                for (unsigned s = 0; s + j < p[i - 1]; ++s) t = t + arm_class(p, i, s);
            } else {
                // [O(c) / O((p_i - j) x_i)], the length-j uniserial at the point
                for (unsigned s = p[i - 1] - j; s < p[i - 1]; ++s)
                    t = t + arm_class(p, i, s);
            }
            theta[A.arm_vertex(i, j)] = t;
        }
    return theta;
}

std::vector<std::vector<long long>> cartan_matrix(const Presentation& A) {
    const Field& F = *A.field;
    const unsigned n = A.num_vertices();
    std::vector<std::vector<long long>> C(n, std::vector<long long>(n, 0));
    for (unsigned v = 0; v < n; ++v)
        for (unsigned w = 0; w < n; ++w) {
            auto paths = paths_between(A, v, w);
            if (paths.empty()) continue;
            std::map<std::vector<unsigned>, unsigned> col;
            for (unsigned k = 0; k < paths.size(); ++k) col[paths[k]] = k;

            // the (v,w) slice of the relation ideal: S * rel * P over all
            // framings P: v -> src(rel), S: dst(rel) -> w
            std::vector<std::vector<Fel>> rows;
            for (const Relation& rel : A.relations) {
                for (const auto& P : paths_between(A, v, rel.src))
                    for (const auto& S : paths_between(A, rel.dst, w)) {
                        std::vector<Fel> row(paths.size(), 0);
                        for (const PathTerm& t : rel.terms) {
                            std::vector<unsigned> whole = P;
                            whole.insert(whole.end(), t.arrows.begin(), t.arrows.end());
                            whole.insert(whole.end(), S.begin(), S.end());
                            unsigned c = col.at(whole);
                            row[c] = F.add(row[c], t.coeff);
                        }
                        rows.push_back(std::move(row));
                    }
            }
            unsigned rank = 0;
            if (!rows.empty()) {
                Mat m(unsigned(rows.size()), unsigned(paths.size()));
                for (unsigned i = 0; i < rows.size(); ++i)
                    for (unsigned j = 0; j < paths.size(); ++j) m.at(i, j) = rows[i][j];
                rank = mat_rank(F, m);
            }
            C[v][w] = (long long)paths.size() - rank;
        }

    std::vector<std::vector<Rat>> rm(n, std::vector<Rat>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) rm[i][j] = C[i][j];
    Rat d = rat_det(rm);
    if (d != 1 && d != -1) throw std::runtime_error("cartan matrix is not unimodular");
    return C;
}

ModuleLattice module_lattice(const Presentation& A) {
    ModuleLattice L;
    L.p = A.p;
    L.tilting = tilting_classes(A);
    L.cartan = cartan_matrix(A);

    // dual basis: tilting[v] = sum_w cartan[w][v] * simples[w], solved
    // coordinate by coordinate; unimodularity makes the solution integral
    const unsigned n = A.num_vertices();
    std::vector<std::vector<Rat>> ct(n, std::vector<Rat>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) ct[i][j] = L.cartan[j][i];

    const std::size_t ncoord = flatten(L.tilting[0]).size();
    std::vector<std::vector<long long>> simple_coords(n, std::vector<long long>(ncoord));
    for (std::size_t k = 0; k < ncoord; ++k) {
        std::vector<Rat> rhs(n);
        for (unsigned v = 0; v < n; ++v) rhs[v] = flatten(L.tilting[v])[k];
        auto sol = rat_solve(ct, rhs);
        for (unsigned w = 0; w < n; ++w) {
            if (rat_den(sol[w]) != 1) throw std::logic_error("non-integral dual basis");
            simple_coords[w][k] = (long long)rat_num(sol[w]);
        }
    }
    L.simples.reserve(n);
    for (unsigned w = 0; w < n; ++w) L.simples.push_back(unflatten(A.p, simple_coords[w]));
    return L;
}

KClass ModuleLattice::class_of_dim(const std::vector<long long>& dim) const {
    if (dim.size() != simples.size()) throw std::invalid_argument("dimension vector size mismatch");
    KClass x = KClass::zero(p);
    for (std::size_t v = 0; v < dim.size(); ++v) x = x + dim[v] * simples[v];
    return x;
}

std::vector<long long> ModuleLattice::dim_of_class(const KClass& x) const {
    std::vector<long long> dim(tilting.size());
    for (std::size_t v = 0; v < tilting.size(); ++v) dim[v] = euler(p, tilting[v], x);
    return dim;
}

long long ModuleLattice::euler_mod(const std::vector<long long>& d,
                                   const std::vector<long long>& e) const {
    return euler(p, class_of_dim(e), class_of_dim(d));
}

long long ringel_form(const Presentation& A, const std::vector<long long>& d,
                      const std::vector<long long>& e) {
    if (d.size() != A.num_vertices() || e.size() != A.num_vertices())
        throw std::invalid_argument("dimension vector size mismatch");
    long long out = 0;
    for (unsigned v = 0; v < A.num_vertices(); ++v) out += d[v] * e[v];
    for (const Arrow& a : A.arrows) out -= d[a.src] * e[a.dst];
    for (const Relation& r : A.relations) out += d[r.src] * e[r.dst];
    return out;
}

std::vector<long long> signed_dims(const DimVec& d) {
    return std::vector<long long>(d.begin(), d.end());
}

}  // namespace wpl
