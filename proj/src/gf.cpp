#include "wpl/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace wpl {
namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p: coefficient vectors, low degree first, no trailing
// zeros enforced by callers where it matters.
using Poly = std::vector<unsigned>;

bool poly_is_zero(const Poly& f) {
    for (unsigned c : f)
        if (c) return false;
    return true;
}

// f mod g, g monic of degree dg >= 1.
Poly poly_mod(Poly f, const Poly& g, unsigned dg, unsigned p) {
    for (std::size_t i = f.size(); i-- > dg;) {
        unsigned c = f[i] % p;
        if (!c) continue;
        // subtract c * x^(i-dg) * g
        for (unsigned j = 0; j <= dg; ++j) {
            unsigned& t = f[i - dg + j];
            t = (t + p - (c * g[j]) % p) % p;
        }
    }
    f.resize(dg);
    return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, unsigned dg, unsigned p) {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(prod), g, dg, p);
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool poly_irreducible(const Poly& f, unsigned deg, unsigned p) {
    if (deg == 1) return true;
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        Poly g(d + 1, 0);
        g[d] = 1;
        // iterate over all p^d choices of lower coefficients
        std::uint64_t total = 1;
        for (unsigned i = 0; i < d; ++i) total *= p;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = unsigned(t % p);
                t /= p;
            }
            if (poly_is_zero(poly_mod(f, g, d, p))) return false;
        }
    }
    return true;
}

Fel poly_to_index(const Poly& f, unsigned p, unsigned r) {
    Fel n = 0;
    for (unsigned i = r; i-- > 0;) n = n * p + (i < f.size() ? f[i] % p : 0);
    return n;
}

Poly index_to_poly(Fel n, unsigned p, unsigned r) {
    Poly f(r, 0);
    for (unsigned i = 0; i < r; ++i) {
        f[i] = n % p;
        n /= p;
    }
    return f;
}

}  // namespace

Field::Field(unsigned characteristic, unsigned degree) : p_(characteristic), r_(degree) {
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    if (r_ == 0) throw std::invalid_argument("field degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < r_; ++i) {
        q *= p_;
        if (q > order_cap) throw std::invalid_argument("field order exceeds 2^20");
    }
    q_ = std::uint32_t(q);

    // Lex-smallest monic irreducible: enumerate coefficient tuples
    // (c_0, ..., c_{r-1}) in lexicographic order, c_0 most significant.
    modulus_.assign(r_ + 1, 0);
    modulus_[r_] = 1;
    for (std::uint64_t t = 0;; ++t) {
        if (t >= q) throw std::logic_error("no irreducible polynomial found");  // cannot happen
        std::uint64_t rem = t;
        for (unsigned i = r_; i-- > 0;) {  // c_{r-1} varies fastest
            modulus_[i] = unsigned(rem % p_);
            rem /= p_;
        }
        if (poly_irreducible(modulus_, r_, p_)) break;
    }

    if (q_ <= table_cap) {
        neg_table_.resize(q_);
        add_table_.resize(std::size_t(q_) * q_);
        mul_table_.resize(std::size_t(q_) * q_);
        for (Fel a = 0; a < q_; ++a) {
            neg_table_[a] = std::uint16_t(neg_slow(a));
            for (Fel b = 0; b < q_; ++b) {
                add_table_[std::size_t(a) * q_ + b] = std::uint16_t(add_slow(a, b));
                mul_table_[std::size_t(a) * q_ + b] = std::uint16_t(mul_slow(a, b));
            }
        }
    }
}

Fel Field::add_slow(Fel a, Fel b) const {
    if (r_ == 1) return (a + b) % p_;
    Fel out = 0;
    Fel scale = 1;
    for (unsigned i = 0; i < r_; ++i) {
        out += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

Fel Field::neg_slow(Fel a) const {
    if (r_ == 1) return a ? p_ - a : 0;
    Fel out = 0;
    Fel scale = 1;
    for (unsigned i = 0; i < r_; ++i) {
        unsigned c = a % p_;
        out += (c ? p_ - c : 0) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

Fel Field::mul_slow(Fel a, Fel b) const {
    if (r_ == 1) return Fel(std::uint64_t(a) * b % p_);
    Poly prod = poly_mulmod(index_to_poly(a, p_, r_), index_to_poly(b, p_, r_), modulus_, r_, p_);
    return poly_to_index(prod, p_, r_);
}

Fel Field::pow(Fel a, std::uint64_t e) const {
    Fel out = 1;
    while (e) {
        if (e & 1) out = mul(out, a);
        a = mul(a, a);
        e >>= 1;
    }
    return out;
}

Fel Field::inv(Fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, q_ - 2);
}

Fel Field::from_int(long long n) const {
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return Fel(m);
}

FieldPtr make_field(unsigned characteristic, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{characteristic, degree}];
    if (!slot) slot = std::make_shared<Field>(characteristic, degree);
    return slot;
}

std::vector<Fel> embed_map(const Field& from, const Field& to) {
    if (from.characteristic() != to.characteristic())
        throw std::invalid_argument("embedding requires equal characteristic");
    if (to.degree() % from.degree() != 0)
        throw std::invalid_argument("embedding requires degree divisibility");

    const unsigned p = from.characteristic();
    // Smallest-index root of from's modulus inside to.
    Fel root = 0;
    bool found = false;
    for (Fel x = 0; x < to.order(); ++x) {
        Fel val = 0;
        Fel xp = 1;
        for (unsigned i = 0; i <= from.degree(); ++i) {
            val = to.add(val, to.mul(to.from_int(from.modulus()[i]), xp));
            xp = to.mul(xp, x);
        }
        if (val == 0) {
            root = x;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("modulus has no root in extension");  // cannot happen

    std::vector<Fel> map(from.order());
    for (Fel n = 0; n < from.order(); ++n) {
        Fel img = 0, rp = 1;
        Fel digits = n;
        for (unsigned i = 0; i < from.degree(); ++i) {
            img = to.add(img, to.mul(to.from_int(digits % p), rp));
            digits /= p;
            rp = to.mul(rp, root);
        }
        map[n] = img;
    }
    return map;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul shape mismatch");
    Mat C(A.rows, B.cols);
    for (unsigned i = 0; i < A.rows; ++i)
        for (unsigned k = 0; k < A.cols; ++k) {
            Fel aik = A.at(i, k);
            if (!aik) continue;
            for (unsigned j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_add shape mismatch");
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

Mat mat_sub(const Field& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_sub shape mismatch");
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

Mat mat_scale(const Field& F, Fel c, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
    return C;
}

unsigned mat_rank(const Field& F, Mat m) {
    unsigned rank = 0;
    for (unsigned col = 0; col < m.cols && rank < m.rows; ++col) {
        unsigned pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != rank)
            for (unsigned j = col; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        Fel s = F.inv(m.at(rank, col));
        for (unsigned j = col; j < m.cols; ++j) m.at(rank, j) = F.mul(s, m.at(rank, j));
        for (unsigned i = 0; i < m.rows; ++i) {
            if (i == rank) continue;
            Fel c = m.at(i, col);
            if (!c) continue;
            for (unsigned j = col; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Fel>> solve_homogeneous(const Field& F, const Mat& system) {
    Mat m = system;
    const unsigned n = m.cols;
    std::vector<unsigned> pivot_col;
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < m.rows; ++col) {
        unsigned pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != rank)
            for (unsigned j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        Fel s = F.inv(m.at(rank, col));
        for (unsigned j = col; j < n; ++j) m.at(rank, j) = F.mul(s, m.at(rank, j));
        for (unsigned i = 0; i < m.rows; ++i) {
            if (i == rank) continue;
            Fel c = m.at(i, col);
            if (!c) continue;
            for (unsigned j = col; j < n; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(rank, j)));
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(n, false);
    for (unsigned c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Fel>> basis;
    for (unsigned free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fel> v(n, 0);
        v[free] = 1;
        for (unsigned i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = F.neg(m.at(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool mat_invertible(const Field& F, const Mat& A) {
    if (A.rows != A.cols) return false;
    return mat_rank(F, A) == A.rows;
}

Mat mat_pow(const Field& F, Mat A, std::uint64_t e) {
    if (A.rows != A.cols) throw std::invalid_argument("mat_pow needs a square matrix");
    Mat out = Mat::identity(A.rows);
    while (e) {
        if (e & 1) out = mat_mul(F, out, A);
        A = mat_mul(F, A, A);
        e >>= 1;
    }
    return out;
}

Mat mat_inverse(const Field& F, const Mat& A) {
    if (A.rows != A.cols) throw std::domain_error("inverse of a non-square matrix");
    const unsigned n = A.rows;
    Mat m = A;
    Mat inv = Mat::identity(n);
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && m.at(piv, col) == 0) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        if (piv != col)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Fel s = F.inv(m.at(col, col));
        for (unsigned j = 0; j < n; ++j) {
            m.at(col, j) = F.mul(s, m.at(col, j));
            inv.at(col, j) = F.mul(s, inv.at(col, j));
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == col) continue;
            Fel c = m.at(i, col);
            if (!c) continue;
            for (unsigned j = 0; j < n; ++j) {
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(col, j)));
                inv.at(i, j) = F.sub(inv.at(i, j), F.mul(c, inv.at(col, j)));
            }
        }
    }
    return inv;
}

Mat column_space_basis(const Field& F, const Mat& A) {
    // pivot columns of the echelon form index the kept columns of A
    Mat m = A;
    std::vector<unsigned> pivots;
    unsigned rank = 0;
    for (unsigned col = 0; col < m.cols && rank < m.rows; ++col) {
        unsigned piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (unsigned j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Fel s = F.inv(m.at(rank, col));
        for (unsigned j = col; j < m.cols; ++j) m.at(rank, j) = F.mul(s, m.at(rank, j));
        for (unsigned i = 0; i < m.rows; ++i) {
            if (i == rank) continue;
            Fel c = m.at(i, col);
            if (!c) continue;
            for (unsigned j = col; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(rank, j)));
        }
        pivots.push_back(col);
        ++rank;
    }
    Mat out(A.rows, rank);
    for (unsigned k = 0; k < rank; ++k)
        for (unsigned i = 0; i < A.rows; ++i) out.at(i, k) = A.at(i, pivots[k]);
    return out;
}

bool mat_nilpotent(const Field& F, const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("nilpotency needs a square matrix");
    if (A.rows == 0) return true;
    Mat power = A;
    for (unsigned k = 1; k < 2 * A.rows; k *= 2) {
        if (power.is_zero()) return true;
        power = mat_mul(F, power, power);
    }
    return power.is_zero();
}

}  // namespace wpl
