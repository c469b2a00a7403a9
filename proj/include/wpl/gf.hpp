#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace wpl {

// Field element: the integer index 0..q-1 whose base-p digits are the
// coefficients (low degree first) of the residue polynomial. Index 0 is
// zero, 1 is one, p is x. This encoding is part of the serialization
// contract, so it must never change.
using Fel = std::uint32_t;

// F_q with q = p^r, exact arithmetic, q capped at 2^20.
//
// The modulus is the lexicographically smallest monic irreducible polynomial
// of degree r over F_p, coefficients compared low-degree-first as integer
// tuples. This makes (p, r) alone determine the whole field, so serialized
// element indices are reproducible across runs and machines.
//
// Add/mul go through flat lookup tables for q <= 4096 (the enumeration hot
// path); above that, polynomial arithmetic on demand. Instances are
// immutable after construction and safe to share across threads.
class Field {
public:
    static constexpr std::uint64_t order_cap = std::uint64_t{1} << 20;
    static constexpr std::uint32_t table_cap = 4096;

    Field(unsigned characteristic, unsigned degree);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return r_; }
    std::uint32_t order() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Fel add(Fel a, Fel b) const {
        return add_table_.empty() ? add_slow(a, b) : add_table_[std::size_t(a) * q_ + b];
    }
    Fel mul(Fel a, Fel b) const {
        return mul_table_.empty() ? mul_slow(a, b) : mul_table_[std::size_t(a) * q_ + b];
    }
    Fel neg(Fel a) const { return neg_table_.empty() ? neg_slow(a) : neg_table_[a]; }
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
    Fel inv(Fel a) const;  // throws on zero
    Fel pow(Fel a, std::uint64_t e) const;

    // Image of n under Z -> F_q (lands in the prime subfield).
    Fel from_int(long long n) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && r_ == o.r_; }

private:
    Fel add_slow(Fel a, Fel b) const;
    Fel mul_slow(Fel a, Fel b) const;
    Fel neg_slow(Fel a) const;

    unsigned p_ = 0;
    unsigned r_ = 0;
    std::uint32_t q_ = 0;
    std::vector<unsigned> modulus_;  // length r+1, monic
    std::vector<std::uint16_t> add_table_, mul_table_;
    std::vector<std::uint16_t> neg_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Cached: repeated make_field(p, r) returns the same instance (tables are
// the expensive part).
FieldPtr make_field(unsigned characteristic, unsigned degree);

// Ring embedding F_q -> F_{q^l}, as a full index map (size from.order()).
// Requires equal characteristic and from.degree() | to.degree(). The image
// of x is the smallest-index root of from's modulus in to, which fixes the
// embedding deterministically; the prime subfield is fixed pointwise.
std::vector<Fel> embed_map(const Field& from, const Field& to);

// Dense matrix over a Field, row-major. 0xn and nx0 are legal (vertices of
// dimension zero produce them constantly).
struct Mat {
    unsigned rows = 0, cols = 0;
    std::vector<Fel> a;

    Mat() = default;
    Mat(unsigned r, unsigned c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    Fel& at(unsigned r, unsigned c) { return a[std::size_t(r) * cols + c]; }
    Fel at(unsigned r, unsigned c) const { return a[std::size_t(r) * cols + c]; }

    static Mat identity(const unsigned n) {
        Mat m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (Fel x : a)
            if (x) return false;
        return true;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_add(const Field& F, const Mat& A, const Mat& B);
Mat mat_sub(const Field& F, const Mat& A, const Mat& B);
Mat mat_scale(const Field& F, Fel c, const Mat& A);

unsigned mat_rank(const Field& F, Mat m);  // exact Gaussian elimination

Mat mat_pow(const Field& F, Mat A, std::uint64_t e);  // A square, e >= 0

// Inverse by Gauss-Jordan; throws std::domain_error if singular.
Mat mat_inverse(const Field& F, const Mat& A);

// Basis of the column space, as columns of the returned matrix (its column
// count is rank(A)); deterministic: keeps the leftmost independent columns.
Mat column_space_basis(const Field& F, const Mat& A);

// Basis of {x : system*x = 0}, echelon-deterministic: one vector per free
// column in ascending column order, free coordinate set to 1.
std::vector<std::vector<Fel>> solve_homogeneous(const Field& F, const Mat& system);

bool mat_invertible(const Field& F, const Mat& A);

// True iff A^k = 0 for some k (A square); decided exactly via A^(2^j) until
// the exponent reaches dim.
bool mat_nilpotent(const Field& F, const Mat& A);

}  // namespace wpl
