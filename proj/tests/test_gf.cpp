#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpl/gf.hpp"

using namespace wpl;

namespace {

// Deterministic filler for property tests.
struct Lcg {
    std::uint64_t s = 0x243f6a8885a308d3ull;
    std::uint32_t next(std::uint32_t bound) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return std::uint32_t((s >> 33) % bound);
    }
};

Mat random_mat(Lcg& rng, const Field& F, unsigned r, unsigned c) {
    Mat m(r, c);
    for (auto& x : m.a) x = rng.next(F.order());
    return m;
}

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (unsigned i = 0; i < m.rows; ++i)
        for (unsigned j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

}  // namespace

TEST_CASE("deterministic moduli") {
    CHECK(make_field(2, 1)->modulus() == std::vector<unsigned>{0, 1});
    CHECK(make_field(2, 2)->modulus() == std::vector<unsigned>{1, 1, 1});  // x^2+x+1
    CHECK(make_field(3, 2)->modulus() == std::vector<unsigned>{1, 0, 1});  // x^2+1
    CHECK(make_field(2, 4)->order() == 16);
    // cache returns the identical instance
    CHECK(make_field(5, 1).get() == make_field(5, 1).get());
}

TEST_CASE("construction guards") {
    CHECK_THROWS(Field(4, 1));
    CHECK_THROWS(Field(1, 1));
    CHECK_THROWS(Field(2, 0));
    CHECK_THROWS(Field(2, 21));   // 2^21 > cap
    CHECK_NOTHROW(Field(2, 20));  // exactly at cap
}

TEST_CASE("field axioms, exhaustive for small q") {
    for (auto [p, r] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {2u, 3u}, {3u, 2u},
                        {2u, 4u}, {5u, 2u}, {3u, 3u}}) {
        auto Fp = make_field(p, r);
        const Field& F = *Fp;
        const Fel q = F.order();
        for (Fel a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.mul(a, 0) == 0);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.pow(a, q) == a);               // Frobenius fixed points of x^q
            if (a) CHECK(F.pow(a, q - 1) == 1);
        }
        for (Fel a = 0; a < q; ++a)
            for (Fel b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (Fel c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
    }
}

TEST_CASE("cube roots of unity in F_4") {
    auto F4 = make_field(2, 2);
    for (Fel x = 1; x < 4; ++x) CHECK(F4->pow(x, 3) == 1);
}

TEST_CASE("from_int wraps modulo p") {
    auto F3 = make_field(3, 1);
    CHECK(F3->from_int(7) == 1);
    CHECK(F3->from_int(-1) == 2);
    CHECK(F3->from_int(0) == 0);
    auto F4 = make_field(2, 2);
    CHECK(F4->from_int(3) == 1);  // prime subfield only
}

TEST_CASE("embeddings are injective ring maps") {
    for (auto [pf, pt] : {std::pair{std::pair{2u, 1u}, std::pair{2u, 2u}},
                          {{3u, 1u}, {3u, 2u}},
                          {{2u, 2u}, {2u, 4u}},
                          {{2u, 1u}, {2u, 4u}},
                          {{5u, 1u}, {5u, 2u}}}) {
        auto from = make_field(pf.first, pf.second);
        auto to = make_field(pt.first, pt.second);
        auto phi = embed_map(*from, *to);
        CHECK(phi[0] == 0);
        CHECK(phi[1] == 1);
        std::vector<bool> seen(to->order(), false);
        for (Fel a = 0; a < from->order(); ++a) {
            CHECK(!seen[phi[a]]);
            seen[phi[a]] = true;
            for (Fel b = 0; b < from->order(); ++b) {
                CHECK(phi[from->add(a, b)] == to->add(phi[a], phi[b]));
                CHECK(phi[from->mul(a, b)] == to->mul(phi[a], phi[b]));
            }
        }
    }
    CHECK_THROWS(embed_map(*make_field(2, 2), *make_field(2, 3)));  // 2 does not divide 3
    CHECK_THROWS(embed_map(*make_field(2, 1), *make_field(3, 1)));
}

TEST_CASE("rank examples") {
    auto F2 = make_field(2, 1);
    Mat z(2, 2);
    CHECK(mat_rank(*F2, z) == 0);
    CHECK(mat_rank(*F2, Mat::identity(3)) == 3);
    Mat ones(2, 2);
    ones.a = {1, 1, 1, 1};
    CHECK(mat_rank(*F2, ones) == 1);
    // [[1,1],[1,-1]] has rank 2 over F_3 but rank 1 over F_2
    auto F3 = make_field(3, 1);
    Mat m(2, 2);
    m.a = {1, 1, 1, 2};
    CHECK(mat_rank(*F3, m) == 2);
}

TEST_CASE("rank equals rank of transpose") {
    Lcg rng;
    for (unsigned pr : {2u, 3u, 4u}) {
        auto F = pr == 4 ? make_field(2, 2) : make_field(pr, 1);
        for (int trial = 0; trial < 40; ++trial) {
            Mat m = random_mat(rng, *F, 1 + rng.next(5), 1 + rng.next(5));
            CHECK(mat_rank(*F, m) == mat_rank(*F, transpose(m)));
        }
    }
}

TEST_CASE("solve_homogeneous") {
    auto F2 = make_field(2, 1);
    CHECK(solve_homogeneous(*F2, Mat::identity(2)).empty());

    Mat zero_row(1, 3);
    CHECK(solve_homogeneous(*F2, zero_row).size() == 3);

    Mat sum(1, 2);
    sum.a = {1, 1};
    auto basis = solve_homogeneous(*F2, sum);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Fel>{1, 1});

    // basis really spans the kernel: A v = 0 and count = cols - rank
    Lcg rng;
    for (unsigned pr : {2u, 3u, 4u, 5u}) {
        auto F = pr == 4 ? make_field(2, 2) : make_field(pr, 1);
        for (int trial = 0; trial < 30; ++trial) {
            Mat m = random_mat(rng, *F, 1 + rng.next(4), 1 + rng.next(5));
            auto ker = solve_homogeneous(*F, m);
            CHECK(ker.size() == m.cols - mat_rank(*F, m));
            for (const auto& v : ker) {
                Mat col(m.cols, 1);
                for (unsigned i = 0; i < m.cols; ++i) col.at(i, 0) = v[i];
                CHECK(mat_mul(*F, m, col).is_zero());
            }
        }
    }
}

TEST_CASE("zero-dimensional matrices are legal") {
    auto F2 = make_field(2, 1);
    Mat a(0, 3), b(3, 2);
    Mat c = mat_mul(*F2, a, b);
    CHECK(c.rows == 0);
    CHECK(c.cols == 2);
    CHECK(mat_rank(*F2, Mat(0, 5)) == 0);
    CHECK(solve_homogeneous(*F2, Mat(0, 2)).size() == 2);
    CHECK(mat_nilpotent(*F2, Mat(0, 0)));
    CHECK(mat_invertible(*F2, Mat(0, 0)));
}

TEST_CASE("nilpotency") {
    auto F3 = make_field(3, 1);
    Mat shift(3, 3);
    shift.at(0, 1) = 1;
    shift.at(1, 2) = 2;
    CHECK(mat_nilpotent(*F3, shift));
    CHECK(!mat_nilpotent(*F3, Mat::identity(3)));
    Mat idem(2, 2);
    idem.at(0, 0) = 1;  // projection: neither nilpotent nor invertible
    CHECK(!mat_nilpotent(*F3, idem));
    CHECK(!mat_invertible(*F3, idem));
}

TEST_CASE("inverse and powers") {
    Lcg rng;
    for (unsigned pr : {2u, 3u, 5u}) {
        auto F = make_field(pr, 1);
        for (int trial = 0; trial < 40; ++trial) {
            Mat m = random_mat(rng, *F, 3, 3);
            if (!mat_invertible(*F, m)) {
                CHECK_THROWS_AS(mat_inverse(*F, m), std::domain_error);
                continue;
            }
            Mat inv = mat_inverse(*F, m);
            CHECK(mat_mul(*F, m, inv) == Mat::identity(3));
            CHECK(mat_mul(*F, inv, m) == Mat::identity(3));
        }
    }
    auto F7 = make_field(7, 1);
    Lcg rng2;
    Mat a = random_mat(rng2, *F7, 4, 4);
    CHECK(mat_pow(*F7, a, 0) == Mat::identity(4));
    CHECK(mat_pow(*F7, a, 1) == a);
    CHECK(mat_pow(*F7, a, 5) == mat_mul(*F7, mat_pow(*F7, a, 2), mat_pow(*F7, a, 3)));
}

TEST_CASE("column space basis") {
    auto F3 = make_field(3, 1);
    Mat m(3, 4);
    // col2 = 2*col0, col3 = col0 + col1
    m.at(0, 0) = 1; m.at(1, 0) = 2; m.at(2, 0) = 0;
    m.at(0, 1) = 0; m.at(1, 1) = 1; m.at(2, 1) = 1;
    for (unsigned i = 0; i < 3; ++i) {
        m.at(i, 2) = F3->mul(2, m.at(i, 0));
        m.at(i, 3) = F3->add(m.at(i, 0), m.at(i, 1));
    }
    Mat b = column_space_basis(*F3, m);
    CHECK(b.rows == 3);
    CHECK(b.cols == 2);
    for (unsigned i = 0; i < 3; ++i) {
        CHECK(b.at(i, 0) == m.at(i, 0));
        CHECK(b.at(i, 1) == m.at(i, 1));
    }
    CHECK(column_space_basis(*F3, Mat(3, 2)).cols == 0);
    CHECK(column_space_basis(*F3, Mat::identity(4)) == Mat::identity(4));
    CHECK(mat_rank(*F3, column_space_basis(*F3, m)) == mat_rank(*F3, m));
}
