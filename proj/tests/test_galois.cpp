#include <doctest.h>

#include <random>

#include "cpb/galois.hpp"
#include "cpb/linalg.hpp"
#include "oracles.hpp"

using cpb::gf::Elem;
using cpb::gf::GaloisField;
using cpb::gf::Matrix;

TEST_CASE("field construction") {
    SUBCASE("default GF(2^8) has alpha = x = 2 and order 256") {
        GaloisField f(8);
        CHECK(f.reduction_poly() == 0x163);
        CHECK(f.order() == 256);
        CHECK(f.alpha() == 2);
        // alpha is primitive: all 255 powers distinct, returning to 1.
        std::vector<bool> seen(256, false);
        Elem v = 1;
        for (int i = 0; i < 255; ++i) {
            CHECK(!seen[v]);
            seen[v] = true;
            v = f.mul(v, f.alpha());
        }
        CHECK(v == 1);
    }
    SUBCASE("GF(4): alpha^3 = 1") {
        GaloisField f(2, 0x7);
        CHECK(f.alpha() == 2);
        CHECK(f.pow(f.alpha(), 3) == 1);
        CHECK(f.mul(2, 2) == 3);  // x^2 = x + 1
    }
    SUBCASE("reducible polynomial rejected") {
        CHECK_THROWS_AS(GaloisField(8, 0x100), cpb::ParamError);  // x^8
        CHECK_THROWS_AS(GaloisField(4, 0x15), cpb::ParamError);   // (x^2+x+1)^2
    }
    SUBCASE("irreducible but non-primitive polynomial rejected") {
        // x^4+x^3+x^2+x+1 is irreducible; x has order 5, not 15.
        CHECK(cpb::gf::poly_irreducible(0x1F, 4));
        CHECK_THROWS_WITH_AS(GaloisField(4, 0x1F), doctest::Contains("not primitive"),
                             cpb::ParamError);
    }
    SUBCASE("degree out of range") {
        CHECK_THROWS_AS(GaloisField(1), cpb::ParamError);
        CHECK_THROWS_AS(GaloisField(17), cpb::ParamError);
    }
    SUBCASE("every default polynomial builds") {
        for (int m = 2; m <= 16; ++m) {
            GaloisField f(m);
            CHECK(f.order() == (1u << m));
            CHECK(f.mul(f.alpha(), f.inv(f.alpha())) == 1);
        }
    }
}

TEST_CASE("add is xor") {
    GaloisField f(8);
    CHECK(f.add(0x57, 0x57) == 0x00);
    CHECK(f.add(0x57, 0x00) == 0x57);
    CHECK(f.add(0x05, 0x0E) == 0x0B);
}

TEST_CASE("mul matches the schoolbook oracle") {
    GaloisField f(8);
    CHECK(f.mul(0x00, 0x57) == 0x00);
    CHECK(f.mul(0x01, 0x57) == 0x57);
    GaloisField f11d(8, 0x11D);
    CHECK(f11d.mul(0x02, 0x80) == 0x1D);
    // Exhaustive over all pairs at m = 8, both polynomials.
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b) {
            REQUIRE(f.mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                    oracle::gf_mul_schoolbook(a, b, 0x163, 8));
            REQUIRE(f11d.mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                    oracle::gf_mul_schoolbook(a, b, 0x11D, 8));
        }
}

TEST_CASE("mul matches the oracle on sampled pairs for other degrees") {
    std::mt19937_64 rng(7);
    for (int m : {2, 3, 5, 7, 10, 12, 16}) {
        GaloisField f(m);
        for (int trial = 0; trial < 2000; ++trial) {
            const Elem a = oracle::random_elem(f, rng);
            const Elem b = oracle::random_elem(f, rng);
            REQUIRE(f.mul(a, b) ==
                    oracle::gf_mul_schoolbook(a, b, f.reduction_poly(), m));
        }
    }
}

TEST_CASE("field axioms") {
    GaloisField f(8);
    SUBCASE("commutativity, exhaustive pairs") {
        for (unsigned a = 0; a < 256; ++a)
            for (unsigned b = 0; b < 256; ++b) {
                REQUIRE(f.mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                        f.mul(static_cast<Elem>(b), static_cast<Elem>(a)));
                REQUIRE(f.add(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                        f.add(static_cast<Elem>(b), static_cast<Elem>(a)));
            }
    }
    SUBCASE("associativity and distributivity, randomized triples") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 100000; ++trial) {
            const Elem a = oracle::random_elem(f, rng);
            const Elem b = oracle::random_elem(f, rng);
            const Elem c = oracle::random_elem(f, rng);
            REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST_CASE("inverse") {
    GaloisField f(8);
    CHECK(f.inv(0x01) == 0x01);
    CHECK_THROWS_AS(f.inv(0x00), cpb::MathError);
    SUBCASE("against the exhaustive-scan oracle, sampled") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 64; ++trial) {
            const Elem a = oracle::random_nonzero(f, rng);
            CHECK(f.inv(a) == oracle::gf_inv_scan(a, 0x163, 8));
        }
    }
    SUBCASE("involution and product for all nonzero") {
        for (unsigned a = 1; a < 256; ++a) {
            REQUIRE(f.inv(f.inv(static_cast<Elem>(a))) == a);
            REQUIRE(f.mul(static_cast<Elem>(a), f.inv(static_cast<Elem>(a))) == 1);
        }
    }
}

TEST_CASE("pow") {
    GaloisField f(8);
    CHECK(f.pow(f.alpha(), 255) == 1);
    CHECK(f.pow(0x39, 1) == 0x39);
    CHECK(f.mul(f.pow(f.alpha(), 5), f.pow(f.alpha(), -5)) == 1);
    CHECK(f.pow(0, 3) == 0);
    CHECK_THROWS_AS(f.pow(0, 0), cpb::MathError);
    CHECK_THROWS_AS(f.pow(0, -2), cpb::MathError);
    SUBCASE("exp/log round trip for all nonzero") {
        for (unsigned x = 1; x < 256; ++x)
            REQUIRE(f.pow(f.alpha(), f.log(static_cast<Elem>(x))) == x);
    }
    SUBCASE("alpha_pow handles negatives and wrap") {
        CHECK(f.alpha_pow(0) == 1);
        CHECK(f.alpha_pow(255) == 1);
        CHECK(f.alpha_pow(-255) == 1);
        CHECK(f.alpha_pow(256) == f.alpha());
        CHECK(f.mul(f.alpha_pow(-37), f.alpha_pow(37)) == 1);
    }
}

TEST_CASE("solve_linear") {
    GaloisField f(8);
    SUBCASE("identity system") {
        Matrix id = Matrix::identity(4);
        std::vector<Elem> b = {5, 9, 0, 0xAB};
        CHECK(cpb::gf::solve_linear(f, id, b) == b);
    }
    SUBCASE("the 2x2 pair system recovers the transform inputs") {
        // [[1, a],[1, 1]] (x, y) = (x + a*y, x + y)
        Matrix m(2, 2);
        m.at(0, 0) = 1;
        m.at(0, 1) = f.alpha();
        m.at(1, 0) = 1;
        m.at(1, 1) = 1;
        const Elem x = 0x05, y = 0x07;
        const std::vector<Elem> rhs = {f.add(x, f.mul(f.alpha(), y)), f.add(x, y)};
        const auto sol = cpb::gf::solve_linear(f, m, rhs);
        CHECK(sol[0] == x);
        CHECK(sol[1] == y);
    }
    SUBCASE("random invertible systems round-trip, up to 40x40") {
        std::mt19937_64 rng(17);
        for (int n : {2, 5, 13, 40}) {
            const Matrix a = oracle::random_invertible(f, n, rng);
            std::vector<Elem> x(static_cast<std::size_t>(n));
            for (auto& v : x) v = oracle::random_elem(f, rng);
            const auto b = cpb::gf::matvec(f, a, x);
            CHECK(cpb::gf::solve_linear(f, a, b) == x);
        }
    }
    SUBCASE("singular system reports the rank") {
        Matrix m(3, 3);
        // Two identical rows.
        for (int j = 0; j < 3; ++j) {
            m.at(0, j) = static_cast<Elem>(j + 1);
            m.at(1, j) = static_cast<Elem>(j + 1);
            m.at(2, j) = static_cast<Elem>(7 * j + 3);
        }
        try {
            cpb::gf::solve_linear(f, m, {1, 2, 3});
            FAIL("expected SingularMatrixError");
        } catch (const cpb::SingularMatrixError& e) {
            CHECK(e.rank == 2);
        }
    }
}

TEST_CASE("invert_matrix and is_invertible") {
    GaloisField f(8);
    CHECK(cpb::gf::invert_matrix(f, Matrix::identity(3)) == Matrix::identity(3));
    SUBCASE("the pair-mixing 2x2 is invertible since alpha != 1") {
        Matrix m(2, 2);
        m.at(0, 0) = 1;
        m.at(0, 1) = f.alpha();
        m.at(1, 0) = 1;
        m.at(1, 1) = 1;
        CHECK(cpb::gf::is_invertible(f, m));
        const Matrix inv = cpb::gf::invert_matrix(f, m);
        CHECK(cpb::gf::matmul(f, m, inv) == Matrix::identity(2));
    }
    SUBCASE("repeated row is singular") {
        Matrix m(2, 2);
        m.at(0, 0) = 3;
        m.at(0, 1) = 9;
        m.at(1, 0) = 3;
        m.at(1, 1) = 9;
        CHECK(!cpb::gf::is_invertible(f, m));
        CHECK_THROWS_AS(cpb::gf::invert_matrix(f, m), cpb::SingularMatrixError);
    }
    SUBCASE("inverse round-trips on random matrices") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix a = oracle::random_invertible(f, 8, rng);
            CHECK(cpb::gf::matmul(f, a, cpb::gf::invert_matrix(f, a)) ==
                  Matrix::identity(8));
        }
    }
}
