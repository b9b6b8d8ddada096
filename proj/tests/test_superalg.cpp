#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtorus/supermatrix.hpp"

#include <random>
#include <vector>

using namespace qtorus;

namespace {

std::vector<QMode> test_modes() {
    return {QMode::generic(), QMode::root_of_unity(2), QMode::root_of_unity(3)};
}

Scalar rand_scalar(std::mt19937& rng, QMode mode) {
    std::uniform_int_distribution<int> c(-4, 4), pick(0, 3);
    Coef a = c(rng);
    if (a == 0) a = 1;
    Scalar s = Scalar::from_int(mode, a);
    if (pick(rng) == 0) s = s + Scalar::eps(mode) * Scalar::from_int(mode, c(rng));
    return s;
}

TorusElement rand_torus(std::mt19937& rng, QMode mode, int max_terms = 2) {
    std::uniform_int_distribution<int> nt(1, max_terms), e(-3, 3);
    TorusElement t = TorusElement::zero(mode);
    int k = nt(rng);
    for (int i = 0; i < k; ++i)
        t = t + TorusElement::monomial(mode, e(rng), e(rng), rand_scalar(rng, mode));
    return t;
}

/// Random homogeneous matrix part in gl(1,2) of the requested parity.
SuperMatrix rand_homog(std::mt19937& rng, QMode mode, Parity p, int max_entries = 2) {
    static const std::vector<std::pair<int, int>> even_pos = {
        {0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    static const std::vector<std::pair<int, int>> odd_pos = {{0, 1}, {0, 2}, {1, 0}, {2, 0}};
    const auto& pos = (p == Parity::Even) ? even_pos : odd_pos;
    std::uniform_int_distribution<size_t> pi(0, pos.size() - 1);
    std::uniform_int_distribution<int> ne(1, max_entries);
    SuperMatrix m(mode, 1, 2);
    int k = ne(rng);
    for (int i = 0; i < k; ++i) {
        auto [r, c] = pos[pi(rng)];
        m.add_entry(r, c, rand_torus(rng, mode));
    }
    return m;
}

ExtElement rand_ext(std::mt19937& rng, QMode mode, Parity p) {
    ExtElement x(rand_homog(rng, mode, p));
    std::uniform_int_distribution<int> pick(0, 4);
    if (p == Parity::Even && pick(rng) == 0) x.add_central(0, rand_scalar(rng, mode));
    if (p == Parity::Even && pick(rng) == 0) x.add_cy(rand_scalar(rng, mode));
    return x;
}

int par_int(const SuperMatrix& m) { return m.parity() == Parity::Odd ? 1 : 0; }

/// Independent oracle for the matrix part of the bracket: dense index loops,
/// products accumulated entry by entry in a plain 2-d array of torus elements.
SuperMatrix dense_super_commutator(const SuperMatrix& A, const SuperMatrix& B) {
    int d = A.dim();
    int sign = (par_int(A) && par_int(B)) ? +1 : -1; // AB + BA for odd,odd
    std::vector<std::vector<TorusElement>> acc(
        d, std::vector<TorusElement>(d, TorusElement::zero(A.mode())));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                acc[i][k] = acc[i][k] + A.entry(i, j) * B.entry(j, k);
                TorusElement ba = B.entry(i, j) * A.entry(j, k);
                acc[i][k] = (sign > 0) ? acc[i][k] + ba : acc[i][k] - ba;
            }
    SuperMatrix out(A.mode(), A.rows_even(), A.rows_odd());
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) out.add_entry(i, k, acc[i][k]);
    return out;
}

} // namespace

TEST_CASE("bracket_matrix_part_matches_dense_oracle") {
    std::mt19937 rng(2024);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 40; ++rep) {
            Parity pa = (rep & 1) ? Parity::Odd : Parity::Even;
            Parity pb = (rep & 2) ? Parity::Odd : Parity::Even;
            SuperMatrix A = rand_homog(rng, mode, pa);
            SuperMatrix B = rand_homog(rng, mode, pb);
            ExtElement br = superbracket_ext(ExtElement(A), ExtElement(B));
            CHECK(br.mat() == dense_super_commutator(A, B));
        }
    }
}

TEST_CASE("bracket_is_super_skew_including_centrals") {
    std::mt19937 rng(77);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 60; ++rep) {
            Parity pa = (rep & 1) ? Parity::Odd : Parity::Even;
            Parity pb = (rep % 3 == 0) ? Parity::Odd : Parity::Even;
            ExtElement a = rand_ext(rng, mode, pa);
            ExtElement b = rand_ext(rng, mode, pb);
            ExtElement lhs = superbracket_ext(a, b);
            ExtElement rhs = superbracket_ext(b, a);
            if (pa == Parity::Odd && pb == Parity::Odd) {
                CHECK(lhs == rhs);
            } else {
                CHECK(lhs == -rhs);
            }
        }
    }
}

TEST_CASE("bracket_satisfies_graded_jacobi") {
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]] on homogeneous elements,
    // central coordinates included. Exercises the 2-cocycle condition.
    std::mt19937 rng(13);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 50; ++rep) {
            Parity pa = (rep & 1) ? Parity::Odd : Parity::Even;
            Parity pb = (rep & 2) ? Parity::Odd : Parity::Even;
            Parity pc = (rep % 5 < 2) ? Parity::Odd : Parity::Even;
            ExtElement a = rand_ext(rng, mode, pa);
            ExtElement b = rand_ext(rng, mode, pb);
            ExtElement c = rand_ext(rng, mode, pc);
            ExtElement lhs = superbracket_ext(a, superbracket_ext(b, c));
            ExtElement rhs = superbracket_ext(superbracket_ext(a, b), c);
            ExtElement cross = superbracket_ext(b, superbracket_ext(a, c));
            if (pa == Parity::Odd && pb == Parity::Odd) cross = -cross;
            rhs = rhs + cross;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("bracket_is_bilinear") {
    std::mt19937 rng(5150);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 30; ++rep) {
            Parity p = (rep & 1) ? Parity::Odd : Parity::Even;
            Parity pb = (rep & 2) ? Parity::Odd : Parity::Even;
            ExtElement a1 = rand_ext(rng, mode, p);
            ExtElement a2 = rand_ext(rng, mode, p);
            ExtElement b = rand_ext(rng, mode, pb);
            Scalar s = rand_scalar(rng, mode);
            ExtElement lhs = superbracket_ext(a1.scaled(s) + a2, b);
            ExtElement rhs = superbracket_ext(a1, b).scaled(s) + superbracket_ext(a2, b);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("central_spot_values") {
    for (QMode mode : test_modes()) {
        auto E = [&](int r, int c, int m, int n) {
            return ExtElement(
                SuperMatrix::unit(mode, 1, 1, r, c, TorusElement::monomial(mode, m, n)));
        };
        Scalar one = Scalar::one(mode);

        // [E00 x, E00 x^-1] = c(0): matrix parts cancel, cocycle survives.
        {
            ExtElement br = superbracket_ext(E(0, 0, 1, 0), E(0, 0, -1, 0));
            ExtElement want = ExtElement::central(mode, 1, 1, 0, one);
            CHECK(br == want);
        }
        // [E00 y, E00 y^-1] = c_y.
        {
            ExtElement br = superbracket_ext(E(0, 0, 0, 1), E(0, 0, 0, -1));
            ExtElement want(mode, 1, 1);
            want.add_cy(one);
            CHECK(br == want);
        }
        // {E01 x, E10 x^-1} = E00 + E11 + c(0).
        {
            ExtElement br = superbracket_ext(E(0, 1, 1, 0), E(1, 0, -1, 0));
            ExtElement want(mode, 1, 1);
            want.mat().add_entry(0, 0, TorusElement::one(mode));
            want.mat().add_entry(1, 1, TorusElement::one(mode));
            want.add_central(0, one);
            CHECK(br == want);
        }
        // [E11 x, E11 x^-1] = -c(0): odd diagonal index flips the supertrace.
        {
            ExtElement br = superbracket_ext(E(1, 1, 1, 0), E(1, 1, -1, 0));
            ExtElement want = ExtElement::central(mode, 1, 1, 0, -one);
            CHECK(br == want);
        }
    }
    // Root-of-unity only: u = d lands in Lambda, so c(d) symbols appear.
    {
        QMode mode = QMode::root_of_unity(2);
        ExtElement a(SuperMatrix::unit(mode, 1, 1, 0, 0, TorusElement::monomial(mode, 1, 1)));
        ExtElement b(SuperMatrix::unit(mode, 1, 1, 0, 0, TorusElement::monomial(mode, -1, 1)));
        // m=1,n=1,p=-1,s=1: n+s=2 in Lambda(2); q^{np} = q^{-1} = q at d=2.
        ExtElement br = superbracket_ext(a, b);
        CHECK(br.mat().is_zero());
        CHECK(br.c_coords().size() == 1);
        CHECK(br.c_coords().at(2) == q_pow(mode, -1));
        CHECK(br.cy().is_zero());
    }
    // Generic mode: the same pair brackets to a matrix part with no central term.
    {
        QMode mode = QMode::generic();
        ExtElement a(SuperMatrix::unit(mode, 1, 1, 0, 0, TorusElement::monomial(mode, 1, 1)));
        ExtElement b(SuperMatrix::unit(mode, 1, 1, 0, 0, TorusElement::monomial(mode, -1, 1)));
        ExtElement br = superbracket_ext(a, b);
        CHECK(br.c_coords().empty());
        CHECK(!br.mat().is_zero());
    }
}

TEST_CASE("central_elements_are_central") {
    std::mt19937 rng(404);
    for (QMode mode : test_modes()) {
        ExtElement z = ExtElement::central(mode, 1, 2, 0, Scalar::from_int(mode, 3));
        z.add_cy(Scalar::from_int(mode, -2));
        for (int rep = 0; rep < 10; ++rep) {
            ExtElement a = rand_ext(rng, mode, (rep & 1) ? Parity::Odd : Parity::Even);
            CHECK(superbracket_ext(z, a).is_zero());
            CHECK(superbracket_ext(a, z).is_zero());
        }
    }
}

TEST_CASE("supertrace_of_commutator_lies_in_commutator_space") {
    std::mt19937 rng(31337);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 40; ++rep) {
            Parity pa = (rep & 1) ? Parity::Odd : Parity::Even;
            Parity pb = (rep & 2) ? Parity::Odd : Parity::Even;
            SuperMatrix A = rand_homog(rng, mode, pa);
            SuperMatrix B = rand_homog(rng, mode, pb);
            ExtElement br = superbracket_ext(ExtElement(A), ExtElement(B));
            CHECK(br.mat().str().in_commutator_space());
        }
    }
}

TEST_CASE("supertrace_values_on_units") {
    QMode mode = QMode::generic();
    TorusElement v = TorusElement::monomial(mode, 2, -1);
    CHECK(SuperMatrix::unit(mode, 1, 2, 0, 0, v).str() == v);
    CHECK(SuperMatrix::unit(mode, 1, 2, 1, 1, v).str() == -v);
    CHECK(SuperMatrix::unit(mode, 1, 2, 2, 2, v).str() == -v);
    CHECK(SuperMatrix::unit(mode, 1, 2, 0, 1, v).str().is_zero());
}

TEST_CASE("mixed_parity_is_rejected") {
    QMode mode = QMode::generic();
    SuperMatrix m(mode, 1, 1);
    m.add_entry(0, 0, TorusElement::one(mode));
    m.add_entry(0, 1, TorusElement::one(mode));
    CHECK_THROWS_AS(m.parity(), MixedParityError);
    ExtElement a(m);
    ExtElement b(SuperMatrix::unit(mode, 1, 1, 0, 0, TorusElement::one(mode)));
    CHECK_THROWS_AS(superbracket_ext(a, b), MixedParityError);
    CHECK_THROWS_AS(superbracket_ext(b, a), MixedParityError);
}

TEST_CASE("ext_element_json_roundtrip") {
    std::mt19937 rng(808);
    for (QMode mode : test_modes()) {
        for (int rep = 0; rep < 15; ++rep) {
            ExtElement a = rand_ext(rng, mode, (rep & 1) ? Parity::Odd : Parity::Even);
            nlohmann::ordered_json j = a.to_json();
            ExtElement back = ExtElement::from_json(mode, nlohmann::json::parse(j.dump()));
            CHECK(back == a);
        }
    }
}

TEST_CASE("central_symbol_outside_lambda_is_rejected") {
    ExtElement a(QMode::generic(), 1, 1);
    CHECK_THROWS_AS(a.add_central(1, Scalar::one(QMode::generic())), ConfigError);
    ExtElement b(QMode::root_of_unity(3), 1, 1);
    CHECK_NOTHROW(b.add_central(3, Scalar::one(QMode::root_of_unity(3))));
    CHECK_THROWS_AS(b.add_central(2, Scalar::one(QMode::root_of_unity(3))), ConfigError);
}
