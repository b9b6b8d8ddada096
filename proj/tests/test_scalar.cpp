#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtorus/scalar.hpp"

#include <array>
#include <random>

using namespace qtorus;

namespace {

std::vector<QMode> all_modes() {
    return {QMode::generic(),       QMode::root_of_unity(1), QMode::root_of_unity(2),
            QMode::root_of_unity(3), QMode::root_of_unity(4), QMode::root_of_unity(6)};
}

Fq random_fq(QMode mode, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> exp(-3, 3), coef(-6, 6), nterms(1, 3);
    auto poly = [&] {
        LPoly p;
        int k = nterms(rng);
        for (int i = 0; i < k; ++i) p = p + LPoly::monomial(exp(rng), coef(rng));
        return p;
    };
    // The denominator must be a unit: nonzero, and in root mode a nonzero
    // residue class mod Phi_d.
    LPoly num = poly(), den;
    do { den = poly(); } while (fq_make(mode, den, LPoly::one()).is_zero());
    return fq_make(mode, num, den);
}

Scalar random_scalar(QMode mode, std::mt19937_64& rng, bool with_eps = true) {
    Fq ep = with_eps && (rng() & 1) ? random_fq(mode, rng) : Fq{};
    return Scalar::make(mode, random_fq(mode, rng), ep);
}

// Independent oracle for the eps-adjoined ring: represent a + b*eps as the
// 2x2 matrix a*I + b*M with M = [[0, -1/2], [1, 0]], so M^2 = -1/2 * I.
struct Mat2 {
    QMode m;
    std::array<Fq, 4> v; // row-major
};

Mat2 to_mat(const Scalar& s) {
    QMode m = s.mode();
    Fq half = fq_from_rat(1, 2);
    return Mat2{m,
                {s.even(), fq_neg(fq_mul(m, half, s.eps_part())), s.eps_part(), s.even()}};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    QMode m = a.m;
    auto dot = [&](int r, int c) {
        return fq_add(m, fq_mul(m, a.v[r * 2], b.v[c]), fq_mul(m, a.v[r * 2 + 1], b.v[2 + c]));
    };
    return Mat2{m, {dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1)}};
}

Mat2 mat_add(const Mat2& a, const Mat2& b) {
    QMode m = a.m;
    Mat2 r{m, {}};
    for (int i = 0; i < 4; ++i) r.v[i] = fq_add(m, a.v[i], b.v[i]);
    return r;
}

bool mat_eq(const Mat2& a, const Mat2& b) { return a.v == b.v; }

} // namespace

TEST_CASE("eps_ring_matches_matrix_oracle") {
    std::mt19937_64 rng(20240811);
    for (QMode mode : all_modes()) {
        for (int it = 0; it < 60; ++it) {
            Scalar a = random_scalar(mode, rng), b = random_scalar(mode, rng);
            CHECK(mat_eq(to_mat(a * b), mat_mul(to_mat(a), to_mat(b))));
            CHECK(mat_eq(to_mat(a + b), mat_add(to_mat(a), to_mat(b))));
        }
    }
}

TEST_CASE("eps_squares_to_minus_half") {
    for (QMode mode : all_modes()) {
        Scalar e = Scalar::eps(mode);
        CHECK(e * e == Scalar::from_rat(mode, -1, 2));
    }
}

TEST_CASE("q_pow_is_a_character") {
    for (QMode mode : all_modes())
        for (int j = -8; j <= 8; ++j)
            for (int k = -8; k <= 8; ++k)
                CHECK(q_pow(mode, j) * q_pow(mode, k) == q_pow(mode, j + k));
}

TEST_CASE("root_of_unity_is_primitive") {
    for (int d = 1; d <= 12; ++d) {
        QMode mode = QMode::root_of_unity(d);
        CHECK(q_pow(mode, d) == Scalar::one(mode));
        for (int k = 1; k < d; ++k) CHECK(q_pow(mode, k) != Scalar::one(mode));
    }
}

TEST_CASE("lambda_membership") {
    QMode g = QMode::generic();
    CHECK(g.lambda_contains(0));
    CHECK(!g.lambda_contains(3));
    QMode r3 = QMode::root_of_unity(3);
    CHECK(r3.lambda_contains(0));
    CHECK(r3.lambda_contains(-6));
    CHECK(!r3.lambda_contains(2));
}

TEST_CASE("q_ratio_closed_form_and_recursion") {
    for (QMode mode : all_modes()) {
        for (int m = -8; m <= 8; ++m) {
            for (int n = -4; n <= 4; ++n) {
                Scalar r = q_ratio(mode, m, n);
                if (mode.lambda_contains(n)) {
                    CHECK(r == Scalar::from_int(mode, m));
                } else {
                    // r * (q^n - 1) == q^{mn} - 1
                    Scalar lhs = r * (q_pow(mode, n) - Scalar::one(mode));
                    CHECK(lhs == q_pow(mode, int64_t(m) * n) - Scalar::one(mode));
                }
                // recursion: ratio(m+1) = ratio(m) + q^{nm}
                CHECK(q_ratio(mode, m + 1, n) == r + q_pow(mode, int64_t(n) * m));
            }
        }
    }
}

TEST_CASE("theta_values") {
    QMode g = QMode::generic();
    CHECK(theta(g, 5) == Scalar::one(g));
    CHECK(theta(g, 0) == Scalar::from_rat(g, 1, 2));
    CHECK(theta(g, -2) == Scalar::zero(g));
}

TEST_CASE("field_axioms_sampled") {
    std::mt19937_64 rng(777);
    for (QMode mode : all_modes()) {
        for (int it = 0; it < 40; ++it) {
            Scalar a = random_scalar(mode, rng), b = random_scalar(mode, rng),
                   c = random_scalar(mode, rng);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            // The eps-norm a^2 + b^2/2 can only vanish when sqrt(-2) lies in K
            // (8 | d), so every nonzero scalar in these modes is invertible.
            if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(mode));
        }
    }
}

TEST_CASE("division_by_zero_throws") {
    QMode g = QMode::generic();
    CHECK_THROWS_AS(Scalar::zero(g).inverse(), DivisionByNonUnitError);
    CHECK_THROWS_AS(fq_inv(g, Fq{}), DivisionByNonUnitError);
}

TEST_CASE("split_ring_norm_can_vanish") {
    // At a primitive 8th root, (q + q^3)^2 = -2, so (q + q^3) + 2*eps has
    // norm a^2 + b^2/2 = -2 + 2 = 0 and must be rejected as a divisor.
    QMode m = QMode::root_of_unity(8);
    Fq a = fq_add(m, fq_q_pow(m, 1), fq_q_pow(m, 3));
    CHECK(fq_mul(m, a, a) == fq_from_int(-2));
    Scalar s = Scalar::make(m, a, fq_from_int(2));
    CHECK_THROWS_AS(s.inverse(), DivisionByNonUnitError);
}

TEST_CASE("scalar_string_roundtrip") {
    std::mt19937_64 rng(31337);
    for (QMode mode : all_modes()) {
        for (int it = 0; it < 80; ++it) {
            Fq a = random_fq(mode, rng);
            CHECK(fq_parse(mode, fq_str(a)) == a);
        }
    }
}

TEST_CASE("scalar_json_roundtrip") {
    std::mt19937_64 rng(4242);
    for (QMode mode : all_modes()) {
        for (int it = 0; it < 40; ++it) {
            Scalar a = random_scalar(mode, rng);
            CHECK(Scalar::from_json(mode, a.to_json()) == a);
        }
    }
}

TEST_CASE("expression_parser_examples") {
    QMode g = QMode::generic();
    CHECK(fq_parse(g, "(1/2)*q^-1 + 3") ==
          fq_make(g, LPoly::monomial(-1, 1) + LPoly::monomial(0, 6), LPoly::constant(2)));
    CHECK(fq_parse(g, "q^2 - 2*q + 1") == fq_parse(g, "(q-1)^2"));
    CHECK(fq_parse(g, "(q^2-1)/(q-1)") == fq_parse(g, "q+1"));
    CHECK_THROWS_AS(fq_parse(g, "q +"), ParseError);
    CHECK_THROWS_AS(fq_parse(g, "1/0"), DivisionByNonUnitError);
    CHECK_THROWS_AS(fq_parse(g, "(q"), ParseError);
}

TEST_CASE("mode_mismatch_throws") {
    Scalar a = Scalar::one(QMode::generic());
    Scalar b = Scalar::one(QMode::root_of_unity(3));
    CHECK_THROWS_AS((void)(a + b), Error);
    // zero is mode-agnostic
    CHECK(Scalar::zero(QMode::generic()) + b == b);
}

TEST_CASE("overflow_is_detected") {
    QMode g = QMode::generic();
    Scalar big = Scalar::from_int(g, Coef(1) << 126);
    CHECK_THROWS_AS((void)(big * big), OverflowError);
    CHECK_THROWS_AS((void)(big + big), OverflowError);
}
