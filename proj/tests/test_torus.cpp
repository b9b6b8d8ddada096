#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtorus/torus.hpp"

#include <random>
#include <vector>

using namespace qtorus;

namespace {

std::vector<QMode> test_modes() {
    return {QMode::generic(), QMode::root_of_unity(1), QMode::root_of_unity(2),
            QMode::root_of_unity(3), QMode::root_of_unity(4), QMode::root_of_unity(6)};
}

// Step-rewrite oracle for monomial products: write x^m y^n x^p y^s as a word of
// single letters x^{±1}, y^{±1} and bubble every y-letter right of an x-letter
// across it one adjacent swap at a time; each swap of y^a past x^b contributes
// a factor q^{ab} (a, b = ±1). Entirely independent of the closed-form rule.
Scalar oracle_mono_mul(QMode mode, int m, int n, int p, int s, int* out_m, int* out_n) {
    struct Letter { char sym; int sign; };
    std::vector<Letter> w;
    auto push = [&](char sym, int count) {
        for (int i = 0; i < std::abs(count); ++i) w.push_back({sym, count > 0 ? 1 : -1});
    };
    push('x', m);
    push('y', n);
    push('x', p);
    push('y', s);
    int64_t qexp = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].sym == 'y' && w[i + 1].sym == 'x') {
                qexp += int64_t(w[i].sign) * w[i + 1].sign;
                std::swap(w[i], w[i + 1]);
                moved = true;
            }
        }
    }
    int xm = 0, yn = 0;
    for (const Letter& l : w) (l.sym == 'x' ? xm : yn) += l.sign;
    *out_m = xm;
    *out_n = yn;
    return q_pow(mode, qexp);
}

TorusElement random_element(QMode mode, std::mt19937_64& rng, int max_exp = 3) {
    std::uniform_int_distribution<int> exp(-max_exp, max_exp), coef(-5, 5), nterms(1, 4);
    TorusElement e(mode);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Scalar c = Scalar::from_int(mode, coef(rng));
        if (rng() % 4 == 0) c = c + Scalar::eps(mode).times_rat(coef(rng), 2);
        e.add_term(MonKey{int32_t(exp(rng)), int32_t(exp(rng))}, c);
    }
    return e;
}

} // namespace

TEST_CASE("monomial_product_matches_step_rewrite_oracle") {
    for (QMode mode : test_modes()) {
        for (int m = -3; m <= 3; ++m)
            for (int n = -3; n <= 3; n += 2)
                for (int p = -3; p <= 3; p += 2)
                    for (int s = -3; s <= 3; ++s) {
                        int om = 0, on = 0;
                        Scalar c = oracle_mono_mul(mode, m, n, p, s, &om, &on);
                        TorusElement prod = TorusElement::monomial(mode, m, n) *
                                            TorusElement::monomial(mode, p, s);
                        CHECK(prod == TorusElement::monomial(mode, om, on, c));
                    }
    }
}

TEST_CASE("associativity_unit_distributivity") {
    std::mt19937_64 rng(91);
    for (QMode mode : test_modes()) {
        TorusElement one = TorusElement::one(mode);
        for (int it = 0; it < 40; ++it) {
            TorusElement a = random_element(mode, rng), b = random_element(mode, rng),
                         c = random_element(mode, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * one == a);
            CHECK(one * a == a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
        }
    }
}

TEST_CASE("bar_is_an_anti_involution") {
    std::mt19937_64 rng(92);
    for (QMode mode : test_modes()) {
        for (int it = 0; it < 60; ++it) {
            TorusElement a = random_element(mode, rng), b = random_element(mode, rng);
            CHECK(a.bar().bar() == a);
            CHECK((a * b).bar() == b.bar() * a.bar());
            CHECK((a + b).bar() == a.bar() + b.bar());
        }
    }
}

TEST_CASE("bar_on_monomials") {
    QMode g = QMode::generic();
    // bar(x^m y^n) = q^{-mn} x^m y^{-n}
    CHECK(TorusElement::monomial(g, 2, 3).bar() ==
          TorusElement::monomial(g, 2, -3, q_pow(g, -6)));
    CHECK(TorusElement::monomial(g, 1, 0).bar() == TorusElement::monomial(g, 1, 0));
}

TEST_CASE("pm_decomposition_laws") {
    std::mt19937_64 rng(93);
    for (QMode mode : test_modes()) {
        for (int it = 0; it < 50; ++it) {
            TorusElement a = random_element(mode, rng);
            auto [plus, minus] = a.pm_decompose();
            CHECK(plus + minus == a);
            CHECK(plus.bar() == plus);
            CHECK(minus.bar() == -minus);
        }
    }
}

TEST_CASE("commutator_space_membership_examples") {
    QMode g = QMode::generic();
    CHECK(TorusElement::monomial(g, 1, 1).in_commutator_space());
    CHECK(TorusElement::monomial(g, 0, 5).in_commutator_space());
    CHECK(!TorusElement::one(g).in_commutator_space());

    QMode r2 = QMode::root_of_unity(2);
    CHECK(!TorusElement::monomial(r2, 2, -4).in_commutator_space());
    CHECK(TorusElement::monomial(r2, 1, 2).in_commutator_space());
    // Mixed element: all terms must qualify.
    TorusElement mix = TorusElement::monomial(r2, 1, 2) + TorusElement::monomial(r2, 2, 2);
    CHECK(!mix.in_commutator_space());

    // d = 1: q = 1, Lambda = Z, so the commutator space is {0}.
    QMode r1 = QMode::root_of_unity(1);
    CHECK(!TorusElement::monomial(r1, 3, -2).in_commutator_space());
    CHECK(TorusElement::zero(r1).in_commutator_space());
}

TEST_CASE("commutators_land_in_commutator_space") {
    std::mt19937_64 rng(94);
    for (QMode mode : test_modes()) {
        for (int it = 0; it < 60; ++it) {
            TorusElement a = random_element(mode, rng), b = random_element(mode, rng);
            CHECK((a * b - b * a).in_commutator_space());
        }
    }
}

TEST_CASE("torus_json_roundtrip") {
    std::mt19937_64 rng(95);
    for (QMode mode : test_modes()) {
        for (int it = 0; it < 30; ++it) {
            TorusElement a = random_element(mode, rng);
            CHECK(TorusElement::from_json(mode, a.to_json()) == a);
        }
    }
}
