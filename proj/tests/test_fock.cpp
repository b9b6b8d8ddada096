#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtorus/fock.hpp"

#include <algorithm>

using namespace qtorus;

namespace {

std::vector<QMode> test_modes() {
    return {QMode::generic(), QMode::root_of_unity(2), QMode::root_of_unity(3)};
}

ModeFactor a(int32_t i, int32_t mode) { return {FactorKind::A, i, mode}; }
ModeFactor as(int32_t i, int32_t mode) { return {FactorKind::AStar, i, mode}; }
ModeFactor e(int32_t mode) { return {FactorKind::E, 0, mode}; }

FockState mkstate(std::vector<BosonFactor> b, std::vector<int32_t> f) {
    FockState s;
    s.boson = std::move(b);
    std::sort(s.boson.begin(), s.boson.end());
    s.fermion = std::move(f);
    s.validate();
    return s;
}

FockVector basis(QMode mode, std::vector<BosonFactor> b, std::vector<int32_t> f) {
    return FockVector::single(mkstate(std::move(b), std::move(f)), Scalar::one(mode));
}

// u then v applied as the operator product v u would read right-to-left; this
// is the product u v acting on w, i.e. v acts first.
FockVector product(QMode mode, const ModeFactor& u, const ModeFactor& v, const FockVector& w,
                   int tau) {
    return apply_factor(mode, u, apply_factor(mode, v, w, tau), tau);
}

// The scalar contraction u v - :u v: predicted by the defining relations.
Scalar contraction(QMode mode, const ModeFactor& u, const ModeFactor& v) {
    bool ub = u.kind != FactorKind::E, vb = v.kind != FactorKind::E;
    if (ub && vb && u.kind != v.kind) {
        if (u.index != v.index || u.mode + v.mode != 0) return Scalar::zero(mode);
        Scalar t = theta(mode, u.mode);
        return u.kind == FactorKind::A ? -t : t;
    }
    if (!ub && !vb) {
        if (u.mode + v.mode != 0) return Scalar::zero(mode);
        return -theta(mode, u.mode);
    }
    return Scalar::zero(mode);
}

std::vector<FockVector> probe_states(QMode mode) {
    std::vector<FockVector> out;
    out.push_back(FockVector::vacuum(mode));
    out.push_back(basis(mode, {{0, 1, -1}}, {}));
    out.push_back(basis(mode, {{1, 1, -1}}, {}));
    out.push_back(basis(mode, {{0, 1, 0}}, {}));
    out.push_back(basis(mode, {}, {-1}));
    out.push_back(basis(mode, {{0, 1, -1}}, {-1}));
    out.push_back(basis(mode, {{0, 1, 0}, {0, 1, 0}}, {}));
    out.push_back(basis(mode, {{0, 2, -2}, {1, 1, -1}}, {-1, -2}));
    FockVector mixed = basis(mode, {{0, 1, -1}}, {}).scaled(Scalar::from_rat(mode, 2, 3)) +
                       FockVector::vacuum(mode).scaled(Scalar::make(mode, Fq{}, fq_from_int(1)));
    out.push_back(mixed);
    return out;
}

std::vector<ModeFactor> probe_factors(int32_t modes_lo, int32_t modes_hi) {
    std::vector<ModeFactor> fs;
    for (int32_t m = modes_lo; m <= modes_hi; ++m) {
        fs.push_back(a(1, m));
        fs.push_back(as(1, m));
        fs.push_back(a(2, m));
        fs.push_back(as(2, m));
        fs.push_back(e(m));
    }
    return fs;
}

} // namespace

TEST_CASE("single factor actions on simple states") {
    for (QMode mode : test_modes()) {
        Scalar one = Scalar::one(mode);
        FockVector vac = FockVector::vacuum(mode);
        for (int tau : {1, -1}) {
            // a*_1(-1) creates; a_1(1) then contracts it with coefficient -1.
            FockVector w = apply_factor(mode, as(1, -1), vac, tau);
            CHECK(w == basis(mode, {{1, 1, -1}}, {}));
            CHECK(apply_factor(mode, a(1, 1), w, tau) == -vac);
            // a_1(1) annihilates the vacuum, as does a*_1(0).
            CHECK(apply_factor(mode, a(1, 1), vac, tau).is_zero());
            CHECK(apply_factor(mode, as(1, 0), vac, tau).is_zero());
            // e(-1) creates; e(1) then contracts with coefficient -1.
            FockVector f1 = apply_factor(mode, e(-1), vac, tau);
            CHECK(f1 == basis(mode, {}, {-1}));
            CHECK(apply_factor(mode, e(1), f1, tau) == -vac);
            // e(0) acts as eps on the vacuum, and eps^2 = -1/2.
            FockVector ev = apply_factor(mode, e(0), vac, tau);
            CHECK(ev == vac.scaled(Scalar::make(mode, Fq{}, fq_from_int(1))));
            CHECK(apply_factor(mode, e(0), ev, tau) == vac.scaled(Scalar::from_rat(mode, -1, 2)));
            // Fermion insertion deeper in the word picks up the sign of its
            // position: e(-2) lands after e(-1) in the decreasing word.
            FockVector f2 = apply_factor(mode, e(-2), f1, tau);
            CHECK(f2 == basis(mode, {}, {-1, -2}).scaled(-one));
            // A fermion creator repeated gives zero.
            CHECK(apply_factor(mode, e(-1), f1, tau).is_zero());
            // Crossing a boson flips the fermion sign exactly when tau = +1.
            FockVector bw = basis(mode, {{0, 1, -1}}, {});
            FockVector ef = apply_factor(mode, e(-1), bw, tau);
            Scalar expect = tau == 1 ? -one : one;
            CHECK(ef == basis(mode, {{0, 1, -1}}, {-1}).scaled(expect));
        }
    }
}

TEST_CASE("products equal normal-ordered parts plus contractions") {
    for (QMode mode : test_modes()) {
        for (int tau : {1, -1}) {
            for (const ModeFactor& u : probe_factors(-2, 2)) {
                for (const ModeFactor& v : probe_factors(-2, 2)) {
                    bool ub = u.kind != FactorKind::E, vb = v.kind != FactorKind::E;
                    if (ub != vb) continue; // mixed pairs are kept as written
                    Scalar c = contraction(mode, u, v);
                    for (const FockVector& w : probe_states(mode)) {
                        FockVector raw = product(mode, u, v, w, tau);
                        FockVector no = apply_normal_ordered_pair(mode, u, v, w, tau);
                        CHECK(raw == no + w.scaled(c));
                    }
                }
            }
        }
    }
}

TEST_CASE("normal ordering is symmetric for bosons, antisymmetric for fermions") {
    QMode mode = QMode::generic();
    for (int tau : {1, -1}) {
        for (const FockVector& w : probe_states(mode)) {
            for (const ModeFactor& u : probe_factors(-2, 2)) {
                for (const ModeFactor& v : probe_factors(-2, 2)) {
                    bool ub = u.kind != FactorKind::E, vb = v.kind != FactorKind::E;
                    if (!ub || !vb) continue;
                    CHECK(apply_normal_ordered_pair(mode, u, v, w, tau) ==
                          apply_normal_ordered_pair(mode, v, u, w, tau));
                }
            }
            for (int32_t m = -2; m <= 2; ++m)
                for (int32_t n = -2; n <= 2; ++n) {
                    FockVector uv = apply_normal_ordered_pair(mode, e(m), e(n), w, tau);
                    FockVector vu = apply_normal_ordered_pair(mode, e(n), e(m), w, tau);
                    if (m == n) {
                        CHECK(uv.is_zero());
                        CHECK(vu.is_zero());
                    } else {
                        CHECK(uv == -vu);
                    }
                }
        }
    }
}

TEST_CASE("defining relations hold on states") {
    for (QMode mode : test_modes()) {
        for (int tau : {1, -1}) {
            Scalar taus = tau == 1 ? Scalar::one(mode) : -Scalar::one(mode);
            for (const FockVector& w : probe_states(mode)) {
                for (int32_t m = -2; m <= 2; ++m) {
                    for (int32_t n = -2; n <= 2; ++n) {
                        for (int32_t i : {1, 2})
                            for (int32_t j : {1, 2}) {
                                // [a_i(m), a*_j(n)] = -delta delta.
                                FockVector lhs = product(mode, a(i, m), as(j, n), w, tau) -
                                                 product(mode, as(j, n), a(i, m), w, tau);
                                Scalar rhs = (i == j && m + n == 0) ? -Scalar::one(mode)
                                                                    : Scalar::zero(mode);
                                CHECK(lhs == w.scaled(rhs));
                                // [a, a] and [a*, a*] vanish.
                                CHECK(product(mode, a(i, m), a(j, n), w, tau) ==
                                      product(mode, a(j, n), a(i, m), w, tau));
                                CHECK(product(mode, as(i, m), as(j, n), w, tau) ==
                                      product(mode, as(j, n), as(i, m), w, tau));
                            }
                        // {e(m), e(n)} = -delta_{m+n,0}.
                        FockVector anti = product(mode, e(m), e(n), w, tau) +
                                          product(mode, e(n), e(m), w, tau);
                        Scalar rhs =
                            m + n == 0 ? -Scalar::one(mode) : Scalar::zero(mode);
                        CHECK(anti == w.scaled(rhs));
                        // a e = -tau e a, and the same for a*.
                        for (int32_t i : {1, 2}) {
                            CHECK(product(mode, a(i, m), e(n), w, tau) ==
                                  product(mode, e(n), a(i, m), w, tau).scaled(-taus));
                            CHECK(product(mode, as(i, m), e(n), w, tau) ==
                                  product(mode, e(n), as(i, m), w, tau).scaled(-taus));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("quadratic operator spot values") {
    for (QMode mode : test_modes()) {
        for (int tau : {1, -1}) {
            FockVector vac = FockVector::vacuum(mode);
            Scalar half = Scalar::from_rat(mode, 1, 2);
            // The diagonal half rule: F_11(0,0) |0> = 1/2 |0>, with no shift
            // at n = 0.
            QuadOp f00{Family::F, 1, 1, 0, 0, false};
            CHECK(apply_quadratic(mode, f00, vac, tau) == vac.scaled(half));
            QuadOp f00s{Family::F, 1, 1, 0, 0, true};
            CHECK(apply_quadratic(mode, f00s, vac, tau) == vac.scaled(half));
            // E0(0,0) |0> = 0.
            QuadOp e000{Family::E0, 0, 0, 0, 0, true};
            CHECK(apply_quadratic(mode, e000, vac, tau).is_zero());
            // [F(1,0), F(-1,0)] |0> = -|0>.
            QuadOp fp{Family::F, 1, 1, 1, 0, false};
            QuadOp fm{Family::F, 1, 1, -1, 0, false};
            FockVector comm = apply_quadratic(mode, fp, apply_quadratic(mode, fm, vac, tau), tau) -
                              apply_quadratic(mode, fm, apply_quadratic(mode, fp, vac, tau), tau);
            CHECK(comm == -vac);
            // [G(1,0), H(-1,0)] multiplies a*_1(-1)|0> by 4.
            FockVector w = basis(mode, {{1, 1, -1}}, {});
            QuadOp g10{Family::G, 1, 1, 1, 0, false};
            QuadOp hm0{Family::H, 1, 1, -1, 0, false};
            FockVector gh = apply_quadratic(mode, g10, apply_quadratic(mode, hm0, w, tau), tau) -
                            apply_quadratic(mode, hm0, apply_quadratic(mode, g10, w, tau), tau);
            CHECK(gh == w.scaled(Scalar::from_rat(mode, 4, 1)));
            // F_11(0,0) a*_1(-1)|0> = -1/2 a*_1(-1)|0>.
            CHECK(apply_quadratic(mode, f00, w, tau) == w.scaled(-half));
        }
    }
}

TEST_CASE("windowed quadratic application stabilizes at the full support") {
    QMode mode = QMode::generic();
    std::vector<QuadOp> ops = {
        {Family::F, 1, 1, 0, 0, false},  {Family::F, 1, 2, 1, -1, true},
        {Family::G, 1, 1, 2, 1, false},  {Family::H, 2, 1, -2, 1, false},
        {Family::E, 1, 0, 1, 2, false},  {Family::EStar, 2, 0, -1, 1, false},
        {Family::E0, 0, 0, 2, -2, true},
    };
    for (int tau : {1, -1}) {
        for (const QuadOp& op : ops) {
            for (const FockVector& w : probe_states(mode)) {
                FockVector full = apply_quadratic(mode, op, w, tau);
                CHECK(full == apply_quadratic_windowed(mode, op, w, tau, -10, 10));
                CHECK(full == apply_quadratic_windowed(mode, op, w, tau, -20, 20));
            }
        }
    }
}

TEST_CASE("odd operators shift fermion parity or carry eps coefficients") {
    QMode mode = QMode::generic();
    for (int tau : {1, -1}) {
        for (const FockState& s : canonical_states(1, 2, -1, 1)) {
            FockVector w = FockVector::single(s, Scalar::one(mode));
            for (const QuadOp& op : {QuadOp{Family::E, 1, 0, 0, 1, false},
                                     QuadOp{Family::EStar, 1, 0, -1, 0, false}}) {
                FockVector out = apply_quadratic(mode, op, w, tau);
                for (const auto& [t, c] : out.terms()) {
                    bool flipped = t.fermion_parity_odd() != s.fermion_parity_odd();
                    if (flipped) {
                        CHECK(c.eps_part().is_zero());
                    } else {
                        CHECK(c.even().is_zero());
                    }
                }
            }
        }
    }
}

TEST_CASE("theta-weighted power sums match the closed form") {
    for (QMode mode : test_modes())
        for (int64_t x = -6; x <= 6; ++x)
            for (int64_t m = -6; m <= 6; ++m) CHECK(check_theta_power_sum(mode, x, m));
}

TEST_CASE("pair bracket identities hold on canonical states") {
    for (int tau : {1, -1}) {
        PairBracketReport rep =
            verify_pair_brackets(QMode::generic(), 1, -1, 1, 2, tau, {}, 16, true);
        CHECK(rep.ok());
        CHECK(rep.failures_total == 0);
        CHECK(rep.instances_checked > 0);
        CHECK(rep.per_identity_checked.size() == 16);
        // The one identity whose printed form needs its exponent fixed.
        REQUIRE(rep.corrections.size() == 1);
        CHECK(rep.corrections[0].identity == "a*a*.ae");
        CHECK(rep.per_identity_corrected.count("a*a*.ae") == 1);
    }
}

TEST_CASE("operator bracket table holds on canonical states") {
    for (QMode mode : {QMode::generic(), QMode::root_of_unity(2)}) {
        for (int tau : {1, -1}) {
            OperatorBracketReport rep =
                verify_operator_brackets(mode, 1, -1, 1, 2, tau, {}, 16, true);
            CHECK(rep.ok());
            CHECK(rep.instances_checked == 21 * 81);
            CHECK(rep.shifted_checked > 0);
            if (!rep.failures.empty()) {
                CAPTURE(rep.failures[0].identity);
                CAPTURE(rep.failures[0].detail);
                CHECK(false);
            }
        }
    }
}

TEST_CASE("module action matches the algebra brackets") {
    for (QMode mode : {QMode::generic(), QMode::root_of_unity(2)}) {
        for (int tau : {1, -1}) {
            ModuleActionReport rep = verify_module_action(mode, 1, -1, 1, 2, tau, {}, 16, true);
            if (!rep.failures.empty()) {
                CAPTURE(rep.failures[0].identity);
                CAPTURE(rep.failures[0].detail);
            }
            CHECK(rep.ok());
            CHECK(rep.instances_checked == 21 * 81);
            // The symmetrized generators never excite the y-degree central
            // coordinate, so gamma_y stays at its default of zero.
            CHECK(!rep.gamma_y_constrained);
            CHECK(rep.gamma_y.is_zero());
            bool saw0 = false;
            for (const CentralValue& cv : rep.central_values)
                if (cv.u == 0) {
                    saw0 = true;
                    CHECK(cv.value == Scalar::from_rat(mode, 1, 2));
                }
            CHECK(saw0);
            CHECK(!rep.gamma0_is_minus_half);
            CHECK(!rep.gamma0_note.empty());
        }
    }
}

TEST_CASE("fock vectors roundtrip through json") {
    for (QMode mode : test_modes()) {
        FockVector v = basis(mode, {{0, 1, -1}, {1, 2, -2}}, {-1, -3})
                           .scaled(Scalar::from_rat(mode, -3, 7)) +
                       FockVector::vacuum(mode).scaled(
                           Scalar::make(mode, fq_q_pow(mode, 2), fq_from_int(5)));
        nlohmann::ordered_json j = v.to_json();
        CHECK(FockVector::from_json(mode, j) == v);
        // Unsorted boson input is accepted and sorted silently.
        nlohmann::json jb = {{"terms",
                              {{{"boson",
                                 {{{"kind", "a*"}, {"i", 2}, {"mode", -2}},
                                  {{"kind", "a"}, {"i", 1}, {"mode", -1}}}},
                                {"fermion", {-1, -3}},
                                {"c", {{"even", "0"}, {"eps", "1"}}}}}}};
        FockVector parsed = FockVector::from_json(mode, jb);
        REQUIRE(parsed.terms().size() == 1);
        CHECK(std::is_sorted(parsed.terms().begin()->first.boson.begin(),
                             parsed.terms().begin()->first.boson.end()));
        // A fermion word that is not strictly decreasing is rejected.
        nlohmann::json bad = jb;
        bad["terms"][0]["fermion"] = {-3, -1};
        CHECK_THROWS_AS(FockVector::from_json(mode, bad), ParseError);
        // A repeated fermion mode is rejected too.
        nlohmann::json dup = jb;
        dup["terms"][0]["fermion"] = {-1, -1};
        CHECK_THROWS_AS(FockVector::from_json(mode, dup), ParseError);
    }
}

TEST_CASE("canonical states are deterministic with known counts") {
    auto s1 = canonical_states(2, 3, -2, 2);
    auto s2 = canonical_states(2, 3, -2, 2);
    CHECK(s1 == s2);
    CHECK(s1.size() == 429);
    CHECK(canonical_states(1, 3, -2, 2).size() == 104);
    CHECK(canonical_states(2, 3, -1, 1).size() == 112);
    for (const FockState& s : s1) {
        s.validate();
        CHECK(s.degree() <= 3);
        for (const BosonFactor& b : s.boson) {
            CHECK(b.mode >= -2);
            CHECK(b.mode <= (b.star ? -1 : 0));
            CHECK(b.index >= 1);
            CHECK(b.index <= 2);
        }
        for (int32_t f : s.fermion) {
            CHECK(f >= -2);
            CHECK(f <= -1);
        }
    }
    CHECK(std::is_sorted(s1.begin(), s1.end(), [](const FockState& a, const FockState& b) {
        return std::pair(a.degree(), std::cref(a)) < std::pair(b.degree(), std::cref(b));
    }));
}

TEST_CASE("sampled states are seed-reproducible") {
    auto s1 = sampled_states(2, 4, -3, 3, 12345, 20);
    auto s2 = sampled_states(2, 4, -3, 3, 12345, 20);
    CHECK(s1 == s2);
    CHECK(!s1.empty());
    for (const FockState& s : s1) {
        s.validate();
        CHECK(s.degree() <= 4);
    }
    auto s3 = sampled_states(2, 4, -3, 3, 54321, 20);
    CHECK(s1 != s3);
}

TEST_CASE("serial and parallel verifier runs produce identical reports") {
    QMode mode = QMode::generic();
    {
        auto a = verify_pair_brackets(mode, 1, -1, 1, 2, 1, {}, 16, true);
        auto b = verify_pair_brackets(mode, 1, -1, 1, 2, 1, {}, 16, false);
        CHECK(a.to_json().dump() == b.to_json().dump());
    }
    {
        auto a = verify_operator_brackets(mode, 1, -1, 1, 2, -1, {}, 16, true);
        auto b = verify_operator_brackets(mode, 1, -1, 1, 2, -1, {}, 16, false);
        CHECK(a.to_json().dump() == b.to_json().dump());
    }
    {
        auto a = verify_module_action(mode, 1, -1, 1, 2, 1, {}, 16, true);
        auto b = verify_module_action(mode, 1, -1, 1, 2, 1, {}, 16, false);
        CHECK(a.to_json().dump() == b.to_json().dump());
    }
}
