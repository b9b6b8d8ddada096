#pragma once
/// @file fock.hpp
/// @brief The oscillator superalgebra acting on its boson-fermion Fock module:
///        single mode factors, normal-ordered quadratic operators, the module
///        assignment for the subalgebra generators, and verification harnesses
///        checking the operator bracket tables against direct computation on
///        states.
///
/// The module is generated by a vacuum |0>. Boson factors a_i(mu) (mu <= 0)
/// and a*_i(mu) (mu < 0) are creators, as are fermion factors e(mu) (mu < 0);
/// the opposite modes annihilate |0>, and e(0) acts as the scalar unit eps
/// with eps^2 = -1/2. The parameter tau = +1 or -1 fixes the crossing sign
/// between the boson and fermion families: a e = -tau e a. Every state is a
/// finite product of creators applied to |0>, with the bosons a commuting
/// multiset and the fermions an anticommuting, strictly ordered word.
///
/// Defining relations, with [x,y]_- a commutator and {x,y} an anticommutator:
///   [a_i(m), a*_j(n)]_- = -delta_{ij} delta_{m+n,0},   [a,a]_- = [a*,a*]_- = 0,
///   {e(m), e(n)} = -delta_{m+n,0},
///   a_i(m) e(n) + tau e(n) a_i(m) = 0,  and likewise for a*.

#include "qtorus/b0n.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtorus {

/// The three single-factor families.
enum class FactorKind : uint8_t { A, AStar, E };

/// One algebra generator a_i(mode), a*_i(mode) or e(mode). The index is
/// 1-based for the boson families and 0 for the fermion family.
struct ModeFactor {
    FactorKind kind = FactorKind::A;
    int32_t index = 0;
    int32_t mode = 0;

    /// Annihilators: a at mode > 0, a* at mode >= 0, e at mode > 0.
    bool is_annihilator() const;
    /// Creators: a at mode <= 0, a* at mode < 0, e at mode < 0.
    /// e(0) is neither: it acts as the scalar eps.
    bool is_creator() const;
    std::string str() const;
    friend bool operator==(const ModeFactor&, const ModeFactor&) = default;
};

/// One boson creator inside a state: star = 0 for a, 1 for a*.
struct BosonFactor {
    uint8_t star = 0;
    int32_t index = 0;
    int32_t mode = 0;
    friend bool operator==(const BosonFactor&, const BosonFactor&) = default;
    friend auto operator<=>(const BosonFactor&, const BosonFactor&) = default;
};

/// A basis state of the Fock module: a sorted multiset of boson creators and a
/// strictly decreasing word of fermion creator modes (all negative). The empty
/// state is the vacuum.
struct FockState {
    std::vector<BosonFactor> boson;
    std::vector<int32_t> fermion;

    int degree() const { return int(boson.size() + fermion.size()); }
    bool fermion_parity_odd() const { return fermion.size() % 2 == 1; }
    /// Throws ParseError if the invariants above are violated.
    void validate() const;
    std::string str() const;
    friend bool operator==(const FockState&, const FockState&) = default;
    friend auto operator<=>(const FockState&, const FockState&) = default;
};

/// A finite linear combination of basis states with Scalar coefficients.
class FockVector {
  public:
    FockVector() = default;
    static FockVector zero() { return FockVector(); }
    static FockVector vacuum(QMode mode);
    static FockVector single(const FockState& s, const Scalar& c);

    const std::map<FockState, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Accumulates c on s and drops the entry if it cancels to zero.
    void add_term(const FockState& s, const Scalar& c);

    FockVector scaled(const Scalar& c) const;
    friend FockVector operator+(const FockVector& a, const FockVector& b);
    friend FockVector operator-(const FockVector& a, const FockVector& b);
    FockVector operator-() const;
    friend bool operator==(const FockVector&, const FockVector&) = default;
    std::string str() const;

    /// {"terms":[{"boson":[{"kind":"a"|"a*","i":..,"mode":..},...],
    ///            "fermion":[..], "c": <scalar>}, ...]} in state order.
    nlohmann::ordered_json to_json() const;
    /// Parses and validates; boson lists are sorted silently (a commuting
    /// multiset), fermion words must already be strictly decreasing and
    /// negative. Throws ParseError on malformed input.
    static FockVector from_json(QMode mode, const nlohmann::json& j);

  private:
    std::map<FockState, Scalar> terms_;
};

/// Left action of one generator on a vector. tau must be +1 or -1.
FockVector apply_factor(QMode mode, const ModeFactor& f, const FockVector& v, int tau);

/// The normal-ordered product :u v: of two factors, applied to a vector.
/// Same-kind boson pairs and mixed boson/fermion pairs are kept as written;
/// an (a, a*) pair is reordered so the factor with the larger mode acts first,
/// with the symmetric average at equal modes; an (e, e) pair likewise, with a
/// -1 on the swap and zero at equal modes.
FockVector apply_normal_ordered_pair(QMode mode, const ModeFactor& u, const ModeFactor& v,
                                     const FockVector& w, int tau);

/// A quadratic mode-sum operator X_{ij}(m,n) = sum_s q^{-n s} :u(m-s) v(s):
/// over the family's factor pair:
///   g: u = a_i,  v = a_j      f: u = a_i,  v = a*_j     h: u = a*_i, v = a*_j
///   e: u = a_i,  v = e        e*: u = a*_i, v = e       e0: u = e,   v = e.
/// With shifted set, the operator gains the scalar summand quad_shift(op):
/// nonzero only for diagonal f (i = j) and e0 at m = 0 with q^n != 1, where it
/// equals (q^n + 1) / (2 (q^n - 1)).
struct QuadOp {
    Family family = Family::F;
    int32_t i = 0;
    int32_t j = 0;
    int32_t m = 0;
    int32_t n = 0;
    bool shifted = false;
    std::string str() const;
    friend bool operator==(const QuadOp&, const QuadOp&) = default;
};

/// The scalar summand contributed by the shifted dressing (zero when it does
/// not apply; see QuadOp).
Scalar quad_shift(QMode mode, const QuadOp& op);

/// The finitely many summation indices s at which :u(m-s) v(s): can act
/// nontrivially on the state (a superset; other s annihilate it). Sorted.
std::vector<int64_t> quad_support(const QuadOp& op, const FockState& w);

/// Applies the operator, summing over quad_support of each state.
FockVector apply_quadratic(QMode mode, const QuadOp& op, const FockVector& v, int tau);

/// Reference implementation summing literally over s in [s_lo, s_hi]. Agrees
/// with apply_quadratic whenever the window contains the support.
FockVector apply_quadratic_windowed(QMode mode, const QuadOp& op, const FockVector& v,
                                    int tau, int64_t s_lo, int64_t s_hi);

/// The module assignment on a subalgebra generator: a shifted quadratic
/// operator together with a power of tau,
///   g -> tau G,  f -> F,  h -> tau H,  e_i -> tau E_i,  e*_i -> E*_i,
///   e0 -> E0.
/// Throws BadIndexError on out-of-range indices.
struct PiImage {
    QuadOp op;
    int tau_exponent = 0; // 0 or 1
};
PiImage pi(int32_t N, const GeneratorRef& g);

/// Checks the closed form of the theta power sum used by the bracket tables:
///   sum_t (theta(-2t) - theta(-2m-2t)) q^{-x t} = (q^x + 1)/2 * q_ratio(m, x).
bool check_theta_power_sum(QMode mode, int64_t x, int64_t m);

/// All well-formed states with indices in 1..N, creator modes in
/// [mode_lo, mode_hi], and degree at most degree_bound, sorted by degree then
/// lexicographically. Deterministic.
std::vector<FockState> canonical_states(int32_t N, int degree_bound, int32_t mode_lo,
                                        int32_t mode_hi);

/// A deterministic seeded sample of distinct states of exact degree `degree`
/// over the same alphabet (at most `count`; fewer when the stratum is small).
std::vector<FockState> sampled_states(int32_t N, int degree, int32_t mode_lo, int32_t mode_hi,
                                      uint64_t seed, size_t count);

/// A tuple at which a table identity disagreed with direct computation.
struct FockCheckFailure {
    std::string identity;
    std::array<int32_t, 4> idx;  // i, j, k, l (0 where unused)
    std::array<int32_t, 4> exps; // m, n, p, s
    int tau = 1;
    bool shifted_form = false;   // failed in the shifted reformulation check
    std::string detail;          // witness state and discrepancy
    nlohmann::ordered_json to_json() const;
};

/// A printed term replaced after the computation contradicted it; recorded at
/// its first witness tuple.
struct IdentityCorrection {
    std::string identity;
    std::array<int32_t, 4> idx;
    std::array<int32_t, 4> exps;
    int tau = 1;
    std::string printed_term;
    std::string corrected_term;
    nlohmann::ordered_json to_json() const;
};

/// Report of verify_pair_brackets.
struct PairBracketReport {
    int64_t instances_checked = 0; // (identity, indices, exponents) triples
    std::map<std::string, int64_t> per_identity_checked;
    std::map<std::string, int64_t> per_identity_corrected;
    std::vector<IdentityCorrection> corrections;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
    bool ok() const { return failures_total == 0; }
    nlohmann::ordered_json to_json() const;
};

/// Checks the full table of brackets among two-factor products
/// (a a, a a*, a* a*, a e, a* e, e e) on every state in
/// canonical_states(N, degree_bound, lo, hi) plus extra_states, for all factor
/// indices in 1..N and all mode exponents in [lo, hi]^4. The identities are
/// free of q, so one run covers every q mode. The left side is computed by
/// composing single-factor actions and never consults the table.
PairBracketReport verify_pair_brackets(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                       int degree_bound, int tau,
                                       const std::vector<FockState>& extra_states = {},
                                       size_t failure_cap = 16, bool parallel = true);

/// Report of verify_operator_brackets.
struct OperatorBracketReport {
    int64_t instances_checked = 0;
    int64_t shifted_checked = 0;
    std::map<std::string, int64_t> per_identity_checked;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
    bool ok() const { return failures_total == 0; }
    nlohmann::ordered_json to_json() const;
};

/// Checks the bracket table of the quadratic operators on every state in
/// canonical_states(N, degree_bound, lo, hi) plus extra_states, for all family
/// pairs, indices in 1..N, and exponents (m,n,p,s) in [lo, hi]^4. Each bracket
/// is computed by composing operator actions on states; the right side comes
/// from the table. For the identities whose right side owns a scalar summand,
/// the shifted reformulation (absorbing the summand into the shifted
/// operators) is additionally checked as an exact scalar identity per tuple.
OperatorBracketReport verify_operator_brackets(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                               int degree_bound, int tau,
                                               const std::vector<FockState>& extra_states = {},
                                               size_t failure_cap = 16, bool parallel = true);

/// One central coordinate value solved by verify_module_action.
struct CentralValue {
    int64_t u = 0;
    Scalar value;
    bool by_ansatz = false; // pinned only by the symmetry assumption gamma(u) = gamma(-u)
    nlohmann::ordered_json to_json() const;
};

/// Report of verify_module_action.
struct ModuleActionReport {
    int64_t instances_checked = 0;
    std::map<std::string, int64_t> per_pair_checked;
    std::vector<CentralValue> central_values; // gamma(u), ascending u
    Scalar gamma_y;
    bool gamma_y_constrained = false;
    std::string gamma0_note;
    bool gamma0_is_minus_half = false;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
    bool ok() const { return failures_total == 0; }
    nlohmann::ordered_json to_json() const;
};

/// Checks that the module assignment pi respects every bracket of the
/// subalgebra: for each generator pair, each index tuple, and each exponent
/// tuple in [lo, hi]^4, the bracket of the images must equal the image of the
/// bracket. The bracket of the images acts on the states directly; the image
/// of the bracket expands through the generator-coordinate table, with the
/// central coordinates mapping to unknown scalars gamma(u) and gamma_y that
/// the harness solves from the residuals by elimination. The symmetric ansatz
/// gamma(u) = gamma(-u) is applied only to unknowns the data leave free, and
/// is flagged. Throws UnderdeterminedCentralError if an unknown that occurs
/// cannot be pinned even so.
ModuleActionReport verify_module_action(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                        int degree_bound, int tau,
                                        const std::vector<FockState>& extra_states = {},
                                        size_t failure_cap = 16, bool parallel = true);

} // namespace qtorus
