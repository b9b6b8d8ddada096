#pragma once
/// @file b0n.hpp
/// @brief The B(0,N)-graded subalgebra of the extended gl(1,2N) torus algebra.
///
/// Provides the defining membership predicates for the subalgebra, the six
/// root-vector generator families with their weights, the reference bracket
/// table (the right-hand sides of the bracket relations among generators), and
/// a verification harness that checks the table against the first-principles
/// bracket of supermatrix.hpp on exhaustive grids. Where a printed coefficient
/// in the table disagrees with the bracket, the harness solves for the correct
/// term empirically and records the substitution in a correction ledger.

#include "qtorus/supermatrix.hpp"

#include <array>
#include <map>
#include <vector>

namespace qtorus {

/// The six generator families. Weights: g -> d_i+d_j, f -> d_i-d_j,
/// h -> -d_i-d_j, e -> d_i, e* -> -d_i, e0 -> 0. Families E and EStar are odd.
enum class Family : uint8_t { G, F, H, E, EStar, E0 };

const char* family_name(Family f);
Family family_parse(const std::string& s);
bool family_is_odd(Family f);
/// Number of 1..N indices the family carries (2 for g/f/h, 1 for e/e*, 0 for e0).
int family_arity(Family f);

/// A generator symbol: family, indices (i, j in 1..N as applicable), and the
/// torus exponents (m, n).
struct GeneratorRef {
    Family family;
    int32_t i = 0;
    int32_t j = 0;
    int32_t m = 0;
    int32_t n = 0;

    friend bool operator==(const GeneratorRef&, const GeneratorRef&) = default;
    std::string str() const;

    /// {"family","i","j","m","n"} (indices omitted when the family lacks them).
    nlohmann::ordered_json to_json() const;
    static GeneratorRef from_json(const nlohmann::json& j);
};

/// Integer vector (a_1..a_N) representing the weight sum a_i d_i.
using WeightLabel = std::vector<int32_t>;

/// The invariant bilinear-form matrices cut out the subalgebra: even X satisfy
/// bar(X)^t G + G X = 0, odd X satisfy bar(X)^t G - J G X = 0.
SuperMatrix form_matrix_g(QMode mode, int32_t N);
SuperMatrix form_matrix_jg(QMode mode, int32_t N);
/// Entrywise bar + transpose.
SuperMatrix bar_transpose(const SuperMatrix& x);

/// Membership in the form-invariant subalgebra (requires homogeneous X).
bool s_membership(const SuperMatrix& x);
/// Membership in its derived subalgebra: supertrace lies in the commutator
/// subspace of the torus.
bool g_membership(const SuperMatrix& y);

/// The literal (2N+1)x(2N+1) matrix of the generator, zero central part.
ExtElement expand(QMode mode, int32_t N, const GeneratorRef& g);

/// Weight of the generator's root space.
WeightLabel weight(int32_t N, const GeneratorRef& g);

/// Weight carried by matrix position (r,c): rho(r) - rho(c) with rho(0)=0,
/// rho(i)=+d_i, rho(N+i)=-d_i.
WeightLabel position_weight(int32_t N, int32_t r, int32_t c);

/// Which version of the reference table to evaluate: the coefficients as
/// printed, or with the corrections the oracle forces.
enum class Formula : uint8_t { Stated, Corrected };

/// A bracket value written in generator coordinates: a finite combination of
/// family generators plus central coordinates. The c map is keyed by the
/// degree-zero central label u (the coefficient of c(u)); cy is the coefficient
/// of the residue central element.
struct BracketTerms {
    std::vector<std::pair<GeneratorRef, Scalar>> gens;
    std::map<int64_t, Scalar> c;
    Scalar cy;
};

/// Right-hand side of the bracket relation for the ordered pair (a, b), in
/// generator coordinates. Pairs listed only in the opposite order are obtained
/// by super-skew-symmetry. Family-pair lookup order: g < f < h < e < e* < e0.
BracketTerms expected_bracket_terms(QMode mode, int32_t N, const GeneratorRef& a,
                                    const GeneratorRef& b, Formula which);

/// Same relation, fully expanded through expand().
ExtElement expected_bracket(QMode mode, int32_t N, const GeneratorRef& a,
                            const GeneratorRef& b, Formula which);

/// Content id of the relation used for the ordered pair, e.g. "f.f", "g.estar".
std::string bracket_equation_id(Family a, Family b);

/// One tuple where the stated table disagreed with the bracket; the corrected
/// term is solved from the observed discrepancy at the witness tuple.
struct CorrectionRecord {
    std::string equation;              // content id, e.g. "f.f"
    std::array<int32_t, 4> idx;        // witness i,j,k,l (0 where unused)
    std::array<int32_t, 4> exps;       // witness m,n,p,s
    std::string printed_central;       // central part the stated coefficients give
    std::string observed_central;      // central part the bracket actually produces
    std::string corrected_rule;        // the replacement rule, verified on the grid
    nlohmann::ordered_json to_json() const;
};

/// A tuple where even the corrected table disagrees with the bracket.
struct BracketCheckFailure {
    std::string equation;
    std::array<int32_t, 4> idx;
    std::array<int32_t, 4> exps;
    std::string discrepancy;           // (actual - expected) rendered
    nlohmann::ordered_json to_json() const;
};

struct GeneratorTableReport {
    int64_t tuples_checked = 0;
    std::map<std::string, int64_t> per_equation_checked;
    std::map<std::string, int64_t> per_equation_corrected;
    std::vector<CorrectionRecord> corrections; // one per equation, first witness
    std::vector<BracketCheckFailure> failures; // capped; see failure_cap
    int64_t failures_total = 0;                // uncapped count
    bool ok() const { return failures_total == 0; }
    nlohmann::ordered_json to_json() const;
};

/// Checks every relation of the reference table on the full grid
/// (i,j,k,l in 1..N as applicable; m,n,p,s in [lo,hi]) against
/// superbracket_ext of the expansions. The bracket side never consults the
/// table. Failures are data, not errors.
GeneratorTableReport verify_generator_brackets(QMode mode, int32_t N, int32_t lo,
                                               int32_t hi, size_t failure_cap = 16);

} // namespace qtorus
