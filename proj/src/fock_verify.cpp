#include "fock_kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qtorus {

using fockkern::FactorMemo;
using fockkern::Interner;
using fockkern::KScal;
using fockkern::QBasis;
using fockkern::Rat;
using fockkern::Rat2;
using fockkern::Row;
using fockkern::RowCache;
using fockkern::RowEntry;

namespace {

int tau_sign(int tau, int pow) { return (tau == -1 && (pow & 1)) ? -1 : 1; }

void check_grid(int32_t N, int32_t lo, int32_t hi, int degree_bound, int tau) {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (lo > hi) throw ConfigError("empty exponent range");
    if (tau != 1 && tau != -1) throw ConfigError("tau must be +1 or -1");
    if (degree_bound < 0) throw ConfigError("degree bound must be nonnegative");
}

std::vector<FockState> gather_states(int32_t N, int degree_bound, int32_t lo, int32_t hi,
                                     const std::vector<FockState>& extra) {
    std::vector<FockState> states = canonical_states(N, degree_bound, lo, hi);
    if (!extra.empty()) {
        std::set<FockState> all(states.begin(), states.end());
        for (const FockState& s : extra) {
            s.validate();
            all.insert(s);
        }
        states.assign(all.begin(), all.end());
    }
    return states;
}

// All assignments of values 1..N to the used index slots (unused slots get 0).
std::vector<std::array<int32_t, 4>> idx_assignments(const std::array<bool, 4>& used, int32_t N) {
    std::vector<std::array<int32_t, 4>> out;
    out.push_back({0, 0, 0, 0});
    for (int slot = 0; slot < 4; ++slot) {
        if (!used[size_t(slot)]) continue;
        std::vector<std::array<int32_t, 4>> next;
        next.reserve(out.size() * size_t(N));
        for (const auto& base : out)
            for (int32_t v = 1; v <= N; ++v) {
                auto a = base;
                a[size_t(slot)] = v;
                next.push_back(a);
            }
        out = std::move(next);
    }
    return out;
}

// Accumulator keyed by output state id.
struct KAcc {
    boost::container::small_vector<std::pair<int32_t, KScal>, 8> rows;
    KScal& at(int32_t id) {
        for (auto& [rid, k] : rows)
            if (rid == id) return k;
        rows.push_back({id, KScal{}});
        return rows.back().second;
    }
    void normalize() {
        for (auto& [rid, k] : rows) k.normalize();
    }
    bool all_zero() const {
        for (const auto& [rid, k] : rows)
            if (!k.is_zero()) return false;
        return true;
    }
};

std::string kacc_str(const QBasis& qb, const Interner& interner, const KAcc& acc) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [rid, k] : acc.rows) {
        if (k.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << qb.to_scalar(k).str() << ") " << interner.state(rid).str();
    }
    return first ? "0" : os.str();
}

// ===========================================================================
// Brackets among two-factor products.
// ===========================================================================

// A factor of an identity: its kind, which index slot (0..3 -> i,j,k,l; -1
// for the fermion factor) and which exponent slot (0..3 -> m,n,p,s) it reads.
struct FSpec {
    FactorKind kind = FactorKind::A;
    int8_t idx = -1;
    int8_t exp = 0;
};

// One right-hand-side term: sign * tau^tau_pow * [exp_a + exp_b = 0]
// * [idx_a = idx_b] * f1 f2 (f2 applied first).
struct RTerm {
    int8_t dexp_a = -1, dexp_b = -1;
    int8_t didx_a = -1, didx_b = -1;
    int8_t tau_pow = 0;
    int8_t sign = 1;
    FSpec f1, f2;
};

struct PairIdentity {
    const char* id;
    FSpec l1, l2, r1, r2;
    bool anti = false;
    std::vector<RTerm> rhs;        // the verified form
    std::vector<RTerm> rhs_stated; // empty when identical to rhs
    const char* printed_term = "";
    const char* corrected_term = "";
};

const std::vector<PairIdentity>& pair_identities() {
    static const std::vector<PairIdentity> table = [] {
        auto A = [](int8_t idx, int8_t exp) { return FSpec{FactorKind::A, idx, exp}; };
        auto S = [](int8_t idx, int8_t exp) { return FSpec{FactorKind::AStar, idx, exp}; };
        auto E = [](int8_t exp) { return FSpec{FactorKind::E, -1, exp}; };
        auto rt = [](int8_t da, int8_t db, int8_t ia, int8_t ib, int8_t tp, int8_t sg, FSpec f1,
                     FSpec f2) { return RTerm{da, db, ia, ib, tp, sg, f1, f2}; };
        std::vector<PairIdentity> t;
        // exponent slots: m,n,p,s = 0,1,2,3; index slots: i,j,k,l = 0,1,2,3
        t.push_back({"aa.ae", A(0, 0), A(1, 1), A(2, 2), E(3), false, {}, {}, "", ""});
        t.push_back({"aa.ee", A(0, 0), A(1, 1), E(2), E(3), false, {}, {}, "", ""});
        t.push_back({"aa.a*e",
                     A(0, 0),
                     A(1, 1),
                     S(2, 2),
                     E(3),
                     false,
                     {rt(0, 2, 0, 2, 0, -1, A(1, 1), E(3)), rt(1, 2, 1, 2, 0, -1, A(0, 0), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"aa*.ae",
                     A(0, 0),
                     S(1, 1),
                     A(2, 2),
                     E(3),
                     false,
                     {rt(1, 2, 1, 2, 0, 1, A(0, 0), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"aa*.a*e",
                     A(0, 0),
                     S(1, 1),
                     S(2, 2),
                     E(3),
                     false,
                     {rt(0, 2, 0, 2, 0, -1, S(1, 1), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"aa*.ee", A(0, 0), S(1, 1), E(2), E(3), false, {}, {}, "", ""});
        t.push_back({"a*a*.a*a*", S(0, 0), S(1, 1), S(2, 2), S(3, 3), false, {}, {}, "", ""});
        t.push_back({"a*a*.ae",
                     S(0, 0),
                     S(1, 1),
                     A(2, 2),
                     E(3),
                     false,
                     {rt(1, 2, 1, 2, 0, 1, S(0, 0), E(3)), rt(0, 2, 0, 2, 0, 1, S(1, 1), E(3))},
                     {rt(1, 2, 1, 2, 0, 1, S(0, 0), E(3)), rt(0, 2, 0, 2, 0, 1, S(1, 0), E(3))},
                     "+ [i=k][m+p=0] a*_j(m) e(s)",
                     "+ [i=k][m+p=0] a*_j(n) e(s)"});
        t.push_back({"a*a*.a*e", S(0, 0), S(1, 1), S(2, 2), E(3), false, {}, {}, "", ""});
        t.push_back({"a*a*.ee", S(0, 0), S(1, 1), E(2), E(3), false, {}, {}, "", ""});
        t.push_back({"ae.ae",
                     A(0, 0),
                     E(1),
                     A(2, 2),
                     E(3),
                     true,
                     {rt(1, 3, -1, -1, 1, 1, A(0, 0), A(2, 2))},
                     {},
                     "",
                     ""});
        t.push_back({"ae.a*e",
                     A(0, 0),
                     E(1),
                     S(2, 2),
                     E(3),
                     true,
                     {rt(1, 3, -1, -1, 1, 1, S(2, 2), A(0, 0)),
                      rt(0, 2, 0, 2, 1, 1, E(1), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"ae.ee",
                     A(0, 0),
                     E(1),
                     E(2),
                     E(3),
                     false,
                     {rt(1, 3, -1, -1, 0, 1, A(0, 0), E(2)),
                      rt(1, 2, -1, -1, 0, -1, A(0, 0), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"a*e.a*e",
                     S(0, 0),
                     E(1),
                     S(2, 2),
                     E(3),
                     true,
                     {rt(1, 3, -1, -1, 1, 1, S(0, 0), S(2, 2))},
                     {},
                     "",
                     ""});
        t.push_back({"a*e.ee",
                     S(0, 0),
                     E(1),
                     E(2),
                     E(3),
                     false,
                     {rt(1, 3, -1, -1, 0, 1, S(0, 0), E(2)),
                      rt(1, 2, -1, -1, 0, -1, S(0, 0), E(3))},
                     {},
                     "",
                     ""});
        t.push_back({"ee.ee",
                     E(0),
                     E(1),
                     E(2),
                     E(3),
                     false,
                     {rt(1, 2, -1, -1, 0, -1, E(0), E(3)), rt(0, 2, -1, -1, 0, 1, E(1), E(3)),
                      rt(1, 3, -1, -1, 0, -1, E(2), E(0)), rt(0, 3, -1, -1, 0, 1, E(2), E(1))},
                     {},
                     "",
                     ""});
        return t;
    }();
    return table;
}

ModeFactor mk_factor(const FSpec& f, const std::array<int32_t, 4>& idx,
                     const std::array<int32_t, 4>& exps) {
    return ModeFactor{f.kind, f.idx >= 0 ? idx[size_t(f.idx)] : 0, exps[size_t(f.exp)]};
}

// Small multiset of (state id, coefficient).
using SAcc = boost::container::small_vector<std::pair<int32_t, Rat2>, 8>;

void sacc_add(SAcc& a, int32_t id, const Rat2& c) {
    if (c.is_zero()) return;
    for (auto& [rid, rc] : a)
        if (rid == id) {
            rc = rc + c;
            return;
        }
    a.push_back({id, c});
}

bool sacc_zero(const SAcc& a) {
    for (const auto& [rid, rc] : a)
        if (!rc.is_zero()) return false;
    return true;
}

std::string sacc_str(const Interner& interner, const SAcc& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [rid, rc] : a) {
        if (rc.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << rc.str() << ") " << interner.state(rid).str();
    }
    return first ? "0" : os.str();
}

// Applies the two-factor product f1 f2 (f2 first) into the accumulator.
void apply_product(FactorMemo& memo, const ModeFactor& f1, const ModeFactor& f2, int32_t id,
                   const Rat2& c, SAcc& acc) {
    int32_t mid, out;
    Rat2 c1, c2;
    if (!memo.apply(f2, id, mid, c1)) return;
    if (!memo.apply(f1, mid, out, c2)) return;
    sacc_add(acc, out, c * c1 * c2);
}

// LHS of a pair identity on one state: [l1 l2, r1 r2]_{-+}.
void pair_lhs(FactorMemo& memo, const ModeFactor& l1, const ModeFactor& l2, const ModeFactor& r1,
              const ModeFactor& r2, bool anti, int32_t id, SAcc& acc) {
    SAcc innerr, innerl;
    apply_product(memo, r1, r2, id, Rat2::of(1), innerr);
    for (const auto& [mid, c] : innerr) apply_product(memo, l1, l2, mid, c, acc);
    apply_product(memo, l1, l2, id, Rat2::of(1), innerl);
    Rat2 sgn = Rat2::of(anti ? 1 : -1);
    for (const auto& [mid, c] : innerl) apply_product(memo, r1, r2, mid, c * sgn, acc);
}

// Subtracts the RHS terms.
void pair_rhs(FactorMemo& memo, const std::vector<RTerm>& terms,
              const std::array<int32_t, 4>& idx, const std::array<int32_t, 4>& exps, int tau,
              int32_t id, SAcc& acc) {
    for (const RTerm& t : terms) {
        if (t.dexp_a >= 0 && exps[size_t(t.dexp_a)] + exps[size_t(t.dexp_b)] != 0) continue;
        if (t.didx_a >= 0 && idx[size_t(t.didx_a)] != idx[size_t(t.didx_b)]) continue;
        int sg = -int(t.sign) * tau_sign(tau, t.tau_pow);
        apply_product(memo, mk_factor(t.f1, idx, exps), mk_factor(t.f2, idx, exps), id,
                      Rat2::of(sg), acc);
    }
}

struct PairBlock {
    size_t identity = 0;
    std::array<int32_t, 4> idx{};
};

struct PairBlockResult {
    int64_t instances = 0;
    int64_t corrected = 0;
    std::vector<IdentityCorrection> corrections;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
};

PairBlockResult run_pair_block(const PairBlock& blk, const std::vector<FockState>& states,
                               int32_t lo, int32_t hi, int tau, size_t failure_cap) {
    const PairIdentity& ident = pair_identities()[blk.identity];
    PairBlockResult res;
    Interner interner;
    std::vector<int32_t> ids;
    ids.reserve(states.size());
    for (const FockState& s : states) ids.push_back(interner.intern(s));
    FactorMemo memo(interner, tau);

    std::array<int32_t, 4> exps{};
    for (int32_t m = lo; m <= hi; ++m)
        for (int32_t n = lo; n <= hi; ++n)
            for (int32_t p = lo; p <= hi; ++p)
                for (int32_t s = lo; s <= hi; ++s) {
                    exps = {m, n, p, s};
                    ModeFactor l1 = mk_factor(ident.l1, blk.idx, exps);
                    ModeFactor l2 = mk_factor(ident.l2, blk.idx, exps);
                    ModeFactor r1 = mk_factor(ident.r1, blk.idx, exps);
                    ModeFactor r2 = mk_factor(ident.r2, blk.idx, exps);
                    ++res.instances;
                    bool tuple_corrected = false;
                    for (int32_t id : ids) {
                        SAcc acc;
                        pair_lhs(memo, l1, l2, r1, r2, ident.anti, id, acc);
                        const std::vector<RTerm>& stated =
                            ident.rhs_stated.empty() ? ident.rhs : ident.rhs_stated;
                        SAcc acc_stated = acc;
                        pair_rhs(memo, stated, blk.idx, exps, tau, id, acc_stated);
                        if (sacc_zero(acc_stated)) continue;
                        // The printed form fails here; try the corrected form.
                        SAcc acc_corrected = acc;
                        pair_rhs(memo, ident.rhs, blk.idx, exps, tau, id, acc_corrected);
                        if (sacc_zero(acc_corrected)) {
                            if (!tuple_corrected) {
                                tuple_corrected = true;
                                ++res.corrected;
                                if (res.corrections.empty()) {
                                    IdentityCorrection c;
                                    c.identity = ident.id;
                                    c.idx = blk.idx;
                                    c.exps = exps;
                                    c.tau = tau;
                                    c.printed_term = ident.printed_term;
                                    c.corrected_term = ident.corrected_term;
                                    res.corrections.push_back(std::move(c));
                                }
                            }
                            continue;
                        }
                        ++res.failures_total;
                        if (res.failures.size() < failure_cap) {
                            FockCheckFailure f;
                            f.identity = ident.id;
                            f.idx = blk.idx;
                            f.exps = exps;
                            f.tau = tau;
                            f.detail = "on " + interner.state(id).str() +
                                       ": lhs - rhs = " + sacc_str(interner, acc_corrected);
                            res.failures.push_back(std::move(f));
                        }
                        break; // one witness per tuple is enough
                    }
                }
    return res;
}

} // namespace

PairBracketReport verify_pair_brackets(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                       int degree_bound, int tau,
                                       const std::vector<FockState>& extra_states,
                                       size_t failure_cap, bool parallel) {
    (void)mode; // the identities carry no q dependence; kept for interface symmetry
    check_grid(N, lo, hi, degree_bound, tau);
    std::vector<FockState> states = gather_states(N, degree_bound, lo, hi, extra_states);

    std::vector<PairBlock> blocks;
    const auto& idents = pair_identities();
    for (size_t t = 0; t < idents.size(); ++t) {
        std::array<bool, 4> used{false, false, false, false};
        for (const FSpec* f : {&idents[t].l1, &idents[t].l2, &idents[t].r1, &idents[t].r2})
            if (f->idx >= 0) used[size_t(f->idx)] = true;
        for (const auto& a : idx_assignments(used, N)) blocks.push_back({t, a});
    }

    std::vector<PairBlockResult> slots(blocks.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t b = 0; b < int64_t(blocks.size()); ++b)
            slots[size_t(b)] = run_pair_block(blocks[size_t(b)], states, lo, hi, tau, failure_cap);
    } else {
        for (size_t b = 0; b < blocks.size(); ++b)
            slots[b] = run_pair_block(blocks[b], states, lo, hi, tau, failure_cap);
    }

    PairBracketReport rep;
    for (size_t b = 0; b < blocks.size(); ++b) {
        const PairBlockResult& r = slots[b];
        const char* id = idents[blocks[b].identity].id;
        rep.instances_checked += r.instances;
        rep.per_identity_checked[id] += r.instances;
        if (r.corrected) rep.per_identity_corrected[id] += r.corrected;
        for (const auto& c : r.corrections) {
            bool seen = false;
            for (const auto& prev : rep.corrections)
                if (prev.identity == c.identity) seen = true;
            if (!seen) rep.corrections.push_back(c);
        }
        rep.failures_total += r.failures_total;
        for (const auto& f : r.failures)
            if (rep.failures.size() < failure_cap) rep.failures.push_back(f);
    }
    return rep;
}

// ===========================================================================
// Brackets among the quadratic operators.
// ===========================================================================

namespace {

struct OGenTerm {
    Family fam = Family::F;
    int32_t i = 0, j = 0;
    int64_t m = 0, n = 0;
    int sign = 1;
    int tau_pow = 0;
    int64_t qexp = 0;
};

// sign * tau^tau_pow * q^qexp * (q^x + 1)/2 * q_ratio(ratio_m, x)
struct OCentralTerm {
    int sign = 1;
    int tau_pow = 0;
    int64_t qexp = 0;
    int64_t ratio_m = 0;
    int64_t x = 0;
};

struct OTerms {
    boost::container::small_vector<OGenTerm, 4> gens;
    boost::container::small_vector<OCentralTerm, 2> cents;
};

// The reference table for the ordered family pair (A <= B in the order
// g < f < h < e < e* < e0); exponents (m,n) on the first operator, (p,s) on
// the second, indices (i,j) and (k,l).
OTerms operator_table(Family A, Family B, int32_t i, int32_t j, int32_t k, int32_t l, int64_t m,
                      int64_t n, int64_t p, int64_t s) {
    OTerms t;
    auto gen = [&](Family fam, int32_t gi, int32_t gj, int64_t nn, int sign, int tau_pow,
                   int64_t qexp) {
        t.gens.push_back(OGenTerm{fam, gi, gj, m + p, nn, sign, tau_pow, qexp});
    };
    auto cent = [&](int sign, int tau_pow, int64_t qexp, int64_t x) {
        t.cents.push_back(OCentralTerm{sign, tau_pow, qexp, m, x});
    };
    auto is = [&](Family x, Family y) { return A == x && B == y; };

    if (is(Family::G, Family::G) || is(Family::G, Family::E) || is(Family::G, Family::E0) ||
        is(Family::F, Family::E0) || is(Family::H, Family::H) ||
        is(Family::H, Family::EStar) || is(Family::H, Family::E0)) {
        return t;
    }
    if (is(Family::G, Family::F)) {
        if (i == l) gen(Family::G, k, j, n + s, -1, 0, m * s);
        if (j == l) gen(Family::G, k, i, s - n, -1, 0, (s - n) * m);
        return t;
    }
    if (is(Family::G, Family::H)) {
        if (i == k) gen(Family::F, j, l, s - n, -1, 0, -n * (m + p));
        if (j == k) gen(Family::F, i, l, n + s, -1, 0, n * p);
        if (i == l) gen(Family::F, j, k, -(n + s), -1, 0, -(m * n + n * p + p * s));
        if (j == l) gen(Family::F, i, k, n - s, -1, 0, (n - s) * p);
        if (i == k && j == l && m + p == 0) cent(1, 0, 0, s - n);
        if (j == k && i == l && m + p == 0) cent(1, 0, n * p, s + n);
        return t;
    }
    if (is(Family::G, Family::EStar)) {
        if (i == k) gen(Family::E, j, 0, s - n, -1, 0, -n * (m + p));
        if (j == k) gen(Family::E, i, 0, n + s, -1, 0, n * p);
        return t;
    }
    if (is(Family::F, Family::F)) {
        if (j == k) gen(Family::F, i, l, n + s, 1, 0, n * p);
        if (i == l) gen(Family::F, k, j, n + s, -1, 0, s * m);
        if (j == k && i == l && m + p == 0) cent(-1, 0, n * p, s + n);
        return t;
    }
    if (is(Family::F, Family::H)) {
        if (i == k) gen(Family::H, j, l, s - n, -1, 0, -n * (m + p));
        if (i == l) gen(Family::H, k, j, n + s, -1, 0, m * s);
        return t;
    }
    if (is(Family::F, Family::E)) {
        if (j == k) gen(Family::E, i, 0, n + s, 1, 0, n * p);
        return t;
    }
    if (is(Family::F, Family::EStar)) {
        if (i == k) gen(Family::EStar, j, 0, s - n, -1, 0, -n * (m + p));
        return t;
    }
    if (is(Family::H, Family::E)) {
        if (j == k) gen(Family::EStar, i, 0, n + s, 1, 0, n * p);
        if (i == k) gen(Family::EStar, j, 0, s - n, 1, 0, -n * (m + p));
        return t;
    }
    if (is(Family::E, Family::E)) {
        gen(Family::G, k, i, s - n, 1, 1, m * (s - n));
        return t;
    }
    if (is(Family::E, Family::EStar)) {
        if (i == k) gen(Family::E0, 0, 0, s - n, 1, 1, -n * (m + p));
        gen(Family::F, i, k, n - s, 1, 1, p * (n - s));
        if (i == k && m + p == 0) cent(-1, 1, 0, s - n);
        return t;
    }
    if (is(Family::E, Family::E0)) {
        gen(Family::E, i, 0, n + s, -1, 0, n * p);
        gen(Family::E, i, 0, n - s, 1, 0, p * (n - s));
        return t;
    }
    if (is(Family::EStar, Family::EStar)) {
        gen(Family::H, k, i, s - n, 1, 1, m * (s - n));
        return t;
    }
    if (is(Family::EStar, Family::E0)) {
        gen(Family::EStar, i, 0, n + s, -1, 0, n * p);
        gen(Family::EStar, i, 0, n - s, 1, 0, p * (n - s));
        return t;
    }
    if (is(Family::E0, Family::E0)) {
        gen(Family::E0, 0, 0, n + s, -1, 0, n * p);
        gen(Family::E0, 0, 0, n + s, 1, 0, s * m);
        gen(Family::E0, 0, 0, s - n, -1, 0, m * (s - n));
        gen(Family::E0, 0, 0, s - n, 1, 0, -n * (m + p));
        if (m + p == 0) cent(1, 0, n * p, n + s);
        if (m + p == 0) cent(-1, 0, 0, s - n);
        return t;
    }
    throw ConfigError("unhandled operator family pair");
}

// c * q^qexp * (q^x + 1)/2 * q_ratio(ratio_m, x), accumulated exactly.
void add_central_expansion(const QBasis& qb, KScal& acc, int64_t qexp, int64_t ratio_m, int64_t x,
                           const Rat2& c) {
    Rat2 half = c * Rat2::of(1, 2);
    if (ratio_m >= 0) {
        for (int64_t u = 0; u < ratio_m; ++u) {
            qb.add(acc, qexp + x * u, half);
            qb.add(acc, qexp + x * (u + 1), half);
        }
    } else {
        for (int64_t u = ratio_m; u < 0; ++u) {
            qb.add(acc, qexp + x * u, -half);
            qb.add(acc, qexp + x * (u + 1), -half);
        }
    }
}

Scalar central_term_scalar(QMode mode, const OCentralTerm& c, int tau) {
    Scalar v = q_pow(mode, c.qexp) * (q_pow(mode, c.x) + Scalar::one(mode)).times_rat(1, 2) *
               q_ratio(mode, c.ratio_m, c.x);
    int sg = c.sign * tau_sign(tau, c.tau_pow);
    return sg == 1 ? v : -v;
}

// The scalar residue of the shifted reformulation: for most identities the
// scalar summands of the shifted operators cancel the central terms exactly;
// for the four identities below a membership-gated multiple of m survives.
bool shifted_residue(QMode mode, Family A, Family B, int32_t i, int32_t j, int32_t k, int32_t l,
                     int64_t m, int64_t n, int64_t p, int64_t s, int tau, Scalar& out) {
    auto is = [&](Family x, Family y) { return A == x && B == y; };
    Scalar r = Scalar::zero(mode);
    bool relevant = false;
    auto add = [&](int sign, int tau_pow, int64_t qexp, bool member) {
        if (!member) return;
        Scalar v = q_pow(mode, qexp).times_rat(m, 1);
        int sg = sign * tau_sign(tau, tau_pow);
        r = r + (sg == 1 ? v : -v);
    };
    if (is(Family::G, Family::H)) {
        relevant = true;
        if (i == k && j == l && m + p == 0) add(1, 0, 0, mode.lambda_contains(n - s));
        if (j == k && i == l && m + p == 0) add(1, 0, n * p, mode.lambda_contains(n + s));
    } else if (is(Family::F, Family::F)) {
        relevant = true;
        if (j == k && i == l && m + p == 0) add(-1, 0, n * p, mode.lambda_contains(n + s));
    } else if (is(Family::E, Family::EStar)) {
        relevant = true;
        if (i == k && m + p == 0) add(-1, 1, 0, mode.lambda_contains(n - s));
    } else if (is(Family::E0, Family::E0)) {
        relevant = true;
        if (m + p == 0) add(1, 0, n * p, mode.lambda_contains(n + s));
        if (m + p == 0) add(-1, 0, 0, mode.lambda_contains(n - s));
    }
    out = r;
    return relevant;
}

constexpr Family kFamilyOrder[6] = {Family::G, Family::F, Family::H,
                                    Family::E, Family::EStar, Family::E0};

std::array<bool, 4> family_pair_slots(Family A, Family B) {
    std::array<bool, 4> used{false, false, false, false};
    if (family_arity(A) >= 1) used[0] = true;
    if (family_arity(A) >= 2) used[1] = true;
    if (family_arity(B) >= 1) used[2] = true;
    if (family_arity(B) >= 2) used[3] = true;
    return used;
}

struct OpBlock {
    Family A = Family::G, B = Family::G;
    std::array<int32_t, 4> idx{};
};

struct OpBlockResult {
    int64_t instances = 0;
    int64_t shifted = 0;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
};

OpBlockResult run_op_block(QMode mode, const OpBlock& blk, const std::vector<FockState>& states,
                           int32_t lo, int32_t hi, int tau, size_t failure_cap) {
    OpBlockResult res;
    const QBasis qb(mode);
    Interner interner;
    std::vector<int32_t> ids;
    ids.reserve(states.size());
    for (const FockState& s : states) ids.push_back(interner.intern(s));
    FactorMemo memo(interner, tau);
    RowCache rows(memo);
    const int32_t i = blk.idx[0], j = blk.idx[1], k = blk.idx[2], l = blk.idx[3];
    const bool anti = family_is_odd(blk.A) && family_is_odd(blk.B);
    const std::string ident = bracket_equation_id(blk.A, blk.B);

    auto record_failure = [&](const std::array<int32_t, 4>& exps, bool shifted_form,
                              std::string detail) {
        ++res.failures_total;
        if (res.failures.size() >= failure_cap) return;
        FockCheckFailure f;
        f.identity = ident;
        f.idx = blk.idx;
        f.exps = exps;
        f.tau = tau;
        f.shifted_form = shifted_form;
        f.detail = std::move(detail);
        res.failures.push_back(std::move(f));
    };

    for (int32_t m = lo; m <= hi; ++m)
        for (int32_t n = lo; n <= hi; ++n)
            for (int32_t p = lo; p <= hi; ++p)
                for (int32_t s = lo; s <= hi; ++s) {
                    std::array<int32_t, 4> exps{m, n, p, s};
                    ++res.instances;
                    OTerms terms = operator_table(blk.A, blk.B, i, j, k, l, m, n, p, s);
                    for (int32_t id : ids) {
                        KAcc acc;
                        // [X_a, X_b] with X_b applied first.
                        for (const RowEntry& e1 : rows.row(blk.B, k, l, p, id))
                            for (const RowEntry& e2 : rows.row(blk.A, i, j, m, e1.out))
                                qb.add(acc.at(e2.out),
                                       -int64_t(s) * e1.s - int64_t(n) * e2.s, e1.c * e2.c);
                        Rat2 sgn = Rat2::of(anti ? 1 : -1);
                        for (const RowEntry& e1 : rows.row(blk.A, i, j, m, id))
                            for (const RowEntry& e2 : rows.row(blk.B, k, l, p, e1.out))
                                qb.add(acc.at(e2.out),
                                       -int64_t(n) * e1.s - int64_t(s) * e2.s,
                                       e1.c * e2.c * sgn);
                        // Subtract the table's generator terms.
                        for (const OGenTerm& g : terms.gens) {
                            int sg = -g.sign * tau_sign(tau, g.tau_pow);
                            for (const RowEntry& e : rows.row(g.fam, g.i, g.j, g.m, id))
                                qb.add(acc.at(e.out), g.qexp - g.n * e.s,
                                       e.c * Rat2::of(sg));
                        }
                        // Subtract the table's central terms (diagonal).
                        for (const OCentralTerm& c : terms.cents) {
                            int sg = -c.sign * tau_sign(tau, c.tau_pow);
                            add_central_expansion(qb, acc.at(id), c.qexp, c.ratio_m, c.x,
                                                  Rat2::of(sg));
                        }
                        acc.normalize();
                        if (!acc.all_zero()) {
                            record_failure(exps, false,
                                           "on " + interner.state(id).str() + ": lhs - rhs = " +
                                               kacc_str(qb, interner, acc));
                            break;
                        }
                    }
                    // The shifted reformulation reduces to a scalar identity:
                    // the central terms equal the shift summands plus the
                    // membership-gated residue.
                    Scalar residue = Scalar::zero(mode);
                    if (shifted_residue(mode, blk.A, blk.B, i, j, k, l, m, n, p, s, tau,
                                        residue)) {
                        ++res.shifted;
                        Scalar plain = Scalar::zero(mode);
                        for (const OCentralTerm& c : terms.cents)
                            plain = plain + central_term_scalar(mode, c, tau);
                        Scalar shift_sum = Scalar::zero(mode);
                        for (const OGenTerm& g : terms.gens) {
                            if (g.fam != Family::F && g.fam != Family::E0) continue;
                            if (g.m < INT32_MIN || g.m > INT32_MAX || g.n < INT32_MIN ||
                                g.n > INT32_MAX)
                                throw OverflowError("operator exponent overflow");
                            QuadOp op{g.fam, g.i, g.j, int32_t(g.m), int32_t(g.n), true};
                            Scalar sh = quad_shift(mode, op);
                            if (sh.is_zero()) continue;
                            int sg = g.sign * tau_sign(tau, g.tau_pow);
                            Scalar v = q_pow(mode, g.qexp) * sh;
                            shift_sum = shift_sum + (sg == 1 ? v : -v);
                        }
                        if (plain != shift_sum + residue) {
                            record_failure(exps, true,
                                           "central terms " + plain.str() +
                                               " != shift summands " + shift_sum.str() +
                                               " + residue " + residue.str());
                        }
                    }
                }
    return res;
}

} // namespace

OperatorBracketReport verify_operator_brackets(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                               int degree_bound, int tau,
                                               const std::vector<FockState>& extra_states,
                                               size_t failure_cap, bool parallel) {
    check_grid(N, lo, hi, degree_bound, tau);
    std::vector<FockState> states = gather_states(N, degree_bound, lo, hi, extra_states);

    std::vector<OpBlock> blocks;
    for (int fa = 0; fa < 6; ++fa)
        for (int fb = fa; fb < 6; ++fb) {
            Family A = kFamilyOrder[fa], B = kFamilyOrder[fb];
            for (const auto& a : idx_assignments(family_pair_slots(A, B), N))
                blocks.push_back({A, B, a});
        }

    std::vector<OpBlockResult> slots(blocks.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t b = 0; b < int64_t(blocks.size()); ++b)
            slots[size_t(b)] =
                run_op_block(mode, blocks[size_t(b)], states, lo, hi, tau, failure_cap);
    } else {
        for (size_t b = 0; b < blocks.size(); ++b)
            slots[b] = run_op_block(mode, blocks[b], states, lo, hi, tau, failure_cap);
    }

    OperatorBracketReport rep;
    for (size_t b = 0; b < blocks.size(); ++b) {
        const OpBlockResult& r = slots[b];
        rep.instances_checked += r.instances;
        rep.shifted_checked += r.shifted;
        rep.per_identity_checked[bracket_equation_id(blocks[b].A, blocks[b].B)] += r.instances;
        rep.failures_total += r.failures_total;
        for (const auto& f : r.failures)
            if (rep.failures.size() < failure_cap) rep.failures.push_back(f);
    }
    return rep;
}

// ===========================================================================
// The module assignment respects the brackets.
// ===========================================================================

namespace {

constexpr int64_t kCyKey = INT64_MAX; // unknown key for gamma_y

struct CentralEq {
    std::map<int64_t, Scalar> a; // unknown key -> coefficient
    Scalar rhs;
    // witness
    std::string identity;
    std::array<int32_t, 4> idx{};
    std::array<int32_t, 4> exps{};
};

struct ActionBlockResult {
    int64_t instances = 0;
    std::vector<CentralEq> equations;
    std::vector<FockCheckFailure> failures;
    int64_t failures_total = 0;
};

ActionBlockResult run_action_block(QMode mode, int32_t N, const OpBlock& blk,
                                   const std::vector<FockState>& states, int32_t lo, int32_t hi,
                                   int tau, size_t failure_cap) {
    ActionBlockResult res;
    const QBasis qb(mode);
    Interner interner;
    std::vector<int32_t> ids;
    ids.reserve(states.size());
    for (const FockState& s : states) ids.push_back(interner.intern(s));
    FactorMemo memo(interner, tau);
    RowCache rows(memo);
    const bool anti = family_is_odd(blk.A) && family_is_odd(blk.B);
    const std::string ident = bracket_equation_id(blk.A, blk.B);

    auto record_failure = [&](const std::array<int32_t, 4>& exps, std::string detail) {
        ++res.failures_total;
        if (res.failures.size() >= failure_cap) return;
        FockCheckFailure f;
        f.identity = ident;
        f.idx = blk.idx;
        f.exps = exps;
        f.tau = tau;
        f.detail = std::move(detail);
        res.failures.push_back(std::move(f));
    };

    for (int32_t m = lo; m <= hi; ++m)
        for (int32_t n = lo; n <= hi; ++n)
            for (int32_t p = lo; p <= hi; ++p)
                for (int32_t s = lo; s <= hi; ++s) {
                    std::array<int32_t, 4> exps{m, n, p, s};
                    ++res.instances;
                    GeneratorRef ga{blk.A, blk.idx[0], blk.idx[1], m, n};
                    GeneratorRef gb{blk.B, blk.idx[2], blk.idx[3], p, s};
                    PiImage pa = pi(N, ga), pb = pi(N, gb);
                    int lhs_sign = tau_sign(tau, pa.tau_exponent + pb.tau_exponent);
                    BracketTerms bt =
                        expected_bracket_terms(mode, N, ga, gb, Formula::Corrected);
                    ExtElement z = superbracket_ext(expand(mode, N, ga), expand(mode, N, gb));

                    // sigma: scalar summands of the shifted images on the RHS.
                    Scalar sigma = Scalar::zero(mode);
                    struct RhsRow {
                        Family fam;
                        int32_t i, j;
                        int64_t m, n;
                        KScal coef; // coefficient as basis terms
                    };
                    std::vector<RhsRow> rhs_rows;
                    for (const auto& [gref, coef] : bt.gens) {
                        PiImage img = pi(N, gref);
                        Scalar eff = tau_sign(tau, img.tau_exponent) == 1 ? coef : -coef;
                        Scalar sh = quad_shift(mode, img.op);
                        if (!sh.is_zero()) sigma = sigma + eff * sh;
                        RhsRow row{img.op.family, img.op.i, img.op.j, img.op.m, img.op.n,
                                   KScal{}};
                        qb.split_scalar(eff, row.coef);
                        rhs_rows.push_back(std::move(row));
                    }

                    bool tuple_bad = false;
                    bool have_kappa = false;
                    KScal kappa0;
                    for (int32_t id : ids) {
                        KAcc acc;
                        for (const RowEntry& e1 : rows.row(blk.B, blk.idx[2], blk.idx[3], p, id))
                            for (const RowEntry& e2 :
                                 rows.row(blk.A, blk.idx[0], blk.idx[1], m, e1.out))
                                qb.add(acc.at(e2.out),
                                       -int64_t(s) * e1.s - int64_t(n) * e2.s,
                                       e1.c * e2.c * Rat2::of(lhs_sign));
                        Rat2 sgn = Rat2::of(anti ? lhs_sign : -lhs_sign);
                        for (const RowEntry& e1 : rows.row(blk.A, blk.idx[0], blk.idx[1], m, id))
                            for (const RowEntry& e2 :
                                 rows.row(blk.B, blk.idx[2], blk.idx[3], p, e1.out))
                                qb.add(acc.at(e2.out),
                                       -int64_t(n) * e1.s - int64_t(s) * e2.s,
                                       e1.c * e2.c * sgn);
                        for (const RhsRow& rr : rhs_rows)
                            for (const RowEntry& e : rows.row(rr.fam, rr.i, rr.j, rr.m, id))
                                for (const auto& [kexp, kc] : rr.coef.terms)
                                    qb.add(acc.at(e.out), kexp - rr.n * e.s,
                                           e.c * (-kc));
                        acc.normalize();
                        // The residual must be kappa * identity.
                        KScal diag;
                        bool off_diag = false;
                        for (const auto& [rid, ksc] : acc.rows) {
                            if (ksc.is_zero()) continue;
                            if (rid == id) diag = ksc;
                            else off_diag = true;
                        }
                        if (off_diag) {
                            record_failure(exps, "non-scalar residual on " +
                                                     interner.state(id).str() + ": " +
                                                     kacc_str(qb, interner, acc));
                            tuple_bad = true;
                            break;
                        }
                        if (!have_kappa) {
                            have_kappa = true;
                            kappa0 = diag;
                        } else if (!(kappa0 == diag)) {
                            record_failure(exps,
                                           "residual scalar differs across states; on " +
                                               interner.state(id).str() + ": " +
                                               qb.to_scalar(diag).str() + " vs " +
                                               qb.to_scalar(kappa0).str());
                            tuple_bad = true;
                            break;
                        }
                    }
                    if (tuple_bad) continue;
                    Scalar kappa = qb.to_scalar(kappa0) - sigma;

                    CentralEq eq;
                    for (const auto& [u, coef] : z.c_coords())
                        if (!coef.is_zero()) eq.a[u] = coef;
                    if (!z.cy().is_zero()) eq.a[kCyKey] = z.cy();
                    if (eq.a.empty()) {
                        if (!kappa.is_zero())
                            record_failure(exps, "scalar residual " + kappa.str() +
                                                     " with no central source");
                        continue;
                    }
                    eq.rhs = kappa;
                    eq.identity = ident;
                    eq.idx = blk.idx;
                    eq.exps = exps;
                    res.equations.push_back(std::move(eq));
                }
    return res;
}

// Reduced linear system over the central unknowns.
class CentralSolver {
  public:
    // Returns false (with a witness message) when the equation contradicts the
    // rows already absorbed.
    bool absorb(CentralEq eq) {
        reduce(eq);
        int64_t piv = 0;
        if (!pick_pivot(eq, piv)) {
            if (eq.rhs.is_zero()) return true;
            return false;
        }
        Scalar inv = eq.a.at(piv).inverse();
        for (auto& [u, c] : eq.a) c = c * inv;
        eq.rhs = eq.rhs * inv;
        // Keep the earlier rows fully reduced.
        for (auto& [rpiv, row] : rows_) {
            auto it = row.a.find(piv);
            if (it == row.a.end() || it->second.is_zero()) continue;
            Scalar f = it->second;
            for (const auto& [u, c] : eq.a) {
                auto jt = row.a.find(u);
                if (jt == row.a.end()) row.a.emplace(u, -(f * c));
                else jt->second = jt->second - f * c;
            }
            row.rhs = row.rhs - f * eq.rhs;
        }
        rows_.emplace(piv, std::move(eq));
        return true;
    }

    bool determined(int64_t u) const {
        auto it = rows_.find(u);
        if (it == rows_.end()) return false;
        for (const auto& [v, c] : it->second.a)
            if (v != u && !c.is_zero()) return false;
        return true;
    }

    bool has_pivot(int64_t u) const { return rows_.count(u) != 0; }

    Scalar value(int64_t u) const {
        auto it = rows_.find(u);
        if (it == rows_.end() || !determined(u))
            throw UnderdeterminedCentralError("central unknown not determined");
        return it->second.rhs;
    }

  private:
    void reduce(CentralEq& eq) const {
        for (const auto& [piv, row] : rows_) {
            auto it = eq.a.find(piv);
            if (it == eq.a.end() || it->second.is_zero()) continue;
            Scalar f = it->second;
            for (const auto& [u, c] : row.a) {
                auto jt = eq.a.find(u);
                if (jt == eq.a.end()) eq.a.emplace(u, -(f * c));
                else jt->second = jt->second - f * c;
            }
            eq.rhs = eq.rhs - f * row.rhs;
        }
        for (auto it = eq.a.begin(); it != eq.a.end();)
            it = it->second.is_zero() ? eq.a.erase(it) : std::next(it);
    }

    bool pick_pivot(const CentralEq& eq, int64_t& piv) const {
        for (const auto& [u, c] : eq.a) {
            if (c.is_zero()) continue;
            try {
                (void)c.inverse();
                piv = u;
                return true;
            } catch (const DivisionByNonUnitError&) {
            }
        }
        return false;
    }

    std::map<int64_t, CentralEq> rows_; // pivot -> reduced row
};

} // namespace

ModuleActionReport verify_module_action(QMode mode, int32_t N, int32_t lo, int32_t hi,
                                        int degree_bound, int tau,
                                        const std::vector<FockState>& extra_states,
                                        size_t failure_cap, bool parallel) {
    check_grid(N, lo, hi, degree_bound, tau);
    std::vector<FockState> states = gather_states(N, degree_bound, lo, hi, extra_states);

    std::vector<OpBlock> blocks;
    for (int fa = 0; fa < 6; ++fa)
        for (int fb = fa; fb < 6; ++fb) {
            Family A = kFamilyOrder[fa], B = kFamilyOrder[fb];
            for (const auto& a : idx_assignments(family_pair_slots(A, B), N))
                blocks.push_back({A, B, a});
        }

    std::vector<ActionBlockResult> slots(blocks.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t b = 0; b < int64_t(blocks.size()); ++b)
            slots[size_t(b)] =
                run_action_block(mode, N, blocks[size_t(b)], states, lo, hi, tau, failure_cap);
    } else {
        for (size_t b = 0; b < blocks.size(); ++b)
            slots[b] = run_action_block(mode, N, blocks[b], states, lo, hi, tau, failure_cap);
    }

    ModuleActionReport rep;
    rep.gamma_y = Scalar::zero(mode);
    std::vector<CentralEq> all_eqs;
    for (size_t b = 0; b < blocks.size(); ++b) {
        const ActionBlockResult& r = slots[b];
        rep.instances_checked += r.instances;
        rep.per_pair_checked[bracket_equation_id(blocks[b].A, blocks[b].B)] += r.instances;
        rep.failures_total += r.failures_total;
        for (const auto& f : r.failures)
            if (rep.failures.size() < failure_cap) rep.failures.push_back(f);
        for (const auto& e : r.equations) all_eqs.push_back(e);
    }

    // Solve for the central values.
    std::set<int64_t> appearing;
    for (const auto& e : all_eqs)
        for (const auto& [u, c] : e.a) appearing.insert(u);

    CentralSolver solver;
    auto absorb_or_fail = [&](const CentralEq& e) {
        if (solver.absorb(e)) return;
        ++rep.failures_total;
        if (rep.failures.size() < failure_cap) {
            FockCheckFailure f;
            f.identity = e.identity;
            f.idx = e.idx;
            f.exps = e.exps;
            f.tau = tau;
            f.detail = "central equation inconsistent with the earlier ones";
            rep.failures.push_back(std::move(f));
        }
    };
    for (const auto& e : all_eqs) absorb_or_fail(e);

    // Close remaining freedom with the symmetric ansatz gamma(u) = gamma(-u).
    std::set<int64_t> by_ansatz;
    for (int64_t u : appearing) {
        if (u == kCyKey || solver.determined(u)) continue;
        if (u <= 0) continue;
        if (!appearing.count(-u)) continue;
        CentralEq e;
        e.a[u] = Scalar::one(mode);
        e.a[-u] = -Scalar::one(mode);
        e.rhs = Scalar::zero(mode);
        e.identity = "symmetric-ansatz";
        if (solver.absorb(e)) {
            by_ansatz.insert(u);
            by_ansatz.insert(-u);
        }
    }

    for (int64_t u : appearing) {
        if (!solver.determined(u)) {
            throw UnderdeterminedCentralError(
                "central coordinate " +
                (u == kCyKey ? std::string("cy") : std::to_string(u)) +
                " is not determined by the residuals");
        }
    }

    // Re-check every equation against the solved values.
    for (const auto& e : all_eqs) {
        Scalar lhs = Scalar::zero(mode);
        for (const auto& [u, c] : e.a) lhs = lhs + c * solver.value(u);
        if (lhs == e.rhs) continue;
        ++rep.failures_total;
        if (rep.failures.size() < failure_cap) {
            FockCheckFailure f;
            f.identity = e.identity;
            f.idx = e.idx;
            f.exps = e.exps;
            f.tau = tau;
            f.detail = "solved central values do not satisfy this tuple: " + lhs.str() +
                       " != " + e.rhs.str();
            rep.failures.push_back(std::move(f));
        }
    }

    for (int64_t u : appearing) {
        if (u == kCyKey) {
            rep.gamma_y = solver.value(u);
            rep.gamma_y_constrained = true;
            continue;
        }
        CentralValue cv;
        cv.u = u;
        cv.value = solver.value(u);
        cv.by_ansatz = by_ansatz.count(u) != 0;
        rep.central_values.push_back(std::move(cv));
    }
    std::sort(rep.central_values.begin(), rep.central_values.end(),
              [](const CentralValue& a, const CentralValue& b) { return a.u < b.u; });

    for (const CentralValue& cv : rep.central_values) {
        if (cv.u != 0) continue;
        rep.gamma0_is_minus_half = cv.value == Scalar::from_rat(mode, -1, 2);
        rep.gamma0_note = "gamma(0) solves to " + cv.value.str() +
                          (rep.gamma0_is_minus_half ? ", matching -1/2"
                                                    : ", not equal to -1/2");
    }
    return rep;
}

// ===========================================================================
// Report serialization.
// ===========================================================================

nlohmann::ordered_json FockCheckFailure::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["idx"] = idx;
    j["exps"] = exps;
    j["tau"] = tau;
    j["shifted_form"] = shifted_form;
    j["detail"] = detail;
    return j;
}

nlohmann::ordered_json IdentityCorrection::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["witness_idx"] = idx;
    j["witness_exps"] = exps;
    j["tau"] = tau;
    j["printed_term"] = printed_term;
    j["corrected_term"] = corrected_term;
    return j;
}

nlohmann::ordered_json PairBracketReport::to_json() const {
    nlohmann::ordered_json j;
    j["instances_checked"] = instances_checked;
    auto per = nlohmann::ordered_json::array();
    for (const auto& [id, cnt] : per_identity_checked) {
        nlohmann::ordered_json e;
        e["identity"] = id;
        e["checked"] = cnt;
        auto it = per_identity_corrected.find(id);
        e["corrected"] = it == per_identity_corrected.end() ? 0 : it->second;
        per.push_back(std::move(e));
    }
    j["per_identity"] = std::move(per);
    auto cj = nlohmann::ordered_json::array();
    for (const auto& c : corrections) cj.push_back(c.to_json());
    j["corrections"] = std::move(cj);
    auto fj = nlohmann::ordered_json::array();
    for (const auto& f : failures) fj.push_back(f.to_json());
    j["failures"] = std::move(fj);
    j["failures_total"] = failures_total;
    j["ok"] = ok();
    return j;
}

nlohmann::ordered_json OperatorBracketReport::to_json() const {
    nlohmann::ordered_json j;
    j["instances_checked"] = instances_checked;
    j["shifted_checked"] = shifted_checked;
    auto per = nlohmann::ordered_json::array();
    for (const auto& [id, cnt] : per_identity_checked) {
        nlohmann::ordered_json e;
        e["identity"] = id;
        e["checked"] = cnt;
        per.push_back(std::move(e));
    }
    j["per_identity"] = std::move(per);
    auto fj = nlohmann::ordered_json::array();
    for (const auto& f : failures) fj.push_back(f.to_json());
    j["failures"] = std::move(fj);
    j["failures_total"] = failures_total;
    j["ok"] = ok();
    return j;
}

nlohmann::ordered_json CentralValue::to_json() const {
    nlohmann::ordered_json j;
    j["u"] = u;
    j["value"] = value.str();
    j["by_ansatz"] = by_ansatz;
    return j;
}

nlohmann::ordered_json ModuleActionReport::to_json() const {
    nlohmann::ordered_json j;
    j["instances_checked"] = instances_checked;
    auto per = nlohmann::ordered_json::array();
    for (const auto& [id, cnt] : per_pair_checked) {
        nlohmann::ordered_json e;
        e["pair"] = id;
        e["checked"] = cnt;
        per.push_back(std::move(e));
    }
    j["per_pair"] = std::move(per);
    auto cj = nlohmann::ordered_json::array();
    for (const auto& c : central_values) cj.push_back(c.to_json());
    j["central_values"] = std::move(cj);
    j["gamma_y"] = gamma_y.str();
    j["gamma_y_constrained"] = gamma_y_constrained;
    j["gamma0_note"] = gamma0_note;
    j["gamma0_is_minus_half"] = gamma0_is_minus_half;
    auto fj = nlohmann::ordered_json::array();
    for (const auto& f : failures) fj.push_back(f.to_json());
    j["failures"] = std::move(fj);
    j["failures_total"] = failures_total;
    j["ok"] = ok();
    return j;
}

} // namespace qtorus
