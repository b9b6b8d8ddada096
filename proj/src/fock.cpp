#include "qtorus/fock.hpp"

#include "fock_kernel.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace qtorus {

using fockkern::Chain;
using fockkern::Chains;
using fockkern::Rat;
using fockkern::Rat2;

namespace {

void check_tau(int tau) {
    if (tau != 1 && tau != -1) throw ConfigError("tau must be +1 or -1");
}

void check_factor(const ModeFactor& f) {
    if (f.kind == FactorKind::E) {
        if (f.index != 0) throw BadIndexError("fermion factor carries no index");
    } else {
        if (f.index < 1) throw BadIndexError("boson factor index must be at least 1");
    }
}

void check_quad_op(const QuadOp& op) {
    switch (op.family) {
        case Family::G:
        case Family::F:
        case Family::H:
            if (op.i < 1 || op.j < 1) throw BadIndexError("quadratic operator needs i, j >= 1");
            break;
        case Family::E:
        case Family::EStar:
            if (op.i < 1) throw BadIndexError("quadratic operator needs i >= 1");
            if (op.j != 0) throw BadIndexError("this operator family carries no index j");
            break;
        case Family::E0:
            if (op.i != 0 || op.j != 0) throw BadIndexError("this operator family carries no indices");
            break;
    }
}

int32_t to_i32m(int64_t v) {
    if (v < INT32_MIN || v > INT32_MAX) throw OverflowError("mode overflow");
    return int32_t(v);
}

} // namespace

// --- ModeFactor --------------------------------------------------------------

bool ModeFactor::is_annihilator() const {
    switch (kind) {
        case FactorKind::A: return mode > 0;
        case FactorKind::AStar: return mode >= 0;
        case FactorKind::E: return mode > 0;
    }
    return false;
}

bool ModeFactor::is_creator() const {
    switch (kind) {
        case FactorKind::A: return mode <= 0;
        case FactorKind::AStar: return mode < 0;
        case FactorKind::E: return mode < 0;
    }
    return false;
}

std::string ModeFactor::str() const {
    std::ostringstream os;
    switch (kind) {
        case FactorKind::A: os << "a_" << index; break;
        case FactorKind::AStar: os << "a*_" << index; break;
        case FactorKind::E: os << "e"; break;
    }
    os << "(" << mode << ")";
    return os.str();
}

// --- FockState ---------------------------------------------------------------

void FockState::validate() const {
    for (size_t t = 0; t < boson.size(); ++t) {
        const BosonFactor& b = boson[t];
        if (b.star > 1) throw ParseError("boson factor star flag must be 0 or 1");
        if (b.index < 1) throw ParseError("boson factor index must be at least 1");
        if (b.star == 0 && b.mode > 0) throw ParseError("a factor in a state must have mode <= 0");
        if (b.star == 1 && b.mode >= 0) throw ParseError("a* factor in a state must have mode < 0");
        if (t > 0 && boson[t] < boson[t - 1]) throw ParseError("boson factors must be sorted");
    }
    for (size_t t = 0; t < fermion.size(); ++t) {
        if (fermion[t] >= 0) throw ParseError("fermion modes in a state must be negative");
        if (t > 0 && fermion[t] >= fermion[t - 1])
            throw ParseError("fermion modes must be strictly decreasing");
    }
}

std::string FockState::str() const {
    std::ostringstream os;
    for (const BosonFactor& b : boson)
        os << (b.star ? "a*_" : "a_") << b.index << "(" << b.mode << ") ";
    for (int32_t mu : fermion) os << "e(" << mu << ") ";
    os << "|0>";
    return os.str();
}

// --- FockVector --------------------------------------------------------------

FockVector FockVector::vacuum(QMode mode) {
    FockVector v;
    v.terms_.emplace(FockState{}, Scalar::one(mode));
    return v;
}

FockVector FockVector::single(const FockState& s, const Scalar& c) {
    FockVector v;
    if (!c.is_zero()) v.terms_.emplace(s, c);
    return v;
}

void FockVector::add_term(const FockState& s, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

FockVector FockVector::scaled(const Scalar& c) const {
    FockVector out;
    if (c.is_zero()) return out;
    for (const auto& [s, v] : terms_) {
        Scalar w = v * c;
        if (!w.is_zero()) out.terms_.emplace(s, std::move(w));
    }
    return out;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
    FockVector out = a;
    for (const auto& [s, v] : b.terms_) out.add_term(s, v);
    return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
    FockVector out = a;
    for (const auto& [s, v] : b.terms_) out.add_term(s, -v);
    return out;
}

FockVector FockVector::operator-() const {
    FockVector out;
    for (const auto& [s, v] : terms_) out.terms_.emplace(s, -v);
    return out;
}

std::string FockVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ") " << s.str();
    }
    return os.str();
}

nlohmann::ordered_json FockVector::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [s, v] : terms_) {
        nlohmann::ordered_json t;
        auto bos = nlohmann::ordered_json::array();
        for (const BosonFactor& b : s.boson) {
            nlohmann::ordered_json bj;
            bj["kind"] = b.star ? "a*" : "a";
            bj["i"] = b.index;
            bj["mode"] = b.mode;
            bos.push_back(std::move(bj));
        }
        t["boson"] = std::move(bos);
        t["fermion"] = s.fermion;
        t["c"] = v.to_json();
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json j;
    j["terms"] = std::move(terms);
    return j;
}

FockVector FockVector::from_json(QMode mode, const nlohmann::json& j) {
    FockVector out;
    try {
        const nlohmann::json& terms = j.at("terms");
        if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
        for (const nlohmann::json& t : terms) {
            FockState s;
            if (t.contains("boson")) {
                for (const nlohmann::json& bj : t.at("boson")) {
                    BosonFactor b;
                    std::string kind = bj.at("kind").get<std::string>();
                    if (kind == "a") b.star = 0;
                    else if (kind == "a*") b.star = 1;
                    else throw ParseError("boson kind must be \"a\" or \"a*\"");
                    b.index = bj.at("i").get<int32_t>();
                    b.mode = bj.at("mode").get<int32_t>();
                    s.boson.push_back(b);
                }
            }
            std::sort(s.boson.begin(), s.boson.end());
            if (t.contains("fermion"))
                s.fermion = t.at("fermion").get<std::vector<int32_t>>();
            s.validate();
            out.add_term(s, Scalar::from_json(mode, t.at("c")));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed state vector: ") + e.what());
    }
    return out;
}

// --- single-factor action ------------------------------------------------------

namespace fockkern {

bool factor_action(const ModeFactor& f, const FockState& in, int tau, FockState& out, Rat2& coef) {
    switch (f.kind) {
        case FactorKind::A: {
            if (f.mode <= 0) {
                out = in;
                BosonFactor b{0, f.index, f.mode};
                out.boson.insert(std::upper_bound(out.boson.begin(), out.boson.end(), b), b);
                coef = Rat2::of(1);
                return true;
            }
            BosonFactor key{1, f.index, -f.mode};
            auto range = std::equal_range(in.boson.begin(), in.boson.end(), key);
            int64_t k = range.second - range.first;
            if (k == 0) return false;
            out = in;
            out.boson.erase(out.boson.begin() + (range.first - in.boson.begin()));
            coef = Rat2::of(-k);
            return true;
        }
        case FactorKind::AStar: {
            if (f.mode < 0) {
                out = in;
                BosonFactor b{1, f.index, f.mode};
                out.boson.insert(std::upper_bound(out.boson.begin(), out.boson.end(), b), b);
                coef = Rat2::of(1);
                return true;
            }
            BosonFactor key{0, f.index, -f.mode};
            auto range = std::equal_range(in.boson.begin(), in.boson.end(), key);
            int64_t k = range.second - range.first;
            if (k == 0) return false;
            out = in;
            out.boson.erase(out.boson.begin() + (range.first - in.boson.begin()));
            coef = Rat2::of(k);
            return true;
        }
        case FactorKind::E: {
            // Crossing the boson block costs (-tau) per factor.
            int64_t base = (tau == 1 && in.boson.size() % 2 == 1) ? -1 : 1;
            if (f.mode < 0) {
                size_t idx = 0;
                while (idx < in.fermion.size() && in.fermion[idx] > f.mode) ++idx;
                if (idx < in.fermion.size() && in.fermion[idx] == f.mode) return false;
                out = in;
                out.fermion.insert(out.fermion.begin() + idx, f.mode);
                coef = Rat2::of(idx % 2 == 0 ? base : -base);
                return true;
            }
            if (f.mode > 0) {
                size_t idx = 0;
                while (idx < in.fermion.size() && in.fermion[idx] != -f.mode) ++idx;
                if (idx == in.fermion.size()) return false;
                out = in;
                out.fermion.erase(out.fermion.begin() + idx);
                coef = Rat2::of(idx % 2 == 0 ? -base : base);
                return true;
            }
            // e(0) passes every fermion factor and acts as eps on the vacuum.
            out = in;
            int64_t sign = in.fermion.size() % 2 == 0 ? base : -base;
            coef = Rat2{Rat{}, Rat::of(sign)};
            return true;
        }
    }
    return false;
}

Chains normal_order_chains(const ModeFactor& u, const ModeFactor& v) {
    Chains out;
    bool ua = u.kind != FactorKind::E;
    bool va = v.kind != FactorKind::E;
    if (ua && va) {
        if (u.kind == v.kind) {
            out.push_back({v, u, Rat::of(1)}); // commuting pair, kept as written
        } else if (v.mode > u.mode) {
            out.push_back({v, u, Rat::of(1)});
        } else if (v.mode < u.mode) {
            out.push_back({u, v, Rat::of(1)});
        } else {
            out.push_back({v, u, Rat::of(1, 2)});
            out.push_back({u, v, Rat::of(1, 2)});
        }
        return out;
    }
    if (!ua && !va) {
        if (v.mode > u.mode) out.push_back({v, u, Rat::of(1)});
        else if (v.mode < u.mode) out.push_back({u, v, Rat::of(-1)});
        // equal fermion modes: the normal-ordered pair vanishes
        return out;
    }
    out.push_back({v, u, Rat::of(1)}); // mixed pair, kept as written
    return out;
}

void quad_pair(Family fam, int32_t i, int32_t j, int64_t m, int64_t s, ModeFactor& u,
               ModeFactor& v) {
    int32_t left = to_i32m(m - s), right = to_i32m(s);
    switch (fam) {
        case Family::G:
            u = {FactorKind::A, i, left};
            v = {FactorKind::A, j, right};
            return;
        case Family::F:
            u = {FactorKind::A, i, left};
            v = {FactorKind::AStar, j, right};
            return;
        case Family::H:
            u = {FactorKind::AStar, i, left};
            v = {FactorKind::AStar, j, right};
            return;
        case Family::E:
            u = {FactorKind::A, i, left};
            v = {FactorKind::E, 0, right};
            return;
        case Family::EStar:
            u = {FactorKind::AStar, i, left};
            v = {FactorKind::E, 0, right};
            return;
        case Family::E0:
            u = {FactorKind::E, 0, left};
            v = {FactorKind::E, 0, right};
            return;
    }
    throw ConfigError("unknown operator family");
}

} // namespace fockkern

// --- factor and pair application ----------------------------------------------

FockVector apply_factor(QMode mode, const ModeFactor& f, const FockVector& v, int tau) {
    check_tau(tau);
    check_factor(f);
    FockVector out;
    FockState img;
    Rat2 coef;
    for (const auto& [s, c] : v.terms()) {
        if (!fockkern::factor_action(f, s, tau, img, coef)) continue;
        out.add_term(img, c * fockkern::rat2_to_scalar(mode, coef));
    }
    return out;
}

FockVector apply_normal_ordered_pair(QMode mode, const ModeFactor& u, const ModeFactor& v,
                                     const FockVector& w, int tau) {
    check_tau(tau);
    check_factor(u);
    check_factor(v);
    FockVector acc;
    for (const Chain& ch : fockkern::normal_order_chains(u, v)) {
        FockVector mid = apply_factor(mode, ch.first, w, tau);
        FockVector res = apply_factor(mode, ch.second, mid, tau);
        acc = acc + res.scaled(Scalar::from_rat(mode, ch.weight.num, ch.weight.den));
    }
    return acc;
}

// --- quadratic operators --------------------------------------------------------

std::string QuadOp::str() const {
    std::ostringstream os;
    os << family_name(family);
    if (shifted) os << "^";
    switch (family) {
        case Family::G:
        case Family::F:
        case Family::H: os << "_{" << i << "," << j << "}"; break;
        case Family::E:
        case Family::EStar: os << "_" << i; break;
        case Family::E0: break;
    }
    os << "(" << m << "," << n << ")";
    return os.str();
}

Scalar quad_shift(QMode mode, const QuadOp& op) {
    if (!op.shifted) return Scalar::zero(mode);
    bool applies = (op.family == Family::F && op.i == op.j) || op.family == Family::E0;
    if (!applies || op.m != 0 || mode.lambda_contains(op.n)) return Scalar::zero(mode);
    Scalar qn = q_pow(mode, op.n);
    Scalar one = Scalar::one(mode);
    return (qn + one).times_rat(1, 2) * (qn - one).inverse();
}

std::vector<int64_t> quad_support(const QuadOp& op, const FockState& w) {
    std::set<int64_t> S;
    const int64_t m = op.m;
    int64_t clo = m, chi = -1;
    switch (op.family) {
        case Family::G: clo = m; chi = 0; break;
        case Family::F: clo = m; chi = -1; break;
        case Family::H: clo = m + 1; chi = -1; break;
        case Family::E: clo = m; chi = -1; break;
        case Family::EStar: clo = m + 1; chi = -1; break;
        case Family::E0: clo = m + 1; chi = -1; break;
    }
    for (int64_t s = clo; s <= chi; ++s) S.insert(s); // both factors create
    bool right_fermion =
        op.family == Family::E || op.family == Family::EStar || op.family == Family::E0;
    // Modes at which the right factor can contract into the state.
    for (const BosonFactor& b : w.boson) {
        if (op.family == Family::G && b.star == 1 && b.index == op.j) S.insert(-int64_t(b.mode));
        if ((op.family == Family::F || op.family == Family::H) && b.star == 0 &&
            b.index == op.j)
            S.insert(-int64_t(b.mode));
    }
    if (right_fermion)
        for (int32_t mu : w.fermion) S.insert(-int64_t(mu));
    // Modes at which the left factor (at m-s) can contract: s = m + partner mode.
    for (const BosonFactor& b : w.boson) {
        bool left_a = op.family == Family::G || op.family == Family::F || op.family == Family::E;
        bool left_astar = op.family == Family::H || op.family == Family::EStar;
        if (left_a && b.star == 1 && b.index == op.i) S.insert(m + int64_t(b.mode));
        if (left_astar && b.star == 0 && b.index == op.i) S.insert(m + int64_t(b.mode));
    }
    if (op.family == Family::E0)
        for (int32_t mu : w.fermion) S.insert(m + int64_t(mu));
    // The symmetric split of the diagonal (a, a*) pair can contract within itself.
    if (op.family == Family::F && m % 2 == 0) S.insert(m / 2);
    // e(0) passes through; the summands at s = 0 and s = m see it.
    if (right_fermion) {
        S.insert(0);
        S.insert(m);
    }
    return std::vector<int64_t>(S.begin(), S.end());
}

namespace {

FockVector apply_quadratic_at(QMode mode, const QuadOp& op, const FockState& s, const Scalar& c,
                              int tau, int64_t sum_idx) {
    ModeFactor u, v;
    fockkern::quad_pair(op.family, op.i, op.j, op.m, sum_idx, u, v);
    FockVector single = FockVector::single(s, c);
    FockVector res = apply_normal_ordered_pair(mode, u, v, single, tau);
    return res.scaled(q_pow(mode, -int64_t(op.n) * sum_idx));
}

} // namespace

FockVector apply_quadratic(QMode mode, const QuadOp& op, const FockVector& v, int tau) {
    check_tau(tau);
    check_quad_op(op);
    FockVector acc;
    for (const auto& [s, c] : v.terms())
        for (int64_t sum_idx : quad_support(op, s))
            acc = acc + apply_quadratic_at(mode, op, s, c, tau, sum_idx);
    Scalar shift = quad_shift(mode, op);
    if (!shift.is_zero()) acc = acc + v.scaled(shift);
    return acc;
}

FockVector apply_quadratic_windowed(QMode mode, const QuadOp& op, const FockVector& v, int tau,
                                    int64_t s_lo, int64_t s_hi) {
    check_tau(tau);
    check_quad_op(op);
    if (s_hi - s_lo > 100000) throw ConfigError("summation window too large");
    FockVector acc;
    for (const auto& [s, c] : v.terms())
        for (int64_t sum_idx = s_lo; sum_idx <= s_hi; ++sum_idx)
            acc = acc + apply_quadratic_at(mode, op, s, c, tau, sum_idx);
    Scalar shift = quad_shift(mode, op);
    if (!shift.is_zero()) acc = acc + v.scaled(shift);
    return acc;
}

// --- the module assignment ------------------------------------------------------

PiImage pi(int32_t N, const GeneratorRef& g) {
    if (N < 1) throw BadIndexError("N must be at least 1");
    int a = family_arity(g.family);
    if (a >= 1 && (g.i < 1 || g.i > N)) throw BadIndexError("generator index i out of range");
    if (a >= 2 && (g.j < 1 || g.j > N)) throw BadIndexError("generator index j out of range");
    if (a < 2 && g.j != 0) throw BadIndexError("generator family carries no index j");
    if (a < 1 && g.i != 0) throw BadIndexError("generator family carries no index i");
    PiImage img;
    img.op = QuadOp{g.family, g.i, g.j, g.m, g.n, true};
    switch (g.family) {
        case Family::G:
        case Family::H:
        case Family::E: img.tau_exponent = 1; break;
        case Family::F:
        case Family::EStar:
        case Family::E0: img.tau_exponent = 0; break;
    }
    return img;
}

// --- theta power sum --------------------------------------------------------------

bool check_theta_power_sum(QMode mode, int64_t x, int64_t m) {
    Scalar lhs = Scalar::zero(mode);
    int64_t tlo = std::min<int64_t>(0, -m), thi = std::max<int64_t>(0, -m);
    for (int64_t t = tlo; t <= thi; ++t) {
        Scalar w = theta(mode, -2 * t) - theta(mode, -2 * m - 2 * t);
        if (w.is_zero()) continue;
        lhs = lhs + w * q_pow(mode, -x * t);
    }
    Scalar rhs =
        (q_pow(mode, x) + Scalar::one(mode)).times_rat(1, 2) * q_ratio(mode, m, x);
    return lhs == rhs;
}

// --- state enumeration --------------------------------------------------------------

namespace {

std::vector<BosonFactor> boson_alphabet(int32_t N, int32_t lo, int32_t hi) {
    std::vector<BosonFactor> out;
    for (uint8_t star = 0; star <= 1; ++star) {
        int32_t top = star ? std::min(hi, -1) : std::min(hi, 0);
        for (int32_t i = 1; i <= N; ++i)
            for (int32_t mu = lo; mu <= top; ++mu) out.push_back({star, i, mu});
    }
    return out; // ascending in (star, index, mode) by construction
}

std::vector<int32_t> fermion_alphabet(int32_t lo, int32_t hi) {
    std::vector<int32_t> out;
    for (int32_t mu = lo; mu <= std::min(hi, -1); ++mu) out.push_back(mu);
    return out;
}

void boson_multisets(const std::vector<BosonFactor>& alpha, size_t start, int room,
                     std::vector<BosonFactor>& cur, const std::vector<int32_t>& fermion,
                     std::vector<FockState>& out) {
    FockState s;
    s.boson = cur;
    s.fermion = fermion;
    out.push_back(std::move(s));
    if (room == 0) return;
    for (size_t t = start; t < alpha.size(); ++t) {
        cur.push_back(alpha[t]);
        boson_multisets(alpha, t, room - 1, cur, fermion, out);
        cur.pop_back();
    }
}

void fermion_words(const std::vector<int32_t>& alpha, size_t start, int room,
                   std::vector<int32_t>& cur, std::vector<std::vector<int32_t>>& out) {
    std::vector<int32_t> w = cur; // descending word from the ascending alphabet
    std::reverse(w.begin(), w.end());
    out.push_back(std::move(w));
    if (room == 0) return;
    for (size_t t = start; t < alpha.size(); ++t) {
        cur.push_back(alpha[t]);
        fermion_words(alpha, t + 1, room - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<FockState> canonical_states(int32_t N, int degree_bound, int32_t mode_lo,
                                        int32_t mode_hi) {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (degree_bound < 0) throw ConfigError("degree bound must be nonnegative");
    std::vector<BosonFactor> ba = boson_alphabet(N, mode_lo, mode_hi);
    std::vector<int32_t> fa = fermion_alphabet(mode_lo, mode_hi);
    std::vector<std::vector<int32_t>> words;
    std::vector<int32_t> curf;
    fermion_words(fa, 0, std::min<int>(degree_bound, int(fa.size())), curf, words);
    std::vector<FockState> out;
    for (const auto& w : words) {
        std::vector<BosonFactor> curb;
        boson_multisets(ba, 0, degree_bound - int(w.size()), curb, w, out);
    }
    std::sort(out.begin(), out.end(), [](const FockState& a, const FockState& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    });
    return out;
}

std::vector<FockState> sampled_states(int32_t N, int degree, int32_t mode_lo, int32_t mode_hi,
                                      uint64_t seed, size_t count) {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (degree < 0) throw ConfigError("degree must be nonnegative");
    std::vector<BosonFactor> ba = boson_alphabet(N, mode_lo, mode_hi);
    std::vector<int32_t> fa = fermion_alphabet(mode_lo, mode_hi);
    std::set<FockState> found;
    if (degree == 0) {
        found.insert(FockState{});
    } else if (!ba.empty() || !fa.empty()) {
        std::mt19937_64 rng(seed);
        size_t attempts = count * 64 + 64;
        for (size_t t = 0; t < attempts && found.size() < count; ++t) {
            int maxf = std::min<int>(degree, int(fa.size()));
            int fsize = int(rng() % uint64_t(maxf + 1));
            if (ba.empty()) fsize = maxf;
            if (fsize < degree && ba.empty()) continue;
            FockState s;
            if (fsize > 0) {
                std::vector<int32_t> pool = fa;
                for (size_t u = pool.size() - 1; u > 0; --u)
                    std::swap(pool[u], pool[rng() % (u + 1)]);
                pool.resize(size_t(fsize));
                std::sort(pool.begin(), pool.end(), std::greater<int32_t>());
                s.fermion = std::move(pool);
            }
            for (int u = 0; u < degree - fsize; ++u)
                s.boson.push_back(ba[rng() % ba.size()]);
            std::sort(s.boson.begin(), s.boson.end());
            found.insert(std::move(s));
        }
    }
    return std::vector<FockState>(found.begin(), found.end());
}

} // namespace qtorus
