#include "fock_kernel.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>

namespace qtorus {
namespace fockkern {

namespace {

int64_t narrow64(__int128 v, const char* what) {
    if (v < INT64_MIN || v > INT64_MAX) throw OverflowError(std::string(what) + " overflow");
    return int64_t(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat reduce128(__int128 n, __int128 d) {
    if (d == 0) throw DivisionByNonUnitError("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rat{narrow64(n, "rational numerator"), narrow64(d, "rational denominator")};
}

} // namespace

Rat Rat::of(int64_t n, int64_t d) { return reduce128(n, d); }

Rat operator+(const Rat& a, const Rat& b) {
    return reduce128(__int128(a.num) * b.den + __int128(b.num) * a.den,
                     __int128(a.den) * b.den);
}

Rat operator-(const Rat& a) { return Rat{-a.num, a.den}; }

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
    return reduce128(__int128(a.num) * b.num, __int128(a.den) * b.den);
}

std::string Rat::str() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

std::string Rat2::str() const {
    if (ep.is_zero()) return ev.str();
    std::ostringstream os;
    os << ev.str() << " + (" << ep.str() << ")eps";
    return os.str();
}

Scalar rat2_to_scalar(QMode mode, const Rat2& r) {
    return Scalar::make(mode, fq_from_rat(r.ev.num, r.ev.den), fq_from_rat(r.ep.num, r.ep.den));
}

// --- interning ---------------------------------------------------------------

size_t StateHash::operator()(const FockState& s) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const BosonFactor& b : s.boson)
        mix((uint64_t(b.star) << 48) ^ (uint64_t(uint32_t(b.index)) << 32) ^
            uint64_t(uint32_t(b.mode)));
    mix(0x5eedull);
    for (int32_t mu : s.fermion) mix(uint64_t(uint32_t(mu)) ^ (1ull << 40));
    return size_t(h);
}

int32_t Interner::intern(const FockState& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    int32_t id = int32_t(states_.size());
    states_.push_back(s);
    index_.emplace(states_.back(), id);
    return id;
}

// --- memoized factor action ----------------------------------------------------

namespace {

uint64_t factor_key(const ModeFactor& f, int32_t id) {
    if (f.index < 0 || f.index > 15 || f.mode < -512 || f.mode > 511)
        throw ConfigError("factor outside the kernel's packed-key range");
    return (uint64_t(uint32_t(id)) << 16) | (uint64_t(f.kind) << 14) |
           (uint64_t(uint32_t(f.index)) << 10) | uint64_t(uint32_t(f.mode + 512));
}

} // namespace

bool FactorMemo::apply(const ModeFactor& f, int32_t id, int32_t& out, Rat2& coef) {
    uint64_t key = factor_key(f, id);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
        Entry e;
        FockState img;
        Rat2 c;
        if (factor_action(f, interner_.state(id), tau_, img, c)) {
            e.out = interner_.intern(img);
            e.coef = c;
        } else {
            e.out = -1;
        }
        it = memo_.emplace(key, std::move(e)).first;
    }
    if (it->second.out < 0) return false;
    out = it->second.out;
    coef = it->second.coef;
    return true;
}

// --- operator rows ---------------------------------------------------------------

namespace {

uint64_t op_key(Family fam, int32_t i, int32_t j, int64_t m) {
    if (i < 0 || i > 15 || j < 0 || j > 15 || m < -(1 << 20) || m > (1 << 20))
        throw ConfigError("operator outside the kernel's packed-key range");
    return (uint64_t(fam) << 56) | (uint64_t(uint32_t(i)) << 52) |
           (uint64_t(uint32_t(j)) << 48) | uint64_t(uint32_t(m + (1 << 20)));
}

} // namespace

const Row& RowCache::row(Family fam, int32_t i, int32_t j, int64_t m, int32_t id) {
    auto& per_id = rows_[op_key(fam, i, j, m)];
    auto it = per_id.find(id);
    if (it != per_id.end()) return *it->second;

    Row r;
    QuadOp op{fam, i, j, int32_t(m), 0, false};
    const FockState& w = memo_.interner().state(id);
    for (int64_t s : quad_support(op, w)) {
        ModeFactor u, v;
        quad_pair(fam, i, j, m, s, u, v);
        for (const Chain& ch : normal_order_chains(u, v)) {
            int32_t mid, out;
            Rat2 c1, c2;
            if (!memo_.apply(ch.first, id, mid, c1)) continue;
            if (!memo_.apply(ch.second, mid, out, c2)) continue;
            Rat2 c = Rat2{ch.weight, Rat{}} * c1 * c2;
            if (c.is_zero()) continue;
            bool merged = false;
            for (RowEntry& e : r) {
                if (e.s == s && e.out == out) {
                    e.c = e.c + c;
                    merged = true;
                    break;
                }
            }
            if (!merged) r.push_back(RowEntry{s, out, c});
        }
    }
    auto holder = std::make_unique<Row>();
    for (const RowEntry& e : r)
        if (!e.c.is_zero()) holder->push_back(e);
    return *per_id.emplace(id, std::move(holder)).first->second;
}

// --- q-exponent accumulators --------------------------------------------------------

void KScal::normalize() {
    size_t keep = 0;
    for (size_t t = 0; t < terms.size(); ++t)
        if (!terms[t].second.is_zero()) terms[keep++] = terms[t];
    terms.resize(keep);
}

bool KScal::is_zero() const {
    for (const auto& [k, c] : terms)
        if (!c.is_zero()) return false;
    return true;
}

namespace {

void kadd(KScal& acc, int64_t key, const Rat2& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(acc.terms.begin(), acc.terms.end(), key,
                               [](const std::pair<int64_t, Rat2>& p, int64_t k) {
                                   return p.first < k;
                               });
    if (it != acc.terms.end() && it->first == key) {
        it->second = it->second + c;
        return;
    }
    acc.terms.insert(it, {key, c});
}

} // namespace

QBasis::QBasis(QMode mode) : mode_(mode) {
    if (mode_.is_root()) {
        int64_t d = mode_.order();
        size_t deg = size_t(mode_.phi_degree());
        pow_.resize(size_t(d));
        for (int64_t r = 0; r < d; ++r) {
            Scalar p = q_pow(mode_, r);
            const Fq& f = p.even();
            if (!f.den.is_constant()) throw ConfigError("unexpected power-basis denominator");
            int64_t den = narrow64(f.den.constant_value(), "power-basis denominator");
            std::vector<Rat> coords(deg, Rat{});
            for (const PTerm& t : f.num.terms())
                coords[size_t(t.exp)] = Rat::of(narrow64(t.coef, "power-basis coefficient"), den);
            pow_[size_t(r)] = std::move(coords);
        }
    }
}

void QBasis::add(KScal& acc, int64_t e, const Rat2& c) const {
    if (c.is_zero()) return;
    if (!mode_.is_root()) {
        kadd(acc, e, c);
        return;
    }
    int64_t d = mode_.order();
    int64_t r = ((e % d) + d) % d;
    const std::vector<Rat>& coords = pow_[size_t(r)];
    for (size_t k = 0; k < coords.size(); ++k) {
        if (coords[k].is_zero()) continue;
        kadd(acc, int64_t(k), c * Rat2{coords[k], Rat{}});
    }
}

Scalar QBasis::to_scalar(const KScal& k) const {
    Scalar acc = Scalar::zero(mode_);
    for (const auto& [key, c] : k.terms) {
        if (c.is_zero()) continue;
        acc = acc + rat2_to_scalar(mode_, c).scaled(int32_t(key), 1);
    }
    return acc;
}

void QBasis::split_scalar(const Scalar& s, KScal& out) const {
    auto half = [&](const Fq& f, bool eps_slot) {
        if (f.is_zero()) return;
        if (!f.den.is_constant())
            throw ConfigError("scalar with a nonconstant denominator cannot enter the kernel");
        int64_t den = narrow64(f.den.constant_value(), "scalar denominator");
        for (const PTerm& t : f.num.terms()) {
            Rat r = Rat::of(narrow64(t.coef, "scalar coefficient"), den);
            kadd(out, int64_t(t.exp), eps_slot ? Rat2{Rat{}, r} : Rat2{r, Rat{}});
        }
    };
    half(s.even(), false);
    half(s.eps_part(), true);
}

} // namespace fockkern
} // namespace qtorus
