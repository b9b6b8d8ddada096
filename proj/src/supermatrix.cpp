#include "qtorus/supermatrix.hpp"

#include <sstream>

namespace qtorus {

SuperMatrix SuperMatrix::unit(QMode mode, int32_t M, int32_t N, int32_t r, int32_t c,
                              const TorusElement& v) {
    SuperMatrix out(mode, M, N);
    out.add_entry(r, c, v);
    return out;
}

Parity SuperMatrix::parity() const {
    auto p = parity_opt();
    if (!p) throw MixedParityError("matrix has entries of both parities");
    return *p;
}

std::optional<Parity> SuperMatrix::parity_opt() const {
    bool seen_even = false, seen_odd = false;
    for (const auto& [rc, v] : entries_) {
        bool odd = (index_parity(rc.first) != index_parity(rc.second));
        (odd ? seen_odd : seen_even) = true;
    }
    if (seen_even && seen_odd) return std::nullopt;
    return seen_odd ? Parity::Odd : Parity::Even;
}

const TorusElement& SuperMatrix::entry(int32_t r, int32_t c) const {
    auto it = entries_.find({r, c});
    if (it != entries_.end()) return it->second;
    // Valid until the next entry() call on this thread; callers copy.
    thread_local TorusElement zero = TorusElement::zero(mode_);
    zero = TorusElement::zero(mode_);
    return zero;
}

void SuperMatrix::add_entry(int32_t r, int32_t c, const TorusElement& v) {
    if (r < 0 || r >= dim() || c < 0 || c >= dim()) throw ConfigError("matrix index out of range");
    if (v.is_zero()) return;
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
        entries_.emplace(Key{r, c}, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

SuperMatrix SuperMatrix::operator-() const {
    SuperMatrix out(mode_, M_, N_);
    for (const auto& [rc, v] : entries_) out.entries_.emplace(rc, -v);
    return out;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_shape(b);
    SuperMatrix out = a;
    for (const auto& [rc, v] : b.entries_) out.add_entry(rc.first, rc.second, v);
    return out;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_shape(b);
    SuperMatrix out = a;
    for (const auto& [rc, v] : b.entries_) out.add_entry(rc.first, rc.second, -v);
    return out;
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_shape(b);
    SuperMatrix out(a.mode_, a.M_, a.N_);
    for (const auto& [rc_a, f] : a.entries_) {
        for (const auto& [rc_b, g] : b.entries_) {
            if (rc_a.second != rc_b.first) continue;
            out.add_entry(rc_a.first, rc_b.second, f * g);
        }
    }
    return out;
}

SuperMatrix SuperMatrix::scaled(const Scalar& c) const {
    SuperMatrix out(mode_, M_, N_);
    if (c.is_zero()) return out;
    for (const auto& [rc, v] : entries_) out.add_entry(rc.first, rc.second, v.scaled(c));
    return out;
}

SuperMatrix SuperMatrix::scaled(const TorusElement& c) const {
    SuperMatrix out(mode_, M_, N_);
    if (c.is_zero()) return out;
    for (const auto& [rc, v] : entries_) out.add_entry(rc.first, rc.second, v * c);
    return out;
}

TorusElement SuperMatrix::str() const {
    TorusElement out = TorusElement::zero(mode_);
    for (const auto& [rc, v] : entries_) {
        if (rc.first != rc.second) continue;
        out = (index_parity(rc.first) == Parity::Even) ? out + v : out - v;
    }
    return out;
}

std::string SuperMatrix::str_repr() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [rc, v] : entries_) {
        if (!first) os << " + ";
        first = false;
        os << "E[" << rc.first << "," << rc.second << "]*(" << v.str() << ")";
    }
    return os.str();
}

ExtElement ExtElement::central(QMode mode, int32_t M, int32_t N, int64_t u, const Scalar& v) {
    ExtElement out(mode, M, N);
    out.add_central(u, v);
    return out;
}

void ExtElement::add_central(int64_t u, const Scalar& v) {
    if (!mode().lambda_contains(u))
        throw ConfigError("central symbol index outside Lambda");
    if (v.is_zero()) return;
    auto it = c_.find(u);
    if (it == c_.end()) {
        c_.emplace(u, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void ExtElement::add_cy(const Scalar& v) {
    cy_ = cy_.is_zero() ? v : cy_ + v;
}

ExtElement ExtElement::operator-() const {
    ExtElement out(-mat_);
    for (const auto& [u, v] : c_) out.c_.emplace(u, -v);
    if (!cy_.is_zero()) out.cy_ = -cy_;
    return out;
}

ExtElement operator+(const ExtElement& a, const ExtElement& b) {
    ExtElement out(a.mat_ + b.mat_);
    out.c_ = a.c_;
    for (const auto& [u, v] : b.c_) out.add_central(u, v);
    if (!a.cy_.is_zero()) out.add_cy(a.cy_);
    if (!b.cy_.is_zero()) out.add_cy(b.cy_);
    return out;
}

ExtElement operator-(const ExtElement& a, const ExtElement& b) { return a + (-b); }

ExtElement ExtElement::scaled(const Scalar& c) const {
    ExtElement out(mat_.scaled(c));
    if (c.is_zero()) return out;
    for (const auto& [u, v] : c_) out.add_central(u, v * c);
    if (!cy_.is_zero()) out.cy_ = cy_ * c;
    return out;
}

std::string ExtElement::str_repr() const {
    std::ostringstream os;
    os << mat_.str_repr();
    for (const auto& [u, v] : c_) os << " + c(" << u << ")*(" << v.str() << ")";
    if (!cy_.is_zero()) os << " + c_y*(" << cy_.str() << ")";
    return os.str();
}

nlohmann::ordered_json ExtElement::to_json() const {
    nlohmann::ordered_json j;
    j["M"] = mat_.rows_even();
    j["N"] = mat_.rows_odd();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& [rc, v] : mat_.entries()) {
        nlohmann::ordered_json e;
        e["r"] = rc.first;
        e["c"] = rc.second;
        e["v"] = v.to_json();
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    auto cs = nlohmann::ordered_json::array();
    for (const auto& [u, v] : c_) {
        nlohmann::ordered_json e;
        e["n"] = u;
        e["v"] = v.to_json();
        cs.push_back(std::move(e));
    }
    j["c"] = std::move(cs);
    j["cy"] = cy_.to_json();
    return j;
}

ExtElement ExtElement::from_json(QMode mode, const nlohmann::json& j) {
    ExtElement out(mode, j.at("M").get<int32_t>(), j.at("N").get<int32_t>());
    for (const auto& e : j.at("entries")) {
        out.mat_.add_entry(e.at("r").get<int32_t>(), e.at("c").get<int32_t>(),
                           TorusElement::from_json(mode, e.at("v")));
    }
    if (j.contains("c"))
        for (const auto& e : j.at("c"))
            out.add_central(e.at("n").get<int64_t>(), Scalar::from_json(mode, e.at("v")));
    if (j.contains("cy")) out.add_cy(Scalar::from_json(mode, j.at("cy")));
    return out;
}

ExtElement superbracket_ext(const ExtElement& a, const ExtElement& b) {
    const SuperMatrix& A = a.mat();
    const SuperMatrix& B = b.mat();
    Parity pa = A.parity();
    Parity pb = B.parity();
    bool both_odd = (pa == Parity::Odd && pb == Parity::Odd);

    SuperMatrix prod = A * B;
    SuperMatrix mat = both_odd ? prod + B * A : prod - B * A;

    ExtElement out(std::move(mat));

    // Cocycle: pairs of entries E_{ij} (x) f, E_{kl} (x) g with j==k, i==l
    // contribute through str(E_{ij} E_{kl}) = +-1.
    QMode mode = a.mode();
    for (const auto& [rc_a, f] : A.entries()) {
        for (const auto& [rc_b, g] : B.entries()) {
            if (rc_a.second != rc_b.first || rc_a.first != rc_b.second) continue;
            bool even_i = A.index_parity(rc_a.first) == Parity::Even;
            for (const auto& [ka, ca] : f.terms()) {
                for (const auto& [kb, cb] : g.terms()) {
                    if (int64_t(ka.m) + int64_t(kb.m) != 0) continue;
                    int64_t u = int64_t(ka.n) + int64_t(kb.n);
                    if (!mode.lambda_contains(u)) continue;
                    Scalar w = (ca * cb) * q_pow(mode, int64_t(ka.n) * int64_t(kb.m));
                    if (!even_i) w = -w;
                    if (ka.m != 0) out.add_central(u, w.times_rat(ka.m, 1));
                    if (u == 0 && ka.n != 0) out.add_cy(w.times_rat(ka.n, 1));
                }
            }
        }
    }
    return out;
}

} // namespace qtorus
