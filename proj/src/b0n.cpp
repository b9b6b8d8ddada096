#include "qtorus/b0n.hpp"

#include <sstream>

namespace qtorus {

namespace {

constexpr Family kFamilies[6] = {Family::G, Family::F, Family::H,
                                 Family::E, Family::EStar, Family::E0};

int32_t to_i32(int64_t v, const char* what) {
    if (v < INT32_MIN || v > INT32_MAX) throw OverflowError(std::string(what) + " overflow");
    return int32_t(v);
}

std::string central_str(const ExtElement& x) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [u, v] : x.c_coords()) {
        if (!first) os << " + ";
        first = false;
        os << "c(" << u << ")*(" << v.str() << ")";
    }
    if (!x.cy().is_zero()) {
        if (!first) os << " + ";
        first = false;
        os << "c_y*(" << x.cy().str() << ")";
    }
    return first ? "0" : os.str();
}

std::string corrected_rule_text(const std::string& eq) {
    if (eq == "f.f")
        return "central term -2*m*q^(n*p)*[j=k][i=l][m+p=0][n+s in Lambda]*c(n+s) "
               "replaced by -m*q^(n*p)*[j=k][i=l][m+p=0][n+s in Lambda]*(c(n+s)+c(-n-s))";
    return "printed central part replaced by the observed central part";
}

std::vector<std::array<int32_t, 2>> index_tuples(int arity, int32_t N) {
    std::vector<std::array<int32_t, 2>> out;
    if (arity == 0) {
        out.push_back({0, 0});
    } else if (arity == 1) {
        for (int32_t i = 1; i <= N; ++i) out.push_back({i, 0});
    } else {
        for (int32_t i = 1; i <= N; ++i)
            for (int32_t j = 1; j <= N; ++j) out.push_back({i, j});
    }
    return out;
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::G: return "g";
        case Family::F: return "f";
        case Family::H: return "h";
        case Family::E: return "e";
        case Family::EStar: return "estar";
        case Family::E0: return "e0";
    }
    throw ConfigError("unknown family");
}

Family family_parse(const std::string& s) {
    if (s == "g") return Family::G;
    if (s == "f") return Family::F;
    if (s == "h") return Family::H;
    if (s == "e") return Family::E;
    if (s == "estar" || s == "e*") return Family::EStar;
    if (s == "e0") return Family::E0;
    throw ParseError("unknown generator family: " + s);
}

bool family_is_odd(Family f) { return f == Family::E || f == Family::EStar; }

int family_arity(Family f) {
    switch (f) {
        case Family::G:
        case Family::F:
        case Family::H: return 2;
        case Family::E:
        case Family::EStar: return 1;
        case Family::E0: return 0;
    }
    throw ConfigError("unknown family");
}

std::string GeneratorRef::str() const {
    std::ostringstream os;
    os << family_name(family);
    int a = family_arity(family);
    if (a == 2) os << "_{" << i << "," << j << "}";
    if (a == 1) os << "_" << i;
    os << "(" << m << "," << n << ")";
    return os.str();
}

nlohmann::ordered_json GeneratorRef::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    int a = family_arity(family);
    if (a >= 1) j["i"] = i;
    if (a >= 2) j["j"] = this->j;
    j["m"] = m;
    j["n"] = n;
    return j;
}

GeneratorRef GeneratorRef::from_json(const nlohmann::json& j) {
    GeneratorRef r;
    r.family = family_parse(j.at("family").get<std::string>());
    int a = family_arity(r.family);
    if (a >= 1) r.i = j.at("i").get<int32_t>();
    if (a >= 2) r.j = j.at("j").get<int32_t>();
    r.m = j.at("m").get<int32_t>();
    r.n = j.at("n").get<int32_t>();
    return r;
}

SuperMatrix form_matrix_g(QMode mode, int32_t N) {
    SuperMatrix g(mode, 1, 2 * N);
    TorusElement one = TorusElement::one(mode);
    g.add_entry(0, 0, one);
    for (int32_t i = 1; i <= N; ++i) {
        g.add_entry(i, N + i, one);
        g.add_entry(N + i, i, -one);
    }
    return g;
}

SuperMatrix form_matrix_jg(QMode mode, int32_t N) {
    // J = diag(1, -1, ..., -1) negates every row but the first of G.
    SuperMatrix g(mode, 1, 2 * N);
    TorusElement one = TorusElement::one(mode);
    g.add_entry(0, 0, one);
    for (int32_t i = 1; i <= N; ++i) {
        g.add_entry(i, N + i, -one);
        g.add_entry(N + i, i, one);
    }
    return g;
}

SuperMatrix bar_transpose(const SuperMatrix& x) {
    SuperMatrix out(x.mode(), x.rows_even(), x.rows_odd());
    for (const auto& [rc, v] : x.entries()) out.add_entry(rc.second, rc.first, v.bar());
    return out;
}

bool s_membership(const SuperMatrix& x) {
    if (x.rows_even() != 1 || x.rows_odd() % 2 != 0)
        throw ConfigError("s_membership expects gl(1,2N) shape");
    int32_t N = x.rows_odd() / 2;
    Parity p = x.parity(); // throws MixedParityError on mixed input
    SuperMatrix bt = bar_transpose(x);
    if (p == Parity::Even) {
        return (bt * form_matrix_g(x.mode(), N) + form_matrix_g(x.mode(), N) * x).is_zero();
    }
    return (bt * form_matrix_g(x.mode(), N) - form_matrix_jg(x.mode(), N) * x).is_zero();
}

bool g_membership(const SuperMatrix& y) { return y.str().in_commutator_space(); }

ExtElement expand(QMode mode, int32_t N, const GeneratorRef& g) {
    if (N < 1) throw BadIndexError("N must be at least 1");
    int a = family_arity(g.family);
    if (a >= 1 && (g.i < 1 || g.i > N)) throw BadIndexError("generator index i out of range");
    if (a >= 2 && (g.j < 1 || g.j > N)) throw BadIndexError("generator index j out of range");
    if (a < 2 && g.j != 0) throw BadIndexError("generator family carries no index j");
    if (a < 1 && g.i != 0) throw BadIndexError("generator family carries no index i");

    TorusElement u = TorusElement::monomial(mode, g.m, g.n);
    TorusElement ub = u.bar();
    SuperMatrix mt(mode, 1, 2 * N);
    const int32_t i = g.i, j = g.j;
    switch (g.family) {
        case Family::G:
            mt.add_entry(i, N + j, u);
            mt.add_entry(j, N + i, ub);
            break;
        case Family::F:
            mt.add_entry(i, j, u);
            mt.add_entry(N + j, N + i, -ub);
            break;
        case Family::H:
            mt.add_entry(N + i, j, -u);
            mt.add_entry(N + j, i, -ub);
            break;
        case Family::E:
            mt.add_entry(i, 0, -u);
            mt.add_entry(0, N + i, -ub);
            break;
        case Family::EStar:
            mt.add_entry(N + i, 0, u);
            mt.add_entry(0, i, -ub);
            break;
        case Family::E0:
            mt.add_entry(0, 0, -(u - ub));
            break;
    }
    return ExtElement(std::move(mt));
}

WeightLabel weight(int32_t N, const GeneratorRef& g) {
    if (N < 1) throw BadIndexError("N must be at least 1");
    int a = family_arity(g.family);
    if (a >= 1 && (g.i < 1 || g.i > N)) throw BadIndexError("generator index i out of range");
    if (a >= 2 && (g.j < 1 || g.j > N)) throw BadIndexError("generator index j out of range");
    WeightLabel w(size_t(N), 0);
    switch (g.family) {
        case Family::G: w[g.i - 1] += 1; w[g.j - 1] += 1; break;
        case Family::F: w[g.i - 1] += 1; w[g.j - 1] -= 1; break;
        case Family::H: w[g.i - 1] -= 1; w[g.j - 1] -= 1; break;
        case Family::E: w[g.i - 1] += 1; break;
        case Family::EStar: w[g.i - 1] -= 1; break;
        case Family::E0: break;
    }
    return w;
}

WeightLabel position_weight(int32_t N, int32_t r, int32_t c) {
    WeightLabel w(size_t(N), 0);
    auto rho = [&](int32_t t, int sign) {
        if (t == 0) return;
        if (t <= N) w[t - 1] += sign;
        else w[t - N - 1] -= sign;
    };
    rho(r, +1);
    rho(c, -1);
    return w;
}

std::string bracket_equation_id(Family a, Family b) {
    if (int(a) > int(b)) std::swap(a, b);
    return std::string(family_name(a)) + "." + family_name(b);
}

BracketTerms expected_bracket_terms(QMode mode, int32_t N, const GeneratorRef& a,
                                    const GeneratorRef& b, Formula which) {
    if (int(a.family) > int(b.family)) {
        // Only one order is tabulated; the other follows by super-skew-symmetry.
        BracketTerms r = expected_bracket_terms(mode, N, b, a, which);
        bool both_odd = family_is_odd(a.family) && family_is_odd(b.family);
        if (!both_odd) {
            for (auto& term : r.gens) term.second = -term.second;
            for (auto& entry : r.c) entry.second = -entry.second;
            r.cy = -r.cy;
        }
        return r;
    }
    const int32_t i = a.i, j = a.j, k = b.i, l = b.j;
    const int64_t m = a.m, n = a.n, p = b.m, s = b.n;

    BracketTerms t;
    t.cy = Scalar::zero(mode);
    auto qp = [&](int64_t e) { return q_pow(mode, e); };
    auto add = [&](Family fam, int32_t gi, int32_t gj, int64_t mm, int64_t nn,
                   const Scalar& coef) {
        if (coef.is_zero()) return;
        GeneratorRef r{fam, gi, gj, to_i32(mm, "generator exponent"), to_i32(nn, "generator exponent")};
        t.gens.emplace_back(r, coef);
    };
    auto add_central = [&](int64_t u, const Scalar& coef) {
        auto it = t.c.find(u);
        if (it == t.c.end()) t.c.emplace(u, coef);
        else it->second = it->second + coef;
    };
    auto add_c_pair = [&](int64_t u, const Scalar& coef) {
        // coef * (c(u) + c(-u)); at u = 0 this accumulates to 2*coef * c(0).
        add_central(u, coef);
        add_central(-u, coef);
    };

    Family A = a.family, B = b.family;
    auto pair_is = [&](Family x, Family y) { return A == x && B == y; };

    if (pair_is(Family::G, Family::G) || pair_is(Family::G, Family::E) ||
        pair_is(Family::G, Family::E0) || pair_is(Family::F, Family::E0) ||
        pair_is(Family::H, Family::H) || pair_is(Family::H, Family::EStar) ||
        pair_is(Family::H, Family::E0)) {
        return t; // tabulated as zero
    }
    if (pair_is(Family::G, Family::F)) {
        if (i == l) add(Family::G, k, j, m + p, n + s, -qp(m * s));
        if (j == l) add(Family::G, k, i, m + p, s - n, -qp((s - n) * m));
        return t;
    }
    if (pair_is(Family::G, Family::H)) {
        if (i == k) add(Family::F, j, l, m + p, s - n, -qp(-n * (m + p)));
        if (j == k) add(Family::F, i, l, m + p, n + s, -qp(n * p));
        if (i == l) add(Family::F, j, k, m + p, -(n + s), -qp(-(m * n + n * p + p * s)));
        if (j == l) add(Family::F, i, k, m + p, n - s, -qp((n - s) * p));
        if (j == k && i == l && m + p == 0 && mode.lambda_contains(n + s))
            add_c_pair(n + s, qp(n * p).times_rat(m, 1));
        // The second central term carries no q-power in the table; the bracket
        // oracle confirms that reading.
        if (i == k && j == l && m + p == 0 && mode.lambda_contains(n - s))
            add_c_pair(n - s, Scalar::from_int(mode, m));
        return t;
    }
    if (pair_is(Family::G, Family::EStar)) {
        if (i == k) add(Family::E, j, 0, m + p, s - n, -qp(-n * (m + p)));
        if (j == k) add(Family::E, i, 0, m + p, n + s, -qp(n * p));
        return t;
    }
    if (pair_is(Family::F, Family::F)) {
        if (j == k) add(Family::F, i, l, m + p, n + s, qp(n * p));
        if (i == l) add(Family::F, k, j, m + p, n + s, -qp(s * m));
        if (j == k && i == l && m + p == 0 && mode.lambda_contains(n + s)) {
            if (which == Formula::Stated) {
                add_central(n + s, qp(n * p).times_rat(-2 * m, 1));
            } else {
                add_c_pair(n + s, qp(n * p).times_rat(-m, 1));
            }
        }
        return t;
    }
    if (pair_is(Family::F, Family::H)) {
        if (i == k) add(Family::H, j, l, m + p, s - n, -qp(-n * (m + p)));
        if (i == l) add(Family::H, k, j, m + p, n + s, -qp(m * s));
        return t;
    }
    if (pair_is(Family::F, Family::E)) {
        if (j == k) add(Family::E, i, 0, m + p, n + s, qp(n * p));
        return t;
    }
    if (pair_is(Family::F, Family::EStar)) {
        if (i == k) add(Family::EStar, j, 0, m + p, s - n, -qp(-n * (m + p)));
        return t;
    }
    if (pair_is(Family::H, Family::E)) {
        if (j == k) add(Family::EStar, i, 0, m + p, n + s, qp(n * p));
        if (i == k) add(Family::EStar, j, 0, m + p, s - n, qp(-n * (m + p)));
        return t;
    }
    if (pair_is(Family::E, Family::E)) {
        add(Family::G, k, i, m + p, s - n, qp(m * (s - n)));
        return t;
    }
    if (pair_is(Family::E, Family::EStar)) {
        if (i == k) add(Family::E0, 0, 0, m + p, s - n, qp(-n * (m + p)));
        add(Family::F, i, k, m + p, n - s, qp(p * (n - s)));
        if (i == k && m + p == 0 && mode.lambda_contains(n - s))
            add_c_pair(n - s, Scalar::from_int(mode, -m));
        return t;
    }
    if (pair_is(Family::E, Family::E0)) {
        add(Family::E, i, 0, m + p, n + s, -qp(n * p));
        add(Family::E, i, 0, m + p, n - s, qp(p * (n - s)));
        return t;
    }
    if (pair_is(Family::EStar, Family::EStar)) {
        add(Family::H, k, i, m + p, s - n, qp(m * (s - n)));
        return t;
    }
    if (pair_is(Family::EStar, Family::E0)) {
        add(Family::EStar, i, 0, m + p, n + s, -qp(n * p));
        add(Family::EStar, i, 0, m + p, n - s, qp(p * (n - s)));
        return t;
    }
    if (pair_is(Family::E0, Family::E0)) {
        add(Family::E0, 0, 0, m + p, n + s, -(qp(n * p) - qp(s * m)));
        add(Family::E0, 0, 0, m + p, s - n, -(qp(m * (s - n)) - qp(-n * (m + p))));
        if (m + p == 0 && mode.lambda_contains(n + s))
            add_c_pair(n + s, qp(n * p).times_rat(m, 1));
        if (m + p == 0 && mode.lambda_contains(n - s))
            add_c_pair(n - s, Scalar::from_int(mode, -m));
        return t;
    }
    throw ConfigError("unhandled family pair");
}

ExtElement expected_bracket(QMode mode, int32_t N, const GeneratorRef& a,
                            const GeneratorRef& b, Formula which) {
    BracketTerms t = expected_bracket_terms(mode, N, a, b, which);
    ExtElement acc(mode, 1, 2 * N);
    for (const auto& [g, coef] : t.gens) acc = acc + expand(mode, N, g).scaled(coef);
    for (const auto& [u, coef] : t.c) acc.add_central(u, coef);
    if (!t.cy.is_zero()) acc.add_cy(t.cy);
    return acc;
}

nlohmann::ordered_json CorrectionRecord::to_json() const {
    nlohmann::ordered_json j;
    j["equation"] = equation;
    j["witness_idx"] = idx;
    j["witness_exps"] = exps;
    j["printed_central"] = printed_central;
    j["observed_central"] = observed_central;
    j["corrected_rule"] = corrected_rule;
    return j;
}

nlohmann::ordered_json BracketCheckFailure::to_json() const {
    nlohmann::ordered_json j;
    j["equation"] = equation;
    j["idx"] = idx;
    j["exps"] = exps;
    j["discrepancy"] = discrepancy;
    return j;
}

nlohmann::ordered_json GeneratorTableReport::to_json() const {
    nlohmann::ordered_json j;
    j["tuples_checked"] = tuples_checked;
    auto per = nlohmann::ordered_json::array();
    for (const auto& [eq, cnt] : per_equation_checked) {
        nlohmann::ordered_json e;
        e["equation"] = eq;
        e["checked"] = cnt;
        auto it = per_equation_corrected.find(eq);
        e["corrected"] = it == per_equation_corrected.end() ? 0 : it->second;
        per.push_back(std::move(e));
    }
    j["per_equation"] = std::move(per);
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

GeneratorTableReport verify_generator_brackets(QMode mode, int32_t N, int32_t lo, int32_t hi, size_t failure_cap) {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (lo > hi) throw ConfigError("empty exponent range");
    GeneratorTableReport rep;
    for (int fa = 0; fa < 6; ++fa) {
        for (int fb = fa; fb < 6; ++fb) {
            Family A = kFamilies[fa], B = kFamilies[fb];
            std::string eq = bracket_equation_id(A, B);
            auto ias = index_tuples(family_arity(A), N);
            auto ibs = index_tuples(family_arity(B), N);
            for (const auto& ia : ias) {
                for (const auto& ib : ibs) {
                    for (int32_t m = lo; m <= hi; ++m)
                        for (int32_t n = lo; n <= hi; ++n)
                            for (int32_t p = lo; p <= hi; ++p)
                                for (int32_t s = lo; s <= hi; ++s) {
                                    GeneratorRef ga{A, ia[0], ia[1], m, n};
                                    GeneratorRef gb{B, ib[0], ib[1], p, s};
                                    ExtElement actual = superbracket_ext(expand(mode, N, ga),
                                                                         expand(mode, N, gb));
                                    ExtElement stated =
                                        expected_bracket(mode, N, ga, gb, Formula::Stated);
                                    ++rep.tuples_checked;
                                    ++rep.per_equation_checked[eq];
                                    if (actual == stated) continue;
                                    ExtElement corrected =
                                        expected_bracket(mode, N, ga, gb, Formula::Corrected);
                                    std::array<int32_t, 4> idx{ia[0], ia[1], ib[0], ib[1]};
                                    std::array<int32_t, 4> exps{m, n, p, s};
                                    if (actual == corrected) {
                                        ++rep.per_equation_corrected[eq];
                                        bool seen = false;
                                        for (const auto& c : rep.corrections)
                                            if (c.equation == eq) seen = true;
                                        if (!seen) {
                                            CorrectionRecord rec;
                                            rec.equation = eq;
                                            rec.idx = idx;
                                            rec.exps = exps;
                                            rec.printed_central = central_str(stated);
                                            rec.observed_central = central_str(actual);
                                            rec.corrected_rule = corrected_rule_text(eq);
                                            rep.corrections.push_back(std::move(rec));
                                        }
                                        continue;
                                    }
                                    ++rep.failures_total;
                                    if (rep.failures.size() < failure_cap) {
                                        BracketCheckFailure f;
                                        f.equation = eq;
                                        f.idx = idx;
                                        f.exps = exps;
                                        f.discrepancy = (actual - corrected).str_repr();
                                        rep.failures.push_back(std::move(f));
                                    }
                                }
                }
            }
        }
    }
    return rep;
}

} // namespace qtorus
