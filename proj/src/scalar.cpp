#include "qtorus/scalar.hpp"

namespace qtorus {

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string s;
    if (!ev_.is_zero()) s = fq_str(ev_);
    if (!ep_.is_zero()) {
        if (!s.empty()) s += " + ";
        s += "(" + fq_str(ep_) + ")*e";
    }
    return s;
}

nlohmann::ordered_json Scalar::to_json() const {
    return {{"even", fq_str(ev_)}, {"eps", fq_str(ep_)}};
}

Scalar Scalar::from_json(QMode m, const nlohmann::json& j) {
    Fq ev, ep;
    if (j.is_string()) {
        ev = fq_parse(m, j.get<std::string>());
    } else if (j.is_number_integer()) {
        ev = fq_from_int(j.get<int64_t>());
    } else if (j.is_object()) {
        if (j.contains("even")) ev = fq_parse(m, j.at("even").get<std::string>());
        if (j.contains("eps")) ep = fq_parse(m, j.at("eps").get<std::string>());
    } else {
        throw ParseError("scalar JSON must be a string, integer, or {even, eps} object");
    }
    return Scalar(m, std::move(ev), std::move(ep));
}

Scalar q_ratio(QMode m, int64_t mm, int64_t nn) {
    Fq acc;
    if (mm >= 0) {
        for (int64_t t = 0; t < mm; ++t)
            acc = fq_add(m, acc, fq_q_pow(m, nn * t));
    } else {
        for (int64_t t = mm; t < 0; ++t)
            acc = fq_sub(m, acc, fq_q_pow(m, nn * t));
    }
    return Scalar::make(m, std::move(acc), Fq{});
}

Scalar theta(QMode m, int64_t n) {
    if (n > 0) return Scalar::one(m);
    if (n == 0) return Scalar::from_rat(m, 1, 2);
    return Scalar::zero(m);
}

} // namespace qtorus
