#include "qtorus/verify.hpp"

#include <charconv>

namespace qtorus {

void SessionConfig::validate() const {
    if (tau != 1 && tau != -1) throw ConfigError("tau must be +1 or -1");
    if (N < 1) throw ConfigError("N must be at least 1");
    if (N > 16) throw ConfigError("N exceeds the desk-scale guardrail of 16");
    if (lo < -16 || lo > 16 || hi < -16 || hi > 16)
        throw ConfigError("exponent window bounds must lie in [-16, 16]");
    if (degree_bound < 0) throw ConfigError("degree bound must be nonnegative");
    if (degree_bound > 8) throw ConfigError("degree bound exceeds the guardrail of 8");
    if (extra_samples < 0 || extra_samples > 256)
        throw ConfigError("extra sample count must lie in [0, 256]");
}

nlohmann::ordered_json SessionConfig::to_json() const {
    nlohmann::ordered_json j;
    j["qmode"] = mode.str();
    j["N"] = N;
    j["tau"] = tau;
    j["range"] = {lo, hi};
    j["degree_bound"] = degree_bound;
    j["seed"] = seed;
    j["extra_samples"] = extra_samples;
    return j;
}

std::pair<int32_t, int32_t> parse_range(const std::string& s) {
    size_t colon = s.find(':');
    if (colon == std::string::npos)
        throw ConfigError("range must be written lo:hi, e.g. -2:2");
    auto parse_int = [&](const std::string& part) {
        int32_t v = 0;
        const char* b = part.data();
        const char* e = part.data() + part.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e)
            throw ConfigError("range bound \"" + part + "\" is not an integer");
        return v;
    };
    return {parse_int(s.substr(0, colon)), parse_int(s.substr(colon + 1))};
}

} // namespace qtorus
