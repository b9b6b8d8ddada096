#include "qtorus/verify.hpp"

#include <chrono>
#include <cstdio>

namespace qtorus {

namespace {

class StderrTimer {
  public:
    explicit StderrTimer(std::string label)
        : label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
    ~StderrTimer() {
        using namespace std::chrono;
        double secs = duration_cast<duration<double>>(steady_clock::now() - start_).count();
        std::fprintf(stderr, "[qtorus] %s: %.2fs\n", label_.c_str(), secs);
        std::fflush(stderr);
    }

  private:
    std::string label_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<FockState> suite_extra_states(const SessionConfig& cfg) {
    if (cfg.extra_samples == 0) return {};
    return sampled_states(cfg.N, cfg.degree_bound + 1, cfg.lo, cfg.hi, cfg.seed,
                          size_t(cfg.extra_samples));
}

nlohmann::ordered_json wrap(const std::string& suite, const SessionConfig& cfg,
                            nlohmann::ordered_json result, bool ok) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = suite;
    j["config"] = cfg.to_json();
    j["result"] = std::move(result);
    j["ok"] = ok;
    return j;
}

SuiteResult run_generators(const SessionConfig& cfg) {
    GeneratorTableReport rep =
        verify_generator_brackets(cfg.mode, cfg.N, cfg.lo, cfg.hi);
    return {rep.to_json(), rep.ok()};
}

SuiteResult run_pairs(const SessionConfig& cfg) {
    PairBracketReport rep =
        verify_pair_brackets(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound, cfg.tau,
                             suite_extra_states(cfg), 16, cfg.parallel);
    return {rep.to_json(), rep.ok()};
}

SuiteResult run_operators(const SessionConfig& cfg) {
    OperatorBracketReport rep =
        verify_operator_brackets(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound, cfg.tau,
                                 suite_extra_states(cfg), 16, cfg.parallel);
    return {rep.to_json(), rep.ok()};
}

SuiteResult run_action(const SessionConfig& cfg) {
    ModuleActionReport rep =
        verify_module_action(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound, cfg.tau,
                             suite_extra_states(cfg), 16, cfg.parallel);
    return {rep.to_json(), rep.ok()};
}

SuiteResult run_thetasum(const SessionConfig& cfg) {
    constexpr int64_t kLo = -6, kHi = 6;
    nlohmann::ordered_json fails = nlohmann::ordered_json::array();
    int64_t checked = 0;
    for (int64_t x = kLo; x <= kHi; ++x)
        for (int64_t m = kLo; m <= kHi; ++m) {
            ++checked;
            if (!check_theta_power_sum(cfg.mode, x, m))
                fails.push_back({{"x", x}, {"m", m}});
        }
    nlohmann::ordered_json result;
    result["grid"] = {kLo, kHi};
    result["checked"] = checked;
    result["failures"] = fails;
    bool ok = fails.empty();
    result["ok"] = ok;
    return {std::move(result), ok};
}

SuiteResult dispatch(const std::string& name, const SessionConfig& cfg) {
    if (name == "generators") return run_generators(cfg);
    if (name == "pairs") return run_pairs(cfg);
    if (name == "operators") return run_operators(cfg);
    if (name == "action") return run_action(cfg);
    if (name == "thetasum") return run_thetasum(cfg);
    throw ConfigError("unknown suite \"" + name + "\"");
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"generators", "pairs", "operators", "action",
                                                   "thetasum"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SessionConfig& cfg) {
    cfg.validate();
    if (name == "all") {
        nlohmann::ordered_json parts = nlohmann::ordered_json::array();
        bool ok = true;
        for (const std::string& sub : suite_names()) {
            StderrTimer timer("suite " + sub);
            SuiteResult r = dispatch(sub, cfg);
            nlohmann::ordered_json p;
            p["suite"] = sub;
            p["result"] = std::move(r.report);
            p["ok"] = r.ok;
            parts.push_back(std::move(p));
            ok = ok && r.ok;
        }
        nlohmann::ordered_json result;
        result["suites"] = std::move(parts);
        return {wrap("all", cfg, std::move(result), ok), ok};
    }
    StderrTimer timer("suite " + name);
    SuiteResult r = dispatch(name, cfg);
    return {wrap(name, cfg, std::move(r.report), r.ok), r.ok};
}

nlohmann::ordered_json export_tables(const SessionConfig& cfg) {
    cfg.validate();
    constexpr Family kOrder[6] = {Family::G, Family::F, Family::H,
                                  Family::E, Family::EStar, Family::E0};
    auto tuples = [&](Family f) {
        std::vector<std::array<int32_t, 2>> out;
        int a = family_arity(f);
        if (a == 0) {
            out.push_back({0, 0});
        } else if (a == 1) {
            for (int32_t i = 1; i <= cfg.N; ++i) out.push_back({i, 0});
        } else {
            for (int32_t i = 1; i <= cfg.N; ++i)
                for (int32_t j = 1; j <= cfg.N; ++j) out.push_back({i, j});
        }
        return out;
    };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int fa = 0; fa < 6; ++fa)
        for (int fb = fa; fb < 6; ++fb)
            for (const auto& ia : tuples(kOrder[fa]))
                for (const auto& ib : tuples(kOrder[fb]))
                    for (int32_t m = cfg.lo; m <= cfg.hi; ++m)
                        for (int32_t n = cfg.lo; n <= cfg.hi; ++n)
                            for (int32_t p = cfg.lo; p <= cfg.hi; ++p)
                                for (int32_t s = cfg.lo; s <= cfg.hi; ++s) {
                                    GeneratorRef ga{kOrder[fa], ia[0], ia[1], m, n};
                                    GeneratorRef gb{kOrder[fb], ib[0], ib[1], p, s};
                                    ExtElement z = expected_bracket(cfg.mode, cfg.N, ga, gb,
                                                                    Formula::Corrected);
                                    nlohmann::ordered_json e;
                                    e["a"] = ga.to_json();
                                    e["b"] = gb.to_json();
                                    e["bracket"] = z.to_json();
                                    arr.push_back(std::move(e));
                                }
    return arr;
}

} // namespace qtorus
