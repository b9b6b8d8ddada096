/// @file bench_parallel.cpp
/// @brief Times a verification workload with the OpenMP block scheduler
///        against the serial reference path and checks that both produce
///        byte-identical reports.

#include "CLI11.hpp"
#include "qtorus/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace qtorus;
using Clock = std::chrono::steady_clock;

struct RunOut {
    double secs = 0;
    std::string dump;
};

RunOut run_once(const std::string& suite, const SessionConfig& cfg) {
    std::vector<FockState> extra = sampled_states(cfg.N, cfg.degree_bound + 1, cfg.lo, cfg.hi,
                                                  cfg.seed, size_t(cfg.extra_samples));
    Clock::time_point t0 = Clock::now();
    nlohmann::ordered_json rep;
    if (suite == "pairs")
        rep = verify_pair_brackets(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound, cfg.tau,
                                   extra, 16, cfg.parallel)
                  .to_json();
    else if (suite == "operators")
        rep = verify_operator_brackets(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound,
                                       cfg.tau, extra, 16, cfg.parallel)
                  .to_json();
    else if (suite == "action")
        rep = verify_module_action(cfg.mode, cfg.N, cfg.lo, cfg.hi, cfg.degree_bound, cfg.tau,
                                   extra, 16, cfg.parallel)
                  .to_json();
    else
        throw ConfigError("bench suite must be pairs, operators or action");
    double secs = std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - t0)
                      .count();
    return {secs, rep.dump()};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bench: serial reference vs OpenMP block scheduling on one verifier workload"};
    std::string suite = "operators";
    std::string qmode = "generic";
    std::string range = "-1:1";
    int reps = 3;
    SessionConfig cfg;
    cfg.N = 1;
    cfg.degree_bound = 3;
    app.add_option("--suite", suite, "workload: pairs, operators or action")
        ->capture_default_str();
    app.add_option("--qmode,-q", qmode, "generic or root:<d>")->capture_default_str();
    app.add_option("--N,-N", cfg.N, "boson flavors")->capture_default_str();
    app.add_option("--range,-r", range, "exponent window lo:hi")->capture_default_str();
    app.add_option("--degree,-d", cfg.degree_bound, "max state degree")->capture_default_str();
    app.add_option("--tau,-t", cfg.tau, "crossing sign")->capture_default_str();
    app.add_option("--reps", reps, "repetitions per mode (best time wins)")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        cfg.mode = QMode::parse(qmode);
        std::tie(cfg.lo, cfg.hi) = parse_range(range);
        cfg.validate();

        int threads = 1;
#ifdef _OPENMP
        threads = omp_get_max_threads();
#endif
        std::printf("workload: %s suite, qmode %s, N=%d, window [%d,%d], degree <= %d, "
                    "tau=%+d, %d rep(s), %d thread(s)\n",
                    suite.c_str(), cfg.mode.str().c_str(), cfg.N, cfg.lo, cfg.hi,
                    cfg.degree_bound, cfg.tau, reps, threads);

        RunOut serial, parallel;
        for (int r = 0; r < reps; ++r) {
            cfg.parallel = false;
            RunOut s = run_once(suite, cfg);
            cfg.parallel = true;
            RunOut p = run_once(suite, cfg);
            if (r == 0 || s.secs < serial.secs) serial.secs = s.secs;
            if (r == 0 || p.secs < parallel.secs) parallel.secs = p.secs;
            serial.dump = std::move(s.dump);
            parallel.dump = std::move(p.dump);
        }

        bool identical = serial.dump == parallel.dump;
        std::printf("serial reference : %8.3f s\n", serial.secs);
        std::printf("openmp blocks    : %8.3f s\n", parallel.secs);
        std::printf("speedup          : %8.2fx\n",
                    parallel.secs > 0 ? serial.secs / parallel.secs : 0.0);
        std::printf("reports identical: %s\n", identical ? "yes" : "NO");
        return identical ? 0 : 1;
    } catch (const qtorus::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
