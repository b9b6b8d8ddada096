#pragma once
/// @file verify.hpp
/// @brief Session configuration and suite orchestration: bundles the
///        verification harnesses behind named suites, emits self-describing
///        JSON reports, and exports the bracket tables. Reports are fully
///        deterministic for a fixed configuration (timing goes to stderr,
///        never into the report).

#include "qtorus/fock.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qtorus {

/// One verification session's knobs. Guardrails keep runs desk-scale:
/// |lo|, |hi| <= 16 and degree_bound <= 8; N <= 16.
struct SessionConfig {
    QMode mode = QMode::generic();
    int32_t N = 2;
    int tau = 1;
    int32_t lo = -2;
    int32_t hi = 2;
    int degree_bound = 3;
    uint64_t seed = 1;
    int32_t extra_samples = 8; // seeded higher-degree states added to the grid
    bool parallel = true;

    /// Throws ConfigError on guardrail violations.
    void validate() const;
    nlohmann::ordered_json to_json() const;
};

/// Parses "lo:hi" (e.g. "-2:2"). Throws ConfigError on malformed input.
std::pair<int32_t, int32_t> parse_range(const std::string& s);

/// The individual suite names, in canonical order. "all" runs every one.
const std::vector<std::string>& suite_names();

struct SuiteResult {
    nlohmann::ordered_json report;
    bool ok = false;
};

/// Runs one suite (or "all") under the given configuration and returns the
/// deterministic report. Elapsed times are printed to stderr only. Throws
/// ConfigError for unknown names or invalid configurations.
///
///   generators  the subalgebra bracket table against the cocycle oracle
///   pairs       the two-factor product bracket identities on states
///   operators   the quadratic-operator bracket table on states
///   action      the module assignment against the algebra brackets
///   thetasum    the theta-weighted power sum closed form (fixed grid [-6,6])
SuiteResult run_suite(const std::string& name, const SessionConfig& cfg);

/// Serializes the expected bracket of every generator pair over the window
/// to a deterministic JSON array of {a, b, bracket}. An empty window (lo > hi)
/// yields an empty array.
nlohmann::ordered_json export_tables(const SessionConfig& cfg);

} // namespace qtorus
