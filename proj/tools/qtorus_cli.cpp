/// @file qtorus_cli.cpp
/// @brief The qtorus command line: verification suites, a one-off operator
///        applicator, and structure-constant table export.
///
/// Exit codes: 0 success (all checks passed), 1 verification failure,
/// 2 configuration or input error.

#include "CLI11.hpp"
#include "qtorus/verify.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qtorus;

struct Opts {
    std::string qmode = "generic";
    int tau = 1;
    int32_t N = 2;
    std::string range; // "lo:hi"; empty keeps the default window
    int degree = 3;
    uint64_t seed = 1;
    int32_t samples = 8;
    bool serial = false;
    std::string out; // output directory; empty falls back to QTORUS_OUT_DIR or "."
};

void add_config_flags(CLI::App* sub, Opts& o) {
    sub->add_option("--qmode,-q", o.qmode, "coefficient field: generic or root:<d>")
        ->capture_default_str();
    sub->add_option("--tau,-t", o.tau, "crossing sign between boson and fermion factors (+1/-1)")
        ->capture_default_str();
    sub->add_option("--N,-N", o.N, "number of boson flavors (1..16)")->capture_default_str();
    sub->add_option("--range,--window,-r", o.range,
                    "exponent window lo:hi for generator modes (default -2:2)");
    sub->add_option("--degree,-d", o.degree, "max state degree for the canonical grid (0..8)")
        ->capture_default_str();
    sub->add_option("--seed,-s", o.seed, "seed for the extra sampled states")
        ->capture_default_str();
    sub->add_option("--samples", o.samples, "number of extra seeded higher-degree states")
        ->capture_default_str();
    sub->add_flag("--serial", o.serial, "run single-threaded (reports are identical either way)");
    sub->add_option("--out,-o", o.out,
                    "report directory (default: $QTORUS_OUT_DIR, else the working directory)");
}

SessionConfig make_config(const Opts& o) {
    SessionConfig cfg;
    cfg.mode = QMode::parse(o.qmode);
    cfg.tau = o.tau;
    cfg.N = o.N;
    if (!o.range.empty()) {
        auto [lo, hi] = parse_range(o.range);
        cfg.lo = lo;
        cfg.hi = hi;
    }
    cfg.degree_bound = o.degree;
    cfg.seed = o.seed;
    cfg.extra_samples = o.samples;
    cfg.parallel = !o.serial;
    cfg.validate();
    return cfg;
}

std::filesystem::path out_dir(const Opts& o) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("QTORUS_OUT_DIR"); env && *env) return env;
    return ".";
}

void write_report(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file " + path.string());
    f << j.dump(2) << '\n';
    if (!f.good()) throw ConfigError("failed writing output file " + path.string());
}

int cmd_verify(const Opts& o, const std::string& suite) {
    SessionConfig cfg = make_config(o);
    SuiteResult r = run_suite(suite, cfg);
    std::filesystem::path path = out_dir(o) / ("report_" + suite + ".json");
    write_report(path, r.report);
    std::cout << "suite " << suite << ": " << (r.ok ? "PASS" : "FAIL") << " (report "
              << path.string() << ")\n";
    return r.ok ? 0 : 1;
}

int cmd_export(const Opts& o) {
    SessionConfig cfg = make_config(o);
    nlohmann::ordered_json t = export_tables(cfg);
    std::filesystem::path path = out_dir(o) / "tables.json";
    write_report(path, t);
    std::cout << "exported " << t.size() << " bracket entries (" << path.string() << ")\n";
    return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

int32_t parse_i32(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos == s.size() && v >= INT32_MIN && v <= INT32_MAX) return int32_t(v);
    } catch (const std::logic_error&) {
        // fall through
    }
    throw ConfigError(what + " \"" + s + "\" is not an integer");
}

/// "a:1:-2", "a*:2:0", "e:0:1" -> one mode factor.
ModeFactor parse_factor(const std::string& s, int32_t N) {
    auto parts = split(s, ':');
    if (parts.size() != 3)
        throw ConfigError("factor must be written kind:index:mode, e.g. a*:1:-2, got \"" + s +
                          "\"");
    ModeFactor f;
    if (parts[0] == "a") f.kind = FactorKind::A;
    else if (parts[0] == "a*") f.kind = FactorKind::AStar;
    else if (parts[0] == "e") f.kind = FactorKind::E;
    else throw ConfigError("factor kind must be a, a* or e, got \"" + parts[0] + "\"");
    f.index = parse_i32(parts[1], "factor index");
    f.mode = parse_i32(parts[2], "factor mode");
    if (f.kind == FactorKind::E) {
        if (f.index != 0) throw ConfigError("fermion factors carry index 0");
    } else if (f.index < 1 || f.index > N) {
        throw ConfigError("boson factor index must lie in 1..N");
    }
    return f;
}

/// "f:1,1:0,0", "e:1,0:1,-1", "e0:0,0:0,1" -> one quadratic operator.
QuadOp parse_quad(const std::string& s, int32_t N, bool shifted) {
    auto parts = split(s, ':');
    if (parts.size() != 3)
        throw ConfigError("operator must be written family:i,j:m,n, e.g. f:1,1:0,0, got \"" + s +
                          "\"");
    auto idx = split(parts[1], ',');
    auto exps = split(parts[2], ',');
    if (idx.size() != 2 || exps.size() != 2)
        throw ConfigError("operator indices and exponents must be comma pairs, got \"" + s +
                          "\"");
    QuadOp op;
    op.family = family_parse(parts[0]);
    op.i = parse_i32(idx[0], "operator index i");
    op.j = parse_i32(idx[1], "operator index j");
    op.m = parse_i32(exps[0], "operator exponent m");
    op.n = parse_i32(exps[1], "operator exponent n");
    op.shifted = shifted;
    int arity = family_arity(op.family);
    auto in_range = [N](int32_t v) { return v >= 1 && v <= N; };
    if (arity >= 1 && !in_range(op.i))
        throw ConfigError("operator index i must lie in 1..N");
    if (arity >= 2 && !in_range(op.j))
        throw ConfigError("operator index j must lie in 1..N");
    if (arity <= 1 && op.j != 0)
        throw ConfigError("this operator family carries no index j (write 0)");
    if (arity == 0 && op.i != 0)
        throw ConfigError("this operator family carries no index i (write 0)");
    return op;
}

int cmd_act(const Opts& o, const std::string& in_path,
            const std::vector<std::string>& factors, const std::vector<std::string>& quads,
            bool shifted) {
    SessionConfig cfg = make_config(o);
    if (factors.empty() && quads.empty())
        throw ConfigError("act needs at least one --factor or --op");

    nlohmann::json j;
    if (in_path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        j = nlohmann::json::parse(buf.str(), nullptr, false);
    } else {
        std::ifstream f(in_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open input file " + in_path);
        std::stringstream buf;
        buf << f.rdbuf();
        j = nlohmann::json::parse(buf.str(), nullptr, false);
    }
    if (j.is_discarded()) throw ParseError("input is not valid JSON");

    FockVector v = FockVector::from_json(cfg.mode, j);
    // Factors first, then operators; within each list, left to right, each
    // acting on the running result from the left.
    for (const std::string& s : factors)
        v = apply_factor(cfg.mode, parse_factor(s, cfg.N), v, cfg.tau);
    for (const std::string& s : quads)
        v = apply_quadratic(cfg.mode, parse_quad(s, cfg.N, shifted), v, cfg.tau);
    std::cout << v.to_json().dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtorus: exact verification of a quantum-torus Lie superalgebra,\n"
                 "its distinguished subalgebra, and its boson-fermion module"};
    app.require_subcommand(1);

    Opts opts;

    std::string suite;
    CLI::App* sub_verify =
        app.add_subcommand("verify", "run a verification suite and write its JSON report");
    std::string suite_help = "suite to run: all";
    for (const std::string& n : qtorus::suite_names()) suite_help += ", " + n;
    sub_verify->add_option("suite", suite, suite_help)->required();
    add_config_flags(sub_verify, opts);

    CLI::App* sub_export = app.add_subcommand(
        "export-tables", "write the expected brackets over the window as a JSON array");
    add_config_flags(sub_export, opts);

    std::string in_path = "-";
    std::vector<std::string> factors, quads;
    bool shifted = false;
    CLI::App* sub_act = app.add_subcommand(
        "act", "apply factors/operators to a JSON vector (stdin or --in) and print the result");
    sub_act->add_option("--in,-i", in_path, "input vector JSON file (- for stdin)")
        ->capture_default_str();
    sub_act->add_option("--factor,-f", factors,
                        "mode factor kind:index:mode (repeatable; e.g. a*:1:-2)");
    sub_act->add_option("--op,-x", quads,
                        "quadratic operator family:i,j:m,n (repeatable; e.g. f:1,1:0,0)");
    sub_act->add_flag("--shifted", shifted, "use the shifted form of every --op");
    add_config_flags(sub_act, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sub_verify->parsed()) return cmd_verify(opts, suite);
        if (sub_export->parsed()) return cmd_export(opts);
        if (sub_act->parsed()) return cmd_act(opts, in_path, factors, quads, shifted);
    } catch (const qtorus::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2; // unreachable: a subcommand is required
}
