#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinem/covariant_spin.hpp"
#include "spinem/dynamics.hpp"
#include "spinem/scenario.hpp"
#include "spinem/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spinem;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

constexpr std::uint64_t kDefaultSeed = 20240817u;

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 for display
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(const Vec3& v) {
    return "(" + fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z) + ")";
}

ordered_json to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

void print_timestamp(bool enabled, const char* tag) {
    if (!enabled) return;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
    std::cout << tag << " " << buf << "\n";
}

// Accepts "(a, b, c)" or "a,b,c".
Vec3 parse_cli_vector(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw ArgumentError("unbalanced parentheses in '" + text + "'");
        t = t.substr(1, t.size() - 2);
    }
    std::array<double, 3> comp{};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t comma = t.find(',', start);
        const bool last = i == 2;
        if (!last && comma == std::string::npos) {
            throw ArgumentError("expected three components in '" + text + "'");
        }
        if (last && comma != std::string::npos) {
            throw ArgumentError("too many components in '" + text + "'");
        }
        const std::string piece =
            t.substr(start, last ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            comp[static_cast<std::size_t>(i)] = std::stod(piece, &used);
            while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ArgumentError("malformed vector component '" + piece + "'");
        }
        start = comma + 1;
    }
    return {comp[0], comp[1], comp[2]};
}

struct TermsOptions {
    std::string scenario_path;
    double at_time = 0.0;
    bool at_given = false;
    bool json = false;
};

int cmd_terms(const TermsOptions& opt) {
    const Scenario scn = load_scenario(opt.scenario_path);
    ParticleState st = scn.initial_state();
    st.t = opt.at_given ? opt.at_time : scn.t0;

    const FieldSample f = sample(scn.field, st.r, st.t, scn.constants);
    const Vec3 a = acceleration(st, f, scn.constants, scn.accel);
    const TermBreakdown tb = term_breakdown(st, f, scn.constants, scn.mask, a);
    const PrecessionDecomposition pd =
        precession_vector(st, f, scn.constants, scn.mask, a);
    const Vec3 sigma = pauli_expectation(st.spinor);
    const Vec3 dr = hidden_position_quantum(sigma, st.p / scn.constants.m, scn.constants);
    const Vec3 dp = hidden_momentum_quantum(sigma, a, scn.constants);

    if (opt.json) {
        ordered_json j;
        j["t"] = st.t;
        j["terms"] = {{"h0", tb.h0},     {"so", tb.so},         {"h1", tb.h1},
                      {"h2", tb.h2},     {"dv", tb.dv},         {"zeeman", tb.zeeman},
                      {"total", tb.total}};
        j["precession"] = {{"omega_so", to_json(pd.omega_so)},
                           {"omega_h1", to_json(pd.omega_h1)},
                           {"omega_h2", to_json(pd.omega_h2)},
                           {"omega_zeeman", to_json(pd.omega_zeeman)},
                           {"omega_total", to_json(pd.omega_total)}};
        j["hidden"] = {{"delta_r", to_json(dr)}, {"delta_p", to_json(dp)}};
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    std::cout << "state at t = " << fmt(st.t) << "\n"
              << "  r     = " << fmt(st.r) << "\n"
              << "  p     = " << fmt(st.p) << "\n"
              << "  sigma = " << fmt(sigma) << "\n\n";
    std::cout << "term        energy\n";
    const std::pair<const char*, double> rows[] = {
        {"h0", tb.h0}, {"so", tb.so},         {"h1", tb.h1},      {"h2", tb.h2},
        {"dv", tb.dv}, {"zeeman", tb.zeeman}, {"total", tb.total}};
    for (const auto& [name, value] : rows) {
        std::printf("%-10s  %s\n", name, fmt(value).c_str());
    }
    std::cout << "\nprecession vectors\n";
    const std::pair<const char*, Vec3> omegas[] = {{"omega_so", pd.omega_so},
                                                   {"omega_h1", pd.omega_h1},
                                                   {"omega_h2", pd.omega_h2},
                                                   {"omega_zeeman", pd.omega_zeeman},
                                                   {"omega_total", pd.omega_total}};
    for (const auto& [name, value] : omegas) {
        std::printf("%-13s %s\n", name, fmt(value).c_str());
    }
    std::cout << "\nhidden diagnostics\n";
    std::printf("%-13s %s\n", "delta_r", fmt(dr).c_str());
    std::printf("%-13s %s\n", "delta_p", fmt(dp).c_str());
    return kExitOk;
}

struct EvolveOptions {
    std::string scenario_path;
    bool json = false;
};

void write_record(const Scenario& scn, const TrajectoryRecord& rec) {
    if (scn.trajectory_path.empty()) return;
    std::ofstream out(scn.trajectory_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + scn.trajectory_path + "'");
    write_trajectory(rec, scn.format, out);
}

void print_evolve_summary(const Scenario& scn, const TrajectoryRecord& rec,
                          long steps, bool json, bool aborted) {
    const TrajectorySample& last = rec.samples.back();
    double max_sigma_drift = 0.0;
    double initial_p = norm(rec.samples.front().p);
    double max_p_drift = 0.0;
    for (const TrajectorySample& s : rec.samples) {
        max_sigma_drift = std::max(max_sigma_drift, std::abs(norm(s.sigma) - 1.0));
        if (initial_p > 0.0) {
            max_p_drift =
                std::max(max_p_drift, std::abs(norm(s.p) - initial_p) / initial_p);
        }
    }
    if (json) {
        ordered_json j;
        j["steps"] = steps;
        j["samples"] = rec.samples.size();
        j["aborted"] = aborted;
        j["final"] = {{"t", last.t},
                      {"r", to_json(last.r)},
                      {"p", to_json(last.p)},
                      {"sigma", to_json(last.sigma)},
                      {"total", last.terms.total}};
        j["max_sigma_norm_drift"] = max_sigma_drift;
        j["max_momentum_drift"] = max_p_drift;
        if (!scn.trajectory_path.empty()) j["trajectory"] = scn.trajectory_path;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "steps               " << steps << (aborted ? " (aborted)" : "") << "\n"
              << "samples             " << rec.samples.size() << "\n"
              << "final t             " << fmt(last.t) << "\n"
              << "final r             " << fmt(last.r) << "\n"
              << "final p             " << fmt(last.p) << "\n"
              << "final sigma         " << fmt(last.sigma) << "\n"
              << "final total energy  " << fmt(last.terms.total) << "\n"
              << "max |sigma| drift   " << fmt(max_sigma_drift) << "\n"
              << "max |p| drift (rel) " << fmt(max_p_drift) << "\n";
    if (!scn.trajectory_path.empty()) {
        std::cout << "trajectory          " << scn.trajectory_path << "\n";
    }
}

int cmd_evolve(const EvolveOptions& opt) {
    const Scenario scn = load_scenario(opt.scenario_path);
    const long steps =
        std::max(1L, std::lround((scn.t1 - scn.t0) / scn.dt));
    try {
        const TrajectoryRecord rec = evolve(scn.evolution(), scn.initial_state());
        write_record(scn, rec);
        print_evolve_summary(scn, rec, steps, opt.json, false);
        return kExitOk;
    } catch (const SingularityAbort& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        if (!e.partial().samples.empty()) {
            write_record(scn, e.partial());
            print_evolve_summary(scn, e.partial(), steps, opt.json, true);
        }
        return kExitRuntime;
    } catch (const IoError& e) {
        // A failed output write is a runtime error, unlike a missing input.
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

struct VerifyOptions {
    std::string suite;
    bool all = false;
    std::uint64_t seed = kDefaultSeed;
    bool json = false;
};

int cmd_verify(const VerifyOptions& opt) {
    std::vector<CheckResult> results;
    if (opt.all) {
        results = run_all_verifications(opt.seed);
    } else {
        try {
            results = run_verification_suite(opt.suite, opt.seed);
        } catch (const ArgumentError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    bool all_pass = true;
    if (opt.json) {
        ordered_json arr = ordered_json::array();
        for (const CheckResult& r : results) {
            all_pass &= r.pass;
            arr.push_back({{"suite", r.suite},
                           {"check", r.check},
                           {"pass", r.pass},
                           {"max_residual", r.max_residual},
                           {"tolerance", r.tolerance}});
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const CheckResult& r : results) {
            all_pass &= r.pass;
            std::printf("%-4s %-18s %-45s max residual %-12s (tol %s)\n",
                        r.pass ? "ok" : "FAIL", r.suite.c_str(), r.check.c_str(),
                        fmt(r.max_residual).c_str(), fmt(r.tolerance).c_str());
        }
    }
    return all_pass ? kExitOk : kExitVerificationFailure;
}

struct TensorOptions {
    std::string spin = "(0, 0, 1)";
    std::string beta = "(0, 0, 0)";
    std::string ssc = "moller";
    bool json = false;
};

int cmd_tensor(const TensorOptions& opt) {
    Vec3 spin, beta;
    try {
        spin = parse_cli_vector(opt.spin);
        beta = parse_cli_vector(opt.beta);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (opt.ssc != "moller" && opt.ssc != "dirac") {
        std::cerr << "error: --ssc must be moller or dirac\n";
        return kExitUsage;
    }
    if (!(norm(beta) < 1.0)) {
        std::cerr << "error: |beta| must be below 1\n";
        return kExitUsage;
    }

    const FourVector u = u_from_beta(beta);
    const FourVector s_lab = boost_rest_spin(spin, beta);
    const AntisymTensor4 tensor = spin_tensor_from_vector(s_lab, u);
    const FourVector round_trip = spin_vector_from_tensor(tensor, u);

    if (opt.json) {
        ordered_json j;
        j["u"] = {u.t, u.x, u.y, u.z};
        j["spin_lab"] = {s_lab.t, s_lab.x, s_lab.y, s_lab.z};
        ordered_json rows = ordered_json::array();
        for (int a = 0; a < 4; ++a) {
            ordered_json row = ordered_json::array();
            for (int b = 0; b < 4; ++b) row.push_back(tensor(a, b));
            rows.push_back(row);
        }
        j["tensor"] = rows;
        j["round_trip"] = {round_trip.t, round_trip.x, round_trip.y, round_trip.z};
        if (opt.ssc == "moller") {
            const FourVector res = ssc_residual_moller(tensor, u);
            j["ssc"] = "moller";
            j["residual"] = {res.t, res.x, res.y, res.z};
        } else {
            const Vec3 res = ssc_residual_dirac(tensor, u);
            j["ssc"] = "dirac";
            j["residual"] = {res.x, res.y, res.z};
        }
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    std::cout << "u          = (" << fmt(u.t) << ", " << fmt(u.x) << ", " << fmt(u.y)
              << ", " << fmt(u.z) << ")\n";
    std::cout << "spin (lab) = (" << fmt(s_lab.t) << ", " << fmt(s_lab.x) << ", "
              << fmt(s_lab.y) << ", " << fmt(s_lab.z) << ")\n\n";
    std::cout << "spin tensor\n";
    for (int a = 0; a < 4; ++a) {
        std::cout << " ";
        for (int b = 0; b < 4; ++b) std::printf(" %14s", fmt(tensor(a, b)).c_str());
        std::cout << "\n";
    }
    std::cout << "\nround trip = (" << fmt(round_trip.t) << ", " << fmt(round_trip.x)
              << ", " << fmt(round_trip.y) << ", " << fmt(round_trip.z) << ")\n";
    if (opt.ssc == "moller") {
        const FourVector res = ssc_residual_moller(tensor, u);
        std::cout << "moller residual = (" << fmt(res.t) << ", " << fmt(res.x) << ", "
                  << fmt(res.y) << ", " << fmt(res.z) << ")\n";
    } else {
        const Vec3 res = ssc_residual_dirac(tensor, u);
        std::cout << "dirac residual  = " << fmt(res) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical electron spin dynamics in analytic electromagnetic fields"};
    app.require_subcommand(1);
    bool timestamps = false;
    app.add_flag("--timestamps", timestamps, "print start/end timestamps");

    TermsOptions terms_opt;
    CLI::App* terms = app.add_subcommand("terms", "evaluate energy terms at one time");
    terms->add_option("scenario", terms_opt.scenario_path, "scenario file")->required();
    CLI::Option* at = terms->add_option("--at", terms_opt.at_time, "evaluation time (default t0)");
    terms->add_flag("--json", terms_opt.json, "machine-readable output");

    EvolveOptions evolve_opt;
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "integrate a scenario");
    evolve_cmd->add_option("scenario", evolve_opt.scenario_path, "scenario file")->required();
    evolve_cmd->add_flag("--json", evolve_opt.json, "machine-readable summary");

    VerifyOptions verify_opt;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run built-in identity suites");
    CLI::Option* suite_opt =
        verify_cmd->add_option("--suite", verify_opt.suite, "suite name");
    verify_cmd->add_flag("--all", verify_opt.all, "run every suite");
    verify_cmd->add_option("--seed", verify_opt.seed, "random seed");
    verify_cmd->add_flag("--json", verify_opt.json, "machine-readable output");

    TensorOptions tensor_opt;
    CLI::App* tensor_cmd =
        app.add_subcommand("tensor", "spin tensor, round trip and SSC residual");
    tensor_cmd->add_option("--spin", tensor_opt.spin, "rest-frame spin '(sx,sy,sz)'");
    tensor_cmd->add_option("--beta", tensor_opt.beta, "velocity/c '(bx,by,bz)'");
    tensor_cmd->add_option("--ssc", tensor_opt.ssc, "moller or dirac");
    tensor_cmd->add_flag("--json", tensor_opt.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    terms_opt.at_given = at->count() > 0;
    if (verify_cmd->parsed() && !verify_opt.all && suite_opt->count() == 0) {
        std::cerr << "error: verify needs --suite NAME or --all\n";
        return kExitUsage;
    }

    print_timestamp(timestamps, "start");
    int code = kExitRuntime;
    try {
        if (terms->parsed()) code = cmd_terms(terms_opt);
        else if (evolve_cmd->parsed()) code = cmd_evolve(evolve_opt);
        else if (verify_cmd->parsed()) code = cmd_verify(verify_opt);
        else if (tensor_cmd->parsed()) code = cmd_tensor(tensor_opt);
    } catch (const ParseError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitRuntime;
    }
    print_timestamp(timestamps, "end");
    return code;
}
