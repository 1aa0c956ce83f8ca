// akw: command-line front end for the akweak shared library.
//
// Subcommands: state, measure, dist, sample, ak, gabor, verify.  Every run
// writes a provenance record (<out>.prov.json) with the fully resolved
// configuration; warnings go to stderr, data to files, a terse summary to
// stdout.  Exit codes: 0 ok, 1 validation error, 2 check failure,
// 3 resource refusal.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <memory>
#include <sstream>
#include <vector>

#include "akweak.h"

using nlohmann::json;

namespace {

struct CliError {
    int exit_code;
    std::string message;
};

void check(akw_status st) {
    if (st == AKW_OK) return;
    int code = 1;
    if (st == AKW_ECHECK) code = 2;
    if (st == AKW_ERESOURCE) code = 3;
    throw CliError{code, akw_last_error()};
}

struct StateDeleter {
    void operator()(akw_state* s) const { akw_state_free(s); }
};
struct FieldDeleter {
    void operator()(akw_field* f) const { akw_field_free(f); }
};
struct DistDeleter {
    void operator()(akw_dist* d) const { akw_dist_free(d); }
};
using StatePtr = std::unique_ptr<akw_state, StateDeleter>;
using FieldPtr = std::unique_ptr<akw_field, FieldDeleter>;
using DistPtr = std::unique_ptr<akw_dist, DistDeleter>;

std::string take_string(char* s) {
    if (!s) return {};
    std::string out = s;
    akw_string_free(s);
    return out;
}

void flush_warnings() {
    const std::string w = take_string(akw_take_warnings());
    if (!w.empty()) std::cerr << "warning: " << w << "\n";
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw CliError{1, "cannot write " + path};
    out << j.dump(2) << "\n";
}

void write_provenance(const std::string& out_path, const std::string& command,
                      const json& config) {
    json j;
    j["tool"] = "akw";
    j["version"] = akw_version();
    j["command"] = command;
    j["config"] = config;
    write_json(out_path + ".prov.json", j);
}

StatePtr load_state(const std::string& path) {
    akw_state* s = nullptr;
    check(akw_state_load(path.c_str(), &s));
    return StatePtr(s);
}

// States are stored in whatever units they were built with; the measurement
// operators work in dimensionless units, so convert on the way in.
StatePtr as_dimensionless(StatePtr s, double b_hint) {
    akw_state_info info{};
    check(akw_state_get_info(s.get(), &info));
    if (!info.dimensioned) return s;
    const double b = std::isfinite(info.b) ? info.b : b_hint;
    if (!(b > 0.0))
        throw CliError{1, "state is dimensioned but no b is available for conversion"};
    akw_state* out = nullptr;
    check(akw_state_convert_units(s.get(), 0, b, &out));
    return StatePtr(out);
}

std::string config_dummy;  // sink for the declared --config option

void add_config_flag(CLI::App* cmd) {
    cmd->add_option("--config", config_dummy, "JSON config file; flags override its values");
}

// Flat-JSON config files, keys named like the long flags.  The values are
// injected as --key=value tokens ahead of the explicit flags, and every
// option takes its last occurrence, so the command line keeps precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    std::string config_path;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size())
            config_path = tokens[i + 1];
        else if (tokens[i].rfind("--config=", 0) == 0)
            config_path = tokens[i].substr(9);
    }
    if (config_path.empty()) return tokens;

    std::ifstream in(config_path);
    if (!in) throw CliError{1, "cannot read config file " + config_path};
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError{1, std::string("config file is not valid JSON: ") + e.what()};
    }
    if (!j.is_object()) throw CliError{1, "config file must hold a flat JSON object"};

    std::vector<std::string> injected;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "config") continue;
        const json& v = it.value();
        const std::string value = v.is_string() ? v.get<std::string>()
                                  : v.is_boolean() ? (v.get<bool>() ? "true" : "false")
                                                   : v.dump();
        injected.push_back("--" + it.key() + "=" + value);
    }
    // insert after the subcommand names so the values land in the right scope
    size_t pos = 0;
    while (pos < tokens.size() && tokens[pos].rfind("-", 0) != 0) ++pos;
    tokens.insert(tokens.begin() + pos, injected.begin(), injected.end());
    return tokens;
}

json window_json(const akw_phase_window& w) {
    return json{{"a1_min", w.a1_min}, {"a1_max", w.a1_max}, {"n1", w.n1},
                {"a2_min", w.a2_min}, {"a2_max", w.a2_max}, {"n2", w.n2}};
}

// --- state ------------------------------------------------------------------

struct StateArgs {
    std::string kind = "coherent";
    double a1 = 0.0, a2 = 0.0;
    double center = 0.0, width = 1.0, sep = 4.0;
    double b1 = 1.0, b2 = 1.0;
    std::string units = "dimensionless";
    double b = 1.0;
    double grid_min = -8.0, grid_max = 8.0;
    int grid_n = 512;
    std::string out;
};

int run_state(const StateArgs& a) {
    akw_state* raw = nullptr;
    if (a.kind == "coherent") {
        check(akw_state_coherent(a.a1, a.a2, a.grid_min, a.grid_max, a.grid_n, &raw));
    } else if (a.kind == "gaussian" || a.kind == "two-peak" || a.kind == "hermite1") {
        check(akw_state_test(a.kind.c_str(), a.center, a.width, a.sep,
                             a.units == "dimensioned" ? 1 : 0, a.b, a.grid_min, a.grid_max,
                             a.grid_n, &raw));
    } else if (a.kind == "d1") {
        check(akw_state_detector_d1(a.b1, a.grid_min, a.grid_max, a.grid_n, &raw));
    } else if (a.kind == "d2") {
        check(akw_state_detector_d2(a.b2, a.grid_min, a.grid_max, a.grid_n, &raw));
    } else {
        throw CliError{1, "unknown state kind: " + a.kind};
    }
    StatePtr s(raw);
    check(akw_state_save(s.get(), a.out.c_str()));
    double nrm = 0.0;
    check(akw_state_norm(s.get(), &nrm));
    flush_warnings();

    write_provenance(a.out, "state",
                     json{{"kind", a.kind}, {"a1", a.a1}, {"a2", a.a2}, {"center", a.center},
                          {"width", a.width}, {"sep", a.sep}, {"b1", a.b1}, {"b2", a.b2},
                          {"units", a.units}, {"b", a.b}, {"grid-min", a.grid_min},
                          {"grid-max", a.grid_max}, {"grid-n", a.grid_n}, {"out", a.out}});
    std::printf("state %s written to %s (n=%d, norm=%.12g)\n", a.kind.c_str(), a.out.c_str(),
                a.grid_n, nrm);
    return 0;
}

// --- measure -----------------------------------------------------------------

struct MeasureArgs {
    std::string state_file;
    std::string mode = "strong";
    double xm = 0.0, pm = 0.0;
    double lambda = 1.0;
    double b = -1.0;
    std::string out;
};

int run_measure(const MeasureArgs& a) {
    StatePtr psi = as_dimensionless(load_state(a.state_file), a.b);

    akw_state* post_raw = nullptr;
    double density = 0.0;
    if (a.mode == "strong") {
        check(akw_measure_strong(psi.get(), a.xm, a.pm, &post_raw, &density));
    } else if (a.mode == "weak") {
        check(akw_measure_weak(psi.get(), a.xm, a.pm, a.lambda, &post_raw, &density));
    } else {
        throw CliError{1, "mode must be strong or weak"};
    }
    StatePtr post(post_raw);
    check(akw_state_save(post.get(), a.out.c_str()));

    json record{{"mode", a.mode}, {"xm", a.xm}, {"pm", a.pm}, {"prob_density", density}};
    if (a.mode == "weak") {
        record["lambda"] = a.lambda;
        akw_state* strong_raw = nullptr;
        check(akw_measure_strong(psi.get(), a.xm, a.pm, &strong_raw, nullptr));
        StatePtr strong(strong_raw);
        double fid = 0.0;
        check(akw_state_fidelity(post.get(), strong.get(), &fid));
        record["fidelity_vs_strong"] = fid;
    }
    write_json(a.out + ".record.json", record);
    flush_warnings();

    write_provenance(a.out, "measure",
                     json{{"state", a.state_file}, {"mode", a.mode}, {"xm", a.xm},
                          {"pm", a.pm}, {"lambda", a.lambda}, {"out", a.out}});
    std::printf("measure %s at (%.6g, %.6g): prob_density=%.12g, post written to %s\n",
                a.mode.c_str(), a.xm, a.pm, density, a.out.c_str());
    return 0;
}

// --- dist / sample --------------------------------------------------------------

struct DistArgs {
    std::string state_file;
    std::string mode = "strong";
    double b = 1.0;
    double lambda = 1.0;
    double a1_min = 0.0, a1_max = 0.0, a2_min = 0.0, a2_max = 0.0;
    int n1 = 0, n2 = 0;
    long count = 10000;
    unsigned long long seed = 1;
    std::string out;
};

DistPtr compute_dist(const DistArgs& a, json* record) {
    StatePtr psi = load_state(a.state_file);

    const bool have_window = a.n1 > 0 && a.n2 > 0;
    akw_phase_window w{a.a1_min, a.a1_max, a.n1, a.a2_min, a.a2_max, a.n2};
    akw_dist* raw = nullptr;
    check(akw_dist_compute(psi.get(), a.mode.c_str(), a.b, a.lambda,
                           have_window ? &w : nullptr, &raw));
    DistPtr dist(raw);

    double mass = 0.0, mean_x = 0.0, mean_p = 0.0, var_x = 0.0, var_p = 0.0;
    check(akw_dist_total_mass(dist.get(), &mass));
    check(akw_dist_moments(dist.get(), &mean_x, &mean_p, &var_x, &var_p));
    akw_phase_window used{};
    check(akw_dist_window(dist.get(), &used));

    (*record)["mode"] = a.mode;
    (*record)["b"] = a.b;
    (*record)["total_mass"] = mass;
    (*record)["moments"] = {{"mean_x", mean_x}, {"mean_p", mean_p}, {"var_x", var_x},
                            {"var_p", var_p}};
    (*record)["window"] = window_json(used);

    // variance-law prediction against the input state
    akw_state* dim_raw = nullptr;
    check(akw_state_convert_units(psi.get(), 1, a.b, &dim_raw));
    StatePtr dim(dim_raw);
    double m1 = 0.0, m2 = 0.0, q1 = 0.0, q2 = 0.0;
    check(akw_state_moment(dim.get(), 'x', 1, &m1));
    check(akw_state_moment(dim.get(), 'x', 2, &m2));
    check(akw_state_moment(dim.get(), 'p', 1, &q1));
    check(akw_state_moment(dim.get(), 'p', 2, &q2));
    const double vx = m2 - m1 * m1, vp = q2 - q1 * q1;
    if (a.mode == "strong") {
        (*record)["expected_var_x"] = vx + 0.5 * a.b;
        (*record)["expected_var_p"] = vp + 0.5 / a.b;
    } else {
        (*record)["lambda"] = a.lambda;
        const double b1 = (a.lambda + 2.0) / a.lambda * a.b;
        const double b2 = a.lambda / (a.lambda + 2.0) * a.b;
        (*record)["expected_var_x"] = vx + 0.25 * (b1 + b2);
        (*record)["expected_var_p"] = vp + 0.25 / b1 + 0.25 / b2;
    }
    return dist;
}

int run_dist(const DistArgs& a) {
    json record;
    DistPtr dist = compute_dist(a, &record);
    check(akw_dist_save(dist.get(), a.out.c_str()));
    const std::string warnings = take_string(akw_take_warnings());
    if (!warnings.empty()) {
        std::cerr << "warning: " << warnings << "\n";
        record["warnings"] = warnings;
    }
    write_json(a.out + ".record.json", record);
    write_provenance(a.out, "dist",
                     json{{"state", a.state_file}, {"mode", a.mode}, {"b", a.b},
                          {"lambda", a.lambda}, {"out", a.out}, {"window", record["window"]}});
    std::printf("dist %s: total_mass=%.9g var_x=%.9g var_p=%.9g written to %s\n",
                a.mode.c_str(), record["total_mass"].get<double>(),
                record["moments"]["var_x"].get<double>(),
                record["moments"]["var_p"].get<double>(), a.out.c_str());
    return 0;
}

int run_sample(const DistArgs& a) {
    json record;
    DistPtr dist = compute_dist(a, &record);
    check(akw_dist_sample_csv(dist.get(), a.count, a.seed, a.out.c_str()));
    record["count"] = a.count;
    record["seed"] = a.seed;
    const std::string warnings = take_string(akw_take_warnings());
    if (!warnings.empty()) {
        std::cerr << "warning: " << warnings << "\n";
        record["warnings"] = warnings;
    }
    write_json(a.out + ".record.json", record);
    write_provenance(a.out, "sample",
                     json{{"state", a.state_file}, {"mode", a.mode}, {"b", a.b},
                          {"lambda", a.lambda}, {"count", a.count}, {"seed", a.seed},
                          {"out", a.out}});
    std::printf("sample %s: %ld draws (seed %llu) written to %s (mass=%.9g)\n", a.mode.c_str(),
                a.count, a.seed, a.out.c_str(), record["total_mass"].get<double>());
    return 0;
}

// --- ak ---------------------------------------------------------------------------

struct AkArgs {
    std::string state_file;
    double tau = 1.0;
    double coupling = -1.0;  // K; with --t it overrides --tau
    double duration = -1.0;  // t
    double b = 1.0;
    double lambda = -1.0;
    double b1 = -1.0, b2 = -1.0;
    int n1 = 64, n2 = 64;
    int oracle_steps = 0;
    bool short_time = false;
    double xm = 0.0, pm = 0.0;
    bool have_outcome = false;
    long samples = 0;
    unsigned long long seed = 1;
    double mem_budget_mb = 2048.0;
    std::string out;
};

int run_ak(const AkArgs& a0) {
    AkArgs a = a0;
    if (a.coupling > 0.0 && a.duration > 0.0) a.tau = a.coupling * a.duration;
    StatePtr psi = load_state(a.state_file);
    akw_state_info info{};
    check(akw_state_get_info(psi.get(), &info));
    if (!info.dimensioned) {
        akw_state* dim = nullptr;
        check(akw_state_convert_units(psi.get(), 1, a.b, &dim));
        psi.reset(dim);
    }

    akw_ak_params p = akw_ak_params_default();
    p.b = a.b;
    p.b1 = a.b1;
    p.b2 = a.b2;
    p.lambda = a.lambda;
    p.tau = a.tau;
    p.n1 = a.n1;
    p.n2 = a.n2;
    p.oracle_steps = a.oracle_steps;
    p.short_time = a.short_time ? 1 : 0;
    p.have_outcome = a.have_outcome ? 1 : 0;
    p.xm = a.xm;
    p.pm = a.pm;
    p.mem_budget_mb = a.mem_budget_mb;

    akw_dist* dist_raw = nullptr;
    akw_state* post_raw = nullptr;
    char* report_raw = nullptr;
    check(akw_ak_run(psi.get(), &p, &dist_raw, a.have_outcome ? &post_raw : nullptr,
                     &report_raw));
    DistPtr dist(dist_raw);
    StatePtr post(post_raw);
    const std::string report = take_string(report_raw);

    const std::string dist_path = a.out + "_dist.csv";
    check(akw_dist_save(dist.get(), dist_path.c_str()));
    {
        std::ofstream rep(a.out + "_report.json");
        if (!rep) throw CliError{1, "cannot write " + a.out + "_report.json"};
        rep << report << "\n";
    }
    if (post) check(akw_state_save(post.get(), (a.out + "_post.csv").c_str()));
    if (a.samples > 0)
        check(akw_dist_sample_csv(dist.get(), a.samples, a.seed,
                                  (a.out + "_samples.csv").c_str()));
    flush_warnings();

    write_provenance(a.out, "ak",
                     json{{"state", a.state_file}, {"tau", a.tau}, {"K", a.coupling},
                          {"t", a.duration}, {"b", a.b}, {"lambda", a.lambda}, {"b1", a.b1},
                          {"b2", a.b2}, {"n1", a.n1}, {"n2", a.n2},
                          {"oracle-steps", a.oracle_steps}, {"short-time", a.short_time},
                          {"xm", a.xm}, {"pm", a.pm}, {"samples", a.samples}, {"seed", a.seed},
                          {"mem-budget-mb", a.mem_budget_mb}, {"out", a.out}});
    const json rep = json::parse(report);
    std::printf("ak run tau=%.6g b1=%.6g b2=%.6g: total_mass=%.9g -> %s_{dist.csv,report.json}\n",
                a.tau, rep["b1"].get<double>(), rep["b2"].get<double>(),
                rep["total_mass"].get<double>(), a.out.c_str());
    return 0;
}

// --- gabor -----------------------------------------------------------------------

struct GaborArgs {
    std::string state_file;
    std::string field_file;
    double a1_min = -6.0, a1_max = 6.0, a2_min = -6.0, a2_max = 6.0;
    int n1 = 96, n2 = 96;
    bool density = false;
    double grid_min = -8.0, grid_max = 8.0;
    int grid_n = 512;
    std::string out;
};

int run_gabor(const std::string& action, const GaborArgs& a) {
    if (action == "forward") {
        StatePtr psi = as_dimensionless(load_state(a.state_file), -1.0);
        const akw_phase_window w{a.a1_min, a.a1_max, a.n1, a.a2_min, a.a2_max, a.n2};
        akw_field* raw = nullptr;
        check(akw_gabor_forward(psi.get(), &w, &raw));
        FieldPtr f(raw);
        check(akw_field_save(f.get(), a.out.c_str(), a.density ? 1 : 0));
        double nrm = 0.0;
        check(akw_field_norm(f.get(), &nrm));
        flush_warnings();
        write_provenance(a.out, "gabor forward",
                         json{{"state", a.state_file}, {"window", window_json(w)},
                              {"density", a.density}, {"out", a.out}});
        std::printf("gabor forward: field norm=%.12g written to %s\n", nrm, a.out.c_str());
        return 0;
    }
    akw_field* raw = nullptr;
    check(akw_field_load(a.field_file.c_str(), &raw));
    FieldPtr f(raw);
    if (action == "inverse") {
        akw_state* s = nullptr;
        check(akw_gabor_inverse(f.get(), a.grid_min, a.grid_max, a.grid_n, &s));
        StatePtr psi(s);
        check(akw_state_save(psi.get(), a.out.c_str()));
        double nrm = 0.0;
        check(akw_state_norm(psi.get(), &nrm));
        flush_warnings();
        write_provenance(a.out, "gabor inverse",
                         json{{"field", a.field_file}, {"grid-min", a.grid_min},
                              {"grid-max", a.grid_max}, {"grid-n", a.grid_n}, {"out", a.out}});
        std::printf("gabor inverse: state norm=%.12g written to %s\n", nrm, a.out.c_str());
        return 0;
    }
    // project
    akw_field* proj = nullptr;
    check(akw_gabor_project(f.get(), &proj));
    FieldPtr pf(proj);
    check(akw_field_save(pf.get(), a.out.c_str(), a.density ? 1 : 0));
    flush_warnings();
    write_provenance(a.out, "gabor project",
                     json{{"field", a.field_file}, {"density", a.density}, {"out", a.out}});
    std::printf("gabor project: field written to %s\n", a.out.c_str());
    return 0;
}

// --- verify ----------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    double b = 1.0;
    double lambda = -1.0;
    bool quick = false;
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    char* report_raw = nullptr;
    int all_passed = 0;
    check(akw_verify(a.suite.c_str(), a.b, a.lambda, a.quick ? 1 : 0, &report_raw, &all_passed));
    const std::string report = take_string(report_raw);

    int total = 0, passed = 0;
    std::istringstream lines(report);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        ++total;
        const bool ok = j["pass"].get<bool>();
        passed += ok;
        std::printf("[%s] %-42s value=%-12.6g tol=%-10.6g\n", ok ? "PASS" : "FAIL",
                    j["check_name"].get<std::string>().c_str(), j["value"].get<double>(),
                    j["tolerance"].get<double>());
    }
    if (!a.out.empty()) {
        std::ofstream rep(a.out);
        if (!rep) throw CliError{1, "cannot write " + a.out};
        rep << report;
        write_provenance(a.out, "verify",
                         json{{"suite", a.suite}, {"b", a.b}, {"lambda", a.lambda},
                              {"quick", a.quick}, {"out", a.out}});
    }
    flush_warnings();
    std::printf("verify %s: %d/%d checks passed\n", a.suite.c_str(), passed, total);
    return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"akweak: simultaneous weak position/momentum measurement simulator"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    StateArgs sa;
    CLI::App* state = app.add_subcommand("state", "build a wavefunction and write it as CSV");
    add_config_flag(state);
    state->add_option("--kind", sa.kind, "coherent|gaussian|two-peak|hermite1|d1|d2");
    state->add_option("--a1", sa.a1, "coherent center, position");
    state->add_option("--a2", sa.a2, "coherent center, momentum");
    state->add_option("--center", sa.center, "gaussian center");
    state->add_option("--width", sa.width, "gaussian width");
    state->add_option("--sep", sa.sep, "two-peak separation");
    state->add_option("--b1", sa.b1, "detector-1 width");
    state->add_option("--b2", sa.b2, "detector-2 width");
    state->add_option("--units", sa.units, "dimensionless|dimensioned");
    state->add_option("--b", sa.b, "squeezing scale for dimensioned states");
    state->add_option("--grid-min", sa.grid_min);
    state->add_option("--grid-max", sa.grid_max);
    state->add_option("--grid-n", sa.grid_n);
    state->add_option("--out", sa.out, "output CSV path")->required();

    MeasureArgs ma;
    CLI::App* measure = app.add_subcommand("measure", "apply a simultaneous measurement");
    add_config_flag(measure);
    measure->add_option("--state", ma.state_file, "input state CSV")->required();
    measure->add_option("--mode", ma.mode, "strong|weak");
    measure->add_option("--xm", ma.xm, "measured position");
    measure->add_option("--pm", ma.pm, "measured momentum");
    measure->add_option("--lambda", ma.lambda, "weakness parameter");
    measure->add_option("--b", ma.b, "b for converting dimensioned inputs");
    measure->add_option("--out", ma.out, "post-state CSV path")->required();

    DistArgs da;
    CLI::App* dist = app.add_subcommand("dist", "joint outcome distribution");
    add_config_flag(dist);
    auto add_dist_options = [](CLI::App* cmd, DistArgs& d) {
        cmd->add_option("--state", d.state_file, "input state CSV")->required();
        cmd->add_option("--mode", d.mode, "strong|weak");
        cmd->add_option("--b", d.b, "squeezing scale");
        cmd->add_option("--lambda", d.lambda, "weakness parameter (weak mode)");
        cmd->add_option("--a1-min", d.a1_min);
        cmd->add_option("--a1-max", d.a1_max);
        cmd->add_option("--n1", d.n1, "outcome cells in x_m (0: auto window)");
        cmd->add_option("--a2-min", d.a2_min);
        cmd->add_option("--a2-max", d.a2_max);
        cmd->add_option("--n2", d.n2, "outcome cells in p_m (0: auto window)");
        cmd->add_option("--out", d.out, "output CSV path")->required();
    };
    add_dist_options(dist, da);

    DistArgs smp;
    CLI::App* sample = app.add_subcommand("sample", "seeded draws from the outcome distribution");
    add_config_flag(sample);
    add_dist_options(sample, smp);
    sample->add_option("--count", smp.count, "number of draws");
    sample->add_option("--seed", smp.seed, "RNG seed");

    AkArgs aa;
    CLI::App* ak = app.add_subcommand("ak", "run the two-detector protocol");
    add_config_flag(ak);
    ak->add_option("--state", aa.state_file, "input state CSV")->required();
    ak->add_option("--tau", aa.tau, "interaction K*t");
    ak->add_option("--K", aa.coupling, "coupling strength; with --t overrides --tau");
    ak->add_option("--t", aa.duration, "interaction duration");
    ak->add_option("--b", aa.b, "squeezing scale");
    ak->add_option("--lambda", aa.lambda, "detector widths from the weakness mapping");
    ak->add_option("--b1", aa.b1, "detector-1 width (overrides lambda)");
    ak->add_option("--b2", aa.b2, "detector-2 width (overrides lambda)");
    ak->add_option("--n1", aa.n1, "detector-1 grid points");
    ak->add_option("--n2", aa.n2, "detector-2 grid points");
    ak->add_option("--oracle-steps,--steps", aa.oracle_steps,
                   "split-step comparison steps (0: off)");
    ak->add_flag("--short-time", aa.short_time, "compare against the short-time formula");
    ak->add_option("--xm", aa.xm, "readout position")->needs(
        ak->add_flag("--outcome", aa.have_outcome, "read out at (xm, pm)"));
    ak->add_option("--pm", aa.pm, "readout momentum");
    ak->add_option("--samples", aa.samples, "draws from the readout distribution (0: off)");
    ak->add_option("--seed", aa.seed, "RNG seed for --samples");
    ak->add_option("--mem-budget-mb", aa.mem_budget_mb, "refuse larger 3D runs");
    ak->add_option("--out", aa.out, "output prefix")->required();

    GaborArgs gf, gi, gp;
    CLI::App* gabor = app.add_subcommand("gabor", "phase-space transform tools");
    gabor->require_subcommand(1);
    CLI::App* gfwd = gabor->add_subcommand("forward", "state -> field");
    add_config_flag(gfwd);
    gfwd->add_option("--state", gf.state_file)->required();
    gfwd->add_option("--a1-min", gf.a1_min);
    gfwd->add_option("--a1-max", gf.a1_max);
    gfwd->add_option("--n1", gf.n1);
    gfwd->add_option("--a2-min", gf.a2_min);
    gfwd->add_option("--a2-max", gf.a2_max);
    gfwd->add_option("--n2", gf.n2);
    gfwd->add_flag("--density", gf.density, "write |F|^2 instead of amplitudes");
    gfwd->add_option("--out", gf.out)->required();
    CLI::App* ginv = gabor->add_subcommand("inverse", "field -> state");
    add_config_flag(ginv);
    ginv->add_option("--field", gi.field_file)->required();
    ginv->add_option("--grid-min", gi.grid_min);
    ginv->add_option("--grid-max", gi.grid_max);
    ginv->add_option("--grid-n", gi.grid_n);
    ginv->add_option("--out", gi.out)->required();
    CLI::App* gproj = gabor->add_subcommand("project", "field -> projected field");
    add_config_flag(gproj);
    gproj->add_option("--field", gp.field_file)->required();
    gproj->add_flag("--density", gp.density, "write |F|^2 instead of amplitudes");
    gproj->add_option("--out", gp.out)->required();

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run the verification battery");
    add_config_flag(verify);
    verify->add_option("--suite", va.suite,
                       "all|gabor|povm|limits|variance|ak-equivalence|short-time|sampling");
    verify->add_option("--b", va.b, "squeezing scale");
    verify->add_option("--lambda", va.lambda, "restrict swept checks to one value");
    verify->add_flag("--quick", va.quick, "smaller grids");
    verify->add_option("--out", va.out, "JSONL report path");

    try {
        std::vector<std::string> tokens = expand_config(argc, argv);
        std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
        app.parse(tokens);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    }

    try {
        if (*state) return run_state(sa);
        if (*measure) return run_measure(ma);
        if (*dist) return run_dist(da);
        if (*sample) return run_sample(smp);
        if (*ak) return run_ak(aa);
        if (*gabor) {
            if (gabor->get_subcommand("forward")->parsed()) return run_gabor("forward", gf);
            if (gabor->get_subcommand("inverse")->parsed()) return run_gabor("inverse", gi);
            return run_gabor("project", gp);
        }
        if (*verify) return run_verify(va);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
