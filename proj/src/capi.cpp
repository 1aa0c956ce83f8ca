#include "akweak.h"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "akweak/ak.hpp"
#include "akweak/gabor.hpp"
#include "akweak/io.hpp"
#include "akweak/kraus.hpp"
#include "akweak/verify.hpp"
#include "akweak/version.hpp"
#include "warn.hpp"

using nlohmann::json;

struct akw_state {
    akweak::WaveFunction psi;
};
struct akw_field {
    akweak::GaborField field;
};
struct akw_dist {
    akweak::JointDistribution dist;
};

namespace {

thread_local std::string g_error;

template <typename Fn>
akw_status guarded(Fn&& fn) {
    try {
        fn();
        return AKW_OK;
    } catch (const akweak::ResourceError& e) {
        g_error = e.what();
        return AKW_ERESOURCE;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return AKW_EINVAL;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return AKW_ERESOURCE;
    } catch (const std::exception& e) {
        g_error = e.what();
        return AKW_EIO;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename T>
void require(T* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string("null ") + what);
}

akweak::PhaseGrid to_phase_grid(const akw_phase_window& w) {
    return akweak::make_phase_grid(w.a1_min, w.a1_max, w.n1, w.a2_min, w.a2_max, w.n2);
}

akw_phase_window from_phase_grid(const akweak::PhaseGrid& g) {
    return akw_phase_window{g.a1_min, g.a1_max, g.n1, g.a2_min, g.a2_max, g.n2};
}

}  // namespace

extern "C" {

const char* akw_version(void) { return akweak::kVersion; }

const char* akw_last_error(void) { return g_error.c_str(); }

char* akw_take_warnings(void) {
    const auto warnings = akweak::drain_warnings();
    if (warnings.empty()) return nullptr;
    std::string joined;
    for (size_t i = 0; i < warnings.size(); ++i) {
        joined += warnings[i];
        if (i + 1 < warnings.size()) joined += '\n';
    }
    return dup_string(joined);
}

void akw_string_free(char* s) { std::free(s); }

akw_status akw_state_coherent(double a1, double a2, double x_min, double x_max, int n,
                              akw_state** out) {
    return guarded([&] {
        require(out, "output");
        const auto g = akweak::make_grid(x_min, x_max, n);
        *out = new akw_state{akweak::coherent_state({a1, a2}, g)};
    });
}

akw_status akw_state_test(const char* kind, double center, double width, double sep,
                          int dimensioned, double b, double x_min, double x_max, int n,
                          akw_state** out) {
    return guarded([&] {
        require(out, "output");
        require(kind, "kind");
        akweak::TestStateSpec spec;
        const std::string k = kind;
        if (k == "gaussian") {
            spec.kind = akweak::TestStateKind::Gaussian;
            spec.center = center;
            spec.width = width;
        } else if (k == "two-peak") {
            spec.kind = akweak::TestStateKind::TwoPeak;
            spec.sep = sep;
        } else if (k == "hermite1") {
            spec.kind = akweak::TestStateKind::Hermite1;
        } else {
            throw std::invalid_argument("unknown state kind: " + k);
        }
        const auto units = dimensioned ? akweak::UnitSystem::dimensioned(b)
                                       : akweak::UnitSystem::dimensionless();
        const auto g = akweak::make_grid(x_min, x_max, n);
        *out = new akw_state{akweak::make_test_state(spec, g, units)};
    });
}

akw_status akw_state_detector_d1(double b1, double x_min, double x_max, int n,
                                 akw_state** out) {
    return guarded([&] {
        require(out, "output");
        *out = new akw_state{akweak::detector_d1(b1, akweak::make_grid(x_min, x_max, n))};
    });
}

akw_status akw_state_detector_d2(double b2, double x_min, double x_max, int n,
                                 akw_state** out) {
    return guarded([&] {
        require(out, "output");
        *out = new akw_state{
            akweak::detector_d2_momentum(b2, akweak::make_grid(x_min, x_max, n))};
    });
}

akw_status akw_state_load(const char* csv_path, akw_state** out) {
    return guarded([&] {
        require(out, "output");
        require(csv_path, "path");
        *out = new akw_state{akweak::load_state(csv_path)};
    });
}

akw_status akw_state_save(const akw_state* s, const char* csv_path) {
    return guarded([&] {
        require(s, "state");
        require(csv_path, "path");
        akweak::save_state(s->psi, csv_path);
    });
}

void akw_state_free(akw_state* s) { delete s; }

akw_status akw_state_get_info(const akw_state* s, akw_state_info* out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output");
        out->n = s->psi.grid.n;
        out->x_min = s->psi.grid.x_min;
        out->x_max = s->psi.grid.x_max;
        out->dimensioned = s->psi.units.kind == akweak::Units::Dimensioned ? 1 : 0;
        out->b = s->psi.units.b;
        out->momentum_rep = s->psi.rep == akweak::Rep::Momentum ? 1 : 0;
    });
}

akw_status akw_state_norm(const akw_state* s, double* out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output");
        *out = akweak::norm(s->psi);
    });
}

akw_status akw_state_moment(const akw_state* s, char obs, int order, double* out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output");
        if (obs != 'x' && obs != 'p') throw std::invalid_argument("observable must be x or p");
        *out = akweak::moment(s->psi, obs == 'x' ? akweak::Observable::X : akweak::Observable::P,
                              order);
    });
}

akw_status akw_state_fidelity(const akw_state* a, const akw_state* b, double* out) {
    return guarded([&] {
        require(a, "state");
        require(b, "state");
        require(out, "output");
        *out = akweak::fidelity(a->psi, b->psi);
    });
}

akw_status akw_state_convert_units(const akw_state* s, int to_dimensioned, double b,
                                   akw_state** out) {
    return guarded([&] {
        require(s, "state");
        require(out, "output");
        const auto target = to_dimensioned ? akweak::UnitSystem::dimensioned(b)
                                           : akweak::UnitSystem::dimensionless();
        *out = new akw_state{akweak::convert_units(s->psi, target)};
    });
}

akw_status akw_measure_strong(const akw_state* psi, double xm, double pm, akw_state** post,
                              double* prob_density) {
    return guarded([&] {
        require(psi, "state");
        auto r = akweak::strong_kraus_apply(psi->psi, {xm, pm});
        if (prob_density) *prob_density = r.prob_density;
        if (post) *post = new akw_state{std::move(r.post)};
    });
}

akw_status akw_measure_weak(const akw_state* psi, double xm, double pm, double lambda,
                            akw_state** post, double* prob_density) {
    return guarded([&] {
        require(psi, "state");
        auto r = akweak::weak_kraus_apply(psi->psi, {xm, pm}, lambda);
        if (prob_density) *prob_density = r.prob_density;
        if (post) *post = new akw_state{std::move(r.post)};
    });
}

akw_status akw_weak_normalization(double lambda, double* out) {
    return guarded([&] {
        require(out, "output");
        *out = akweak::weak_kraus_normalization(lambda);
    });
}

akw_status akw_dist_compute(const akw_state* psi, const char* mode, double b, double lambda,
                            const akw_phase_window* window, akw_dist** out) {
    return guarded([&] {
        require(psi, "state");
        require(mode, "mode");
        require(out, "output");
        const std::string m = mode;
        akweak::MeasurementMode mm = m == "strong" ? akweak::MeasurementMode::strong(b)
                                     : m == "weak" ? akweak::MeasurementMode::weak(b, lambda)
                                                   : throw std::invalid_argument(
                                                         "mode must be strong or weak");
        const akweak::PhaseGrid pg = window ? to_phase_grid(*window)
                                            : akweak::suggest_outcome_grid(psi->psi, mm);
        *out = new akw_dist{akweak::joint_distribution(psi->psi, mm, pg)};
    });
}

akw_status akw_dist_total_mass(const akw_dist* d, double* out) {
    return guarded([&] {
        require(d, "distribution");
        require(out, "output");
        *out = d->dist.total_mass();
    });
}

akw_status akw_dist_moments(const akw_dist* d, double* mean_x, double* mean_p, double* var_x,
                            double* var_p) {
    return guarded([&] {
        require(d, "distribution");
        const auto m = akweak::distribution_moments(d->dist);
        if (mean_x) *mean_x = m.mean_x;
        if (mean_p) *mean_p = m.mean_p;
        if (var_x) *var_x = m.var_x;
        if (var_p) *var_p = m.var_p;
    });
}

akw_status akw_dist_window(const akw_dist* d, akw_phase_window* out) {
    return guarded([&] {
        require(d, "distribution");
        require(out, "output");
        *out = from_phase_grid(d->dist.pgrid);
    });
}

akw_status akw_dist_save(const akw_dist* d, const char* csv_path) {
    return guarded([&] {
        require(d, "distribution");
        require(csv_path, "path");
        akweak::save_distribution(d->dist, csv_path);
    });
}

akw_status akw_dist_sample_csv(const akw_dist* d, long count, unsigned long long seed,
                               const char* csv_path) {
    return guarded([&] {
        require(d, "distribution");
        require(csv_path, "path");
        akweak::save_samples(akweak::sample_outcomes(d->dist, count, seed), csv_path);
    });
}

void akw_dist_free(akw_dist* d) { delete d; }

akw_status akw_gabor_forward(const akw_state* psi, const akw_phase_window* window,
                             akw_field** out) {
    return guarded([&] {
        require(psi, "state");
        require(out, "output");
        const akweak::PhaseGrid pg =
            window ? to_phase_grid(*window)
                   : akweak::make_phase_grid(-6.0, 6.0, 96, -6.0, 6.0, 96);
        *out = new akw_field{akweak::gabor_forward(psi->psi, pg)};
    });
}

akw_status akw_gabor_inverse(const akw_field* f, double x_min, double x_max, int n,
                             akw_state** out) {
    return guarded([&] {
        require(f, "field");
        require(out, "output");
        *out = new akw_state{
            akweak::gabor_inverse(f->field, akweak::make_grid(x_min, x_max, n))};
    });
}

akw_status akw_gabor_project(const akw_field* f, akw_field** out) {
    return guarded([&] {
        require(f, "field");
        require(out, "output");
        *out = new akw_field{akweak::project_gabor(f->field)};
    });
}

akw_status akw_field_norm(const akw_field* f, double* out) {
    return guarded([&] {
        require(f, "field");
        require(out, "output");
        *out = akweak::gabor_norm(f->field);
    });
}

akw_status akw_field_save(const akw_field* f, const char* csv_path, int as_density) {
    return guarded([&] {
        require(f, "field");
        require(csv_path, "path");
        akweak::save_field(f->field, csv_path, as_density != 0);
    });
}

akw_status akw_field_load(const char* csv_path, akw_field** out) {
    return guarded([&] {
        require(csv_path, "path");
        require(out, "output");
        *out = new akw_field{akweak::load_field(csv_path)};
    });
}

void akw_field_free(akw_field* f) { delete f; }

akw_ak_params akw_ak_params_default(void) {
    akw_ak_params p;
    p.b = 1.0;
    p.b1 = -1.0;
    p.b2 = -1.0;
    p.lambda = -1.0;
    p.tau = 1.0;
    p.n1 = 64;
    p.n2 = 64;
    p.oracle_steps = 0;
    p.short_time = 0;
    p.have_outcome = 0;
    p.xm = 0.0;
    p.pm = 0.0;
    p.mem_budget_mb = 2048.0;
    return p;
}

akw_status akw_ak_run(const akw_state* psi_b, const akw_ak_params* params, akw_dist** dist_out,
                      akw_state** post_out, char** report_json) {
    return guarded([&] {
        require(psi_b, "state");
        require(params, "params");
        akweak::AkRunConfig cfg;
        cfg.b = params->b;
        cfg.b1 = params->b1;
        cfg.b2 = params->b2;
        cfg.lambda = params->lambda;
        cfg.tau = params->tau;
        cfg.n1 = params->n1;
        cfg.n2 = params->n2;
        cfg.oracle_steps = params->oracle_steps;
        cfg.short_time = params->short_time != 0;
        cfg.have_outcome = params->have_outcome != 0;
        cfg.xm = params->xm;
        cfg.pm = params->pm;
        cfg.mem_budget_mb = params->mem_budget_mb;

        auto out = akweak::ak_run(psi_b->psi, cfg);

        if (report_json) {
            const auto& r = out.report;
            json j;
            j["tau"] = r.tau;
            j["b"] = r.b;
            j["b1"] = r.b1;
            j["b2"] = r.b2;
            if (r.lambda > 0.0) j["lambda"] = r.lambda;
            j["total_mass"] = r.total_mass;
            j["moments"] = {{"mean_x", r.moments.mean_x},
                            {"mean_p", r.moments.mean_p},
                            {"var_x", r.moments.var_x},
                            {"var_p", r.moments.var_p}};
            if (std::isfinite(r.expected_var_x)) {
                j["expected_var_x"] = r.expected_var_x;
                j["expected_var_p"] = r.expected_var_p;
            }
            j["mean_x_expected"] = r.mean_x_expected;
            j["mean_p_expected"] = r.mean_p_expected;
            if (r.readout_density >= 0.0) j["readout_density"] = r.readout_density;
            if (r.closed_form_fidelity >= 0.0)
                j["closed_form_fidelity"] = r.closed_form_fidelity;
            if (r.short_time_fidelity >= 0.0) j["short_time_fidelity"] = r.short_time_fidelity;
            if (r.oracle_fidelity >= 0.0) j["oracle_fidelity"] = r.oracle_fidelity;
            *report_json = dup_string(j.dump(2));
        }
        if (post_out && out.have_post) *post_out = new akw_state{std::move(out.post)};
        if (dist_out) *dist_out = new akw_dist{std::move(out.dist)};
    });
}

akw_status akw_verify(const char* suite, double b, double lambda, int quick,
                      char** report_jsonl, int* all_passed) {
    return guarded([&] {
        require(suite, "suite");
        akweak::VerifyOptions opt;
        opt.b = b > 0.0 ? b : 1.0;
        opt.lambda_override = lambda;
        opt.quick = quick != 0;
        const auto checks = akweak::run_verify_suite(suite, opt);
        if (all_passed) *all_passed = akweak::all_pass(checks) ? 1 : 0;
        if (report_jsonl) {
            std::ostringstream os;
            for (const auto& c : checks) {
                json j;
                j["check_name"] = c.name;
                j["value"] = c.value;
                j["tolerance"] = c.tolerance;
                j["pass"] = c.pass;
                if (!c.detail.empty()) j["detail"] = c.detail;
                os << j.dump() << '\n';
            }
            *report_jsonl = dup_string(os.str());
        }
    });
}

}  // extern "C"
