#include "minkcurve.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "minkcurve/characterize.hpp"
#include "minkcurve/synthesize.hpp"
#include "minkcurve/verify.hpp"

struct mink_curve {
    mink::CurveDef def;
};

struct mink_report {
    mink_verdict verdict = MINK_VERDICT_INCONCLUSIVE;
    mink_constancy constancy = MINK_CONSTANCY_INCONCLUSIVE;
    size_t size = 0;
    int dropped = 0;
    std::string json;
};

struct mink_samples {
    mink::SampledCurve curve;
};

namespace {

thread_local std::string g_last_error;

mink_status map_code(mink::Errc code) {
    using mink::Errc;
    switch (code) {
        case Errc::parse: return MINK_ERR_PARSE;
        case Errc::unknown_function: return MINK_ERR_UNKNOWN_FUNCTION;
        case Errc::unbound_variable: return MINK_ERR_UNBOUND_VARIABLE;
        case Errc::domain: return MINK_ERR_DOMAIN;
        case Errc::pole: return MINK_ERR_POLE;
        case Errc::degenerate_curvature: return MINK_ERR_DEGENERATE_CURVATURE;
        case Errc::lightlike_normal: return MINK_ERR_LIGHTLIKE_NORMAL;
        case Errc::straight_null_line: return MINK_ERR_STRAIGHT_NULL_LINE;
        case Errc::degenerate_frame: return MINK_ERR_DEGENERATE_FRAME;
        case Errc::not_normalized: return MINK_ERR_NOT_NORMALIZED;
        case Errc::precondition: return MINK_ERR_PRECONDITION;
        case Errc::kappa_not_one: return MINK_ERR_KAPPA_NOT_ONE;
        case Errc::sigma_singular: return MINK_ERR_SIGMA_SINGULAR;
        case Errc::range: return MINK_ERR_RANGE;
        case Errc::empty_grid: return MINK_ERR_EMPTY_GRID;
        case Errc::insufficient_samples: return MINK_ERR_INSUFFICIENT_SAMPLES;
        case Errc::no_convergence: return MINK_ERR_NO_CONVERGENCE;
        case Errc::frame_blowup: return MINK_ERR_FRAME_BLOWUP;
        case Errc::invalid_argument: return MINK_ERR_INVALID_ARGUMENT;
        case Errc::internal: return MINK_ERR_INTERNAL;
    }
    return MINK_ERR_INTERNAL;
}

template <class F>
mink_status wrap(F&& body) noexcept {
    try {
        body();
        return MINK_OK;
    } catch (const mink::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MINK_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MINK_ERR_INTERNAL;
    }
}

mink_status require(bool ok, const char* what) {
    if (ok) return MINK_OK;
    g_last_error = what;
    return MINK_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void copy_vec(double out[3], const mink::Vec3& v) {
    out[0] = v.x0;
    out[1] = v.x1;
    out[2] = v.x2;
}

mink::Vec3 read_vec(const double in[3]) { return {in[0], in[1], in[2]}; }

mink::TorsionFamily to_family(const mink_torsion_family& f) {
    using Case = mink::TorsionFamily::Case;
    switch (f.family_case) {
        case MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE:
            return mink::TorsionFamily::spacelike_sn_or_timelike(f.b, f.c, f.sign, f.inner_sign);
        case MINK_FAMILY_SPACELIKE_TN:
            return mink::TorsionFamily::spacelike_tn(f.b, f.c, f.sign);
        case MINK_FAMILY_NULL_SLANT: return mink::TorsionFamily::null_slant(f.a, f.b, f.c);
        case MINK_FAMILY_SALKOWSKI_I:
            return mink::TorsionFamily::salkowski(Case::SalkowskiI, f.phi, f.sign);
        case MINK_FAMILY_SALKOWSKI_II:
            return mink::TorsionFamily::salkowski(Case::SalkowskiII, f.phi, f.sign);
        case MINK_FAMILY_SALKOWSKI_III:
            return mink::TorsionFamily::salkowski(Case::SalkowskiIII, f.phi, f.sign);
    }
    mink::fail(mink::Errc::invalid_argument, "unknown torsion family case");
}

mink_torsion_family from_family(const mink::TorsionFamily& f) {
    using Case = mink::TorsionFamily::Case;
    mink_torsion_family out{};
    switch (f.family_case) {
        case Case::SpacelikeSNOrTimelike:
            out.family_case = MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE;
            break;
        case Case::SpacelikeTN: out.family_case = MINK_FAMILY_SPACELIKE_TN; break;
        case Case::NullSlant: out.family_case = MINK_FAMILY_NULL_SLANT; break;
        case Case::SalkowskiI: out.family_case = MINK_FAMILY_SALKOWSKI_I; break;
        case Case::SalkowskiII: out.family_case = MINK_FAMILY_SALKOWSKI_II; break;
        case Case::SalkowskiIII: out.family_case = MINK_FAMILY_SALKOWSKI_III; break;
    }
    out.a = f.a;
    out.b = f.b;
    out.c = f.c;
    out.phi = f.phi;
    out.sign = f.sign;
    out.inner_sign = f.inner_sign;
    return out;
}

mink::TorsionFamily::Case to_family_case(mink_family_case c) {
    using Case = mink::TorsionFamily::Case;
    switch (c) {
        case MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE: return Case::SpacelikeSNOrTimelike;
        case MINK_FAMILY_SPACELIKE_TN: return Case::SpacelikeTN;
        case MINK_FAMILY_NULL_SLANT: return Case::NullSlant;
        case MINK_FAMILY_SALKOWSKI_I: return Case::SalkowskiI;
        case MINK_FAMILY_SALKOWSKI_II: return Case::SalkowskiII;
        case MINK_FAMILY_SALKOWSKI_III: return Case::SalkowskiIII;
    }
    mink::fail(mink::Errc::invalid_argument, "unknown torsion family case");
}

mink::CausalSignature to_signature(mink_signature sig) {
    switch (sig) {
        case MINK_SIG_TIMELIKE: return mink::CausalSignature::timelike();
        case MINK_SIG_SPACELIKE_SN: return mink::CausalSignature::spacelike_sn();
        case MINK_SIG_SPACELIKE_TN: return mink::CausalSignature::spacelike_tn();
        case MINK_SIG_NULL: return mink::CausalSignature::lightlike();
    }
    mink::fail(mink::Errc::invalid_argument, "unknown causal signature");
}

mink::FrameState to_state(const mink_frame_state& st) {
    mink::FrameState out;
    out.s = st.s;
    out.position = read_vec(st.position);
    out.T = read_vec(st.T);
    out.N = read_vec(st.N);
    out.B = read_vec(st.B);
    return out;
}

void from_state(mink_frame_state* out, const mink::FrameState& st) {
    out->s = st.s;
    copy_vec(out->position, st.position);
    copy_vec(out->T, st.T);
    copy_vec(out->N, st.N);
    copy_vec(out->B, st.B);
}

mink_verdict map_verdict(mink::Verdict v) {
    switch (v) {
        case mink::Verdict::Vanishes: return MINK_VERDICT_VANISHES;
        case mink::Verdict::NonVanishing: return MINK_VERDICT_NON_VANISHING;
        case mink::Verdict::Inconclusive: return MINK_VERDICT_INCONCLUSIVE;
    }
    return MINK_VERDICT_INCONCLUSIVE;
}

} // namespace

extern "C" {

const char* mink_status_name(mink_status status) {
    switch (status) {
        case MINK_OK: return "ok";
        case MINK_ERR_PARSE: return "parse";
        case MINK_ERR_UNKNOWN_FUNCTION: return "unknown_function";
        case MINK_ERR_UNBOUND_VARIABLE: return "unbound_variable";
        case MINK_ERR_DOMAIN: return "domain";
        case MINK_ERR_POLE: return "pole";
        case MINK_ERR_DEGENERATE_CURVATURE: return "degenerate_curvature";
        case MINK_ERR_LIGHTLIKE_NORMAL: return "lightlike_normal";
        case MINK_ERR_STRAIGHT_NULL_LINE: return "straight_null_line";
        case MINK_ERR_DEGENERATE_FRAME: return "degenerate_frame";
        case MINK_ERR_NOT_NORMALIZED: return "not_normalized";
        case MINK_ERR_PRECONDITION: return "precondition";
        case MINK_ERR_KAPPA_NOT_ONE: return "kappa_not_one";
        case MINK_ERR_SIGMA_SINGULAR: return "sigma_singular";
        case MINK_ERR_RANGE: return "range";
        case MINK_ERR_EMPTY_GRID: return "empty_grid";
        case MINK_ERR_INSUFFICIENT_SAMPLES: return "insufficient_samples";
        case MINK_ERR_NO_CONVERGENCE: return "no_convergence";
        case MINK_ERR_FRAME_BLOWUP: return "frame_blowup";
        case MINK_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case MINK_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* mink_last_error(void) { return g_last_error.c_str(); }

const char* mink_version(void) { return "1.0.0"; }

void mink_string_free(char* s) { std::free(s); }

mink_status mink_curve_parse(const char* text, double s_min, double s_max, const double* excluded,
                             size_t n_excluded, mink_curve** out) {
    if (auto st = require(text && out && (excluded || n_excluded == 0),
                          "mink_curve_parse: null argument"))
        return st;
    *out = nullptr;
    return wrap([&] {
        std::vector<double> ex(excluded, excluded + n_excluded);
        auto def = mink::CurveDef::parse(text, {s_min, s_max}, std::move(ex));
        *out = new mink_curve{std::move(def)};
    });
}

void mink_curve_free(mink_curve* curve) { delete curve; }

mink_status mink_curve_print(const mink_curve* curve, char** out) {
    if (auto st = require(curve && out, "mink_curve_print: null argument")) return st;
    return wrap([&] { *out = copy_string(curve->def.to_string()); });
}

mink_status mink_curve_derivatives(const mink_curve* curve, double s, int k_max,
                                   double (*out)[3]) {
    if (auto st = require(curve && out && k_max >= 0, "mink_curve_derivatives: bad argument"))
        return st;
    return wrap([&] {
        const auto d = curve->def.eval_derivatives(s, k_max);
        for (int k = 0; k <= k_max; ++k) copy_vec(out[k], d[static_cast<size_t>(k)]);
    });
}

mink_status mink_classify(const mink_curve* curve, double s, mink_classification* out) {
    if (auto st = require(curve && out, "mink_classify: null argument")) return st;
    return wrap([&] {
        const mink::Classification c = mink::classify_curve(curve->def, s);
        out->curve_class = static_cast<mink_curve_class>(c.cls);
        out->g_tangent = c.g_tangent;
        out->g_accel = c.g_accel;
        out->eps_T = c.eps_T.value();
        out->degenerate_curvature = c.degenerate_curvature ? 1 : 0;
    });
}

const char* mink_curve_class_name(mink_curve_class c) {
    return mink::to_string(static_cast<mink::CurveClass>(c));
}

mink_status mink_frenet(const mink_curve* curve, double s, mink_frenet_apparatus* out) {
    if (auto st = require(curve && out, "mink_frenet: null argument")) return st;
    return wrap([&] {
        const mink::FrenetApparatus f = mink::nonnull_frenet(curve->def, s);
        copy_vec(out->T, f.T);
        copy_vec(out->N, f.N);
        copy_vec(out->B, f.B);
        out->kappa = f.kappa;
        out->tau = f.tau;
        out->eps_T = f.eps_T.value();
        out->eps_N = f.eps_N.value();
        out->eps_B = f.eps_B.value();
    });
}

mink_status mink_cartan(const mink_curve* curve, double s, mink_cartan_apparatus* out) {
    if (auto st = require(curve && out, "mink_cartan: null argument")) return st;
    return wrap([&] {
        const mink::CartanApparatus f = mink::null_cartan(curve->def, s);
        copy_vec(out->T, f.T);
        copy_vec(out->N, f.N);
        copy_vec(out->B, f.B);
        out->kappa = f.kappa;
        out->tau = f.tau;
    });
}

mink_status mink_detect_det(const mink_curve* curve, int k, const double* grid, size_t n,
                            mink_report** out) {
    if (auto st = require(curve && grid && out, "mink_detect_det: null argument")) return st;
    *out = nullptr;
    return wrap([&] {
        const std::vector<double> g(grid, grid + n);
        const mink::ResidualReport r = mink::det_k(curve->def, k, g);
        auto* rep = new mink_report;
        rep->verdict = map_verdict(r.verdict);
        rep->size = r.values.size();
        rep->dropped = r.dropped_points;
        rep->json = r.to_json();
        *out = rep;
    });
}

mink_status mink_slant_sigma(const mink_curve* curve, const double* grid, size_t n,
                             mink_report** out) {
    if (auto st = require(curve && grid && out, "mink_slant_sigma: null argument")) return st;
    *out = nullptr;
    return wrap([&] {
        const std::vector<double> g(grid, grid + n);
        const mink::SigmaReport r = mink::slant_report(curve->def, g);
        auto* rep = new mink_report;
        switch (r.verdict) {
            case mink::Constancy::Constant: rep->constancy = MINK_CONSTANCY_CONSTANT; break;
            case mink::Constancy::NonConstant:
                rep->constancy = MINK_CONSTANCY_NON_CONSTANT;
                break;
            case mink::Constancy::Inconclusive:
                rep->constancy = MINK_CONSTANCY_INCONCLUSIVE;
                break;
        }
        rep->size = r.values.size();
        rep->dropped = r.dropped_points;
        rep->json = r.to_json();
        *out = rep;
    });
}

mink_verdict mink_report_verdict(const mink_report* report) {
    return report ? report->verdict : MINK_VERDICT_INCONCLUSIVE;
}

mink_constancy mink_report_constancy(const mink_report* report) {
    return report ? report->constancy : MINK_CONSTANCY_INCONCLUSIVE;
}

size_t mink_report_size(const mink_report* report) { return report ? report->size : 0; }

int mink_report_dropped(const mink_report* report) { return report ? report->dropped : 0; }

const char* mink_report_json(const mink_report* report) {
    return report ? report->json.c_str() : "";
}

void mink_report_free(mink_report* report) { delete report; }

mink_status mink_family_eval(const mink_torsion_family* family, double s, double* out) {
    if (auto st = require(family && out, "mink_family_eval: null argument")) return st;
    return wrap([&] { *out = to_family(*family).eval(s); });
}

mink_status mink_family_residual(const mink_torsion_family* family, const double* grid, size_t n,
                                 mink_report** out) {
    if (auto st = require(family && grid && out, "mink_family_residual: null argument")) return st;
    *out = nullptr;
    return wrap([&] {
        const std::vector<double> g(grid, grid + n);
        const mink::ResidualReport r = mink::family_ode_residual(to_family(*family), g);
        auto* rep = new mink_report;
        rep->verdict = map_verdict(r.verdict);
        rep->size = r.values.size();
        rep->dropped = r.dropped_points;
        rep->json = r.to_json();
        *out = rep;
    });
}

mink_status mink_fit_family(const double* s, const double* tau, size_t n,
                            mink_family_case family_case, mink_fit_result* out) {
    if (auto st = require(s && tau && out, "mink_fit_family: null argument")) return st;
    return wrap([&] {
        std::vector<std::pair<double, double>> samples;
        samples.reserve(n);
        for (size_t i = 0; i < n; ++i) samples.emplace_back(s[i], tau[i]);
        const mink::FitResult r = mink::fit_torsion_family(samples, to_family_case(family_case));
        out->family = from_family(r.family);
        out->rms = r.rms;
        out->iterations = r.iterations;
    });
}

mink_status mink_canonical_frame(mink_signature sig, double s0, mink_frame_state* out) {
    if (auto st = require(out != nullptr, "mink_canonical_frame: null argument")) return st;
    return wrap([&] { from_state(out, mink::canonical_frame(to_signature(sig), s0)); });
}

mink_status mink_integrate_family(mink_signature sig, const mink_torsion_family* family,
                                  const mink_frame_state* initial, double s_end, double step,
                                  mink_samples** out) {
    if (auto st = require(family && initial && out, "mink_integrate_family: null argument"))
        return st;
    *out = nullptr;
    return wrap([&] {
        auto curve = mink::integrate_frame(to_signature(sig), to_family(*family),
                                           to_state(*initial), {initial->s, s_end}, step);
        *out = new mink_samples{std::move(curve)};
    });
}

mink_status mink_integrate_expr(mink_signature sig, const char* tau_expr,
                                const mink_frame_state* initial, double s_end, double step,
                                mink_samples** out) {
    if (auto st = require(tau_expr && initial && out, "mink_integrate_expr: null argument"))
        return st;
    *out = nullptr;
    return wrap([&] {
        const mink::ExprPtr e = mink::parse_expr(tau_expr);
        auto curve = mink::integrate_frame(
            to_signature(sig),
            [e](double s) { return mink::eval(*e, mink::Jet::variable(s, 0)).value(); },
            to_state(*initial), {initial->s, s_end}, step);
        curve.tau_label = tau_expr;
        *out = new mink_samples{std::move(curve)};
    });
}

mink_status mink_make_salkowski(int salkowski_case, double phi, double s_lo, double s_hi,
                                double step, mink_samples** out) {
    if (auto st = require(out != nullptr, "mink_make_salkowski: null argument")) return st;
    *out = nullptr;
    return wrap([&] {
        mink::SalkowskiCase cse;
        switch (salkowski_case) {
            case 1: cse = mink::SalkowskiCase::I; break;
            case 2: cse = mink::SalkowskiCase::II; break;
            case 3: cse = mink::SalkowskiCase::III; break;
            default:
                mink::fail(mink::Errc::invalid_argument, "Salkowski case must be 1, 2 or 3");
        }
        auto curve = mink::make_salkowski(cse, phi, {s_lo, s_hi}, step);
        *out = new mink_samples{std::move(curve)};
    });
}

size_t mink_samples_count(const mink_samples* samples) {
    return samples ? samples->curve.states.size() : 0;
}

mink_status mink_samples_get(const mink_samples* samples, size_t index, mink_frame_state* out) {
    if (auto st = require(samples && out, "mink_samples_get: null argument")) return st;
    if (index >= samples->curve.states.size()) {
        g_last_error = "sample index out of range";
        return MINK_ERR_INVALID_ARGUMENT;
    }
    from_state(out, samples->curve.states[index]);
    return MINK_OK;
}

double mink_samples_gram_drift(const mink_samples* samples) {
    if (!samples) return 0.0;
    return mink::max_gram_drift(samples->curve);
}

mink_status mink_samples_csv(const mink_samples* samples, int with_frames, char** out) {
    if (auto st = require(samples && out, "mink_samples_csv: null argument")) return st;
    return wrap([&] { *out = copy_string(samples->curve.to_csv(with_frames != 0)); });
}

mink_status mink_samples_json(const mink_samples* samples, int with_frames, char** out) {
    if (auto st = require(samples && out, "mink_samples_json: null argument")) return st;
    return wrap([&] { *out = copy_string(samples->curve.to_json(with_frames != 0)); });
}

void mink_samples_free(mink_samples* samples) { delete samples; }

mink_status mink_run_verification(mink_check_result* results, size_t capacity, size_t* count) {
    if (auto st = require(results && count, "mink_run_verification: null argument")) return st;
    return wrap([&] {
        const auto checks = mink::run_verification();
        *count = checks.size();
        const size_t n = std::min(capacity, checks.size());
        for (size_t i = 0; i < n; ++i) {
            std::snprintf(results[i].name, sizeof results[i].name, "%s", checks[i].name.c_str());
            results[i].passed = checks[i].passed ? 1 : 0;
            results[i].worst = checks[i].worst;
            std::snprintf(results[i].detail, sizeof results[i].detail, "%s",
                          checks[i].detail.c_str());
        }
    });
}

} // extern "C"
