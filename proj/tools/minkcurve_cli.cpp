// minkcurve: command-line frontend over the shared C API.
//
// Subcommands: classify, frenet, detect, slant, residual, fit, generate,
// verify-paper. All reports are JSON on stdout with fixed field order and
// floats at 17 significant digits, so identical invocations are
// byte-identical. Exit codes: 0 for success and detector-positive verdicts,
// 1 for detector-negative verdicts, 2 for errors.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minkcurve.h"

namespace {

bool g_json_errors = false;

std::string fmt(double v) {
    if (v == 0.0) return "0"; // collapse negative zero
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, p);
}

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    out += '"';
    return out;
}

std::string jvec(const double v[3]) {
    return "[" + fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]) + "]";
}

int report_error(mink_status status) {
    if (g_json_errors) {
        std::cout << "{\"error\":{\"status\":" << jstr(mink_status_name(status))
                  << ",\"message\":" << jstr(mink_last_error()) << "}}\n";
    } else {
        std::cerr << "error (" << mink_status_name(status) << "): " << mink_last_error() << "\n";
    }
    return 2;
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

struct GridSpec {
    double lo = 0, hi = 0;
    int n = 0;
};

std::optional<double> parse_number(const std::string& text) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<GridSpec> parse_grid(const std::string& text) {
    const auto p1 = text.find(':');
    const auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) return std::nullopt;
    const auto lo = parse_number(text.substr(0, p1));
    const auto hi = parse_number(text.substr(p1 + 1, p2 - p1 - 1));
    const auto n = parse_number(text.substr(p2 + 1));
    if (!lo || !hi || !n || *n < 1 || *n != static_cast<int>(*n)) return std::nullopt;
    return GridSpec{*lo, *hi, static_cast<int>(*n)};
}

std::optional<std::pair<double, double>> parse_range(const std::string& text) {
    const auto p = text.find(':');
    if (p == std::string::npos) return std::nullopt;
    const auto lo = parse_number(text.substr(0, p));
    const auto hi = parse_number(text.substr(p + 1));
    if (!lo || !hi) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

std::vector<double> make_grid(const GridSpec& g) {
    std::vector<double> out(static_cast<size_t>(g.n));
    if (g.n == 1) {
        out[0] = g.lo;
        return out;
    }
    const double h = (g.hi - g.lo) / (g.n - 1);
    for (int i = 0; i < g.n; ++i) out[static_cast<size_t>(i)] = g.lo + i * h;
    out.back() = g.hi;
    return out;
}

std::optional<std::vector<double>> parse_comma_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto v = parse_number(item);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::optional<std::map<std::string, double>> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) return std::nullopt;
        const auto v = parse_number(item.substr(eq + 1));
        if (!v) return std::nullopt;
        out[item.substr(0, eq)] = *v;
    }
    return out;
}

struct FamilySpec {
    mink_torsion_family family{};
    mink_signature signature = MINK_SIG_SPACELIKE_SN;
    int salkowski_case = 0; // 1..3 when set
};

const char* family_case_name(mink_family_case c) {
    switch (c) {
        case MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE: return "spacelike-sn-or-timelike";
        case MINK_FAMILY_SPACELIKE_TN: return "spacelike-tn";
        case MINK_FAMILY_NULL_SLANT: return "null-slant";
        case MINK_FAMILY_SALKOWSKI_I: return "salkowski-i";
        case MINK_FAMILY_SALKOWSKI_II: return "salkowski-ii";
        case MINK_FAMILY_SALKOWSKI_III: return "salkowski-iii";
    }
    return "?";
}

// family names accepted on the command line; spacelike-sn and timelike share
// a torsion family but synthesize with different causal signatures
std::optional<FamilySpec> build_family(const std::string& name,
                                       const std::map<std::string, double>& params,
                                       std::string* error) {
    FamilySpec spec;
    auto get = [&params](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    std::vector<std::string> allowed;
    mink_torsion_family& f = spec.family;
    f.sign = static_cast<int>(get("sign", 1.0));
    f.inner_sign = static_cast<int>(get("inner", 1.0));
    f.b = get("b", 1.0);
    f.c = get("c", 0.0);
    f.a = get("a", 1.0);
    f.phi = get("phi", 1.0);
    if (name == "spacelike-sn" || name == "timelike") {
        f.family_case = MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE;
        spec.signature = name == "timelike" ? MINK_SIG_TIMELIKE : MINK_SIG_SPACELIKE_SN;
        allowed = {"b", "c", "sign", "inner"};
    } else if (name == "spacelike-tn") {
        f.family_case = MINK_FAMILY_SPACELIKE_TN;
        spec.signature = MINK_SIG_SPACELIKE_TN;
        allowed = {"b", "c", "sign"};
    } else if (name == "null-slant") {
        f.family_case = MINK_FAMILY_NULL_SLANT;
        spec.signature = MINK_SIG_NULL;
        allowed = {"a", "b", "c"};
    } else if (name == "salkowski-i" || name == "salkowski-ii" || name == "salkowski-iii") {
        spec.salkowski_case = name == "salkowski-i" ? 1 : name == "salkowski-ii" ? 2 : 3;
        f.family_case = spec.salkowski_case == 1   ? MINK_FAMILY_SALKOWSKI_I
                        : spec.salkowski_case == 2 ? MINK_FAMILY_SALKOWSKI_II
                                                   : MINK_FAMILY_SALKOWSKI_III;
        spec.signature = spec.salkowski_case == 1   ? MINK_SIG_SPACELIKE_SN
                         : spec.salkowski_case == 2 ? MINK_SIG_SPACELIKE_TN
                                                    : MINK_SIG_TIMELIKE;
        allowed = {"phi", "sign"};
    } else {
        *error = "unknown family '" + name +
                 "' (expected spacelike-sn, timelike, spacelike-tn, null-slant, salkowski-i, "
                 "salkowski-ii or salkowski-iii)";
        return std::nullopt;
    }
    for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            *error = "parameter '" + key + "' does not apply to family '" + name + "'";
            return std::nullopt;
        }
    }
    return spec;
}

std::string family_params_json(const mink_torsion_family& f) {
    std::string out = "{";
    switch (f.family_case) {
        case MINK_FAMILY_NULL_SLANT:
            out += "\"a\":" + fmt(f.a) + ",\"b\":" + fmt(f.b) + ",\"c\":" + fmt(f.c);
            break;
        case MINK_FAMILY_SALKOWSKI_I:
        case MINK_FAMILY_SALKOWSKI_II:
        case MINK_FAMILY_SALKOWSKI_III: out += "\"phi\":" + fmt(f.phi); break;
        default: out += "\"b\":" + fmt(f.b) + ",\"c\":" + fmt(f.c); break;
    }
    out += "}";
    return out;
}

struct CurveHandle {
    mink_curve* ptr = nullptr;
    ~CurveHandle() { mink_curve_free(ptr); }
};

struct ReportHandle {
    mink_report* ptr = nullptr;
    ~ReportHandle() { mink_report_free(ptr); }
};

struct SamplesHandle {
    mink_samples* ptr = nullptr;
    ~SamplesHandle() { mink_samples_free(ptr); }
};

struct CurveOptions {
    std::string curve;
    std::string domain; // "A:B", defaults wide
    std::string exclude;
};

int open_curve(const CurveOptions& opts, CurveHandle* out) {
    double lo = -1e6, hi = 1e6;
    if (!opts.domain.empty()) {
        const auto range = parse_range(opts.domain);
        if (!range) return usage_error("--domain expects A:B");
        lo = range->first;
        hi = range->second;
    }
    std::vector<double> excluded;
    if (!opts.exclude.empty()) {
        const auto list = parse_comma_list(opts.exclude);
        if (!list) return usage_error("--exclude expects a comma-separated list of numbers");
        excluded = *list;
    }
    const mink_status st =
        mink_curve_parse(opts.curve.c_str(), lo, hi, excluded.data(), excluded.size(), &out->ptr);
    if (st != MINK_OK) return report_error(st);
    return 0;
}

int run_classify(const CurveOptions& copts, double at) {
    CurveHandle curve;
    if (int rc = open_curve(copts, &curve)) return rc;
    mink_classification c{};
    if (const auto st = mink_classify(curve.ptr, at, &c)) return report_error(st);
    std::string out = "{\"class\":" + jstr(mink_curve_class_name(c.curve_class));
    out += ",\"s\":" + fmt(at);
    out += ",\"g_tangent\":" + fmt(c.g_tangent);
    out += ",\"g_accel\":" + fmt(c.g_accel);
    if (c.curve_class == MINK_CLASS_NONNULL_UNIT_SPEED)
        out += ",\"eps_T\":" + std::to_string(c.eps_T);
    out += std::string(",\"degenerate_curvature\":") + (c.degenerate_curvature ? "true" : "false");
    if (c.degenerate_curvature) {
        const bool null_tangent = c.curve_class != MINK_CLASS_NONNULL_UNIT_SPEED &&
                                  std::abs(c.g_tangent) <= 1e-7;
        out += ",\"note\":";
        out += null_tangent ? jstr("straight null line: Cartan frame undefined")
                            : jstr("curvature vanishes: Frenet frame undefined");
    }
    out += "}";
    std::cout << out << "\n";
    return 0;
}

int run_frenet(const CurveOptions& copts, double at) {
    CurveHandle curve;
    if (int rc = open_curve(copts, &curve)) return rc;
    mink_classification c{};
    if (const auto st = mink_classify(curve.ptr, at, &c)) return report_error(st);
    if (c.curve_class == MINK_CLASS_NULL_PSEUDO_ARC) {
        mink_cartan_apparatus f{};
        if (const auto st = mink_cartan(curve.ptr, at, &f)) return report_error(st);
        std::string out = "{\"class\":\"NullPseudoArc\",\"s\":" + fmt(at);
        out += ",\"T\":" + jvec(f.T) + ",\"N\":" + jvec(f.N) + ",\"B\":" + jvec(f.B);
        out += ",\"kappa\":" + fmt(f.kappa) + ",\"tau\":" + fmt(f.tau) + "}";
        std::cout << out << "\n";
        return 0;
    }
    mink_frenet_apparatus f{};
    if (const auto st = mink_frenet(curve.ptr, at, &f)) return report_error(st);
    std::string out = "{\"class\":\"NonNullUnitSpeed\",\"s\":" + fmt(at);
    out += ",\"T\":" + jvec(f.T) + ",\"N\":" + jvec(f.N) + ",\"B\":" + jvec(f.B);
    out += ",\"kappa\":" + fmt(f.kappa) + ",\"tau\":" + fmt(f.tau);
    out += ",\"eps_T\":" + std::to_string(f.eps_T);
    out += ",\"eps_N\":" + std::to_string(f.eps_N);
    out += ",\"eps_B\":" + std::to_string(f.eps_B) + "}";
    std::cout << out << "\n";
    return 0;
}

int run_detect(const CurveOptions& copts, const std::string& grid_text, int k) {
    const auto grid_spec = parse_grid(grid_text);
    if (!grid_spec) return usage_error("--grid expects A:B:N");
    CurveHandle curve;
    if (int rc = open_curve(copts, &curve)) return rc;
    const auto grid = make_grid(*grid_spec);
    ReportHandle report;
    if (const auto st = mink_detect_det(curve.ptr, k, grid.data(), grid.size(), &report.ptr))
        return report_error(st);
    std::cout << mink_report_json(report.ptr) << "\n";
    return mink_report_verdict(report.ptr) == MINK_VERDICT_VANISHES ? 0 : 1;
}

int run_slant(const CurveOptions& copts, const std::string& grid_text) {
    const auto grid_spec = parse_grid(grid_text);
    if (!grid_spec) return usage_error("--grid expects A:B:N");
    CurveHandle curve;
    if (int rc = open_curve(copts, &curve)) return rc;
    const auto grid = make_grid(*grid_spec);
    ReportHandle report;
    if (const auto st = mink_slant_sigma(curve.ptr, grid.data(), grid.size(), &report.ptr))
        return report_error(st);
    std::cout << mink_report_json(report.ptr) << "\n";
    return mink_report_constancy(report.ptr) == MINK_CONSTANCY_CONSTANT ? 0 : 1;
}

int run_residual(const std::string& family_name, const std::string& params_text,
                 const std::string& grid_text) {
    const auto params = parse_params(params_text);
    if (!params) return usage_error("--params expects key=value[,key=value...]");
    std::string err;
    const auto spec = build_family(family_name, *params, &err);
    if (!spec) return usage_error(err);
    const auto grid_spec = parse_grid(grid_text);
    if (!grid_spec) return usage_error("--grid expects A:B:N");
    const auto grid = make_grid(*grid_spec);
    ReportHandle report;
    if (const auto st =
            mink_family_residual(&spec->family, grid.data(), grid.size(), &report.ptr))
        return report_error(st);
    std::cout << mink_report_json(report.ptr) << "\n";
    return mink_report_verdict(report.ptr) == MINK_VERDICT_VANISHES ? 0 : 1;
}

std::optional<std::vector<std::pair<double, double>>> read_samples(const std::string& path,
                                                                   std::string* error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *error = "cannot open '" + path + "'";
        return std::nullopt;
    }
    std::vector<std::pair<double, double>> samples;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            *error = std::string("invalid JSON: ") + e.what();
            return std::nullopt;
        }
        const nlohmann::json* rows = &doc;
        if (doc.is_object()) {
            if (!doc.contains("samples")) {
                *error = "JSON object must contain a \"samples\" array";
                return std::nullopt;
            }
            rows = &doc["samples"];
        }
        if (!rows->is_array()) {
            *error = "samples must be an array of [s, tau] pairs";
            return std::nullopt;
        }
        for (const auto& row : *rows) {
            if (row.is_array() && row.size() >= 2)
                samples.emplace_back(row[0].get<double>(), row[1].get<double>());
            else if (row.is_object() && row.contains("s") && row.contains("tau"))
                samples.emplace_back(row["s"].get<double>(), row["tau"].get<double>());
            else {
                *error = "sample rows must be [s, tau] pairs or {\"s\":..,\"tau\":..} objects";
                return std::nullopt;
            }
        }
        return samples;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::stringstream ss(line);
        std::string first, second;
        if (!std::getline(ss, first, ',') || !std::getline(ss, second, ',')) {
            *error = "CSV rows must have two columns: s,tau";
            return std::nullopt;
        }
        const auto s = parse_number(first);
        const auto tau = parse_number(second);
        if (!s || !tau) {
            if (samples.empty()) continue; // header row
            *error = "malformed CSV row: " + line;
            return std::nullopt;
        }
        samples.emplace_back(*s, *tau);
    }
    return samples;
}

int run_fit(const std::string& samples_path, const std::string& family_name) {
    std::string err;
    const auto spec = build_family(family_name, {}, &err);
    if (!spec) return usage_error(err);
    const auto samples = read_samples(samples_path, &err);
    if (!samples) return usage_error(err);
    std::vector<double> s, tau;
    for (const auto& [si, ti] : *samples) {
        s.push_back(si);
        tau.push_back(ti);
    }
    mink_fit_result result{};
    if (const auto st =
            mink_fit_family(s.data(), tau.data(), s.size(), spec->family.family_case, &result))
        return report_error(st);
    std::string out = "{\"family\":" + jstr(family_case_name(result.family.family_case));
    out += ",\"params\":" + family_params_json(result.family);
    out += ",\"sign\":" + std::to_string(result.family.sign);
    if (result.family.family_case == MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE)
        out += ",\"inner_sign\":" + std::to_string(result.family.inner_sign);
    out += ",\"rms\":" + fmt(result.rms);
    out += ",\"iterations\":" + std::to_string(result.iterations);
    out += ",\"n_samples\":" + std::to_string(s.size()) + "}";
    std::cout << out << "\n";
    return 0;
}

int run_generate(const std::string& family_name, const std::string& params_text,
                 const std::string& tau_expr, const std::string& signature_name,
                 const std::string& range_text, double step, const std::string& out_path,
                 const std::string& format, bool frames) {
    const auto range = parse_range(range_text);
    if (!range) return usage_error("--range expects A:B");

    SamplesHandle samples;
    std::string tau_label;
    if (!tau_expr.empty()) {
        mink_signature sig;
        if (signature_name == "timelike") sig = MINK_SIG_TIMELIKE;
        else if (signature_name == "spacelike-sn") sig = MINK_SIG_SPACELIKE_SN;
        else if (signature_name == "spacelike-tn") sig = MINK_SIG_SPACELIKE_TN;
        else if (signature_name == "null") sig = MINK_SIG_NULL;
        else
            return usage_error("--tau requires --signature timelike|spacelike-sn|spacelike-tn|null");
        mink_frame_state initial{};
        if (const auto st = mink_canonical_frame(sig, range->first, &initial))
            return report_error(st);
        if (const auto st = mink_integrate_expr(sig, tau_expr.c_str(), &initial, range->second,
                                                step, &samples.ptr))
            return report_error(st);
        tau_label = tau_expr;
    } else {
        const auto params = parse_params(params_text);
        if (!params) return usage_error("--params expects key=value[,key=value...]");
        std::string err;
        const auto spec = build_family(family_name, *params, &err);
        if (!spec) return usage_error(err);
        if (spec->salkowski_case != 0) {
            if (const auto st = mink_make_salkowski(spec->salkowski_case, spec->family.phi,
                                                    range->first, range->second, step,
                                                    &samples.ptr))
                return report_error(st);
        } else {
            mink_frame_state initial{};
            if (const auto st = mink_canonical_frame(spec->signature, range->first, &initial))
                return report_error(st);
            if (const auto st = mink_integrate_family(spec->signature, &spec->family, &initial,
                                                      range->second, step, &samples.ptr))
                return report_error(st);
        }
        tau_label = family_name + " " + family_params_json(spec->family);
    }

    const bool json_format =
        format == "json" ||
        (format.empty() && out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json");
    char* text = nullptr;
    const auto st = json_format ? mink_samples_json(samples.ptr, frames ? 1 : 0, &text)
                                : mink_samples_csv(samples.ptr, frames ? 1 : 0, &text);
    if (st != MINK_OK) return report_error(st);
    std::string payload(text);
    mink_string_free(text);

    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return usage_error("cannot write '" + out_path + "'");
    out << payload;
    out.close();

    std::string summary = "{\"tau\":" + jstr(tau_label);
    summary += ",\"range\":[" + fmt(range->first) + "," + fmt(range->second) + "]";
    summary += ",\"step\":" + fmt(step);
    summary += ",\"count\":" + std::to_string(mink_samples_count(samples.ptr));
    summary += ",\"gram_drift\":" + fmt(mink_samples_gram_drift(samples.ptr));
    summary += ",\"format\":" + jstr(json_format ? "json" : "csv");
    summary += ",\"out\":" + jstr(out_path) + "}";
    std::cout << summary << "\n";
    return 0;
}

int run_verify(bool as_json) {
    mink_check_result results[16];
    size_t count = 0;
    if (const auto st = mink_run_verification(results, 16, &count)) return report_error(st);
    size_t passed = 0;
    for (size_t i = 0; i < count; ++i)
        if (results[i].passed) ++passed;
    if (as_json) {
        std::string out = "{\"checks\":[";
        for (size_t i = 0; i < count; ++i) {
            if (i) out += ",";
            out += "{\"name\":" + jstr(results[i].name);
            out += std::string(",\"passed\":") + (results[i].passed ? "true" : "false");
            out += ",\"worst\":" + fmt(results[i].worst);
            out += ",\"detail\":" + jstr(results[i].detail) + "}";
        }
        out += "],\"passed\":" + std::to_string(passed);
        out += ",\"total\":" + std::to_string(count) + "}";
        std::cout << out << "\n";
    } else {
        for (size_t i = 0; i < count; ++i) {
            std::printf("[%zu/%zu] %s  %-34s %s\n", i + 1, count,
                        results[i].passed ? "PASS" : "FAIL", results[i].name, results[i].detail);
        }
        std::printf("%zu/%zu checks passed\n", passed, count);
    }
    return passed == count ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet/Cartan analysis and synthesis of curves in Minkowski 3-space"};
    app.require_subcommand(1);
    app.add_flag("--json-errors", g_json_errors,
                 "report computational errors as JSON on stdout");

    CurveOptions copts;
    double at = 0.0;
    std::string grid_text, family_name, params_text, samples_path;
    std::string tau_expr, signature_name, range_text, out_path, format;
    double step = 1e-3;
    int det_order = 3;
    bool frames = false, verify_json = false;

    const auto add_curve_opts = [&copts](CLI::App* cmd, bool with_at, double* at_ptr) {
        cmd->add_option("--curve", copts.curve, "curve as \"(expr, expr, expr)\" over s")
            ->required();
        cmd->add_option("--domain", copts.domain, "parameter domain A:B (default -1e6:1e6)");
        cmd->add_option("--exclude", copts.exclude, "comma-separated pole locations");
        if (with_at) cmd->add_option("--at", *at_ptr, "parameter value")->required();
    };

    auto* classify = app.add_subcommand("classify", "causal class and normalization at a point");
    add_curve_opts(classify, true, &at);
    classify->footer("output schema: {\"class\":str,\"s\":num,\"g_tangent\":num,\"g_accel\":num,"
                     "\"eps_T\":int?,\"degenerate_curvature\":bool,\"note\":str?}");

    auto* frenet = app.add_subcommand("frenet", "frame, curvature and torsion at a point");
    add_curve_opts(frenet, true, &at);
    frenet->footer("output schema: {\"class\":str,\"s\":num,\"T\":[num,num,num],\"N\":[...],"
                   "\"B\":[...],\"kappa\":num,\"tau\":num,\"eps_T\":int?,\"eps_N\":int?,"
                   "\"eps_B\":int?}");

    auto* detect = app.add_subcommand(
        "detect", "det3(alpha^(k), alpha^(k+1), alpha^(k+2)) over a grid with verdict");
    add_curve_opts(detect, false, nullptr);
    detect->add_option("--grid", grid_text, "grid A:B:N")->required();
    detect->add_option("--k", det_order, "derivative offset k in {0..3} (default 3)");
    detect->footer("output schema: {\"grid\":[num...],\"values\":[num...],\"scale\":num,"
                   "\"verdict\":\"Vanishes|NonVanishing|Inconclusive\",\"threshold\":num,"
                   "\"dropped_points\":int}");

    auto* slant = app.add_subcommand("slant", "slant indicator sigma over a grid with verdict");
    add_curve_opts(slant, false, nullptr);
    slant->add_option("--grid", grid_text, "grid A:B:N")->required();
    slant->footer("output schema: {\"grid\":[num...],\"values\":[num...],\"mean\":num,"
                  "\"stddev\":num,\"verdict\":\"Constant|NonConstant|Inconclusive\","
                  "\"threshold\":num,\"dropped_points\":int,\"note\":str?}");

    auto* residual =
        app.add_subcommand("residual", "torsion-family ODE residual over a grid");
    residual->add_option("--family", family_name, "family name")->required();
    residual->add_option("--params", params_text, "family parameters key=value,...");
    residual->add_option("--grid", grid_text, "grid A:B:N")->required();
    residual->footer("families: spacelike-sn | timelike | spacelike-tn | null-slant | "
                     "salkowski-i | salkowski-ii | salkowski-iii\n"
                     "output schema: as for detect");

    auto* fit = app.add_subcommand("fit", "fit a torsion family to (s, tau) samples");
    fit->add_option("--samples", samples_path, "CSV (s,tau) or JSON samples file")->required();
    fit->add_option("--family", family_name, "family name")->required();
    fit->footer("output schema: {\"family\":str,\"params\":{...},\"sign\":int,"
                "\"inner_sign\":int?,\"rms\":num,\"iterations\":int,\"n_samples\":int}");

    auto* generate = app.add_subcommand("generate", "synthesize a curve by frame integration");
    generate->add_option("--family", family_name, "torsion family name");
    generate->add_option("--params", params_text, "family parameters key=value,...");
    generate->add_option("--tau", tau_expr, "torsion as an expression of s (needs --signature)");
    generate->add_option("--signature", signature_name,
                         "causal signature for --tau: timelike|spacelike-sn|spacelike-tn|null");
    generate->add_option("--range", range_text, "integration range A:B")->required();
    generate->add_option("--step", step, "integration step (default 1e-3)");
    generate->add_option("--out", out_path, "output file ('-' for stdout)")->required();
    generate->add_option("--format", format, "csv or json (default by extension, csv otherwise)");
    generate->add_flag("--frames", frames, "include frame vectors in the export");
    generate->footer("csv columns: s,px0,px1,px2[,T0,T1,T2,N0,N1,N2,B0,B1,B2]\n"
                     "summary schema: {\"tau\":str,\"range\":[num,num],\"step\":num,"
                     "\"count\":int,\"gram_drift\":num,\"format\":str,\"out\":str}");

    auto* verify = app.add_subcommand("verify-paper", "run the built-in verification suite");
    verify->add_flag("--json", verify_json, "machine-readable output");
    verify->footer("json schema: {\"checks\":[{\"name\":str,\"passed\":bool,\"worst\":num,"
                   "\"detail\":str}...],\"passed\":int,\"total\":int}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (classify->parsed()) return run_classify(copts, at);
    if (frenet->parsed()) return run_frenet(copts, at);
    if (detect->parsed()) return run_detect(copts, grid_text, det_order);
    if (slant->parsed()) return run_slant(copts, grid_text);
    if (residual->parsed()) return run_residual(family_name, params_text, grid_text);
    if (fit->parsed()) return run_fit(samples_path, family_name);
    if (generate->parsed()) {
        if (tau_expr.empty() && family_name.empty())
            return usage_error("generate requires --family or --tau");
        return run_generate(family_name, params_text, tau_expr, signature_name, range_text, step,
                            out_path, format, frames);
    }
    if (verify->parsed()) return run_verify(verify_json);
    return usage_error("no subcommand given");
}
