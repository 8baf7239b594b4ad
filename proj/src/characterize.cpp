#include "minkcurve/characterize.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "minkcurve/json_writer.hpp"

namespace mink {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Vanishes: return "Vanishes";
        case Verdict::NonVanishing: return "NonVanishing";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(Constancy c) noexcept {
    switch (c) {
        case Constancy::Constant: return "Constant";
        case Constancy::NonConstant: return "NonConstant";
        case Constancy::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double ResidualReport::max_abs_value() const noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double ResidualReport::max_relative() const noexcept {
    if (values.empty()) return 0.0;
    return max_abs_value() / std::max(scale, DBL_MIN);
}

std::string ResidualReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("grid").begin_array();
    for (double s : grid) w.value(s);
    w.end_array();
    w.key("values").begin_array();
    for (double v : values) w.value(v);
    w.end_array();
    w.key("scale").value(scale);
    w.key("verdict").value(to_string(verdict));
    w.key("threshold").value(threshold);
    w.key("dropped_points").value(dropped_points);
    w.end_object();
    return w.str();
}

std::string SigmaReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("grid").begin_array();
    for (double s : grid) w.value(s);
    w.end_array();
    w.key("values").begin_array();
    for (double v : values) w.value(v);
    w.end_array();
    w.key("mean").value(mean);
    w.key("stddev").value(stddev);
    w.key("verdict").value(to_string(verdict));
    w.key("threshold").value(threshold);
    w.key("dropped_points").value(dropped_points);
    if (!note.empty()) w.key("note").value(note);
    w.end_object();
    return w.str();
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 1) fail(Errc::invalid_argument, "grid needs at least one point");
    if (!(lo <= hi)) fail(Errc::invalid_argument, "grid bounds out of order");
    std::vector<double> g(static_cast<size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo + i * h;
    g.back() = hi;
    return g;
}

namespace {

void require_increasing(const std::vector<double>& grid, const char* what) {
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            fail(Errc::invalid_argument, std::string(what) + ": grid must be strictly increasing");
}

void finalize_det_verdict(ResidualReport& r, std::size_t requested) {
    if (r.values.empty() ||
        r.dropped_points > kMaxDroppedFraction * static_cast<double>(requested)) {
        r.verdict = Verdict::Inconclusive;
        return;
    }
    if (r.max_abs_value() <= r.threshold * r.scale)
        r.verdict = r.values.size() >= static_cast<size_t>(kMinVanishGrid)
                        ? Verdict::Vanishes
                        : Verdict::Inconclusive;
    else
        r.verdict = Verdict::NonVanishing;
}

} // namespace

ResidualReport det_k(const DerivativeFn& derivatives, int k, const std::vector<double>& grid) {
    if (k < 0 || k > 3) fail(Errc::invalid_argument, "det_k requires k in {0..3}");
    if (grid.empty()) fail(Errc::empty_grid, "det_k requires a non-empty grid");
    require_increasing(grid, "det_k");

    ResidualReport r;
    for (double s : grid) {
        std::vector<Vec3> d;
        try {
            d = derivatives(s, k + 2);
        } catch (const Error& e) {
            if (e.code() == Errc::pole) {
                ++r.dropped_points;
                continue;
            }
            throw;
        }
        const Vec3& u = d[static_cast<size_t>(k)];
        const Vec3& v = d[static_cast<size_t>(k) + 1];
        const Vec3& w = d[static_cast<size_t>(k) + 2];
        r.grid.push_back(s);
        r.values.push_back(det3(u, v, w));
        r.scale = std::max(r.scale, euclid_norm(u) * euclid_norm(v) * euclid_norm(w));
    }
    finalize_det_verdict(r, grid.size());
    return r;
}

ResidualReport det_k(const CurveDef& curve, int k, const std::vector<double>& grid) {
    return det_k([&curve](double s, int k_max) { return curve.eval_derivatives(s, k_max); }, k,
                 grid);
}

double residual_nonnull(const Jet& tau, Sign eps_T, Sign eps_B) {
    if (tau.order() < 2) fail(Errc::invalid_argument, "residual needs a torsion jet of order >= 2");
    const double ee = (eps_T * eps_B).as_double();
    const double t = tau.derivative(0);
    const double tp = tau.derivative(1);
    const double tpp = tau.derivative(2);
    return tpp * (1.0 + t * t * ee) - 3.0 * t * tp * tp * ee;
}

double residual_null(const Jet& tau) {
    if (tau.order() < 2) fail(Errc::invalid_argument, "residual needs a torsion jet of order >= 2");
    const double t = tau.derivative(0);
    const double tp = tau.derivative(1);
    const double tpp = tau.derivative(2);
    return 2.0 * t * tpp - 3.0 * tp * tp;
}

double residual_nonnull_scale(const Jet& tau) {
    const double t = tau.derivative(0);
    const double tp = tau.derivative(1);
    const double tpp = tau.derivative(2);
    return std::abs(tpp) * (1.0 + t * t) + 3.0 * std::abs(t) * tp * tp;
}

double residual_null_scale(const Jet& tau) {
    const double t = tau.derivative(0);
    const double tp = tau.derivative(1);
    const double tpp = tau.derivative(2);
    return 2.0 * std::abs(t * tpp) + 3.0 * tp * tp;
}

ResidualReport family_ode_residual(const TorsionFamily& family, const std::vector<double>& grid) {
    if (grid.empty()) fail(Errc::empty_grid, "family residual requires a non-empty grid");
    require_increasing(grid, "family residual");
    ResidualReport r;
    for (double s : grid) {
        if (!family.in_range(s)) {
            ++r.dropped_points;
            continue;
        }
        const Jet tau = family.eval_jet(s, 3);
        r.grid.push_back(s);
        if (family.is_null_family()) {
            r.values.push_back(residual_null(tau));
            r.scale = std::max(r.scale, residual_null_scale(tau));
        } else {
            const Sign eps_T = Sign::plus();
            const Sign eps_B = family.eps_product() > 0 ? Sign::plus() : Sign::minus();
            r.values.push_back(residual_nonnull(tau, eps_T, eps_B));
            r.scale = std::max(r.scale, residual_nonnull_scale(tau));
        }
    }
    if (r.values.empty() ||
        r.dropped_points > kMaxDroppedFraction * static_cast<double>(grid.size()))
        r.verdict = Verdict::Inconclusive;
    else
        r.verdict = r.max_abs_value() <= r.threshold * r.scale ? Verdict::Vanishes
                                                               : Verdict::NonVanishing;
    return r;
}

DetResidualComparison det345_closed_form_check(const CurveDef& curve,
                                               const std::vector<double>& grid) {
    if (grid.empty()) fail(Errc::empty_grid, "comparison requires a non-empty grid");
    require_increasing(grid, "determinant comparison");
    DetResidualComparison out;
    for (double s : grid) {
        double res;
        try {
            const Classification cls = classify_curve(curve, s);
            if (cls.cls == CurveClass::NullPseudoArc) {
                res = residual_null(null_cartan_jets(curve, s).tau);
            } else {
                const FrenetJets f = nonnull_frenet_jets(curve, s);
                if (std::abs(f.kappa.value() - 1.0) > kTolUnit)
                    fail(Errc::kappa_not_one,
                         "determinant-residual identity requires kappa = 1 (kappa = " +
                             std::to_string(f.kappa.value()) + " at s = " + std::to_string(s) +
                             ")");
                res = residual_nonnull(f.tau, f.eps_T, f.eps_B);
            }
        } catch (const Error& e) {
            if (e.code() == Errc::pole) {
                ++out.dropped_points;
                continue;
            }
            throw;
        }
        const auto d = curve.eval_derivatives(s, 5);
        const double det = det3(d[3], d[4], d[5]);
        const double scale = euclid_norm(d[3]) * euclid_norm(d[4]) * euclid_norm(d[5]);
        out.grid.push_back(s);
        out.det_values.push_back(std::abs(det));
        out.residual_values.push_back(std::abs(res));
        const double disc = std::abs(std::abs(det) - std::abs(res)) / std::max(scale, DBL_MIN);
        out.max_rel_discrepancy = std::max(out.max_rel_discrepancy, disc);
    }
    return out;
}

double sigma_from_jets(const Jet& kappa, const Jet& tau, Sign eps_T, Sign eps_B) {
    const double ee = (eps_T * eps_B).as_double();
    const double k = kappa.value();
    const double t = tau.value();
    const double denom = t * t + ee * k * k;
    if (std::abs(denom) <= kTolSigma)
        fail(Errc::sigma_singular, "slant indicator singular: |tau^2 - kappa^2| <= tolerance");
    const Jet ratio = tau / kappa;
    return k * k / std::pow(std::abs(denom), 1.5) * ratio.derivative(1);
}

double slant_indicator(const CurveDef& curve, double s0) {
    const FrenetJets f = nonnull_frenet_jets(curve, s0);
    return sigma_from_jets(f.kappa, f.tau, f.eps_T, f.eps_B);
}

SigmaReport slant_report(const CurveDef& curve, const std::vector<double>& grid) {
    if (grid.empty()) fail(Errc::empty_grid, "slant report requires a non-empty grid");
    require_increasing(grid, "slant report");
    SigmaReport r;
    for (double s : grid) {
        try {
            r.values.push_back(slant_indicator(curve, s));
            r.grid.push_back(s);
        } catch (const Error& e) {
            switch (e.code()) {
                case Errc::pole:
                case Errc::sigma_singular: ++r.dropped_points; break;
                case Errc::lightlike_normal:
                    // slant by classification: the normal is lightlike
                    r.verdict = Constancy::Constant;
                    r.note = "spacelike curve with lightlike normal: slant by classification";
                    return r;
                default: throw;
            }
        }
    }
    if (r.values.size() < 2 ||
        r.dropped_points > kMaxDroppedFraction * static_cast<double>(grid.size())) {
        r.verdict = Constancy::Inconclusive;
        return r;
    }
    r.mean = std::accumulate(r.values.begin(), r.values.end(), 0.0) /
             static_cast<double>(r.values.size());
    double acc = 0.0;
    for (double v : r.values) acc += (v - r.mean) * (v - r.mean);
    r.stddev = std::sqrt(acc / static_cast<double>(r.values.size()));
    r.verdict = r.stddev <= r.threshold ? Constancy::Constant : Constancy::NonConstant;
    return r;
}

TangentIndicatrix::TangentIndicatrix(CurveDef base) : base_(std::move(base)) {}

void TangentIndicatrix::require_unit_kappa(double s) const {
    const auto d = base_.eval_derivatives(s, 2);
    const double kappa = lorentz_norm(d[2]);
    if (std::abs(kappa - 1.0) > kTolUnit)
        fail(Errc::kappa_not_one, "tangent indicatrix shares the base parameter only for "
                                  "kappa = 1 (kappa = " +
                                      std::to_string(kappa) + " at s = " + std::to_string(s) +
                                      ")");
}

Vec3 TangentIndicatrix::position(double s) const {
    require_unit_kappa(s);
    return base_.eval_derivatives(s, 1)[1];
}

std::vector<Vec3> TangentIndicatrix::derivatives(double s, int k_max) const {
    require_unit_kappa(s);
    auto d = base_.eval_derivatives(s, k_max + 1);
    d.erase(d.begin());
    return d;
}

DerivativeFn TangentIndicatrix::derivative_fn() const {
    return [self = *this](double s, int k_max) { return self.derivatives(s, k_max); };
}

} // namespace mink
