#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "minkcurve/family.hpp"
#include "minkcurve/frame.hpp"

namespace mink {

/// A residual identity on a grid is judged zero relative to the local
/// magnitude of its ingredients: jets land true zeros at rounding level, so a
/// relative band this wide separates cleanly.
inline constexpr double kZeroThreshold = 1e-7;
/// Minimum evaluated grid points before a determinant detector may claim the
/// residual vanishes as a function.
inline constexpr int kMinVanishGrid = 201;
/// More than this fraction of dropped points makes a report inconclusive.
inline constexpr double kMaxDroppedFraction = 0.10;

inline constexpr double kTolSigma = 1e-9;
/// Grid stddev bound under which the slant indicator counts as constant.
inline constexpr double kSigmaConstancyTol = 1e-6;

enum class Verdict { Vanishes, NonVanishing, Inconclusive };
enum class Constancy { Constant, NonConstant, Inconclusive };

const char* to_string(Verdict v) noexcept;
const char* to_string(Constancy c) noexcept;

/// Sampled values of a characterization residual over a parameter grid.
/// `grid` holds the points that actually evaluated; points that raised a pole
/// are dropped and counted. `scale` is the largest pointwise magnitude of the
/// residual's ingredients, used for relative judging.
struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> values;
    double scale = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double threshold = kZeroThreshold;
    int dropped_points = 0;

    double max_abs_value() const noexcept;
    /// max |value| / scale (0 when empty).
    double max_relative() const noexcept;
    std::string to_json() const;
};

/// alpha^(0..k_max) at s, for detectors that run on things other than parsed
/// curves (synthesized samples, indicatrices).
using DerivativeFn = std::function<std::vector<Vec3>(double s, int k_max)>;

/// det3(alpha^(k), alpha^(k+1), alpha^(k+2)) over the grid. k = 3 is the slant
/// detector for kappa = 1; k = 1 flags plane curves, k = 2 constant slope,
/// k = 0 great circles of spherical curves.
ResidualReport det_k(const CurveDef& curve, int k, const std::vector<double>& grid);
ResidualReport det_k(const DerivativeFn& derivatives, int k, const std::vector<double>& grid);

/// tau''(1 + tau^2 eT eB) - 3 tau (tau')^2 eT eB, the closed form of the k = 3
/// determinant for non-null unit-speed curves with kappa = 1.
double residual_nonnull(const Jet& tau, Sign eps_T, Sign eps_B);
/// 2 tau tau'' - 3 (tau')^2, the null counterpart.
double residual_null(const Jet& tau);

/// Pointwise magnitude scales matching the two residuals, for relative judging.
double residual_nonnull_scale(const Jet& tau);
double residual_null_scale(const Jet& tau);

/// Residual of the governing torsion ODE for a closed-form family over a grid.
ResidualReport family_ode_residual(const TorsionFamily& family, const std::vector<double>& grid);

/// Two independent routes to the same quantity: the coordinate determinant
/// det3(alpha^(3..5)) from curve jets versus the closed-form residual from the
/// frame's torsion jet. Compared in absolute value (the coordinate determinant
/// differs from the frame-component determinant by the frame orientation
/// factor +-1), relative to the pointwise Hadamard scale.
struct DetResidualComparison {
    std::vector<double> grid;
    std::vector<double> det_values;
    std::vector<double> residual_values;
    double max_rel_discrepancy = 0.0;
    int dropped_points = 0;
};

DetResidualComparison det345_closed_form_check(const CurveDef& curve,
                                               const std::vector<double>& grid);

/// Slant-helix indicator sigma = kappa^2 / |tau^2 + eT eB kappa^2|^(3/2) * (tau/kappa)'.
/// Constant exactly on slant helices. Raises sigma_singular inside the
/// |tau^2 - kappa^2| <= kTolSigma band of the eT eB = -1 cases, and
/// lightlike_normal for the spacelike-with-lightlike-normal class (those are
/// slant by classification alone).
double slant_indicator(const CurveDef& curve, double s0);
double sigma_from_jets(const Jet& kappa, const Jet& tau, Sign eps_T, Sign eps_B);

struct SigmaReport {
    std::vector<double> grid;
    std::vector<double> values;
    double mean = 0.0;
    double stddev = 0.0;
    Constancy verdict = Constancy::Inconclusive;
    double threshold = kSigmaConstancyTol;
    int dropped_points = 0;
    std::string note;
    std::string to_json() const;
};

SigmaReport slant_report(const CurveDef& curve, const std::vector<double>& grid);

/// The curve traced by T(s) = alpha'(s). With kappa = 1 it shares the arc
/// parameter with alpha, and its derivatives are alpha's shifted one order up,
/// so det_k(indicatrix, 2) = det_k(curve, 3) pointwise.
class TangentIndicatrix {
public:
    explicit TangentIndicatrix(CurveDef base);

    Vec3 position(double s) const;
    std::vector<Vec3> derivatives(double s, int k_max) const;
    DerivativeFn derivative_fn() const;

private:
    void require_unit_kappa(double s) const;
    CurveDef base_;
};

struct FitResult {
    TorsionFamily family;
    double rms = 0.0;
    int iterations = 0;
};

/// Least-squares fit of a torsion family to (s, tau) samples: Gauss-Newton
/// with the Jacobian taken from parameter jets. Reports the canonical
/// representative (b > 0; NullSlant normalized to b = 1).
FitResult fit_torsion_family(const std::vector<std::pair<double, double>>& samples,
                             TorsionFamily::Case family_case);

/// N uniform points on [lo, hi] inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);

} // namespace mink
