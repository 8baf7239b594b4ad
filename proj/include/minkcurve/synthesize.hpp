#pragma once

#include <functional>
#include <string>
#include <vector>

#include "minkcurve/characterize.hpp"
#include "minkcurve/family.hpp"
#include "minkcurve/vec3.hpp"

namespace mink {

/// Causal pattern of the frame being integrated. The three non-null patterns
/// are the ones realizable in signature (-,+,+): exactly one frame vector is
/// timelike.
struct CausalSignature {
    enum class Kind { NonNull, Null };
    Kind kind = Kind::NonNull;
    Sign eps_T, eps_N, eps_B; // NonNull only

    static CausalSignature timelike() { return {Kind::NonNull, Sign::minus(), Sign::plus(), Sign::plus()}; }
    static CausalSignature spacelike_sn() { return {Kind::NonNull, Sign::plus(), Sign::plus(), Sign::minus()}; }
    static CausalSignature spacelike_tn() { return {Kind::NonNull, Sign::plus(), Sign::minus(), Sign::plus()}; }
    static CausalSignature lightlike() { return {Kind::Null, Sign::plus(), Sign::plus(), Sign::plus()}; }

    bool is_null() const noexcept { return kind == Kind::Null; }
    const char* name() const noexcept;
};

struct FrameState {
    double s = 0.0;
    Vec3 position, T, N, B;
};

struct SampledCurve {
    std::vector<FrameState> states;
    CausalSignature signature;
    std::string tau_label;
    double step = 0.0;

    /// CSV columns: s,px0,px1,px2[,T0,T1,T2,N0,N1,N2,B0,B1,B2]; '.' decimal,
    /// LF line endings.
    std::string to_csv(bool with_frames) const;
    std::string to_json(bool with_frames) const;
};

using TauFn = std::function<double(double)>;
using TauJetFn = std::function<Jet(double s, int order)>;

struct IntegrateOptions {
    /// Metric Gram-Schmidt after every step. Off only to measure raw drift.
    bool renormalize = true;
    double blowup_limit = 1e12;
};

inline constexpr double kInitialGramTol = 1e-12;

/// The canonical frame of a signature: the coordinate-axis frame matching the
/// Gram pattern (null case: T = (1,1,0)/sqrt(2), N = (0,0,1),
/// B = (-1,1,0)/sqrt(2)), signs fixed so det3(T, N, B) > 0, position at the
/// origin. These are the unique such frames up to the lexicographic sign
/// tie-break on the axis order.
FrameState canonical_frame(const CausalSignature& sig, double s0 = 0.0);

/// Integrate position' = T plus the frame structure equations with kappa = 1
/// and the prescribed torsion, classical RK4 at a fixed step, re-projecting
/// the frame onto its Gram pattern after every step. range.hi < range.lo
/// integrates backward.
SampledCurve integrate_frame(const CausalSignature& sig, const TauFn& tau,
                             const FrameState& initial, Interval range, double step,
                             const IntegrateOptions& opts = {});

SampledCurve integrate_frame(const CausalSignature& sig, const TorsionFamily& family,
                             const FrameState& initial, Interval range, double step,
                             const IntegrateOptions& opts = {});

enum class SalkowskiCase { I, II, III };

CausalSignature salkowski_signature(SalkowskiCase c) noexcept;
TorsionFamily salkowski_family(SalkowskiCase c, double phi);

/// Constant-curvature curve with the Salkowski torsion of the given case,
/// integrated from the canonical frame of the matching signature.
SampledCurve make_salkowski(SalkowskiCase c, double phi, Interval range, double step);

/// Deviation of a state's Gram matrix from the signature's target pattern
/// (max over the six pairings), and its max over a whole curve.
double gram_deviation(const FrameState& state, const CausalSignature& sig);
double max_gram_drift(const SampledCurve& curve);

/// Torsion read back from the stored frames alone: N' from a five-point
/// finite-difference stencil, then tau = eps_B g(N', B) (non-null) or
/// tau = g(N', B) (null). Independent of whatever produced the samples.
std::vector<double> recover_tau(const SampledCurve& curve);

/// alpha^(0..k_max) at a frame state, derived from the structure equations
/// with kappa = 1 and the given torsion jet (order >= k_max - 1).
std::vector<Vec3> derivatives_from_frame(const FrameState& state, const CausalSignature& sig,
                                         const Jet& tau, int k_max);

/// Derivative provider over the nodes of a synthesized curve; s must coincide
/// with a stored node. The curve must outlive the returned function.
DerivativeFn sampled_derivative_fn(const SampledCurve& curve, TauJetFn tau);

} // namespace mink
