#pragma once

#include "minkcurve/expr.hpp"
#include "minkcurve/jet.hpp"
#include "minkcurve/vec3.hpp"

namespace mink {

inline constexpr double kTolUnit = 1e-7;
inline constexpr double kTolKappa = 1e-9;

enum class CurveClass {
    NonNullUnitSpeed,
    NullPseudoArc,
    SpacelikeLightlikeNormal,
    NotNormalized,
};

const char* to_string(CurveClass c) noexcept;

struct Classification {
    CurveClass cls = CurveClass::NotNormalized;
    double g_tangent = 0.0; ///< measured g(alpha', alpha')
    double g_accel = 0.0;   ///< measured g(alpha'', alpha'')
    Sign eps_T = Sign::plus();
    /// ||alpha''|| below tolerance: straight line (non-null) or straight null
    /// line; the frame operations reject these.
    bool degenerate_curvature = false;
};

/// Frame of a non-null unit-speed curve. The structure equations are
///   T' = kappa N,  N' = -eps_T eps_N kappa T + tau B,  B' = -eps_N eps_B tau N.
struct FrenetApparatus {
    Vec3 T, N, B;
    double kappa = 0.0; ///< >= 0
    double tau = 0.0;
    Sign eps_T, eps_N, eps_B;
};

/// Frame of a null curve in pseudo-arc parametrization:
///   g(T,T) = g(B,B) = 0, g(N,N) = 1, g(T,N) = g(N,B) = 0, g(T,B) = 1,
///   T' = kappa N,  N' = tau T - kappa B,  B' = -tau N,  with kappa = 1.
struct CartanApparatus {
    Vec3 T, N, B;
    double kappa = 1.0;
    double tau = 0.0;
};

/// Same apparatus with every scalar carried as a jet in s, so curvature and
/// torsion arrive with their derivatives. This is what the detectors consume.
struct FrenetJets {
    Vec3T<Jet> T, N, B;
    Jet kappa, tau;
    Sign eps_T, eps_N, eps_B;
};

struct CartanJets {
    Vec3T<Jet> T, N, B;
    Jet tau;
};

Classification classify_curve(const CurveDef& curve, double s0);

FrenetApparatus nonnull_frenet(const CurveDef& curve, double s0);
CartanApparatus null_cartan(const CurveDef& curve, double s0);

FrenetJets nonnull_frenet_jets(const CurveDef& curve, double s0);
CartanJets null_cartan_jets(const CurveDef& curve, double s0);

} // namespace mink
