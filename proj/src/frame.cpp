#include "minkcurve/frame.hpp"

#include <cmath>

namespace mink {

namespace {

Vec3 values_of(const Vec3T<Jet>& v) { return {v.x0.value(), v.x1.value(), v.x2.value()}; }

Vec3T<Jet> derivative_vec(const Vec3T<Jet>& v) {
    return {derivative_jet(v.x0), derivative_jet(v.x1), derivative_jet(v.x2)};
}

Vec3T<Jet> constant_vec(const Vec3& v, int order) {
    return {Jet::constant(v.x0, order), Jet::constant(v.x1, order), Jet::constant(v.x2, order)};
}

Vec3T<Jet> position_jets(const CurveDef& curve, double s0) {
    auto jets = curve.eval_jets(s0, Jet::kDefaultOrder);
    return {jets[0], jets[1], jets[2]};
}

} // namespace

const char* to_string(CurveClass c) noexcept {
    switch (c) {
        case CurveClass::NonNullUnitSpeed: return "NonNullUnitSpeed";
        case CurveClass::NullPseudoArc: return "NullPseudoArc";
        case CurveClass::SpacelikeLightlikeNormal: return "SpacelikeLightlikeNormal";
        case CurveClass::NotNormalized: return "NotNormalized";
    }
    return "?";
}

Classification classify_curve(const CurveDef& curve, double s0) {
    const auto derivs = curve.eval_derivatives(s0, 2);
    const Vec3& d1 = derivs[1];
    const Vec3& d2 = derivs[2];

    Classification r;
    r.g_tangent = metric_g(d1, d1);
    r.g_accel = metric_g(d2, d2);

    const double e1 = euclid_norm2(d1);
    const double e2 = euclid_norm2(d2);
    r.degenerate_curvature = e2 <= kTolKappa * kTolKappa;

    if (e1 <= kTolKappa * kTolKappa) {
        // not even a regular curve at this point
        r.cls = CurveClass::NotNormalized;
        return r;
    }

    if (causal_class(d1, e1) == CausalClass::Lightlike) {
        if (!r.degenerate_curvature && std::abs(r.g_accel - 1.0) <= kTolUnit)
            r.cls = CurveClass::NullPseudoArc;
        else
            r.cls = CurveClass::NotNormalized; // straight null line or unnormalized null curve
        return r;
    }

    if (std::abs(std::abs(r.g_tangent) - 1.0) > kTolUnit) {
        r.cls = CurveClass::NotNormalized;
        return r;
    }

    r.eps_T = Sign::of(r.g_tangent);
    if (!r.degenerate_curvature && r.eps_T == Sign::plus() &&
        causal_class(d2, e2) == CausalClass::Lightlike) {
        r.cls = CurveClass::SpacelikeLightlikeNormal;
        return r;
    }
    r.cls = CurveClass::NonNullUnitSpeed;
    return r;
}

FrenetJets nonnull_frenet_jets(const CurveDef& curve, double s0) {
    const Classification cls = classify_curve(curve, s0);
    switch (cls.cls) {
        case CurveClass::NonNullUnitSpeed: break;
        case CurveClass::SpacelikeLightlikeNormal:
            fail(Errc::lightlike_normal,
                 "alpha'' is lightlike at s = " + std::to_string(s0) +
                     ": no Frenet frame (spacelike curve with lightlike normal)");
        case CurveClass::NullPseudoArc:
            fail(Errc::precondition,
                 "curve is null at s = " + std::to_string(s0) + "; use the Cartan frame");
        case CurveClass::NotNormalized:
            fail(Errc::not_normalized, "curve is not unit-speed at s = " + std::to_string(s0) +
                                           " (g(alpha', alpha') = " +
                                           std::to_string(cls.g_tangent) + ")");
    }
    if (cls.degenerate_curvature)
        fail(Errc::degenerate_curvature,
             "curvature vanishes at s = " + std::to_string(s0) + ": Frenet frame undefined");

    const Vec3T<Jet> pos = position_jets(curve, s0);
    const Vec3T<Jet> T = derivative_vec(pos);
    const Vec3T<Jet> Tp = derivative_vec(T);

    const Sign eps_T = Sign::of(leading(metric_g(T, T)));
    const Jet gTpTp = metric_g(Tp, Tp);
    const Sign eps_N = Sign::of(leading(gTpTp));
    const Jet kappa = sqrt(eps_N.as_double() * gTpTp);
    const Vec3T<Jet> N = Tp / kappa;

    Vec3T<Jet> B = lorentz_cross(T, N);
    const Jet gBB = metric_g(B, B);
    const Sign eps_B = Sign::of(leading(gBB));
    B = B / sqrt(eps_B.as_double() * gBB);
    // orientation convention: det3(T, N, B) > 0, so the same curve and point
    // always produce the identical frame
    if (leading(det3(T, N, B)) < 0.0) B = -B;

    const Jet tau = eps_B.as_double() * metric_g(derivative_vec(N), B);
    return {T, N, B, kappa, tau, eps_T, eps_N, eps_B};
}

CartanJets null_cartan_jets(const CurveDef& curve, double s0) {
    const Classification cls = classify_curve(curve, s0);
    if (cls.cls != CurveClass::NullPseudoArc) {
        const auto d1 = curve.eval_derivatives(s0, 1)[1];
        const bool null_tangent = causal_class(d1, euclid_norm2(d1)) == CausalClass::Lightlike;
        if (null_tangent && cls.degenerate_curvature)
            fail(Errc::straight_null_line,
                 "alpha'' vanishes at s = " + std::to_string(s0) + ": straight null line");
        if (null_tangent)
            fail(Errc::not_normalized,
                 "null curve is not in pseudo-arc parametrization at s = " + std::to_string(s0) +
                     " (g(alpha'', alpha'') = " + std::to_string(cls.g_accel) + ")");
        fail(Errc::precondition, "curve is not null at s = " + std::to_string(s0) +
                                     " (g(alpha', alpha') = " + std::to_string(cls.g_tangent) +
                                     ")");
    }

    const Vec3T<Jet> pos = position_jets(curve, s0);
    const Vec3T<Jet> T = derivative_vec(pos);
    const Vec3T<Jet> N = derivative_vec(T); // alpha'': unit spacelike by pseudo-arc

    // B is the second null direction of the g-orthocomplement of N, scaled so
    // that g(T, B) = 1. Seed with the coordinate direction least parallel to
    // T inside that complement; the solution itself is unique.
    const Vec3 Tv = values_of(T);
    const Vec3 Nv = values_of(N);
    const Vec3 axes[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    int best = 0;
    double best_pairing = -1.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 v = axes[i] - metric_g(axes[i], Nv) * Nv;
        const double pairing = std::abs(metric_g(Tv, v));
        if (pairing > best_pairing) {
            best_pairing = pairing;
            best = i;
        }
    }
    if (best_pairing <= 1e-12 * std::sqrt(euclid_norm2(Tv)))
        fail(Errc::degenerate_frame,
             "cannot construct the null transversal direction at s = " + std::to_string(s0));

    const int order = T.x0.order();
    const Vec3T<Jet> E = constant_vec(axes[best], order);
    const Vec3T<Jet> V = E - metric_g(E, N) * N;
    const Jet gTV = metric_g(T, V);
    const Vec3T<Jet> U = V - (metric_g(V, V) / (2.0 * gTV)) * T;
    const Vec3T<Jet> B = U / gTV;

    const Jet tau = metric_g(derivative_vec(N), B);
    return {T, N, B, tau};
}

FrenetApparatus nonnull_frenet(const CurveDef& curve, double s0) {
    const FrenetJets f = nonnull_frenet_jets(curve, s0);
    return {values_of(f.T), values_of(f.N),     values_of(f.B), f.kappa.value(),
            f.tau.value(),  f.eps_T,            f.eps_N,        f.eps_B};
}

CartanApparatus null_cartan(const CurveDef& curve, double s0) {
    const CartanJets f = null_cartan_jets(curve, s0);
    return {values_of(f.T), values_of(f.N), values_of(f.B), 1.0, f.tau.value()};
}

} // namespace mink
