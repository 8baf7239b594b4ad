#pragma once

#include <cmath>

#include "minkcurve/error.hpp"

namespace mink {

/// Causal sign of a frame vector: always -1 or +1, never 0.
class Sign {
public:
    constexpr Sign() = default;

    static Sign of(double g) {
        if (g == 0.0) fail(Errc::invalid_argument, "causal sign of a null metric value");
        return Sign(g > 0.0 ? 1 : -1);
    }
    static constexpr Sign plus() noexcept { return Sign(1); }
    static constexpr Sign minus() noexcept { return Sign(-1); }

    constexpr int value() const noexcept { return v_; }
    constexpr double as_double() const noexcept { return static_cast<double>(v_); }

    friend constexpr Sign operator*(Sign a, Sign b) noexcept { return Sign(a.v_ * b.v_); }
    friend constexpr Sign operator-(Sign a) noexcept { return Sign(-a.v_); }
    friend constexpr bool operator==(Sign a, Sign b) noexcept { return a.v_ == b.v_; }

private:
    constexpr explicit Sign(int v) noexcept : v_(v) {}
    int v_ = 1;
};

/// Point or vector of Minkowski 3-space, components ordered (x0, x1, x2) in the
/// basis where the metric is diag(-1, +1, +1); x0 is the timelike coordinate.
/// The scalar is double for geometry and Jet when derivatives ride along.
template <class S>
struct Vec3T {
    S x0{}, x1{}, x2{};
};

using Vec3 = Vec3T<double>;

enum class CausalClass { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalClass c) noexcept {
    switch (c) {
        case CausalClass::Spacelike: return "Spacelike";
        case CausalClass::Timelike: return "Timelike";
        case CausalClass::Lightlike: return "Lightlike";
    }
    return "?";
}

/// Relative tolerance for lightlike classification; derivatives come from jets
/// and are exact to rounding, so this only has to absorb accumulated float error.
inline constexpr double kTolNull = 1e-9;

template <class S>
S metric_g(const Vec3T<S>& x, const Vec3T<S>& y) {
    return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2;
}

template <class S>
S det3(const Vec3T<S>& a, const Vec3T<S>& b, const Vec3T<S>& c) {
    return a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - a.x1 * (b.x0 * c.x2 - b.x2 * c.x0) +
           a.x2 * (b.x0 * c.x1 - b.x1 * c.x0);
}

/// The unique bilinear product with g(lorentz_cross(x, y), z) = det3(x, y, z):
/// the Euclidean cross product with diag(-1, 1, 1) applied to the result.
template <class S>
Vec3T<S> lorentz_cross(const Vec3T<S>& x, const Vec3T<S>& y) {
    return {-(x.x1 * y.x2 - x.x2 * y.x1), x.x2 * y.x0 - x.x0 * y.x2, x.x0 * y.x1 - x.x1 * y.x0};
}

template <class S>
Vec3T<S> operator+(const Vec3T<S>& a, const Vec3T<S>& b) {
    return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2};
}

template <class S>
Vec3T<S> operator-(const Vec3T<S>& a, const Vec3T<S>& b) {
    return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2};
}

template <class S>
Vec3T<S> operator-(const Vec3T<S>& a) {
    return {-a.x0, -a.x1, -a.x2};
}

template <class S, class T>
Vec3T<S> operator*(const T& k, const Vec3T<S>& v) {
    return {k * v.x0, k * v.x1, k * v.x2};
}

template <class S, class T>
Vec3T<S> operator/(const Vec3T<S>& v, const T& k) {
    return {v.x0 / k, v.x1 / k, v.x2 / k};
}

inline double euclid_norm2(const Vec3& v) noexcept {
    return v.x0 * v.x0 + v.x1 * v.x1 + v.x2 * v.x2;
}

inline double euclid_norm(const Vec3& v) noexcept { return std::sqrt(euclid_norm2(v)); }

inline double euclid_dot(const Vec3& a, const Vec3& b) noexcept {
    return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2;
}

/// Lorentzian norm sqrt(|g(v, v)|).
inline double lorentz_norm(const Vec3& v) noexcept { return std::sqrt(std::abs(metric_g(v, v))); }

/// Classify a vector by the sign of g(v, v). `scale` is a characteristic
/// magnitude of v (Euclidean norm squared works); |g| <= kTolNull * scale
/// counts as lightlike. The zero vector classifies lightlike.
inline CausalClass causal_class(const Vec3& v, double scale) {
    if (scale < 0.0) fail(Errc::invalid_argument, "causal_class: scale must be >= 0");
    const double g = metric_g(v, v);
    if (std::abs(g) <= kTolNull * scale) return CausalClass::Lightlike;
    return g > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

} // namespace mink
