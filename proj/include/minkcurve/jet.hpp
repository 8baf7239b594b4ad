#pragma once

#include <array>

#include "minkcurve/error.hpp"

namespace mink {

/// Truncated Taylor expansion of a scalar function of the curve parameter s
/// around a point s0: coeff(k) = f^(k)(s0) / k!. Arithmetic propagates the
/// expansion through every elementary operation, so coefficients stay exact to
/// rounding — this is what makes fifth derivatives usable at all.
///
/// The order is fixed when a jet is created (default 6, one above the highest
/// derivative the detectors consume); combining jets of different orders
/// truncates to the smaller one.
class Jet {
public:
    static constexpr int kMaxOrder = 9;
    static constexpr int kDefaultOrder = 6;

    /// Detect true poles only: near-pole ill-conditioning is surfaced by the
    /// sampling layer, not masked here.
    static constexpr double kTolDiv = 1e-300;

    Jet() = default;

    static Jet constant(double value, int order);
    /// The jet of the parameter itself: (s0, 1, 0, ...).
    static Jet variable(double s0, int order);

    int order() const noexcept { return order_; }
    double coeff(int k) const noexcept { return k <= order_ ? c_[static_cast<size_t>(k)] : 0.0; }
    double value() const noexcept { return c_[0]; }
    /// f^(k)(s0) = k! * coeff(k).
    double derivative(int k) const;

    bool finite() const noexcept;

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a);

    friend Jet operator+(double k, const Jet& a);
    friend Jet operator+(const Jet& a, double k);
    friend Jet operator-(double k, const Jet& a);
    friend Jet operator-(const Jet& a, double k);
    friend Jet operator*(double k, const Jet& a);
    friend Jet operator*(const Jet& a, double k);
    friend Jet operator/(const Jet& a, double k);
    friend Jet operator/(double k, const Jet& a);

    friend Jet sqrt(const Jet& a);
    friend Jet exp(const Jet& a);
    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet sinh(const Jet& a);
    friend Jet cosh(const Jet& a);
    friend Jet tanh(const Jet& a);
    friend Jet pow_int(const Jet& a, long long n);

    /// Jet of f' at the same point, one order lower.
    friend Jet derivative_jet(const Jet& a);

private:
    friend struct JetDetail;
    Jet(int order, bool) : order_(order) {}
    void check_order(int order) const;

    std::array<double, kMaxOrder + 1> c_{};
    int order_ = 0;
};

/// Leading (value) coefficient; overloads let frame code branch on either
/// scalar kind.
inline double leading(double x) noexcept { return x; }
inline double leading(const Jet& x) noexcept { return x.value(); }

} // namespace mink
