#include "minkcurve/jet.hpp"

#include <algorithm>
#include <cmath>

namespace mink {

namespace {

// Exact factorials, enough for kMaxOrder.
constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0};

int common_order(const Jet& a, const Jet& b) noexcept { return std::min(a.order(), b.order()); }

} // namespace

// S' = C a', C' = -S a' (circular) or C' = +S a' (hyperbolic), solved jointly.
struct JetDetail {
    static std::pair<Jet, Jet> sincos(const Jet& a, bool hyperbolic) {
        Jet s(a.order_, true), c(a.order_, true);
        s.c_[0] = hyperbolic ? std::sinh(a.c_[0]) : std::sin(a.c_[0]);
        c.c_[0] = hyperbolic ? std::cosh(a.c_[0]) : std::cos(a.c_[0]);
        const double flip = hyperbolic ? 1.0 : -1.0;
        for (int k = 1; k <= a.order_; ++k) {
            double accs = 0.0, accc = 0.0;
            for (int j = 1; j <= k; ++j) {
                accs += j * a.c_[j] * c.c_[k - j];
                accc += j * a.c_[j] * s.c_[k - j];
            }
            s.c_[k] = accs / k;
            c.c_[k] = flip * accc / k;
        }
        return {s, c};
    }
};

void Jet::check_order(int order) const {
    if (order < 0 || order > kMaxOrder)
        fail(Errc::invalid_argument, "jet order must be in [0, " + std::to_string(kMaxOrder) + "]");
}

Jet Jet::constant(double value, int order) {
    Jet j(order, true);
    j.check_order(order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(double s0, int order) {
    Jet j = constant(s0, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const {
    if (k < 0 || k > order_)
        fail(Errc::invalid_argument, "jet derivative order " + std::to_string(k) +
                                         " exceeds jet order " + std::to_string(order_));
    return kFactorial[k] * c_[static_cast<size_t>(k)];
}

bool Jet::finite() const noexcept {
    for (int k = 0; k <= order_; ++k)
        if (!std::isfinite(c_[static_cast<size_t>(k)])) return false;
    return true;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r(common_order(a, b), true);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r(common_order(a, b), true);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
}

Jet operator-(const Jet& a) {
    Jet r(a.order_, true);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = -a.c_[k];
    return r;
}

// Cauchy product, truncated.
Jet operator*(const Jet& a, const Jet& b) {
    Jet r(common_order(a, b), true);
    for (int k = 0; k <= r.order_; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
        r.c_[k] = acc;
    }
    return r;
}

// Triangular solve of b * r = a. A vanishing leading coefficient of b means
// the enclosing expression is evaluated at a pole.
Jet operator/(const Jet& a, const Jet& b) {
    if (std::abs(b.c_[0]) <= Jet::kTolDiv)
        fail(Errc::pole, "jet division by a singular divisor (leading coefficient "
                         "vanishes: evaluation at a pole)");
    Jet r(common_order(a, b), true);
    for (int k = 0; k <= r.order_; ++k) {
        double acc = a.c_[k];
        for (int j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
        r.c_[k] = acc / b.c_[0];
    }
    return r;
}

Jet operator+(double k, const Jet& a) { return Jet::constant(k, a.order_) + a; }
Jet operator+(const Jet& a, double k) { return a + Jet::constant(k, a.order_); }
Jet operator-(double k, const Jet& a) { return Jet::constant(k, a.order_) - a; }
Jet operator-(const Jet& a, double k) { return a - Jet::constant(k, a.order_); }

Jet operator*(double k, const Jet& a) {
    Jet r(a.order_, true);
    for (int i = 0; i <= r.order_; ++i) r.c_[i] = k * a.c_[i];
    return r;
}

Jet operator*(const Jet& a, double k) { return k * a; }
Jet operator/(const Jet& a, double k) { return (1.0 / k) * a; }
Jet operator/(double k, const Jet& a) { return Jet::constant(k, a.order_) / a; }

Jet sqrt(const Jet& a) {
    if (!(a.c_[0] > Jet::kTolDiv))
        fail(Errc::domain, "jet sqrt of non-positive leading coefficient");
    Jet r(a.order_, true);
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
        double acc = a.c_[k];
        for (int j = 1; j <= k - 1; ++j) acc -= r.c_[j] * r.c_[k - j];
        r.c_[k] = acc / (2.0 * r.c_[0]);
    }
    return r;
}

// E' = E * a'  =>  k E_k = sum_{j=1..k} j a_j E_{k-j}
Jet exp(const Jet& a) {
    Jet r(a.order_, true);
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= r.order_; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a.c_[j] * r.c_[k - j];
        r.c_[k] = acc / k;
    }
    return r;
}

Jet sin(const Jet& a) { return JetDetail::sincos(a, false).first; }
Jet cos(const Jet& a) { return JetDetail::sincos(a, false).second; }
Jet sinh(const Jet& a) { return JetDetail::sincos(a, true).first; }
Jet cosh(const Jet& a) { return JetDetail::sincos(a, true).second; }

// t' = (1 - t^2) a', driven by the partial coefficients of 1 - t^2 so the
// value slot agrees bitwise with std::tanh.
Jet tanh(const Jet& a) {
    Jet t(a.order_, true);
    std::array<double, Jet::kMaxOrder + 1> q{}; // coefficients of 1 - t^2
    t.c_[0] = std::tanh(a.c_[0]);
    q[0] = 1.0 - t.c_[0] * t.c_[0];
    for (int k = 1; k <= a.order_; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a.c_[j] * q[static_cast<size_t>(k - j)];
        t.c_[k] = acc / k;
        double sq = 0.0;
        for (int i = 0; i <= k; ++i) sq += t.c_[i] * t.c_[k - i];
        q[static_cast<size_t>(k)] = -sq;
    }
    return t;
}

Jet pow_int(const Jet& a, long long n) {
    if (n < 0) return Jet::constant(1.0, a.order_) / pow_int(a, -n);
    Jet r = Jet::constant(1.0, a.order_);
    Jet base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Jet derivative_jet(const Jet& a) {
    if (a.order_ == 0) fail(Errc::invalid_argument, "derivative of an order-0 jet");
    Jet r(a.order_ - 1, true);
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = (k + 1) * a.c_[k + 1];
    return r;
}

} // namespace mink
