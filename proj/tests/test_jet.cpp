#include <cmath>
#include <random>

#include "doctest.h"
#include "minkcurve/jet.hpp"

using namespace mink;

namespace {

// Smooth jets with O(1) coefficients; well-conditioned divisors carry a
// leading coefficient of magnitude at least 1 so the triangular solve does
// not amplify rounding.
Jet random_jet(std::mt19937_64& rng, bool nonsingular) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Jet j = Jet::constant(0.0, 6);
    for (int k = 6; k >= 1; --k) j = j + d(rng) * pow_int(Jet::variable(0.0, 6), k);
    double lead = d(rng);
    if (nonsingular) lead = (lead < 0 ? -1.0 : 1.0) + lead;
    return j + lead;
}

// plain five-point central differences of f around s0
double central_fd(double (*f)(double), double s0, int k, double h) {
    const double fm2 = f(s0 - 2 * h), fm1 = f(s0 - h), f1 = f(s0 + h), f2 = f(s0 + 2 * h);
    const double f0 = f(s0);
    switch (k) {
        case 1: return (fm2 - 8 * fm1 + 8 * f1 - f2) / (12 * h);
        case 2: return (-fm2 + 16 * fm1 - 30 * f0 + 16 * f1 - f2) / (12 * h * h);
        default: return 0.0;
    }
}

} // namespace

TEST_CASE("variable jet squared expands (s0 + h)^2") {
    const Jet s = Jet::variable(2.0, 3);
    const Jet sq = s * s;
    CHECK(sq.coeff(0) == 4.0);
    CHECK(sq.coeff(1) == 4.0);
    CHECK(sq.coeff(2) == 1.0);
    CHECK(sq.coeff(3) == 0.0);
}

TEST_CASE("jet divided by itself is the constant one") {
    std::mt19937_64 rng(10u);
    for (int i = 0; i < 50; ++i) {
        const Jet c = random_jet(rng, true);
        const Jet one = c / c;
        CHECK(one.coeff(0) == doctest::Approx(1.0).epsilon(1e-14));
        for (int k = 1; k <= one.order(); ++k)
            CHECK(std::abs(one.coeff(k)) <= 1e-13);
    }
}

TEST_CASE("reciprocal of s at s0 = 1") {
    const Jet r = 1.0 / Jet::variable(1.0, 2);
    // exact coefficients of 1/(1+h) = 1 - h + h^2 - ...
    CHECK(r.coeff(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.coeff(1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(r.coeff(2) == doctest::Approx(1.0).epsilon(1e-15));
    // and the finite-difference cross-check the expansion came from
    const auto f = +[](double s) { return 1.0 / s; };
    CHECK(r.derivative(1) == doctest::Approx(central_fd(f, 1.0, 1, 1e-3)).epsilon(1e-6));
    CHECK(r.derivative(2) == doctest::Approx(central_fd(f, 1.0, 2, 1e-3)).epsilon(1e-6));
}

TEST_CASE("sin of the zero jet vanishes identically") {
    const Jet z = sin(Jet::constant(0.0, 5));
    for (int k = 0; k <= 5; ++k) CHECK(z.coeff(k) == 0.0);
}

TEST_CASE("exp of the variable jet at 0") {
    const Jet e = exp(Jet::variable(0.0, 3));
    CHECK(e.coeff(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.coeff(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.coeff(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.coeff(3) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("sqrt of 1 + s^2 matches finite differences at s0 = 1") {
    const Jet s = Jet::variable(1.0, 2);
    const Jet r = sqrt(1.0 + s * s);
    const auto f = +[](double x) { return std::sqrt(1.0 + x * x); };
    CHECK(std::abs(r.derivative(1) - central_fd(f, 1.0, 1, 1e-3)) <= 1e-8);
    CHECK(std::abs(r.derivative(2) - central_fd(f, 1.0, 2, 1e-3)) <= 1e-8);
}

TEST_CASE("derivatives 1..5 against exact closed forms") {
    // 1/s at s0: f^(k) = (-1)^k k! / s^(k+1)
    const double s0 = 1.3;
    const Jet inv = 1.0 / Jet::variable(s0, 6);
    double factorial = 1.0;
    for (int k = 1; k <= 5; ++k) {
        factorial *= k;
        const double want = (k % 2 ? -1.0 : 1.0) * factorial / std::pow(s0, k + 1);
        CHECK(inv.derivative(k) == doctest::Approx(want).epsilon(1e-12));
    }
    // exp(2s): f^(k) = 2^k exp(2 s0)
    const Jet e2 = exp(2.0 * Jet::variable(0.7, 6));
    for (int k = 1; k <= 5; ++k)
        CHECK(e2.derivative(k) ==
              doctest::Approx(std::pow(2.0, k) * std::exp(1.4)).epsilon(1e-12));
    // sin(s): derivatives cycle through cos, -sin, -cos, sin
    const Jet sn = sin(Jet::variable(0.9, 6));
    const double c = std::cos(0.9), s = std::sin(0.9);
    const double cycle[4] = {c, -s, -c, s};
    for (int k = 1; k <= 5; ++k)
        CHECK(sn.derivative(k) == doctest::Approx(cycle[(k - 1) % 4]).epsilon(1e-12));
    // sqrt(1 + s): f^(k) = (1/2)(1/2 - 1)...(1/2 - k + 1) (1 + s)^(1/2 - k)
    const Jet rt = sqrt(1.0 + Jet::variable(0.5, 6));
    double coeff = 1.0;
    for (int k = 1; k <= 5; ++k) {
        coeff *= 0.5 - (k - 1);
        CHECK(rt.derivative(k) ==
              doctest::Approx(coeff * std::pow(1.5, 0.5 - k)).epsilon(1e-12));
    }
    // tanh(s) via the identity tanh' = 1 - tanh^2 applied to the jet itself
    const Jet th = tanh(Jet::variable(0.6, 6));
    const Jet th_prime = derivative_jet(th);
    const Jet identity = 1.0 - th * th;
    for (int k = 0; k <= th_prime.order(); ++k)
        CHECK(th_prime.coeff(k) == doctest::Approx(identity.coeff(k)).epsilon(1e-13));
}

TEST_CASE("integer powers, including negative exponents") {
    const Jet s = Jet::variable(2.0, 4);
    CHECK(pow_int(s, 3).coeff(0) == doctest::Approx(8.0));
    CHECK(pow_int(s, 3).coeff(1) == doctest::Approx(12.0)); // d(s^3) = 3 s^2
    CHECK(pow_int(s, 0).coeff(0) == 1.0);
    const Jet m = pow_int(s, -2);
    CHECK(m.coeff(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(m.derivative(1) == doctest::Approx(-2.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("division by a singular jet reports a pole") {
    const Jet zero_lead = Jet::variable(0.0, 3); // value coefficient 0
    try {
        const Jet q = Jet::constant(1.0, 3) / zero_lead;
        (void)q;
        FAIL("expected a pole error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::pole);
    }
}

TEST_CASE("sqrt of a non-positive leading coefficient is a domain error") {
    try {
        (void)sqrt(Jet::constant(-1.0, 3));
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::domain);
    }
}

TEST_CASE("Leibniz rule holds to rounding") {
    std::mt19937_64 rng(11u);
    for (int i = 0; i < 200; ++i) {
        const Jet a = random_jet(rng, false), b = random_jet(rng, false);
        const Jet lhs = derivative_jet(a * b);
        const Jet rhs = derivative_jet(a) * b + a * derivative_jet(b);
        for (int k = 0; k <= lhs.order(); ++k)
            CHECK(std::abs(lhs.coeff(k) - rhs.coeff(k)) <=
                  1e-12 * std::max(1.0, std::abs(rhs.coeff(k))));
    }
}

TEST_CASE("division undoes multiplication") {
    std::mt19937_64 rng(12u);
    for (int i = 0; i < 200; ++i) {
        const Jet a = random_jet(rng, false), b = random_jet(rng, true);
        const Jet back = (a * b) / b;
        for (int k = 0; k <= back.order(); ++k)
            CHECK(std::abs(back.coeff(k) - a.coeff(k)) <=
                  1e-12 * std::max(1.0, std::abs(a.coeff(k))));
    }
}

TEST_CASE("mixed-order arithmetic truncates to the smaller order") {
    const Jet a = Jet::variable(1.0, 6);
    const Jet b = Jet::variable(1.0, 3);
    CHECK((a * b).order() == 3);
    CHECK((a + b).order() == 3);
    CHECK(derivative_jet(a).order() == 5);
}
