#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "doctest.h"
#include "minkcurve/characterize.hpp"

using namespace mink;

namespace {

CurveDef example1() {
    return CurveDef::parse("(1/6*(s^5/5 - 1/s), 1/6*s^2, 1/6*(s^5/5 + 1/s))", {-10.0, 10.0},
                           {0.0});
}

Jet tau_jet_of(const char* text, double s0, int order = 3) {
    return eval(*parse_expr(text), Jet::variable(s0, order));
}

} // namespace

TEST_CASE("det_k verdicts on the standard corpus") {
    const auto grid = uniform_grid(0.5, 3.0, 201);

    const CurveDef line = CurveDef::parse("(0, s, 0)", {-5.0, 5.0});
    const ResidualReport line_k3 = det_k(line, 3, grid);
    CHECK(line_k3.verdict == Verdict::Vanishes);
    CHECK(line_k3.max_abs_value() == 0.0);

    CHECK(det_k(example1(), 3, grid).verdict == Verdict::Vanishes);

    const CurveDef planar = CurveDef::parse("(0, cos(s), sin(s))", {-10.0, 10.0});
    CHECK(det_k(planar, 1, grid).verdict == Verdict::Vanishes);
    // ... and it is a great circle of the unit sphere, so k = 0 vanishes too
    CHECK(det_k(planar, 0, grid).verdict == Verdict::Vanishes);

    const CurveDef helix = CurveDef::parse("(s, cos(sqrt(2)*s), sin(sqrt(2)*s))", {-10.0, 10.0});
    CHECK(det_k(helix, 1, grid).verdict == Verdict::NonVanishing);
    CHECK(det_k(helix, 2, grid).verdict == Verdict::Vanishes);
}

TEST_CASE("det_k grid policy: empty grids, short grids, dropped poles") {
    const CurveDef line = CurveDef::parse("(0, s, 0)", {-5.0, 5.0});
    CHECK_THROWS_AS((void)det_k(line, 3, {}), Error);

    // a clean zero on a short grid is only inconclusive
    CHECK(det_k(line, 3, uniform_grid(0.0, 1.0, 50)).verdict == Verdict::Inconclusive);

    // grid points inside the pole guard are dropped and counted; more than 10%
    // dropped makes the report inconclusive
    const CurveDef ref = example1();
    auto grid = uniform_grid(0.5, 3.0, 201);
    grid[0] = 0.0;
    const ResidualReport r = det_k(ref, 3, grid);
    CHECK(r.dropped_points == 1);
    CHECK(r.grid.size() == 200);
    CHECK(r.verdict == Verdict::Inconclusive); // 200 evaluated < 201 minimum

    std::vector<double> mostly_poles;
    for (int i = 0; i < 6; ++i) mostly_poles.push_back(-6e-7 + 1e-7 * i); // inside the guard
    for (int i = 0; i < 34; ++i) mostly_poles.push_back(0.5 + 0.05 * i);
    const ResidualReport heavy = det_k(ref, 3, mostly_poles);
    CHECK(heavy.dropped_points == 6);
    CHECK(heavy.verdict == Verdict::Inconclusive);

    CHECK_THROWS_AS((void)det_k(ref, 3, std::vector<double>{1.0, 0.5}), Error);
}

TEST_CASE("report JSON has the documented field order and 17-digit floats") {
    const CurveDef line = CurveDef::parse("(0, s, 0)", {-5.0, 5.0});
    const ResidualReport r = det_k(line, 3, {0.0, 1.0});
    CHECK(r.to_json() ==
          "{\"grid\":[0,1],\"values\":[0,0],\"scale\":0,\"verdict\":\"Inconclusive\","
          "\"threshold\":9.9999999999999995e-08,\"dropped_points\":0}");
}

TEST_CASE("closed-form residuals at pinned points") {
    // constant torsion is always a solution
    CHECK(residual_nonnull(Jet::constant(0.7, 3), Sign::plus(), Sign::minus()) == 0.0);
    CHECK(residual_null(Jet::constant(0.7, 3)) == 0.0);

    // tau = s^2 at s = 1 with eT eB = -1: 2 (1 - s^4) + 12 s^4 = 12
    CHECK(residual_nonnull(tau_jet_of("s^2", 1.0), Sign::plus(), Sign::minus()) ==
          doctest::Approx(12.0).epsilon(1e-14));

    // tau = s at s = 1 under the null residual: 2 s * 0 - 3 * 1 = -3
    CHECK(residual_null(tau_jet_of("s", 1.0)) == doctest::Approx(-3.0).epsilon(1e-14));

    // the reference torsion -4/s^2 solves the null equation
    CHECK(std::abs(residual_null(tau_jet_of("-4/s^2", 1.0))) <= 1e-12);

    CHECK_THROWS_AS((void)residual_null(Jet::constant(1.0, 1)), Error);
}

TEST_CASE("family solutions annihilate their residuals") {
    std::mt19937_64 rng(31u);
    std::uniform_real_distribution<double> b_dist(0.3, 2.0), c_dist(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double b = b_dist(rng), c = c_dist(rng);
        const auto f1 = TorsionFamily::spacelike_sn_or_timelike(b, c);
        const Jet t1 = f1.eval_jet(0.8, 3);
        CHECK(std::abs(residual_nonnull(t1, Sign::plus(), Sign::minus())) <=
              1e-10 * std::max(1.0, std::abs(t1.derivative(2))));

        const auto f2 = TorsionFamily::spacelike_tn(b, c);
        const double mid = -c / b;
        const Jet t2 = f2.eval_jet(mid + 0.5 / b, 3);
        CHECK(std::abs(residual_nonnull(t2, Sign::plus(), Sign::plus())) <=
              1e-10 * std::max(1.0, std::abs(t2.derivative(2))));

        const auto f3 = TorsionFamily::null_slant(3.0 * c + 0.5, b, c + 2.0);
        const Jet t3 = f3.eval_jet(1.0, 3);
        CHECK(std::abs(residual_null(t3)) <= 1e-12 * std::max(1.0, residual_null_scale(t3)));
    }
}

TEST_CASE("family residual reports over grids") {
    const auto family = TorsionFamily::null_slant(-4.0, 1.0, 0.0);
    const ResidualReport r = family_ode_residual(family, uniform_grid(0.5, 3.0, 101));
    CHECK(r.verdict == Verdict::Vanishes);
    CHECK(r.dropped_points == 0);

    // out-of-range points are dropped and counted
    const auto tn = TorsionFamily::spacelike_tn(1.0, 0.0);
    const ResidualReport r2 = family_ode_residual(tn, uniform_grid(-2.0, 2.0, 41));
    CHECK(r2.dropped_points > 0);
    CHECK(r2.verdict == Verdict::Inconclusive);
}

TEST_CASE("determinant equals the closed-form residual on the reference curve") {
    const auto cmp = det345_closed_form_check(example1(), uniform_grid(0.5, 3.0, 201));
    CHECK(cmp.max_rel_discrepancy <= 1e-7);
    CHECK(cmp.grid.size() == 201);
}

TEST_CASE("determinant-residual identity needs kappa = 1") {
    const CurveDef helix = CurveDef::parse("(s, cos(sqrt(2)*s), sin(sqrt(2)*s))", {-10.0, 10.0});
    try {
        (void)det345_closed_form_check(helix, uniform_grid(0.0, 1.0, 11));
        FAIL("expected kappa_not_one");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::kappa_not_one);
    }
}

TEST_CASE("slant indicator on constant-torsion curves is exactly zero") {
    const CurveDef circle = CurveDef::parse("(0, cos(s), sin(s))", {-10.0, 10.0});
    CHECK(std::abs(slant_indicator(circle, 0.7)) <= 1e-12);
    const CurveDef hyperbola = CurveDef::parse("(sinh(s), cosh(s), 0)", {-5.0, 5.0});
    CHECK(std::abs(slant_indicator(hyperbola, 0.3)) <= 1e-12);

    const SigmaReport report =
        slant_report(CurveDef::parse("(s, cos(sqrt(2)*s), sin(sqrt(2)*s))", {-10.0, 10.0}),
                     uniform_grid(0.0, 2.0, 101));
    CHECK(report.verdict == Constancy::Constant);
    CHECK(std::abs(report.mean) <= 1e-12);
}

TEST_CASE("sigma formula: unit values on the b = 1, c = 0 families") {
    // kappa = 1 with tau = s/sqrt(1 +- s^2): sigma is identically +-1
    for (double s0 : {-0.9, -0.2, 0.4, 1.7}) {
        const Jet tau = TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0).eval_jet(s0, 3);
        const double sigma = sigma_from_jets(Jet::constant(1.0, 3), tau, Sign::plus(),
                                             Sign::minus());
        CHECK(sigma == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (double s0 : {-0.7, 0.1, 0.6}) {
        const Jet tau = TorsionFamily::spacelike_tn(1.0, 0.0).eval_jet(s0, 3);
        const double sigma =
            sigma_from_jets(Jet::constant(1.0, 3), tau, Sign::plus(), Sign::plus());
        CHECK(sigma == doctest::Approx(1.0).epsilon(1e-12));
    }
    // the steep branch: tau = s/sqrt(s^2 - 1) on |s| > 1 gives sigma = -1
    for (double s0 : {1.3, 2.0}) {
        const Jet tau =
            TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0, +1, -1).eval_jet(s0, 3);
        const double sigma = sigma_from_jets(Jet::constant(1.0, 3), tau, Sign::plus(),
                                             Sign::minus());
        CHECK(sigma == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("sigma singular band and the lightlike-normal shortcut") {
    try {
        (void)sigma_from_jets(Jet::constant(1.0, 2), Jet::constant(1.0, 2), Sign::plus(),
                              Sign::minus());
        FAIL("expected sigma_singular");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::sigma_singular);
    }

    const CurveDef graph = CurveDef::parse("(s^2, s, s^2)", {-5.0, 5.0});
    CHECK_THROWS_AS((void)slant_indicator(graph, 0.4), Error);
    const SigmaReport r = slant_report(graph, uniform_grid(0.1, 1.0, 51));
    CHECK(r.verdict == Constancy::Constant);
    CHECK(!r.note.empty());
}

TEST_CASE("torsion family evaluation at pinned points") {
    CHECK(TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0).eval(1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(TorsionFamily::null_slant(-4.0, 1.0, 0.0).eval(2.0) ==
          doctest::Approx(-1.0).epsilon(1e-15));
    try {
        (void)TorsionFamily::spacelike_tn(1.0, 0.0).eval(1.0); // bracket hits zero
        FAIL("expected a range error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::range);
    }
    try {
        (void)TorsionFamily::null_slant(-4.0, 1.0, 0.0).eval(0.0); // b s + c = 0
        FAIL("expected a range error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::range);
    }
    CHECK_THROWS_AS((void)TorsionFamily::spacelike_tn(0.0, 0.5), Error);
}

TEST_CASE("Salkowski cases are exact specializations") {
    // volatile keeps the compiler from constant-folding tanh(0.8) with a
    // different rounding than the runtime library the delegation path uses
    volatile double phi_runtime = 0.8;
    const double phi = phi_runtime;
    const double b = 1.0 / std::tanh(phi);
    for (double s0 : {0.3, 0.9, 1.7}) {
        CHECK(TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiI, phi).eval(s0) ==
              TorsionFamily::spacelike_sn_or_timelike(b, 0.0).eval(s0));
    }
    for (double s0 : {0.1, 0.4, 0.6}) {
        CHECK(TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiII, phi).eval(s0) ==
              TorsionFamily::spacelike_tn(b, 0.0).eval(s0));
    }
    for (double s0 : {0.8, 1.5, 3.0}) {
        CHECK(TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiIII, phi).eval(s0) ==
              TorsionFamily::spacelike_sn_or_timelike(b, 0.0, +1, -1).eval(s0));
    }
    // validity windows
    CHECK(TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiII, phi).in_range(0.5));
    CHECK(!TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiII, phi).in_range(0.8));
    CHECK(!TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiIII, phi).in_range(0.5));
}

TEST_CASE("fit recovers family parameters from exact samples") {
    std::vector<std::pair<double, double>> samples;
    const auto sn = TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0);
    for (double s = -1.0; s <= 1.0; s += 0.1) samples.emplace_back(s, sn.eval(s));
    const FitResult r = fit_torsion_family(samples, TorsionFamily::Case::SpacelikeSNOrTimelike);
    CHECK(r.rms <= 1e-10);
    CHECK(r.family.b == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(r.family.c) <= 1e-8);
}

TEST_CASE("fit canonicalizes the null family gauge") {
    // tau = -16/(2 s)^2 = -4/s^2: the canonical representative has b = 1
    std::vector<std::pair<double, double>> samples;
    for (double s = 0.5; s <= 3.0; s += 0.125) samples.emplace_back(s, -16.0 / (4.0 * s * s));
    const FitResult r = fit_torsion_family(samples, TorsionFamily::Case::NullSlant);
    CHECK(r.rms <= 1e-10);
    CHECK(r.family.b == 1.0);
    CHECK(r.family.a == doctest::Approx(-4.0).epsilon(1e-8));
    CHECK(std::abs(r.family.c) <= 1e-8);
}

TEST_CASE("fit recovers a negated-b family as the canonical b > 0 form") {
    std::vector<std::pair<double, double>> samples;
    const auto f = TorsionFamily::spacelike_sn_or_timelike(-1.5, 0.3, +1);
    for (double s = -0.6; s <= 0.6; s += 0.05) samples.emplace_back(s, f.eval(s));
    const FitResult r = fit_torsion_family(samples, TorsionFamily::Case::SpacelikeSNOrTimelike);
    CHECK(r.rms <= 1e-10);
    CHECK(r.family.b == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(r.family.c == doctest::Approx(-0.3).epsilon(1e-7));
    CHECK(r.family.sign == -1);
}

TEST_CASE("fit of constant torsion lands in the b = 0 gauge of the null family") {
    std::vector<std::pair<double, double>> samples;
    for (double s = 0.0; s <= 2.0; s += 0.2) samples.emplace_back(s, 0.375);
    const FitResult r = fit_torsion_family(samples, TorsionFamily::Case::NullSlant);
    CHECK(r.rms <= 1e-14);
    CHECK(r.family.b == 0.0);
    CHECK(r.family.c == 1.0);
    CHECK(r.family.a == doctest::Approx(0.375));
}

TEST_CASE("fit on incompatible data stays loudly bad") {
    // oracle: brute-force scan over the (b, c, sign, inner) grid bounds the
    // best achievable rms away from zero
    std::vector<std::pair<double, double>> samples;
    for (double s = 0.5; s <= 2.0; s += 0.1) samples.emplace_back(s, s * s);
    double best_scan = HUGE_VAL;
    for (int sign : {+1, -1})
        for (int inner : {+1, -1})
            for (double b = -3.0; b <= 3.0; b += 0.05)
                for (double c = -3.0; c <= 3.0; c += 0.05) {
                    if (b == 0.0) continue;
                    double acc = 0.0;
                    bool valid = true;
                    for (const auto& [s, tau] : samples) {
                        const double u = b * s + c;
                        const double bracket = inner + u * u;
                        if (bracket <= 0.0) {
                            valid = false;
                            break;
                        }
                        const double v = sign * u / std::sqrt(bracket);
                        acc += (v - tau) * (v - tau);
                    }
                    if (valid)
                        best_scan =
                            std::min(best_scan, std::sqrt(acc / static_cast<double>(samples.size())));
                }
    CHECK(best_scan > 1e-2);

    try {
        const FitResult r =
            fit_torsion_family(samples, TorsionFamily::Case::SpacelikeSNOrTimelike);
        CHECK(r.rms > 1e-2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_convergence);
    }
}

TEST_CASE("fit input validation") {
    std::vector<std::pair<double, double>> two = {{0.0, 1.0}, {1.0, 2.0}};
    try {
        (void)fit_torsion_family(two, TorsionFamily::Case::NullSlant);
        FAIL("expected insufficient samples");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_samples);
    }
}

TEST_CASE("tangent indicatrix shares the parameter and shifts derivatives") {
    const CurveDef hyperbola = CurveDef::parse("(sinh(s), cosh(s), 0)", {-5.0, 5.0});
    const TangentIndicatrix ind(hyperbola);
    for (double s0 : {-1.0, 0.2, 1.4}) {
        const Vec3 p = ind.position(s0);
        CHECK(p.x0 == doctest::Approx(std::cosh(s0)).epsilon(1e-14));
        CHECK(p.x1 == doctest::Approx(std::sinh(s0)).epsilon(1e-14));
        // timelike-sphere valued: g(p, p) = -1
        CHECK(metric_g(p, p) == doctest::Approx(-1.0).epsilon(1e-12));
    }

    const auto grid = uniform_grid(0.5, 3.0, 201);
    const ResidualReport base = det_k(example1(), 3, grid);
    // a null curve is not the indicatrix use case, use the planar circle
    const CurveDef circle = CurveDef::parse("(0, cos(s), sin(s))", {-10.0, 10.0});
    const TangentIndicatrix circle_ind(circle);
    const ResidualReport shifted = det_k(circle_ind.derivative_fn(), 2, grid);
    const ResidualReport direct = det_k(circle, 3, grid);
    REQUIRE(shifted.values.size() == direct.values.size());
    for (size_t i = 0; i < shifted.values.size(); ++i)
        CHECK(shifted.values[i] == direct.values[i]);
    (void)base;

    const CurveDef helix = CurveDef::parse("(s, cos(sqrt(2)*s), sin(sqrt(2)*s))", {-10.0, 10.0});
    try {
        (void)TangentIndicatrix(helix).position(0.5);
        FAIL("expected kappa_not_one");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::kappa_not_one);
    }
}

TEST_CASE("a shared curve evaluates concurrently with identical results") {
    const CurveDef curve = example1();
    const auto grid = uniform_grid(0.5, 3.0, 201);
    const std::string reference = det_k(curve, 3, grid).to_json();
    std::array<std::string, 8> results;
    {
        std::vector<std::thread> workers;
        for (auto& slot : results)
            workers.emplace_back([&curve, &grid, &slot] {
                slot = det_k(curve, 3, grid).to_json();
            });
        for (auto& w : workers) w.join();
    }
    for (const auto& r : results) CHECK(r == reference);
}

TEST_CASE("uniform grids are inclusive and validated") {
    const auto g = uniform_grid(0.5, 3.0, 201);
    CHECK(g.size() == 201);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == 3.0);
    CHECK_THROWS_AS((void)uniform_grid(1.0, 0.0, 5), Error);
    CHECK_THROWS_AS((void)uniform_grid(0.0, 1.0, 0), Error);
}
