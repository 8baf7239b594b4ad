#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "minkcurve/expr.hpp"

using namespace mink;

namespace {

const char* kExample1 = "(1/6*(s^5/5 - 1/s), 1/6*s^2, 1/6*(s^5/5 + 1/s))";

CurveDef example1() { return CurveDef::parse(kExample1, {-10.0, 10.0}, {0.0}); }

double eval_at(const Expr& e, double s) { return eval(e, Jet::variable(s, 0)).value(); }

} // namespace

TEST_CASE("minimal curve parses to the expected node kinds") {
    const CurveDef c = CurveDef::parse("(0, s, 0)", {-1.0, 1.0});
    CHECK(c.component(0).kind == Expr::Kind::Constant);
    CHECK(c.component(0).value == 0.0);
    CHECK(c.component(1).kind == Expr::Kind::Parameter);
    CHECK(c.component(2).kind == Expr::Kind::Constant);
}

TEST_CASE("reference curve evaluates to hand-computed values") {
    const CurveDef c = example1();
    const auto d = c.eval_derivatives(1.0, 2);
    // alpha(1) = ((1/5 - 1)/6, 1/6, (1/5 + 1)/6)
    CHECK(d[0].x0 == doctest::Approx(-2.0 / 15.0).epsilon(1e-15));
    CHECK(d[0].x1 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(d[0].x2 == doctest::Approx(0.2).epsilon(1e-15));
    // alpha'(s) = 1/6 (s^4 + 1/s^2, 2 s, s^4 - 1/s^2)
    CHECK(d[1].x0 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(d[1].x1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(d[1].x2 == doctest::Approx(0.0));
    // alpha''(s) = 1/6 (4 s^3 - 2/s^3, 2, 4 s^3 + 2/s^3); hand-differentiated
    CHECK(d[2].x0 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(d[2].x1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(d[2].x2 == doctest::Approx(1.0).epsilon(1e-14));
    // pseudo-arc normalization at the sample point
    CHECK(metric_g(d[2], d[2]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parse errors carry deterministic byte offsets") {
    const auto offset_of = [](const char* text) -> size_t {
        try {
            (void)CurveDef::parse(text, {-1.0, 1.0});
        } catch (const ParseError& e) {
            return e.offset();
        }
        return static_cast<size_t>(-1);
    };
    CHECK(offset_of("(s,,") == 3);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("(s, s, s") == 8);    // missing ')'
    CHECK(offset_of("(s, s, s) junk") == 10);
    CHECK(offset_of("(s, (s + 1, s)") == 10); // unbalanced inner paren
}

TEST_CASE("unknown functions and unbound variables are rejected") {
    try {
        (void)CurveDef::parse("(foo(s), s, s)", {-1.0, 1.0});
        FAIL("expected unknown function");
    } catch (const ParseError& e) {
        CHECK(e.code() == Errc::unknown_function);
        CHECK(e.offset() == 1);
    }
    try {
        (void)CurveDef::parse("(t, s, s)", {-1.0, 1.0});
        FAIL("expected unbound variable");
    } catch (const ParseError& e) {
        CHECK(e.code() == Errc::unbound_variable);
        CHECK(e.offset() == 1);
    }
}

TEST_CASE("named constants and alternate parameter names") {
    const ExprPtr e = parse_expr("pi + e");
    CHECK(eval_at(*e, 0.0) == doctest::Approx(M_PI + M_E).epsilon(1e-15));
    const CurveDef c = CurveDef::parse("(0, t, 0)", {-1.0, 1.0}, {}, "t");
    CHECK(c.component(1).kind == Expr::Kind::Parameter);
}

TEST_CASE("exponent lowering: integers, halves, and rejections") {
    CHECK(eval_at(*parse_expr("s^3"), 2.0) == doctest::Approx(8.0));
    CHECK(eval_at(*parse_expr("s^-2"), 2.0) == doctest::Approx(0.25));
    CHECK(eval_at(*parse_expr("s^(1/2)"), 9.0) == doctest::Approx(3.0));
    CHECK(eval_at(*parse_expr("s^0.5"), 9.0) == doctest::Approx(3.0));
    CHECK(eval_at(*parse_expr("s^(3/2)"), 4.0) == doctest::Approx(8.0));
    CHECK(eval_at(*parse_expr("s^(-1/2)"), 4.0) == doctest::Approx(0.5));
    CHECK(eval_at(*parse_expr("s^2^3"), 1.1) == doctest::Approx(std::pow(1.1, 8.0)));
    CHECK(eval_at(*parse_expr("(1 + (2*s + 1)^2)^(1/2)"), 1.0) ==
          doctest::Approx(std::sqrt(10.0)));
    CHECK_THROWS_AS((void)parse_expr("s^(1/3)"), ParseError);
    CHECK_THROWS_AS((void)parse_expr("2^s"), ParseError);
}

TEST_CASE("precedence: caret above unary minus above product above sum") {
    CHECK(eval_at(*parse_expr("-s^2"), 3.0) == doctest::Approx(-9.0));
    CHECK(eval_at(*parse_expr("2*s^2"), 3.0) == doctest::Approx(18.0));
    CHECK(eval_at(*parse_expr("1 - 2*s"), 3.0) == doctest::Approx(-5.0));
    CHECK(eval_at(*parse_expr("-s*s"), 3.0) == doctest::Approx(-9.0));
    CHECK(eval_at(*parse_expr("2 - 3 - 4"), 0.0) == doctest::Approx(-5.0));
    CHECK(eval_at(*parse_expr("12/3/2"), 0.0) == doctest::Approx(2.0));
}

TEST_CASE("pretty-print round-trips to a structurally identical tree") {
    const char* corpus[] = {
        "s",
        "1/6*(s^5/5 - 1/s)",
        "-s^2 + 3*(s - 1)",
        "sqrt(1 + s^2)",
        "sin(s)*cos(s) - tanh(s/2)",
        "s^-2 + (s + 1)^(1/2)",
        "2 - 3 - 4*s",
        "12/(3/s)/2",
        "-(s + 1)",
        "exp(-s^2/2)",
    };
    for (const char* text : corpus) {
        const ExprPtr first = parse_expr(text);
        const std::string printed = to_string(*first);
        const ExprPtr second = parse_expr(printed);
        CHECK_MESSAGE(structurally_equal(*first, *second), text, " -> ", printed);
        CHECK(to_string(*second) == printed);
    }
}

TEST_CASE("random expression trees survive the print/parse round trip") {
    std::mt19937_64 rng(99u);
    std::uniform_real_distribution<double> num(0.0, 4.0);
    const std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
        const int choice = static_cast<int>(rng() % (depth > 3 ? 2u : 6u));
        switch (choice) {
            case 0: return Expr::make_constant(num(rng));
            case 1: return Expr::make_parameter();
            case 2: return Expr::make_unary(Expr::Fn::Neg, gen(depth + 1));
            case 3: {
                const auto fns = {Expr::Fn::Sqrt, Expr::Fn::Exp, Expr::Fn::Sin, Expr::Fn::Cos,
                                  Expr::Fn::Sinh, Expr::Fn::Cosh, Expr::Fn::Tanh};
                return Expr::make_unary(*(fns.begin() + rng() % fns.size()), gen(depth + 1));
            }
            case 4: {
                const auto ops = {Expr::BinOp::Add, Expr::BinOp::Sub, Expr::BinOp::Mul,
                                  Expr::BinOp::Div};
                return Expr::make_binary(*(ops.begin() + rng() % ops.size()), gen(depth + 1),
                                         gen(depth + 1));
            }
            default:
                return Expr::make_pow_int(gen(depth + 1),
                                          static_cast<long long>(rng() % 7) - 3);
        }
    };
    for (int i = 0; i < 200; ++i) {
        const ExprPtr e = gen(0);
        const std::string printed = to_string(*e);
        const ExprPtr back = parse_expr(printed);
        CHECK_MESSAGE(structurally_equal(*e, *back), printed);
    }
}

TEST_CASE("straight line has vanishing higher derivatives") {
    const CurveDef c = CurveDef::parse("(0, s, 0)", {-5.0, 5.0});
    const auto d = c.eval_derivatives(0.7, 5);
    CHECK(d[1].x1 == 1.0);
    for (int k = 2; k <= 5; ++k) {
        CHECK(d[static_cast<size_t>(k)].x0 == 0.0);
        CHECK(d[static_cast<size_t>(k)].x1 == 0.0);
        CHECK(d[static_cast<size_t>(k)].x2 == 0.0);
    }
}

TEST_CASE("poles and domain violations are loud") {
    const CurveDef c = example1();
    try {
        (void)c.eval_derivatives(0.0, 2);
        FAIL("expected a pole error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::pole);
    }
    // inside the pole guard of the declared excluded point
    CHECK_THROWS_AS((void)c.eval_derivatives(5e-7, 2), Error);
    try {
        (void)c.eval_derivatives(11.0, 2);
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::domain);
    }
    CHECK_THROWS_AS((void)CurveDef::parse("(s, s, s)", {1.0, -1.0}), Error);
}

TEST_CASE("first derivatives agree with finite differences of positions") {
    const char* corpus[] = {
        kExample1,
        "(sinh(s), cosh(s), 0)",
        "(s, cos(sqrt(2)*s), sin(sqrt(2)*s))",
        "(s^2/2, s, sqrt(1 + s^2))",
        "(tanh(s), 1/(2 + s), exp(s/3))",
    };
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> pick(0.4, 2.4);
    for (const char* text : corpus) {
        const CurveDef c = CurveDef::parse(text, {-10.0, 10.0}, {0.0});
        for (int i = 0; i < 20; ++i) {
            const double s0 = pick(rng);
            const auto d = c.eval_derivatives(s0, 1);
            const double h = 1e-4;
            const auto pm2 = c.eval_derivatives(s0 - 2 * h, 0)[0];
            const auto pm1 = c.eval_derivatives(s0 - h, 0)[0];
            const auto pp1 = c.eval_derivatives(s0 + h, 0)[0];
            const auto pp2 = c.eval_derivatives(s0 + 2 * h, 0)[0];
            const Vec3 fd = (1.0 / (12.0 * h)) * (pm2 - 8.0 * pm1 + 8.0 * pp1 - pp2);
            const double scale = std::max(1.0, euclid_norm(d[1]));
            CHECK(euclid_norm(d[1] - fd) <= 1e-6 * scale);
        }
    }
}
