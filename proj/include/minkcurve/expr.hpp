#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "minkcurve/jet.hpp"
#include "minkcurve/vec3.hpp"

namespace mink {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression AST over a single free parameter. Power nodes are lowered at
/// parse time: integer exponents become PowInt, half-integer exponents a
/// sqrt-wrapped PowInt, anything else is rejected.
struct Expr {
    enum class Kind : unsigned char { Constant, Parameter, Unary, Binary, PowInt };
    enum class Fn : unsigned char { Neg, Sqrt, Exp, Sin, Cos, Sinh, Cosh, Tanh };
    enum class BinOp : unsigned char { Add, Sub, Mul, Div };

    Kind kind = Kind::Constant;
    double value = 0.0;     // Constant
    Fn fn = Fn::Neg;        // Unary
    BinOp bin = BinOp::Add; // Binary
    long long exponent = 0; // PowInt
    ExprPtr a, b;

    static ExprPtr make_constant(double v);
    static ExprPtr make_parameter();
    static ExprPtr make_unary(Fn fn, ExprPtr child);
    static ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr make_pow_int(ExprPtr base, long long n);
};

/// Parse one expression over `param`; errors carry the byte offset.
ExprPtr parse_expr(std::string_view text, std::string_view param = "s");

Jet eval(const Expr& e, const Jet& parameter);

bool structurally_equal(const Expr& a, const Expr& b);

std::string to_string(const Expr& e, std::string_view param = "s");

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double s) const noexcept { return s >= lo && s <= hi; }
};

/// Evaluation within this distance of a declared excluded point is rejected:
/// jet division that close to a pole has no usable precision left.
inline constexpr double kPoleGuard = 1e-6;

/// A curve given by three closed-form component expressions of one parameter,
/// with its domain and declared pole locations. Immutable after construction
/// and freely shareable across threads.
class CurveDef {
public:
    /// Parse "(expr, expr, expr)". The grammar: ^ is right-associative and
    /// binds tighter than unary minus, which binds tighter than * and /, which
    /// bind tighter than + and -; calls f(expr) for f in {sqrt, exp, sin, cos,
    /// sinh, cosh, tanh}; decimal literals; named constants pi and e.
    static CurveDef parse(std::string_view text, Interval domain,
                          std::vector<double> excluded_points = {}, std::string param_name = "s");

    const Expr& component(int i) const;
    Interval domain() const noexcept { return domain_; }
    const std::vector<double>& excluded_points() const noexcept { return excluded_; }
    const std::string& parameter_name() const noexcept { return param_; }

    std::string to_string() const;

    /// Component jets at s0, after domain and pole-guard checks.
    std::array<Jet, 3> eval_jets(double s0, int order) const;

    /// alpha^(0..k_max) at s0: entry k holds the k-th derivative vector.
    std::vector<Vec3> eval_derivatives(double s0, int k_max) const;

private:
    CurveDef(std::array<ExprPtr, 3> comps, Interval domain, std::vector<double> excluded,
             std::string param);

    std::array<ExprPtr, 3> comps_;
    Interval domain_;
    std::vector<double> excluded_;
    std::string param_;
};

} // namespace mink
