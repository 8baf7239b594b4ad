#include "minkcurve/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace mink {

ExprPtr Expr::make_constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->value = v;
    return e;
}

ExprPtr Expr::make_parameter() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Parameter;
    return e;
}

ExprPtr Expr::make_unary(Fn fn, ExprPtr child) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->fn = fn;
    e->a = std::move(child);
    return e;
}

ExprPtr Expr::make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->bin = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}

ExprPtr Expr::make_pow_int(ExprPtr base, long long n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::PowInt;
    e->exponent = n;
    e->a = std::move(base);
    return e;
}

namespace {

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Type type = Type::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string_view text;
};

const char* token_name(Token::Type t) {
    switch (t) {
        case Token::Type::Number: return "number";
        case Token::Type::Ident: return "identifier";
        case Token::Type::Plus: return "'+'";
        case Token::Type::Minus: return "'-'";
        case Token::Type::Star: return "'*'";
        case Token::Type::Slash: return "'/'";
        case Token::Type::Caret: return "'^'";
        case Token::Type::LParen: return "'('";
        case Token::Type::RParen: return "')'";
        case Token::Type::Comma: return "','";
        case Token::Type::End: return "end of input";
    }
    return "?";
}

std::optional<Expr::Fn> function_by_name(std::string_view name) {
    if (name == "sqrt") return Expr::Fn::Sqrt;
    if (name == "exp") return Expr::Fn::Exp;
    if (name == "sin") return Expr::Fn::Sin;
    if (name == "cos") return Expr::Fn::Cos;
    if (name == "sinh") return Expr::Fn::Sinh;
    if (name == "cosh") return Expr::Fn::Cosh;
    if (name == "tanh") return Expr::Fn::Tanh;
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view text, std::string_view param) : text_(text), param_(param) {
        advance();
    }

    ExprPtr parse_single_expression() {
        ExprPtr e = parse_additive();
        expect(Token::Type::End, "end of input");
        return e;
    }

    std::array<ExprPtr, 3> parse_curve_triple() {
        expect(Token::Type::LParen, "'(' opening the component triple");
        std::array<ExprPtr, 3> comps;
        comps[0] = parse_additive();
        expect(Token::Type::Comma, "','");
        comps[1] = parse_additive();
        expect(Token::Type::Comma, "','");
        comps[2] = parse_additive();
        expect(Token::Type::RParen, "')'");
        expect(Token::Type::End, "end of input");
        return comps;
    }

private:
    [[noreturn]] void error_at(std::size_t offset, const std::string& msg,
                               Errc code = Errc::parse) const {
        throw ParseError(code, offset, msg);
    }

    [[noreturn]] void expected(const std::string& what) const {
        error_at(cur_.offset,
                 "expected " + what + ", found " + token_name(cur_.type));
    }

    void expect(Token::Type t, const std::string& what) {
        if (cur_.type != t) expected(what);
        advance();
    }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        cur_.offset = pos_;
        if (pos_ >= text_.size()) {
            cur_.type = Token::Type::End;
            return;
        }
        const char ch = text_[pos_];
        switch (ch) {
            case '+': cur_.type = Token::Type::Plus; ++pos_; return;
            case '-': cur_.type = Token::Type::Minus; ++pos_; return;
            case '*': cur_.type = Token::Type::Star; ++pos_; return;
            case '/': cur_.type = Token::Type::Slash; ++pos_; return;
            case '^': cur_.type = Token::Type::Caret; ++pos_; return;
            case '(': cur_.type = Token::Type::LParen; ++pos_; return;
            case ')': cur_.type = Token::Type::RParen; ++pos_; return;
            case ',': cur_.type = Token::Type::Comma; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            cur_.type = Token::Type::Ident;
            cur_.text = text_.substr(start, pos_ - start);
            return;
        }
        error_at(pos_, std::string("unexpected character '") + ch + "'");
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ - start == 1 && text_[start] == '.')
            error_at(start, "malformed numeric literal");
        double v = 0.0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || p != text_.data() + pos_)
            error_at(start, "malformed numeric literal");
        cur_.type = Token::Type::Number;
        cur_.number = v;
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while (cur_.type == Token::Type::Plus || cur_.type == Token::Type::Minus) {
            const auto op =
                cur_.type == Token::Type::Plus ? Expr::BinOp::Add : Expr::BinOp::Sub;
            advance();
            lhs = Expr::make_binary(op, std::move(lhs), parse_multiplicative());
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        while (cur_.type == Token::Type::Star || cur_.type == Token::Type::Slash) {
            const auto op =
                cur_.type == Token::Type::Star ? Expr::BinOp::Mul : Expr::BinOp::Div;
            advance();
            lhs = Expr::make_binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (cur_.type == Token::Type::Minus) {
            advance();
            return Expr::make_unary(Expr::Fn::Neg, parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (cur_.type != Token::Type::Caret) return base;
        const std::size_t caret_offset = cur_.offset;
        advance();
        ExprPtr exp = parse_unary(); // right-associative, binds above unary minus
        return lower_power(std::move(base), *exp, caret_offset);
    }

    // Integer exponents map to a PowInt node; half-integers p/2 to
    // sqrt(base)^p. That covers every closed form this toolkit targets without
    // opening the door to general powers of negative bases.
    ExprPtr lower_power(ExprPtr base, const Expr& exponent, std::size_t offset) {
        const auto folded = fold_constant(exponent);
        if (!folded)
            error_at(offset, "exponent must be a constant expression");
        const double v = *folded;
        if (!std::isfinite(v) || std::abs(v) > 1e15)
            error_at(offset, "exponent out of range");
        const double doubled = 2.0 * v;
        const long long p = std::llround(doubled);
        if (std::abs(doubled - static_cast<double>(p)) > 1e-9)
            error_at(offset, "exponent must be an integer or half-integer p/2");
        if (p % 2 == 0) return Expr::make_pow_int(std::move(base), p / 2);
        ExprPtr root = Expr::make_unary(Expr::Fn::Sqrt, std::move(base));
        if (p == 1) return root;
        return Expr::make_pow_int(std::move(root), p);
    }

    static std::optional<double> fold_constant(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Constant: return e.value;
            case Expr::Kind::Parameter: return std::nullopt;
            case Expr::Kind::Unary: {
                auto c = fold_constant(*e.a);
                if (!c) return std::nullopt;
                switch (e.fn) {
                    case Expr::Fn::Neg: return -*c;
                    case Expr::Fn::Sqrt: return std::sqrt(*c);
                    case Expr::Fn::Exp: return std::exp(*c);
                    case Expr::Fn::Sin: return std::sin(*c);
                    case Expr::Fn::Cos: return std::cos(*c);
                    case Expr::Fn::Sinh: return std::sinh(*c);
                    case Expr::Fn::Cosh: return std::cosh(*c);
                    case Expr::Fn::Tanh: return std::tanh(*c);
                }
                return std::nullopt;
            }
            case Expr::Kind::Binary: {
                auto l = fold_constant(*e.a);
                auto r = fold_constant(*e.b);
                if (!l || !r) return std::nullopt;
                switch (e.bin) {
                    case Expr::BinOp::Add: return *l + *r;
                    case Expr::BinOp::Sub: return *l - *r;
                    case Expr::BinOp::Mul: return *l * *r;
                    case Expr::BinOp::Div: return *l / *r;
                }
                return std::nullopt;
            }
            case Expr::Kind::PowInt: {
                auto c = fold_constant(*e.a);
                if (!c) return std::nullopt;
                return std::pow(*c, static_cast<double>(e.exponent));
            }
        }
        return std::nullopt;
    }

    ExprPtr parse_primary() {
        switch (cur_.type) {
            case Token::Type::Number: {
                const double v = cur_.number;
                advance();
                return Expr::make_constant(v);
            }
            case Token::Type::LParen: {
                advance();
                ExprPtr inner = parse_additive();
                expect(Token::Type::RParen, "')'");
                return inner;
            }
            case Token::Type::Ident: {
                const std::string_view name = cur_.text;
                const std::size_t offset = cur_.offset;
                advance();
                if (cur_.type == Token::Type::LParen) {
                    const auto fn = function_by_name(name);
                    if (!fn)
                        error_at(offset, "unknown function '" + std::string(name) + "'",
                                 Errc::unknown_function);
                    advance();
                    ExprPtr arg = parse_additive();
                    expect(Token::Type::RParen, "')'");
                    return Expr::make_unary(*fn, std::move(arg));
                }
                if (name == param_) return Expr::make_parameter();
                if (name == "pi") return Expr::make_constant(M_PI);
                if (name == "e") return Expr::make_constant(M_E);
                if (function_by_name(name))
                    error_at(offset, "function '" + std::string(name) +
                                         "' requires a parenthesized argument");
                error_at(offset,
                         "unbound variable '" + std::string(name) + "' (parameter is '" +
                             std::string(param_) + "')",
                         Errc::unbound_variable);
            }
            default: expected("expression");
        }
    }

    std::string_view text_;
    std::string_view param_;
    std::size_t pos_ = 0;
    Token cur_;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant: return e.value < 0.0 ? 3 : 5;
        case Expr::Kind::Parameter: return 5;
        case Expr::Kind::Unary: return e.fn == Expr::Fn::Neg ? 3 : 5;
        case Expr::Kind::PowInt: return 4;
        case Expr::Kind::Binary:
            return (e.bin == Expr::BinOp::Add || e.bin == Expr::BinOp::Sub) ? 1 : 2;
    }
    return 5;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_expr(const Expr& e, std::string_view param, std::string& out);

void print_child(const Expr& child, std::string_view param, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print_expr(child, param, out);
        out += ')';
    } else {
        print_expr(child, param, out);
    }
}

void print_expr(const Expr& e, std::string_view param, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::Constant: out += format_double(e.value); return;
        case Expr::Kind::Parameter: out += param; return;
        case Expr::Kind::Unary:
            switch (e.fn) {
                case Expr::Fn::Neg:
                    out += '-';
                    print_child(*e.a, param, 3, out);
                    return;
                case Expr::Fn::Sqrt: out += "sqrt("; break;
                case Expr::Fn::Exp: out += "exp("; break;
                case Expr::Fn::Sin: out += "sin("; break;
                case Expr::Fn::Cos: out += "cos("; break;
                case Expr::Fn::Sinh: out += "sinh("; break;
                case Expr::Fn::Cosh: out += "cosh("; break;
                case Expr::Fn::Tanh: out += "tanh("; break;
            }
            print_expr(*e.a, param, out);
            out += ')';
            return;
        case Expr::Kind::Binary: {
            const int prec = precedence(e);
            print_child(*e.a, param, prec, out);
            switch (e.bin) {
                case Expr::BinOp::Add: out += " + "; break;
                case Expr::BinOp::Sub: out += " - "; break;
                case Expr::BinOp::Mul: out += "*"; break;
                case Expr::BinOp::Div: out += "/"; break;
            }
            print_child(*e.b, param, prec + 1, out);
            return;
        }
        case Expr::Kind::PowInt:
            print_child(*e.a, param, 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
    }
}

} // namespace

ExprPtr parse_expr(std::string_view text, std::string_view param) {
    return Parser(text, param).parse_single_expression();
}

Jet eval(const Expr& e, const Jet& parameter) {
    switch (e.kind) {
        case Expr::Kind::Constant: return Jet::constant(e.value, parameter.order());
        case Expr::Kind::Parameter: return parameter;
        case Expr::Kind::Unary: {
            const Jet c = eval(*e.a, parameter);
            switch (e.fn) {
                case Expr::Fn::Neg: return -c;
                case Expr::Fn::Sqrt: return sqrt(c);
                case Expr::Fn::Exp: return exp(c);
                case Expr::Fn::Sin: return sin(c);
                case Expr::Fn::Cos: return cos(c);
                case Expr::Fn::Sinh: return sinh(c);
                case Expr::Fn::Cosh: return cosh(c);
                case Expr::Fn::Tanh: return tanh(c);
            }
            fail(Errc::internal, "unhandled unary function");
        }
        case Expr::Kind::Binary: {
            const Jet l = eval(*e.a, parameter);
            const Jet r = eval(*e.b, parameter);
            switch (e.bin) {
                case Expr::BinOp::Add: return l + r;
                case Expr::BinOp::Sub: return l - r;
                case Expr::BinOp::Mul: return l * r;
                case Expr::BinOp::Div: return l / r;
            }
            fail(Errc::internal, "unhandled binary operator");
        }
        case Expr::Kind::PowInt: return pow_int(eval(*e.a, parameter), e.exponent);
    }
    fail(Errc::internal, "unhandled expression node");
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant: return a.value == b.value;
        case Expr::Kind::Parameter: return true;
        case Expr::Kind::Unary: return a.fn == b.fn && structurally_equal(*a.a, *b.a);
        case Expr::Kind::Binary:
            return a.bin == b.bin && structurally_equal(*a.a, *b.a) &&
                   structurally_equal(*a.b, *b.b);
        case Expr::Kind::PowInt:
            return a.exponent == b.exponent && structurally_equal(*a.a, *b.a);
    }
    return false;
}

std::string to_string(const Expr& e, std::string_view param) {
    std::string out;
    print_expr(e, param, out);
    return out;
}

CurveDef::CurveDef(std::array<ExprPtr, 3> comps, Interval domain, std::vector<double> excluded,
                   std::string param)
    : comps_(std::move(comps)),
      domain_(domain),
      excluded_(std::move(excluded)),
      param_(std::move(param)) {}

CurveDef CurveDef::parse(std::string_view text, Interval domain,
                         std::vector<double> excluded_points, std::string param_name) {
    if (!(domain.lo < domain.hi))
        fail(Errc::invalid_argument, "curve domain requires s_min < s_max");
    for (double p : excluded_points)
        if (!std::isfinite(p)) fail(Errc::invalid_argument, "excluded point must be finite");
    auto comps = Parser(text, param_name).parse_curve_triple();
    return CurveDef(std::move(comps), domain, std::move(excluded_points), std::move(param_name));
}

const Expr& CurveDef::component(int i) const {
    if (i < 0 || i > 2) fail(Errc::invalid_argument, "component index out of range");
    return *comps_[static_cast<size_t>(i)];
}

std::string CurveDef::to_string() const {
    return "(" + mink::to_string(*comps_[0], param_) + ", " + mink::to_string(*comps_[1], param_) +
           ", " + mink::to_string(*comps_[2], param_) + ")";
}

std::array<Jet, 3> CurveDef::eval_jets(double s0, int order) const {
    if (!std::isfinite(s0)) fail(Errc::domain, "parameter value must be finite");
    if (!domain_.contains(s0))
        fail(Errc::domain, "s = " + std::to_string(s0) + " outside the curve domain [" +
                               std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) +
                               "]");
    for (double p : excluded_)
        if (std::abs(s0 - p) <= kPoleGuard)
            fail(Errc::pole, "s = " + std::to_string(s0) +
                                 " lies within the pole guard of the excluded point " +
                                 std::to_string(p));
    const Jet param = Jet::variable(s0, order);
    std::array<Jet, 3> jets = {eval(*comps_[0], param), eval(*comps_[1], param),
                               eval(*comps_[2], param)};
    for (const Jet& j : jets)
        if (!j.finite())
            fail(Errc::domain, "curve component evaluated to a non-finite value at s = " +
                                   std::to_string(s0));
    return jets;
}

std::vector<Vec3> CurveDef::eval_derivatives(double s0, int k_max) const {
    if (k_max < 0 || k_max > Jet::kMaxOrder)
        fail(Errc::invalid_argument, "derivative order out of range");
    const auto jets = eval_jets(s0, k_max);
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        out.push_back({jets[0].derivative(k), jets[1].derivative(k), jets[2].derivative(k)});
    return out;
}

} // namespace mink
