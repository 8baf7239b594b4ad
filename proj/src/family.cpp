#include "minkcurve/family.hpp"

#include <cmath>

#include "minkcurve/error.hpp"

namespace mink {

namespace {

void check_sign(int s, const char* what) {
    if (s != 1 && s != -1) fail(Errc::invalid_argument, std::string(what) + " must be +1 or -1");
}

} // namespace

void TorsionFamily::validate() const {
    check_sign(sign, "sign");
    check_sign(inner_sign, "inner_sign");
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike:
        case Case::SpacelikeTN:
            if (b == 0.0) fail(Errc::invalid_argument, "torsion family requires b != 0");
            break;
        case Case::NullSlant:
            if (b == 0.0 && c == 0.0)
                fail(Errc::invalid_argument, "null slant family requires b s + c not identically 0");
            break;
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII:
            if (std::tanh(phi) == 0.0)
                fail(Errc::invalid_argument, "Salkowski family requires tanh(phi) != 0");
            break;
    }
}

TorsionFamily TorsionFamily::spacelike_sn_or_timelike(double b, double c, int sign,
                                                      int inner_sign) {
    TorsionFamily f;
    f.family_case = Case::SpacelikeSNOrTimelike;
    f.b = b;
    f.c = c;
    f.sign = sign;
    f.inner_sign = inner_sign;
    f.validate();
    return f;
}

TorsionFamily TorsionFamily::spacelike_tn(double b, double c, int sign) {
    TorsionFamily f;
    f.family_case = Case::SpacelikeTN;
    f.b = b;
    f.c = c;
    f.sign = sign;
    f.validate();
    return f;
}

TorsionFamily TorsionFamily::null_slant(double a, double b, double c) {
    TorsionFamily f;
    f.family_case = Case::NullSlant;
    f.a = a;
    f.b = b;
    f.c = c;
    f.validate();
    return f;
}

TorsionFamily TorsionFamily::salkowski(Case salkowski_case, double phi, int sign) {
    if (salkowski_case != Case::SalkowskiI && salkowski_case != Case::SalkowskiII &&
        salkowski_case != Case::SalkowskiIII)
        fail(Errc::invalid_argument, "salkowski() requires a Salkowski case");
    TorsionFamily f;
    f.family_case = salkowski_case;
    f.phi = phi;
    f.sign = sign;
    f.validate();
    return f;
}

int TorsionFamily::eps_product() const noexcept {
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike:
        case Case::SalkowskiI:
        case Case::SalkowskiIII: return -1;
        case Case::SpacelikeTN:
        case Case::SalkowskiII: return +1;
        case Case::NullSlant: return 0;
    }
    return 0;
}

const char* TorsionFamily::case_name() const noexcept {
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike: return "spacelike-sn-or-timelike";
        case Case::SpacelikeTN: return "spacelike-tn";
        case Case::NullSlant: return "null-slant";
        case Case::SalkowskiI: return "salkowski-i";
        case Case::SalkowskiII: return "salkowski-ii";
        case Case::SalkowskiIII: return "salkowski-iii";
    }
    return "?";
}

std::string TorsionFamily::label() const {
    std::string out = case_name();
    switch (family_case) {
        case Case::NullSlant:
            out += " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                   " c=" + std::to_string(c);
            break;
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII:
            out += " phi=" + std::to_string(phi);
            if (sign < 0) out += " sign=-1";
            break;
        default:
            out += " b=" + std::to_string(b) + " c=" + std::to_string(c);
            if (sign < 0) out += " sign=-1";
            if (family_case == Case::SpacelikeSNOrTimelike && inner_sign < 0) out += " inner=-1";
            break;
    }
    return out;
}

Jet TorsionFamily::formula(Case family_case, const Jet& a, const Jet& b, const Jet& c,
                           const Jet& phi, int sign, int inner_sign, const Jet& s) {
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike: {
            const Jet u = b * s + c;
            const Jet bracket = static_cast<double>(inner_sign) + u * u;
            if (!(bracket.value() > 0.0))
                fail(Errc::range, "torsion family bracket not positive at s = " +
                                      std::to_string(s.value()));
            return static_cast<double>(sign) * (u / sqrt(bracket));
        }
        case Case::SpacelikeTN: {
            const Jet u = b * s + c;
            const Jet bracket = 1.0 - u * u;
            if (!(bracket.value() > 0.0))
                fail(Errc::range, "torsion family bracket not positive at s = " +
                                      std::to_string(s.value()));
            return static_cast<double>(sign) * (u / sqrt(bracket));
        }
        case Case::NullSlant: {
            const Jet u = b * s + c;
            const double mag = std::max({1.0, std::abs(b.value() * s.value()),
                                         std::abs(c.value())});
            if (std::abs(u.value()) <= 1e-9 * mag)
                fail(Errc::range,
                     "null slant torsion undefined: b s + c = 0 at s = " +
                         std::to_string(s.value()));
            return a / (u * u);
        }
        case Case::SalkowskiI:
            return formula(Case::SpacelikeSNOrTimelike, a, 1.0 / tanh(phi),
                           Jet::constant(0.0, s.order()), phi, sign, +1, s);
        case Case::SalkowskiII:
            return formula(Case::SpacelikeTN, a, 1.0 / tanh(phi), Jet::constant(0.0, s.order()),
                           phi, sign, +1, s);
        case Case::SalkowskiIII:
            return formula(Case::SpacelikeSNOrTimelike, a, 1.0 / tanh(phi),
                           Jet::constant(0.0, s.order()), phi, sign, -1, s);
    }
    fail(Errc::internal, "unhandled torsion family case");
}

Jet TorsionFamily::eval_jet(double s, int order) const {
    validate();
    return formula(family_case, Jet::constant(a, order), Jet::constant(b, order),
                   Jet::constant(c, order), Jet::constant(phi, order), sign, inner_sign,
                   Jet::variable(s, order));
}

double TorsionFamily::eval(double s) const { return eval_jet(s, 0).value(); }

bool TorsionFamily::in_range(double s) const {
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike: {
            const double u = b * s + c;
            return inner_sign + u * u > 0.0;
        }
        case Case::SpacelikeTN: {
            const double u = b * s + c;
            return 1.0 - u * u > 0.0;
        }
        case Case::NullSlant: {
            const double u = b * s + c;
            return std::abs(u) > 1e-9 * std::max({1.0, std::abs(b * s), std::abs(c)});
        }
        case Case::SalkowskiI: return true;
        case Case::SalkowskiII: {
            const double t = std::tanh(phi);
            return t * t - s * s > 0.0;
        }
        case Case::SalkowskiIII: {
            const double t = std::tanh(phi);
            return s * s - t * t > 0.0;
        }
    }
    return false;
}

} // namespace mink
