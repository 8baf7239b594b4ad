#pragma once

#include <string>

#include "minkcurve/jet.hpp"

namespace mink {

/// Closed-form torsion families of the constant-curvature slant helices
/// (kappa = 1 throughout):
///
///   SpacelikeSNOrTimelike  tau = sign * (b s + c) / sqrt(inner + (b s + c)^2)
///                          (spacelike curve with spacelike normal, or a
///                          timelike curve; inner is +1 or -1)
///   SpacelikeTN            tau = sign * (b s + c) / sqrt(1 - (b s + c)^2)
///                          (spacelike curve with timelike normal)
///   NullSlant              tau = a / (b s + c)^2
///   SalkowskiI/II/III      the c = 0, b = 1/tanh(phi) specializations:
///                          I   tau = sign * s / sqrt(tanh(phi)^2 + s^2)
///                          II  tau = sign * s / sqrt(tanh(phi)^2 - s^2)
///                          III tau = sign * s / sqrt(s^2 - tanh(phi)^2)
///
/// Evaluation outside a family's validity range (bracket not positive, or
/// b s + c = 0 for NullSlant) raises a range error.
struct TorsionFamily {
    enum class Case {
        SpacelikeSNOrTimelike,
        SpacelikeTN,
        NullSlant,
        SalkowskiI,
        SalkowskiII,
        SalkowskiIII,
    };

    Case family_case = Case::SpacelikeSNOrTimelike;
    double a = 0.0; // NullSlant only
    double b = 1.0;
    double c = 0.0;
    double phi = 1.0; // Salkowski cases only
    int sign = +1;
    int inner_sign = +1; // SpacelikeSNOrTimelike only

    static TorsionFamily spacelike_sn_or_timelike(double b, double c, int sign = +1,
                                                  int inner_sign = +1);
    static TorsionFamily spacelike_tn(double b, double c, int sign = +1);
    static TorsionFamily null_slant(double a, double b, double c);
    static TorsionFamily salkowski(Case salkowski_case, double phi, int sign = +1);

    double eval(double s) const;
    Jet eval_jet(double s, int order) const;
    bool in_range(double s) const;

    /// True when the family is governed by the null-frame torsion ODE.
    bool is_null_family() const noexcept { return family_case == Case::NullSlant; }
    /// eps_T * eps_B of the causal cases this family characterizes.
    int eps_product() const noexcept;

    const char* case_name() const noexcept;
    std::string label() const;

    /// The torsion formula with every input carried as a jet, so it can be
    /// differentiated in s (s variable) or in a parameter (that parameter
    /// variable) with one code path.
    static Jet formula(Case family_case, const Jet& a, const Jet& b, const Jet& c, const Jet& phi,
                       int sign, int inner_sign, const Jet& s);

private:
    void validate() const;
};

} // namespace mink
