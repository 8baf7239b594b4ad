#include "minkcurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <quadmath.h>
#include <random>

#include "minkcurve/characterize.hpp"
#include "minkcurve/synthesize.hpp"

namespace mink {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// worst-so-far tracker: ratio of measured error to its allowance
struct Budget {
    double worst = 0.0;
    void use(double measured, double allowed) {
        worst = std::max(worst, measured / allowed);
    }
    bool ok() const { return worst <= 1.0; }
};

CurveDef reference_null_curve() {
    return CurveDef::parse("(1/6*(s^5/5 - 1/s), 1/6*s^2, 1/6*(s^5/5 + 1/s))", {-10.0, 10.0}, {0.0});
}

// ---------------------------------------------------------------------------
// 1. Reference null slant helix: pseudo-arc normalization, tau = -4/s^2, and
//    the vanishing k = 3 determinant.
// ---------------------------------------------------------------------------
// The quoted torsion profile of the reference curve is 4/s^2 in magnitude;
// under this library's frame relations (N' = tau T - kappa B, g(T,B) = 1) its
// sign is +, forced by tau = -g(N', N')/2 with g(N', N') = -8/s^2. Sources
// using the opposite frame-sign convention print -4/s^2 for the same curve.
CheckResult check_reference_curve() {
    CheckResult r{"null-slant-reference-curve", false, 0.0, ""};
    const CurveDef curve = reference_null_curve();
    const auto grid = uniform_grid(0.5, 3.0, 201);
    Budget budget;
    for (double s : grid) {
        const auto d = curve.eval_derivatives(s, 2);
        budget.use(std::abs(metric_g(d[1], d[1])), 1e-9);
        budget.use(std::abs(metric_g(d[2], d[2]) - 1.0), 1e-9);
        const CartanApparatus app = null_cartan(curve, s);
        const double want = 4.0 / (s * s);
        budget.use(std::abs(app.tau - want) / std::abs(want), 1e-8);
    }
    const ResidualReport det = det_k(curve, 3, grid);
    const bool det_ok = det.verdict == Verdict::Vanishes;
    r.passed = budget.ok() && det_ok;
    r.worst = budget.worst;
    r.detail = "worst normalization/torsion error at " + fmt(budget.worst) +
               " of allowance, det verdict " + to_string(det.verdict) + " (max rel " +
               fmt(det.max_relative()) +
               "); tau = +4/s^2 (the quoted -4/s^2 is the opposite frame-sign convention)";
    return r;
}

// ---------------------------------------------------------------------------
// 2. Closed-form torsion families solve their ODEs; generic torsions do not.
// ---------------------------------------------------------------------------
CheckResult check_family_residuals() {
    CheckResult r{"torsion-family-ode-residuals", false, 0.0, ""};
    std::mt19937_64 rng(20240815u);
    std::uniform_real_distribution<double> b_dist(0.3, 2.0);
    std::uniform_real_distribution<double> c_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> a_dist(0.5, 5.0);
    auto rand_sign = [&rng]() { return (rng() & 1u) ? +1 : -1; };

    Budget budget;
    for (int draw = 0; draw < 100; ++draw) {
        const double b = b_dist(rng);
        const double c = c_dist(rng);

        const auto f1 = TorsionFamily::spacelike_sn_or_timelike(b, c, rand_sign(), +1);
        budget.use(family_ode_residual(f1, uniform_grid(-2.0, 2.0, 101)).max_relative(), 1e-10);

        const auto f2 = TorsionFamily::spacelike_sn_or_timelike(b, c, rand_sign(), -1);
        const double lo2 = (1.0 - c) / b + 0.1;
        budget.use(family_ode_residual(f2, uniform_grid(lo2, lo2 + 2.0, 101)).max_relative(),
                   1e-10);

        const auto f3 = TorsionFamily::spacelike_tn(b, c, rand_sign());
        const double span = 1.0 / b;
        const double mid = -c / b;
        budget.use(family_ode_residual(
                       f3, uniform_grid(mid - 0.9 * span, mid + 0.9 * span, 101)).max_relative(),
                   1e-10);

        const auto f4 = TorsionFamily::null_slant(rand_sign() * a_dist(rng), b, c);
        const double lo4 = (0.3 - c) / b;
        budget.use(family_ode_residual(f4, uniform_grid(lo4, lo4 + 2.0 / b, 101)).max_relative(),
                   1e-12);
    }
    const bool families_ok = budget.ok();

    // negative controls must be loudly nonzero under every residual
    double weakest_negative = HUGE_VAL;
    for (const char* text : {"s^2", "exp(s)"}) {
        const ExprPtr tau = parse_expr(text);
        double max_rel_minus = 0.0, max_rel_plus = 0.0, max_rel_null = 0.0;
        double scale_minus = 0.0, scale_plus = 0.0, scale_null = 0.0;
        double val_minus = 0.0, val_plus = 0.0, val_null = 0.0;
        for (double s : uniform_grid(0.5, 2.0, 101)) {
            const Jet tj = eval(*tau, Jet::variable(s, 3));
            val_minus = std::max(val_minus,
                                 std::abs(residual_nonnull(tj, Sign::plus(), Sign::minus())));
            val_plus =
                std::max(val_plus, std::abs(residual_nonnull(tj, Sign::plus(), Sign::plus())));
            val_null = std::max(val_null, std::abs(residual_null(tj)));
            scale_minus = std::max(scale_minus, residual_nonnull_scale(tj));
            scale_plus = std::max(scale_plus, residual_nonnull_scale(tj));
            scale_null = std::max(scale_null, residual_null_scale(tj));
        }
        max_rel_minus = val_minus / scale_minus;
        max_rel_plus = val_plus / scale_plus;
        max_rel_null = val_null / scale_null;
        weakest_negative = std::min({weakest_negative, max_rel_minus, max_rel_plus, max_rel_null});
    }
    const bool negatives_ok = weakest_negative > 1e-2;

    r.passed = families_ok && negatives_ok;
    r.worst = budget.worst;
    r.detail = "worst family residual at " + fmt(budget.worst) +
               " of allowance, weakest negative control " + fmt(weakest_negative) +
               " (> 1e-2 required)";
    return r;
}

// ---------------------------------------------------------------------------
// 3. |det3(alpha^(3..5))| equals the closed-form residual pointwise.
// ---------------------------------------------------------------------------
std::vector<double> node_subsample(const SampledCurve& curve, int target) {
    const auto n = curve.states.size();
    const size_t stride = std::max<size_t>(1, (n - 1) / static_cast<size_t>(target - 1));
    std::vector<double> grid;
    for (size_t i = 0; i < n; i += stride) grid.push_back(curve.states[i].s);
    return grid;
}

double sampled_det_residual_discrepancy(const SampledCurve& curve, const TorsionFamily& family,
                                        const std::vector<double>& grid) {
    const auto fn = sampled_derivative_fn(
        curve, [&family](double s, int order) { return family.eval_jet(s, order); });
    double max_disc = 0.0;
    for (double s : grid) {
        const auto d = fn(s, 5);
        const double det = det3(d[3], d[4], d[5]);
        const Jet tau = family.eval_jet(s, 6);
        const double res = curve.signature.is_null()
                               ? residual_null(tau)
                               : residual_nonnull(tau, curve.signature.eps_T,
                                                  curve.signature.eps_B);
        const double scale = euclid_norm(d[3]) * euclid_norm(d[4]) * euclid_norm(d[5]);
        max_disc = std::max(max_disc,
                            std::abs(std::abs(det) - std::abs(res)) / std::max(scale, 1e-300));
    }
    return max_disc;
}

CheckResult check_det_residual_equivalence() {
    CheckResult r{"determinant-residual-equivalence", false, 0.0, ""};
    Budget budget;

    const CurveDef null_curve = reference_null_curve();
    const auto cmp = det345_closed_form_check(null_curve, uniform_grid(0.5, 3.0, 201));
    budget.use(cmp.max_rel_discrepancy, 1e-6);

    const struct {
        SalkowskiCase cse;
        double phi, lo, hi;
    } cases[] = {
        {SalkowskiCase::I, 1.0, 0.2, 2.2},
        {SalkowskiCase::II, 1.2, -0.6, 0.6},
        {SalkowskiCase::III, 1.0, 1.0, 3.0},
    };
    for (const auto& cs : cases) {
        const SampledCurve curve = make_salkowski(cs.cse, cs.phi, {cs.lo, cs.hi}, 1e-3);
        const TorsionFamily family = salkowski_family(cs.cse, cs.phi);
        budget.use(sampled_det_residual_discrepancy(curve, family, node_subsample(curve, 201)),
                   1e-6);
    }

    r.passed = budget.ok();
    r.worst = budget.worst;
    r.detail = "worst |det|-vs-residual discrepancy at " + fmt(budget.worst) +
               " of the 1e-6 relative allowance";
    return r;
}

// ---------------------------------------------------------------------------
// 4. The slant indicator is constant exactly where the determinant vanishes.
// ---------------------------------------------------------------------------
struct SigmaCorpusEntry {
    std::string name;
    CausalSignature sig;
    TauJetFn tau_jet;
    TauFn tau;
    double lo, hi;
    bool positive;     // expected: sigma constant and det vanishing
    bool sigma_is_one; // the b = 1, c = 0 normalizations
};

CheckResult check_sigma_equivalence() {
    CheckResult r{"slant-indicator-equivalence", false, 0.0, ""};

    const auto family_entry = [](std::string name, CausalSignature sig, TorsionFamily family,
                                 double lo, double hi, bool sigma_is_one) {
        return SigmaCorpusEntry{
            std::move(name),
            sig,
            [family](double s, int order) { return family.eval_jet(s, order); },
            [family](double s) { return family.eval(s); },
            lo,
            hi,
            true,
            sigma_is_one};
    };
    const auto expr_entry = [](std::string name, CausalSignature sig, const char* text, double lo,
                               double hi) {
        const ExprPtr e = parse_expr(text);
        return SigmaCorpusEntry{
            std::move(name),
            sig,
            [e](double s, int order) { return eval(*e, Jet::variable(s, order)); },
            [e](double s) { return eval(*e, Jet::variable(s, 0)).value(); },
            lo,
            hi,
            false,
            false};
    };

    std::vector<SigmaCorpusEntry> corpus;
    corpus.push_back(family_entry("salkowski-i", CausalSignature::spacelike_sn(),
                                  salkowski_family(SalkowskiCase::I, 1.0), 0.2, 2.2, false));
    corpus.push_back(family_entry("salkowski-ii", CausalSignature::spacelike_tn(),
                                  salkowski_family(SalkowskiCase::II, 1.2), -0.6, 0.6, false));
    corpus.push_back(family_entry("salkowski-iii", CausalSignature::timelike(),
                                  salkowski_family(SalkowskiCase::III, 1.0), 1.0, 3.0, false));
    corpus.push_back(family_entry("saturating-sn", CausalSignature::spacelike_sn(),
                                  TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0), -1.0, 1.0,
                                  true));
    corpus.push_back(family_entry("saturating-timelike", CausalSignature::timelike(),
                                  TorsionFamily::spacelike_sn_or_timelike(1.0, 0.0), -1.0, 1.0,
                                  true));
    corpus.push_back(family_entry("steepening-tn", CausalSignature::spacelike_tn(),
                                  TorsionFamily::spacelike_tn(1.0, 0.0), -0.8, 0.8, true));
    corpus.push_back(
        expr_entry("negative-quadratic-sn", CausalSignature::spacelike_sn(), "s^2", 1.2, 2.2));
    corpus.push_back(
        expr_entry("negative-exponential-timelike", CausalSignature::timelike(), "exp(s)", 0.5,
                   1.5));
    corpus.push_back(
        expr_entry("negative-quadratic-tn", CausalSignature::spacelike_tn(), "s^2", 0.5, 1.5));

    Budget budget;
    bool all_ok = true;
    std::string failures;
    int positives = 0, negatives = 0;
    for (const auto& entry : corpus) {
        const SampledCurve curve = integrate_frame(entry.sig, entry.tau,
                                                   canonical_frame(entry.sig, entry.lo),
                                                   {entry.lo, entry.hi}, 1e-3);
        const auto grid = node_subsample(curve, 201);

        const ResidualReport det = det_k(sampled_derivative_fn(curve, entry.tau_jet), 3, grid);

        std::vector<double> sigma;
        for (double s : grid)
            sigma.push_back(sigma_from_jets(Jet::constant(1.0, Jet::kDefaultOrder),
                                            entry.tau_jet(s, Jet::kDefaultOrder), entry.sig.eps_T,
                                            entry.sig.eps_B));
        const double mean =
            std::accumulate(sigma.begin(), sigma.end(), 0.0) / static_cast<double>(sigma.size());
        double acc = 0.0;
        for (double v : sigma) acc += (v - mean) * (v - mean);
        const double stddev = std::sqrt(acc / static_cast<double>(sigma.size()));

        const bool sigma_constant = stddev <= kSigmaConstancyTol;
        const bool det_vanishes = det.verdict == Verdict::Vanishes;
        bool entry_ok = sigma_constant == entry.positive && det_vanishes == entry.positive;
        if (entry.positive) {
            ++positives;
            budget.use(stddev, kSigmaConstancyTol);
            if (entry.sigma_is_one) {
                budget.use(std::abs(std::abs(mean) - 1.0), 1e-7);
                entry_ok = entry_ok && std::abs(std::abs(mean) - 1.0) <= 1e-7;
            }
        } else {
            ++negatives;
            if (det.verdict != Verdict::NonVanishing) entry_ok = false;
        }
        if (!entry_ok) {
            all_ok = false;
            failures += " " + entry.name;
        }
    }

    r.passed = all_ok && positives >= 6 && negatives >= 3 && budget.ok();
    r.worst = budget.worst;
    r.detail = std::to_string(positives) + " positives / " + std::to_string(negatives) +
               " negatives agree; worst positive check at " + fmt(budget.worst) +
               " of allowance" +
               (failures.empty() ? "" : "; disagreements:" + failures);
    return r;
}

// ---------------------------------------------------------------------------
// 5. Integrating the null frame system reproduces the reference curve, with
//    fourth-order convergence and bounded Gram drift.
// ---------------------------------------------------------------------------
CheckResult check_integrator_fidelity() {
    CheckResult r{"frame-integrator-fidelity", false, 0.0, ""};
    const CurveDef curve = reference_null_curve();
    const CartanApparatus app = null_cartan(curve, 1.0);
    FrameState initial;
    initial.s = 1.0;
    initial.position = curve.eval_derivatives(1.0, 0)[0];
    initial.T = app.T;
    initial.N = app.N;
    initial.B = app.B;
    // the curve's own torsion under these frame relations (see
    // check_reference_curve for the sign)
    const TorsionFamily tau = TorsionFamily::null_slant(4.0, 1.0, 0.0);

    const auto max_position_error = [&](double step) {
        const SampledCurve run =
            integrate_frame(CausalSignature::lightlike(), tau, initial, {1.0, 2.0}, step);
        double err = 0.0;
        for (const auto& st : run.states) {
            const Vec3 want = curve.eval_derivatives(st.s, 0)[0];
            err = std::max(err, euclid_norm(st.position - want));
        }
        return std::make_pair(err, max_gram_drift(run));
    };

    const auto [err_h, drift_h] = max_position_error(1e-3);
    // At 1e-3 the error is already at the double-precision accumulation floor
    // (~1e-13), where halving can show nothing; demonstrate the fourth order
    // by halving twice down to that step, where truncation still dominates.
    const auto [err_4h, drift_4h] = max_position_error(4e-3);
    const auto [err_2h, drift_2h] = max_position_error(2e-3);

    Budget budget;
    budget.use(err_h, 1e-6);
    budget.use(drift_h, 1e-9);
    budget.use(drift_2h, 1e-9);
    budget.use(drift_4h, 1e-9);
    const double ratio1 = err_4h / std::max(err_2h, 1e-300);
    const double ratio2 = err_2h / std::max(err_h, 1e-300);
    const bool order_ok = ratio1 >= 12.0 && ratio2 >= 12.0;

    r.passed = budget.ok() && order_ok;
    r.worst = budget.worst;
    r.detail = "max position error " + fmt(err_h) + " at step 1e-3 (allow 1e-6), halving ratios " +
               fmt(ratio1) + ", " + fmt(ratio2) + " (>= 12 required), Gram drift " +
               fmt(std::max({drift_h, drift_2h, drift_4h}));
    return r;
}

// ---------------------------------------------------------------------------
// 6. Jet engine vs high-precision finite differences, plus the algebraic
//    identities.
// ---------------------------------------------------------------------------

// independent AST walk in quad precision (the jets never touch this path)
__float128 eval_quad(const Expr& e, __float128 s) {
    switch (e.kind) {
        case Expr::Kind::Constant: return static_cast<__float128>(e.value);
        case Expr::Kind::Parameter: return s;
        case Expr::Kind::Unary: {
            const __float128 c = eval_quad(*e.a, s);
            switch (e.fn) {
                case Expr::Fn::Neg: return -c;
                case Expr::Fn::Sqrt: return sqrtq(c);
                case Expr::Fn::Exp: return expq(c);
                case Expr::Fn::Sin: return sinq(c);
                case Expr::Fn::Cos: return cosq(c);
                case Expr::Fn::Sinh: return sinhq(c);
                case Expr::Fn::Cosh: return coshq(c);
                case Expr::Fn::Tanh: return tanhq(c);
            }
            return 0;
        }
        case Expr::Kind::Binary: {
            const __float128 l = eval_quad(*e.a, s);
            const __float128 rr = eval_quad(*e.b, s);
            switch (e.bin) {
                case Expr::BinOp::Add: return l + rr;
                case Expr::BinOp::Sub: return l - rr;
                case Expr::BinOp::Mul: return l * rr;
                case Expr::BinOp::Div: return l / rr;
            }
            return 0;
        }
        case Expr::Kind::PowInt: {
            __float128 base = eval_quad(*e.a, s);
            long long n = e.exponent;
            const bool invert = n < 0;
            if (invert) n = -n;
            __float128 acc = 1;
            while (n > 0) {
                if (n & 1) acc *= base;
                base *= base;
                n >>= 1;
            }
            return invert ? 1 / acc : acc;
        }
    }
    return 0;
}

// derivative-k stencil on symmetric offsets, solved from the moment system
std::vector<__float128> stencil_weights(int k, int points) {
    const int half = points / 2;
    std::vector<std::vector<__float128>> m(static_cast<size_t>(points),
                                           std::vector<__float128>(static_cast<size_t>(points) + 1, 0));
    for (int row = 0; row < points; ++row) {
        for (int col = 0; col < points; ++col) {
            __float128 acc = 1;
            for (int p = 0; p < row; ++p) acc *= static_cast<__float128>(col - half);
            m[static_cast<size_t>(row)][static_cast<size_t>(col)] = acc;
        }
        __float128 rhs = 0;
        if (row == k) {
            rhs = 1;
            for (int p = 2; p <= k; ++p) rhs *= p;
        }
        m[static_cast<size_t>(row)][static_cast<size_t>(points)] = rhs;
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < points; ++col) {
        int pivot = col;
        for (int row = col + 1; row < points; ++row)
            if (fabsq(m[static_cast<size_t>(row)][static_cast<size_t>(col)]) >
                fabsq(m[static_cast<size_t>(pivot)][static_cast<size_t>(col)]))
                pivot = row;
        std::swap(m[static_cast<size_t>(col)], m[static_cast<size_t>(pivot)]);
        for (int row = 0; row < points; ++row) {
            if (row == col) continue;
            const __float128 f = m[static_cast<size_t>(row)][static_cast<size_t>(col)] /
                                 m[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int c2 = col; c2 <= points; ++c2)
                m[static_cast<size_t>(row)][static_cast<size_t>(c2)] -=
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(c2)];
        }
    }
    std::vector<__float128> w(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        w[static_cast<size_t>(i)] = m[static_cast<size_t>(i)][static_cast<size_t>(points)] /
                                    m[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return w;
}

double fd_derivative(const Expr& e, double s0, int k) {
    constexpr int kPoints = 11;
    constexpr double kStep = 2e-3;
    static const std::vector<__float128> weights[6] = {
        {}, stencil_weights(1, kPoints), stencil_weights(2, kPoints), stencil_weights(3, kPoints),
        stencil_weights(4, kPoints),     stencil_weights(5, kPoints),
    };
    const int half = kPoints / 2;
    __float128 acc = 0;
    for (int j = 0; j < kPoints; ++j) {
        const __float128 x =
            static_cast<__float128>(s0) + static_cast<__float128>(j - half) * kStep;
        acc += weights[static_cast<size_t>(k)][static_cast<size_t>(j)] * eval_quad(e, x);
    }
    __float128 hk = 1;
    for (int p = 0; p < k; ++p) hk *= kStep;
    return static_cast<double>(acc / hk);
}

CheckResult check_jet_engine() {
    CheckResult r{"jet-derivative-engine", false, 0.0, ""};
    const struct {
        const char* text;
        double at;
    } corpus[] = {
        {"s^5/5 - 1/s", 1.3},
        {"sin(s)", 0.7},
        {"cos(s) + s^2", 1.1},
        {"exp(s/2)", 0.9},
        {"sinh(s/2)", 1.2},
        {"cosh(s/2)", 0.8},
        {"tanh(s/2)", 0.7},
        {"sqrt(s + 2)", 0.7},
        {"1/(3 + cos(s))", 1.0},
        {"(1 + s^2)^(1/2)", 0.8},
        {"s^3 - 2*s + 1", 1.2},
        {"exp(sin(s))", 0.9},
        {"1/(s + 2)^2", 0.6},
        {"sin(s)*cos(s)", 1.3},
        {"s/(1 + s^2)", 0.5},
        {"sqrt(1 + sinh(s)^2)", 0.8},
        {"exp(-s^2/2)", 1.0},
        {"(2 + s)^3/(3 + s^2)", 0.7},
        {"cosh(s) - sinh(s)", 1.1},
        {"1/6*(s^5/5 + 1/s)", 1.4},
    };

    Budget budget;
    for (const auto& item : corpus) {
        const ExprPtr e = parse_expr(item.text);
        const Jet j = eval(*e, Jet::variable(item.at, 6));
        const double scale = std::max(1.0, std::abs(j.value()));
        for (int k = 1; k <= 5; ++k) {
            const double fd = fd_derivative(*e, item.at, k);
            const double got = j.derivative(k);
            const double denom = std::max({std::abs(fd), std::abs(got), 1e-8 * scale});
            budget.use(std::abs(got - fd) / denom, 1e-6);
        }
    }
    const double fd_worst = budget.worst;

    // algebraic identities on random jets
    std::mt19937_64 rng(77001u);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const auto random_jet = [&](bool nonsingular) {
        Jet j = Jet::constant(0.0, 6);
        for (int k = 6; k >= 1; --k) j = j + coeff(rng) * pow_int(Jet::variable(0.0, 6), k);
        double lead = coeff(rng);
        if (nonsingular) lead = (lead < 0 ? -1.0 : 1.0) + lead;
        return j + lead;
    };
    Budget alg;
    for (int trial = 0; trial < 200; ++trial) {
        const Jet a = random_jet(false);
        const Jet b = random_jet(true);
        // Leibniz: (a b)' = a' b + a b'
        const Jet lhs = derivative_jet(a * b);
        const Jet rhs = derivative_jet(a) * b + a * derivative_jet(b);
        for (int k = 0; k <= lhs.order(); ++k)
            alg.use(std::abs(lhs.coeff(k) - rhs.coeff(k)),
                    1e-12 * std::max(1.0, std::abs(rhs.coeff(k))));
        // div undoes mul
        const Jet back = (a * b) / b;
        for (int k = 0; k <= back.order(); ++k)
            alg.use(std::abs(back.coeff(k) - a.coeff(k)),
                    1e-12 * std::max(1.0, std::abs(a.coeff(k))));
    }

    r.passed = budget.ok() && alg.ok();
    r.worst = std::max(budget.worst, alg.worst);
    r.detail = "worst finite-difference mismatch at " + fmt(fd_worst) +
               " of the 1e-6 allowance, worst identity mismatch at " + fmt(alg.worst) +
               " of the 1e-12 allowance";
    return r;
}

// ---------------------------------------------------------------------------
// 7. The determinant ladder: k = 1 flags plane curves, k = 2 constant slope.
// ---------------------------------------------------------------------------
CheckResult check_determinant_ladder() {
    CheckResult r{"determinant-ladder", false, 0.0, ""};

    const CurveDef planar = CurveDef::parse("(0, cos(s), sin(s))", {-10.0, 10.0});
    const ResidualReport planar_k1 = det_k(planar, 1, uniform_grid(0.0, 6.0, 201));

    // unit-speed helix around the timelike axis: kappa = 2, |tau| = sqrt(2)
    const CurveDef helix =
        CurveDef::parse("(s, cos(sqrt(2)*s), sin(sqrt(2)*s))", {-10.0, 10.0});
    const auto grid = uniform_grid(0.0, 4.0, 201);
    const ResidualReport helix_k1 = det_k(helix, 1, grid);
    const ResidualReport helix_k2 = det_k(helix, 2, grid);

    Budget budget;
    double ratio_spread = 0.0;
    for (double s : grid) {
        const FrenetApparatus app = nonnull_frenet(helix, s);
        budget.use(std::abs(app.kappa - 2.0), 1e-9);
        budget.use(std::abs(std::abs(app.tau) - std::sqrt(2.0)), 1e-9);
        ratio_spread = std::max(ratio_spread, std::abs(app.tau / app.kappa) -
                                                  std::sqrt(2.0) / 2.0);
    }
    budget.use(std::abs(ratio_spread), 1e-9);

    const bool verdicts_ok = planar_k1.verdict == Verdict::Vanishes &&
                             helix_k1.verdict == Verdict::NonVanishing &&
                             helix_k2.verdict == Verdict::Vanishes;
    r.passed = verdicts_ok && budget.ok();
    r.worst = budget.worst;
    r.detail = std::string("plane k=1 ") + to_string(planar_k1.verdict) + ", helix k=1 " +
               to_string(helix_k1.verdict) + ", helix k=2 " + to_string(helix_k2.verdict) +
               ", hand-computed kappa/tau checks at " + fmt(budget.worst) + " of allowance";
    return r;
}

} // namespace

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> out;
    out.push_back(check_reference_curve());
    out.push_back(check_family_residuals());
    out.push_back(check_det_residual_equivalence());
    out.push_back(check_sigma_equivalence());
    out.push_back(check_integrator_fidelity());
    out.push_back(check_jet_engine());
    out.push_back(check_determinant_ladder());
    return out;
}

} // namespace mink
