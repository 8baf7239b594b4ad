#include "minkcurve/synthesize.hpp"

#include <algorithm>
#include <cmath>

#include "minkcurve/json_writer.hpp"

namespace mink {

namespace {

struct Derivs {
    Vec3 position, T, N, B;
};

Derivs rhs(const CausalSignature& sig, const FrameState& y, double tau) {
    Derivs d;
    d.position = y.T;
    d.T = y.N; // kappa = 1
    if (sig.is_null()) {
        d.N = tau * y.T - y.B;
        d.B = -tau * y.N;
    } else {
        const double tn = (sig.eps_T * sig.eps_N).as_double();
        const double nb = (sig.eps_N * sig.eps_B).as_double();
        d.N = -tn * y.T + tau * y.B;
        d.B = -nb * tau * y.N;
    }
    return d;
}

FrameState advance(const FrameState& y, const Derivs& d, double h) {
    FrameState r = y;
    r.position = y.position + h * d.position;
    r.T = y.T + h * d.T;
    r.N = y.N + h * d.N;
    r.B = y.B + h * d.B;
    return r;
}

void accumulate(Derivs& acc, const Derivs& d, double w) {
    acc.position = acc.position + w * d.position;
    acc.T = acc.T + w * d.T;
    acc.N = acc.N + w * d.N;
    acc.B = acc.B + w * d.B;
}

void check_blowup(const FrameState& y, double limit) {
    const Vec3* vs[] = {&y.position, &y.T, &y.N, &y.B};
    for (const Vec3* v : vs)
        if (std::abs(v->x0) > limit || std::abs(v->x1) > limit || std::abs(v->x2) > limit)
            fail(Errc::frame_blowup,
                 "frame component exceeded " + format_double(limit) + " at s = " +
                     std::to_string(y.s));
}

// Metric Gram-Schmidt back onto the target pattern. The integrator drifts by
// O(step^5) per step; one linear correction pass is idempotent at that size.
void renormalize(FrameState& y, const CausalSignature& sig) {
    if (sig.is_null()) {
        y.N = y.N / std::sqrt(metric_g(y.N, y.N));
        y.T = y.T - metric_g(y.T, y.N) * y.N;
        y.T = y.T - (metric_g(y.T, y.T) / (2.0 * metric_g(y.T, y.B))) * y.B;
        y.B = y.B - metric_g(y.B, y.N) * y.N;
        y.B = y.B / metric_g(y.T, y.B);
        y.B = y.B - (0.5 * metric_g(y.B, y.B)) * y.T;
        return;
    }
    const double gT = metric_g(y.T, y.T);
    y.T = y.T / std::sqrt(std::abs(gT));
    y.N = y.N - (metric_g(y.N, y.T) / sig.eps_T.as_double()) * y.T;
    y.N = y.N / std::sqrt(std::abs(metric_g(y.N, y.N)));
    Vec3 b = lorentz_cross(y.T, y.N);
    b = b / std::sqrt(std::abs(metric_g(b, b)));
    // keep the integrated orientation
    if (euclid_dot(b, y.B) < 0.0) b = -b;
    y.B = b;
}

} // namespace

const char* CausalSignature::name() const noexcept {
    if (kind == Kind::Null) return "null";
    if (eps_T == Sign::minus()) return "timelike";
    return eps_N == Sign::plus() ? "spacelike-sn" : "spacelike-tn";
}

FrameState canonical_frame(const CausalSignature& sig, double s0) {
    FrameState f;
    f.s = s0;
    f.position = {0.0, 0.0, 0.0};
    if (sig.is_null()) {
        const double r = 1.0 / std::sqrt(2.0);
        f.T = {r, r, 0.0};
        f.N = {0.0, 0.0, 1.0};
        f.B = {-r, r, 0.0};
        return f;
    }
    if (sig.eps_T == Sign::minus()) { // timelike curve
        f.T = {1.0, 0.0, 0.0};
        f.N = {0.0, 1.0, 0.0};
        f.B = {0.0, 0.0, 1.0};
    } else if (sig.eps_N == Sign::plus()) { // spacelike, spacelike normal
        f.T = {0.0, 1.0, 0.0};
        f.N = {0.0, 0.0, 1.0};
        f.B = {1.0, 0.0, 0.0};
    } else { // spacelike, timelike normal
        f.T = {0.0, 1.0, 0.0};
        f.N = {1.0, 0.0, 0.0};
        f.B = {0.0, 0.0, -1.0};
    }
    return f;
}

double gram_deviation(const FrameState& y, const CausalSignature& sig) {
    double d = 0.0;
    const auto check = [&d](double got, double want) {
        d = std::max(d, std::abs(got - want));
    };
    if (sig.is_null()) {
        check(metric_g(y.T, y.T), 0.0);
        check(metric_g(y.N, y.N), 1.0);
        check(metric_g(y.B, y.B), 0.0);
        check(metric_g(y.T, y.N), 0.0);
        check(metric_g(y.N, y.B), 0.0);
        check(metric_g(y.T, y.B), 1.0);
    } else {
        check(metric_g(y.T, y.T), sig.eps_T.as_double());
        check(metric_g(y.N, y.N), sig.eps_N.as_double());
        check(metric_g(y.B, y.B), sig.eps_B.as_double());
        check(metric_g(y.T, y.N), 0.0);
        check(metric_g(y.N, y.B), 0.0);
        check(metric_g(y.T, y.B), 0.0);
    }
    return d;
}

double max_gram_drift(const SampledCurve& curve) {
    double d = 0.0;
    for (const auto& st : curve.states) d = std::max(d, gram_deviation(st, curve.signature));
    return d;
}

SampledCurve integrate_frame(const CausalSignature& sig, const TauFn& tau,
                             const FrameState& initial, Interval range, double step,
                             const IntegrateOptions& opts) {
    if (!(step > 0.0)) fail(Errc::invalid_argument, "integration step must be positive");
    if (gram_deviation(initial, sig) > kInitialGramTol)
        fail(Errc::precondition, "initial frame violates the target Gram pattern beyond " +
                                     format_double(kInitialGramTol));
    const double span = range.hi - range.lo;
    if (span == 0.0) fail(Errc::invalid_argument, "integration range is empty");
    const auto n = static_cast<long long>(std::llround(std::abs(span) / step));
    const long long steps = std::max<long long>(1, n);
    const double h = span / static_cast<double>(steps);

    SampledCurve out;
    out.signature = sig;
    out.step = std::abs(h);
    out.states.reserve(static_cast<size_t>(steps) + 1);

    FrameState y = initial;
    y.s = range.lo;
    out.states.push_back(y);
    for (long long i = 1; i <= steps; ++i) {
        const double s = y.s;
        const Derivs k1 = rhs(sig, y, tau(s));
        const Derivs k2 = rhs(sig, advance(y, k1, h / 2.0), tau(s + h / 2.0));
        const Derivs k3 = rhs(sig, advance(y, k2, h / 2.0), tau(s + h / 2.0));
        const Derivs k4 = rhs(sig, advance(y, k3, h), tau(s + h));
        Derivs total = k1;
        accumulate(total, k2, 2.0);
        accumulate(total, k3, 2.0);
        accumulate(total, k4, 1.0);
        y = advance(y, total, h / 6.0);
        y.s = range.lo + static_cast<double>(i) * h;
        check_blowup(y, opts.blowup_limit);
        if (opts.renormalize) renormalize(y, sig);
        out.states.push_back(y);
    }
    return out;
}

SampledCurve integrate_frame(const CausalSignature& sig, const TorsionFamily& family,
                             const FrameState& initial, Interval range, double step,
                             const IntegrateOptions& opts) {
    SampledCurve out = integrate_frame(
        sig, [&family](double s) { return family.eval(s); }, initial, range, step, opts);
    out.tau_label = family.label();
    return out;
}

CausalSignature salkowski_signature(SalkowskiCase c) noexcept {
    switch (c) {
        case SalkowskiCase::I: return CausalSignature::spacelike_sn();
        case SalkowskiCase::II: return CausalSignature::spacelike_tn();
        case SalkowskiCase::III: return CausalSignature::timelike();
    }
    return CausalSignature::spacelike_sn();
}

TorsionFamily salkowski_family(SalkowskiCase c, double phi) {
    switch (c) {
        case SalkowskiCase::I: return TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiI, phi);
        case SalkowskiCase::II:
            return TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiII, phi);
        case SalkowskiCase::III:
            return TorsionFamily::salkowski(TorsionFamily::Case::SalkowskiIII, phi);
    }
    fail(Errc::invalid_argument, "unknown Salkowski case");
}

SampledCurve make_salkowski(SalkowskiCase c, double phi, Interval range, double step) {
    const CausalSignature sig = salkowski_signature(c);
    const TorsionFamily family = salkowski_family(c, phi);
    return integrate_frame(sig, family, canonical_frame(sig, range.lo), range, step);
}

std::string SampledCurve::to_csv(bool with_frames) const {
    std::string out = "s,px0,px1,px2";
    if (with_frames) out += ",T0,T1,T2,N0,N1,N2,B0,B1,B2";
    out += '\n';
    const auto cell = [&out](double v) {
        out += ',';
        out += format_double(v);
    };
    for (const auto& st : states) {
        out += format_double(st.s);
        cell(st.position.x0);
        cell(st.position.x1);
        cell(st.position.x2);
        if (with_frames) {
            for (const Vec3* v : {&st.T, &st.N, &st.B}) {
                cell(v->x0);
                cell(v->x1);
                cell(v->x2);
            }
        }
        out += '\n';
    }
    return out;
}

std::string SampledCurve::to_json(bool with_frames) const {
    JsonWriter w;
    w.begin_object();
    w.key("signature").value(signature.name());
    w.key("tau").value(tau_label);
    w.key("step").value(step);
    w.key("count").value(states.size());
    w.key("samples").begin_array();
    const auto vec = [&w](const Vec3& v) {
        w.begin_array().value(v.x0).value(v.x1).value(v.x2).end_array();
    };
    for (const auto& st : states) {
        w.begin_object();
        w.key("s").value(st.s);
        w.key("position");
        vec(st.position);
        if (with_frames) {
            w.key("T");
            vec(st.T);
            w.key("N");
            vec(st.N);
            w.key("B");
            vec(st.B);
        }
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::vector<double> recover_tau(const SampledCurve& curve) {
    const auto& st = curve.states;
    if (st.size() < 5)
        fail(Errc::insufficient_samples, "torsion recovery needs at least 5 samples");
    const double h = st[1].s - st[0].s;
    std::vector<double> out(st.size());

    const auto n_prime = [&](size_t i) -> Vec3 {
        // five-point stencils, fourth order
        const auto& S = st;
        if (i >= 2 && i + 2 < S.size())
            return (1.0 / (12.0 * h)) *
                   (S[i - 2].N - 8.0 * S[i - 1].N + 8.0 * S[i + 1].N - S[i + 2].N);
        // near the ends: differentiate through nodes base..base+4 at the
        // matching offset row
        const size_t base = std::min(i, S.size() - 5);
        const size_t row = i - base;
        const double w[5][5] = {
            {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4},
            {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12},
            {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12},
            {-1.0 / 12, 1.0 / 2, -3.0 / 2, 5.0 / 6, 1.0 / 4},
            {1.0 / 4, -4.0 / 3, 3.0, -4.0, 25.0 / 12},
        };
        Vec3 acc = {0.0, 0.0, 0.0};
        for (size_t j = 0; j < 5; ++j) acc = acc + w[row][j] * S[base + j].N;
        return (1.0 / h) * acc;
    };

    for (size_t i = 0; i < st.size(); ++i) {
        const Vec3 np = n_prime(i);
        if (curve.signature.is_null())
            out[i] = metric_g(np, st[i].B);
        else
            out[i] = curve.signature.eps_B.as_double() * metric_g(np, st[i].B);
    }
    return out;
}

std::vector<Vec3> derivatives_from_frame(const FrameState& state, const CausalSignature& sig,
                                         const Jet& tau, int k_max) {
    if (k_max < 0) fail(Errc::invalid_argument, "derivative order must be >= 0");
    if (k_max >= 1 && tau.order() < k_max - 1)
        fail(Errc::invalid_argument, "torsion jet order too low for the requested derivatives");
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(k_max) + 1);
    out.push_back(state.position);
    if (k_max == 0) return out;

    // frame components of alpha^(m) as jets, advanced with the structure
    // equations (kappa = 1)
    const int order = tau.order();
    Jet a = Jet::constant(1.0, order);
    Jet b = Jet::constant(0.0, order);
    Jet c = Jet::constant(0.0, order);
    const auto emit = [&]() {
        out.push_back(a.value() * state.T + b.value() * state.N + c.value() * state.B);
    };
    emit(); // alpha' = T
    for (int m = 2; m <= k_max; ++m) {
        Jet na = derivative_jet(a);
        Jet nb = derivative_jet(b);
        Jet nc = derivative_jet(c);
        if (sig.is_null()) {
            na = na + tau * b;
            nb = nb + a - tau * c;
            nc = nc - b;
        } else {
            const double tn = (sig.eps_T * sig.eps_N).as_double();
            const double nb_sign = (sig.eps_N * sig.eps_B).as_double();
            na = na - tn * b;
            nb = nb + a - nb_sign * (tau * c);
            nc = nc + tau * b;
        }
        a = na;
        b = nb;
        c = nc;
        emit();
    }
    return out;
}

DerivativeFn sampled_derivative_fn(const SampledCurve& curve, TauJetFn tau) {
    return [&curve, tau = std::move(tau)](double s, int k_max) {
        const auto& st = curve.states;
        auto it = std::lower_bound(st.begin(), st.end(), s,
                                   [](const FrameState& f, double v) { return f.s < v; });
        const FrameState* node = nullptr;
        const double tol = 1e-9 * std::max(1.0, std::abs(s));
        if (it != st.end() && std::abs(it->s - s) <= tol) node = &*it;
        else if (it != st.begin() && std::abs(std::prev(it)->s - s) <= tol) node = &*std::prev(it);
        if (!node)
            fail(Errc::invalid_argument,
                 "s = " + std::to_string(s) + " does not coincide with a stored sample");
        return derivatives_from_frame(*node, curve.signature, tau(node->s, Jet::kDefaultOrder),
                                      k_max);
    };
}

} // namespace mink
