#include <algorithm>
#include <cmath>
#include <optional>

#include "minkcurve/characterize.hpp"

namespace mink {

namespace {

using Samples = std::vector<std::pair<double, double>>;
using Case = TorsionFamily::Case;

int param_count(Case cse) {
    switch (cse) {
        case Case::SpacelikeSNOrTimelike:
        case Case::SpacelikeTN:
        case Case::NullSlant: return 2;
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII: return 1;
    }
    return 0;
}

// theta laid out as (b, c) for the non-null families, (a, c) with b fixed to 1
// for the null family (its scaling gauge), (phi) for the Salkowski cases.
Jet model(Case cse, const std::vector<Jet>& theta, int sign, int inner, double s, int order) {
    const Jet sj = Jet::constant(s, order);
    const Jet zero = Jet::constant(0.0, order);
    const Jet one = Jet::constant(1.0, order);
    switch (cse) {
        case Case::SpacelikeSNOrTimelike:
        case Case::SpacelikeTN:
            return TorsionFamily::formula(cse, zero, theta[0], theta[1], zero, sign, inner, sj);
        case Case::NullSlant:
            return TorsionFamily::formula(cse, theta[0], one, theta[1], zero, +1, +1, sj);
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII:
            return TorsionFamily::formula(cse, zero, zero, zero, theta[0], sign, +1, sj);
    }
    fail(Errc::internal, "unhandled family case");
}

struct GNOutcome {
    std::vector<double> theta;
    double rms = 0.0;
    int iterations = 0;
    bool converged = false;
};

double rms_at(Case cse, const std::vector<double>& theta, int sign, int inner,
              const Samples& samples) {
    std::vector<Jet> t;
    for (double v : theta) t.push_back(Jet::constant(v, 0));
    double acc = 0.0;
    for (const auto& [s, tau] : samples) {
        const double r = model(cse, t, sign, inner, s, 0).value() - tau;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

std::optional<GNOutcome> gauss_newton(Case cse, std::vector<double> theta, int sign, int inner,
                                      const Samples& samples) {
    const int n = static_cast<int>(theta.size());
    constexpr int kMaxIter = 100;
    GNOutcome out;
    for (int iter = 1; iter <= kMaxIter; ++iter) {
        double jtj[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        double jtr[2] = {0.0, 0.0};
        for (const auto& [s, tau] : samples) {
            double row[2] = {0.0, 0.0};
            double resid = 0.0;
            for (int j = 0; j < n; ++j) {
                std::vector<Jet> t;
                for (int m = 0; m < n; ++m)
                    t.push_back(m == j ? Jet::variable(theta[static_cast<size_t>(m)], 1)
                                       : Jet::constant(theta[static_cast<size_t>(m)], 1));
                const Jet value = model(cse, t, sign, inner, s, 1);
                row[j] = value.derivative(1);
                if (j == 0) resid = value.value() - tau;
            }
            for (int p = 0; p < n; ++p) {
                for (int q = 0; q < n; ++q) jtj[p][q] += row[p] * row[q];
                jtr[p] += row[p] * resid;
            }
        }
        double delta[2] = {0.0, 0.0};
        if (n == 1) {
            if (jtj[0][0] == 0.0) return std::nullopt;
            delta[0] = -jtr[0] / jtj[0][0];
        } else {
            const double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
            if (det == 0.0) return std::nullopt;
            delta[0] = (-jtr[0] * jtj[1][1] + jtr[1] * jtj[0][1]) / det;
            delta[1] = (-jtr[1] * jtj[0][0] + jtr[0] * jtj[1][0]) / det;
        }
        double step2 = 0.0, size2 = 0.0;
        for (int j = 0; j < n; ++j) {
            theta[static_cast<size_t>(j)] += delta[j];
            step2 += delta[j] * delta[j];
            size2 += theta[static_cast<size_t>(j)] * theta[static_cast<size_t>(j)];
        }
        out.iterations = iter;
        if (std::sqrt(step2) <= 1e-13 * (1.0 + std::sqrt(size2))) {
            out.converged = true;
            break;
        }
    }
    out.theta = theta;
    out.rms = rms_at(cse, theta, sign, inner, samples);
    return out;
}

// Linear least squares u ~ b s + c.
std::optional<std::pair<double, double>> line_fit(const std::vector<double>& s,
                                                  const std::vector<double>& u) {
    const auto n = static_cast<double>(s.size());
    double ss = 0.0, su = 0.0, sss = 0.0, ssu = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        ss += s[i];
        su += u[i];
        sss += s[i] * s[i];
        ssu += s[i] * u[i];
    }
    const double det = n * sss - ss * ss;
    if (std::abs(det) < 1e-30) return std::nullopt;
    const double b = (n * ssu - ss * su) / det;
    const double c = (sss * su - ss * ssu) / det;
    return std::make_pair(b, c);
}

std::vector<double> initial_guess(Case cse, int sign, int inner, const Samples& samples) {
    std::vector<double> sv, uv;
    switch (cse) {
        case Case::SpacelikeSNOrTimelike:
        case Case::SpacelikeTN:
            for (const auto& [s, tau] : samples) {
                const double t = sign * tau;
                double u;
                if (cse == Case::SpacelikeTN) {
                    u = t / std::sqrt(1.0 + t * t);
                } else if (inner > 0) {
                    if (t * t >= 1.0) return {1.0, 0.0};
                    u = t / std::sqrt(1.0 - t * t);
                } else {
                    if (t * t <= 1.0) return {1.0, 0.0};
                    u = t / std::sqrt(t * t - 1.0);
                }
                sv.push_back(s);
                uv.push_back(u);
            }
            if (auto bc = line_fit(sv, uv)) return {bc->first, bc->second};
            return {1.0, 0.0};
        case Case::NullSlant: {
            for (const auto& [s, tau] : samples) {
                if (tau == 0.0 || (tau > 0) != (samples.front().second > 0)) return {1.0, 0.0};
                sv.push_back(s);
                uv.push_back(1.0 / std::sqrt(std::abs(tau)));
            }
            const auto pq = line_fit(sv, uv);
            if (!pq || std::abs(pq->first) < 1e-12) return {1.0, 0.0};
            const double amag = 1.0 / (pq->first * pq->first);
            const double c = pq->second / pq->first;
            return {samples.front().second > 0 ? amag : -amag, c};
        }
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII: {
            double best_phi = 1.0, best_rms = HUGE_VAL;
            for (double phi : {0.3, 0.7, 1.0, 1.5, 2.5}) {
                try {
                    const double r = rms_at(cse, {phi}, sign, +1, samples);
                    if (r < best_rms) {
                        best_rms = r;
                        best_phi = phi;
                    }
                } catch (const Error&) {
                    // outside this phi's validity range
                }
            }
            return {best_phi};
        }
    }
    return {1.0, 0.0};
}

TorsionFamily family_from(Case cse, const std::vector<double>& theta, int sign, int inner) {
    switch (cse) {
        case Case::SpacelikeSNOrTimelike: {
            double b = theta[0], c = theta[1];
            int sg = sign;
            if (b < 0.0) { // canonical representative has b > 0
                b = -b;
                c = -c;
                sg = -sg;
            }
            return TorsionFamily::spacelike_sn_or_timelike(b, c, sg, inner);
        }
        case Case::SpacelikeTN: {
            double b = theta[0], c = theta[1];
            int sg = sign;
            if (b < 0.0) {
                b = -b;
                c = -c;
                sg = -sg;
            }
            return TorsionFamily::spacelike_tn(b, c, sg);
        }
        case Case::NullSlant: return TorsionFamily::null_slant(theta[0], 1.0, theta[1]);
        case Case::SalkowskiI:
        case Case::SalkowskiII:
        case Case::SalkowskiIII: return TorsionFamily::salkowski(cse, theta[0], sign);
    }
    fail(Errc::internal, "unhandled family case");
}

} // namespace

FitResult fit_torsion_family(const Samples& samples, TorsionFamily::Case family_case) {
    const int n_params = param_count(family_case);
    if (static_cast<int>(samples.size()) < std::max(3, n_params + 1))
        fail(Errc::insufficient_samples, "torsion family fit needs at least " +
                                             std::to_string(std::max(3, n_params + 1)) +
                                             " samples");

    // Constant torsion is the b = 0 gauge of the null family; the b = 1
    // reduction cannot reach it, so handle it directly.
    if (family_case == Case::NullSlant) {
        double mean = 0.0;
        for (const auto& [s, tau] : samples) mean += tau;
        mean /= static_cast<double>(samples.size());
        double spread = 0.0, acc = 0.0;
        for (const auto& [s, tau] : samples) {
            spread = std::max(spread, std::abs(tau - mean));
            acc += (tau - mean) * (tau - mean);
        }
        if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) {
            FitResult r;
            r.family = TorsionFamily::null_slant(mean, 0.0, 1.0);
            r.rms = std::sqrt(acc / static_cast<double>(samples.size()));
            r.iterations = 0;
            return r;
        }
    }

    struct CandidateSpec {
        int sign, inner;
    };
    std::vector<CandidateSpec> candidates;
    switch (family_case) {
        case Case::SpacelikeSNOrTimelike:
            candidates = {{+1, +1}, {-1, +1}, {+1, -1}, {-1, -1}};
            break;
        case Case::NullSlant: candidates = {{+1, +1}}; break;
        default: candidates = {{+1, +1}, {-1, +1}}; break;
    }

    std::optional<FitResult> best;
    std::optional<GNOutcome> last_unconverged;
    int last_sign = +1, last_inner = +1;
    for (const auto& cand : candidates) {
        std::optional<GNOutcome> outcome;
        try {
            const auto init = initial_guess(family_case, cand.sign, cand.inner, samples);
            outcome = gauss_newton(family_case, init, cand.sign, cand.inner, samples);
        } catch (const Error& e) {
            if (e.code() == Errc::range || e.code() == Errc::invalid_argument) continue;
            throw;
        }
        if (!outcome) continue;
        if (!outcome->converged) {
            last_unconverged = outcome;
            last_sign = cand.sign;
            last_inner = cand.inner;
            continue;
        }
        try {
            FitResult r;
            r.family = family_from(family_case, outcome->theta, cand.sign, cand.inner);
            r.rms = outcome->rms;
            r.iterations = outcome->iterations;
            if (!best || r.rms < best->rms) best = r;
        } catch (const Error&) {
            // canonical form invalid (e.g. b collapsed to 0): not a usable fit
        }
    }
    if (best) return *best;

    if (last_unconverged) {
        std::string iterate;
        for (double v : last_unconverged->theta) iterate += " " + std::to_string(v);
        (void)last_sign;
        (void)last_inner;
        fail(Errc::no_convergence,
             "fit did not converge after 100 iterations (last iterate:" + iterate +
                 ", rms = " + std::to_string(last_unconverged->rms) + ")");
    }
    fail(Errc::no_convergence, "no parameter candidate evaluates on the given samples");
}

} // namespace mink
