#pragma once

#include "aps/fit.hpp"
#include "aps/mode_sum.hpp"

namespace aps {

// Hurwitz zeta by Euler-Maclaurin: oracle-quality for moderate |s|, q > 0.
inline Cplx hurwitz_zeta(Cplx s, double q, int K = 24) {
    if (std::abs(s - Cplx(1.0, 0.0)) < 1e-14) throw algebra_error("hurwitz zeta pole at s = 1");
    Cplx acc = 0.0;
    for (int k = 0; k < K; ++k) acc += std::pow(Cplx(k + q, 0.0), -s);
    const double Kq = K + q;
    acc += std::pow(Cplx(Kq, 0.0), 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(Cplx(Kq, 0.0), -s);
    // Bernoulli tail: B_{2j}/(2j)! * (s)_{2j-1} * Kq^{-s-2j+1}
    static const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    Cplx poch = s;  // (s)_1
    double fact = 2.0;
    for (int j = 1; j <= 6; ++j) {
        acc += B[j - 1] / fact * poch * std::pow(Cplx(Kq, 0.0), -s - Cplx(2.0 * j - 1.0, 0.0));
        poch *= (s + Cplx(2.0 * j - 1.0, 0.0)) * (s + Cplx(2.0 * j, 0.0));
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return acc;
}

inline Cplx riemann_zeta(Cplx s) { return hurwitz_zeta(s, 1.0); }

// Closed continuation of the circle eta function: eta(s) = zeta_H(s, alpha) -
// zeta_H(s, 1 - alpha) for alpha in (0, 1).
inline Cplx eta_circle_closed(Cplx s, double alpha) {
    return hurwitz_zeta(s, alpha) - hurwitz_zeta(s, 1.0 - alpha);
}

// Poisson-summed small-t form of E(t) = sum_k (k+alpha) e^{-t(k+alpha)^2}.
inline double eta_series_circle_smallt(double alpha, double t) {
    double acc = 0.0;
    for (int m = 1; m <= 24; ++m) {
        double term = (2.0 * M_PI * m / t) * std::sqrt(M_PI / t) *
                      std::exp(-M_PI * M_PI * m * m / t) * std::sin(2.0 * M_PI * m * alpha);
        acc += term;
        if (std::abs(term) < 1e-300) break;
    }
    return acc;
}

enum class SpectralFunction { Zeta, Eta };

struct PoleDatum {
    HalfInt s;      // predicted pole location
    int order = 1;  // 2 when a log slot is detected
    double residue_estimate = 0.0;
};

struct ZetaEtaResult {
    Cplx value{0.0, 0.0};
    bool at_pole = false;
    std::vector<PoleDatum> poles;
    double error_bound = 0.0;
};

// Mellin-split evaluation with the incomplete-gamma cut at t = T: the upper
// part is summed directly; the lower part is continued through a fitted
// small-t expansion of the theta-type series. Pole data comes from the fitted
// exponents whose coefficients stand above the fit noise.
inline ZetaEtaResult zeta_eta(const SpectralModel& model, SpectralFunction which, Cplx s,
                              const std::string& F_label = {}) {
    ModeSummer summer(model);
    const TangentialDecl* F = F_label.empty() ? nullptr : &model.tangential.at(F_label);
    auto series = [&](double t) {
        auto f = [&](double a) {
            Cplx v;
            if (which == SpectralFunction::Eta)
                v = (a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0)) * std::abs(a) * std::exp(-t * a * a);
            else
                v = (a == 0.0) ? 0.0 : std::exp(-t * a * a);  // kernel excluded
            if (F) v *= F->value(a);
            return v;
        };
        return summer.sum(f).value.real();
    };
    const Cplx nu = which == SpectralFunction::Eta ? (s + 1.0) / 2.0 : s;
    const double T = 1.0;

    // ---- upper part: entire in s ------------------------------------------
    Cplx upper = integrate_c(
        [&](double t) { return std::pow(Cplx(t, 0), nu - 1.0) * series(t); }, T,
        std::numeric_limits<double>::infinity(), 1e-12);

    // ---- lower part --------------------------------------------------------
    double amax = 0.0;
    for (const auto& m : model.modes) amax = std::max(amax, std::abs(m.a));
    const double tmin = std::min(0.05, 34.0 / (amax * amax));

    Cplx lower = 0.0;
    double fit_floor = 0.0;
    std::vector<PoleDatum> poles;
    if (model.kind == ModelKind::Circle && which == SpectralFunction::Eta) {
        // Poisson summation: E(t) is exponentially small as t -> 0
        lower = integrate_c(
            [&](double t) {
                double v = t < tmin ? eta_series_circle_smallt(model.circle_alpha, t) : series(t);
                return std::pow(Cplx(t, 0), nu - 1.0) * v;
            },
            0.0, T, 1e-12);
    } else {
        // fit the small-t ladder t^{(j-n+1)/2} and integrate it analytically
        std::vector<std::pair<double, double>> samples;
        for (int i = 0; i < 48; ++i) {
            double t = tmin * std::pow(T / tmin, i / 47.0);
            samples.emplace_back(t, series(t));
        }
        std::vector<BasisSlot> slots;
        const int n = model.dim_n;
        for (int j = 0; j < 8; ++j) slots.push_back({HalfInt(j - (n - 1)), false});
        auto fitted = fit_expansion(samples, slots);
        double scale = std::abs(fitted.terms[0].coefficient) + 1e-30;
        for (const auto& term : fitted.terms) {
            Cplx expo = nu + Cplx(term.exponent.value(), 0.0);
            if (std::abs(term.coefficient) > 1e-9 * scale) {
                PoleDatum p;
                // pole where nu + e = 0: s = -2e - 1 (eta), s = -e (zeta)
                p.s = which == SpectralFunction::Eta ? HalfInt(-2 * term.exponent.twice - 2)
                                                     : HalfInt(-term.exponent.twice);
                p.residue_estimate = term.coefficient;
                poles.push_back(p);
            }
            if (std::abs(expo) < 1e-10) {
                ZetaEtaResult out;
                out.at_pole = true;
                out.poles = poles;
                return out;
            }
            lower += term.coefficient * std::pow(Cplx(T, 0.0), expo) / expo;
        }
        // residual of the fit over [tmin, T]
        Cplx resid = integrate_c(
            [&](double t) {
                double fit_v = 0.0;
                for (const auto& term : fitted.terms)
                    fit_v += term.coefficient * std::pow(t, term.exponent.value());
                return std::pow(Cplx(t, 0), nu - 1.0) * (series(t) - fit_v);
            },
            tmin, T, 1e-11);
        lower += resid;
        fit_floor = fitted.residual * std::abs(lower) + 1e-12;
    }

    if (std::abs(nu.imag()) > 1e-14) throw algebra_error("complex s off the real axis unsupported");
    if (nu.real() <= 0.0 && std::abs(nu.real() - std::round(nu.real())) < 1e-12)
        throw algebra_error("s at a Gamma pole of the Mellin factor");

    ZetaEtaResult out;
    out.value = (upper + lower) / std::tgamma(nu.real());
    out.poles = poles;
    out.error_bound = fit_floor + 1e-11;
    return out;
}

// Direct partial sum with Euler-Maclaurin tail for zeta(A^2) at Re s large
// enough for absolute convergence (the kernel is excluded).
inline ValueWithTail zeta_A2_direct(const SpectralModel& model, double s) {
    ModeSummer summer(model);
    return summer.sum([&](double a) {
        return a == 0.0 ? Cplx(0.0, 0.0) : Cplx(std::pow(a * a, -s), 0.0);
    });
}

}  // namespace aps
