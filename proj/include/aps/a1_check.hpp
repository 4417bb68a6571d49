#pragma once

#include <functional>

#include "aps/trace_run.hpp"

namespace aps {

// Fits the cross-section heat trace sum F(a) e^{-t a^2} on the half-integer
// ladder and returns the coefficient of t^{1/2} (and t^{-1/2} on request).
struct HeatFit {
    double e_minus1 = 0.0, e_minus1_sigma = 0.0;
    double e1 = 0.0, e1_sigma = 0.0;
    double residual = 0.0;
};

inline HeatFit fit_heat_coefficients(const SpectralModel& model, const std::string& F_label = {},
                                     double t0 = 2e-5, double t1 = 2e-2, int count = 48) {
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < count; ++i) {
        double t = t0 * std::pow(t1 / t0, static_cast<double>(i) / (count - 1));
        samples.emplace_back(t, heat_trace_A2(model, t, F_label).value.real());
    }
    std::vector<BasisSlot> slots;
    for (int j = 0; j < 8; ++j) slots.push_back({HalfInt(j - 1), false});
    auto fit = fit_expansion(samples, slots);
    HeatFit out;
    out.residual = fit.residual;
    if (const FitTerm* t = fit.find(HalfInt(-1), false)) {
        out.e_minus1 = t->coefficient;
        out.e_minus1_sigma = t->sigma;
    }
    if (const FitTerm* t = fit.find(HalfInt(1), false)) {
        out.e1 = t->coefficient;
        out.e1_sigma = t->sigma;
    }
    return out;
}

struct A1Report {
    double e1 = 0.0, e1_sigma = 0.0;
    double a1prime = 0.0, a1prime_sigma = 0.0;
    double gap = 0.0;           // |a1' - (-e1/pi)|
    double combined_tol = 0.0;  // fit-noise based tolerance for the identity
    bool consistent = false;
    double log_coefficient = 0.0;  // the raw fitted (-lambda)^{-3/2-r} log coefficient
};

// a'_1 = -e_1/pi check: the heat side is fitted from the A^2 trace, the
// resolvent side from the boundary trace log slot at (-lambda)^{-3/2-r},
// converted through the Gamma factor of the heat<->resolvent transition.
inline A1Report check_a1_formula(const SpectralModel& model, int r = 1,
                                 const std::string& phi_label = {}, double x0 = 3e2,
                                 double x1 = 3e4, int samples = 44) {
    A1Report rep;
    auto heat = fit_heat_coefficients(model, phi_label);
    rep.e1 = heat.e1;
    rep.e1_sigma = heat.e1_sigma;

    auto res = run_boundary_fit(model, nullptr, phi_label, r, x0, x1, samples, 8, 4);
    const FitTerm* slot = res.series.find(HalfInt(-3 - 2 * r), true);
    if (!slot) throw algebra_error("log slot missing from the fitted basis");
    rep.log_coefficient = slot->coefficient;
    const double gamma_factor = std::tgamma(r + 1.5);
    rep.a1prime = -slot->coefficient / gamma_factor;
    rep.a1prime_sigma = slot->sigma / gamma_factor;

    rep.gap = std::abs(rep.a1prime - (-rep.e1 / M_PI));
    rep.combined_tol =
        10.0 * (rep.a1prime_sigma + rep.e1_sigma / M_PI) + 1e-4 * std::abs(rep.e1 / M_PI) + 1e-9;
    rep.consistent = rep.gap <= rep.combined_tol;
    return rep;
}

// Remark-3.10-type measurement: second alpha-derivative of e1 along a family
// against e_{-1}, by central differences of the fitted values.
struct AlphaRatioReport {
    double ratio = 0.0;
    double noise = 0.0;
    double e1_0 = 0.0, e_minus1 = 0.0;
};

inline AlphaRatioReport measure_alpha_ratio(
    const std::function<SpectralModel(double)>& family, double h = 0.5) {
    AlphaRatioReport out;
    HeatFit f0 = fit_heat_coefficients(family(0.0));
    HeatFit fp = fit_heat_coefficients(family(h));
    HeatFit fm = fit_heat_coefficients(family(-h));
    double second = (fp.e1 - 2.0 * f0.e1 + fm.e1) / (h * h);
    out.e1_0 = f0.e1;
    out.e_minus1 = f0.e_minus1;
    out.ratio = second / f0.e_minus1;
    out.noise = (fp.e1_sigma + 2 * f0.e1_sigma + fm.e1_sigma) / (h * h) /
                std::max(std::abs(f0.e_minus1), 1e-12);
    return out;
}

}  // namespace aps
