#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <optional>
#include <vector>

#include "aps/quadrature.hpp"
#include "aps/rational.hpp"

namespace aps {

// One homogeneous component of a boundary symbol: value at xi' on the unit
// sphere of R^{n-1}, extended by r^degree. For n = 2 the "sphere" is the two
// points xi' = +-1 (passed as a 1-vector).
struct HomogeneousTerm {
    int degree = 0;
    std::function<double(const std::vector<double>&)> eval;
};

enum class ParityClass { EvenEven, EvenOdd, None };

inline const char* parity_name(ParityClass p) {
    switch (p) {
        case ParityClass::EvenEven: return "even-even";
        case ParityClass::EvenOdd: return "even-odd";
        case ParityClass::None: return "none";
    }
    return "?";
}

namespace detail {
inline std::vector<std::vector<double>> parity_probes(int n, int count, unsigned seed) {
    std::vector<std::vector<double>> pts;
    if (n == 2) {
        pts.push_back({1.0});
        return pts;
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        std::vector<double> v(n - 1);
        double norm = 0;
        for (auto& x : v) {
            x = g(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) { --i; continue; }
        for (auto& x : v) x /= norm;
        pts.push_back(v);
    }
    return pts;
}
}  // namespace detail

// Alternating-parity check of a finite symbol series: term of degree m-l must
// satisfy p(-xi) = (-1)^{m-l} p(xi) (even-even) or the opposite (even-odd),
// sampled at random antipodal pairs to 1e-10.
inline ParityClass classify_parity(const std::vector<HomogeneousTerm>& series, int n,
                                   double tol = 1e-10) {
    bool ee = true, eo = true;
    auto pts = detail::parity_probes(n, 8, 20240811u);
    for (const auto& t : series) {
        for (const auto& p : pts) {
            std::vector<double> q(p);
            for (auto& x : q) x = -x;
            double vp = t.eval(p), vm = t.eval(q);
            double sgn = (t.degree % 2 == 0) ? 1.0 : -1.0;
            double scale = std::max({std::abs(vp), std::abs(vm), 1.0});
            if (std::abs(vm - sgn * vp) > tol * scale) ee = false;
            if (std::abs(vm + sgn * vp) > tol * scale) eo = false;
        }
    }
    if (ee) return ParityClass::EvenEven;
    if (eo) return ParityClass::EvenOdd;
    return ParityClass::None;
}

struct SphereIntegral {
    double value = 0.0;
    double error = 0.0;
    bool zero_certificate = false;  // odd integrand on a symmetric sphere
};

// Integral over the unit sphere of R^{n-1}. n = 2: counting measure on
// {-1, +1} with optional weights; n = 3: circle (trapezoid, spectrally
// accurate); n = 4: S^2 via Gauss-Legendre x trapezoid.
inline SphereIntegral sphere_integral(const HomogeneousTerm& term, int n,
                                      std::pair<double, double> s0_weights = {1.0, 1.0}) {
    SphereIntegral out;
    if (n < 2) throw algebra_error("sphere_integral requires n >= 2");

    // odd-integrand detection at antipodal probes
    bool odd = true;
    for (const auto& p : detail::parity_probes(n, 6, 777u)) {
        std::vector<double> q(p);
        for (auto& x : q) x = -x;
        double vp = term.eval(p), vm = term.eval(q);
        if (std::abs(vp + vm) > 1e-12 * std::max({std::abs(vp), std::abs(vm), 1.0})) odd = false;
    }
    if (n == 2) {
        double vp = term.eval({1.0}), vm = term.eval({-1.0});
        out.value = s0_weights.first * vp + s0_weights.second * vm;
        out.error = 0.0;
        out.zero_certificate = odd && s0_weights.first == s0_weights.second;
        if (out.zero_certificate) out.value = 0.0;
        return out;
    }
    if (odd) {
        out.zero_certificate = true;  // antipodal symmetry of the round sphere
        return out;
    }
    if (n == 3) {
        auto f = [&](int m) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i) {
                double th = 2.0 * M_PI * i / m;
                acc += term.eval({std::cos(th), std::sin(th)});
            }
            return acc * 2.0 * M_PI / m;
        };
        double c1 = f(128), c2 = f(256);
        out.value = c2;
        out.error = std::abs(c2 - c1);
        return out;
    }
    if (n == 4) {
        auto level = [&](int mth, int mph) {
            // Gauss-Legendre in u = cos(phi) would be ideal; composite Simpson
            // in phi paired with trapezoid in theta is plenty for smooth data.
            double acc = 0.0;
            for (int i = 0; i <= mph; ++i) {
                double phi = M_PI * i / mph;
                double w = (i == 0 || i == mph) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                double ring = 0.0;
                for (int j = 0; j < mth; ++j) {
                    double th = 2.0 * M_PI * j / mth;
                    ring += term.eval({std::sin(phi) * std::cos(th),
                                       std::sin(phi) * std::sin(th), std::cos(phi)});
                }
                ring *= 2.0 * M_PI / mth;
                acc += w * ring * std::sin(phi);
            }
            return acc * (M_PI / mph) / 3.0;
        };
        double c1 = level(64, 64), c2 = level(128, 128);
        out.value = c2;
        out.error = std::abs(c2 - c1);
        return out;
    }
    throw algebra_error("sphere_integral: unsupported dimension");
}

// Three-region split of the diagonal-value integral of one homogeneous term
// at real lambda < 0. Radial factors are exact antiderivatives of
// r^{degree + n - 2}; the middle region carries the log exactly when
// degree = 1 - n. Outer/inner radial parts are present when convergent.
struct RegionDecomposition {
    SphereIntegral sphere;
    double radial_middle_power = 0.0;
    double radial_middle_log = 0.0;  // coefficient of log|lambda|, i.e. 1/2 when active
    std::optional<double> radial_outer;
    std::optional<double> radial_inner;
    double normalization = 1.0;  // (2 pi)^{1-n}

    double middle_power_value() const { return normalization * sphere.value * radial_middle_power; }
    double log_value() const { return normalization * sphere.value * radial_middle_log; }
};

inline RegionDecomposition region_decompose(const HomogeneousTerm& term, double lambda, int n,
                                            std::pair<double, double> s0_weights = {1.0, 1.0}) {
    if (!(lambda < 0.0)) throw algebra_error("region_decompose requires real lambda < 0");
    RegionDecomposition out;
    out.sphere = sphere_integral(term, n, s0_weights);
    out.normalization = std::pow(2.0 * M_PI, 1 - n);
    const double abs_l = -lambda;
    const int e = term.degree + n - 1;  // r^{e-1} integrand
    if (e == 0) {
        out.radial_middle_log = 0.5;  // int_1^{sqrt|l|} dr/r = (1/2) log|l|
    } else {
        out.radial_middle_power = (std::pow(abs_l, 0.5 * e) - 1.0) / e;
        if (e < 0) out.radial_outer = -std::pow(abs_l, 0.5 * e) / e;
        if (e > 0) out.radial_inner = 1.0 / e;
    }
    return out;
}

}  // namespace aps
