#pragma once

#include <functional>

#include "aps/rational.hpp"
#include "aps/coeff.hpp"

namespace aps {

// Parabolic contour around the spectrum cut [0, infinity):
//   lambda(u) = (u + i w)^2, u in [-U, U], counterclockwise.
struct ContourParams {
    double w = 2.0;        // parabola offset; vertex at -w^2
    double decay = 40.0;   // e^{-t u^2} tail cutoff: U = sqrt(decay/t)
    int points = 1600;     // trapezoid points
};

struct HeatValue {
    double value = 0.0;
    double residual = 0.0;  // difference against the half-resolution rule
};

// Heat transform of a boundary resolvent trace:
//   -(1/2 pi i) contour-integral e^{-t lambda} T(lambda) d lambda.
inline HeatValue heat_from_resolvent(const std::function<Cplx(Cplx)>& trace_fn, double t,
                                     ContourParams p = {}) {
    if (t <= 0.0) throw algebra_error("heat transform requires t > 0");
    const double U = std::sqrt(p.decay / t);
    auto eval = [&](int n) {
        const double h = 2.0 * U / n;
        Cplx acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double u = -U + i * h;
            const Cplx z(u, p.w);
            const Cplx lambda = z * z;
            Cplx f = std::exp(-t * lambda) * trace_fn(lambda) * 2.0 * z;
            acc += (i == 0 || i == n) ? 0.5 * f : f;
        }
        acc *= h;
        // the parabola u -> (u+iw)^2 winds clockwise around the cut
        return acc / (2.0 * M_PI * Cplx(0.0, 1.0));
    };
    Cplx fine = eval(p.points), coarse = eval(p.points / 2);
    HeatValue out;
    out.value = fine.real();
    out.residual = std::abs(fine - coarse) + std::abs(fine.imag());
    return out;
}

}  // namespace aps
