#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <functional>

#include "aps/rational.hpp"

namespace aps {

// Complex-valued adaptive Gauss-Kronrod on [a, b] (b may be infinite).
template <class F>
Cplx integrate_c(F&& f, double a, double b, double tol = 1e-12) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double x) { return Cplx(f(x)).real(); };
    auto im = [&](double x) { return Cplx(f(x)).imag(); };
    double r = gauss_kronrod<double, 31>::integrate(re, a, b, 12, tol);
    double i = gauss_kronrod<double, 31>::integrate(im, a, b, 12, tol);
    return {r, i};
}

template <class F>
double integrate_r(F&& f, double a, double b, double tol = 1e-12) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol);
}

}  // namespace aps
