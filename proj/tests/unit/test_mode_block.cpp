#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aps/mode_block.hpp"

using namespace aps;
using Catch::Approx;

namespace {
double rel_err(Cplx x, Cplx y) {
    double scale = std::max({std::abs(x), std::abs(y), 1e-30});
    return std::abs(x - y) / scale;
}
}  // namespace

TEST_CASE("boundary condition split") {
    REQUIRE(boundary_condition_split(3.0) == BoundaryKind::Dirichlet);
    REQUIRE(boundary_condition_split(-2.0) == BoundaryKind::Robin);
    REQUIRE(boundary_condition_split(0.0) == BoundaryKind::Dirichlet);
}

TEST_CASE("S_B matches its explicit form in each sign case") {
    ModeMatrices m = mode_matrices();
    // a > 0: Pi>= = 1, Pi< = 0: S_B = [[1, 0], [mu^{-1}(alam-a), 0]]
    REQUIRE(m.S_B(0, 0).resolve_sign_case(1) == Coeff(1));
    REQUIRE(m.S_B(0, 1).resolve_sign_case(1).is_zero());
    REQUIRE(m.S_B(1, 0).resolve_sign_case(1) ==
            Coeff::mu(-1) * (Coeff::alam() - Coeff::a()));
    REQUIRE(m.S_B(1, 1).resolve_sign_case(1).is_zero());
    // a < 0: S_B = [[0, mu^{-1}(alam+a)], [0, 1]]
    REQUIRE(m.S_B(0, 0).resolve_sign_case(-1).is_zero());
    REQUIRE(m.S_B(0, 1).resolve_sign_case(-1) ==
            Coeff::mu(-1) * (Coeff::alam() + Coeff::a()));
    REQUIRE(m.S_B(1, 1).resolve_sign_case(-1) == Coeff(1));
    // a = 0 (kernel): Dirichlet shape with alam = mu
    REQUIRE(m.S_B(0, 0).resolve_sign_case(0) == Coeff(1));
    REQUIRE(m.S_B(1, 0).resolve_sign_case(0) == Coeff(1));  // mu^{-1}(alam-0) -> 1
}

TEST_CASE("S0 = -S_B S1^- holds in all three sign cases (and unresolved)") {
    ModeMatrices m = mode_matrices();
    Mat2<Coeff> lhs = m.S0;
    Mat2<Coeff> rhs = Coeff(-1) * (m.S_B * m.S1_minus);
    REQUIRE(lhs == rhs);
    for (int sgn : {1, 0, -1})
        for (int idx = 0; idx < 4; ++idx)
            REQUIRE(lhs.e[idx].resolve_sign_case(sgn) == rhs.e[idx].resolve_sign_case(sgn));

    // explicit top-left entry: (-1/2alam)(mu Pi>= - mu^{-1}(alam+a)^2 Pi<)
    Coeff expect = Coeff(Rat(-1, 2)) * Coeff::alam(-1) *
                   (Coeff::mu() * Coeff::proj_geq() -
                    Coeff::mu(-1) * (Coeff::alam() + Coeff::a()) * (Coeff::alam() + Coeff::a()) *
                        Coeff::proj_less());
    REQUIRE(m.S0(0, 0) == expect);
}

TEST_CASE("normal trace of G0: symbolic equality with the closed forms") {
    Coeff t = trn_G0_block11();
    // Dirichlet (a > 0): -1/(4 alam^2)
    REQUIRE(t.resolve_sign_case(1) == Rat(-1, 4) * Coeff::alam(-2));
    // Kernel mode: -1/(4 alam^2) with alam = mu, i.e. 1/(4 lambda)
    REQUIRE(t.resolve_sign_case(0) == Rat(-1, 4) * Coeff::mu(-2));
    // Robin (a < 0): (alam+a)^2 / (4 mu^2 alam^2)
    Coeff robin = Rat(1, 4) * Coeff::mu(-2) * Coeff::alam(-2) * (Coeff::alam() + Coeff::a()) *
                  (Coeff::alam() + Coeff::a());
    REQUIRE(t.resolve_sign_case(-1) == robin);
}

TEST_CASE("trn_G0_mode anchors and closed-form triangle") {
    // a=1, lambda=-1 -> -1/8
    REQUIRE(trn_G0_mode(1.0, Cplx(-1, 0)).real() == Approx(-0.125).epsilon(1e-14));
    // a=-1, lambda=-1 -> (3-2 sqrt 2)/8
    double expect = (3.0 - 2.0 * std::sqrt(2.0)) / 8.0;
    REQUIRE(trn_G0_mode(-1.0, Cplx(-1, 0)).real() == Approx(expect).epsilon(1e-13));
    // a=0, lambda=-1 -> 1/(4 lambda) = -1/4
    REQUIRE(trn_G0_mode(0.0, Cplx(-1, 0)).real() == Approx(-0.25).epsilon(1e-14));

    // 12 modes x 20 lambdas on two rays, closed-form equality to 1e-12
    const double modes[12] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 5.0, -5.0, 10.0};
    for (double a : modes) {
        for (int j = 0; j < 20; ++j) {
            double r = std::pow(10.0, -1.0 + 3.0 * j / 19.0);
            for (double arg : {M_PI, 0.75 * M_PI}) {
                Cplx lambda = std::polar(r, arg);
                REQUIRE(rel_err(trn_G0_mode(a, lambda), trn_G0_mode_closed(a, lambda)) < 1e-12);
            }
        }
    }
}

TEST_CASE("d_lambda of the mode trace matches finite differences") {
    Coeff d1 = trn_G0_block11_dr(1);
    for (double a : {1.3, -0.8, 0.0}) {
        ModeCtx c;
        c.a = a;
        c.lambda = Cplx(-2.0, 0.7);
        const double h = 1e-5;
        Cplx num =
            (trn_G0_mode(a, c.lambda + h) - trn_G0_mode(a, c.lambda - h)) / (2.0 * h);
        REQUIRE(rel_err(num, d1.eval(c)) < 1e-8);
    }
}
