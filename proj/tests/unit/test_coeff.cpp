#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aps/coeff.hpp"
#include "aps/mode_block.hpp"
#include "aps/normal_symbol.hpp"
#include "aps/symfrac.hpp"

using namespace aps;
using Catch::Approx;

namespace {
ModeCtx ctx(double a, Cplx lambda) {
    ModeCtx c;
    c.a = a;
    c.lambda = lambda;
    return c;
}

double rel_err(Cplx x, Cplx y) {
    double scale = std::max({std::abs(x), std::abs(y), 1e-30});
    return std::abs(x - y) / scale;
}
}  // namespace

TEST_CASE("monomial algebra reduces alam^2 to a^2 + mu^2") {
    Coeff alam2 = Coeff::alam(2);
    Coeff expect = Coeff::a(2) + Coeff::mu(2);
    REQUIRE(alam2 == expect);

    // numeric agreement at an off-cut point
    auto c = ctx(1.5, Cplx(-2.0, 1.0));
    REQUIRE(rel_err(alam2.eval(c), c.alam() * c.alam()) < 1e-14);
}

TEST_CASE("projection algebra: Pi>= , Pi<, Pi0 relations") {
    Coeff pge = Coeff::proj_geq(), plt = Coeff::proj_less(), p0 = Coeff::proj_kernel();
    REQUIRE(pge + plt == Coeff(1));
    REQUIRE((pge * plt).is_zero());
    REQUIRE(pge * pge == pge);
    REQUIRE(plt * plt == plt);
    REQUIRE(pge * p0 == p0);
    REQUIRE((plt * p0).is_zero());
    // Pi> = Pi>= - Pi0 idempotent
    Coeff pgt = Coeff::proj_greater();
    REQUIRE(pgt * pgt == pgt);
    // sign^2 = 1 - Pi0
    Coeff s = Coeff::sign_part();
    REQUIRE(s * s == Coeff(1) - p0);
}

TEST_CASE("kernel reductions: a Pi0 = 0 and alam Pi0 = mu Pi0") {
    REQUIRE((Coeff::a() * Coeff::kernel_part()).is_zero());
    REQUIRE(Coeff::alam() * Coeff::kernel_part() == Coeff::mu() * Coeff::kernel_part());
    REQUIRE(Coeff::alam(-3) * Coeff::kernel_part() == Coeff::mu(-3) * Coeff::kernel_part());
}

TEST_CASE("d_lambda on monomials") {
    // d/dlambda alam^{-1} = (1/2) alam^{-3}
    REQUIRE(Coeff::alam(-1).d_lambda() == Rat(1, 2) * Coeff::alam(-3));
    // d/dlambda (a^2-lambda)^{-1} = (a^2-lambda)^{-2}
    REQUIRE(Coeff::alam(-2).d_lambda() == Coeff::alam(-4));
    // d^2/dlambda^2 of -1/(4(a^2-lambda)) at a=1, lambda=-1 equals -1/16
    Coeff f = Rat(-1, 4) * Coeff::alam(-2);
    Cplx v = f.d_lambda(2).eval(ctx(1.0, Cplx(-1.0, 0.0)));
    REQUIRE(v.real() == Approx(-1.0 / 16).epsilon(1e-14));
    REQUIRE(v.imag() == Approx(0.0).margin(1e-16));
}

TEST_CASE("d_lambda agrees with finite differences") {
    Coeff f = Coeff::mu(-1) * Coeff::a(2) * Coeff::alam(-3) +
              Rat(2, 3) * Coeff::alam(-1) * Coeff::sign_part();
    const double a = -1.3;
    const Cplx l0(-2.5, 0.8);
    const double h = 1e-4;
    Cplx num = (f.eval(ctx(a, l0 + h)) - f.eval(ctx(a, l0 - h))) / (2 * h);
    Cplx sym = f.d_lambda().eval(ctx(a, l0));
    REQUIRE(rel_err(num, sym) < 1e-6);
}

TEST_CASE("partial fractions: paper anchor identities") {
    // 1/((alam+ixi)(alam-ixi)) = (1/2alam)[ 1/(alam+ixi) + 1/(alam-ixi) ]
    NormalSymbol f = NormalSymbol::mixed(Coeff(1), 1, 1, 0);
    Coeff half = Rat(1, 2) * Coeff::alam(-1);
    REQUIRE(f.plus().at(1) == half);
    REQUIRE(f.minus().at(1) == half);
    REQUIRE(f.poly_is_zero());

    // i xi/(alam^2+xi^2) = (1/2)[ -1/(alam+ixi) + 1/(alam-ixi) ]
    NormalSymbol g = NormalSymbol::mixed(Coeff(1), 1, 1, 1);
    REQUIRE(g.plus().at(1) == Coeff(Rat(-1, 2)));
    REQUIRE(g.minus().at(1) == Coeff(Rat(1, 2)));
    REQUIRE(g.poly_is_zero());

    // already-canonical input is a fixed point
    NormalSymbol h = NormalSymbol::plus_pole(2);
    REQUIRE(partial_fractions(h) == h);
}

TEST_CASE("h_plus / h_minus projections") {
    NormalSymbol f = NormalSymbol::mixed(Coeff(1), 1, 1, 0);
    REQUIRE(f.h_plus() + f.h_minus() + f.poly_part() == f);
    REQUIRE(f.h_plus().h_plus() == f.h_plus());
    // h+ of a pure minus-pole vanishes
    REQUIRE(NormalSymbol::minus_pole(1).h_plus().is_zero());
    // h+- of 1/(alam^2+xi^2) from the anchor identity
    REQUIRE(f.h_plus() == NormalSymbol::plus_pole(1, Rat(1, 2) * Coeff::alam(-1)));
    REQUIRE(f.h_minus() == NormalSymbol::minus_pole(1, Rat(1, 2) * Coeff::alam(-1)));
}

TEST_CASE("partial fractions agree numerically with the defining expression") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ua(-3.0, 3.0), ux(-5.0, 5.0), ul(0.5, 30.0);
    for (int trial = 0; trial < 10; ++trial) {
        int p = 1 + trial % 3, q = 1 + (trial / 3) % 3, d = trial % 2;
        NormalSymbol f = NormalSymbol::mixed(Coeff(1), p, q, d);
        double a = ua(rng);
        Cplx lambda = -ul(rng) * std::exp(Cplx(0, 0.25 * (trial % 2)));
        auto c = ctx(a, lambda);
        Cplx xi(ux(rng), 0.0);
        Cplx alam = c.alam();
        Cplx direct = ipow(alam + Cplx(0, 1) * xi, -p) * ipow(alam - Cplx(0, 1) * xi, -q) *
                      ipow(Cplx(0, 1) * xi, d);
        REQUIRE(rel_err(f.eval(c, xi), direct) < 1e-12);
    }
}

TEST_CASE("round trip property over random canonical symbols") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> upow(1, 4), upick(0, 2), urat(-6, 6);
    for (int trial = 0; trial < 30; ++trial) {
        NormalSymbol f;
        for (int t = 0; t < 4; ++t) {
            Rat c(urat(rng), 1 + upick(rng));
            if (c == 0) continue;
            Coeff cc = Coeff(c) * Coeff::alam(-upick(rng));
            switch (upick(rng)) {
                case 0: f += NormalSymbol::plus_pole(upow(rng), cc); break;
                case 1: f += NormalSymbol::minus_pole(upow(rng), cc); break;
                default: f += NormalSymbol::constant(cc); break;
            }
        }
        REQUIRE(f.h_plus() + f.h_minus() + f.poly_part() == f);
        // d_lambda commutes with canonicalization/products
        NormalSymbol prod = f * NormalSymbol::plus_pole(1);
        NormalSymbol lhs = prod.d_lambda();
        NormalSymbol rhs = f.d_lambda() * NormalSymbol::plus_pole(1) +
                           f * NormalSymbol::plus_pole(1).d_lambda();
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("plus integral: T K anchors") {
    // (1/2pi) int 1/((alam-ixi)(alam+ixi)) dxi = 1/(2 alam)
    Coeff v = compose_trace_poisson(T_xn_power(0), xn_power_on_K(0));
    REQUIRE(v == Rat(1, 2) * Coeff::alam(-1));
}
