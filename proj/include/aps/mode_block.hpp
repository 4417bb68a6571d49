#pragma once

#include "aps/symfrac.hpp"

namespace aps {

// Reduction of the second-order mode problem: nonnegative eigenvalues get the
// Dirichlet condition u(0)=0, negative ones the Robin condition u'(0)+a u(0)=0.
enum class BoundaryKind { Dirichlet, Robin };

inline BoundaryKind boundary_condition_split(double a) {
    return a >= 0.0 ? BoundaryKind::Dirichlet : BoundaryKind::Robin;
}

// Symbolic per-mode blocks of the doubled product-case resolvent (sigma
// reduced to the identity). Projections are carried unresolved so the
// S0 = -S_B S1^- identity can be checked in all sign cases at once.
struct ModeMatrices {
    Mat2<Coeff> S_B;       // boundary solution matrix
    Mat2<Coeff> S1_plus;   // leftover s.g.o. factor of Q0, + side
    Mat2<Coeff> S1_minus;  // - side; gamma_0 Q0_+ = S1^- diag(T,T)
    Mat2<Coeff> S0;        // G0 = diag(K,K) S0 diag(T,T)
};

inline ModeMatrices mode_matrices() {
    ModeMatrices m;
    const Coeff mu_inv = Coeff::mu(-1);
    const Coeff a = Coeff::a(), alam = Coeff::alam();
    const Coeff pge = Coeff::proj_geq(), plt = Coeff::proj_less();
    m.S_B = Mat2<Coeff>(pge, mu_inv * (alam + a) * plt, mu_inv * (alam - a) * pge, plt);
    auto [s1p, s1m] = g_plusminus_of_Q0();
    m.S1_plus = s1p;
    m.S1_minus = s1m;
    m.S0 = Coeff(-1) * (m.S_B * m.S1_minus);
    return m;
}

// tr_n of the unperturbed singular Green part: S0 (2 alam)^{-1}.
inline Mat2<Coeff> trn_G0_matrix() {
    const ModeMatrices m = mode_matrices();
    return compose_T_xk_K(0) * m.S0;
}

// Scalar normal trace of the boundary term of (Delta_B - lambda)^{-1} for one
// mode, retrieved from the 11-block: mu^{-1} [tr_n G0]_{11}. Exactly equal to
// the elementary closed forms:
//   a >= 0 (Dirichlet):  -1/(4 alam^2)
//   a <  0 (Robin):      rho/(4 alam^2),  rho = (alam - |a|)/(alam + |a|).
inline Coeff trn_G0_block11() {
    static const Coeff expr = [] {
        Mat2<Coeff> t = trn_G0_matrix();
        return Coeff::mu(-1) * t(0, 0);
    }();
    return expr;
}

inline Cplx trn_G0_mode(double a, Cplx lambda) {
    ModeCtx ctx;
    ctx.a = a;
    ctx.lambda = lambda;
    return trn_G0_block11().eval(ctx);
}

// Closed-form references for the same quantity (independent derivation via the
// half-line scalar problems; used as the algebraic cross-check).
inline Cplx trn_G0_mode_closed(double a, Cplx lambda) {
    check_off_cut(lambda);
    const Cplx alam = std::sqrt(a * a - lambda);
    if (a >= 0.0) return -1.0 / (4.0 * alam * alam);
    const double v = -a;
    // reflection coefficient (alam - v)/(alam + v), written cancellation-free
    const Cplx refl = -lambda / ((alam + v) * (alam + v));
    return refl / (4.0 * alam * alam);
}

// d^r/dlambda^r of the same per-mode trace, as an exact expression.
inline Coeff trn_G0_block11_dr(int r) { return trn_G0_block11().d_lambda(r); }

}  // namespace aps
