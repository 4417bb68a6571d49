#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aps/mode_block.hpp"

namespace aps {

// Second-order finite differences for the half-line mode problem
// -u'' + a^2 u on [0, L] with the reduced boundary condition at 0
// (Dirichlet u(0) = 0 for a >= 0, Robin u'(0) + a u(0) = 0 for a < 0)
// and a Dirichlet wall at L whose influence is subtracted analytically.
struct OracleConfig {
    double L = 30.0;
    int n = 2000;  // grid intervals; h = L/n

    double tail_bound(double re_alam) const { return std::exp(-2.0 * re_alam * L); }
    double h() const { return L / n; }
};

class FdOracle {
  public:
    FdOracle(double a, OracleConfig cfg = {}) : a_(a), cfg_(cfg) {
        bc_ = boundary_condition_split(a);
        const double h = cfg_.h();
        const int m = size();
        sub_.assign(m, -1.0 / (h * h));
        diag_.assign(m, 2.0 / (h * h) + a_ * a_);
        sup_.assign(m, -1.0 / (h * h));
        if (bc_ == BoundaryKind::Robin) {
            // ghost elimination for u'(0) + a u(0) = 0 at node 0
            diag_[0] = (2.0 - 2.0 * h * a_) / (h * h) + a_ * a_;
            sup_[0] = -2.0 / (h * h);
        }
    }

    BoundaryKind kind() const { return bc_; }
    const OracleConfig& config() const { return cfg_; }

    // Relative (boundary) resolvent trace: diag of (T - lambda)^{-1} minus the
    // full-line reference and the far-wall layer, trapezoid-summed.
    Cplx boundary_resolvent_trace(Cplx lambda) const {
        check_off_cut(lambda);
        const int m = size();
        const double h = cfg_.h();
        const Cplx alam = std::sqrt(a_ * a_ - lambda);

        // LU pivots from both ends: G_ii = 1/(alpha_i + beta_i - b_i)
        std::vector<Cplx> alpha(m), beta(m);
        alpha[0] = diag_[0] - lambda;
        for (int i = 1; i < m; ++i)
            alpha[i] = diag_[i] - lambda - sub_[i] * sup_[i - 1] / alpha[i - 1];
        beta[m - 1] = diag_[m - 1] - lambda;
        for (int i = m - 2; i >= 0; --i)
            beta[i] = diag_[i] - lambda - sup_[i] * sub_[i + 1] / beta[i + 1];

        // Tr(T - lambda)^{-1} equals sum_i cell_i G(x_i, x_i) with the grid
        // measure already inside the matrix, so the relative trace is the raw
        // diagonal sum minus the cell-weighted references.
        Cplx acc = 0.0;
        auto refs = [&](double x) {
            return 1.0 / (2.0 * alam) - std::exp(-2.0 * alam * (cfg_.L - x)) / (2.0 * alam);
        };
        for (int i = 0; i < m; ++i) {
            const double x = node(i);
            Cplx gii = 1.0 / (alpha[i] + beta[i] - (diag_[i] - lambda));
            double cell = (bc_ == BoundaryKind::Robin && i == 0) ? 0.5 * h : h;
            acc += gii - cell * refs(x);
        }
        // reference strips not owned by any node (the kernel itself vanishes
        // toward both walls at second order)
        if (bc_ == BoundaryKind::Dirichlet) acc -= 0.5 * h * refs(0.0);
        acc -= 0.5 * h * refs(cfg_.L);
        return acc;
    }

    // Discrete spectrum; the Robin row is symmetrized by a diagonal
    // similarity (sub*sup > 0 throughout).
    std::vector<double> eigenvalues() const {
        const int m = size();
        Eigen::VectorXd diag(m), off(m - 1);
        for (int i = 0; i < m; ++i) diag(i) = diag_[i];
        for (int i = 0; i + 1 < m; ++i) off(i) = -std::sqrt(sub_[i + 1] * sup_[i]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
        std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m);
        return out;
    }

    // Richardson pair (h and h/2) for the resolvent trace: extrapolated value
    // plus the observed second-order error of the coarse grid.
    static std::pair<Cplx, double> richardson_resolvent(double a, Cplx lambda, OracleConfig cfg) {
        FdOracle coarse(a, cfg);
        OracleConfig f = cfg;
        f.n *= 2;
        FdOracle fine(a, f);
        Cplx vc = coarse.boundary_resolvent_trace(lambda);
        Cplx vf = fine.boundary_resolvent_trace(lambda);
        return {vf + (vf - vc) / 3.0, std::abs(vf - vc)};
    }

    // Relative boundary heat trace: eigenvalue sum minus the bulk band and the
    // far Dirichlet wall correction (+1/4 e^{-a^2 t}).
    double boundary_heat_trace(double t) const {
        double sum = 0.0;
        for (double ev : eigenvalues()) sum += std::exp(-t * ev);
        const double bulk = cfg_.L * std::exp(-a_ * a_ * t) / (2.0 * std::sqrt(M_PI * t));
        return sum - bulk + 0.25 * std::exp(-a_ * a_ * t);
    }

  private:
    int size() const { return bc_ == BoundaryKind::Robin ? cfg_.n : cfg_.n - 1; }
    double node(int i) const {
        return bc_ == BoundaryKind::Robin ? i * cfg_.h() : (i + 1) * cfg_.h();
    }

    double a_;
    OracleConfig cfg_;
    BoundaryKind bc_;
    std::vector<double> sub_, diag_, sup_;
};

}  // namespace aps
