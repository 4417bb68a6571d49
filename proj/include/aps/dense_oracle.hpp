#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aps/perturbation.hpp"

namespace aps {

// Dense-grid reference for the perturbed mode resolvent: the half-line
// resolvent and interior parametrix are sampled through their exact kernels
// and composed by trapezoid quadrature, so the Neumann-series terms of the
// symbolic engine can be checked against an independent composition route.
struct DenseOracleConfig {
    double L = 30.0;    // interval length
    int n = 1200;       // grid points on [0, L]
    double Lneg = 30.0; // extension to the left for full-line compositions
};

namespace detail {

inline Mat2<Cplx> q0_kernel(double x, double y, double a, Cplx mu, Cplx alam) {
    const double s = x > y ? 1.0 : (x < y ? -1.0 : 0.0);
    const Cplx base = std::exp(-alam * std::abs(x - y)) / (2.0 * alam);
    return Mat2<Cplx>(base * mu, base * (a + alam * s), base * (-a + alam * s), base * mu);
}

}  // namespace detail

class DenseModeOracle {
  public:
    DenseModeOracle(double a, Cplx lambda, const PerturbationSpec& spec, const ModeCtx& ctx,
                    DenseOracleConfig cfg = {})
        : a_(a), cfg_(cfg) {
        check_off_cut(lambda);
        mu_ = std::sqrt(-lambda);
        alam_ = std::sqrt(a * a - lambda);
        // grid over [-Lneg, L]; [0, L] occupies indices i0_..n_-1
        h_ = cfg.L / (cfg.n - 1);
        int nneg = static_cast<int>(cfg.Lneg / h_);
        i0_ = nneg;
        n_ = nneg + cfg.n;
        xs_.resize(n_);
        for (int i = 0; i < n_; ++i) xs_[i] = (i - nneg) * h_;

        const ModeMatrices mm = mode_matrices();
        ModeCtx c = ctx;
        c.a = a;
        c.lambda = lambda;
        Mat2<Cplx> S0v = mm.S0.map([&](const Coeff& e) { return e.eval(c); });

        // P(z) = sum_k z^k p_k [[0,-1],[1,0]]
        pfun_ = [spec, c](double z) {
            Cplx p = 0.0;
            for (const auto& t : spec.terms) {
                auto it = c.tangential.find(t.label);
                if (it == c.tangential.end()) throw algebra_error("oracle: missing label");
                p += std::pow(z, t.k) * it->second;
            }
            return p;
        };

        // dense 2N x 2N matrices with trapezoid weights folded into columns
        auto weight = [&](int i) { return (i == 0 || i == n_ - 1) ? 0.5 * h_ : h_; };
        Q_.resize(2 * n_, 2 * n_);
        R_.resize(2 * n_, 2 * n_);
        R_.setZero();
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                Mat2<Cplx> q = detail::q0_kernel(xs_[i], xs_[j], a, mu_, alam_);
                const double w = weight(j);
                Q_(i, j) = q(0, 0) * w;
                Q_(i, n_ + j) = q(0, 1) * w;
                Q_(n_ + i, j) = q(1, 0) * w;
                Q_(n_ + i, n_ + j) = q(1, 1) * w;
                if (xs_[i] >= 0.0 && xs_[j] >= 0.0) {
                    Cplx g = std::exp(-alam_ * (xs_[i] + xs_[j]));
                    R_(i, j) = (q(0, 0) + g * S0v(0, 0)) * w;
                    R_(i, n_ + j) = (q(0, 1) + g * S0v(0, 1)) * w;
                    R_(n_ + i, j) = (q(1, 0) + g * S0v(1, 0)) * w;
                    R_(n_ + i, n_ + j) = (q(1, 1) + g * S0v(1, 1)) * w;
                }
            }
        }
        P_.resize(2 * n_);
        for (int i = 0; i < n_; ++i) {
            Cplx p = pfun_(xs_[i]);
            P_(i) = -p;      // row 1 gets -p u2
            P_(n_ + i) = p;  // row 2 gets  p u1
        }
    }

    // traces over [0,L] of the s.g.o. parts of R0 (P R0)^m for m = 1, 2:
    //   tr_{[0,L]} [ R0 (P R0)^m - (Q0 (P Q0)^m)_+ ]
    std::pair<Cplx, Cplx> sgo_traces() const {
        Eigen::MatrixXcd PR = applyP(R_), PQ = applyP(Q_);
        Eigen::MatrixXcd PR2 = PR * PR, PQ2 = PQ * PQ;
        Cplx tr1 = 0.0, tr2 = 0.0;
        auto diag_part = [&](const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right, int i) {
            return left.row(i).transpose().cwiseProduct(right.col(i)).sum() +
                   left.row(n_ + i).transpose().cwiseProduct(right.col(n_ + i)).sum();
        };
        for (int i = i0_; i < n_; ++i) {
            double w = (i == i0_ || i == n_ - 1) ? 0.5 : 1.0;
            // quadrature weight of the diagonal column divided back out
            double cw = (i == 0 || i == n_ - 1) ? 0.5 * h_ : h_;
            tr1 += w * h_ * (diag_part(R_, PR, i) - diag_part(Q_, PQ, i)) / cw;
            tr2 += w * h_ * (diag_part(R_, PR2, i) - diag_part(Q_, PQ2, i)) / cw;
        }
        return {tr1, tr2};
    }

    Cplx sgo_trace(int m) const {
        auto [t1, t2] = sgo_traces();
        if (m == 1) return t1;
        if (m == 2) return t2;
        throw algebra_error("dense oracle supports m = 1, 2");
    }

  private:
    Eigen::MatrixXcd applyP(const Eigen::MatrixXcd& M) const {
        // block structure of P: [[0, -p], [p, 0]] acting pointwise
        Eigen::MatrixXcd out(2 * n_, 2 * n_);
        out.topRows(n_) = P_.head(n_).asDiagonal() * M.bottomRows(n_);
        out.bottomRows(n_) = P_.tail(n_).asDiagonal() * M.topRows(n_);
        return out;
    }

    double a_;
    DenseOracleConfig cfg_;
    Cplx mu_, alam_;
    double h_;
    int i0_ = 0, n_ = 0;
    std::vector<double> xs_;
    std::function<Cplx(double)> pfun_;
    Eigen::MatrixXcd Q_, R_;
    Eigen::VectorXcd P_;
};

}  // namespace aps
