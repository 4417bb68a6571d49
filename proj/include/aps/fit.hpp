#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <vector>

#include "aps/expansion_template.hpp"
#include "aps/rational.hpp"

namespace aps {

struct conditioning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BasisSlot {
    HalfInt exponent;
    bool has_log = false;
};

struct FitTerm {
    HalfInt exponent;
    bool has_log = false;
    double coefficient = 0.0;
    double sigma = 0.0;       // 1-sigma noise estimate from the residual
    bool zero_at_tol = false; // |coefficient| indistinguishable from 0
    Locality locality = Locality::Nonlocal;
};

struct ExpansionSeries {
    std::vector<FitTerm> terms;
    double residual = 0.0;   // relative rms residual
    double condition = 0.0;  // of the equilibrated design matrix
    double window_lo = 0.0, window_hi = 0.0;

    const FitTerm* find(HalfInt e, bool has_log) const {
        for (const auto& t : terms)
            if (t.exponent == e && t.has_log == has_log) return &t;
        return nullptr;
    }
};

// Weighted least squares on the basis {x^e, x^e log x}. Rows are weighted by
// 1/|y| (relative residuals), columns equilibrated before the SVD solve.
inline ExpansionSeries fit_expansion(const std::vector<std::pair<double, double>>& samples,
                                     const std::vector<BasisSlot>& slots,
                                     double cond_limit = 1e13) {
    const int N = static_cast<int>(samples.size());
    const int M = static_cast<int>(slots.size());
    if (N < 2 * M)
        throw conditioning_error("need at least twice as many samples as fitted coefficients");

    double ymax = 0.0;
    for (const auto& [x, y] : samples) ymax = std::max(ymax, std::abs(y));
    if (ymax == 0.0) ymax = 1.0;

    Eigen::MatrixXd A(N, M);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; ++i) {
        const double x = samples[i].first, y = samples[i].second;
        const double w = 1.0 / (std::abs(y) + 1e-3 * ymax);
        for (int j = 0; j < M; ++j) {
            double v = std::pow(x, slots[j].exponent.value());
            if (slots[j].has_log) v *= std::log(x);
            A(i, j) = v * w;
        }
        b(i) = y * w;
    }
    Eigen::VectorXd colnorm(M);
    for (int j = 0; j < M; ++j) {
        colnorm(j) = A.col(j).norm();
        if (colnorm(j) == 0.0) colnorm(j) = 1.0;
        A.col(j) /= colnorm(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double cond = sv(0) / sv(M - 1);
    if (!(cond < cond_limit))
        throw conditioning_error("fit basis ill-conditioned (condition " + std::to_string(cond) +
                                 "); adjust the window or template");
    Eigen::VectorXd chat = svd.solve(b);
    Eigen::VectorXd resid = A * chat - b;
    const double rms = resid.norm() / std::sqrt(std::max(1, N - M));

    ExpansionSeries out;
    out.condition = cond;
    out.residual = resid.norm() / std::max(b.norm(), 1e-300);
    out.window_lo = samples.front().first;
    out.window_hi = samples.back().first;
    const auto& V = svd.matrixV();
    for (int j = 0; j < M; ++j) {
        FitTerm t;
        t.exponent = slots[j].exponent;
        t.has_log = slots[j].has_log;
        t.coefficient = chat(j) / colnorm(j);
        double var = 0.0;
        for (int k = 0; k < M; ++k) var += (V(j, k) / sv(k)) * (V(j, k) / sv(k));
        t.sigma = rms * std::sqrt(var) / colnorm(j);
        out.terms.push_back(t);
    }
    return out;
}

// Mark coefficients that are indistinguishable from zero at the relative
// tolerance tau (against the named reference scale).
inline void flag_zeros(ExpansionSeries& s, double tau, double reference_scale) {
    for (auto& t : s.terms)
        t.zero_at_tol = std::abs(t.coefficient) < tau * reference_scale ||
                        std::abs(t.coefficient) < 3.0 * t.sigma;
}

// Basis built from a predicted template, truncated to the slots that matter
// inside the window (deepest exponent first beyond floor drops out).
inline std::vector<BasisSlot> basis_from_template(const ExpansionTemplate& t, int power_count,
                                                  int log_count) {
    std::vector<BasisSlot> slots;
    for (int j = 0; j < power_count; ++j)
        slots.push_back({t.power_start + HalfInt(j * t.power_step.twice), false});
    if (t.log_start) {
        for (int k = 0; k < log_count; ++k) {
            HalfInt e = *t.log_start + HalfInt(k * t.log_step.twice);
            slots.push_back({e, true});
            bool have = false;
            for (const auto& s : slots)
                if (!s.has_log && s.exponent == e) have = true;
            if (!have) slots.push_back({e, false});
        }
    }
    return slots;
}

}  // namespace aps
