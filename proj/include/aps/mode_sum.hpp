#pragma once

#include <functional>

#include "aps/perturbation.hpp"
#include "aps/quadrature.hpp"
#include "aps/skind.hpp"
#include "aps/spectral_model.hpp"

namespace aps {

struct ValueWithTail {
    Cplx value{0.0, 0.0};
    double tail_bound = 0.0;
};

// Flattened Coeff for fast per-mode evaluation inside large spectral sums.
class CompiledCoeff {
  public:
    CompiledCoeff() = default;
    CompiledCoeff(const Coeff& c, const std::vector<std::string>& label_names) {
        for (const auto& [m, r] : c.terms()) {
            Term t;
            t.c = to_double(r);
            t.mu = m.mu_pow;
            t.ap = m.a_pow;
            t.eps = m.eps;
            t.dm = m.dm;
            t.part = m.part;
            for (const auto& l : m.labels) {
                auto it = std::find(label_names.begin(), label_names.end(), l);
                if (it == label_names.end()) throw algebra_error("unknown label: " + l);
                t.labels.push_back(static_cast<int>(it - label_names.begin()));
            }
            terms_.push_back(std::move(t));
        }
    }

    // label_vals indexed like label_names at construction
    Cplx eval(double a, Cplx mu, const Cplx* label_vals) const {
        const Cplx D = a * a + mu * mu;
        const Cplx alam = std::sqrt(D);
        Cplx sum = 0.0;
        for (const auto& t : terms_) {
            if (t.part == Part::Ker && a != 0.0) continue;
            if (t.part == Part::Sign && a == 0.0) continue;
            Cplx v = t.c;
            if (t.mu) v *= ipow(mu, t.mu);
            if (t.ap) v *= ipow(Cplx(a, 0.0), t.ap);
            if (t.eps) v *= alam;
            if (t.dm) v *= ipow(D, -t.dm);
            if (t.part == Part::Sign && a < 0.0) v = -v;
            for (int id : t.labels) v *= label_vals[id];
            sum += v;
        }
        return sum;
    }
    bool empty() const { return terms_.empty(); }

  private:
    struct Term {
        double c;
        int mu, ap, eps, dm;
        Part part;
        std::vector<int> labels;
    };
    std::vector<Term> terms_;
};

// Sums mult * f(a) over the enumerated modes, adding Euler-Maclaurin tail
// corrections along each synthetic/circle side and reporting the leftover
// bound. Summation order is the (deterministic) ascending-mode order.
class ModeSummer {
  public:
    explicit ModeSummer(const SpectralModel& model) : model_(&model) {}

    ValueWithTail sum(const std::function<Cplx(double)>& f) const {
        ValueWithTail out;
        std::complex<long double> acc = 0.0L;
        for (const auto& m : model_->modes) {
            Cplx v = f(m.a);
            acc += std::complex<long double>(m.multiplicity * v.real(), m.multiplicity * v.imag());
        }
        out.value = Cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        // tail continuations beyond the truncation
        if (model_->kind == ModelKind::Circle) {
            const double alpha = model_->circle_alpha;
            double kmax_pos = model_->modes.back().a - alpha;
            double kmin_neg = model_->modes.front().a - alpha;
            out.tail_bound += tail_side([=](double x) { return f(x + alpha); }, kmax_pos, out);
            out.tail_bound += tail_side([=](double x) { return f(-x + alpha); }, -kmin_neg, out);
        } else if (model_->synth) {
            const SyntheticParams p = *model_->synth;
            if (p.w_plus > 0)
                out.tail_bound += tail_side(
                    [=](double x) {
                        double s = p.c_plus * std::pow(x, 1.0 / (p.n - 1));
                        return static_cast<double>(p.w_plus) * f(s + p.gamma_plus / s);
                    },
                    static_cast<double>(p.N), out);
            if (p.w_minus > 0)
                out.tail_bound += tail_side(
                    [=](double x) {
                        double s = p.c_minus * std::pow(x, 1.0 / (p.n - 1));
                        return static_cast<double>(p.w_minus) * f(-(s + p.gamma_minus / s));
                    },
                    static_cast<double>(p.N), out);
        }
        return out;
    }

  private:
    const SpectralModel* model_;

    // Euler-Maclaurin continuation of sum_{k > kmax} g(k); adds the computed
    // correction into acc.value and returns the residual bound.
    template <class G>
    double tail_side(G&& g, double kmax, ValueWithTail& acc) const {
        const double k1 = kmax + 1.0;
        Cplx integral = integrate_c(g, k1, std::numeric_limits<double>::infinity(), 1e-13);
        Cplx g1 = g(k1);
        const double h = 1e-2 * std::max(1.0, 0.02 * k1);
        Cplx gp = (g(k1 + h) - g(k1 - h)) / (2.0 * h);
        Cplx gppp =
            (g(k1 + 2 * h) - 2.0 * g(k1 + h) + 2.0 * g(k1 - h) - g(k1 - 2 * h)) / (2 * h * h * h);
        acc.value += integral + 0.5 * g1 - gp / 12.0 + gppp / 720.0;
        // bound the remainder by the size of the last correction retained
        return std::abs(gppp) / 720.0 + 1e-13 * std::abs(integral);
    }
};

// Boundary (relative) resolvent trace
//   Tr F d_lambda^r [ (Delta_B - lambda)^{-1} - interior part ]
// as a spectral sum of the per-mode normal traces, including the Neumann
// series of a commuting perturbation through the requested depth.
class BoundaryTraceEvaluator {
  public:
    BoundaryTraceEvaluator(const SpectralModel& model, const PerturbationSpec* spec,
                           std::string F_label, int r, int neumann_depth = 2)
        : model_(&model), summer_(model), f_label_(std::move(F_label)), r_(r) {
        for (const auto& [label, decl] : model.tangential) label_names_.push_back(label);
        if (!f_label_.empty() &&
            std::find(label_names_.begin(), label_names_.end(), f_label_) == label_names_.end())
            throw model_error("F label not declared on the model: " + f_label_);

        int f_order = f_label_.empty() ? 0 : model.tangential.at(f_label_).order;
        int pert_order = 0;
        if (spec) {
            for (const auto& t : spec->terms) {
                auto it = model.tangential.find(t.label);
                if (it == model.tangential.end())
                    throw model_error("perturbation label not declared: " + t.label);
                if (!it->second.commutes)
                    throw model_error("non-commuting perturbation label: " + t.label);
                pert_order = std::max(pert_order, it->second.order);
            }
        }
        const int depth = spec ? neumann_depth : 0;
        // decay exponent of the per-mode summand; the spectral density grows
        // like a^{n-2}, so we need it below -(n-1)
        const int exponent = f_order + depth * pert_order - 2 - 2 * r_;
        if (!(exponent < -(model.dim_n - 1)))
            throw model_error(
                "mode sum not absolutely convergent (summand must be integrable in xi'): "
                "increase r");

        ResolventExpansion rx = ResolventExpansion::unperturbed();
        exprs_.push_back(compile(rx.sgo));
        Rat sign(-1);
        for (int m = 1; m <= depth; ++m) {
            rx = perturbation_step(rx, *spec);
            Coeff tr = Coeff::mu(-1) * normal_trace_assembly(rx.sgo)(0, 0);
            exprs_.push_back(CompiledCoeff(Coeff(sign) * tr.d_lambda(r_), label_names_));
            sign = -sign;
        }
    }

    ValueWithTail eval(Cplx lambda) const {
        check_off_cut(lambda);
        const Cplx mu = std::sqrt(-lambda);
        const int fid = f_label_.empty()
                            ? -1
                            : static_cast<int>(std::find(label_names_.begin(), label_names_.end(),
                                                         f_label_) -
                                               label_names_.begin());
        auto per_mode = [&](double a) {
            std::vector<Cplx> vals(label_names_.size());
            for (size_t i = 0; i < label_names_.size(); ++i)
                vals[i] = model_->tangential.at(label_names_[i]).value(a);
            Cplx v = 0.0;
            for (const auto& e : exprs_) v += e.eval(a, mu, vals.data());
            if (fid >= 0) v *= vals[fid];
            return v;
        };
        return summer_.sum(per_mode);
    }

  private:
    CompiledCoeff compile(const SgoTermList& sgo) {
        Coeff tr = Coeff::mu(-1) * normal_trace_assembly(sgo)(0, 0);
        return CompiledCoeff(tr.d_lambda(r_), label_names_);
    }

    const SpectralModel* model_;
    ModeSummer summer_;
    std::string f_label_;
    int r_;
    std::vector<std::string> label_names_;
    std::vector<CompiledCoeff> exprs_;
};

// Heat trace of A^2 over the cross-section: sum mult F(a) e^{-t a^2} with the
// same tail treatment (used by the heat-coefficient fits).
inline ValueWithTail heat_trace_A2(const SpectralModel& model, double t,
                                   const std::string& F_label = {}) {
    ModeSummer summer(model);
    const TangentialDecl* F = nullptr;
    if (!F_label.empty()) F = &model.tangential.at(F_label);
    return summer.sum([&](double a) {
        Cplx v = std::exp(-t * a * a);
        if (F) v *= F->value(a);
        return v;
    });
}

}  // namespace aps
