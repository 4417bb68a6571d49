#pragma once

#include <optional>
#include <vector>

#include "aps/grade.hpp"

namespace aps {

enum class Locality { Local, Nonlocal, Invariant, LocallyPerturbed };

inline const char* locality_name(Locality l) {
    switch (l) {
        case Locality::Local: return "local";
        case Locality::Nonlocal: return "nonlocal";
        case Locality::Invariant: return "invariant";
        case Locality::LocallyPerturbed: return "locally_perturbed";
    }
    return "?";
}

// Predicted shape of a trace expansion in (-lambda):
//   sum_j c_j (-lambda)^{power_start + j*power_step}
// + sum_k (c'_k log(-lambda) + c''_k) (-lambda)^{log_start + k*log_step}.
// Exponents are halves; locality tags are indexed like the series.
struct ExpansionTemplate {
    HalfInt power_start{0};
    HalfInt power_step{-1};
    std::vector<Locality> power_locality;   // per j, as far as tabulated
    std::optional<HalfInt> log_start;        // absent: no logarithms
    HalfInt log_step{-1};
    std::vector<Locality> log_locality;      // tag of c'_k
    std::vector<Locality> nonlog_locality;   // tag of c''_k
    std::optional<int> k0;                   // first index with possible logs
    std::vector<int> zero_indices;           // parity-forced zero power coefficients
    int depth = 8;                           // tabulated indices

    std::vector<HalfInt> power_exponents() const {
        std::vector<HalfInt> out;
        for (int j = 0; j < depth; ++j) out.push_back(power_start + HalfInt(j * power_step.twice));
        return out;
    }
    std::vector<HalfInt> log_exponents() const {
        std::vector<HalfInt> out;
        if (!log_start) return out;
        for (int k = 0; k < depth; ++k) out.push_back(*log_start + HalfInt(k * log_step.twice));
        return out;
    }
};

// Trace-expansion shape for one operator of the calculus; `g` is the triple
// entering the trace statement (for a singular Green operator that is the
// symbol-kernel s lifted by one: see sgo_trace_params). The boundary kinds
// trace over the (n-1)-dimensional cross-section, interior ones over the
// n-manifold.
inline ExpansionTemplate predict_trace_shape(const GradeClass& g, int n) {
    if (g.kind == OpKind::Trace0 || g.kind == OpKind::Poisson)
        throw grade_error("trace shapes are defined for interior/boundary psdos and s.g.o.s");
    const int dim = (g.kind == OpKind::PsdoInterior) ? n : n - 1;
    ExpansionTemplate t;
    t.power_start = HalfInt(g.m + g.d + g.s + dim);  // mu exponent /2 in (-lambda)
    t.power_step = HalfInt(-1);
    t.power_locality.assign(t.depth, Locality::Local);
    if (!g.strongly_polyhomogeneous) {
        t.log_start = HalfInt(g.d + g.s);
        t.log_step = HalfInt(-1);
        t.log_locality.assign(t.depth, Locality::Local);
        t.nonlog_locality.assign(t.depth, Locality::Nonlocal);
    }
    return t;
}

// Shape of Tr F R^r under a perturbation of D by x_n^l P (P first-order
// tangential), F of order m'. The k-th slot carries the power
// (-lambda)^{(m'-k)/2 - r} (m'+1 for the eta variant), k >= -n; log and
// nonlocal slots exist from k = 0 (k = m' for tangential F). Perturbation
// flags: log coefficients with k < k0 are invariant, power coefficients with
// k < k0 are modified by local terms only; k0 = l+1, or m'+l+1 for
// tangential F. Power coefficients with k <= l-n vanish for k-m'+n odd
// (even in the eta variant).
inline ExpansionTemplate predict_perturbation_shape(int l, int mprime, bool tangential, int r,
                                                    int n, bool eta_variant = false) {
    const int mhat = eta_variant ? mprime + 1 : mprime;
    if (2 * r <= n + mhat)
        throw grade_error("trace-class requires r > (n + m')/2 for the resolvent power");
    ExpansionTemplate t;
    t.depth = std::max(t.depth, l + n + 6);
    t.power_start = HalfInt(mhat + n - 2 * r);  // k = -n slot
    t.power_step = HalfInt(-1);
    t.k0 = (tangential ? mprime : 0) + l + 1;
    const int k_onset = tangential ? mprime : 0;  // first slot with log/nonlocal parts
    t.log_start = HalfInt(mhat - k_onset - 2 * r);
    t.log_step = HalfInt(-1);
    t.power_locality.clear();
    t.log_locality.clear();
    t.nonlog_locality.clear();
    for (int idx = 0; idx < t.depth; ++idx) {
        int k = -n + idx;
        t.power_locality.push_back(k < *t.k0 ? Locality::LocallyPerturbed : Locality::Nonlocal);
        bool parity = eta_variant ? ((k - mprime + n) % 2 == 0) : ((k - mprime + n) % 2 != 0);
        if (parity && k <= l - n) t.zero_indices.push_back(k);
    }
    for (int idx = 0; idx < t.depth; ++idx) {
        int k = k_onset + idx;
        t.log_locality.push_back(k < *t.k0 ? Locality::Invariant : Locality::Local);
        t.nonlog_locality.push_back(k < *t.k0 ? Locality::LocallyPerturbed : Locality::Nonlocal);
    }
    return t;
}

}  // namespace aps
