#pragma once

#include <string>
#include <vector>

#include "aps/mode_block.hpp"
#include "aps/symfrac.hpp"

namespace aps {

// Commuting tangential perturbation P = sum_k x_n^k P_k with
// P_k = [[0, -p_k], [p_k, 0]] acting per mode through the labelled scalar p_k.
struct PerturbationTerm {
    int k = 0;
    std::string label;
    int order = 0;  // declared tangential order (<= 1); drives growth checks
};

struct PerturbationSpec {
    std::vector<PerturbationTerm> terms;

    int depth() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, t.k);
        return d;
    }
    int max_order() const {
        int m = 0;
        for (const auto& t : terms) m = std::max(m, t.order);
        return m;
    }
};

inline Mat2<Coeff> perturbation_matrix(const PerturbationTerm& t) {
    const Coeff p = Coeff::label(t.label);
    return Mat2<Coeff>(Coeff(0), Coeff(0) - p, p, Coeff(0));
}

// Full-line interior operator sum_j x^j OP(F_j) (x powers kept on the left).
struct FullLineOp {
    std::map<int, SymbolMat> parts;

    void add(int j, const SymbolMat& m) {
        auto& slot = parts[j];
        slot = slot + m;
    }
    bool empty() const { return parts.empty(); }
};

// One Neumann factor of the doubled resolvent: (psdo)_+ + sgo.
struct ResolventExpansion {
    FullLineOp psdo;
    SgoTermList sgo;

    static ResolventExpansion unperturbed() {
        ResolventExpansion r;
        r.psdo.add(0, q0_symbol());
        ModeMatrices m = mode_matrices();
        r.sgo.push_back(SgoTerm{0, 0, m.S0});
        return r;
    }
};

namespace detail {

// Collect x^m K C (m, C) pairs from h^+[F kappa_k] entrywise.
inline void accumulate_psdo_times_poisson(const SymbolMat& F, int k,
                                          std::map<int, Mat2<Coeff>>& out) {
    const NormalSymbol kk = xn_power_on_K(k);
    for (int idx = 0; idx < 4; ++idx) {
        NormalSymbol comp = compose_psdo_plus_poisson(F.e[idx], kk);
        for (const auto& [m, c] : poisson_symbol_to_xpowers(comp)) out[m].e[idx] += c;
    }
}

// Collect T x^m (m, C) pairs from h^-[tau_b F] entrywise.
inline void accumulate_trace_times_psdo(int b, const SymbolMat& F,
                                        std::map<int, Mat2<Coeff>>& out) {
    const NormalSymbol tb = T_xn_power(b);
    for (int idx = 0; idx < 4; ++idx) {
        NormalSymbol comp = compose_trace_psdo_plus(tb, F.e[idx]);
        for (const auto& [m, c] : trace_symbol_to_xpowers(comp)) out[m].e[idx] += c;
    }
}

inline SymbolMat scale_right(const SymbolMat& f, const Mat2<Coeff>& right) {
    SymbolMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            NormalSymbol acc;
            for (int l = 0; l < 2; ++l) acc += right(l, j) * f(i, l);
            out(i, j) = acc;
        }
    return out;
}

inline SymbolMat mat_mul(const SymbolMat& f, const SymbolMat& g) {
    SymbolMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            NormalSymbol acc;
            for (int l = 0; l < 2; ++l) acc += f(i, l) * g(l, j);
            out(i, j) = acc;
        }
    return out;
}

inline SymbolMat coeff_mat_to_symbols(const Mat2<Coeff>& m) {
    SymbolMat out;
    for (int idx = 0; idx < 4; ++idx)
        if (!m.e[idx].is_zero()) out.e[idx] = NormalSymbol::constant(m.e[idx]);
    return out;
}

}  // namespace detail

// Compose R with x^k P_k (Q0_+ + G0) and accumulate; one perturbation order.
// The Neumann sign (-1)^m is left to the caller.
inline ResolventExpansion perturbation_step(const ResolventExpansion& R,
                                            const PerturbationSpec& spec) {
    const SymbolMat q0 = q0_symbol();
    const ModeMatrices mm = mode_matrices();
    const SgoTermList gminus_q0 = g_minus_of_psdo(q0);

    ResolventExpansion out;

    for (const auto& pt : spec.terms) {
        const Mat2<Coeff> Pk = perturbation_matrix(pt);
        const int k = pt.k;

        // ---- psdo part of R against both halves -------------------------
        for (const auto& [j, F] : R.psdo.parts) {
            // normalize OP(F) x^k to sum_m x^m OP(G_m); the left x^j rides along
            std::map<int, SymbolMat> moved;
            for (int idx = 0; idx < 4; ++idx)
                for (const auto& [m, g] : psdo_xk_right_to_left(F.e[idx], k))
                    moved[m].e[idx] += g;

            for (const auto& [m, G] : moved) {
                SymbolMat GP = detail::scale_right(G, Pk);
                // (a) full-line product into the new psdo part: x^{j+m} OP(G P_k Q0)
                out.psdo.add(j + m, detail::mat_mul(GP, q0));

                // (b) truncation leftover: - G^+(x^{j+m} OP(G P_k)) G^-(Q0)
                SgoTermList gplus = g_plus_of_psdo(GP);
                for (auto& t : gplus) t.k += j + m;
                for (const auto& tl : gplus) {
                    for (const auto& tr : gminus_q0) {
                        Coeff w = compose_T_xk_K(tl.kp + tr.k);
                        out.sgo.push_back(SgoTerm{tl.k, tr.kp, Coeff(-1) * (tl.S * (w * tr.S))});
                    }
                }
            }

            // (c) psdo against the singular Green half: x^j [OP(F)_+ x^k K] P_k S0 T
            std::map<int, Mat2<Coeff>> pk_basis;
            detail::accumulate_psdo_times_poisson(F, k, pk_basis);
            for (const auto& [m, C] : pk_basis)
                out.sgo.push_back(SgoTerm{j + m, 0, (C * Pk) * mm.S0});
        }

        // ---- sgo part of R against both halves --------------------------
        const SymbolMat PQ = detail::mat_mul(detail::coeff_mat_to_symbols(Pk), q0);
        for (const auto& t : R.sgo) {
            // (d) x^a K S [T x^{b+k} (P_k Q0)_+]
            std::map<int, Mat2<Coeff>> tb_basis;
            detail::accumulate_trace_times_psdo(t.kp + k, PQ, tb_basis);
            for (const auto& [m, C] : tb_basis) out.sgo.push_back(SgoTerm{t.k, m, t.S * C});

            // (e) x^a K [S (T x^{b+k} K) P_k S0] T
            Coeff w = compose_T_xk_K(t.kp + k);
            out.sgo.push_back(SgoTerm{t.k, 0, ((w * t.S) * Pk) * mm.S0});
        }
    }

    // merge sgo terms with equal powers
    std::map<std::pair<int, int>, Mat2<Coeff>> merged;
    for (const auto& t : out.sgo) {
        auto& slot = merged[{t.k, t.kp}];
        slot = slot + t.S;
    }
    out.sgo.clear();
    for (const auto& [kk, S] : merged) {
        bool zero = true;
        for (const auto& e : S.e)
            if (!e.is_zero()) zero = false;
        if (!zero) out.sgo.push_back(SgoTerm{kk.first, kk.second, S});
    }
    return out;
}

// Spec-level convenience: one step applied to a term list whose interior
// companion is the unperturbed Q0 (valid when starting from G0).
inline SgoTermList perturbation_step(const SgoTermList& terms, const PerturbationSpec& spec) {
    ResolventExpansion r;
    r.psdo.add(0, q0_symbol());
    r.sgo = terms;
    return perturbation_step(r, spec).sgo;
}

}  // namespace aps
