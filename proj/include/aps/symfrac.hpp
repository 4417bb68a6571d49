#pragma once

#include <utility>
#include <vector>

#include "aps/normal_symbol.hpp"

namespace aps {

// Operator-level per-mode calculus. Conventions (symbols in the normal
// covariable, mode eigenvalue a, alam = (a^2-lambda)^{1/2}):
//   K      : Poisson operator, symbol 1/(alam + i xi), kernel e^{-x alam}
//   T      : trace operator,   symbol 1/(alam - i xi), kernel e^{-x alam}
//   OPT(t) : trace operator with symbol t; OPT(k!(alam-ixi)^{-k-1}) = T x^k
//   OPK(k) : Poisson operator;  OPK(k!(alam+ixi)^{-k-1}) = x^k K
//   OPG    : s.g.o.; x^k K S T x^k' has kernel x^k e^{-x alam} S e^{-y alam} y^k'.

// x_n^k K as a Poisson symbol: k!/(alam + i xi)^{k+1}.
inline NormalSymbol xn_power_on_K(int k) {
    if (k < 0) throw algebra_error("negative x_n power");
    return NormalSymbol::plus_pole(k + 1, Coeff(Rat(factorial(k))));
}

// T x_n^k as a trace symbol: k!/(alam - i xi)^{k+1}.
inline NormalSymbol T_xn_power(int k) {
    if (k < 0) throw algebra_error("negative x_n power");
    return NormalSymbol::minus_pole(k + 1, Coeff(Rat(factorial(k))));
}

// T x_n^k K = k! (2 alam)^{-k-1}.
inline Coeff compose_T_xk_K(int k) {
    if (k < 0) throw algebra_error("negative x_n power");
    return Coeff(Rat(factorial(k), Int(1) << (k + 1))) * Coeff::alam(-k - 1);
}

// Canonical singular Green term  x_n^k K S T x_n^{k'}.
struct SgoTerm {
    int k = 0;
    int kp = 0;
    Mat2<Coeff> S;

    std::string str() const {
        return "xn^" + std::to_string(k) + " K " + S.str() + " T xn^" + std::to_string(kp);
    }
};

using SgoTermList = std::vector<SgoTerm>;

// tr_n (x^k K S T x^{k'}) = (k+k')! (2 alam)^{-k-k'-1} S  (S commutes with alam).
inline Mat2<Coeff> normal_trace_term(const SgoTerm& t) {
    const Coeff w = compose_T_xk_K(t.k + t.kp);
    return w * t.S;
}

inline Mat2<Coeff> normal_trace_assembly(const SgoTermList& terms) {
    Mat2<Coeff> out;
    for (const auto& t : terms) out = out + normal_trace_term(t);
    return out;
}

// --- trace/Poisson symbol <-> x-power basis -------------------------------

// t(xi) in span{(alam-ixi)^{-q}} as sum of coefficients on T x^{q-1}.
inline std::vector<std::pair<int, Coeff>> trace_symbol_to_xpowers(const NormalSymbol& t) {
    if (!t.plus().empty() || !t.poly_is_zero())
        throw algebra_error("not a class-0 trace symbol");
    std::vector<std::pair<int, Coeff>> out;
    for (const auto& [q, c] : t.minus())
        out.emplace_back(q - 1, Coeff(Rat(1, factorial(q - 1))) * c);
    return out;
}

inline std::vector<std::pair<int, Coeff>> poisson_symbol_to_xpowers(const NormalSymbol& k) {
    if (!k.minus().empty() || !k.poly_is_zero())
        throw algebra_error("not a Poisson symbol");
    std::vector<std::pair<int, Coeff>> out;
    for (const auto& [p, c] : k.plus())
        out.emplace_back(p - 1, Coeff(Rat(1, factorial(p - 1))) * c);
    return out;
}

// --- compositions with truncated psdos -------------------------------------

// OPT(t) P_+ where P = OP(f) on the line: trace symbol h^-[t f].
inline NormalSymbol compose_trace_psdo_plus(const NormalSymbol& t, const NormalSymbol& f) {
    return (t * f).h_minus();
}

// P_+ OPK(k): Poisson symbol h^+[f k].
inline NormalSymbol compose_psdo_plus_poisson(const NormalSymbol& f, const NormalSymbol& k) {
    return (f * k).h_plus();
}

// OPT(t) OPK(k): scalar (the xi-integral of t k).
inline Coeff compose_trace_poisson(const NormalSymbol& t, const NormalSymbol& k) {
    return plus_integral(t * k);
}

// Full-line commutation of x_n through OP(f):
//   OP(f) x^k = sum_j C(k,j) x^{k-j} OP((-i d/dxi)^j f)
//   x^k OP(f) = sum_j C(k,j) OP((+i d/dxi)^j f) x^{k-j}
inline std::vector<std::pair<int, NormalSymbol>> psdo_xk_right_to_left(const NormalSymbol& f,
                                                                       int k) {
    std::vector<std::pair<int, NormalSymbol>> out;
    NormalSymbol g = f;
    for (int j = 0; j <= k; ++j) {
        out.emplace_back(k - j, Coeff(Rat(binomial(k, j))) * g);
        if (j < k) g = g.d_xi_times_minus_i();
    }
    return out;
}

inline std::vector<std::pair<int, NormalSymbol>> psdo_xk_left_to_right(const NormalSymbol& f,
                                                                       int k) {
    std::vector<std::pair<int, NormalSymbol>> out;
    NormalSymbol g = f;
    Rat sign = 1;
    for (int j = 0; j <= k; ++j) {
        out.emplace_back(k - j, Coeff(sign * binomial(k, j)) * g);
        if (j < k) { g = g.d_xi_times_minus_i(); sign = -sign; }
    }
    return out;
}

// --- leftover singular Green parts of truncated psdo products --------------
// For P = OP(f):  G^+(P) captures the (alam+ixi)-poles,
//   kernel sum_p c_p (x+y)^{p-1} e^{-(x+y)alam}/(p-1)!  ->  SgoTerm list;
// G^-(P) likewise from the (alam-ixi)-poles. Anchors: G^{\pm} of
// 1/(alam^2+xi^2) is K (1/2alam) T; of i xi/(alam^2+xi^2) it is -+ (1/2) K T.
namespace detail {
inline void gterms_from_poles(const std::map<int, Coeff>& poles, int idx, SgoTermList& out) {
    for (const auto& [p, c] : poles) {
        for (int i = 0; i < p; ++i) {
            SgoTerm t;
            t.k = i;
            t.kp = p - 1 - i;
            Coeff w = Coeff(Rat(binomial(p - 1, i), factorial(p - 1))) * c;
            t.S = Mat2<Coeff>();
            t.S.e[idx] = w;
            out.push_back(t);
        }
    }
}
}  // namespace detail

inline SgoTermList g_plus_of_psdo(const SymbolMat& f) {
    SgoTermList out;
    for (int idx = 0; idx < 4; ++idx) detail::gterms_from_poles(f.e[idx].plus(), idx, out);
    return out;
}

inline SgoTermList g_minus_of_psdo(const SymbolMat& f) {
    SgoTermList out;
    for (int idx = 0; idx < 4; ++idx) detail::gterms_from_poles(f.e[idx].minus(), idx, out);
    return out;
}

// --- the doubled product-case interior symbol -------------------------------
// Q0 = (D0 + mu)^{-1} on the full line; entries over 1/(alam^2 + xi^2).
inline SymbolMat q0_symbol() {
    const NormalSymbol q = NormalSymbol::mixed(Coeff(1), 1, 1, 0);
    const NormalSymbol ixi_q = NormalSymbol::mixed(Coeff(1), 1, 1, 1);
    SymbolMat m;
    m(0, 0) = Coeff::mu() * q;
    m(0, 1) = Coeff::a() * q - ixi_q;
    m(1, 0) = Coeff(-1) * Coeff::a() * q - ixi_q;
    m(1, 1) = Coeff::mu() * q;
    return m;
}

// G^{\pm}(Q0) = K S1^{\pm} T with S1^{\pm} = (1/2alam) [[mu, ±alam+a], [±alam-a, mu]].
inline std::pair<Mat2<Coeff>, Mat2<Coeff>> g_plusminus_of_Q0() {
    const Coeff half_inv = Coeff(Rat(1, 2)) * Coeff::alam(-1);
    const Coeff mu = Coeff::mu(), a = Coeff::a(), alam = Coeff::alam();
    Mat2<Coeff> s1p(half_inv * mu, half_inv * (alam + a), half_inv * (alam - a), half_inv * mu);
    Mat2<Coeff> s1m(half_inv * mu, half_inv * (Coeff(-1) * alam + a),
                    half_inv * (Coeff(-1) * alam - a), half_inv * mu);
    return {s1p, s1m};
}

// diag(T,T) x^k Q0_+ = sum_{l=0..k} S-_{kl} diag(T,T) x^{k-l}; returns the
// matrices indexed by residual power k-l.
inline std::vector<std::pair<int, Mat2<Coeff>>> compose_T_xk_Q0plus(int k) {
    if (k < 0) throw algebra_error("negative x_n power");
    const SymbolMat q0 = q0_symbol();
    const NormalSymbol tk = T_xn_power(k);
    // coefficient matrices per residual power
    std::map<int, Mat2<Coeff>> acc;
    for (int idx = 0; idx < 4; ++idx) {
        NormalSymbol comp = compose_trace_psdo_plus(tk, q0.e[idx]);
        for (const auto& [m, c] : trace_symbol_to_xpowers(comp)) {
            auto& slot = acc[m];
            slot.e[idx] += c;
        }
    }
    std::vector<std::pair<int, Mat2<Coeff>>> out(acc.begin(), acc.end());
    return out;
}

// Q0_+ x^k diag(K,K) = sum_l x^{k-l} diag(K,K) S+_{kl}.
inline std::vector<std::pair<int, Mat2<Coeff>>> compose_Q0plus_xk_K(int k) {
    if (k < 0) throw algebra_error("negative x_n power");
    const SymbolMat q0 = q0_symbol();
    const NormalSymbol kk = xn_power_on_K(k);
    std::map<int, Mat2<Coeff>> acc;
    for (int idx = 0; idx < 4; ++idx) {
        NormalSymbol comp = compose_psdo_plus_poisson(q0.e[idx], kk);
        for (const auto& [m, c] : poisson_symbol_to_xpowers(comp)) {
            auto& slot = acc[m];
            slot.e[idx] += c;
        }
    }
    std::vector<std::pair<int, Mat2<Coeff>>> out(acc.begin(), acc.end());
    return out;
}

inline Coeff d_lambda(const Coeff& c, int r = 1) { return c.d_lambda(r); }

}  // namespace aps
