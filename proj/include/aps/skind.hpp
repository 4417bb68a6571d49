#pragma once

#include <functional>
#include <vector>

#include "aps/perturbation.hpp"

namespace aps {

// Canonical boundary-symbol kinds:
//   A: (-lambda)^{l/2} L_m alam^{-j} (A/|A'|)
//   B: (-lambda)^{l/2} L_m alam^{-j}
//   C: (-lambda)^{l/2} L_m Pi0        (alam reduced away on the kernel)
// with L_m = coeff * a^{a_pow} * labels, a commuting operator of order
// a_pow + sum of label orders.
struct SKindTerm {
    enum class Type { A, B, C };
    Type type = Type::B;
    int l = 0;      // power of (-lambda)^{1/2}
    int j = 0;      // power of alam^{-1} (>= 0)
    int a_pow = 0;  // explicit power of a inside L_m
    Labels labels;
    Rat coeff;

    int order(const std::function<int(const std::string&)>& label_order) const {
        int m = a_pow;
        for (const auto& l2 : labels) m += label_order(l2);
        return m;
    }

    Coeff to_coeff() const {
        Part p = type == Type::A ? Part::Sign : (type == Type::C ? Part::Ker : Part::Id);
        return Coeff::monomial(l, a_pow, -j, p, labels, coeff);
    }

    std::string str() const {
        const char* t = type == Type::A ? "a" : (type == Type::B ? "b" : "c");
        std::string s = "(" + std::string(t) + ") (" + rat_str(coeff) + ") l=" +
                        std::to_string(l) + " j=" + std::to_string(j) +
                        " a^" + std::to_string(a_pow);
        for (const auto& lb : labels) s += " {" + lb + "}";
        return s;
    }
};

// Decompose a scalar coefficient into the canonical kinds. Positive alam
// powers are eliminated via alam^2 = a^2 - lambda; kernel terms come out
// alam-free.
inline std::vector<SKindTerm> canonicalize_skinds(const Coeff& c) {
    std::vector<SKindTerm> out;
    for (const auto& [m, r] : c.terms()) {
        int alam_pow = m.eps - 2 * m.dm;
        if (alam_pow > 0) {
            // alam^{+1} = (a^2 + mu^2) alam^{-1}: emit the two negative-power
            // kinds directly (the Coeff normal form would fold them back).
            SKindTerm t1, t2;
            t1.coeff = t2.coeff = r;
            t1.l = m.mu_pow;
            t1.j = 1;
            t1.a_pow = m.a_pow + 2;
            t2.l = m.mu_pow + 2;
            t2.j = 1;
            t2.a_pow = m.a_pow;
            t1.labels = t2.labels = m.labels;
            auto ty = m.part == Part::Sign ? SKindTerm::Type::A : SKindTerm::Type::B;
            t1.type = t2.type = ty;
            out.push_back(t1);
            out.push_back(t2);
            continue;
        }
        SKindTerm t;
        t.coeff = r;
        t.l = m.mu_pow;
        t.j = -alam_pow;
        t.a_pow = m.a_pow;
        t.labels = m.labels;
        switch (m.part) {
            case Part::Id: t.type = SKindTerm::Type::B; break;
            case Part::Sign: t.type = SKindTerm::Type::A; break;
            case Part::Ker: t.type = SKindTerm::Type::C; break;
        }
        out.push_back(t);
    }
    return out;
}

// Canonical decomposition of the boundary term of the resolvent trace for a
// term list: mu^{-1} [tr_n sum](1,1), optionally lambda-differentiated.
inline std::vector<SKindTerm> canonicalize_skinds(const SgoTermList& terms, int r = 0) {
    Mat2<Coeff> trn = normal_trace_assembly(terms);
    Coeff block = Coeff::mu(-1) * trn(0, 0);
    return canonicalize_skinds(block.d_lambda(r));
}

inline Coeff skinds_to_coeff(const std::vector<SKindTerm>& terms) {
    Coeff out;
    for (const auto& t : terms) out += t.to_coeff();
    return out;
}

}  // namespace aps
