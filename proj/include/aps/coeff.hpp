#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aps/rational.hpp"

namespace aps {

struct algebra_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectral-projection content of a monomial. The commutative algebra generated
// by {Pi>=, Pi0} has the basis {Id, Sign, Ker} with
//   Sign = A/|A'|, Ker = Pi0,  Sign*Sign = Id - Ker, Sign*Ker = 0, Ker*Ker = Ker.
enum class Part : unsigned char { Id = 0, Sign = 1, Ker = 2 };

inline const char* part_name(Part p) {
    switch (p) {
        case Part::Id: return "";
        case Part::Sign: return "sign";
        case Part::Ker: return "pi0";
    }
    return "";
}

using Labels = std::vector<std::string>;  // sorted multiset of tangential-operator labels

// Monomial mu^mu_pow * a^a_pow * alam^eps * D^-dm * Part * labels, where
// D = a^2 + mu^2 = alam^2 and eps in {0,1}. Every alam power is reduced to
// this shape; normalize() cancels common D factors groupwise so the
// representation is canonical (D is irreducible over Q[mu, a]).
struct Mono {
    int mu_pow = 0;
    int a_pow = 0;
    int eps = 0;  // alam exponent mod 2
    int dm = 0;   // power of 1/D, >= 0 after normalization
    Part part = Part::Id;
    Labels labels;

    int alam_pow() const { return eps - 2 * dm; }

    friend bool operator<(const Mono& x, const Mono& y) {
        if (x.part != y.part) return x.part < y.part;
        if (x.labels != y.labels) return x.labels < y.labels;
        if (x.eps != y.eps) return x.eps < y.eps;
        if (x.dm != y.dm) return x.dm < y.dm;
        if (x.mu_pow != y.mu_pow) return x.mu_pow < y.mu_pow;
        return x.a_pow < y.a_pow;
    }
    friend bool operator==(const Mono& x, const Mono& y) {
        return x.mu_pow == y.mu_pow && x.a_pow == y.a_pow && x.eps == y.eps && x.dm == y.dm &&
               x.part == y.part && x.labels == y.labels;
    }
};

// Per-mode evaluation context. `tangential` maps labels to the per-mode scalar
// action of the named commuting operator.
struct ModeCtx {
    double a = 0.0;
    Cplx lambda{-1.0, 0.0};
    std::map<std::string, Cplx> tangential;

    Cplx mu() const { return std::sqrt(-lambda); }          // principal, Re > 0 off the cut
    Cplx alam() const { return std::sqrt(a * a - lambda); }  // principal, Re > 0
    int sign() const { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
    bool kernel() const { return a == 0.0; }
};

inline void check_off_cut(const Cplx& lambda) {
    if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
        throw algebra_error("lambda on the cut [0,infinity)");
}

namespace poly {
// Laurent polynomial in mu (exponent in Z) and a (exponent in N).
using P2 = std::map<std::pair<int, int>, Rat>;

inline void add(P2& p, int mp, int ap, const Rat& c) {
    if (c == 0) return;
    auto key = std::make_pair(mp, ap);
    auto it = p.find(key);
    if (it == p.end()) p[key] = c;
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// Division with remainder by D = a^2 + mu^2 (long division in a): returns
// (quotient, remainder) with deg_a(remainder) <= 1. That makes the D-adic
// expansion of any fraction unique.
inline std::pair<P2, P2> divmod_D(const P2& p) {
    P2 rem = p, quot;
    while (true) {
        auto it = std::max_element(rem.begin(), rem.end(), [](const auto& x, const auto& y) {
            return x.first.second != y.first.second ? x.first.second < y.first.second
                                                    : x.first.first < y.first.first;
        });
        if (it == rem.end() || it->first.second < 2) break;
        int mp = it->first.first, ap = it->first.second;
        Rat c = it->second;
        add(quot, mp, ap - 2, c);
        add(rem, mp, ap, -c);
        add(rem, mp + 2, ap - 2, -c);
    }
    return {quot, rem};
}
}  // namespace poly

// Exact scalar coefficient: finite rational combination of canonical monomials.
class Coeff {
  public:
    Coeff() = default;
    Coeff(const Rat& r) {
        if (r != 0) terms_[Mono{}] = r;
    }
    Coeff(long long n) : Coeff(Rat(n)) {}

    static Coeff monomial(int mu_pow, int a_pow, int alam_pow, Part part = Part::Id,
                          Labels labels = {}, Rat c = Rat(1)) {
        Coeff out;
        std::sort(labels.begin(), labels.end());
        Mono m;
        m.mu_pow = mu_pow;
        m.a_pow = a_pow;
        m.part = part;
        m.labels = std::move(labels);
        // alam^r = alam^{r mod 2} * D^{(r - r mod 2)/2}; negative D powers are
        // denominators, positive ones expand in add_term.
        int eps = ((alam_pow % 2) + 2) % 2;
        m.eps = eps;
        m.dm = -(alam_pow - eps) / 2;
        out.add_term(m, c);
        out.normalize();
        return out;
    }
    static Coeff mu(int p = 1) { return monomial(p, 0, 0); }
    static Coeff a(int p = 1) { return monomial(0, p, 0); }
    static Coeff alam(int p = 1) { return monomial(0, 0, p); }
    static Coeff D() { return a(2) + mu(2); }
    static Coeff sign_part() { return monomial(0, 0, 0, Part::Sign); }
    static Coeff kernel_part() { return monomial(0, 0, 0, Part::Ker); }
    static Coeff label(const std::string& name) { return monomial(0, 0, 0, Part::Id, {name}); }
    // Projections per Pi>= = 1/2 A/|A'| + 1/2 + 1/2 Pi0 and complements.
    static Coeff proj_geq() {
        return Coeff(Rat(1, 2)) + Coeff(Rat(1, 2)) * sign_part() + Coeff(Rat(1, 2)) * kernel_part();
    }
    static Coeff proj_less() { return Coeff(1) - proj_geq(); }
    static Coeff proj_greater() { return proj_geq() - kernel_part(); }
    static Coeff proj_kernel() { return kernel_part(); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    Coeff& operator+=(const Coeff& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        normalize();
        return *this;
    }
    Coeff& operator-=(const Coeff& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        normalize();
        return *this;
    }
    friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
    friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
    friend Coeff operator-(const Coeff& x) { return Coeff(0) - x; }

    friend Coeff operator*(const Coeff& x, const Coeff& y) {
        Coeff out;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) out.mul_add(mx, my, cx * cy);
        out.normalize();
        return out;
    }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
    friend Coeff operator*(const Rat& r, const Coeff& x) { return Coeff(r) * x; }
    friend Coeff operator*(const Coeff& x, const Rat& r) { return Coeff(r) * x; }

    friend bool operator==(const Coeff& x, const Coeff& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Coeff& x, const Coeff& y) { return !(x == y); }

    // d/dlambda under mu^2 = -lambda, alam^2 = a^2 - lambda = D:
    //   d mu^p = -(p/2) mu^{p-2},  d alam = -1/(2 alam) = -alam/(2D), d D = -1.
    Coeff d_lambda() const {
        Coeff out;
        for (const auto& [m, c] : terms_) {
            if (m.mu_pow != 0) {
                Mono d = m;
                d.mu_pow -= 2;
                out.add_term(d, c * Rat(-m.mu_pow, 2));
            }
            if (m.eps != 0) {
                Mono d = m;
                d.dm += 1;
                out.add_term(d, c * Rat(-1, 2));
            }
            if (m.dm != 0) {
                Mono d = m;
                d.dm += 1;
                out.add_term(d, c * Rat(m.dm));
            }
        }
        out.normalize();
        return out;
    }
    Coeff d_lambda(int r) const {
        Coeff out = *this;
        for (int i = 0; i < r; ++i) out = out.d_lambda();
        return out;
    }

    // Substitute the projection parts for a fixed sign case of the eigenvalue:
    // sgn = +1/-1 resolves Sign -> +-1, Ker -> 0; sgn = 0 is the kernel mode
    // (Sign -> 0, Ker -> 1, a-powers vanish, alam -> mu, D -> mu^2).
    Coeff resolve_sign_case(int sgn) const {
        Coeff out;
        for (const auto& [m, c] : terms_) {
            Mono r = m;
            r.part = Part::Id;
            Rat w = c;
            switch (m.part) {
                case Part::Id: break;
                case Part::Sign:
                    if (sgn == 0) continue;
                    if (sgn < 0) w = -w;
                    break;
                case Part::Ker:
                    if (sgn != 0) continue;
                    break;
            }
            if (sgn == 0) {
                if (m.a_pow > 0) continue;
                r.mu_pow += r.eps - 2 * r.dm;
                r.eps = 0;
                r.dm = 0;
            }
            out.add_term(r, w);
        }
        out.normalize();
        return out;
    }

    Cplx eval(const ModeCtx& ctx) const {
        check_off_cut(ctx.lambda);
        using CL = std::complex<long double>;
        const CL lam((long double)ctx.lambda.real(), (long double)ctx.lambda.imag());
        const CL am((long double)ctx.a, 0.0L);
        const CL mu = std::sqrt(-lam);
        const CL Dv = am * am - lam;
        const CL alam = std::sqrt(Dv);
        CL sum = 0.0L;
        for (const auto& [m, c] : terms_) {
            CL v = CL((long double)to_double(c), 0.0L);
            v *= cpow(mu, m.mu_pow);
            v *= cpow(am, m.a_pow);
            if (m.eps) v *= alam;
            v *= cpow(Dv, -m.dm);
            switch (m.part) {
                case Part::Id: break;
                case Part::Sign: v *= (long double)ctx.sign(); break;
                case Part::Ker: v *= ctx.kernel() ? 1.0L : 0.0L; break;
            }
            for (const auto& l : m.labels) {
                auto it = ctx.tangential.find(l);
                if (it == ctx.tangential.end())
                    throw algebra_error("unresolved tangential label: " + l);
                v *= CL(it->second);
            }
            sum += v;
        }
        return Cplx((double)sum.real(), (double)sum.imag());
    }

    // Deterministic textual dump (grammar documented in the repo docs).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + rat_str(c) + ")";
            if (m.mu_pow) out += "*mu^" + std::to_string(m.mu_pow);
            if (m.a_pow) out += "*a^" + std::to_string(m.a_pow);
            if (m.eps) out += "*alam";
            if (m.dm) out += "*D^-" + std::to_string(m.dm);
            if (m.part != Part::Id) out += std::string("*") + part_name(m.part);
            for (const auto& l : m.labels) out += "*{" + l + "}";
        }
        return out;
    }

  private:
    std::map<Mono, Rat> terms_;

    static std::complex<long double> cpow(std::complex<long double> z, int p) {
        if (p < 0) return (long double)1 / cpow(z, -p);
        std::complex<long double> r = 1.0L;
        while (p) {
            if (p & 1) r *= z;
            z *= z;
            p >>= 1;
        }
        return r;
    }

    void add_term(Mono m, Rat c) {
        if (c == 0) return;
        if (m.part == Part::Ker) {
            if (m.a_pow > 0) return;  // a * Pi0 = 0
            // alam = mu, D = mu^2 on the kernel
            m.mu_pow += m.eps - 2 * m.dm;
            m.eps = 0;
            m.dm = 0;
        }
        if (m.dm < 0) {
            // positive D power: expand one factor (a^2 + mu^2) and recurse
            Mono m1 = m, m2 = m;
            m1.dm += 1;
            m1.a_pow += 2;
            m2.dm += 1;
            m2.mu_pow += 2;
            add_term(m1, c);
            add_term(m2, c);
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_[m] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Product of two canonical monomials, with the Part table.
    void mul_add(const Mono& x, const Mono& y, const Rat& c) {
        Mono m;
        m.mu_pow = x.mu_pow + y.mu_pow;
        m.a_pow = x.a_pow + y.a_pow;
        int eps = x.eps + y.eps;
        m.dm = x.dm + y.dm;
        if (eps == 2) {  // alam^2 = D
            m.eps = 0;
            m.dm -= 1;
        } else {
            m.eps = eps;
        }
        m.labels = x.labels;
        m.labels.insert(m.labels.end(), y.labels.begin(), y.labels.end());
        std::sort(m.labels.begin(), m.labels.end());

        const Part px = x.part, py = y.part;
        if (px == Part::Id) {
            m.part = py;
            add_term(m, c);
        } else if (py == Part::Id) {
            m.part = px;
            add_term(m, c);
        } else if (px == Part::Ker && py == Part::Ker) {
            m.part = Part::Ker;
            add_term(m, c);
        } else if (px == Part::Sign && py == Part::Sign) {
            m.part = Part::Id;
            add_term(m, c);
            m.part = Part::Ker;
            add_term(m, -c);
        } else {
            // Sign * Ker = 0
        }
    }

    // Canonicalize each (part, labels, eps) group into its D-adic partial
    // fraction form: polynomial part at dm = 0 plus remainders of a-degree
    // <= 1 at each dm >= 1 level. That form is unique since D = a^2 + mu^2
    // has a-degree 2.
    void normalize() {
        std::map<std::tuple<Part, Labels, int>, std::vector<Mono>> groups;
        for (const auto& [m, c] : terms_) {
            if (m.dm > 0) groups[{m.part, m.labels, m.eps}].push_back(m);
        }
        for (auto& [key, monos] : groups) {
            int max_dm = 0;
            bool include_poly = false;
            for (const auto& m : monos) max_dm = std::max(max_dm, m.dm);
            // pull the dm = 0 monomials of the group in as well
            std::vector<Mono> all = monos;
            for (const auto& [m, c] : terms_) {
                if (m.dm == 0 && m.part == std::get<0>(key) && m.labels == std::get<1>(key) &&
                    m.eps == std::get<2>(key)) {
                    all.push_back(m);
                    include_poly = true;
                }
            }
            (void)include_poly;
            // numerator over the common denominator D^{max_dm}
            poly::P2 num;
            for (const auto& m : all) {
                auto it = terms_.find(m);
                if (it == terms_.end()) continue;
                poly::P2 t;
                poly::add(t, m.mu_pow, m.a_pow, it->second);
                for (int i = 0; i < max_dm - m.dm; ++i) {
                    poly::P2 u;
                    for (const auto& [pq, c] : t) {
                        poly::add(u, pq.first, pq.second + 2, c);
                        poly::add(u, pq.first + 2, pq.second, c);
                    }
                    t = std::move(u);
                }
                for (const auto& [pq, c] : t) poly::add(num, pq.first, pq.second, c);
            }
            for (const auto& m : all) terms_.erase(m);
            // D-adic expansion: remainder at level dm, quotient moves up
            Mono base;
            base.part = std::get<0>(key);
            base.labels = std::get<1>(key);
            base.eps = std::get<2>(key);
            for (int level = max_dm; level >= 1; --level) {
                auto [quot, rem] = poly::divmod_D(num);
                for (const auto& [pq, c] : rem) emit(base, pq.first, pq.second, level, c);
                num = std::move(quot);
            }
            for (const auto& [pq, c] : num) emit(base, pq.first, pq.second, 0, c);
        }
    }

    void emit(const Mono& base, int mu_pow, int a_pow, int dm, const Rat& c) {
        if (c == 0) return;
        Mono m = base;
        m.mu_pow = mu_pow;
        m.a_pow = a_pow;
        m.dm = dm;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_[m] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
};

}  // namespace aps
