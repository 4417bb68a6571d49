#pragma once

#include <map>

#include "aps/coeff.hpp"
#include "aps/mat2.hpp"

namespace aps {

// Rational symbol in the normal covariable xi with poles at +-i*alam:
//   f(xi) = sum_p plus[p] / (alam + i xi)^p
//         + sum_q minus[q] / (alam - i xi)^q
//         + poly[0] + poly[1] * (i xi).
// Canonical by construction: no term carries both pole types; the polynomial
// part is capped at degree 1 (all first-order blocks fit; higher degree is
// rejected loudly at construction).
class NormalSymbol {
  public:
    NormalSymbol() = default;

    static NormalSymbol plus_pole(int p, Coeff c = Coeff(1)) {
        NormalSymbol f;
        f.add_plus(p, std::move(c));
        return f;
    }
    static NormalSymbol minus_pole(int q, Coeff c = Coeff(1)) {
        NormalSymbol f;
        f.add_minus(q, std::move(c));
        return f;
    }
    static NormalSymbol constant(Coeff c) {
        NormalSymbol f;
        f.add_poly(0, std::move(c));
        return f;
    }
    static NormalSymbol i_xi(Coeff c = Coeff(1)) {
        NormalSymbol f;
        f.add_poly(1, std::move(c));
        return f;
    }

    // Mixed product  c / ((alam+i xi)^p (alam-i xi)^q) * (i xi)^d, reduced to
    // canonical partial fractions.
    static NormalSymbol mixed(Coeff c, int p, int q, int d = 0) {
        if (p < 0 || q < 0 || d < 0) throw algebra_error("negative exponent in symbol term");
        NormalSymbol f;
        f.add_mixed(std::move(c), p, q, d);
        return f;
    }

    const std::map<int, Coeff>& plus() const { return plus_; }
    const std::map<int, Coeff>& minus() const { return minus_; }
    const Coeff& poly(int d) const { return poly_[d]; }
    bool is_zero() const { return plus_.empty() && minus_.empty() && poly_[0].is_zero() && poly_[1].is_zero(); }
    bool poly_is_zero() const { return poly_[0].is_zero() && poly_[1].is_zero(); }

    NormalSymbol& operator+=(const NormalSymbol& o) {
        for (const auto& [p, c] : o.plus_) add_plus(p, c);
        for (const auto& [q, c] : o.minus_) add_minus(q, c);
        add_poly(0, o.poly_[0]);
        add_poly(1, o.poly_[1]);
        return *this;
    }
    friend NormalSymbol operator+(NormalSymbol x, const NormalSymbol& y) { return x += y; }
    friend NormalSymbol operator-(const NormalSymbol& x, const NormalSymbol& y) {
        return x + (Coeff(-1) * y);
    }

    friend NormalSymbol operator*(const Coeff& s, const NormalSymbol& f) {
        NormalSymbol out;
        for (const auto& [p, c] : f.plus_) out.add_plus(p, s * c);
        for (const auto& [q, c] : f.minus_) out.add_minus(q, s * c);
        out.add_poly(0, s * f.poly_[0]);
        out.add_poly(1, s * f.poly_[1]);
        return out;
    }

    // Full product (1D symbols compose by multiplication; everything commutes).
    friend NormalSymbol operator*(const NormalSymbol& x, const NormalSymbol& y) {
        NormalSymbol out;
        auto each = [](const NormalSymbol& f, auto&& fn) {
            for (const auto& [p, c] : f.plus_) fn(c, p, 0, 0);
            for (const auto& [q, c] : f.minus_) fn(c, 0, q, 0);
            for (int d = 0; d < 2; ++d)
                if (!f.poly_[d].is_zero()) fn(f.poly_[d], 0, 0, d);
        };
        each(x, [&](const Coeff& cx, int px, int qx, int dx) {
            each(y, [&](const Coeff& cy, int py, int qy, int dy) {
                out.add_mixed(cx * cy, px + py, qx + qy, dx + dy);
            });
        });
        return out;
    }

    friend bool operator==(const NormalSymbol& x, const NormalSymbol& y) {
        return x.plus_ == y.plus_ && x.minus_ == y.minus_ && x.poly_[0] == y.poly_[0] &&
               x.poly_[1] == y.poly_[1];
    }
    friend bool operator!=(const NormalSymbol& x, const NormalSymbol& y) { return !(x == y); }

    // Hardy-space projections: h_plus keeps the (alam + i xi)-poles, h_minus
    // the (alam - i xi)-poles; the polynomial part is neither.
    NormalSymbol h_plus() const {
        NormalSymbol out;
        out.plus_ = plus_;
        return out;
    }
    NormalSymbol h_minus() const {
        NormalSymbol out;
        out.minus_ = minus_;
        return out;
    }
    NormalSymbol poly_part() const {
        NormalSymbol out;
        out.poly_ = poly_;
        return out;
    }

    // d/dxi. Needed for moving x_n factors through truncated psdos.
    NormalSymbol d_xi_times_minus_i() const {  // returns -i * d/dxi f
        NormalSymbol out;
        for (const auto& [p, c] : plus_) out.add_plus(p + 1, Coeff(Rat(-p)) * c);
        for (const auto& [q, c] : minus_) out.add_minus(q + 1, Coeff(Rat(q)) * c);
        if (!poly_[1].is_zero()) out.add_poly(0, poly_[1]);  // -i d/dxi (i xi) = 1
        return out;
    }

    // d/dlambda of every coefficient plus the pole-order chain rule:
    //   d/dlambda (alam ± i xi)^{-p} = (p/2) alam^{-1} (alam ± i xi)^{-p-1} * ...
    // handled exactly via d alam/d lambda = -1/(2 alam).
    NormalSymbol d_lambda() const {
        NormalSymbol out;
        for (const auto& [p, c] : plus_) {
            out.add_plus(p, c.d_lambda());
            out.add_plus(p + 1, Coeff(Rat(p, 2)) * Coeff::alam(-1) * c);
        }
        for (const auto& [q, c] : minus_) {
            out.add_minus(q, c.d_lambda());
            out.add_minus(q + 1, Coeff(Rat(q, 2)) * Coeff::alam(-1) * c);
        }
        out.add_poly(0, poly_[0].d_lambda());
        out.add_poly(1, poly_[1].d_lambda());
        return out;
    }

    Cplx eval(const ModeCtx& ctx, Cplx xi) const {
        const Cplx alam = ctx.alam();
        Cplx sum = 0.0;
        for (const auto& [p, c] : plus_) sum += c.eval(ctx) * ipow(alam + Cplx(0, 1) * xi, -p);
        for (const auto& [q, c] : minus_) sum += c.eval(ctx) * ipow(alam - Cplx(0, 1) * xi, -q);
        sum += poly_[0].eval(ctx) + poly_[1].eval(ctx) * Cplx(0, 1) * xi;
        return sum;
    }

    std::string str() const {
        std::string out;
        auto emit = [&](const std::string& head, const Coeff& c) {
            if (c.is_zero()) return;
            if (!out.empty()) out += "\n";
            out += head + ": " + c.str();
        };
        for (const auto& [p, c] : plus_) emit("h+[" + std::to_string(p) + "]", c);
        for (const auto& [q, c] : minus_) emit("h-[" + std::to_string(q) + "]", c);
        emit("poly[0]", poly_[0]);
        emit("poly[1]", poly_[1]);
        return out.empty() ? "0" : out;
    }

  private:
    std::map<int, Coeff> plus_, minus_;
    std::array<Coeff, 2> poly_{};

    void add_plus(int p, Coeff c) {
        if (p <= 0) throw algebra_error("pole order must be >= 1");
        if (c.is_zero()) return;
        auto& slot = plus_[p];
        slot += c;
        if (slot.is_zero()) plus_.erase(p);
    }
    void add_minus(int q, Coeff c) {
        if (q <= 0) throw algebra_error("pole order must be >= 1");
        if (c.is_zero()) return;
        auto& slot = minus_[q];
        slot += c;
        if (slot.is_zero()) minus_.erase(q);
    }
    void add_poly(int d, Coeff c) {
        if (c.is_zero()) return;
        if (d > 1) throw algebra_error("polynomial degree cap (<= 1) exceeded in normal symbol");
        poly_[d] += c;
    }

    // Reduction of c * (alam+ixi)^{-p} (alam-ixi)^{-q} (i xi)^d to canonical form.
    void add_mixed(Coeff c, int p, int q, int d) {
        if (c.is_zero()) return;
        if (d > 0) {
            // i xi = (alam + i xi) - alam = alam - (alam - i xi)
            if (p > 0) {
                add_mixed(c, p - 1, q, d - 1);
                add_mixed(Coeff(-1) * Coeff::alam(1) * c, p, q, d - 1);
            } else if (q > 0) {
                add_mixed(Coeff::alam(1) * c, p, q, d - 1);
                add_mixed(Coeff(-1) * c, p, q - 1, d - 1);
            } else {
                add_poly(d, c);
            }
            return;
        }
        if (p > 0 && q > 0) {
            // 1/((alam+ixi)(alam-ixi)) = (1/2alam) [ 1/(alam+ixi) + 1/(alam-ixi) ]
            Coeff half = Coeff(Rat(1, 2)) * Coeff::alam(-1) * c;
            add_mixed(half, p, q - 1, 0);
            add_mixed(half, p - 1, q, 0);
            return;
        }
        if (p > 0) add_plus(p, c);
        else if (q > 0) add_minus(q, c);
        else add_poly(0, c);
    }
};

// Canonicalize an arbitrary mixed rational expression (the public
// partial-fraction entry point; the type is already closed under it).
inline NormalSymbol partial_fractions(const NormalSymbol& f) { return f; }

// (1/2pi) * integral over R of f(xi) dxi, for f in H (decay O(1/xi) with the
// principal-value convention on simple poles; the polynomial part must vanish).
inline Coeff plus_integral(const NormalSymbol& f) {
    if (!f.poly_is_zero())
        throw algebra_error("plus_integral of a non-decaying symbol");
    Coeff out;
    auto it = f.plus().find(1);
    if (it != f.plus().end()) out += Coeff(Rat(1, 2)) * it->second;
    auto jt = f.minus().find(1);
    if (jt != f.minus().end()) out += Coeff(Rat(1, 2)) * jt->second;
    return out;
}

using SymbolMat = Mat2<NormalSymbol>;

}  // namespace aps
