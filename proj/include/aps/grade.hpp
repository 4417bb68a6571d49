#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aps/rational.hpp"

namespace aps {

struct grade_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OpKind {
    PsdoInterior,   // psdo on the n-manifold, truncated; carries (0,0,s), ut
    PsdoBoundary,   // psdo on the boundary cross-section
    Trace0,         // trace operator of class 0
    Poisson,
    Sgo0,           // singular Green operator of class 0
};

inline const char* kind_name(OpKind k) {
    switch (k) {
        case OpKind::PsdoInterior: return "psdo_interior";
        case OpKind::PsdoBoundary: return "psdo_boundary";
        case OpKind::Trace0: return "trace0";
        case OpKind::Poisson: return "poisson";
        case OpKind::Sgo0: return "sgo0";
    }
    return "?";
}

// Symbol(-kernel) grade (m, d, s) with classification flags. Degree is
// m + d + s for the boundary kinds.
struct GradeClass {
    int m = 0, d = 0, s = 0;
    OpKind kind = OpKind::Sgo0;
    bool strongly_polyhomogeneous = false;
    bool transmission = false;   // meaningful for interior symbols
    bool holomorphic_mu = true;

    int degree() const { return m + d + s; }

    friend bool operator==(const GradeClass& x, const GradeClass& y) {
        return x.m == y.m && x.d == y.d && x.s == y.s && x.kind == y.kind &&
               x.strongly_polyhomogeneous == y.strongly_polyhomogeneous &&
               x.transmission == y.transmission && x.holomorphic_mu == y.holomorphic_mu;
    }

    std::string str() const {
        return std::string(kind_name(kind)) + "[" + std::to_string(m) + "," + std::to_string(d) +
               "," + std::to_string(s) + "]" + (strongly_polyhomogeneous ? " sphg" : "");
    }
};

// The two inclusions available for s <= 0: S^{m,d,s} c S^{m+s,d,0} and
// S^{m,d,s} c S^{m,d+s,0}.
inline std::pair<GradeClass, GradeClass> embed_s0(const GradeClass& g) {
    if (g.s > 0) throw grade_error("embedding requires s <= 0");
    GradeClass a = g, b = g;
    a.m += g.s;
    a.s = 0;
    b.d += g.s;
    b.s = 0;
    return {a, b};
}

// Composition result; interior-interior products also leave a singular Green
// remainder of one lower third index.
struct GradeResult {
    GradeClass main;
    std::optional<GradeClass> leftover_sgo;
};

// The class-0 composition table. Interior symbols carry only the third index.
inline GradeResult compose_grades(const GradeClass& x, const GradeClass& y) {
    auto flags = [&](GradeClass g) {
        g.strongly_polyhomogeneous = x.strongly_polyhomogeneous && y.strongly_polyhomogeneous;
        g.holomorphic_mu = x.holomorphic_mu && y.holomorphic_mu;
        g.transmission = false;
        return g;
    };
    auto mk = [&](OpKind kind, int m, int d, int s) {
        GradeClass g;
        g.kind = kind;
        g.m = m;
        g.d = d;
        g.s = s;
        return flags(g);
    };
    const int ms = x.m + y.m, ds = x.d + y.d, ss = x.s + y.s;
    const OpKind kx = x.kind, ky = y.kind;

    auto require_interior_shape = [&](const GradeClass& g) {
        if (g.m != 0 || g.d != 0)
            throw grade_error("interior symbols carry only the third index (use P[0,0,s])");
    };
    auto require_s_nonpos = [&](const GradeClass& g) {
        if (g.s > 0)
            throw grade_error(
                "composition table requires s <= 0 on the interior factor; no automatic "
                "normalization is applied");
    };

    if (kx == OpKind::PsdoInterior) {
        require_interior_shape(x);
        require_s_nonpos(x);
        if (!x.transmission) throw grade_error("interior factor must satisfy the transmission condition");
    }
    if (ky == OpKind::PsdoInterior) {
        require_interior_shape(y);
        require_s_nonpos(y);
        if (!y.transmission) throw grade_error("interior factor must satisfy the transmission condition");
    }

    switch (kx) {
        case OpKind::Trace0:
            if (ky == OpKind::PsdoInterior) return {mk(OpKind::Trace0, x.m, x.d, ss)};
            if (ky == OpKind::Sgo0) return {mk(OpKind::Trace0, ms, ds, ss + 1)};
            if (ky == OpKind::Poisson) return {mk(OpKind::PsdoBoundary, ms, ds, ss + 1)};
            break;
        case OpKind::PsdoInterior:
            if (ky == OpKind::Poisson) return {mk(OpKind::Poisson, y.m, y.d, ss)};
            if (ky == OpKind::Sgo0) return {mk(OpKind::Sgo0, y.m, y.d, ss)};
            if (ky == OpKind::PsdoInterior) {
                GradeResult r{mk(OpKind::PsdoInterior, 0, 0, ss)};
                r.main.transmission = true;
                r.leftover_sgo = mk(OpKind::Sgo0, 0, 0, ss - 1);
                return r;
            }
            break;
        case OpKind::Sgo0:
            if (ky == OpKind::PsdoInterior) return {mk(OpKind::Sgo0, x.m, x.d, ss)};
            if (ky == OpKind::Sgo0) return {mk(OpKind::Sgo0, ms, ds, ss + 1)};
            if (ky == OpKind::Poisson) return {mk(OpKind::Poisson, ms, ds, ss + 1)};
            break;
        case OpKind::Poisson:
            if (ky == OpKind::Trace0) return {mk(OpKind::Sgo0, ms, ds, ss)};
            if (ky == OpKind::PsdoBoundary) return {mk(OpKind::Poisson, ms, ds, ss)};
            break;
        case OpKind::PsdoBoundary:
            if (ky == OpKind::Trace0) return {mk(OpKind::Trace0, ms, ds, ss)};
            if (ky == OpKind::PsdoBoundary) return {mk(OpKind::PsdoBoundary, ms, ds, ss)};
            break;
    }
    throw grade_error(std::string("not composable per the composition table: ") + kind_name(kx) +
                      " o " + kind_name(ky));
}

// x_n^k dn^k' multiplication: shifts the third index by -k + k'
// (boundary kinds only).
inline GradeClass shift_xn_dn(const GradeClass& g, int xk, int dk) {
    if (g.kind == OpKind::PsdoInterior || g.kind == OpKind::PsdoBoundary)
        throw grade_error("x_n/d_n shifts apply to trace/Poisson/singular Green kinds");
    GradeClass out = g;
    out.s += -xk + dk;
    return out;
}

// d/dlambda^r: lowers the third index by 2r (resolvent-parameter derivative).
inline GradeClass shift_dlam(const GradeClass& g, int r) {
    GradeClass out = g;
    out.s -= 2 * r;
    return out;
}

// For a singular Green operator with symbol-KERNEL grade g, the triple that
// enters the trace expansion statement is (m, d, s+1).
inline GradeClass sgo_trace_params(const GradeClass& g) {
    if (g.kind != OpKind::Sgo0) throw grade_error("sgo_trace_params expects a singular Green kind");
    GradeClass out = g;
    out.s += 1;
    return out;
}

}  // namespace aps
