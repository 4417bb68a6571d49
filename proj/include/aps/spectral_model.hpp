#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "aps/coeff.hpp"

namespace aps {

struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { Matrix, Circle, SyntheticWeyl };

inline const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Matrix: return "matrix";
        case ModelKind::Circle: return "circle";
        case ModelKind::SyntheticWeyl: return "synthetic_weyl";
    }
    return "?";
}

// Per-mode action rule of a commuting tangential operator.
struct TangentialDecl {
    std::string label;
    int order = 0;
    bool commutes = true;
    std::vector<double> poly_a;  // value = sum_i poly_a[i] a^i (empty: see sign_part)
    bool sign_part = false;      // value = sign(a) (0 on the kernel)
    double growth_const = 16.0;  // declared C in |value| <= C (1+|a|)^order

    Cplx value(double a) const {
        if (sign_part) return a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0);
        Cplx v = 0.0;
        double p = 1.0;
        for (double c : poly_a) {
            v += c * p;
            p *= a;
        }
        return v;
    }
};

struct Mode {
    friend bool operator==(const Mode& x, const Mode& y) {
        return x.a == y.a && x.multiplicity == y.multiplicity && x.tangential == y.tangential;
    }
    double a = 0.0;
    int multiplicity = 1;
    std::map<std::string, Cplx> tangential;
};

// Parameters of the synthetic families: per side,
//   a_{+,k} = c+ k^{1/(n-1)} + gamma+ / (c+ k^{1/(n-1)})   with weight w+,
//   a_{-,k} = -(c- k^{1/(n-1)} + gamma- / (c- k^{1/(n-1)})) with weight w-.
// n = 2 gives the density corrections used by the even-n log checks.
struct SyntheticParams {
    int n = 2;
    int N = 100;
    double c_plus = 1.0, c_minus = 1.0;
    double gamma_plus = 0.0, gamma_minus = 0.0;
    int w_plus = 1, w_minus = 1;

    double sigma(int k, int side) const {
        double c = side > 0 ? c_plus : c_minus;
        return c * std::pow(static_cast<double>(k), 1.0 / (n - 1));
    }
    double eigenvalue(int k, int side) const {
        double g = side > 0 ? gamma_plus : gamma_minus;
        double s = sigma(k, side);
        double v = s + (g == 0.0 ? 0.0 : g / s);
        return side > 0 ? v : -v;
    }
};

struct SpectralModel {
    ModelKind kind = ModelKind::Matrix;
    int dim_n = 1;
    int truncation = 0;
    double weyl_constant = 0.0;
    std::vector<Mode> modes;  // ascending eigenvalue
    std::map<std::string, TangentialDecl> tangential;
    std::optional<SyntheticParams> synth;
    double circle_alpha = 0.0;

    int pi0_rank() const {
        int r = 0;
        for (const auto& m : modes)
            if (m.a == 0.0) r += m.multiplicity;
        return r;
    }
    int total_multiplicity() const {
        int r = 0;
        for (const auto& m : modes) r += m.multiplicity;
        return r;
    }

    void add_tangential(TangentialDecl decl) {
        if (!decl.commutes)
            throw model_error("non-commuting tangential operator rejected: " + decl.label);
        for (auto& m : modes) m.tangential[decl.label] = decl.value(m.a);
        tangential[decl.label] = std::move(decl);
    }

    ModeCtx ctx(const Mode& m, Cplx lambda) const {
        ModeCtx c;
        c.a = m.a;
        c.lambda = lambda;
        c.tangential = m.tangential;
        return c;
    }

    // growth invariant: |scalar| <= C (1+|a|)^order over the enumerated modes
    void check_growth() const {
        for (const auto& [label, decl] : tangential) {
            for (const auto& m : modes) {
                double bound = decl.growth_const * std::pow(1.0 + std::abs(m.a), decl.order);
                auto it = m.tangential.find(label);
                if (it != m.tangential.end() && std::abs(it->second) > bound)
                    throw model_error("tangential scalar violates the declared order bound: " +
                                      label);
            }
        }
    }
};

namespace detail {
inline void sort_modes(std::vector<Mode>& modes) {
    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& x, const Mode& y) { return x.a < y.a; });
}
}  // namespace detail

inline SpectralModel build_matrix_model(const std::vector<std::pair<double, int>>& eigenvalues) {
    if (eigenvalues.empty()) throw model_error("empty spectrum");
    SpectralModel m;
    m.kind = ModelKind::Matrix;
    m.dim_n = 1;
    m.truncation = static_cast<int>(eigenvalues.size());
    for (const auto& [a, mult] : eigenvalues) {
        if (mult < 1) throw model_error("multiplicities must be >= 1");
        m.modes.push_back(Mode{a, mult, {}});
    }
    detail::sort_modes(m.modes);
    return m;
}

inline SpectralModel build_circle_model(double alpha, int N) {
    if (N < 1) throw model_error("circle model requires N >= 1");
    SpectralModel m;
    m.kind = ModelKind::Circle;
    m.dim_n = 2;
    m.truncation = N;
    m.circle_alpha = alpha;
    m.weyl_constant = 2.0;
    // truncate symmetrically in the eigenvalue: |k + alpha| <= N
    for (int k = -N - static_cast<int>(std::ceil(std::abs(alpha))) - 1; k <= N + 2; ++k)
        if (std::abs(k + alpha) <= N + 1e-12) m.modes.push_back(Mode{k + alpha, 1, {}});
    detail::sort_modes(m.modes);
    return m;
}

inline SpectralModel build_synthetic_model(const SyntheticParams& p) {
    if (p.n < 2) throw model_error("synthetic model requires n >= 2");
    if (p.N < 1) throw model_error("synthetic model requires N >= 1");
    SpectralModel m;
    m.kind = ModelKind::SyntheticWeyl;
    m.dim_n = p.n;
    m.truncation = p.N;
    m.synth = p;
    m.weyl_constant = (p.w_plus * std::pow(1.0 / p.c_plus, p.n - 1) +
                       p.w_minus * std::pow(1.0 / p.c_minus, p.n - 1));
    for (int k = 1; k <= p.N; ++k) {
        if (p.w_plus > 0) m.modes.push_back(Mode{p.eigenvalue(k, +1), p.w_plus, {}});
        if (p.w_minus > 0) m.modes.push_back(Mode{p.eigenvalue(k, -1), p.w_minus, {}});
    }
    detail::sort_modes(m.modes);
    return m;
}

// Population asymmetry in [-1, 1] realized through integer weights 2(1 +- t)/2;
// exact for t in {-1, -1/2, 0, 1/2, 1}.
inline SpectralModel build_weyl_model(int n, double asymmetry, int N, double c) {
    if (n < 2) throw model_error("weyl model requires n >= 2");
    if (std::abs(asymmetry) > 1.0) throw model_error("asymmetry must lie in [-1, 1]");
    SyntheticParams p;
    p.n = n;
    p.N = N;
    p.c_plus = p.c_minus = c;
    p.w_plus = static_cast<int>(std::lround((1.0 + asymmetry) * 2.0));
    p.w_minus = static_cast<int>(std::lround((1.0 - asymmetry) * 2.0));
    if (std::abs((1.0 + asymmetry) * 2.0 - p.w_plus) > 1e-9 ||
        std::abs((1.0 - asymmetry) * 2.0 - p.w_minus) > 1e-9)
        throw model_error("asymmetry must be a multiple of 1/2 (integer weights)");
    int g = std::gcd(p.w_plus, p.w_minus);
    if (g > 1) {
        p.w_plus /= g;
        p.w_minus /= g;
    }
    return build_synthetic_model(p);
}

inline std::vector<Mode> enumerate_modes(const SpectralModel& m) { return m.modes; }

// ---- JSON schema -----------------------------------------------------------
// { "kind": "matrix"|"circle"|"synthetic_weyl", "dim_n": int, "params": {...},
//   "tangential": [ {"label": str, "order": int, "coeffs": {...}} ] }

inline SpectralModel load_model(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    SpectralModel m;
    if (kind == "matrix") {
        std::vector<std::pair<double, int>> eig;
        for (const auto& e : j.at("params").at("eigenvalues"))
            eig.emplace_back(e.at(0).get<double>(), e.at(1).get<int>());
        m = build_matrix_model(eig);
    } else if (kind == "circle") {
        m = build_circle_model(j.at("params").at("alpha").get<double>(),
                               j.at("params").at("N").get<int>());
    } else if (kind == "synthetic_weyl") {
        const auto& p = j.at("params");
        if (p.contains("asymmetry")) {
            m = build_weyl_model(j.at("dim_n").get<int>(), p.at("asymmetry").get<double>(),
                                 p.at("N").get<int>(), p.value("c", 1.0));
        } else {
            SyntheticParams sp;
            sp.n = j.at("dim_n").get<int>();
            sp.N = p.at("N").get<int>();
            sp.c_plus = p.value("c_plus", 1.0);
            sp.c_minus = p.value("c_minus", 1.0);
            sp.gamma_plus = p.value("gamma_plus", 0.0);
            sp.gamma_minus = p.value("gamma_minus", 0.0);
            sp.w_plus = p.value("w_plus", 1);
            sp.w_minus = p.value("w_minus", 1);
            m = build_synthetic_model(sp);
        }
    } else {
        throw model_error("unknown model kind: " + kind);
    }
    if (j.contains("dim_n") && j.at("dim_n").get<int>() != m.dim_n)
        throw model_error("dim_n does not match the model kind");
    if (j.contains("tangential")) {
        for (const auto& t : j.at("tangential")) {
            TangentialDecl d;
            d.label = t.at("label").get<std::string>();
            d.order = t.at("order").get<int>();
            d.commutes = t.value("commutes_with_a", true);
            if (t.contains("coeffs")) {
                const auto& c = t.at("coeffs");
                const std::string type = c.at("type").get<std::string>();
                if (type == "poly_a") {
                    d.poly_a = c.at("coeffs").get<std::vector<double>>();
                } else if (type == "const") {
                    d.poly_a = {c.at("value").get<double>()};
                } else if (type == "sign") {
                    d.sign_part = true;
                } else {
                    throw model_error("unknown tangential coefficient type: " + type);
                }
            }
            if (t.contains("growth_const")) d.growth_const = t.at("growth_const").get<double>();
            m.add_tangential(d);
        }
        m.check_growth();
    }
    return m;
}

inline nlohmann::json model_to_json(const SpectralModel& m) {
    nlohmann::json j;
    j["kind"] = model_kind_name(m.kind);
    j["dim_n"] = m.dim_n;
    nlohmann::json p;
    if (m.kind == ModelKind::Matrix) {
        nlohmann::json eig = nlohmann::json::array();
        for (const auto& mode : m.modes) eig.push_back({mode.a, mode.multiplicity});
        p["eigenvalues"] = eig;
    } else if (m.kind == ModelKind::Circle) {
        p["alpha"] = m.circle_alpha;
        p["N"] = m.truncation;
    } else if (m.synth) {
        p["N"] = m.synth->N;
        p["c_plus"] = m.synth->c_plus;
        p["c_minus"] = m.synth->c_minus;
        p["gamma_plus"] = m.synth->gamma_plus;
        p["gamma_minus"] = m.synth->gamma_minus;
        p["w_plus"] = m.synth->w_plus;
        p["w_minus"] = m.synth->w_minus;
    }
    j["params"] = p;
    nlohmann::json tang = nlohmann::json::array();
    for (const auto& [label, d] : m.tangential) {
        nlohmann::json t;
        t["label"] = label;
        t["order"] = d.order;
        if (d.sign_part) t["coeffs"] = {{"type", "sign"}};
        else t["coeffs"] = {{"type", "poly_a"}, {"coeffs", d.poly_a}};
        tang.push_back(t);
    }
    j["tangential"] = tang;
    return j;
}

}  // namespace aps
