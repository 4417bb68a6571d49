#pragma once

#include <map>
#include <optional>

#include "aps/skind.hpp"
#include "aps/spectral_model.hpp"

namespace aps {

// One candidate logarithmic term of the boundary trace expansion.
struct LogEntry {
    HalfInt power;   // exponent of (-lambda) under the log
    int source = 0;  // index into the canonical term list
    int nu = 0;      // index in the resolvent-modulus expansion
    std::optional<double> coefficient;  // absent: no symbol data to evaluate it
    std::string certificate;            // nonempty: coefficient proved zero
};

struct LogReport {
    std::vector<LogEntry> entries;
    int n = 0;

    // candidate powers that are not certified zero
    std::vector<HalfInt> candidate_powers() const {
        std::vector<HalfInt> out;
        for (const auto& e : entries) {
            if (!e.certificate.empty()) continue;
            if (std::find(out.begin(), out.end(), e.power) == out.end()) out.push_back(e.power);
        }
        std::sort(out.begin(), out.end(), [](HalfInt x, HalfInt y) { return y < x; });
        return out;
    }

    // summed coefficients of entries with computed values
    std::map<int, double> total_coefficients() const {  // keyed by twice the power
        std::map<int, double> acc;
        for (const auto& e : entries)
            if (e.coefficient) acc[e.power.twice] += *e.coefficient;
        return acc;
    }
};

struct EnumeratorOptions {
    int nu_depth = 4;
    const SpectralModel* model = nullptr;  // synthetic symbol data for coefficients
    double zero_tol = 1e-14;
};

namespace detail {

// Count-space symbol weight of a^q sign^eps for the synthetic families: the
// coefficient of k^{-1} in the per-side expansions, weighted by multiplicity
// and the side signs. Nonzero only for odd q (the density corrections sit at
// even inverse powers).
inline std::optional<double> synthetic_log_weight(const SpectralModel& model, int q, bool sign) {
    if (!model.synth && model.kind == ModelKind::Circle) return 0.0;  // exact linear spectrum
    if (!model.synth) return std::nullopt;
    const SyntheticParams& p = *model.synth;
    if (p.n % 2 == 1) return 0.0;
    if (q % 2 == 0) return 0.0;
    auto side_piece = [&](double c, double g) {
        return to_double(Rat(binomial(q, (q + 1) / 2))) * std::pow(g, (q + 1) / 2) / c;
    };
    double xp = side_piece(p.c_plus, p.gamma_plus);
    double xm = side_piece(p.c_minus, p.gamma_minus);
    double side_sign = ((q + (sign ? 1 : 0)) % 2 == 0) ? 1.0 : -1.0;
    return p.w_plus * xp + side_sign * p.w_minus * xm;
}

}  // namespace detail

// Theorem-5.2-style enumeration of candidate log powers of the boundary
// resolvent trace for a canonical term list. Odd n: no logarithms at all.
// Even n: sign-part terms contribute powers (l-j)/2 - nu (a single l/2 when
// j = 0); plain terms contribute at the same powers only through
// parity-indefinite model data (weighted synthetic spectra), so their
// coefficients are computed rather than assumed zero.
inline LogReport enumerate_log_powers(const std::vector<SKindTerm>& skinds, int n,
                                      EnumeratorOptions opts = {}) {
    LogReport report;
    report.n = n;
    if (n % 2 == 1) return report;  // all log coefficients vanish by parity

    for (size_t i = 0; i < skinds.size(); ++i) {
        const SKindTerm& t = skinds[i];
        if (t.type == SKindTerm::Type::C) continue;
        const bool with_sign = (t.type == SKindTerm::Type::A);
        const int numax = (t.j == 0) ? 0 : opts.nu_depth;
        if (!with_sign && !opts.model) continue;  // differential parts: even-even, no logs
        for (int nu = 0; nu <= numax; ++nu) {
            LogEntry e;
            e.power = HalfInt(t.l - t.j) - HalfInt::whole(nu);
            e.source = static_cast<int>(i);
            e.nu = nu;
            if (opts.model && t.labels.empty()) {
                auto w = detail::synthetic_log_weight(*opts.model, t.a_pow + 2 * nu, with_sign);
                if (w) {
                    double bin = to_double(binomial_rat(Rat(-t.j, 2), nu));
                    e.coefficient = to_double(t.coeff) * bin * 0.5 * (*w);
                    if (std::abs(*e.coefficient) < opts.zero_tol) {
                        e.coefficient = 0.0;
                        e.certificate = with_sign ? "parity" : "even-even symbol";
                    }
                }
            }
            if (!with_sign) {
                // keep only genuinely nonzero parity-violating contributions
                if (!e.coefficient || *e.coefficient == 0.0) continue;
            }
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

inline LogReport enumerate_log_powers(const SgoTermList& terms, int n, int r = 0,
                                      EnumeratorOptions opts = {}) {
    return enumerate_log_powers(canonicalize_skinds(terms, r), n, opts);
}

}  // namespace aps
