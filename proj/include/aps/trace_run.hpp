#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include "aps/fit.hpp"
#include "aps/log_enumerator.hpp"
#include "aps/mode_sum.hpp"

namespace aps {

// log-spaced samples of the boundary trace on the ray arg lambda = pi
inline std::vector<std::pair<double, double>> sample_ray(const BoundaryTraceEvaluator& ev,
                                                         double x0, double x1, int count,
                                                         double* tail_bound = nullptr) {
    std::vector<std::pair<double, double>> out;
    double tb = 0.0;
    for (int i = 0; i < count; ++i) {
        double x = x0 * std::pow(x1 / x0, count > 1 ? static_cast<double>(i) / (count - 1) : 0.0);
        auto v = ev.eval(Cplx(-x, 0.0));
        if (std::abs(v.value.imag()) > 1e-10 * (std::abs(v.value) + 1e-300))
            throw algebra_error("trace not real on the negative axis");
        out.emplace_back(x, v.value.real());
        tb = std::max(tb, v.tail_bound);
    }
    if (tail_bound) *tail_bound = tb;
    return out;
}

// basis for the boundary resolvent trace of a model of dimension n with a
// tangential factor of order m' and r lambda-derivatives:
//   powers   (-lambda)^{(n-1+m')/2 - r - 1 - j/2}
//   logs at  (-lambda)^{-r - 1 + m'/2 - k/2}
inline std::vector<BasisSlot> boundary_basis(int n, int mprime, int r, int power_slots,
                                             int log_slots) {
    std::vector<BasisSlot> slots;
    HalfInt lead = HalfInt(n - 1 + mprime - 2 * r - 2);
    for (int j = 0; j < power_slots; ++j) slots.push_back({lead + HalfInt(-j), false});
    HalfInt log_lead = HalfInt(mprime - 2 * r - 2);
    for (int k = 0; k < log_slots; ++k) {
        HalfInt e = log_lead + HalfInt(-k);
        slots.push_back({e, true});
        bool have = false;
        for (const auto& s : slots)
            if (!s.has_log && s.exponent == e) have = true;
        if (!have) slots.push_back({e, false});
    }
    return slots;
}

struct ExpandResult {
    ExpansionSeries series;
    double tail_bound = 0.0;
    std::vector<BasisSlot> slots;
};

inline ExpandResult run_boundary_fit(const SpectralModel& model, const PerturbationSpec* spec,
                                     const std::string& F_label, int r, double x0, double x1,
                                     int samples, int power_slots = 7, int log_slots = 4,
                                     int neumann_depth = 2) {
    BoundaryTraceEvaluator ev(model, spec, F_label, r, neumann_depth);
    ExpandResult out;
    auto data = sample_ray(ev, x0, x1, samples, &out.tail_bound);
    int mprime = F_label.empty() ? 0 : model.tangential.at(F_label).order;
    out.slots = boundary_basis(model.dim_n, mprime, r, power_slots, log_slots);
    out.series = fit_expansion(data, out.slots);
    return out;
}

// ---- run manifest and CSV ---------------------------------------------------

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct RunManifest {
    nlohmann::json config;  // fully materialized (defaults resolved)
    std::string command;
    unsigned seed = 0;
    std::string version = "apslab 1.0";

    std::string hash() const {
        std::ostringstream os;
        os << command << '\n' << seed << '\n' << config.dump();
        std::ostringstream hex;
        hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(os.str());
        return hex.str();
    }
    nlohmann::json to_json() const {
        return {{"command", command},
                {"seed", seed},
                {"version", version},
                {"config", config},
                {"hash", hash()}};
    }
};

inline std::string series_csv(const ExpansionSeries& s, const std::string& manifest_hash,
                              const std::vector<Locality>* locality = nullptr) {
    std::ostringstream os;
    os << "# manifest " << manifest_hash << "\n";
    os << "exponent,has_log,coefficient,sigma,locality\n";
    os << std::setprecision(17);
    for (size_t i = 0; i < s.terms.size(); ++i) {
        const auto& t = s.terms[i];
        const char* loc = locality && i < locality->size() ? locality_name((*locality)[i])
                          : t.has_log                      ? "local"
                                                           : "nonlocal";
        os << t.exponent.str() << "," << (t.has_log ? 1 : 0) << "," << t.coefficient << ","
           << t.sigma << "," << loc << "\n";
    }
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

}  // namespace aps
