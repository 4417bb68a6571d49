#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aps/dense_oracle.hpp"
#include "aps/perturbation.hpp"
#include "aps/skind.hpp"

using namespace aps;
using Catch::Approx;

namespace {
double rel_err(Cplx x, Cplx y) {
    double scale = std::max({std::abs(x), std::abs(y), 1e-30});
    return std::abs(x - y) / scale;
}

Mat2<Coeff> term_at(const SgoTermList& terms, int k, int kp) {
    for (const auto& t : terms)
        if (t.k == k && t.kp == kp) return t.S;
    return Mat2<Coeff>();
}
}  // namespace

TEST_CASE("first perturbation step from G0: structural decomposition") {
    PerturbationSpec spec;
    spec.terms.push_back({0, "p0", 0});
    const Mat2<Coeff> P0 = perturbation_matrix(spec.terms[0]);
    const ModeMatrices mm = mode_matrices();

    SgoTermList out = perturbation_step(SgoTermList{SgoTerm{0, 0, mm.S0}}, spec);

    // reconstruct the expected list from independently tested primitives:
    //   {0,0}: (1/2alam)(-S1+ P0 S1- + S0 P0 S0)   [leftover + G P G]
    //   {m,0}: C_m P0 S0                            [Q0_+ x^0 K basis]
    //   {0,m}: S0 P0 S_m                            [T x^0 Q0_+ basis]
    std::map<std::pair<int, int>, Mat2<Coeff>> expect;
    const Coeff half = Rat(1, 2) * Coeff::alam(-1);
    expect[{0, 0}] =
        half * (Coeff(-1) * (mm.S1_plus * (P0 * mm.S1_minus)) + mm.S0 * (P0 * mm.S0));
    for (const auto& [m, C] : compose_Q0plus_xk_K(0)) {
        auto& slot = expect[{m, 0}];
        slot = slot + (C * P0) * mm.S0;
    }
    for (const auto& [m, S] : compose_T_xk_Q0plus(0)) {
        auto& slot = expect[{0, m}];
        slot = slot + mm.S0 * (P0 * S);
    }

    for (const auto& [key, S] : expect) {
        INFO("slot " << key.first << "," << key.second);
        REQUIRE(term_at(out, key.first, key.second) == S);
    }
    // and nothing else
    for (const auto& t : out) {
        REQUIRE(expect.count({t.k, t.kp}) == 1);
    }
}

TEST_CASE("x^k spec produces the shifted ladder") {
    PerturbationSpec spec;
    spec.terms.push_back({1, "p1", 1});
    const ModeMatrices mm = mode_matrices();
    SgoTermList out = perturbation_step(SgoTermList{SgoTerm{0, 0, mm.S0}}, spec);
    // residual powers from the corrected Lemma 4.3(v)/(vi) ladders reach k+1 = 2
    int max_k = 0, max_kp = 0;
    for (const auto& t : out) {
        max_k = std::max(max_k, t.k);
        max_kp = std::max(max_kp, t.kp);
    }
    REQUIRE(max_k == 2);
    REQUIRE(max_kp == 2);
    // every entry decomposes into canonical kinds with j >= 0
    for (const auto& t : out)
        for (const auto& e : t.S.e)
            for (const auto& sk : canonicalize_skinds(e)) REQUIRE(sk.j >= 0);
}

TEST_CASE("closure under iterated steps (property)") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> upow(0, 3), unterms(1, 3);
    for (int trial = 0; trial < 4; ++trial) {
        PerturbationSpec spec;
        int nt = unterms(rng);
        for (int i = 0; i < nt; ++i)
            spec.terms.push_back({upow(rng), "q" + std::to_string(i), i == 0 ? 0 : 1});
        ResolventExpansion r = ResolventExpansion::unperturbed();
        for (int m = 1; m <= 3; ++m) {
            r = perturbation_step(r, spec);
            for (const auto& t : r.sgo) {
                REQUIRE(t.k >= 0);
                REQUIRE(t.kp >= 0);
            }
            REQUIRE(!r.sgo.empty());
            REQUIRE(!r.psdo.empty());
        }
    }
}

TEST_CASE("normal trace of the first step matches the dense kernel oracle") {
    PerturbationSpec spec;
    spec.terms.push_back({0, "p0", 0});

    ModeCtx ctx;
    ctx.a = -1.0;
    ctx.lambda = Cplx(-2.0, 0.0);
    ctx.tangential["p0"] = 0.3;

    SgoTermList step1 = perturbation_step(SgoTermList{SgoTerm{0, 0, mode_matrices().S0}}, spec);
    Mat2<Coeff> trn = normal_trace_assembly(step1);
    Cplx engine = trn.trace().eval(ctx);

    DenseOracleConfig cfg;
    cfg.L = 24.0;
    cfg.n = 480;
    cfg.Lneg = 24.0;
    DenseModeOracle oracle(ctx.a, ctx.lambda, spec, ctx, cfg);
    Cplx dense = oracle.sgo_trace(1);
    REQUIRE(rel_err(engine, dense) < 1e-2);

    // grid refinement: trapezoid error drops ~4x (second order)
    DenseOracleConfig fine = cfg;
    fine.n = 960;
    DenseModeOracle oracle2(ctx.a, ctx.lambda, spec, ctx, fine);
    Cplx dense2 = oracle2.sgo_trace(1);
    double e1 = std::abs(dense - engine), e2 = std::abs(dense2 - engine);
    REQUIRE(e2 < 0.35 * e1);
    // Richardson extrapolation lands within 1e-4
    Cplx extrap = dense2 + (dense2 - dense) / 3.0;
    REQUIRE(rel_err(engine, extrap) < 1e-4);
}

TEST_CASE("x^1 spec first step against the dense oracle") {
    PerturbationSpec spec;
    spec.terms.push_back({1, "p1", 1});

    ModeCtx ctx;
    ctx.a = 1.0;
    ctx.lambda = Cplx(-3.0, 0.0);
    ctx.tangential["p1"] = -0.4;

    SgoTermList step1 = perturbation_step(SgoTermList{SgoTerm{0, 0, mode_matrices().S0}}, spec);
    Cplx engine = normal_trace_assembly(step1).trace().eval(ctx);

    DenseOracleConfig cfg;
    cfg.L = 22.0;
    cfg.n = 440;
    cfg.Lneg = 22.0;
    DenseModeOracle o1(ctx.a, ctx.lambda, spec, ctx, cfg);
    DenseOracleConfig fine = cfg;
    fine.n = 880;
    DenseModeOracle o2(ctx.a, ctx.lambda, spec, ctx, fine);
    Cplx d1 = o1.sgo_trace(1), d2 = o2.sgo_trace(1);
    Cplx extrap = d2 + (d2 - d1) / 3.0;
    REQUIRE(rel_err(engine, extrap) < 1e-4);
}
