#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "angleguard/cstar_module.hpp"
#include "angleguard/error.hpp"
#include "angleguard/generators.hpp"
#include "angleguard/map_classifier.hpp"
#include "angleguard/random.hpp"
#include "angleguard/suites.hpp"

namespace angleguard {

namespace {

constexpr int kInnerTrials = 32;

std::uint64_t u64(int k) { return static_cast<std::uint64_t>(k); }

ModuleShape square_full(Eigen::Index n) { return {n, AlgebraSpec{n, AlgebraKind::full}}; }

ModuleShape require_full(const SuiteConfig& cfg, ModuleShape fallback) {
    const ModuleShape shape = module_or(cfg, fallback);
    if (shape.algebra.kind != AlgebraKind::full)
        fail(ErrorKind::usage, "suite '" + cfg.suite + "' needs --algebra full");
    return shape;
}

io::json map_inputs(const MapUnderTest& t) { return {{"map", io::to_json(t)}}; }

std::complex<double> random_phase(Rng& rng) { return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)); }

Eigen::Index extra_rows(Rng& rng) { return rng.uniform_int(0, 1); }

} // namespace

void suite_lemma41(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, square_full(3));
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const bool orthogonal = k % 2 == 0;
        const auto pair = orthogonal ? gen::orthogonal_module_pair(rng, shape)
                                     : gen::ModulePair{gen::random_element(rng, shape), gen::random_element(rng, shape)};
        const auto report = lemma41_status(pair.x, pair.y, kInnerTrials, rng.next_u64(), cfg.tol);
        const io::json inputs = {{"x", io::to_json(pair.x)}, {"y", io::to_json(pair.y)}};
        if (!report.agree() || report.conditions[0] != orthogonal)
            ctx.fail(u64(k), orthogonal ? "orthogonal_pair" : "generic_pair", inputs,
                     {{"all_conditions", orthogonal}}, io::to_json(report));
        ctx.count(orthogonal ? "orthogonal_pairs" : "generic_pairs");
    }
}

void suite_thm43(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, square_full(3));
    const bool diagonal = shape.algebra.kind == AlgebraKind::diagonal;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const int variant = k % 4;
        bool expect_hypothesis = false;
        MapUnderTest t = [&] {
            switch (variant) {
            case 0:
                expect_hypothesis = true;
                return gen::op_a_linear_map(rng, shape, shape.m + extra_rows(rng)).map;
            case 1:
                expect_hypothesis = true;
                return MapUnderTest::entrywise_conjugation(shape);
            case 2:
                return gen::generic_left_mult(rng, shape, shape.m + extra_rows(rng));
            default:
                if (diagonal) {
                    Eigen::VectorXcd f0(shape.n());
                    for (Eigen::Index i = 0; i < shape.n(); ++i) f0(i) = rng.uniform(0.5, 2.0) * random_phase(rng);
                    expect_hypothesis = true;
                    return MapUnderTest::diagonal_multiplier(f0);
                }
                return gen::random_general_linear(rng, shape, shape.m + extra_rows(rng));
            }
        }();
        const auto report = verify_thm43(t, kInnerTrials, rng.next_u64(), cfg.tol);
        if (report.falsified())
            ctx.fail(u64(k), "hypothesis_holds_conclusion_fails", map_inputs(t), {{"conclusion", true}},
                     io::to_json(report));
        else if (expect_hypothesis && !report.hypothesis.holds)
            ctx.fail(u64(k), "known_preserver_rejected", map_inputs(t), {{"hypothesis", true}}, io::to_json(report));
        ctx.count(report.hypothesis.holds ? "hypothesis_survivors" : "hypothesis_violated");
    }
}

void suite_thm44(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, square_full(3));
    const bool diagonal = shape.algebra.kind == AlgebraKind::diagonal;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const int variant = k % 4;
        const bool op_map = variant < 2;
        const Eigen::Index p = shape.m + extra_rows(rng);
        MapUnderTest base = op_map ? gen::op_a_linear_map(rng, shape, p).map : gen::generic_left_mult(rng, shape, p);
        // Odd variants present the same map as a matrix acting on vec(x).
        MapUnderTest t = (variant % 2 == 1 && !diagonal)
                             ? gen::left_mult_as_general_linear(shape, std::get<LeftMultiplication>(base.kind()).s)
                             : base;
        const auto report = verify_thm44(t, kInnerTrials, rng.next_u64(), cfg.tol);
        if (report.falsified())
            ctx.fail(u64(k), "hypothesis_holds_conclusion_fails", map_inputs(t), {{"conclusion", true}},
                     io::to_json(report));
        else if (op_map && !report.hypothesis.holds)
            ctx.fail(u64(k), "known_preserver_rejected", map_inputs(t), {{"hypothesis", true}}, io::to_json(report));
        ctx.count(report.hypothesis.holds ? "hypothesis_survivors" : "hypothesis_violated");
    }
}

void suite_remark45(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape m2 = square_full(2);
    if (cfg.module && !(*cfg.module == m2)) fail(ErrorKind::usage, "remark45 runs on M_2 over M_2 only");
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const int variant = k % 3;
        const MapUnderTest t = variant == 0   ? gen::op_a_linear_map(rng, m2, 2).map
                               : variant == 1 ? MapUnderTest::entrywise_conjugation(m2)
                                              : gen::random_general_linear(rng, m2, 2);
        const auto report = verify_remark45(t, kInnerTrials, rng.next_u64(), cfg.tol);
        if (report.falsified())
            ctx.fail(u64(k), "hypothesis_holds_conclusion_fails", map_inputs(t), {{"conclusion", true}},
                     io::to_json(report));
        else if (variant < 2 && !report.hypothesis.holds)
            ctx.fail(u64(k), "known_preserver_rejected", map_inputs(t), {{"hypothesis", true}}, io::to_json(report));
        ctx.count(report.hypothesis.holds ? "hypothesis_survivors" : "hypothesis_violated");
    }
}

void suite_thm46(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, square_full(3));
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const bool op_map = k % 2 == 0;
        const Eigen::Index p = shape.m + extra_rows(rng);
        const MapUnderTest t = op_map ? gen::op_a_linear_map(rng, shape, p).map : gen::generic_left_mult(rng, shape, p);
        const auto report = classify(t, kInnerTrials, rng.next_u64(), cfg.tol);
        if (!report.consistent())
            ctx.fail(u64(k), "inconsistent_classification", map_inputs(t), {{"consistent", true}}, io::to_json(report));
        if (op_map && !(report.op.holds && report.strongly_op.holds && report.cond_iv.holds && report.cond_v.holds &&
                        report.similarity.is_similarity))
            ctx.fail(u64(k), "similarity_properties", map_inputs(t),
                     {{"op", true}, {"strongly_op", true}, {"iv", true}, {"v", true}, {"similarity", true}},
                     io::to_json(report));
        ctx.count(report.similarity.is_similarity ? "similarities" : "non_similarities");
    }
}

void suite_example47(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, ModuleShape{2, AlgebraSpec{2, AlgebraKind::diagonal}});
    if (shape.algebra.kind != AlgebraKind::diagonal) fail(ErrorKind::usage, "example47 needs --algebra diagonal");
    const Eigen::Index n = shape.n();
    if (n < 2) fail(ErrorKind::usage, "example47 needs n >= 2 so that |f0| can vary");
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        Eigen::VectorXcd f0(n);
        if (k == 0) {
            for (Eigen::Index i = 0; i < n; ++i) f0(i) = static_cast<double>(i + 1);
        } else {
            // Moduli in [0.5, 2] with at least a 0.5 gap between two of them.
            for (Eigen::Index i = 0; i < n; ++i) f0(i) = rng.uniform(0.5, 2.0) * random_phase(rng);
            f0(0) = 0.5 * random_phase(rng);
            f0(1) = rng.uniform(1.0, 2.0) * random_phase(rng);
        }
        const MapUnderTest t = MapUnderTest::diagonal_multiplier(f0);
        const auto report = classify(t, kInnerTrials, rng.next_u64(), cfg.tol);
        const bool ok = report.op.holds && report.strongly_op.holds && report.cond_iv.holds && report.cond_v.holds &&
                        !report.similarity.is_similarity && report.consistent() &&
                        (k != 0 || report.gamma_fit.residual >= 0.1);
        if (!ok)
            ctx.fail(u64(k), std::string(kDiagonalMultiplier), map_inputs(t),
                     {{"op", true}, {"strongly_op", true}, {"iv", true}, {"v", true}, {"similarity", false}}, io::to_json(report));
        if (k == 0) ctx.summary()["fixed_case_gamma_residual"] = report.gamma_fit.residual;
    }
}

void suite_lemma48_thm410(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = require_full(cfg, square_full(3));
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const Eigen::Index p = shape.m + extra_rows(rng);
        const bool control = k % 5 == 4;
        std::optional<gen::GeneratedMap> g;
        const MapUnderTest t = control ? gen::generic_left_mult(rng, shape, p) : (g = gen::op_a_linear_map(rng, shape, p))->map;
        const auto report = verify_thm410(t, kInnerTrials, rng.next_u64(), 100, cfg.tol);
        if (report.falsified()) {
            ctx.fail(u64(k), "hypotheses_hold_conclusion_fails", map_inputs(t), {{"conclusions", true}},
                     io::to_json(report));
            continue;
        }
        if (control) {
            ctx.count(report.hypotheses_hold() ? "control_survivors" : "controls_rejected");
            continue;
        }
        // gamma from a single matrix unit: |T E_11|^2 / |E_11|^2.
        ComplexMatrix unit = ComplexMatrix::Zero(shape.m, shape.n());
        unit(0, 0) = 1.0;
        const ModuleElement e11(shape, unit);
        const double gamma_unit = std::pow(mod_norm(t(e11)), 2);
        const bool gamma_ok = std::abs(report.fit.gamma - gamma_unit) <= 1e-8 * gamma_unit &&
                              std::abs(report.fit.gamma - g->gamma) <= 1e-8 * g->gamma;
        if (!report.hypotheses_hold() || !report.conclusions_hold() || !gamma_ok) {
            io::json observed = io::to_json(report);
            observed["gamma_from_unit"] = gamma_unit;
            ctx.fail(u64(k), "local_preserver", map_inputs(t), {{"hypotheses", true}, {"gamma", g->gamma}}, observed);
        }
        ctx.count("local_preservers");
    }
}

void suite_cor411(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = require_full(cfg, square_full(3));
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const Eigen::Index p = shape.m + extra_rows(rng);
        const bool op_map = k % 2 == 0;
        const MapUnderTest t = op_map ? gen::op_a_linear_map(rng, shape, p).map : gen::generic_left_mult(rng, shape, p);
        const auto report = verify_cor411(t, kInnerTrials, rng.next_u64(), cfg.tol);
        if (!report.agree() || report.op.holds != op_map)
            ctx.fail(u64(k), op_map ? "isometric_factor" : "generic_factor", map_inputs(t),
                     {{"op", op_map}, {"order", op_map}}, io::to_json(report));
        ctx.count(report.agree() ? "agreements" : "disagreements");
    }
}

void suite_remark42_search(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = require_full(cfg, square_full(2));
    struct Candidate {
        double score;
        int trial;
        io::json entry;
    };
    std::vector<Candidate> ranked;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const auto base = gen::orthogonal_module_pair(rng, shape);
        const int exponent = k % 7 == 6 ? -1 : rng.uniform_int(1, 8);
        const double eps = exponent < 0 ? 0.0 : std::pow(10.0, -exponent);
        const ModuleElement y = base.y + std::complex<double>(eps, 0.0) * gen::random_element(rng, shape);
        const double inner = mod_inner(base.x, y).norm();
        const double gate = cfg.tol.abs_tol + cfg.tol.rel_tol * mod_norm(base.x) * mod_norm(y);
        if (inner <= gate) {
            if (eps != 0.0) ctx.count("excluded_small_perturbation");
            else ctx.count("excluded_orthogonal");
            continue;
        }
        if (eps == 0.0) {
            ctx.fail(u64(k), "orthogonal_pair_not_excluded", {{"x", io::to_json(base.x)}, {"y", io::to_json(y)}},
                     {{"excluded", true}}, {{"inner_norm", inner}});
            continue;
        }
        // The a = -<y,x>/||y||^2 step lowers |x|^2 by at least ||<x,y>||^2 / ||y||^2. Below the
        // PSD slack no violation can be resolved, so such candidates say nothing.
        const double ny = mod_norm(y);
        const double nx = mod_norm(base.x);
        const double c_op = spectral_norm<double>(mod_inner(base.x, y));
        const double predicted = c_op * c_op / (ny * ny);
        if (predicted <= 100.0 * cfg.tol.psd_slack * std::max(1.0, nx * nx)) {
            ctx.count("below_resolution");
            continue;
        }
        const auto report = remark42_conditions(base.x, y, kInnerTrials, rng.next_u64(), cfg.tol);
        const double violation = report.max_violation[3];
        const double score = violation / inner;
        io::json entry = {{"trial", k},
                          {"epsilon", eps},
                          {"x", io::to_json(base.x)},
                          {"y", io::to_json(y)},
                          {"inner_norm", inner},
                          {"max_violation", violation},
                          {"score", score}};
        if (report.no_violation[3]) {
            entry["label"] = "candidate for expert review";
            ctx.count("unrefuted_candidates");
        } else {
            ctx.count("refuted_candidates");
        }
        ranked.push_back({score, k, std::move(entry)});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) {
        return a.score != b.score ? a.score < b.score : a.trial < b.trial;
    });
    for (std::size_t i = 0; i < ranked.size() && i < 10; ++i) ctx.near_misses().push_back(ranked[i].entry);
}

void suite_triangle_inequality(SuiteContext& ctx, int trials) {
    const auto& cfg = ctx.config();
    const ModuleShape shape = module_or(cfg, square_full(2));
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(cfg.seed, u64(k));
        const ModuleElement x = gen::random_element(rng, shape);
        const ModuleElement y = gen::random_element(rng, shape);
        const Hermitian lhs = mod_abs(x + y, cfg.tol);
        const Hermitian rhs = mod_abs(x, cfg.tol) + mod_abs(y, cfg.tol);
        const double violation = -min_eigenvalue(rhs - lhs);
        // Well clear of rounding in the square roots.
        if (violation > 1e-6 * rhs.frobenius_norm()) {
            ctx.set_trials_run(k + 1);
            ctx.summary()["witness"] = {{"trial", k},
                                        {"x", io::to_json(x)},
                                        {"y", io::to_json(y)},
                                        {"abs_x_plus_y", io::to_json(lhs.matrix())},
                                        {"abs_x_plus_abs_y", io::to_json(rhs.matrix())},
                                        {"violation", violation}};
            return;
        }
    }
    ctx.fail(u64(trials), "no_witness", {{"budget", trials}}, {{"witness", true}}, {{"witness", nullptr}});
}

} // namespace angleguard
