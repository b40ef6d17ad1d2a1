#include "angleguard/suites.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "angleguard/error.hpp"
#include "angleguard/generators.hpp"
#include "angleguard/random.hpp"

namespace angleguard {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

io::json tolerance_json(const ToleranceConfig& tol) {
    return {{"abs_tol", tol.abs_tol}, {"rel_tol", tol.rel_tol}, {"psd_slack", tol.psd_slack}};
}

} // namespace

io::json SuiteConfig::to_json() const {
    io::json j = {{"suite", suite}, {"dim", dim}, {"trials", trials}, {"seed", seed}, {"tol", tolerance_json(tol)}};
    j["module"] = module ? io::to_json(*module) : io::json(nullptr);
    j["out"] = out_path ? io::json(*out_path) : io::json(nullptr);
    return j;
}

io::json SuiteReport::to_json() const {
    io::json failures_json = io::json::array();
    for (const auto& f : failures) {
        failures_json.push_back({{"trial", f.trial},
                                 {"case_id", f.case_id},
                                 {"inputs", f.inputs},
                                 {"expected", f.expected},
                                 {"observed", f.observed}});
    }
    return {{"suite", suite},
            {"paper_statement", statement},
            {"algorithm", std::string(Rng::algorithm)},
            {"config", config},
            {"started", started},
            {"finished", finished},
            {"pass", pass()},
            {"trials_run", trials_run},
            {"failures", failures_json},
            {"near_misses", near_misses},
            {"summary", summary}};
}

void SuiteContext::fail(std::uint64_t trial, std::string case_id, io::json inputs, io::json expected,
                        io::json observed) {
    failures_.push_back({trial, std::move(case_id), std::move(inputs), std::move(expected), std::move(observed)});
}

void SuiteContext::count(const std::string& key, int by) {
    summary_[key] = summary_.value(key, 0) + by;
}

std::vector<SuiteFailure> SuiteContext::take_failures() {
    std::stable_sort(failures_.begin(), failures_.end(),
                     [](const SuiteFailure& a, const SuiteFailure& b) { return a.trial < b.trial; });
    return std::move(failures_);
}

const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> registry = {
        {"prop31",
         "For x, y of equal norm, linearly independent, and theta in (0, pi) other than their angle, the scalar "
         "lambda = -(<x,y> - cot(theta) sqrt(|x|^4 - <x,y>^2)) / |x|^2 puts both x + lambda y and y + lambda x at "
         "angle theta to y and x; at theta = pi/2 it is -<x,y>/|x|^2, and mu = sign<x,y> makes x + mu y and "
         "x - mu y orthogonal",
         10000, suite_prop31},
        {"thm35",
         "A nonzero linear map between real inner product spaces is a similarity iff it preserves cosines, iff it "
         "preserves orthogonality (both ways or forward), iff it preserves equality of norms (both ways or "
         "forward), iff it preserves the order of norms",
         2000, suite_thm35},
        {"example36", "The nonlinear map T(x) = |x|^2 x keeps equal norms equal but is not a similarity", 1000,
         suite_example36},
        {"cor37",
         "Two inner products on one real space share orthogonality, or equality of norms, iff "
         "|x|_2 = gamma |x|_1 for some gamma > 0",
         2000, suite_cor37},
        {"thm38",
         "An injective linear map that preserves the angle theta in (0, pi) both ways, and equal norms at angle "
         "theta, is a similarity",
         1000, suite_thm38},
        {"lemma41",
         "In an inner product module, <x,y> = 0 iff <xb,ya> = 0 for all a, b, iff |x+ya| = |x-ya| for all a, "
         "iff |x+lambda y| = |x-lambda y| for all complex lambda",
         1000, suite_lemma41},
        {"thm43", "A nonzero linear map with |x| = |y| => |Tx| = |Ty| preserves orthogonality", 2400, suite_thm43},
        {"thm44", "A nonzero module-linear map with |x| <= |y| => |Tx| <= |Ty| preserves orthogonality", 2400,
         suite_thm44},
        {"remark45",
         "On M_2(C) as a module over itself, a linear map with |A| <= |B| => |TA| <= |TB| preserves "
         "orthogonality, without module linearity",
         1000, suite_remark45},
        {"thm46",
         "For a nonzero module-linear map, being a similarity is equivalent to injective preservation of the "
         "normalized inner product, and implies strong orthogonality preservation and preservation of equality "
         "and order of moduli",
         600, suite_thm46},
        {"example47",
         "Multiplication by a nonzero function f0 on a commutative algebra preserves orthogonality and equality "
         "and order of moduli but is not a similarity unless |f0| is constant",
         100, suite_example47},
        {"lemma48_thm410",
         "Over an algebra containing the compact operators, a local nonzero orthogonality preserving map "
         "satisfies <Tx,Ty> = gamma <x,y>, hence preserves equality and order of moduli",
         1250, suite_lemma48_thm410},
        {"cor411",
         "Over an algebra containing the compact operators, a nonzero module-linear map preserves orthogonality "
         "iff |x| <= |y| => |Tx| <= |Ty|",
         2400, suite_cor411},
        {"remark42_search",
         "Open question: whether |x| <= |x + lambda y| for all complex lambda forces <x,y> = 0. Search only",
         200, suite_remark42_search},
        {"triangle_inequality_witness", "The module-valued modulus |x| does not satisfy the triangle inequality",
         100000, suite_triangle_inequality},
    };
    return registry;
}

const SuiteInfo& find_suite(std::string_view name) {
    for (const auto& s : suite_registry())
        if (s.name == name) return s;
    fail(ErrorKind::usage, "unknown suite '" + std::string(name) + "'");
}

Eigen::Index trial_dim(const SuiteConfig& config, Rng& rng) {
    if (config.dim > 0) return config.dim;
    return rng.uniform_int(2, 8);
}

ModuleShape module_or(const SuiteConfig& config, ModuleShape fallback) {
    return config.module ? *config.module : fallback;
}

SuiteReport run_suite(const SuiteConfig& config) {
    const SuiteInfo& info = find_suite(config.suite);
    if (config.trials < 0) fail(ErrorKind::usage, "trials must be >= 1");
    if (config.dim < 0 || config.dim == 1)
        fail(ErrorKind::usage, "angle suites need dim >= 2 (a line has only parallel vectors)");
    try {
        config.tol.validate();
        if (config.module) config.module->validate();
    } catch (const Error& e) {
        fail(ErrorKind::usage, e.what());
    }

    SuiteConfig effective = config;
    if (effective.trials == 0) effective.trials = info.default_trials;

    SuiteReport report;
    report.suite = std::string(info.name);
    report.statement = std::string(info.statement);
    report.config = effective.to_json();
    report.started = utc_now();
    SuiteContext ctx(effective);
    ctx.set_trials_run(effective.trials);
    info.run(ctx, effective.trials);
    report.finished = utc_now();
    report.trials_run = ctx.trials_run();
    report.failures = ctx.take_failures();
    report.near_misses = std::move(ctx.near_misses());
    report.summary = std::move(ctx.summary());
    return report;
}

io::json generate(const GenerateParams& p) {
    Rng rng(p.seed);
    const auto dim = static_cast<Eigen::Index>(p.dim);
    const auto need_dim = [&](int lo) {
        if (p.dim < lo) fail(ErrorKind::usage, "this generator needs dim >= " + std::to_string(lo));
    };
    const ModuleShape shape = p.module ? *p.module : ModuleShape{3, AlgebraSpec{3, AlgebraKind::full}};
    shape.validate();
    io::json out = {{"kind", p.kind}, {"seed", p.seed}, {"algorithm", std::string(Rng::algorithm)}};

    if (p.kind == "unit_vector") {
        need_dim(1);
        out["x"] = io::to_json(gen::unit_vector(rng, dim));
    } else if (p.kind == "equal_norm_pair") {
        need_dim(1);
        const auto w = gen::equal_norm_pair(rng, dim);
        out["x"] = io::to_json(w.x);
        out["y"] = io::to_json(w.y);
    } else if (p.kind == "angle_theta_pair") {
        need_dim(2);
        const double theta = p.theta.value_or(std::numbers::pi / 3.0);
        const Angle checked(theta);
        const auto w = gen::angle_theta_pair(rng, dim, checked.radians(), true);
        out["theta"] = theta;
        out["x"] = io::to_json(w.x);
        out["y"] = io::to_json(w.y);
    } else if (p.kind == "similarity_map") {
        need_dim(1);
        const double gamma = p.gamma.value_or(rng.uniform(0.5, 3.0));
        out["gamma"] = gamma;
        out["map"] = io::to_json(gen::similarity_map(rng, dim, dim, gamma));
    } else if (p.kind == "random_linear_map") {
        need_dim(1);
        out["map"] = io::to_json(gen::random_linear_map(rng, dim, dim));
    } else if (p.kind == "orthogonal_module_pair" || p.kind == "ordered_module_pair" ||
               p.kind == "equal_modulus_pair") {
        const auto pair = p.kind == "orthogonal_module_pair" ? gen::orthogonal_module_pair(rng, shape)
                          : p.kind == "ordered_module_pair"  ? gen::ordered_module_pair(rng, shape)
                                                              : gen::equal_modulus_pair(rng, shape);
        out["x"] = io::to_json(pair.x);
        out["y"] = io::to_json(pair.y);
    } else if (p.kind == "op_a_linear_map") {
        const auto g = gen::op_a_linear_map(rng, shape, shape.m);
        out["gamma"] = g.gamma;
        out["map"] = io::to_json(g.map);
    } else if (p.kind == "counterexample") {
        if (!p.tag) fail(ErrorKind::usage, "counterexample needs --tag");
        if (*p.tag == kNonlinearNormCube) {
            need_dim(1);
            out["tag"] = *p.tag;
            out["map"] = {{"kind", "named_counterexample"}, {"tag", *p.tag}, {"formula", "T(x) = |x|^2 x"}, {"dim", p.dim}};
        } else if (*p.tag == kDiagonalMultiplier) {
            Eigen::VectorXcd f0;
            if (!p.f0.empty()) {
                f0.resize(static_cast<Eigen::Index>(p.f0.size()));
                for (std::size_t k = 0; k < p.f0.size(); ++k) f0(static_cast<Eigen::Index>(k)) = p.f0[k];
            } else {
                need_dim(1);
                f0.resize(dim);
                for (Eigen::Index k = 0; k < dim; ++k) f0(k) = static_cast<double>(k + 1);
            }
            out["tag"] = *p.tag;
            out["map"] = io::to_json(MapUnderTest::diagonal_multiplier(f0));
        } else if (*p.tag == kEntrywiseConjugation) {
            out["tag"] = *p.tag;
            out["map"] = io::to_json(MapUnderTest::entrywise_conjugation(shape));
        } else {
            fail(ErrorKind::usage, "unknown counterexample tag '" + *p.tag + "'");
        }
    } else {
        fail(ErrorKind::usage, "unknown generator kind '" + p.kind + "'");
    }
    return out;
}

} // namespace angleguard
