#pragma once

// Named verification suites, the instance generators exposed by the CLI, and
// the report format. Every trial draws from Rng::for_trial(seed, trial), so a
// rerun with the same configuration reproduces the failure list exactly.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "angleguard/linalg.hpp"
#include "angleguard/module.hpp"
#include "angleguard/random.hpp"
#include "angleguard/serialize.hpp"

namespace angleguard {

struct SuiteConfig {
    std::string suite;
    int dim = 0;                       // real suites; 0 draws a dimension in 2..8 per trial
    std::optional<ModuleShape> module; // module suites; unset uses the suite default
    int trials = 0;                    // 0 uses the suite default
    std::uint64_t seed = 42;
    ToleranceConfig tol;
    std::optional<std::string> out_path;

    io::json to_json() const;
};

struct SuiteFailure {
    std::uint64_t trial = 0;
    std::string case_id;
    io::json inputs;
    io::json expected;
    io::json observed;
};

struct SuiteReport {
    std::string suite;
    std::string statement;
    io::json config;
    std::string started;
    std::string finished;
    int trials_run = 0;
    std::vector<SuiteFailure> failures;
    io::json near_misses = io::json::array(); // search suites only
    io::json summary = io::json::object();

    bool pass() const { return failures.empty(); }
    io::json to_json() const;
};

/// Collects failures and counters while a suite runs.
class SuiteContext {
public:
    explicit SuiteContext(const SuiteConfig& config) : config_(config) {}

    const SuiteConfig& config() const { return config_; }
    void fail(std::uint64_t trial, std::string case_id, io::json inputs, io::json expected, io::json observed);
    void count(const std::string& key, int by = 1);
    io::json& summary() { return summary_; }
    io::json& near_misses() { return near_misses_; }
    void set_trials_run(int n) { trials_run_ = n; }

    std::vector<SuiteFailure> take_failures();
    int trials_run() const { return trials_run_; }

private:
    const SuiteConfig& config_;
    std::vector<SuiteFailure> failures_;
    io::json summary_ = io::json::object();
    io::json near_misses_ = io::json::array();
    int trials_run_ = 0;
};

struct SuiteInfo {
    std::string_view name;
    std::string_view statement; // the statement under test, in words
    int default_trials;
    std::function<void(SuiteContext&, int trials)> run;
};

const std::vector<SuiteInfo>& suite_registry();
/// Throws a usage error for unknown names.
const SuiteInfo& find_suite(std::string_view name);

SuiteReport run_suite(const SuiteConfig& config);

/// Dimension for one trial of a real suite: config.dim, or 2..8 drawn from rng.
Eigen::Index trial_dim(const SuiteConfig& config, Rng& rng);
ModuleShape module_or(const SuiteConfig& config, ModuleShape fallback);

// Suite bodies, grouped by the space they act on.
void suite_prop31(SuiteContext& ctx, int trials);
void suite_thm35(SuiteContext& ctx, int trials);
void suite_example36(SuiteContext& ctx, int trials);
void suite_cor37(SuiteContext& ctx, int trials);
void suite_thm38(SuiteContext& ctx, int trials);
void suite_lemma41(SuiteContext& ctx, int trials);
void suite_thm43(SuiteContext& ctx, int trials);
void suite_thm44(SuiteContext& ctx, int trials);
void suite_remark45(SuiteContext& ctx, int trials);
void suite_thm46(SuiteContext& ctx, int trials);
void suite_example47(SuiteContext& ctx, int trials);
void suite_lemma48_thm410(SuiteContext& ctx, int trials);
void suite_cor411(SuiteContext& ctx, int trials);
void suite_remark42_search(SuiteContext& ctx, int trials);
void suite_triangle_inequality(SuiteContext& ctx, int trials);

struct GenerateParams {
    std::string kind;
    int dim = 3;
    std::optional<ModuleShape> module;
    std::uint64_t seed = 42;
    std::optional<double> theta;
    std::optional<double> gamma;
    std::optional<std::string> tag;
    std::vector<double> f0; // diagonal multiplier entries
};

inline constexpr std::array<std::string_view, 10> kGeneratorKinds = {
    "unit_vector",           "equal_norm_pair",     "angle_theta_pair",      "similarity_map",
    "random_linear_map",     "orthogonal_module_pair", "ordered_module_pair", "equal_modulus_pair",
    "op_a_linear_map",       "counterexample"};

/// Serialized instance; unknown kinds and tags are usage errors.
io::json generate(const GenerateParams& params);

} // namespace angleguard
