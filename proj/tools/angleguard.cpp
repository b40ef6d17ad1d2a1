// angleguard: run a verification suite, emit a generated instance, or list suites.
//
// Exit codes: 0 pass, 1 suite failure, 2 usage or invalid input, 3 I/O.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>

#include "angleguard/error.hpp"
#include "angleguard/suites.hpp"

namespace {

using namespace angleguard;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::optional<ModuleShape> parse_module(const std::string& text, const std::string& algebra) {
    if (text.empty() && algebra.empty()) return std::nullopt;
    Eigen::Index m = 3;
    Eigen::Index n = 3;
    if (!text.empty()) {
        static const std::regex pattern(R"((\d+)[xX](\d+))");
        std::smatch match;
        if (!std::regex_match(text, match, pattern)) fail(ErrorKind::usage, "--module expects MxN, e.g. 3x3");
        m = std::stol(match[1]);
        n = std::stol(match[2]);
    }
    ModuleShape shape{m, AlgebraSpec{n, algebra.empty() ? AlgebraKind::full : parse_algebra_kind(algebra)}};
    try {
        shape.validate();
    } catch (const Error& e) {
        fail(ErrorKind::usage, e.what());
    }
    return shape;
}

void emit(const io::json& j, const std::optional<std::string>& path) {
    const std::string text = j.dump(2) + "\n";
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path);
    if (!out || !(out << text) || !(out.flush())) throw std::ios_base::failure("cannot write '" + *path + "'");
}

int exit_code(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::usage:
    case ErrorKind::input:
    case ErrorKind::precondition:
        return kExitUsage;
    default:
        return kExitFailure;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampled verification of angle, orthogonality and modulus preservation"};
    app.require_subcommand(1);

    SuiteConfig run;
    std::string module_text;
    std::string algebra_text;
    std::optional<double> tol;
    std::string out_path;
    auto* run_cmd = app.add_subcommand("run", "Run a named suite and print its JSON report");
    run_cmd->add_option("--suite", run.suite, "Suite name (see list-suites)")->required();
    run_cmd->add_option("--dim", run.dim, "Dimension for real suites; 0 draws 2..8 per trial");
    run_cmd->add_option("--module", module_text, "Module shape MxN");
    run_cmd->add_option("--algebra", algebra_text, "Coefficient algebra")->check(CLI::IsMember({"full", "diagonal"}));
    run_cmd->add_option("--trials", run.trials, "Trials; 0 uses the suite default");
    run_cmd->add_option("--seed", run.seed, "Seed");
    run_cmd->add_option("--tol", tol, "Absolute, relative and PSD tolerance");
    run_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

    GenerateParams gen;
    std::string gen_module;
    std::string gen_algebra;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "Print a generated instance as JSON");
    gen_cmd->add_option("--kind", gen.kind, "Generator kind")->required();
    gen_cmd->add_option("--dim", gen.dim, "Dimension for real generators");
    gen_cmd->add_option("--module", gen_module, "Module shape MxN");
    gen_cmd->add_option("--algebra", gen_algebra, "Coefficient algebra")->check(CLI::IsMember({"full", "diagonal"}));
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--theta", gen.theta, "Angle in radians");
    gen_cmd->add_option("--gamma", gen.gamma, "Similarity constant");
    gen_cmd->add_option("--tag", gen.tag, "Counterexample tag");
    gen_cmd->add_option("--f0", gen.f0, "Diagonal multiplier entries")->delimiter(',');
    gen_cmd->add_option("--out", gen_out, "Write the instance here instead of stdout");

    auto* list_cmd = app.add_subcommand("list-suites", "List suite names and default trial counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*list_cmd) {
            for (const auto& s : suite_registry())
                std::cout << s.name << "\t" << s.default_trials << "\t" << s.statement << "\n";
            return kExitPass;
        }
        if (*gen_cmd) {
            gen.module = parse_module(gen_module, gen_algebra);
            emit(generate(gen), gen_out.empty() ? std::nullopt : std::optional<std::string>(gen_out));
            return kExitPass;
        }
        run.module = parse_module(module_text, algebra_text);
        if (tol) run.tol = ToleranceConfig{*tol, *tol, *tol};
        if (!out_path.empty()) run.out_path = out_path;
        const SuiteReport report = run_suite(run);
        emit(report.to_json(), run.out_path);
        if (!report.pass()) std::cerr << report.suite << ": " << report.failures.size() << " failure(s)\n";
        return report.pass() ? kExitPass : kExitFailure;
    } catch (const Error& e) {
        std::cerr << "angleguard: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "angleguard: io-error: " << e.what() << "\n";
        return kExitIo;
    }
}
