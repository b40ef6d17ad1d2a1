#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kBin = ANGLEGUARD_BIN;
const std::string kTmp = ANGLEGUARD_TMP;

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
    const std::string cmd = "\"" + kBin + "\" " + args + " > \"" + stdout_path + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

} // namespace

TEST(Cli, PassingSuiteExitsZeroAndReportsJson) {
    const std::string path = kTmp + "/cli_pass.json";
    EXPECT_EQ(run("run --suite prop31 --trials 20 --seed 3", path), 0);
    const auto j = read_json(path);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["suite"], "prop31");
    EXPECT_TRUE(j.contains("paper_statement"));
    EXPECT_TRUE(j.contains("algorithm"));
}

TEST(Cli, FailingSuiteExitsOne) {
    const std::string path = kTmp + "/cli_fail.json";
    EXPECT_EQ(run("run --suite prop31 --trials 200 --tol 0", path), 1);
    EXPECT_FALSE(read_json(path)["failures"].empty());
}

TEST(Cli, OutFileMatchesStdout) {
    const std::string out = kTmp + "/cli_out.json";
    const std::string stdout_path = kTmp + "/cli_stdout.json";
    std::remove(out.c_str());
    EXPECT_EQ(run("run --suite lemma41 --trials 10 --out \"" + out + "\"", stdout_path), 0);
    auto a = read_json(out);
    EXPECT_EQ(run("run --suite lemma41 --trials 10", stdout_path), 0);
    auto b = read_json(stdout_path);
    for (auto* j : {&a, &b}) {
        j->erase("started");
        j->erase("finished");
        (*j)["config"].erase("out");
    }
    EXPECT_EQ(a, b);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("run"), 2);
    EXPECT_EQ(run("run --suite nope"), 2);
    EXPECT_EQ(run("run --suite prop31 --dim 1"), 2);
    EXPECT_EQ(run("run --suite thm43 --module 3by3"), 2);
    EXPECT_EQ(run("run --suite thm43 --algebra sparse"), 2);
    EXPECT_EQ(run("run --suite example47 --algebra full"), 2);
    EXPECT_EQ(run("generate --kind nope"), 2);
    EXPECT_EQ(run("generate --kind counterexample --tag nope"), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, UnwritableOutExitsThree) {
    EXPECT_EQ(run("run --suite prop31 --trials 5 --out /nonexistent-dir/r.json"), 3);
    EXPECT_EQ(run("generate --kind unit_vector --out /nonexistent-dir/r.json"), 3);
}

TEST(Cli, GenerateAndListSuites) {
    const std::string path = kTmp + "/cli_gen.json";
    EXPECT_EQ(run("generate --kind counterexample --tag diagonal_multiplier --f0 1,2", path), 0);
    const auto j = read_json(path);
    EXPECT_EQ(j["tag"], "diagonal_multiplier");
    const std::string list = kTmp + "/cli_list.txt";
    EXPECT_EQ(run("list-suites", list), 0);
    std::ifstream in(list);
    std::stringstream ss;
    ss << in.rdbuf();
    for (const char* name : {"prop31", "cor411", "remark42_search", "triangle_inequality_witness"})
        EXPECT_NE(ss.str().find(name), std::string::npos) << name;
}
