#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "support.hpp"

using wsnsim::testing::read_file;
using wsnsim::testing::scenario_dir;
using wsnsim::testing::temp_dir;

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(WSNSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string scenario(const char* name) { return (scenario_dir() / name).string(); }

}  // namespace

TEST(Cli, ValidateOk) {
    EXPECT_EQ(cli("validate --scenario " + scenario("canonical.json")), 0);
    const auto dir = temp_dir("cli_validate");
    const std::string cmd = std::string(WSNSIM_CLI_PATH) + " validate --scenario " + scenario("minimal.json") +
                            " > " + (dir / "out.txt").string();
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_EQ(read_file(dir / "out.txt"), "OK\n");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli(""), 1);
    EXPECT_EQ(cli("run --out /tmp/x"), 1);
    EXPECT_EQ(cli("run --scenario " + scenario("minimal.json") + " --out /tmp/x --bogus"), 1);
    EXPECT_EQ(cli("frobnicate"), 1);
}

TEST(Cli, ValidationAndIoErrors) {
    const auto dir = temp_dir("cli_errors");
    wsnsim::write_text_file(dir / "bad.json", "{ \"world\": { \"width\": 1, \"height\": 1 } }");
    EXPECT_EQ(cli("validate --scenario " + (dir / "bad.json").string()), 1);
    EXPECT_EQ(cli("validate --scenario " + (dir / "missing.json").string()), 2);
    wsnsim::write_text_file(dir / "blocker", "x");
    EXPECT_EQ(cli("run --scenario " + scenario("minimal.json") + " --out " + (dir / "blocker" / "out").string()), 2);
}

TEST(Cli, RunTwiceIsByteIdentical) {
    const auto a = temp_dir("cli_run_a");
    const auto b = temp_dir("cli_run_b");
    ASSERT_EQ(cli("run --scenario " + scenario("canonical.json") + " --seed 42 --out " + (a / "new").string()), 0);
    ASSERT_EQ(cli("run --scenario " + scenario("canonical.json") + " --seed 42 --out " + (b / "new").string()), 0);
    for (const char* f : {"timeseries.csv", "events.csv", "summary.csv"}) {
        const auto x = read_file(a / "new" / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, read_file(b / "new" / f)) << f;
    }
}

TEST(Cli, CompareWritesTable) {
    const auto dir = temp_dir("cli_compare");
    ASSERT_EQ(cli("compare --scenario " + scenario("minimal.json") + " --seeds 1,2,3 --out " + dir.string()), 0);
    const auto csv = read_file(dir / "compare.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
