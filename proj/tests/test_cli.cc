// Copyright 2026 The AnsatzForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "ansatzforge/error.h"
#include "ansatzforge/report.h"
#include "test_util.h"

namespace ansatzforge {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string &args) {
    const std::string cmd = std::string(ANSATZFORGE_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ansatzforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string sub(const std::string &name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

TEST_F(CliTest, PoolReportsGroupCount) {
    auto r = cli("pool --bundle " + testing::fixture("lih_1.50.json") + " --out-dir " + sub("p"));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("25 groups"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(sub("p/pool_uccsd_lih_1.50.csv")));
}

TEST_F(CliTest, FciIsByteIdenticalAcrossRuns) {
    const std::string b = " --bundle " + testing::fixture("h2o_1.00.json");
    ASSERT_EQ(cli("fci" + b + " --out-dir " + sub("a")).code, 0);
    ASSERT_EQ(cli("fci" + b + " --out-dir " + sub("b")).code, 0);
    const auto a = read_file(sub("a/fci_h2o_1.00.json")), c = read_file(sub("b/fci_h2o_1.00.json"));
    EXPECT_EQ(a, c);
    EXPECT_EQ(a.find("wall"), std::string::npos);
}

TEST_F(CliTest, SeededSearchIsByteIdentical) {
    const std::string args = "global --bundle " + testing::fixture("h4_0.80.json") +
                             " -L 3 --epochs 30 --restarts 2 --batch 8 --seed 5 --out-dir ";
    auto r1 = cli(args + sub("a"));
    auto r2 = cli(args + sub("b"));
    ASSERT_EQ(r1.code, 0) << r1.out;
    ASSERT_EQ(r2.code, 0) << r2.out;
    EXPECT_EQ(read_file(sub("a/global_h4_0.80_L3.json")), read_file(sub("b/global_h4_0.80_L3.json")));
    EXPECT_EQ(read_file(sub("a/global_h4_0.80_L3_trace.csv")), read_file(sub("b/global_h4_0.80_L3_trace.csv")));
    const auto json = read_file(sub("a/global_h4_0.80_L3.json"));
    EXPECT_NE(json.find("\"seed\": 5"), std::string::npos);
    EXPECT_NE(json.find("\"epochs\": 30"), std::string::npos);
    EXPECT_NE(r1.out.find("wall="), std::string::npos);
    EXPECT_EQ(structure_from_result(json).size(), 3u);
}

TEST_F(CliTest, LayerwiseAndAdaptWriteTheirTables) {
    const std::string b = " --bundle " + testing::fixture("h4_1.00.json");
    auto lw = cli("layerwise" + b + " -L 4 --window 3 --slide 2 --epochs 10 --restarts 1 --out-dir " + sub("o"));
    ASSERT_EQ(lw.code, 0) << lw.out;
    EXPECT_TRUE(fs::exists(sub("o/layerwise_h4_1.00_L4_steps.csv")));
    auto ad = cli("adapt" + b + " -L 3 --out-dir " + sub("o"));
    ASSERT_EQ(ad.code, 0) << ad.out;
    EXPECT_TRUE(fs::exists(sub("o/adapt_h4_1.00_L3_adapt.csv")));
    auto tr = cli("truncated" + b + " -L 3 --pool-flavor qeb --out-dir " + sub("o"));
    ASSERT_EQ(tr.code, 0) << tr.out;
    auto dc = cli("decompose" + b + " --a " + sub("o/adapt_h4_1.00_L3.json") + " --b " +
                  sub("o/layerwise_h4_1.00_L4.json") + " --out-dir " + sub("o"));
    ASSERT_EQ(dc.code, 0) << dc.out;
    EXPECT_TRUE(fs::exists(sub("o/delta_h4_1.00.csv")));
    for (const auto &entry : fs::directory_iterator(sub("o"))) {
        EXPECT_NE(entry.path().extension(), ".tmp");
    }
}

TEST_F(CliTest, SweepWritesCurve) {
    auto r = cli("sweep --method truncated --method adapt -L 2 --bundle " + testing::fixture("h4_0.80.json") +
                 " --bundle " + testing::fixture("h4_1.00.json") + " --out-dir " + sub("s"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto csv = read_file(sub("s/pec.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(cli("fci --bundle /nonexistent.json --out-dir " + sub("x")).code, 4);
    EXPECT_EQ(cli("pool --bundle " + testing::fixture("h2_0.74.json") + " --pool-flavor fermion").code, 2);
    EXPECT_EQ(cli("layerwise --bundle " + testing::fixture("h2_0.74.json") + " -L 2 --out-dir " + sub("x")).code, 2);
    EXPECT_EQ(cli("global --bundle " + testing::fixture("h2_0.74.json")).code, 2);
    write_file_atomic(sub("broken.json"), "{\"schema_version\": 1, \"name\": ");
    EXPECT_EQ(cli("fci --bundle " + sub("broken.json")).code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Report, AtomicWriteLeavesNoTemporary) {
    const auto dir = fs::temp_directory_path() / "ansatzforge_atomic";
    fs::remove_all(dir);
    write_file_atomic((dir / "x.txt").string(), "one");
    write_file_atomic((dir / "x.txt").string(), "two");
    EXPECT_EQ(read_file((dir / "x.txt").string()), "two");
    EXPECT_FALSE(fs::exists(dir / "x.txt.tmp"));
    fs::remove_all(dir);
    EXPECT_THROW(read_file((dir / "missing").string()), Error);
}

TEST(Report, StructureFromResult) {
    EXPECT_EQ(structure_from_result(R"({"structure": [3, 1, 4]})"), (std::vector<int>{3, 1, 4}));
    EXPECT_THROW(structure_from_result("{}"), Error);
}

}  // namespace
}  // namespace ansatzforge
