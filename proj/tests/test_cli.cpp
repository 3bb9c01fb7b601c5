// Copyright 2026 The pcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcl_cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = pcl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliFiles : public ::testing::Test {
protected:
    std::filesystem::path dir;
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("pcl_cli_" + std::to_string(::getpid()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

TEST(Cli, Nu2) {
    const auto r = run({"nu2", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    EXPECT_EQ(run({"nu2", "14", "--method", "both"}).out, "44\n");
    EXPECT_EQ(run({"nu2", "14", "--method", "brute"}).out, "44\n");
    EXPECT_EQ(run({"nu2", "1"}).out, "0\n");
    EXPECT_EQ(run({"--format", "json", "nu2", "6"}).out, "{\"n\":6,\"method\":\"formula\",\"nu2\":6}\n");
}

TEST(Cli, Pairs) {
    const auto r = run({"pairs", "6"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("|A| = 16 = 6 + 4 + 5 + 1"), std::string::npos);
    EXPECT_NE(r.out.find("closed form agrees"), std::string::npos);

    const auto d = run({"pairs", "6", "--emit-diagrams"});
    EXPECT_NE(d.out.find("{1x3,3x1} x2 BE\n###\n#\n#\n#\n"), std::string::npos);

    const auto refused = run({"pairs", "5"});
    EXPECT_EQ(refused.code, 2);
    EXPECT_NE(refused.err.find("error[hypothesis]"), std::string::npos);
    const auto unsafe = run({"pairs", "5", "--unsafe"});
    EXPECT_EQ(unsafe.code, 0);
    EXPECT_NE(unsafe.out.find("closed form skipped"), std::string::npos);
}

TEST(Cli, VerifySingleN) {
    const auto unmet = run({"verify", "doublecount", "--n", "12"});
    EXPECT_EQ(unmet.code, 2);
    EXPECT_NE(unmet.out.find("hypotheses unmet"), std::string::npos);
    EXPECT_EQ(unmet.err.find('\n'), unmet.err.size() - 1);

    const auto ok = run({"verify", "thm-main", "--n", "14"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("holds"), std::string::npos);
}

TEST(Cli, VerifyFamilyTextAndJsonAgree) {
    for (const std::string st : {"thm-main", "doublecount", "cor-odd", "cor-mod3", "sigma1-mod8"}) {
        const std::string fam = st == "cor-mod3" ? "72,42" : "16,14";
        const auto text = run({"verify", st, "--family", fam, "--n-max", "40"});
        const auto json = run({"--format", "json", "verify", st, "--family", fam, "--n-max", "40"});
        EXPECT_EQ(text.code, 0) << st << text.err;
        EXPECT_EQ(json.code, text.code);
        std::istringstream lines(json.out), text_lines(text.out);
        std::string jl, tl;
        int count = 0;
        while (std::getline(lines, jl) && std::getline(text_lines, tl)) {
            const auto report = pcl::report_from_json(nlohmann::ordered_json::parse(jl));
            EXPECT_EQ(pcl::format_text(report), tl);
            ++count;
        }
        EXPECT_EQ(count, 41);
    }
}

TEST(Cli, ScanFamilyExitCodes) {
    const auto pass = run({"scan", "family", "--family", "16,14", "--n-limit", "20000"});
    EXPECT_EQ(pass.code, 0);
    EXPECT_NE(pass.out.find("all_pass=true"), std::string::npos);

    const auto fail = run({"scan", "family", "--family", "4,2", "--n-limit", "100"});
    EXPECT_EQ(fail.code, 1);
    EXPECT_NE(fail.out.find("counterexample N=2 S_mod4=1"), std::string::npos);

    const auto conj = run({"--format", "csv", "scan", "conjecture-16n6", "--n-limit", "20000"});
    EXPECT_EQ(conj.code, 0);
    EXPECT_NE(conj.out.find("\n16,6,1249,1250,0,true\n"), std::string::npos);
}

TEST(Cli, UsageAndResourceErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nu2"}).code, 2);
    EXPECT_EQ(run({"nu2", "7", "--method", "guess"}).code, 2);
    EXPECT_EQ(run({"verify", "thm-main"}).code, 2);
    EXPECT_EQ(run({"scan", "family", "--family", "4"}).code, 2);
    EXPECT_EQ(run({"scan", "family", "--family", "4,9"}).code, 2);
    const auto big = run({"nu2", "6000", "--method", "brute"});
    EXPECT_EQ(big.code, 3);
    EXPECT_NE(big.err.find("error[resource]"), std::string::npos);
    EXPECT_EQ(run({"sieve", "--limit", "200000000"}).code, 3);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("PCL_MAX_MEMORY"), std::string::npos);
}

TEST_F(CliFiles, SieveDumpIsReusable) {
    const auto dump = file("s.bin");
    EXPECT_EQ(run({"sieve", "--limit", "5000", "--out", dump}).code, 0);
    EXPECT_EQ(run({"--sieve", dump, "nu2", "14"}).out, "44\n");
    EXPECT_EQ(run({"--sieve", dump, "verify", "thm-main", "--n", "9000"}).code, 2);
}

TEST_F(CliFiles, PairScanResumeMatchesStraightRun) {
    const auto straight = file("straight.csv");
    ASSERT_EQ(run({"scan", "pairs", "--a-max", "24", "--n-limit", "30000", "--out", straight}).code, 0);

    const auto resumed = file("resumed.csv");
    const auto ckpt = file("resumed.ckpt");
    auto first = run({"--jobs", "3", "scan", "pairs", "--a-max", "24", "--n-limit", "30000", "--out", resumed,
                      "--checkpoint", ckpt, "--stop-after-pairs", "50"});
    EXPECT_EQ(first.code, 3);
    EXPECT_NE(first.err.find("--resume"), std::string::npos);
    int rounds = 0;
    Result r;
    do {
        r = run({"scan", "pairs", "--a-max", "24", "--n-limit", "30000", "--out", resumed, "--resume", ckpt,
                 "--stop-after-pairs", "60"});
        ++rounds;
    } while (r.code == 3 && rounds < 20);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(slurp(resumed), slurp(straight));

    EXPECT_EQ(run({"scan", "pairs", "--a-max", "25", "--n-limit", "30000", "--resume", ckpt}).code, 2);
}

TEST_F(CliFiles, PairScanFailureDetail) {
    const auto failures = file("f.jsonl");
    const auto r = run({"--format", "json", "scan", "pairs", "--a-max", "3", "--n-limit", "100", "--failures",
                        failures});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"a_max\":3,\"n_limit\":100,\"passing_pairs\":[],\"structural_check\":true}\n");
    const std::string detail = slurp(failures);
    EXPECT_EQ(std::count(detail.begin(), detail.end(), '\n'), 5);
    EXPECT_NE(detail.find(R"({"A":3,"B":1,"N":4,"S_mod4":2})"), std::string::npos);
}

}  // namespace
