// Copyright 2026 The qlocc Authors
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

#include "qlocc/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qlocc {
namespace {

const std::string kDir = QLOCC_SOURCE_DIR "/protocols/";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines_starting(const std::string &text, const std::string &prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
        n += line.rfind(prefix, 0) == 0 ? 1 : 0;
    }
    return n;
}

std::string temp_file(const std::string &name, const std::string &text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

TEST(CliTest, VerifyTeleportPasses) {
    Result r = cli({"verify", "teleport", "--trials", "20", "--seed", "7", "--tol", "1e-9"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(count_lines_starting(r.out, "PASS"), 24u);
    EXPECT_EQ(count_lines_starting(r.out, "FAIL"), 0u);
    EXPECT_NE(r.out.find("teleport: 24/24 passed"), std::string::npos);
}

TEST(CliTest, VerifyDenseCodingPrintsFourRows) {
    Result r = cli({"verify", "densecode"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(count_lines_starting(r.out, "PASS"), 4u);
    for (const char *row : {"a0=0 a1=0", "a0=0 a1=1", "a0=1 a1=0", "a0=1 a1=1"}) {
        EXPECT_NE(r.out.find(row), std::string::npos) << row;
    }
}

TEST(CliTest, VerifyFilteredDenseCoding) {
    Result r = cli({"verify", "densecode", "--a0", "1"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(count_lines_starting(r.out, "PASS"), 2u);
}

TEST(CliTest, VerifyShippedFiles) {
    Result t = cli({"verify", kDir + "teleport.qp", "--trials", "3"});
    EXPECT_EQ(t.code, kExitPass) << t.out << t.err;
    EXPECT_EQ(count_lines_starting(t.out, "PASS"), 7u);
    Result d = cli({"verify", kDir + "densecode.qp"});
    EXPECT_EQ(d.code, kExitPass) << d.out << d.err;
    EXPECT_EQ(count_lines_starting(d.out, "PASS"), 4u);
}

TEST(CliTest, VerifySingleInput) {
    Result r = cli({"verify", "teleport", "--alpha", "0.6,0", "--beta", "0,0.8"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(count_lines_starting(r.out, "PASS"), 1u);
}

TEST(CliTest, BrokenProtocolFileIsASpecFailure) {
    std::string text;
    {
        std::ifstream in(kDir + "teleport.qp");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    auto at = text.find("apply Z q2");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 10, "ok");
    Result r = cli({"verify", temp_file("qlocc_cli_mutant.qp", text), "--trials", "0"});
    EXPECT_EQ(r.code, kExitUsage);  // --trials must be at least 1
    r = cli({"verify", temp_file("qlocc_cli_mutant.qp", text), "--trials", "1"});
    EXPECT_EQ(r.code, kExitSpecFailure);
    EXPECT_GE(count_lines_starting(r.out, "FAIL"), 1u);
}

TEST(CliTest, UsageErrorsExitTwo) {
    EXPECT_EQ(cli({"run", "missing.qp"}).code, kExitUsage);
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "teleport", "--tol", "-1"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "teleport", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "teleport", "--alpha", "1,0"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "teleport", "--alpha", "1,0", "--beta", "1,0"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "teleport", "--alpha", "x", "--beta", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "densecode", "--a0", "2"}).code, kExitUsage);
}

TEST(CliTest, ParseErrorsReportPosition) {
    std::string path = temp_file("qlocc_cli_bad.qp", "protocol p\nparty A\nqubits 1\nowns A q0\nA: apply T q0\n");
    Result r = cli({"run", path});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("line 5, column 10: unknown gate 'T'"), std::string::npos) << r.err;
}

TEST(CliTest, RuntimeFailureExitsOne) {
    std::string path = temp_file("qlocc_cli_own.qp",
                                 "protocol p\nparty A\nparty B\nqubits 1\nowns A q0\nB: apply X q0\n");
    Result r = cli({"run", path});
    EXPECT_EQ(r.code, kExitSpecFailure);
    EXPECT_NE(r.err.find("B: apply X q0"), std::string::npos) << r.err;
}

TEST(CliTest, RunListsSortedBranches) {
    Result r = cli({"run", kDir + "teleport.qp"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(r.out.rfind("teleport: 4 branches\n", 0), 0u) << r.out;
    EXPECT_EQ(count_lines_starting(r.out, "0.250000  a0="), 4u);
    auto p00 = r.out.find("a0=0  a1=0");
    auto p01 = r.out.find("a0=0  a1=1");
    auto p10 = r.out.find("a0=1  a1=0");
    auto p11 = r.out.find("a0=1  a1=1");
    EXPECT_LT(p00, p01);
    EXPECT_LT(p01, p10);
    EXPECT_LT(p10, p11);
    EXPECT_EQ(r.out.find("-0.000000"), std::string::npos);
}

TEST(CliTest, RunIsByteIdenticalAcrossRepeats) {
    for (const char *file : {"teleport.qp", "densecode.qp"}) {
        Result a = cli({"run", kDir + file, "--seed", "3"});
        Result b = cli({"run", kDir + file, "--seed", "3"});
        EXPECT_EQ(a.out, b.out);
        Result ja = cli({"run", kDir + file, "--format", "json"});
        Result jb = cli({"run", kDir + file, "--format", "json"});
        EXPECT_EQ(ja.out, jb.out);
    }
}

TEST(CliTest, RunJson) {
    Result r = cli({"run", kDir + "densecode.qp", "--a0", "0", "--a1", "1", "--format", "json"});
    ASSERT_EQ(r.code, kExitPass);
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["protocol"], "densecode");
    ASSERT_EQ(doc["branches"].size(), 1u);
    auto b = doc["branches"][0];
    EXPECT_DOUBLE_EQ(b["prob"].get<double>(), 1.0);
    EXPECT_EQ(b["vars"]["b0"], 0);
    EXPECT_EQ(b["vars"]["b1"], 1);
    EXPECT_EQ(b["q"], 1);
    EXPECT_EQ(b["c"], 0);
    EXPECT_EQ(b["qubit_owner"][0], "Bob");
    EXPECT_EQ(b["state"].size(), 4u);
    EXPECT_EQ(b["state"][1][0], 1.0);
}

TEST(CliTest, VerifyJsonMirrorsReport) {
    Result r = cli({"verify", "densecode", "--format", "json"});
    ASSERT_EQ(r.code, kExitPass);
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["passed"], true);
    EXPECT_EQ(doc["trials"], 4);
    EXPECT_TRUE(doc["failures"].empty());
    EXPECT_TRUE(doc.contains("max_prob_error"));
    EXPECT_EQ(doc.size(), 4u);
}

TEST(CliTest, HelpExitsZero) {
    Result r = cli({"--help"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace qlocc
