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

#include "qlocc/verifier.h"

#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "qlocc/errors.h"
#include "qlocc/protocols.h"
#include "support/oracles.h"

namespace qlocc {
namespace {

using prog::q;

const double kR = 1 / std::sqrt(2.0);

World one_qubit(Amplitude a, Amplitude b) {
    return World(StateVector({a, b}), {kAlice});
}

TEST(CompareDistributionsTest, Examples) {
    World w = one_qubit(1, 0);
    World w2 = one_qubit(0, 1);
    Distribution d{{{1.0, w}}};
    auto self = compare_distributions(d, d, 1e-9);
    EXPECT_TRUE(self.equal);
    EXPECT_EQ(self.max_error, 0);

    Distribution split{{{0.5, w}, {0.5, w2}}};
    EXPECT_FALSE(compare_distributions(d, split, 1e-9).equal);
}

TEST(CompareDistributionsTest, UniformBellMeasurementMatchesHandBuiltTarget) {
    World w(StateVector({kR, 0, 0, kR}), {kAlice, kBob});
    w.write_var(kAlice, "p", 0);
    w.write_var(kBob, "r", 0);
    Program p = prog::par(prog::seq({prog::apply(kAlice, GateId::H, {q(0)}), prog::measure(kAlice, {q(0)}, {"p"})}),
                          prog::measure(kBob, {q(1)}, {"r"}));
    Distribution target;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            World t = w;
            t.write_var(kAlice, "p", a);
            t.write_var(kBob, "r", b);
            t.set_state(ket(static_cast<std::uint64_t>(a * 2 + b), 2));
            target.branches.push_back({0.25, t});
        }
    }
    auto m = compare_distributions(run(p, w), target, 1e-9);
    EXPECT_TRUE(m.equal);
    EXPECT_LE(m.max_error, 1e-9);
}

TEST(CompareDistributionsTest, ProbabilityErrorAboveToleranceFails) {
    World w = one_qubit(1, 0);
    World w2 = one_qubit(0, 1);
    Distribution a{{{0.5, w}, {0.5, w2}}};
    Distribution b{{{0.5 + 1e-6, w}, {0.5 - 1e-6, w2}}};
    auto m = compare_distributions(a, b, 1e-9);
    EXPECT_FALSE(m.equal);
    EXPECT_NEAR(m.max_error, 1e-6, 1e-12);
    EXPECT_TRUE(compare_distributions(a, b, 1e-5).equal);
}

TEST(CompareDistributionsTest, KeysMatchWithinTolerance) {
    World w = one_qubit(1, 0);
    World near = one_qubit(std::sqrt(1 - 1e-22), 1e-11);
    EXPECT_TRUE(compare_distributions({{{1.0, w}}}, {{{1.0, near}}}, 1e-9).equal);
    World far = one_qubit(std::sqrt(1 - 1e-12), 1e-6);
    EXPECT_FALSE(compare_distributions({{{1.0, w}}}, {{{1.0, far}}}, 1e-9).equal);
}

TEST(CheckSpecTest, TeleportationFromBasisProbe) {
    Protocol p = build_teleportation(1, 0);
    VerifyReport r = check_spec(p.program, p.initial, teleportation_spec(p.initial, 1, 0, 1e-9), 1e-9);
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(run(p.program, p.initial).branches.size(), 4u);
}

TEST(CheckSpecTest, DenseCodingOneZero) {
    Protocol p = build_dense_coding(1, 0);
    VerifyReport r = check_spec(p.program, p.initial, dense_coding_spec(p.initial, 1, 0), 1e-9);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(run(p.program, p.initial).branches.size(), 1u);
}

TEST(CheckSpecTest, OkFailsCounterDelta) {
    World w = one_qubit(1, 0);
    VerifyReport r = check_spec(prog::ok(kAlice), w, Spec{CounterDelta{2, std::nullopt}}, 1e-9);
    EXPECT_FALSE(r.passed);
    ASSERT_EQ(r.failures.size(), 1u);
    EXPECT_NE(r.failures[0].reason.find("counter mismatch"), std::string::npos);
    EXPECT_EQ(r.failures[0].measured, "c'-c=0");
}

TEST(CheckSpecTest, RejectsNonPositiveTolerance) {
    World w = one_qubit(1, 0);
    EXPECT_THROW(check_spec(prog::ok(kAlice), w, Spec{CounterDelta{}}, 0), DomainError);
    EXPECT_THROW(check_spec(prog::ok(kAlice), w, Spec{CounterDelta{}}, -1), DomainError);
}

TEST(CheckSpecTest, RuntimeErrorsPropagate) {
    World w = one_qubit(1, 0);
    EXPECT_THROW(check_spec(prog::apply(kBob, GateId::X, {q(0)}), w, Spec{CounterDelta{}}, 1e-9), OwnershipError);
}

TEST(CheckSpecTest, BranchPredicateReportsFailingBranch) {
    World w = one_qubit(kR, kR);
    w.write_var(kAlice, "m", 0);
    Spec s{BranchPredicate{"m is zero", [](const World &, const World &f) -> std::optional<std::string> {
                               if (f.vars().at("m") != 0) {
                                   return "m=" + std::to_string(f.vars().at("m"));
                               }
                               return std::nullopt;
                           }}};
    VerifyReport r = check_spec(prog::measure(kAlice, {q(0)}, {"m"}), w, s, 1e-9);
    EXPECT_FALSE(r.passed);
    ASSERT_EQ(r.failures.size(), 1u);
    EXPECT_EQ(r.failures[0].branch, 1);
    EXPECT_EQ(r.failures[0].reason, "m is zero");
    EXPECT_EQ(r.failures[0].measured, "m=1");
}

TEST(CheckSpecTest, UncountedIntChannelFailsClassicalCount) {
    World w = one_qubit(1, 0);
    w.write_var(kBob, "x", 0);
    w.set_owner(0, kAlice);
    Program p = prog::chan("n", ChannelKind::integer(), kAlice, kBob,
                           prog::par(prog::send(kAlice, "n", Expr::constant(9)), prog::recv(kBob, "n", "x")));
    VerifyReport r = check_spec(p, w, Spec{CounterDelta{0, std::nullopt}}, 1e-9);
    EXPECT_FALSE(r.passed);
    ASSERT_FALSE(r.failures.empty());
    EXPECT_NE(r.failures[0].reason.find("undefined"), std::string::npos);
}

TEST(VerifierPropertyTest, ExpectedDistributionIsReflexive) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        World w(StateVector(oracle::random_state(2, rng)), {kAlice, kBob});
        Program p = prog::par(prog::seq({prog::apply(kAlice, GateId::H, {q(0)}), prog::measure(kAlice, {q(0)}, {"a"})}),
                              prog::measure(kBob, {q(1)}, {"b"}));
        Distribution d = run(p, w);
        VerifyReport r = check_spec(p, w, Spec{ExpectedDistribution{d}}, 1e-9);
        EXPECT_TRUE(r.passed);
        EXPECT_EQ(r.max_prob_error, 0);
    }
}

TEST(VerifierPropertyTest, ReportsAreDeterministic) {
    auto factory = [](Amplitude a, Amplitude b) { return build_teleportation(a, b, TeleportMutation::OmitZ); };
    SuiteResult r1 = verify_teleportation_suite(factory, 5, 9, 1e-9);
    SuiteResult r2 = verify_teleportation_suite(factory, 5, 9, 1e-9);
    EXPECT_EQ(report_to_json(r1.overall), report_to_json(r2.overall));
    EXPECT_FALSE(r1.overall.passed);
}

TEST(SampleInitialStatesTest, FixedProbesComeFirst) {
    for (std::uint64_t seed : {0u, 1u, 12345u}) {
        auto s = sample_initial_states(4, seed);
        ASSERT_EQ(s.size(), 4u);
        EXPECT_EQ(s[0], std::make_pair(Amplitude(1), Amplitude(0)));
        EXPECT_EQ(s[1], std::make_pair(Amplitude(0), Amplitude(1)));
        EXPECT_EQ(s[2], std::make_pair(Amplitude(kR), Amplitude(kR)));
        EXPECT_EQ(s[3], std::make_pair(Amplitude(kR), Amplitude(0, kR)));
    }
}

TEST(SampleInitialStatesTest, NormalizedAndReproducible) {
    auto a = sample_initial_states(50, 7);
    auto b = sample_initial_states(50, 7);
    auto c = sample_initial_states(50, 8);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (const auto &[alpha, beta] : a) {
        EXPECT_NEAR(std::norm(alpha) + std::norm(beta), 1, 1e-12);
    }
    EXPECT_THROW(sample_initial_states(0, 1), DomainError);
}

TEST(QubitFactorTest, ExtractsProductFactor) {
    StateVector f({0.6, Amplitude(0, 0.8)});
    StateVector rest({kR, Amplitude(0, kR)});
    auto got = qubit_factor(tensor_state(rest, f), 1);
    ASSERT_TRUE(got);
    // The rest's largest coefficient (the first, kR) is taken real positive.
    EXPECT_LE(max_abs_diff(*got, f), 1e-12);
    auto first = qubit_factor(tensor_state(f, rest), 0);
    ASSERT_TRUE(first);
    EXPECT_LE(max_abs_diff(*first, f), 1e-12);
}

TEST(QubitFactorTest, EntangledQubitHasNoFactor) {
    EXPECT_FALSE(qubit_factor(StateVector({kR, 0, 0, kR}), 0));
    EXPECT_THROW(qubit_factor(ket(0, 2), 2), DomainError);
}

TEST(ReportJsonTest, MirrorsReportFields) {
    VerifyReport r;
    r.passed = false;
    r.trials = 3;
    r.max_prob_error = 0.25;
    r.failures.push_back({2, "reason", "measured"});
    auto doc = nlohmann::json::parse(report_to_json(r));
    EXPECT_EQ(doc["passed"], false);
    EXPECT_EQ(doc["trials"], 3);
    EXPECT_EQ(doc["max_prob_error"], 0.25);
    ASSERT_EQ(doc["failures"].size(), 1u);
    EXPECT_EQ(doc["failures"][0]["branch"], 2);
    EXPECT_EQ(doc["failures"][0]["reason"], "reason");
    EXPECT_EQ(doc["failures"][0]["measured"], "measured");
    EXPECT_EQ(doc.size(), 4u);
}

TEST(CombineReportsTest, AggregatesTrialsAndFailures) {
    VerifyReport ok{true, {}, 1e-12, 1};
    VerifyReport bad{false, {{-1, "x", "y"}}, 0.5, 1};
    VerifyReport all = combine_reports({ok, bad, ok}, 1e-9);
    EXPECT_FALSE(all.passed);
    EXPECT_EQ(all.trials, 3u);
    EXPECT_EQ(all.failures.size(), 1u);
    EXPECT_EQ(all.max_prob_error, 0.5);
    EXPECT_TRUE(combine_reports({ok, ok}, 1e-9).passed);
}

}  // namespace
}  // namespace qlocc
