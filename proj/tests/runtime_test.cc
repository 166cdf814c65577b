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

#include "qlocc/runtime.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <random>

#include "qlocc/errors.h"
#include "support/convert.h"
#include "support/straight_line.h"

namespace qlocc {
namespace {

using prog::q;

const PartyId kA{"Alice"};
const PartyId kB{"Bob"};
const double kR = 1 / std::sqrt(2.0);

World bell_world() {
    return World(StateVector({kR, 0, 0, kR}), {kA, kB});
}

World classical_world(std::int64_t x) {
    World w(ket(0, 1), {kA});
    w.write_var(kA, "x", x);
    w.write_var(kA, "y", 0);
    return w;
}

Expr var(const char *name) {
    return Expr::var(name);
}
Expr lit(std::int64_t v) {
    return Expr::constant(v);
}

std::vector<QubitRef> refs(std::size_t from, std::size_t count) {
    std::vector<QubitRef> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(q(from + i));
    }
    return out;
}

TEST(RunTest, OkIsIdentity) {
    World w = bell_world();
    Distribution d = run(prog::ok(kA), w);
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_EQ(d.branches[0].prob, 1.0);
    EXPECT_TRUE(same_world(d.branches[0].world, w));
}

TEST(RunTest, SequentialAssignmentsFollowSubstitution) {
    Program p = prog::seq({prog::assign(kA, "x", var("x") + lit(1)), prog::assign(kA, "y", var("x"))});
    Distribution d = run(p, classical_world(5));
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_EQ(d.branches[0].world.vars().at("x"), 6);
    EXPECT_EQ(d.branches[0].world.vars().at("y"), 6);
}

TEST(RunTest, BellMeasurementExample) {
    World w = bell_world();
    w.write_var(kA, "p", 0);
    w.write_var(kB, "q", 0);
    Program alice = prog::seq({prog::apply(kA, GateId::H, {q(0)}), prog::measure(kA, {q(0)}, {"p"})});
    Program bob = prog::measure(kB, {q(1)}, {"q"});
    Distribution d = run(prog::par(alice, bob), w);
    ASSERT_EQ(d.branches.size(), 4u);
    EXPECT_NEAR(d.total_probability(), 1, 1e-9);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const auto &b : d.branches) {
        auto p = b.world.vars().at("p");
        auto r = b.world.vars().at("q");
        seen.insert({p, r});
        EXPECT_NEAR(b.prob, 0.25, 1e-9);
        EXPECT_LE(max_abs_diff(b.world.state(), ket(static_cast<std::uint64_t>(p * 2 + r), 2)), 1e-9);
    }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(RunTest, PartialMeasurementKeepsRelativePhase) {
    // (|0> + i|1>)/sqrt2 on q1, |0> on q0: measuring q0 leaves the phase of q1 intact.
    World w(StateVector({kR, Amplitude(0, kR), 0, 0}), {kA, kA});
    w.write_var(kA, "m", 0);
    Distribution d = run(prog::measure(kA, {q(0)}, {"m"}), w);
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_LE(max_abs_diff(d.branches[0].world.state(), w.state()), 1e-12);
}

TEST(RunTest, FullCollapseYieldsBasisKet) {
    World w(StateVector({0, Amplitude(0, -1)}), {kA});
    Distribution d = run(prog::measure(kA, {q(0)}, {"m"}), w);
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_LE(max_abs_diff(d.branches[0].world.state(), ket(1, 1)), 1e-12);
}

TEST(RunTest, PackedMeasurementResult) {
    World w(ket(0b10, 2), {kA, kA});
    Distribution d = run(prog::measure(kA, {q(0), q(1)}, {"r"}), w);
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_EQ(d.branches[0].world.vars().at("r"), 2);
}

TEST(RunTest, ResetActsAsUnrecordedMeasurement) {
    Distribution d = run(prog::init_qubits(kA, {q(0)}), bell_world());
    ASSERT_EQ(d.branches.size(), 2u);
    EXPECT_NEAR(d.branches[0].prob, 0.5, 1e-12);
    EXPECT_LE(max_abs_diff(d.branches[0].world.state(), ket(0b00, 2)), 1e-12);
    EXPECT_LE(max_abs_diff(d.branches[1].world.state(), ket(0b01, 2)), 1e-12);
}

TEST(RunTest, IdenticalWorldsAreMerged) {
    // Measure then reset: both branches end in |0> with the same store.
    World w(StateVector({kR, kR}), {kA});
    Distribution d = run(prog::seq({prog::measure(kA, {q(0)}, {"m"}), prog::init_qubits(kA, {q(0)}),
                                    prog::assign(kA, "m", lit(0))}),
                         w);
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_NEAR(d.branches[0].prob, 1, 1e-12);
}

TEST(ProbIfTest, Examples) {
    Program r = prog::assign(kA, "x", lit(0));
    Program s = prog::assign(kA, "x", lit(1));
    World w = classical_world(7);

    auto one = run(prog::prob_if(1, r, s), w);
    ASSERT_EQ(one.branches.size(), 1u);
    EXPECT_EQ(one.branches[0].world.vars().at("x"), 0);

    auto zero = run(prog::prob_if(0, r, s), w);
    ASSERT_EQ(zero.branches.size(), 1u);
    EXPECT_EQ(zero.branches[0].world.vars().at("x"), 1);

    auto half = run(prog::prob_if(0.5, r, s), w);
    ASSERT_EQ(half.branches.size(), 2u);
    EXPECT_NEAR(half.branches[0].prob, 0.5, 1e-12);
    EXPECT_EQ(half.branches[0].world.vars().at("x"), 0);
    EXPECT_EQ(half.branches[1].world.vars().at("x"), 1);

    EXPECT_THROW(prog::prob_if(1.5, r, s), DomainError);
    EXPECT_THROW(prog::prob_if(-0.1, r, s), DomainError);
}

TEST(ProbIfTest, IdenticalOutcomesMerge) {
    Program r = prog::assign(kA, "x", lit(3));
    auto d = run(prog::prob_if(0.3, r, r), classical_world(0));
    ASSERT_EQ(d.branches.size(), 1u);
    EXPECT_NEAR(d.branches[0].prob, 1, 1e-12);
}

// Random unitary built from library gates on `n` qubits.
Operator random_circuit(std::size_t n, std::mt19937_64 &rng) {
    static const GateId gates[] = {GateId::X, GateId::Y, GateId::Z, GateId::H, GateId::CNOT};
    Operator u = Operator::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, 4);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    for (int step = 0; step < 6; ++step) {
        GateId g = gates[pick(rng)];
        if (g == GateId::CNOT) {
            std::size_t a = qubit(rng);
            std::size_t b = qubit(rng);
            if (n < 2 || a == b) {
                continue;
            }
            std::vector<std::size_t> t = {a, b};
            u = embed(Operator::gate(g), t, n) * u;
        } else {
            u = lift(Operator::gate(g), qubit(rng), n) * u;
        }
    }
    return u;
}

void expect_same_states(const Distribution &a, const Distribution &b, double tol) {
    ASSERT_EQ(a.branches.size(), b.branches.size());
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
        EXPECT_NEAR(a.branches[i].prob, b.branches[i].prob, tol);
        EXPECT_LE(max_abs_diff(a.branches[i].world.state(), b.branches[i].world.state()), tol);
    }
}

TEST(StepParallelTest, LocalUnitariesEqualTensorProduct) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 2;
        std::size_t m = 1 + (trial / 2) % 2;
        Operator up = random_circuit(n, rng);
        Operator uq = random_circuit(m, rng);
        StateVector psi(oracle::random_state(n + m, rng));

        std::vector<PartyId> split(n, kA);
        split.insert(split.end(), m, kB);
        Distribution par = step_parallel(prog::apply(kA, up, "UP", refs(0, n)), prog::apply(kB, uq, "UQ", refs(n, m)),
                                         World(psi, split));
        Distribution joint = run(prog::apply(kA, tensor_op(up, uq), "UPQ", refs(0, n + m)),
                                 World(psi, std::vector<PartyId>(n + m, kA)));
        expect_same_states(par, joint, 1e-9);
    }
}

TEST(StepParallelTest, UnitaryBesideOkEqualsPaddedUnitary) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + trial % 2;
        std::size_t m = 1 + (trial / 2) % 2;
        Operator up = random_circuit(n, rng);
        StateVector psi(oracle::random_state(n + m, rng));
        std::vector<PartyId> split(n, kA);
        split.insert(split.end(), m, kB);
        Distribution par = step_parallel(prog::apply(kA, up, "UP", refs(0, n)), prog::ok(kB), World(psi, split));
        Distribution padded = run(prog::apply(kA, tensor_op(up, Operator::identity(m)), "UP(x)I", refs(0, n + m)),
                                  World(psi, std::vector<PartyId>(n + m, kA)));
        expect_same_states(par, padded, 1e-9);
    }
}

TEST(StepParallelTest, SplitMeasurementEqualsJointMeasurement) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + trial % 2;
        std::size_t m = 1 + (trial / 2) % 2;
        StateVector psi(oracle::random_state(n + m, rng));
        std::vector<PartyId> split(n, kA);
        split.insert(split.end(), m, kB);
        Distribution par = step_parallel(prog::measure(kA, refs(0, n), {"p"}), prog::measure(kB, refs(n, m), {"r"}),
                                         World(psi, split));
        Distribution joint = run(prog::measure(kA, refs(0, n + m), {"pr"}), World(psi, std::vector<PartyId>(n + m, kA)));
        ASSERT_EQ(par.branches.size(), joint.branches.size());
        for (const auto &b : par.branches) {
            auto label = (b.world.vars().at("p") << m) | b.world.vars().at("r");
            bool found = false;
            for (const auto &j : joint.branches) {
                if (j.world.vars().at("pr") == label) {
                    found = true;
                    EXPECT_NEAR(b.prob, j.prob, 1e-9);
                    EXPECT_LE(max_abs_diff(b.world.state(), j.world.state()), 1e-9);
                }
            }
            EXPECT_TRUE(found) << "outcome " << label;
        }
    }
}

TEST(RuntimePropertyTest, SubstitutionLawOnStraightLinePrograms) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        auto program = oracle::random_straight_line(rng);
        std::map<std::string, std::int64_t> init;
        World w(ket(0, 1), {kA});
        for (const auto &v : oracle::straight_line_vars()) {
            init[v] = std::uniform_int_distribution<int>(0, 4)(rng);
            w.write_var(kA, v, init[v]);
        }
        std::vector<Program> body;
        for (const auto &a : program) {
            body.push_back(prog::assign(kA, a.var, a.value));
        }
        Distribution d = run(prog::seq(body), w);
        ASSERT_EQ(d.branches.size(), 1u);
        for (const auto &[v, e] : oracle::final_values(program)) {
            EXPECT_EQ(d.branches[0].world.vars().at(v), oracle::evaluate(e, init)) << "trial " << trial << " var " << v;
        }

        // (x := e; P) runs like P[e/x] in the predicate sense.
        const auto &first = program.front();
        std::vector<oracle::Assignment> tail(program.begin() + 1, program.end());
        std::map<std::string, std::int64_t> after_first = init;
        after_first[first.var] = oracle::evaluate(first.value, init);
        for (const auto &[v, e] : oracle::final_values(tail)) {
            EXPECT_EQ(oracle::evaluate(oracle::substitute_into(e, first.var, first.value), init),
                      oracle::evaluate(e, after_first));
        }
    }
}

TEST(RuntimePropertyTest, DeterministicAndNormalized) {
    World w(StateVector({0.6, 0, 0, 0.8}), {kA, kB});
    Program p = prog::par(prog::seq({prog::apply(kA, GateId::H, {q(0)}), prog::measure(kA, {q(0)}, {"a"})}),
                          prog::seq({prog::apply(kB, GateId::H, {q(1)}), prog::measure(kB, {q(1)}, {"b"})}));
    Distribution d1 = run(p, w);
    Distribution d2 = run(p, w);
    ASSERT_EQ(d1.branches.size(), d2.branches.size());
    for (std::size_t i = 0; i < d1.branches.size(); ++i) {
        EXPECT_EQ(d1.branches[i].prob, d2.branches[i].prob);
        EXPECT_TRUE(same_world(d1.branches[i].world, d2.branches[i].world, 0));
    }
    EXPECT_NEAR(d1.total_probability(), 1, 1e-9);
}

TEST(RuntimePropertyTest, CounterDiscipline) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        int classical = std::uniform_int_distribution<int>(0, 5)(rng);
        std::vector<Program> alice;
        std::vector<Program> bob;
        for (int k = 0; k < classical; ++k) {
            alice.push_back(prog::send(kA, "c", lit(k % 2)));
            bob.push_back(prog::recv(kB, "c", "x"));
        }
        bool quantum = trial % 2 == 0;
        if (quantum) {
            alice.push_back(prog::qsend(kA, "qc", q(0)));
            bob.push_back(prog::qrecv(kB, "qc", q(0)));
        }
        World w = bell_world();
        w.write_var(kB, "x", 0);
        Program p = prog::chan("c", ChannelKind::bit(), kA, kB,
                               prog::qchan("qc", kA, kB, prog::par(prog::seq(alice), prog::seq(bob))));
        Distribution d = run(p, w);
        for (const auto &b : d.branches) {
            EXPECT_EQ(b.world.c(), static_cast<std::uint64_t>(classical));
            EXPECT_EQ(b.world.q(), quantum ? 1u : 0u);
            EXPECT_EQ(b.world.t(), static_cast<std::uint64_t>(classical + (quantum ? 1 : 0)));
        }
    }
}

TEST(RuntimeErrorTest, MeasuringAnotherPartysQubitNamesTheStatement) {
    World w = bell_world();
    try {
        run(prog::measure(kB, {q(0)}, {"m"}), w);
        FAIL() << "expected an ownership error";
    } catch (const OwnershipError &e) {
        EXPECT_NE(std::string(e.what()).find("Bob: measure q0"), std::string::npos) << e.what();
    }
}

TEST(RuntimeErrorTest, DeadlockNamesBlockedStatements) {
    World w = bell_world();
    w.write_var(kB, "x", 0);
    Program p = prog::chan("c", ChannelKind::bit(), kA, kB, prog::par(prog::ok(kA), prog::recv(kB, "c", "x")));
    try {
        run(p, w);
        FAIL() << "expected a deadlock";
    } catch (const DeadlockError &e) {
        EXPECT_NE(std::string(e.what()).find("Bob: recv c -> x"), std::string::npos) << e.what();
    }
}

TEST(RuntimeErrorTest, UnboundVariableIsExecutionError) {
    EXPECT_THROW(run(prog::assign(kA, "x", var("nope")), classical_world(0)), ExecutionError);
}

TEST(RuntimeErrorTest, MissingPartyIsRejected) {
    EXPECT_THROW(run(prog::assign(PartyId{}, "x", lit(1)), classical_world(0)), ExecutionError);
}

TEST(RuntimeErrorTest, WritingAnotherPartysVariable) {
    World w = classical_world(0);
    EXPECT_THROW(run(prog::assign(kB, "x", lit(1)), w), OwnershipError);
}

TEST(NoCloningTest, UseAfterQsendFailsOnEveryBranch) {
    // Three qubits so that a measurement splits the run before the violation.
    World w(tensor_state(StateVector({kR, kR}), StateVector({kR, 0, 0, kR})), {kA, kA, kB});
    w.write_var(kA, "m", 0);
    Program alice = prog::seq({prog::measure(kA, {q(0)}, {"m"}), prog::qsend(kA, "qc", q(1)),
                               prog::apply(kA, GateId::H, {q(1)})});
    Program bob = prog::qrecv(kB, "qc", q(1));
    Exploration ex = explore(prog::qchan("qc", kA, kB, prog::par(alice, bob)), w);
    EXPECT_TRUE(ex.finished.branches.empty());
    ASSERT_EQ(ex.failures.size(), 2u);
    for (const auto &f : ex.failures) {
        EXPECT_EQ(f.kind, FailureKind::Ownership);
        EXPECT_NE(f.message.find("Alice: apply H q1"), std::string::npos) << f.message;
        EXPECT_NEAR(f.prob, 0.5, 1e-12);
        EXPECT_EQ(f.trace.size(), 1u);
    }
}

TEST(NoCloningTest, SecondQsendOfSameQubitFails) {
    World w = bell_world();
    Program p = prog::qchan("qc", kA, kB,
                            prog::par(prog::seq({prog::qsend(kA, "qc", q(0)), prog::qsend(kA, "qc", q(0))}),
                                      prog::seq({prog::qrecv(kB, "qc", q(0)), prog::qrecv(kB, "qc", q(0))})));
    EXPECT_THROW(run(p, w), OwnershipError);
}

TEST(CheckpointTest, HookSeesIntermediateWorlds) {
    World w(StateVector({kR, kR}), {kA});
    std::vector<std::pair<double, std::int64_t>> seen;
    RunOptions options;
    options.on_checkpoint = [&](const std::string &label, double prob, const World &world) {
        EXPECT_EQ(label, "mid");
        seen.emplace_back(prob, world.vars().at("m"));
    };
    run(prog::seq({prog::measure(kA, {q(0)}, {"m"}), prog::checkpoint("mid")}), w, options);
    ASSERT_EQ(seen.size(), 2u);
    EXPECT_NEAR(seen[0].first, 0.5, 1e-12);
    EXPECT_EQ(seen[0].second, 0);
    EXPECT_EQ(seen[1].second, 1);
}

TEST(RunTest, BranchContextInRethrownErrors) {
    World w(StateVector({kR, kR}), {kA});
    w.write_var(kA, "m", 0);
    Program p = prog::seq({prog::measure(kA, {q(0)}, {"m"}),
                           prog::assign(kA, "y", Expr::binary(BinaryOp::Div, lit(1), var("m")))});
    try {
        run(p, w);
        FAIL() << "expected division by zero";
    } catch (const ExecutionError &e) {
        EXPECT_NE(std::string(e.what()).find("[branch: Alice: measure q0 -> m = 0]"), std::string::npos) << e.what();
    }
}

TEST(SortByOutcomeTest, OrdersByStoreThenState) {
    World w(StateVector({kR, kR}), {kA});
    w.write_var(kA, "m", 0);
    Distribution d = run(prog::seq({prog::apply(kA, GateId::H, {q(0)}), prog::apply(kA, GateId::H, {q(0)}),
                                    prog::measure(kA, {q(0)}, {"m"})}),
                         w);
    std::reverse(d.branches.begin(), d.branches.end());
    sort_by_outcome(d);
    ASSERT_EQ(d.branches.size(), 2u);
    EXPECT_EQ(d.branches[0].world.vars().at("m"), 0);
    EXPECT_EQ(d.branches[1].world.vars().at("m"), 1);
}

}  // namespace
}  // namespace qlocc
