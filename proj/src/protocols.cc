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

#include "qlocc/protocols.h"

#include <cmath>
#include <cstdio>

#include "qlocc/errors.h"
#include "qlocc/runtime.h"

namespace qlocc {

namespace {

using prog::q;

StateVector single_qubit(Amplitude alpha, Amplitude beta) {
    double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1) > kNormTolerance) {
        throw DomainError("input qubit is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(n2));
    }
    return StateVector({alpha, beta});
}

StateVector bell_pair() {
    const double r = 1 / std::sqrt(2.0);
    return StateVector({r, 0, 0, r});
}

std::string complex_text(Amplitude a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", a.real(), a.imag());
    return buf;
}

SuiteRow run_row(std::string label, const Protocol &protocol, const Spec &spec, double tolerance) {
    SuiteRow row;
    row.label = std::move(label);
    try {
        Distribution d = run(protocol.program, protocol.initial);
        row.branches = d.branches.size();
        row.report = check_distribution(protocol.initial, d, spec, tolerance);
    } catch (const Error &e) {
        row.error = e.what();
        row.report.trials = 1;
        row.report.passed = false;
        row.report.failures.push_back({-1, "run failed", e.what()});
    }
    return row;
}

SuiteResult finish(std::vector<SuiteRow> rows, double tolerance) {
    std::vector<VerifyReport> reports;
    reports.reserve(rows.size());
    for (const auto &r : rows) {
        reports.push_back(r.report);
    }
    return {std::move(rows), combine_reports(reports, tolerance)};
}

}  // namespace

Protocol build_teleportation(Amplitude alpha, Amplitude beta, TeleportMutation mutation) {
    World initial(tensor_state(single_qubit(alpha, beta), bell_pair()), {kAlice, kAlice, kBob});
    initial.write_var(kAlice, "a0", 0);
    initial.write_var(kAlice, "a1", 0);
    initial.write_var(kBob, "b0", 0);
    initial.write_var(kBob, "b1", 0);

    Program alice = prog::seq({
        prog::apply(kAlice, GateId::CNOT, {q(0), q(1)}),
        prog::apply(kAlice, GateId::H, {q(0)}),
        prog::measure(kAlice, {q(0), q(1)}, {"a0", "a1"}),
        prog::checkpoint(kTeleportAfterMeasurement),
        prog::send(kAlice, "ch", Expr::var("a0")),
        prog::send(kAlice, "ch", Expr::var("a1")),
    });

    // Z^b0 X^b1: X acts first.
    auto is_one = [](const char *v) { return Expr::binary(BinaryOp::Eq, Expr::var(v), Expr::constant(1)); };
    std::vector<Program> bob_steps = {
        prog::recv(kBob, "ch", "b0"),
        prog::recv(kBob, "ch", "b1"),
    };
    if (mutation != TeleportMutation::OmitX) {
        bob_steps.push_back(prog::if_then(kBob, is_one("b1"), prog::apply(kBob, GateId::X, {q(2)})));
    }
    if (mutation != TeleportMutation::OmitZ) {
        bob_steps.push_back(prog::if_then(kBob, is_one("b0"), prog::apply(kBob, GateId::Z, {q(2)})));
    }
    Program bob = prog::seq(std::move(bob_steps));

    return {prog::chan("ch", ChannelKind::bit(), kAlice, kBob, prog::par(alice, bob)), std::move(initial)};
}

Protocol build_dense_coding(int a0, int a1) {
    if ((a0 != 0 && a0 != 1) || (a1 != 0 && a1 != 1)) {
        throw DomainError("dense coding inputs must be bits");
    }
    World initial(bell_pair(), {kAlice, kBob});
    initial.write_var(kAlice, "a0", a0);
    initial.write_var(kAlice, "a1", a1);
    initial.write_var(kBob, "b0", 0);
    initial.write_var(kBob, "b1", 0);

    auto eq = [](const char *v, int value) {
        return Expr::binary(BinaryOp::Eq, Expr::var(v), Expr::constant(value));
    };
    Program encode = prog::if_then(
        kAlice, eq("a0", 0),
        prog::if_then(kAlice, eq("a1", 0), prog::ok(kAlice), prog::apply(kAlice, GateId::X, {q(0)})),
        prog::if_then(kAlice, eq("a1", 0), prog::apply(kAlice, GateId::Z, {q(0)}),
                      prog::apply(kAlice, GateId::Y, {q(0)})));
    Program alice = prog::seq({encode, prog::qsend(kAlice, "qch", q(0))});

    Program bob = prog::seq({
        prog::qrecv(kBob, "qch", q(0)),
        prog::apply(kBob, GateId::CNOT, {q(0), q(1)}),
        prog::apply(kBob, GateId::H, {q(0)}),
        prog::checkpoint(kDenseBeforeMeasurement),
        prog::measure(kBob, {q(0), q(1)}, {"b0", "b1"}),
    });

    return {prog::qchan("qch", kAlice, kBob, prog::par(alice, bob)), std::move(initial)};
}

Spec teleportation_spec(const World &initial, Amplitude alpha, Amplitude beta, double tolerance) {
    StateVector target = single_qubit(alpha, beta);

    BranchPredicate teleported{
        "qubit 2 holds alpha|0> + beta|1>",
        [target, tolerance](const World &, const World &final) -> std::optional<std::string> {
            if (final.num_qubits() < 3) {
                return "register has fewer than 3 qubits";
            }
            auto factor = qubit_factor(final.state(), 2, tolerance);
            if (!factor) {
                return "qubit 2 is entangled with the rest of the register";
            }
            double err = max_abs_diff(*factor, target);
            if (err > tolerance) {
                return "qubit 2 = (" + complex_text((*factor)[0]) + ", " + complex_text((*factor)[1]) +
                       "), off by " + std::to_string(err);
            }
            return std::nullopt;
        }};

    Distribution expected;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            World w = initial;
            w.set_state(tensor_state(ket(static_cast<std::uint64_t>(x * 2 + y), 2), target));
            w.write_var(kAlice, "a0", x);
            w.write_var(kAlice, "a1", y);
            w.write_var(kBob, "b0", x);
            w.write_var(kBob, "b1", y);
            expected.branches.push_back({0.25, std::move(w)});
        }
    }

    return Spec{Conjunction{{
        Spec{std::move(teleported)},
        Spec{CounterDelta{2, 0}},
        Spec{ExpectedDistribution{std::move(expected)}},
    }}};
}

Spec dense_coding_spec(const World &initial, int a0, int a1) {
    BranchPredicate decoded{
        "b0' = a0 and b1' = a1",
        [a0, a1](const World &, const World &final) -> std::optional<std::string> {
            auto b0 = final.vars().find("b0");
            auto b1 = final.vars().find("b1");
            if (b0 == final.vars().end() || b1 == final.vars().end()) {
                return "b0 or b1 unbound";
            }
            if (b0->second != a0 || b1->second != a1) {
                return "b0=" + std::to_string(b0->second) + " b1=" + std::to_string(b1->second) + ", expected b0=" +
                       std::to_string(a0) + " b1=" + std::to_string(a1);
            }
            return std::nullopt;
        }};

    World w = initial;
    w.set_state(ket(static_cast<std::uint64_t>(a0 * 2 + a1), 2));
    w.set_owner(0, kBob);
    w.write_var(kBob, "b0", a0);
    w.write_var(kBob, "b1", a1);
    Distribution expected;
    expected.branches.push_back({1.0, std::move(w)});

    return Spec{Conjunction{{
        Spec{std::move(decoded)},
        Spec{CounterDelta{0, 1}},
        Spec{ExpectedDistribution{std::move(expected)}},
    }}};
}

std::vector<CheckpointCapture> capture_checkpoints(const Protocol &protocol, const std::string &label) {
    std::vector<CheckpointCapture> out;
    RunOptions options;
    options.on_checkpoint = [&](const std::string &seen, double prob, const World &world) {
        if (seen == label) {
            out.push_back({prob, world});
        }
    };
    run(protocol.program, protocol.initial, options);
    return out;
}

SuiteResult verify_teleportation_suite(const TeleportFactory &factory, std::size_t random_trials, std::uint64_t seed,
                                       double tolerance) {
    return verify_teleportation_inputs(factory, sample_initial_states(4 + random_trials, seed), tolerance);
}

SuiteResult verify_teleportation_inputs(const TeleportFactory &factory,
                                        const std::vector<std::pair<Amplitude, Amplitude>> &inputs, double tolerance) {
    std::vector<SuiteRow> rows;
    for (const auto &[alpha, beta] : inputs) {
        std::string label = "alpha=" + complex_text(alpha) + " beta=" + complex_text(beta);
        try {
            Protocol p = factory(alpha, beta);
            rows.push_back(run_row(std::move(label), p, teleportation_spec(p.initial, alpha, beta, tolerance),
                                   tolerance));
        } catch (const Error &e) {
            SuiteRow row;
            row.label = std::move(label);
            row.error = e.what();
            row.report = {false, {{-1, "could not build protocol", e.what()}}, 0, 1};
            rows.push_back(std::move(row));
        }
    }
    return finish(std::move(rows), tolerance);
}

SuiteResult verify_dense_coding_suite(const DenseCodingFactory &factory, double tolerance) {
    return verify_dense_coding_inputs(factory, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, tolerance);
}

SuiteResult verify_dense_coding_inputs(const DenseCodingFactory &factory, const std::vector<std::pair<int, int>> &inputs,
                                       double tolerance) {
    std::vector<SuiteRow> rows;
    for (const auto &[a0, a1] : inputs) {
        std::string label = "a0=" + std::to_string(a0) + " a1=" + std::to_string(a1);
        try {
            Protocol p = factory(a0, a1);
            rows.push_back(run_row(std::move(label), p, dense_coding_spec(p.initial, a0, a1), tolerance));
        } catch (const Error &e) {
            SuiteRow row;
            row.label = std::move(label);
            row.error = e.what();
            row.report = {false, {{-1, "could not build protocol", e.what()}}, 0, 1};
            rows.push_back(std::move(row));
        }
    }
    return finish(std::move(rows), tolerance);
}

}  // namespace qlocc
