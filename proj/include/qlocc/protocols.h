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

#ifndef QLOCC_PROTOCOLS_H_
#define QLOCC_PROTOCOLS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlocc/program.h"
#include "qlocc/verifier.h"
#include "qlocc/world.h"

namespace qlocc {

struct Protocol {
    Program program;
    World initial;
};

inline const PartyId kAlice{"Alice"};
inline const PartyId kBob{"Bob"};

/// Checkpoint label placed right after Alice's measurement in teleportation.
inline constexpr const char *kTeleportAfterMeasurement = "after_measurement";
/// Checkpoint label placed right before Bob's measurement in dense coding.
inline constexpr const char *kDenseBeforeMeasurement = "before_measurement";

/// Variants of the teleportation program with one correction removed; used to
/// show the checker rejects broken protocols.
enum class TeleportMutation { None, OmitZ, OmitX };

/// Alice holds q0 = alpha|0> + beta|1> and q1; Bob holds q2, entangled with q1
/// as (|00> + |11>)/sqrt2. Alice sends her two measurement bits on a bit
/// channel; Bob corrects with X^b1 then Z^b0.
Protocol build_teleportation(Amplitude alpha, Amplitude beta, TeleportMutation mutation = TeleportMutation::None);

/// Alice encodes (a0, a1) on q0 of a shared Bell pair and sends q0 to Bob over
/// a quantum channel; Bob decodes with CNOT, H and a measurement into b0 b1.
Protocol build_dense_coding(int a0, int a1);

/// Every branch: q2 factor equals alpha|0> + beta|1>, c' = c + 2, q' = q, and
/// the distribution is uniform over the four (a0, a1) = (b0, b1) outcomes.
Spec teleportation_spec(const World &initial, Amplitude alpha, Amplitude beta, double tolerance);

/// Single branch with b0' = a0, b1' = a1, c' = c, q' = q + 1 and final state |a0 a1>.
Spec dense_coding_spec(const World &initial, int a0, int a1);

struct CheckpointCapture {
    double prob;
    World world;
};

/// Runs the protocol and records every world reaching checkpoint `label`.
std::vector<CheckpointCapture> capture_checkpoints(const Protocol &protocol, const std::string &label);

struct SuiteRow {
    std::string label;
    std::size_t branches = 0;
    VerifyReport report;
    /// Run-time error text when the run failed outright.
    std::string error;
};

struct SuiteResult {
    std::vector<SuiteRow> rows;
    VerifyReport overall;
};

using TeleportFactory = std::function<Protocol(Amplitude alpha, Amplitude beta)>;
using DenseCodingFactory = std::function<Protocol(int a0, int a1)>;

/// Checks the fixed probes plus `random_trials` seeded random inputs.
SuiteResult verify_teleportation_suite(const TeleportFactory &factory, std::size_t random_trials, std::uint64_t seed,
                                       double tolerance);
SuiteResult verify_teleportation_inputs(const TeleportFactory &factory,
                                        const std::vector<std::pair<Amplitude, Amplitude>> &inputs, double tolerance);

/// Checks all four (a0, a1) inputs.
SuiteResult verify_dense_coding_suite(const DenseCodingFactory &factory, double tolerance);
SuiteResult verify_dense_coding_inputs(const DenseCodingFactory &factory, const std::vector<std::pair<int, int>> &inputs,
                                       double tolerance);

}  // namespace qlocc

#endif  // QLOCC_PROTOCOLS_H_
