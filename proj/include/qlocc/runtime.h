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

#ifndef QLOCC_RUNTIME_H_
#define QLOCC_RUNTIME_H_

#include <functional>
#include <string>
#include <vector>

#include "qlocc/program.h"
#include "qlocc/world.h"

namespace qlocc {

struct WeightedWorld {
    double prob;
    World world;
};

/// Final worlds with their probabilities.
struct Distribution {
    std::vector<WeightedWorld> branches;

    double total_probability() const;
};

enum class FailureKind { Ownership, Deadlock, Execution, Domain };

std::string_view failure_kind_name(FailureKind kind);

struct BranchFailure {
    double prob;
    FailureKind kind;
    std::string message;
    /// Measurement outcomes that led to this branch, oldest first.
    std::vector<std::string> trace;
};

/// Every branch of a run, including the ones that failed.
struct Exploration {
    Distribution finished;
    std::vector<BranchFailure> failures;
};

using CheckpointHook = std::function<void(const std::string &label, double prob, const World &world)>;

struct RunOptions {
    CheckpointHook on_checkpoint;
    /// Re-checks the World invariants after every step.
    bool check_invariants = true;
};

/// Runs every branch to completion and records failures instead of throwing.
/// A finished register in one basis state up to phase is reported as that
/// ket. Finished worlds are merged when identical.
Exploration explore(const Program &program, const World &initial, const RunOptions &options = {});

/// Exact distribution over final worlds. The first failing branch (in
/// depth-first order) is rethrown with its branch context.
Distribution run(const Program &program, const World &initial, const RunOptions &options = {});

/// Parallel composition of two processes on a shared world.
Distribution step_parallel(const Program &left, const Program &right, const World &initial,
                           const RunOptions &options = {});

/// Merges structurally identical worlds (states equal within 1e-12), summing
/// their probabilities. Keeps first-occurrence order.
Distribution merge_identical(const Distribution &d);

/// Orders branches by classical store, then by state amplitudes.
void sort_by_outcome(Distribution &d);

}  // namespace qlocc

#endif  // QLOCC_RUNTIME_H_
