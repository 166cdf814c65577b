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

#ifndef QLOCC_VERIFIER_H_
#define QLOCC_VERIFIER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qlocc/program.h"
#include "qlocc/runtime.h"
#include "qlocc/world.h"

namespace qlocc {

struct Spec;

/// Must hold on every branch. Returns a failure reason, or nullopt when satisfied.
struct BranchPredicate {
    std::string name;
    std::function<std::optional<std::string>(const World &initial, const World &final)> check;
};

/// The run must reproduce this distribution.
struct ExpectedDistribution {
    Distribution target;
};

/// Required c' - c and q' - q on every branch; an empty field is not checked.
struct CounterDelta {
    std::optional<std::int64_t> classical_bits;
    std::optional<std::int64_t> quantum_bits;
};

struct Conjunction {
    std::vector<Spec> parts;
};

struct Spec {
    std::variant<BranchPredicate, ExpectedDistribution, CounterDelta, Conjunction> node;
};

struct VerifyFailure {
    /// Index into the run distribution, or -1 for whole-distribution failures.
    std::int64_t branch;
    std::string reason;
    std::string measured;
};

struct VerifyReport {
    bool passed = true;
    std::vector<VerifyFailure> failures;
    double max_prob_error = 0;
    std::size_t trials = 0;
};

struct DistributionMatch {
    bool equal;
    double max_error;
};

/// Worlds are matched on classical store, qubit owner map and state (entrywise
/// within 1e-9); every matched pair must agree in probability within `tolerance`.
DistributionMatch compare_distributions(const Distribution &a, const Distribution &b, double tolerance);

/// Evaluates `spec` on an already computed distribution.
VerifyReport check_distribution(const World &initial, const Distribution &dist, const Spec &spec, double tolerance);

/// Runs `program` from `initial` and evaluates `spec`. Run-time errors propagate.
VerifyReport check_spec(const Program &program, const World &initial, const Spec &spec, double tolerance);

/// Sums trials, concatenates failures and keeps the largest probability error.
VerifyReport combine_reports(const std::vector<VerifyReport> &reports, double tolerance);

/// JSON document {passed, trials, max_prob_error, failures[]}.
std::string report_to_json(const VerifyReport &report);

/// Input states for universally quantified single-qubit specs: the four fixed
/// probes (1,0), (0,1), (1/sqrt2, 1/sqrt2), (1/sqrt2, i/sqrt2) first, then seeded
/// random normalized pairs.
std::vector<std::pair<Amplitude, Amplitude>> sample_initial_states(std::size_t count, std::uint64_t seed);

/// Single-qubit factor f of `state` when state = rest (x) f on `qubit`. The
/// phase convention takes the rest's largest coefficient real and positive.
/// Returns nullopt for an entangled qubit.
std::optional<StateVector> qubit_factor(const StateVector &state, std::size_t qubit,
                                        double tolerance = kNormTolerance);

}  // namespace qlocc

#endif  // QLOCC_VERIFIER_H_
