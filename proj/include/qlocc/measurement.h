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

#ifndef QLOCC_MEASUREMENT_H_
#define QLOCC_MEASUREMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qlocc/quantum.h"

namespace qlocc {

/// Branches whose probability falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;

/// Measurement operators M_m with outcome labels. The labels default to
/// 0, 1, ... and must be distinct.
class MeasurementCollection {
   public:
    explicit MeasurementCollection(std::vector<Operator> ops);
    MeasurementCollection(std::vector<Operator> ops, std::vector<std::uint64_t> labels);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Operator> &ops() const {
        return ops_;
    }
    const std::vector<std::uint64_t> &labels() const {
        return labels_;
    }

   private:
    std::size_t num_qubits_;
    std::vector<Operator> ops_;
    std::vector<std::uint64_t> labels_;
};

/// {|x><x|} for x in 0..2^n.
MeasurementCollection computational_projectors(std::size_t num_qubits);

/// M_P (x) M_Q with label p * 2^m + q, m the qubit count of M_Q.
MeasurementCollection tensor_collection(const MeasurementCollection &p, const MeasurementCollection &q);

/// An orthonormal basis; the constructor rejects anything else.
class Basis {
   public:
    explicit Basis(std::vector<StateVector> vectors);

    std::size_t num_qubits() const {
        return vectors_.front().num_qubits();
    }
    const std::vector<StateVector> &vectors() const {
        return vectors_;
    }

   private:
    std::vector<StateVector> vectors_;
};

Basis computational_basis(std::size_t num_qubits);

struct Branch {
    std::uint64_t outcome;
    double prob;
    StateVector post_state;
};

bool check_completeness(const MeasurementCollection &m, double tolerance = kNormTolerance);

std::vector<Branch> measure_general(const MeasurementCollection &m, const StateVector &psi);
std::vector<Branch> measure_basis(const Basis &basis, const StateVector &psi);
std::vector<Branch> measure_computational(const StateVector &psi);

/// Measures `targets` in the computational basis. The outcome packs the measured
/// bits with the first target as most significant bit; the post-state is the
/// whole register projected onto that outcome and renormalized.
std::vector<Branch> measure_subset(const StateVector &psi, std::span<const std::size_t> targets);

}  // namespace qlocc

#endif  // QLOCC_MEASUREMENT_H_
