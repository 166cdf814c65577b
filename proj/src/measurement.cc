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

#include "qlocc/measurement.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qlocc/errors.h"

namespace qlocc {

namespace {

std::vector<std::uint64_t> default_labels(std::size_t count) {
    std::vector<std::uint64_t> labels(count);
    for (std::size_t k = 0; k < count; ++k) {
        labels[k] = k;
    }
    return labels;
}

// Drops sub-threshold branches. The total dropped mass must stay within the
// same threshold, otherwise the state carries many tiny amplitudes and pruning
// would distort the distribution.
std::vector<Branch> prune(std::vector<Branch> branches) {
    double dropped = 0;
    std::vector<Branch> kept;
    kept.reserve(branches.size());
    for (auto &b : branches) {
        if (b.prob < kPruneThreshold) {
            dropped += std::max(b.prob, 0.0);
        } else {
            kept.push_back(std::move(b));
        }
    }
    if (dropped > kPruneThreshold) {
        throw DomainError("pruned measurement branches carry probability " + std::to_string(dropped));
    }
    return kept;
}

}  // namespace

MeasurementCollection::MeasurementCollection(std::vector<Operator> ops)
    : MeasurementCollection(std::move(ops), default_labels(0)) {
}

MeasurementCollection::MeasurementCollection(std::vector<Operator> ops, std::vector<std::uint64_t> labels)
    : num_qubits_(0), ops_(std::move(ops)), labels_(std::move(labels)) {
    if (ops_.empty()) {
        throw DomainError("measurement collection is empty");
    }
    if (labels_.empty()) {
        labels_ = default_labels(ops_.size());
    }
    if (labels_.size() != ops_.size()) {
        throw DomainError("measurement collection has " + std::to_string(ops_.size()) + " operators but " +
                          std::to_string(labels_.size()) + " labels");
    }
    num_qubits_ = ops_.front().num_qubits();
    for (const auto &op : ops_) {
        if (op.num_qubits() != num_qubits_) {
            throw DomainError("measurement operators act on different qubit counts");
        }
    }
    std::set<std::uint64_t> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
        throw DomainError("measurement outcome labels are not distinct");
    }
}

MeasurementCollection computational_projectors(std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<Operator> ops;
    ops.reserve(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        ops.push_back(Operator::outer(x, x, num_qubits));
    }
    return MeasurementCollection(std::move(ops));
}

MeasurementCollection tensor_collection(const MeasurementCollection &p, const MeasurementCollection &q) {
    std::vector<Operator> ops;
    std::vector<std::uint64_t> labels;
    for (std::size_t i = 0; i < p.ops().size(); ++i) {
        for (std::size_t j = 0; j < q.ops().size(); ++j) {
            ops.push_back(tensor_op(p.ops()[i], q.ops()[j]));
            labels.push_back((p.labels()[i] << q.num_qubits()) | q.labels()[j]);
        }
    }
    return MeasurementCollection(std::move(ops), std::move(labels));
}

Basis::Basis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw DomainError("basis is empty");
    }
    std::size_t dim = vectors_.front().dimension();
    if (vectors_.size() != dim) {
        throw DomainError("basis of a " + std::to_string(dim) + "-dimensional space needs " + std::to_string(dim) +
                          " vectors, got " + std::to_string(vectors_.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (vectors_[i].dimension() != dim) {
            throw DomainError("basis vectors have different dimensions");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            Amplitude expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(inner_product(vectors_[i], vectors_[j]) - expected) > kNormTolerance) {
                throw DomainError("basis is not orthonormal at (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ")");
            }
        }
    }
}

Basis computational_basis(std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<StateVector> vectors;
    vectors.reserve(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        vectors.push_back(ket(x, num_qubits));
    }
    return Basis(std::move(vectors));
}

bool check_completeness(const MeasurementCollection &m, double tolerance) {
    Operator sum = adjoint(m.ops().front()) * m.ops().front();
    for (std::size_t k = 1; k < m.ops().size(); ++k) {
        sum = sum + adjoint(m.ops()[k]) * m.ops()[k];
    }
    return max_abs_diff(sum, Operator::identity(m.num_qubits())) <= tolerance;
}

std::vector<Branch> measure_general(const MeasurementCollection &m, const StateVector &psi) {
    if (m.num_qubits() != psi.num_qubits()) {
        throw DomainError("measurement on " + std::to_string(m.num_qubits()) + " qubits applied to a " +
                          std::to_string(psi.num_qubits()) + "-qubit state");
    }
    if (!check_completeness(m)) {
        throw DomainError("measurement operators do not satisfy the completeness equation");
    }
    std::vector<Branch> branches;
    for (std::size_t k = 0; k < m.ops().size(); ++k) {
        std::vector<Amplitude> projected = m.ops()[k].multiply(psi.amplitudes());
        // <psi|M^dag M|psi> = ||M psi||^2, real by construction.
        double prob = 0;
        for (const auto &a : projected) {
            prob += std::norm(a);
        }
        if (prob < kPruneThreshold) {
            branches.push_back({m.labels()[k], prob, psi});
            continue;
        }
        branches.push_back({m.labels()[k], prob, StateVector::normalized(std::move(projected))});
    }
    return prune(std::move(branches));
}

std::vector<Branch> measure_basis(const Basis &basis, const StateVector &psi) {
    if (basis.num_qubits() != psi.num_qubits()) {
        throw DomainError("basis and state have different qubit counts");
    }
    std::vector<Branch> branches;
    for (std::size_t r = 0; r < basis.vectors().size(); ++r) {
        double prob = std::norm(inner_product(basis.vectors()[r], psi));
        branches.push_back({r, prob, basis.vectors()[r]});
    }
    return prune(std::move(branches));
}

std::vector<Branch> measure_computational(const StateVector &psi) {
    std::vector<Branch> branches;
    for (std::size_t r = 0; r < psi.dimension(); ++r) {
        double prob = std::norm(psi[r]);
        if (prob < kPruneThreshold) {
            branches.push_back({r, prob, psi});
        } else {
            branches.push_back({r, prob, ket(r, psi.num_qubits())});
        }
    }
    return prune(std::move(branches));
}

std::vector<Branch> measure_subset(const StateVector &psi, std::span<const std::size_t> targets) {
    std::size_t n = psi.num_qubits();
    std::size_t k = targets.size();
    if (k == 0) {
        throw DomainError("measurement needs at least one target qubit");
    }
    std::uint64_t mask = 0;
    for (auto t : targets) {
        if (t >= n) {
            throw DomainError("measured qubit " + std::to_string(t) + " out of range for " + std::to_string(n) +
                              " qubits");
        }
        std::uint64_t bit = std::uint64_t{1} << (n - 1 - t);
        if (mask & bit) {
            throw DomainError("qubit " + std::to_string(t) + " measured twice");
        }
        mask |= bit;
    }

    std::size_t outcomes = std::size_t{1} << k;
    std::vector<std::vector<Amplitude>> projected(outcomes, std::vector<Amplitude>(psi.dimension()));
    std::vector<double> probs(outcomes, 0.0);
    for (std::size_t label = 0; label < psi.dimension(); ++label) {
        std::size_t outcome = 0;
        for (auto t : targets) {
            outcome = (outcome << 1) | ((label >> (n - 1 - t)) & 1);
        }
        projected[outcome][label] = psi[label];
        probs[outcome] += std::norm(psi[label]);
    }

    std::vector<Branch> branches;
    for (std::size_t r = 0; r < outcomes; ++r) {
        if (probs[r] < kPruneThreshold) {
            branches.push_back({r, probs[r], psi});
        } else {
            branches.push_back({r, probs[r], StateVector::normalized(std::move(projected[r]))});
        }
    }
    return prune(std::move(branches));
}

}  // namespace qlocc
