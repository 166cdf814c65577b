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

#include "qlocc/quantum.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qlocc/errors.h"

namespace qlocc {

namespace {

std::size_t qubits_for_dimension(std::size_t dim, const char *what) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw DomainError(std::string(what) + " dimension " + std::to_string(dim) + " is not a power of two");
    }
    auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n > kMaxQubits) {
        throw DomainError(std::string(what) + " has " + std::to_string(n) + " qubits; at most " +
                          std::to_string(kMaxQubits) + " are supported");
    }
    return n;
}

void require_finite(std::span<const Amplitude> values, const char *what) {
    for (const auto &a : values) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DomainError(std::string(what) + " contains a non-finite entry");
        }
    }
}

double squared_norm(std::span<const Amplitude> values) {
    double total = 0;
    for (const auto &a : values) {
        total += std::norm(a);
    }
    return total;
}

}  // namespace

StateVector::StateVector(std::vector<Amplitude> amplitudes) : StateVector(std::move(amplitudes), Unchecked{}) {
    if (num_qubits_ == 0) {
        throw DomainError("a state needs at least one qubit");
    }
    require_finite(amps_, "state");
    double n2 = squared_norm(amps_);
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw DomainError("state is not normalized (squared norm " + std::to_string(n2) + ")");
    }
}

StateVector::StateVector(std::vector<Amplitude> amplitudes, Unchecked)
    : num_qubits_(qubits_for_dimension(amplitudes.size(), "state")), amps_(std::move(amplitudes)) {
}

double StateVector::norm() const {
    return std::sqrt(squared_norm(amps_));
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
    require_finite(amplitudes, "state");
    double n = std::sqrt(squared_norm(amplitudes));
    if (n == 0) {
        throw DomainError("cannot normalize the zero vector");
    }
    for (auto &a : amplitudes) {
        a /= n;
    }
    return StateVector(std::move(amplitudes));
}

std::string_view gate_name(GateId gate) {
    switch (gate) {
        case GateId::I:
            return "I";
        case GateId::X:
            return "X";
        case GateId::Y:
            return "Y";
        case GateId::Z:
            return "Z";
        case GateId::H:
            return "H";
        case GateId::CNOT:
            return "CNOT";
    }
    return "?";
}

Operator::Operator(std::size_t num_qubits, std::vector<Amplitude> row_major)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), entries_(std::move(row_major)) {
    if (num_qubits > kMaxQubits) {
        throw DomainError("operator on " + std::to_string(num_qubits) + " qubits is too large");
    }
    if (entries_.size() != dim_ * dim_) {
        throw DomainError("operator on " + std::to_string(num_qubits) + " qubits needs " +
                          std::to_string(dim_ * dim_) + " entries, got " + std::to_string(entries_.size()));
    }
    require_finite(entries_, "operator");
}

Operator Operator::identity(std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<Amplitude> e(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        e[k * dim + k] = 1;
    }
    return Operator(num_qubits, std::move(e));
}

Operator Operator::gate(GateId gate) {
    const Amplitude i{0, 1};
    const double r = 1 / std::sqrt(2.0);
    switch (gate) {
        case GateId::I:
            return identity(1);
        case GateId::X:
            return Operator(1, {0, 1, 1, 0});
        case GateId::Y:
            // Y|x> = (-1)^x i |1-x>
            return Operator(1, {0, -i, i, 0});
        case GateId::Z:
            return Operator(1, {1, 0, 0, -1});
        case GateId::H:
            return Operator(1, {r, r, r, -r});
        case GateId::CNOT:
            return Operator(2, {1, 0, 0, 0,  //
                                0, 1, 0, 0,  //
                                0, 0, 0, 1,  //
                                0, 0, 1, 0});
    }
    throw DomainError("unknown gate");
}

Operator Operator::outer(std::size_t row, std::size_t col, std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    if (row >= dim || col >= dim) {
        throw DomainError("outer product index out of range");
    }
    std::vector<Amplitude> e(dim * dim);
    e[row * dim + col] = 1;
    return Operator(num_qubits, std::move(e));
}

Operator Operator::operator*(const Operator &other) const {
    if (dim_ != other.dim_) {
        throw DomainError("operator product dimension mismatch");
    }
    std::vector<Amplitude> out(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            Amplitude a = (*this)(r, k);
            if (a == Amplitude{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; ++c) {
                out[r * dim_ + c] += a * other(k, c);
            }
        }
    }
    return Operator(num_qubits_, std::move(out));
}

Operator Operator::operator+(const Operator &other) const {
    if (dim_ != other.dim_) {
        throw DomainError("operator sum dimension mismatch");
    }
    std::vector<Amplitude> out(entries_);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] += other.entries_[k];
    }
    return Operator(num_qubits_, std::move(out));
}

Operator Operator::scaled(Amplitude factor) const {
    std::vector<Amplitude> out(entries_);
    for (auto &a : out) {
        a *= factor;
    }
    return Operator(num_qubits_, std::move(out));
}

std::vector<Amplitude> Operator::multiply(std::span<const Amplitude> vec) const {
    if (vec.size() != dim_) {
        throw DomainError("operator on " + std::to_string(num_qubits_) + " qubits applied to a vector of length " +
                          std::to_string(vec.size()));
    }
    std::vector<Amplitude> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Amplitude acc{};
        for (std::size_t c = 0; c < dim_; ++c) {
            acc += (*this)(r, c) * vec[c];
        }
        out[r] = acc;
    }
    return out;
}

StateVector ket(std::uint64_t x, std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw DomainError("ket needs between 1 and " + std::to_string(kMaxQubits) + " qubits");
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (x >= dim) {
        throw DomainError("basis label " + std::to_string(x) + " out of range for " + std::to_string(num_qubits) +
                          " qubits");
    }
    std::vector<Amplitude> amps(dim);
    amps[x] = 1;
    return StateVector(std::move(amps));
}

StateVector tensor_state(const StateVector &psi, const StateVector &phi) {
    std::size_t inner = phi.dimension();
    std::vector<Amplitude> out(psi.dimension() * inner);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = psi[i / inner] * phi[i % inner];
    }
    return StateVector(std::move(out));
}

Amplitude inner_product(const StateVector &psi, const StateVector &phi) {
    if (psi.dimension() != phi.dimension()) {
        throw DomainError("inner product of states with different qubit counts");
    }
    Amplitude acc{};
    for (std::size_t x = 0; x < psi.dimension(); ++x) {
        acc += std::conj(psi[x]) * phi[x];
    }
    return acc;
}

StateVector apply(const Operator &op, const StateVector &psi, bool strict) {
    if (op.dimension() != psi.dimension()) {
        throw DomainError("operator on " + std::to_string(op.num_qubits()) + " qubits applied to a " +
                          std::to_string(psi.num_qubits()) + "-qubit state");
    }
    if (strict && !is_unitary(op)) {
        throw DomainError("operator is not unitary");
    }
    return StateVector(op.multiply(psi.amplitudes()));
}

Operator tensor_op(const Operator &u, const Operator &v) {
    std::size_t du = u.dimension();
    std::size_t dv = v.dimension();
    std::size_t dim = du * dv;
    std::vector<Amplitude> out(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r * dim + c] = u(r / dv, c / dv) * v(r % dv, c % dv);
        }
    }
    return Operator(u.num_qubits() + v.num_qubits(), std::move(out));
}

Operator lift(const Operator &op, std::size_t qubit, std::size_t num_qubits) {
    if (op.num_qubits() != 1) {
        throw DomainError("lift takes a single-qubit operator");
    }
    if (qubit >= num_qubits) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits) +
                          " qubits");
    }
    return tensor_op(tensor_op(Operator::identity(qubit), op), Operator::identity(num_qubits - qubit - 1));
}

Operator embed(const Operator &op, std::span<const std::size_t> targets, std::size_t num_qubits) {
    std::size_t k = targets.size();
    if (k != op.num_qubits()) {
        throw DomainError("operator on " + std::to_string(op.num_qubits()) + " qubits given " + std::to_string(k) +
                          " targets");
    }
    if (num_qubits > kMaxQubits) {
        throw DomainError("register too large");
    }
    std::uint64_t target_mask = 0;
    for (auto t : targets) {
        if (t >= num_qubits) {
            throw DomainError("target qubit " + std::to_string(t) + " out of range for " +
                              std::to_string(num_qubits) + " qubits");
        }
        std::uint64_t bit = std::uint64_t{1} << (num_qubits - 1 - t);
        if (target_mask & bit) {
            throw DomainError("duplicate target qubit " + std::to_string(t));
        }
        target_mask |= bit;
    }

    // Sub-index of `op` seen at a full basis label.
    auto gather = [&](std::size_t label) {
        std::size_t sub = 0;
        for (auto t : targets) {
            sub = (sub << 1) | ((label >> (num_qubits - 1 - t)) & 1);
        }
        return sub;
    };
    auto scatter = [&](std::size_t rest, std::size_t sub) {
        std::size_t label = rest;
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t bit = (sub >> (k - 1 - j)) & 1;
            label |= bit << (num_qubits - 1 - targets[j]);
        }
        return label;
    };

    std::size_t dim = std::size_t{1} << num_qubits;
    std::size_t sub_dim = op.dimension();
    std::vector<Amplitude> out(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t rest = col & ~target_mask;
        std::size_t sub_col = gather(col);
        for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
            out[scatter(rest, sub_row) * dim + col] = op(sub_row, sub_col);
        }
    }
    return Operator(num_qubits, std::move(out));
}

Operator adjoint(const Operator &op) {
    std::size_t dim = op.dimension();
    std::vector<Amplitude> out(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[c * dim + r] = std::conj(op(r, c));
        }
    }
    return Operator(op.num_qubits(), std::move(out));
}

double max_abs_diff(const Operator &a, const Operator &b) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("cannot compare operators of different dimension");
    }
    double worst = 0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("cannot compare states of different dimension");
    }
    double worst = 0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

bool is_unitary(const Operator &op, double tolerance) {
    return max_abs_diff(adjoint(op) * op, Operator::identity(op.num_qubits())) <= tolerance;
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tolerance) {
    if (a.dimension() != b.dimension()) {
        return false;
    }
    Amplitude overlap = inner_product(b, a);
    if (std::abs(overlap) == 0) {
        return false;
    }
    Amplitude phase = overlap / std::abs(overlap);
    double worst = 0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        worst = std::max(worst, std::abs(a[k] - phase * b[k]));
    }
    return worst <= tolerance;
}

}  // namespace qlocc
