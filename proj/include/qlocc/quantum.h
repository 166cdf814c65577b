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

#ifndef QLOCC_QUANTUM_H_
#define QLOCC_QUANTUM_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qlocc {

// Qubit 0 is the most significant bit of a basis index. For an n-qubit
// register, qubit i corresponds to bit (n - 1 - i) of the label.

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-9;
inline constexpr double kExactTolerance = 1e-12;

/// Largest register the dense representation accepts.
inline constexpr std::size_t kMaxQubits = 14;

/// A normalized pure state of an n-qubit register.
class StateVector {
   public:
    /// Validates length (a power of two, at least 2), finiteness and normalization.
    explicit StateVector(std::vector<Amplitude> amplitudes);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dimension() const {
        return amps_.size();
    }
    const Amplitude &operator[](std::size_t index) const {
        return amps_[index];
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }

    double norm() const;

    /// Renormalizes an arbitrary non-zero vector. Used for post-measurement states.
    static StateVector normalized(std::vector<Amplitude> amplitudes);

   private:
    struct Unchecked {};
    StateVector(std::vector<Amplitude> amplitudes, Unchecked);

    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;

    friend class Operator;
};

enum class GateId { I, X, Y, Z, H, CNOT };

std::string_view gate_name(GateId gate);

/// Square complex matrix over a 2^n dimensional space. Row is the output
/// basis index, column the input basis index.
class Operator {
   public:
    /// Row-major entries; dimension must be a power of two and entries finite.
    Operator(std::size_t num_qubits, std::vector<Amplitude> row_major);

    static Operator identity(std::size_t num_qubits);
    static Operator gate(GateId gate);
    /// |row><col| on n qubits.
    static Operator outer(std::size_t row, std::size_t col, std::size_t num_qubits);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dimension() const {
        return dim_;
    }
    const Amplitude &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Amplitude> entries() const {
        return entries_;
    }

    /// Matrix product; `(*this) * other` applies `other` first.
    Operator operator*(const Operator &other) const;
    Operator operator+(const Operator &other) const;
    Operator scaled(Amplitude factor) const;

    /// Applies the matrix to a raw amplitude vector of matching size.
    std::vector<Amplitude> multiply(std::span<const Amplitude> vec) const;

   private:
    std::size_t num_qubits_;
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

/// Computational basis ket |x> on n qubits.
StateVector ket(std::uint64_t x, std::size_t num_qubits);

/// psi (x) phi, with result[i] = psi[i / 2^n] * phi[i % 2^n].
StateVector tensor_state(const StateVector &psi, const StateVector &phi);

/// <psi|phi>, conjugating the left argument.
Amplitude inner_product(const StateVector &psi, const StateVector &phi);

/// U psi. In strict mode a non-unitary U is rejected.
StateVector apply(const Operator &op, const StateVector &psi, bool strict = true);

/// Kronecker product U (x) V.
Operator tensor_op(const Operator &u, const Operator &v);

/// I^(x)i (x) U (x) I^(x)(n-i-1) for a single-qubit U.
Operator lift(const Operator &op, std::size_t qubit, std::size_t num_qubits);

/// Acts as `op` on `targets` (first target is the most significant qubit of
/// `op`), identity on every other qubit. Built by permuting basis labels.
Operator embed(const Operator &op, std::span<const std::size_t> targets, std::size_t num_qubits);

Operator adjoint(const Operator &op);

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const Operator &a, const Operator &b);
double max_abs_diff(const StateVector &a, const StateVector &b);

bool is_unitary(const Operator &op, double tolerance = kUnitaryTolerance);

/// True when a and b differ by a global phase only.
bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tolerance = kNormTolerance);

}  // namespace qlocc

#endif  // QLOCC_QUANTUM_H_
