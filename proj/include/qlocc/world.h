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

#ifndef QLOCC_WORLD_H_
#define QLOCC_WORLD_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qlocc/expr.h"
#include "qlocc/quantum.h"

namespace qlocc {

/// Name of a process. Names starting with '@' are reserved for channels that
/// hold a qubit in transit.
class PartyId {
   public:
    PartyId() = default;
    explicit PartyId(std::string name) : name_(std::move(name)) {
    }

    static PartyId in_transit(const std::string &channel) {
        return PartyId("@" + channel);
    }

    const std::string &name() const {
        return name_;
    }
    bool empty() const {
        return name_.empty();
    }
    bool is_channel() const {
        return !name_.empty() && name_.front() == '@';
    }

    auto operator<=>(const PartyId &) const = default;

   private:
    std::string name_;
};

/// A qubit named either by register index or by a binder introduced by a
/// quantum receive.
struct QubitRef {
    std::variant<std::size_t, std::string> ref;

    static QubitRef index(std::size_t i) {
        return QubitRef{i};
    }
    static QubitRef alias(std::string name) {
        return QubitRef{std::move(name)};
    }
    std::string to_string() const;
};

struct ChannelKind {
    enum class Type { Bit, Int, Quantum };
    Type type = Type::Bit;
    /// Int channels carry values in [0, range) when a range is declared.
    std::optional<std::uint64_t> range;

    static ChannelKind bit() {
        return {Type::Bit, std::nullopt};
    }
    static ChannelKind integer(std::optional<std::uint64_t> range = std::nullopt) {
        return {Type::Int, range};
    }
    static ChannelKind quantum() {
        return {Type::Quantum, std::nullopt};
    }

    bool is_quantum() const {
        return type == Type::Quantum;
    }
    /// Classical bits charged per send; nullopt for an int channel without range.
    std::optional<std::uint64_t> bits_per_send() const;
    std::string to_string() const;

    bool operator==(const ChannelKind &) const = default;
};

/// Message and time scripts of one channel. The write cursor is the script
/// length; 0 <= read <= write always holds.
struct ChannelState {
    ChannelKind kind;
    PartyId writer;
    PartyId reader;
    std::vector<std::int64_t> msg_script;
    std::vector<std::uint64_t> time_script;
    std::size_t read_cursor = 0;

    std::size_t write_cursor() const {
        return msg_script.size();
    }

    bool operator==(const ChannelState &) const = default;
};

/// One deterministic configuration of the whole system.
class World {
   public:
    /// Every qubit of `state` needs an owner.
    World(StateVector state, std::vector<PartyId> qubit_owner);

    const StateVector &state() const {
        return state_;
    }
    void set_state(StateVector state);

    const VarStore &vars() const {
        return vars_;
    }
    const std::map<std::string, PartyId> &var_owner() const {
        return var_owner_;
    }
    const std::vector<PartyId> &qubit_owner() const {
        return qubit_owner_;
    }
    const std::map<std::pair<PartyId, std::string>, std::size_t> &aliases() const {
        return aliases_;
    }
    const std::map<std::string, ChannelState> &channels() const {
        return channels_;
    }

    std::uint64_t c() const {
        return c_;
    }
    std::uint64_t q() const {
        return q_;
    }
    std::uint64_t t() const {
        return t_;
    }
    /// Set once an int channel without a declared range carries a message;
    /// c no longer counts every classical bit after that.
    bool uncounted_sends() const {
        return uncounted_sends_;
    }

    std::size_t num_qubits() const {
        return qubit_owner_.size();
    }

    /// Introduces or overwrites `name` on behalf of `party`. Another party's
    /// variable is an ownership violation.
    void write_var(const PartyId &party, const std::string &name, std::int64_t value);
    /// Variables `party` may read.
    VarStore visible_vars(const PartyId &party) const;
    /// Lookup that enforces ownership.
    std::int64_t read_var(const PartyId &party, const std::string &name) const;

    /// Resolves a qubit reference from `party`'s point of view and checks that
    /// `party` owns it.
    std::size_t owned_qubit(const PartyId &party, const QubitRef &ref) const;
    /// Resolves without the ownership check.
    std::size_t resolve_qubit(const PartyId &party, const QubitRef &ref) const;

    void set_owner(std::size_t qubit, PartyId party);
    void bind_alias(const PartyId &party, const std::string &name, std::size_t qubit);

    ChannelState &channel(const std::string &name);
    const ChannelState &channel(const std::string &name) const;
    bool has_channel(const std::string &name) const {
        return channels_.count(name) != 0;
    }
    void add_channel(const std::string &name, ChannelState state);
    void remove_channel(const std::string &name);

    void add_classical_bits(std::uint64_t bits) {
        c_ += bits;
    }
    void add_quantum_bits(std::uint64_t bits) {
        q_ += bits;
    }
    void tick() {
        ++t_;
    }
    void mark_uncounted() {
        uncounted_sends_ = true;
    }

    /// Throws ExecutionError describing the first violated invariant.
    void check_invariants() const;

   private:
    StateVector state_;
    VarStore vars_;
    std::map<std::string, PartyId> var_owner_;
    std::vector<PartyId> qubit_owner_;
    std::map<std::pair<PartyId, std::string>, std::size_t> aliases_;
    std::map<std::string, ChannelState> channels_;
    std::uint64_t c_ = 0;
    std::uint64_t q_ = 0;
    std::uint64_t t_ = 0;
    bool uncounted_sends_ = false;
};

/// Exact structural equality, with states compared entrywise at `tolerance`.
bool same_world(const World &a, const World &b, double tolerance = kExactTolerance);

}  // namespace qlocc

#endif  // QLOCC_WORLD_H_
