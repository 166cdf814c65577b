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

#include "qlocc/world.h"

#include <bit>

#include "qlocc/errors.h"

namespace qlocc {

std::string QubitRef::to_string() const {
    if (const auto *i = std::get_if<std::size_t>(&ref)) {
        return "q" + std::to_string(*i);
    }
    return std::get<std::string>(ref);
}

std::optional<std::uint64_t> ChannelKind::bits_per_send() const {
    switch (type) {
        case Type::Bit:
            return 1;
        case Type::Quantum:
            return 0;
        case Type::Int:
            if (!range) {
                return std::nullopt;
            }
            // ceil(log2(range)); a one-value channel carries no information.
            return *range <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(*range - 1));
    }
    return std::nullopt;
}

std::string ChannelKind::to_string() const {
    switch (type) {
        case Type::Bit:
            return "bit";
        case Type::Quantum:
            return "qbit";
        case Type::Int:
            return range ? "int " + std::to_string(*range) : "int";
    }
    return "?";
}

World::World(StateVector state, std::vector<PartyId> qubit_owner)
    : state_(std::move(state)), qubit_owner_(std::move(qubit_owner)) {
    if (qubit_owner_.size() != state_.num_qubits()) {
        throw ExecutionError("owner map covers " + std::to_string(qubit_owner_.size()) + " qubits but the register has " +
                             std::to_string(state_.num_qubits()));
    }
    for (std::size_t i = 0; i < qubit_owner_.size(); ++i) {
        if (qubit_owner_[i].empty()) {
            throw ExecutionError("qubit q" + std::to_string(i) + " has no owner");
        }
    }
}

void World::set_state(StateVector state) {
    if (state.num_qubits() != state_.num_qubits()) {
        throw ExecutionError("register size cannot change");
    }
    state_ = std::move(state);
}

void World::write_var(const PartyId &party, const std::string &name, std::int64_t value) {
    auto it = var_owner_.find(name);
    if (it == var_owner_.end()) {
        var_owner_.emplace(name, party);
    } else if (it->second != party) {
        throw OwnershipError(party.name() + " cannot write variable '" + name + "' owned by " + it->second.name());
    }
    vars_[name] = value;
}

VarStore World::visible_vars(const PartyId &party) const {
    VarStore out;
    for (const auto &[name, value] : vars_) {
        if (var_owner_.at(name) == party) {
            out.emplace(name, value);
        }
    }
    return out;
}

std::int64_t World::read_var(const PartyId &party, const std::string &name) const {
    auto it = var_owner_.find(name);
    if (it == var_owner_.end()) {
        throw ExecutionError("unbound variable '" + name + "'");
    }
    if (it->second != party) {
        throw OwnershipError(party.name() + " cannot read variable '" + name + "' owned by " + it->second.name());
    }
    return vars_.at(name);
}

std::size_t World::resolve_qubit(const PartyId &party, const QubitRef &ref) const {
    if (const auto *i = std::get_if<std::size_t>(&ref.ref)) {
        if (*i >= qubit_owner_.size()) {
            throw ExecutionError("qubit q" + std::to_string(*i) + " does not exist");
        }
        return *i;
    }
    const auto &name = std::get<std::string>(ref.ref);
    auto it = aliases_.find({party, name});
    if (it == aliases_.end()) {
        throw ExecutionError("unbound qubit name '" + name + "' for " + party.name());
    }
    return it->second;
}

std::size_t World::owned_qubit(const PartyId &party, const QubitRef &ref) const {
    std::size_t i = resolve_qubit(party, ref);
    if (qubit_owner_[i] != party) {
        throw OwnershipError(party.name() + " does not own qubit q" + std::to_string(i) + " (owner: " +
                             qubit_owner_[i].name() + ")");
    }
    return i;
}

void World::set_owner(std::size_t qubit, PartyId party) {
    if (party.empty()) {
        throw ExecutionError("qubit owner cannot be empty");
    }
    qubit_owner_.at(qubit) = std::move(party);
}

void World::bind_alias(const PartyId &party, const std::string &name, std::size_t qubit) {
    aliases_[{party, name}] = qubit;
}

ChannelState &World::channel(const std::string &name) {
    auto it = channels_.find(name);
    if (it == channels_.end()) {
        throw ExecutionError("unknown channel '" + name + "'");
    }
    return it->second;
}

const ChannelState &World::channel(const std::string &name) const {
    auto it = channels_.find(name);
    if (it == channels_.end()) {
        throw ExecutionError("unknown channel '" + name + "'");
    }
    return it->second;
}

void World::add_channel(const std::string &name, ChannelState state) {
    if (!channels_.emplace(name, std::move(state)).second) {
        throw ExecutionError("channel '" + name + "' is already declared");
    }
}

void World::remove_channel(const std::string &name) {
    channels_.erase(name);
}

void World::check_invariants() const {
    if (qubit_owner_.size() != state_.num_qubits()) {
        throw ExecutionError("owner map does not cover the register");
    }
    for (std::size_t i = 0; i < qubit_owner_.size(); ++i) {
        if (qubit_owner_[i].empty()) {
            throw ExecutionError("qubit q" + std::to_string(i) + " has no owner");
        }
    }
    for (const auto &[name, ch] : channels_) {
        if (ch.read_cursor > ch.write_cursor() || ch.msg_script.size() != ch.time_script.size()) {
            throw ExecutionError("channel '" + name + "' cursors are inconsistent");
        }
    }
    for (const auto &[name, value] : vars_) {
        if (!var_owner_.count(name)) {
            throw ExecutionError("variable '" + name + "' has no owner");
        }
    }
}

bool same_world(const World &a, const World &b, double tolerance) {
    if (a.vars() != b.vars() || a.var_owner() != b.var_owner() || a.qubit_owner() != b.qubit_owner() ||
        a.aliases() != b.aliases() || a.channels() != b.channels() || a.c() != b.c() || a.q() != b.q() ||
        a.t() != b.t() || a.uncounted_sends() != b.uncounted_sends()) {
        return false;
    }
    return max_abs_diff(a.state(), b.state()) <= tolerance;
}

}  // namespace qlocc
