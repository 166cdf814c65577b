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

#include "qlocc/channels.h"

#include "qlocc/errors.h"

namespace qlocc {

namespace {

ChannelState &endpoint(World &w, const std::string &name, const PartyId &party, bool writing, bool quantum) {
    ChannelState &ch = w.channel(name);
    if (ch.kind.is_quantum() != quantum) {
        throw ExecutionError("channel '" + name + "' carries " + ch.kind.to_string() + ", not " +
                             (quantum ? "qubits" : "classical values"));
    }
    const PartyId &expected = writing ? ch.writer : ch.reader;
    if (party != expected) {
        throw ExecutionError(party.name() + " is not the " + (writing ? "writer" : "reader") + " of channel '" +
                             name + "' (" + expected.name() + " is)");
    }
    return ch;
}

}  // namespace

World declare_channel(const World &w, const std::string &name, ChannelKind kind, const PartyId &writer,
                      const PartyId &reader) {
    if (w.has_channel(name)) {
        throw ExecutionError("channel '" + name + "' is already declared in an enclosing scope");
    }
    if (writer.empty() || reader.empty()) {
        throw ExecutionError("channel '" + name + "' needs a writer and a reader");
    }
    World out = w;
    out.add_channel(name, ChannelState{kind, writer, reader, {}, {}, 0});
    return out;
}

World close_channel(const World &w, const std::string &name) {
    const ChannelState &ch = w.channel(name);
    if (ch.kind.is_quantum()) {
        PartyId holder = PartyId::in_transit(name);
        for (std::size_t i = 0; i < w.num_qubits(); ++i) {
            if (w.qubit_owner()[i] == holder) {
                throw ExecutionError("qubit q" + std::to_string(i) + " is still in transit when channel '" + name +
                                     "' goes out of scope");
            }
        }
    }
    World out = w;
    out.remove_channel(name);
    return out;
}

World send_classical(const World &w, const PartyId &party, const std::string &name, std::int64_t value) {
    World out = w;
    ChannelState &ch = endpoint(out, name, party, /*writing=*/true, /*quantum=*/false);
    if (ch.kind.type == ChannelKind::Type::Bit && value != 0 && value != 1) {
        throw ExecutionError("value " + std::to_string(value) + " sent on bit channel '" + name + "'");
    }
    if (ch.kind.range && (value < 0 || static_cast<std::uint64_t>(value) >= *ch.kind.range)) {
        throw ExecutionError("value " + std::to_string(value) + " outside the range of channel '" + name + "'");
    }
    ch.msg_script.push_back(value);
    ch.time_script.push_back(out.t());
    if (auto bits = ch.kind.bits_per_send()) {
        out.add_classical_bits(*bits);
    } else {
        out.mark_uncounted();
    }
    out.tick();
    return out;
}

std::optional<World> recv_classical(const World &w, const PartyId &party, const std::string &name,
                                    const std::string &var) {
    World out = w;
    ChannelState &ch = endpoint(out, name, party, /*writing=*/false, /*quantum=*/false);
    if (ch.read_cursor >= ch.write_cursor()) {
        return std::nullopt;
    }
    std::int64_t value = ch.msg_script[ch.read_cursor];
    ++ch.read_cursor;
    out.write_var(party, var, value);
    return out;
}

World send_quantum(const World &w, const PartyId &party, const std::string &name, const QubitRef &qubit) {
    World out = w;
    ChannelState &ch = endpoint(out, name, party, /*writing=*/true, /*quantum=*/true);
    std::size_t index = out.owned_qubit(party, qubit);
    ch.msg_script.push_back(static_cast<std::int64_t>(index));
    ch.time_script.push_back(out.t());
    out.set_owner(index, PartyId::in_transit(name));
    out.add_quantum_bits(1);
    out.tick();
    return out;
}

std::optional<World> recv_quantum(const World &w, const PartyId &party, const std::string &name,
                                  const QubitRef &binder) {
    World out = w;
    ChannelState &ch = endpoint(out, name, party, /*writing=*/false, /*quantum=*/true);
    if (ch.read_cursor >= ch.write_cursor()) {
        return std::nullopt;
    }
    auto index = static_cast<std::size_t>(ch.msg_script[ch.read_cursor]);
    if (const auto *expected = std::get_if<std::size_t>(&binder.ref); expected && *expected != index) {
        throw ExecutionError(party.name() + " expected q" + std::to_string(*expected) + " on channel '" + name +
                             "' but received q" + std::to_string(index));
    }
    ++ch.read_cursor;
    out.set_owner(index, party);
    if (const auto *alias = std::get_if<std::string>(&binder.ref)) {
        out.bind_alias(party, *alias, index);
    }
    return out;
}

}  // namespace qlocc
