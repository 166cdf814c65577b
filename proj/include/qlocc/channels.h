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

#ifndef QLOCC_CHANNELS_H_
#define QLOCC_CHANNELS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "qlocc/world.h"

namespace qlocc {

// One-way channels with message and time scripts. Each function returns a new
// World; a receive on a channel with nothing unread returns nullopt (blocked).

/// Fresh channel with empty scripts and both cursors at 0. Rejects a name
/// already present, including one declared by an enclosing scope.
World declare_channel(const World &w, const std::string &name, ChannelKind kind, const PartyId &writer,
                      const PartyId &reader);

/// Removes the channel at scope exit. A qubit still in transit on it is an error.
World close_channel(const World &w, const std::string &name);

/// Appends `value` and the current time, advances the write cursor, charges
/// the channel's bits to c and advances t.
World send_classical(const World &w, const PartyId &party, const std::string &name, std::int64_t value);

/// Consumes the next message into `var`.
std::optional<World> recv_classical(const World &w, const PartyId &party, const std::string &name,
                                    const std::string &var);

/// Hands the qubit to the channel: the sender loses ownership, q and t advance,
/// amplitudes are untouched.
World send_quantum(const World &w, const PartyId &party, const std::string &name, const QubitRef &qubit);

/// Takes ownership of the next qubit in transit. A `q<i>` binder requires the
/// transported qubit to be q<i>; a named binder becomes an alias for it.
std::optional<World> recv_quantum(const World &w, const PartyId &party, const std::string &name,
                                  const QubitRef &binder);

}  // namespace qlocc

#endif  // QLOCC_CHANNELS_H_
