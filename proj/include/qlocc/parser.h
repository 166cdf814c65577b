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

#ifndef QLOCC_PARSER_H_
#define QLOCC_PARSER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlocc/program.h"
#include "qlocc/world.h"

namespace qlocc {

/// Values substituted at load time, as given on the command line.
struct ParseOverrides {
    /// Replaces the state of the single qubit not covered by `init bell`.
    std::optional<std::pair<Amplitude, Amplitude>> input_qubit;
    /// Replaces initial values of declared variables.
    std::map<std::string, std::int64_t> vars;
};

struct ParsedProtocol {
    std::string name;
    std::vector<PartyId> parties;
    Program program;
    World initial;
};

/// Parses a protocol description:
///
///     protocol NAME
///     party NAME
///     qubits K
///     owns PARTY q<i> ... [var NAME=INT ...]
///     init bell I J | init ket BITS | init amp INDEX RE IM ...
///     chan NAME bit PARTY -> PARTY      (or: int [RANGE])
///     qchan NAME PARTY -> PARTY
///     [PARTY:] apply GATE q<i> [q<j>]
///     [PARTY:] measure q<i> ... -> VAR ...
///     [PARTY:] send CHAN EXPR | recv CHAN -> VAR
///     [PARTY:] qsend QCHAN q<i> | qrecv QCHAN -> q<i>
///     [PARTY:] if EXPR { ... } [else { ... }]
///     [PARTY:] VAR := EXPR | ok | reset q<i> ... | checkpoint LABEL
///     par { PARTY: ... } { PARTY: ... }
///
/// `init ket` and `init amp` describe the qubits not paired by `init bell`, in
/// ascending order. A `PARTY:` label alone on a line sets the party for the
/// rest of the enclosing block. Errors carry line and column.
ParsedProtocol parse_protocol(std::string_view text, const ParseOverrides &overrides = {});

/// Reads and parses a UTF-8 file. A missing file is reported as a ParseError at line 0.
ParsedProtocol load_protocol_file(const std::filesystem::path &path, const ParseOverrides &overrides = {});

}  // namespace qlocc

#endif  // QLOCC_PARSER_H_
