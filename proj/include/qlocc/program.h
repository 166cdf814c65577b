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

#ifndef QLOCC_PROGRAM_H_
#define QLOCC_PROGRAM_H_

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qlocc/expr.h"
#include "qlocc/quantum.h"
#include "qlocc/world.h"

namespace qlocc {

struct SourceLoc {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Stmt;
using Program = std::shared_ptr<const Stmt>;

namespace stmt {

struct Ok {
    PartyId party;
};
struct Assign {
    PartyId party;
    std::string var;
    Expr value;
};
/// Resets the listed qubits to |0...0>. On an entangled register this acts
/// like an unrecorded measurement followed by X on every qubit read as 1.
struct InitQubits {
    PartyId party;
    std::vector<QubitRef> qubits;
};
struct Apply {
    PartyId party;
    Operator op;
    std::string label;
    std::vector<QubitRef> targets;
};
/// Computational-basis measurement of `targets`. `results` holds one name per
/// target (bitwise split, first target first) or a single name for the packed outcome.
struct Measure {
    PartyId party;
    std::vector<QubitRef> targets;
    std::vector<std::string> results;
};
struct SendC {
    PartyId party;
    std::string channel;
    Expr value;
};
struct RecvC {
    PartyId party;
    std::string channel;
    std::string var;
};
struct SendQ {
    PartyId party;
    std::string channel;
    QubitRef qubit;
};
struct RecvQ {
    PartyId party;
    std::string channel;
    QubitRef binder;
};
struct Seq {
    std::vector<Program> body;
};
struct Par {
    Program left;
    Program right;
};
struct If {
    PartyId party;
    Expr cond;
    Program then_branch;
    Program else_branch;
};
/// `p` times the first program plus `1 - p` times the second.
struct ProbIf {
    double p;
    Program then_branch;
    Program else_branch;
};
/// Classical or quantum channel scoped to `body`.
struct DeclChan {
    std::string name;
    ChannelKind kind;
    PartyId writer;
    PartyId reader;
    Program body;
};
/// Reports the current world to RunOptions::on_checkpoint; no effect otherwise.
struct Checkpoint {
    std::string label;
};
/// Closes a channel scope. Produced by the runtime, never by builders.
struct ScopeExit {
    std::string channel;
};

}  // namespace stmt

struct Stmt {
    std::variant<stmt::Ok, stmt::Assign, stmt::InitQubits, stmt::Apply, stmt::Measure, stmt::SendC, stmt::RecvC,
                 stmt::SendQ, stmt::RecvQ, stmt::Seq, stmt::Par, stmt::If, stmt::ProbIf, stmt::DeclChan,
                 stmt::Checkpoint, stmt::ScopeExit>
        node;
    SourceLoc loc;

    /// One-line rendering used in error messages, e.g. "Alice: apply H q0 (line 7)".
    std::string describe() const;
};

/// Program constructors.
namespace prog {

Program ok(PartyId party = {});
Program assign(PartyId party, std::string var, Expr value);
Program init_qubits(PartyId party, std::vector<QubitRef> qubits);
Program apply(PartyId party, GateId gate, std::vector<QubitRef> targets);
Program apply(PartyId party, Operator op, std::string label, std::vector<QubitRef> targets);
Program measure(PartyId party, std::vector<QubitRef> targets, std::vector<std::string> results);
Program send(PartyId party, std::string channel, Expr value);
Program recv(PartyId party, std::string channel, std::string var);
Program qsend(PartyId party, std::string channel, QubitRef qubit);
Program qrecv(PartyId party, std::string channel, QubitRef binder);
Program seq(std::vector<Program> body);
Program par(Program left, Program right);
Program if_then(PartyId party, Expr cond, Program then_branch, Program else_branch = nullptr);
Program prob_if(double p, Program then_branch, Program else_branch);
Program chan(std::string name, ChannelKind kind, PartyId writer, PartyId reader, Program body);
Program qchan(std::string name, PartyId writer, PartyId reader, Program body);
Program checkpoint(std::string label);

/// Copy of `p` carrying a source location.
Program located(const Program &p, SourceLoc loc);

/// Shorthand for a register index.
inline QubitRef q(std::size_t i) {
    return QubitRef::index(i);
}

}  // namespace prog

}  // namespace qlocc

#endif  // QLOCC_PROGRAM_H_
