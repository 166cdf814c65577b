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

#include "qlocc/program.h"

#include "qlocc/errors.h"

namespace qlocc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join_refs(const std::vector<QubitRef> &refs) {
    std::string out;
    for (const auto &r : refs) {
        if (!out.empty()) {
            out += ' ';
        }
        out += r.to_string();
    }
    return out;
}

std::string join_names(const std::vector<std::string> &names) {
    std::string out;
    for (const auto &n : names) {
        if (!out.empty()) {
            out += ' ';
        }
        out += n;
    }
    return out;
}

std::string with_party(const PartyId &party, const std::string &text) {
    return party.empty() ? text : party.name() + ": " + text;
}

Program make(decltype(Stmt::node) node) {
    return std::make_shared<const Stmt>(Stmt{std::move(node), {}});
}

Program or_ok(Program p) {
    return p ? p : prog::ok();
}

}  // namespace

std::string Stmt::describe() const {
    std::string text = std::visit(
        Overloaded{
            [](const stmt::Ok &s) { return with_party(s.party, "ok"); },
            [](const stmt::Assign &s) { return with_party(s.party, s.var + " := " + s.value.to_string()); },
            [](const stmt::InitQubits &s) { return with_party(s.party, "reset " + join_refs(s.qubits)); },
            [](const stmt::Apply &s) { return with_party(s.party, "apply " + s.label + " " + join_refs(s.targets)); },
            [](const stmt::Measure &s) {
                return with_party(s.party, "measure " + join_refs(s.targets) + " -> " + join_names(s.results));
            },
            [](const stmt::SendC &s) { return with_party(s.party, "send " + s.channel + " " + s.value.to_string()); },
            [](const stmt::RecvC &s) { return with_party(s.party, "recv " + s.channel + " -> " + s.var); },
            [](const stmt::SendQ &s) { return with_party(s.party, "qsend " + s.channel + " " + s.qubit.to_string()); },
            [](const stmt::RecvQ &s) {
                return with_party(s.party, "qrecv " + s.channel + " -> " + s.binder.to_string());
            },
            [](const stmt::Seq &) { return std::string("sequence"); },
            [](const stmt::Par &) { return std::string("par"); },
            [](const stmt::If &s) { return with_party(s.party, "if " + s.cond.to_string()); },
            [](const stmt::ProbIf &s) { return "if with probability " + std::to_string(s.p); },
            [](const stmt::DeclChan &s) {
                return std::string(s.kind.is_quantum() ? "qchan " : "chan ") + s.name + " " + s.writer.name() +
                       " -> " + s.reader.name();
            },
            [](const stmt::Checkpoint &s) { return "checkpoint " + s.label; },
            [](const stmt::ScopeExit &s) { return "end of channel " + s.channel; },
        },
        node);
    if (loc.line != 0) {
        text += " (line " + std::to_string(loc.line) + ")";
    }
    return text;
}

namespace prog {

Program ok(PartyId party) {
    return make(stmt::Ok{std::move(party)});
}

Program assign(PartyId party, std::string var, Expr value) {
    return make(stmt::Assign{std::move(party), std::move(var), std::move(value)});
}

Program init_qubits(PartyId party, std::vector<QubitRef> qubits) {
    if (qubits.empty()) {
        throw DomainError("reset needs at least one qubit");
    }
    return make(stmt::InitQubits{std::move(party), std::move(qubits)});
}

Program apply(PartyId party, GateId gate, std::vector<QubitRef> targets) {
    return apply(std::move(party), Operator::gate(gate), std::string(gate_name(gate)), std::move(targets));
}

Program apply(PartyId party, Operator op, std::string label, std::vector<QubitRef> targets) {
    if (op.num_qubits() != targets.size()) {
        throw DomainError(label + " acts on " + std::to_string(op.num_qubits()) + " qubits but " +
                          std::to_string(targets.size()) + " targets were given");
    }
    return make(stmt::Apply{std::move(party), std::move(op), std::move(label), std::move(targets)});
}

Program measure(PartyId party, std::vector<QubitRef> targets, std::vector<std::string> results) {
    if (targets.empty()) {
        throw DomainError("measure needs at least one qubit");
    }
    if (results.size() != targets.size() && results.size() != 1) {
        throw DomainError("measure of " + std::to_string(targets.size()) + " qubits binds " +
                          std::to_string(results.size()) + " variables");
    }
    return make(stmt::Measure{std::move(party), std::move(targets), std::move(results)});
}

Program send(PartyId party, std::string channel, Expr value) {
    return make(stmt::SendC{std::move(party), std::move(channel), std::move(value)});
}

Program recv(PartyId party, std::string channel, std::string var) {
    return make(stmt::RecvC{std::move(party), std::move(channel), std::move(var)});
}

Program qsend(PartyId party, std::string channel, QubitRef qubit) {
    return make(stmt::SendQ{std::move(party), std::move(channel), std::move(qubit)});
}

Program qrecv(PartyId party, std::string channel, QubitRef binder) {
    return make(stmt::RecvQ{std::move(party), std::move(channel), std::move(binder)});
}

Program seq(std::vector<Program> body) {
    for (auto &p : body) {
        p = or_ok(std::move(p));
    }
    return make(stmt::Seq{std::move(body)});
}

Program par(Program left, Program right) {
    return make(stmt::Par{or_ok(std::move(left)), or_ok(std::move(right))});
}

Program if_then(PartyId party, Expr cond, Program then_branch, Program else_branch) {
    return make(stmt::If{std::move(party), std::move(cond), or_ok(std::move(then_branch)),
                         or_ok(std::move(else_branch))});
}

Program prob_if(double p, Program then_branch, Program else_branch) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("branch probability " + std::to_string(p) + " is outside [0, 1]");
    }
    return make(stmt::ProbIf{p, or_ok(std::move(then_branch)), or_ok(std::move(else_branch))});
}

Program chan(std::string name, ChannelKind kind, PartyId writer, PartyId reader, Program body) {
    return make(stmt::DeclChan{std::move(name), kind, std::move(writer), std::move(reader), or_ok(std::move(body))});
}

Program qchan(std::string name, PartyId writer, PartyId reader, Program body) {
    return chan(std::move(name), ChannelKind::quantum(), std::move(writer), std::move(reader), std::move(body));
}

Program checkpoint(std::string label) {
    return make(stmt::Checkpoint{std::move(label)});
}

Program located(const Program &p, SourceLoc loc) {
    return std::make_shared<const Stmt>(Stmt{p->node, loc});
}

}  // namespace prog

}  // namespace qlocc
