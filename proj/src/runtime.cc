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

#include "qlocc/runtime.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

#include "qlocc/channels.h"
#include "qlocc/errors.h"
#include "qlocc/measurement.h"

namespace qlocc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct ForkState;

// A process: a stack of statements (next one at the back), preceded by an
// active parallel composition when `fork` is set.
struct Task {
    std::vector<Program> stack;
    std::shared_ptr<const ForkState> fork;

    bool done() const {
        return !fork && stack.empty();
    }
};

struct ForkState {
    Task left;
    Task right;
    // Round-robin: the side that did not move last goes next. Left wins ties.
    bool right_next = false;
};

struct Successor {
    double weight;
    Task task;
    World world;
    std::string note;
};

struct StepOutcome {
    enum class Kind { Stepped, Blocked, Finished };
    Kind kind;
    std::vector<Successor> next;
    std::vector<std::string> blocked;

    static StepOutcome finished() {
        return {Kind::Finished, {}, {}};
    }
    static StepOutcome blocked_on(std::string what) {
        return {Kind::Blocked, {}, {std::move(what)}};
    }
    static StepOutcome single(Task task, World world) {
        StepOutcome out{Kind::Stepped, {}, {}};
        out.next.push_back({1.0, std::move(task), std::move(world), {}});
        return out;
    }
};

struct StepContext {
    double path_prob;
    const RunOptions &options;
};

[[noreturn]] void rethrow_with_prefix(const std::string &prefix) {
    try {
        throw;
    } catch (const OwnershipError &e) {
        throw OwnershipError(prefix + ": " + e.what());
    } catch (const DeadlockError &e) {
        throw DeadlockError(prefix + ": " + e.what());
    } catch (const DomainError &e) {
        throw DomainError(prefix + ": " + e.what());
    } catch (const Error &e) {
        throw ExecutionError(prefix + ": " + e.what());
    }
}

std::vector<std::size_t> owned_targets(const World &w, const PartyId &party, const std::vector<QubitRef> &refs) {
    std::vector<std::size_t> out;
    out.reserve(refs.size());
    for (const auto &r : refs) {
        out.push_back(w.owned_qubit(party, r));
    }
    return out;
}

std::int64_t eval_as(const World &w, const PartyId &party, const Expr &e) {
    VarStore store;
    for (const auto &name : free_vars(e)) {
        store.emplace(name, w.read_var(party, name));
    }
    return eval_expr(e, store);
}

void require_party(const PartyId &party) {
    if (party.empty()) {
        throw ExecutionError("statement has no owning party");
    }
    if (party.is_channel()) {
        throw ExecutionError("'" + party.name() + "' is reserved for channels");
    }
}

// A final register in a single basis state up to phase is reported as that ket.
StateVector canonical_collapse(StateVector state) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < state.dimension(); ++i) {
        if (std::abs(state[i]) > std::abs(state[k])) {
            k = i;
        }
    }
    if (std::abs(std::abs(state[k]) - 1) <= kExactTolerance) {
        return ket(k, state.num_qubits());
    }
    return state;
}

std::string bits_of(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        if ((value >> (width - 1 - k)) & 1) {
            out[k] = '1';
        }
    }
    return out;
}

StepOutcome step(const Task &task, const World &world, const StepContext &ctx);

StepOutcome step_fork(const Task &task, const World &world, const StepContext &ctx) {
    const ForkState &fork = *task.fork;
    if (fork.left.done() && fork.right.done()) {
        Task joined{task.stack, nullptr};
        return step(joined, world, ctx);
    }
    std::vector<std::string> blocked;
    const bool sides[2] = {fork.right_next, !fork.right_next};
    for (bool right : sides) {
        const Task &child = right ? fork.right : fork.left;
        if (child.done()) {
            continue;
        }
        StepOutcome r = step(child, world, ctx);
        if (r.kind == StepOutcome::Kind::Blocked) {
            blocked.insert(blocked.end(), r.blocked.begin(), r.blocked.end());
            continue;
        }
        if (r.kind == StepOutcome::Kind::Finished) {
            // The child only had an exhausted fork left; drop it.
            r = StepOutcome::single(Task{}, world);
        }
        for (auto &s : r.next) {
            auto next_fork = std::make_shared<ForkState>(fork);
            (right ? next_fork->right : next_fork->left) = std::move(s.task);
            next_fork->right_next = !right;
            s.task = Task{task.stack, std::move(next_fork)};
        }
        return r;
    }
    StepOutcome out{StepOutcome::Kind::Blocked, {}, std::move(blocked)};
    return out;
}

StepOutcome step(const Task &task, const World &world, const StepContext &ctx) {
    if (task.fork) {
        return step_fork(task, world, ctx);
    }
    if (task.stack.empty()) {
        return StepOutcome::finished();
    }

    const Program &current = task.stack.back();
    Task rest{std::vector<Program>(task.stack.begin(), task.stack.end() - 1), nullptr};
    auto push = [](Task t, const Program &p) {
        t.stack.push_back(p);
        return t;
    };

    try {
        return std::visit(
            Overloaded{
                [&](const stmt::Ok &) { return StepOutcome::single(rest, world); },
                [&](const stmt::Seq &s) {
                    Task t = rest;
                    for (auto it = s.body.rbegin(); it != s.body.rend(); ++it) {
                        t.stack.push_back(*it);
                    }
                    return StepOutcome::single(std::move(t), world);
                },
                [&](const stmt::Par &s) {
                    auto fork = std::make_shared<ForkState>();
                    fork->left.stack.push_back(s.left);
                    fork->right.stack.push_back(s.right);
                    return StepOutcome::single(Task{rest.stack, std::move(fork)}, world);
                },
                [&](const stmt::Assign &s) {
                    require_party(s.party);
                    World w = world;
                    w.write_var(s.party, s.var, eval_as(world, s.party, s.value));
                    return StepOutcome::single(rest, std::move(w));
                },
                [&](const stmt::If &s) {
                    require_party(s.party);
                    bool taken = eval_as(world, s.party, s.cond) != 0;
                    return StepOutcome::single(push(rest, taken ? s.then_branch : s.else_branch), world);
                },
                [&](const stmt::ProbIf &s) {
                    StepOutcome out{StepOutcome::Kind::Stepped, {}, {}};
                    if (s.p > 0) {
                        out.next.push_back({s.p, push(rest, s.then_branch), world, "probabilistic branch: first"});
                    }
                    if (s.p < 1) {
                        out.next.push_back(
                            {1 - s.p, push(rest, s.else_branch), world, "probabilistic branch: second"});
                    }
                    return out;
                },
                [&](const stmt::Apply &s) {
                    require_party(s.party);
                    auto targets = owned_targets(world, s.party, s.targets);
                    World w = world;
                    w.set_state(apply(embed(s.op, targets, world.num_qubits()), world.state()));
                    return StepOutcome::single(rest, std::move(w));
                },
                [&](const stmt::Measure &s) {
                    require_party(s.party);
                    auto targets = owned_targets(world, s.party, s.targets);
                    StepOutcome out{StepOutcome::Kind::Stepped, {}, {}};
                    for (auto &b : measure_subset(world.state(), targets)) {
                        World w = world;
                        w.set_state(std::move(b.post_state));
                        if (s.results.size() == 1) {
                            w.write_var(s.party, s.results[0], static_cast<std::int64_t>(b.outcome));
                        } else {
                            for (std::size_t k = 0; k < s.results.size(); ++k) {
                                auto bit = (b.outcome >> (s.results.size() - 1 - k)) & 1;
                                w.write_var(s.party, s.results[k], static_cast<std::int64_t>(bit));
                            }
                        }
                        out.next.push_back({b.prob, rest, std::move(w),
                                            current->describe() + " = " + bits_of(b.outcome, targets.size())});
                    }
                    return out;
                },
                [&](const stmt::InitQubits &s) {
                    require_party(s.party);
                    auto targets = owned_targets(world, s.party, s.qubits);
                    StepOutcome out{StepOutcome::Kind::Stepped, {}, {}};
                    const Operator x = Operator::gate(GateId::X);
                    for (auto &b : measure_subset(world.state(), targets)) {
                        StateVector state = std::move(b.post_state);
                        for (std::size_t k = 0; k < targets.size(); ++k) {
                            if ((b.outcome >> (targets.size() - 1 - k)) & 1) {
                                state = apply(lift(x, targets[k], world.num_qubits()), state);
                            }
                        }
                        World w = world;
                        w.set_state(std::move(state));
                        out.next.push_back({b.prob, rest, std::move(w), {}});
                    }
                    return out;
                },
                [&](const stmt::SendC &s) {
                    require_party(s.party);
                    return StepOutcome::single(
                        rest, send_classical(world, s.party, s.channel, eval_as(world, s.party, s.value)));
                },
                [&](const stmt::RecvC &s) {
                    require_party(s.party);
                    auto w = recv_classical(world, s.party, s.channel, s.var);
                    if (!w) {
                        return StepOutcome::blocked_on(current->describe());
                    }
                    return StepOutcome::single(rest, std::move(*w));
                },
                [&](const stmt::SendQ &s) {
                    require_party(s.party);
                    return StepOutcome::single(rest, send_quantum(world, s.party, s.channel, s.qubit));
                },
                [&](const stmt::RecvQ &s) {
                    require_party(s.party);
                    auto w = recv_quantum(world, s.party, s.channel, s.binder);
                    if (!w) {
                        return StepOutcome::blocked_on(current->describe());
                    }
                    return StepOutcome::single(rest, std::move(*w));
                },
                [&](const stmt::DeclChan &s) {
                    World w = declare_channel(world, s.name, s.kind, s.writer, s.reader);
                    Task t = push(rest, std::make_shared<const Stmt>(Stmt{stmt::ScopeExit{s.name}, current->loc}));
                    return StepOutcome::single(push(std::move(t), s.body), std::move(w));
                },
                [&](const stmt::ScopeExit &s) { return StepOutcome::single(rest, close_channel(world, s.channel)); },
                [&](const stmt::Checkpoint &s) {
                    if (ctx.options.on_checkpoint) {
                        ctx.options.on_checkpoint(s.label, ctx.path_prob, world);
                    }
                    return StepOutcome::single(rest, world);
                },
            },
            current->node);
    } catch (const Error &) {
        rethrow_with_prefix(current->describe());
    }
}

struct Config {
    double prob;
    Task task;
    World world;
    std::vector<std::string> trace;
};

FailureKind classify(const std::exception_ptr &error) {
    try {
        std::rethrow_exception(error);
    } catch (const OwnershipError &) {
        return FailureKind::Ownership;
    } catch (const DeadlockError &) {
        return FailureKind::Deadlock;
    } catch (const DomainError &) {
        return FailureKind::Domain;
    } catch (...) {
        return FailureKind::Execution;
    }
}

std::string join_trace(const std::vector<std::string> &trace) {
    std::string out;
    for (const auto &t : trace) {
        out += out.empty() ? "" : "; ";
        out += t;
    }
    return out;
}

}  // namespace

double Distribution::total_probability() const {
    double total = 0;
    for (const auto &b : branches) {
        total += b.prob;
    }
    return total;
}

std::string_view failure_kind_name(FailureKind kind) {
    switch (kind) {
        case FailureKind::Ownership:
            return "ownership";
        case FailureKind::Deadlock:
            return "deadlock";
        case FailureKind::Execution:
            return "execution";
        case FailureKind::Domain:
            return "domain";
    }
    return "?";
}

Exploration explore(const Program &program, const World &initial, const RunOptions &options) {
    initial.check_invariants();
    Exploration result;
    std::vector<Config> pending;
    pending.push_back({1.0, Task{{program}, nullptr}, initial, {}});

    while (!pending.empty()) {
        Config cfg = std::move(pending.back());
        pending.pop_back();
        while (true) {
            StepOutcome out;
            try {
                out = step(cfg.task, cfg.world, StepContext{cfg.prob, options});
                if (out.kind == StepOutcome::Kind::Blocked) {
                    std::string what;
                    for (const auto &b : out.blocked) {
                        what += what.empty() ? "" : "; ";
                        what += b;
                    }
                    throw DeadlockError("deadlock: no process can proceed; blocked on " + what);
                }
                if (options.check_invariants) {
                    for (const auto &s : out.next) {
                        s.world.check_invariants();
                    }
                }
            } catch (const Error &e) {
                auto kind = classify(std::current_exception());
                result.failures.push_back({cfg.prob, kind, e.what(), cfg.trace});
                break;
            }
            if (out.kind == StepOutcome::Kind::Finished) {
                cfg.world.set_state(canonical_collapse(cfg.world.state()));
                result.finished.branches.push_back({cfg.prob, std::move(cfg.world)});
                break;
            }
            if (out.next.size() == 1) {
                auto &s = out.next.front();
                cfg.prob *= s.weight;
                cfg.task = std::move(s.task);
                cfg.world = std::move(s.world);
                if (!s.note.empty()) {
                    cfg.trace.push_back(std::move(s.note));
                }
                continue;
            }
            // Push in reverse so the first outcome is explored first.
            for (auto it = out.next.rbegin(); it != out.next.rend(); ++it) {
                Config child{cfg.prob * it->weight, std::move(it->task), std::move(it->world), cfg.trace};
                if (!it->note.empty()) {
                    child.trace.push_back(std::move(it->note));
                }
                pending.push_back(std::move(child));
            }
            break;
        }
    }
    result.finished = merge_identical(result.finished);
    return result;
}

Distribution run(const Program &program, const World &initial, const RunOptions &options) {
    Exploration ex = explore(program, initial, options);
    if (!ex.failures.empty()) {
        const BranchFailure &f = ex.failures.front();
        std::string message = f.message;
        if (!f.trace.empty()) {
            message += " [branch: " + join_trace(f.trace) + "]";
        }
        switch (f.kind) {
            case FailureKind::Ownership:
                throw OwnershipError(message);
            case FailureKind::Deadlock:
                throw DeadlockError(message);
            case FailureKind::Domain:
                throw DomainError(message);
            case FailureKind::Execution:
                throw ExecutionError(message);
        }
    }
    return std::move(ex.finished);
}

Distribution step_parallel(const Program &left, const Program &right, const World &initial,
                           const RunOptions &options) {
    return run(prog::par(left, right), initial, options);
}

Distribution merge_identical(const Distribution &d) {
    Distribution out;
    for (const auto &b : d.branches) {
        auto it = std::find_if(out.branches.begin(), out.branches.end(),
                               [&](const WeightedWorld &o) { return same_world(o.world, b.world); });
        if (it == out.branches.end()) {
            out.branches.push_back(b);
        } else {
            it->prob += b.prob;
        }
    }
    return out;
}

void sort_by_outcome(Distribution &d) {
    auto amp_less = [](const StateVector &a, const StateVector &b) {
        for (std::size_t k = 0; k < std::min(a.dimension(), b.dimension()); ++k) {
            if (a[k].real() != b[k].real()) {
                return a[k].real() < b[k].real();
            }
            if (a[k].imag() != b[k].imag()) {
                return a[k].imag() < b[k].imag();
            }
        }
        return a.dimension() < b.dimension();
    };
    std::stable_sort(d.branches.begin(), d.branches.end(), [&](const WeightedWorld &a, const WeightedWorld &b) {
        if (a.world.vars() != b.world.vars()) {
            return a.world.vars() < b.world.vars();
        }
        return amp_less(a.world.state(), b.world.state());
    });
}

}  // namespace qlocc
