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

#include "qlocc/verifier.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qlocc/errors.h"

namespace qlocc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kKeyTolerance = 1e-9;

bool same_key(const World &a, const World &b) {
    return a.vars() == b.vars() && a.qubit_owner() == b.qubit_owner() &&
           a.state().dimension() == b.state().dimension() && max_abs_diff(a.state(), b.state()) <= kKeyTolerance;
}

std::vector<WeightedWorld> group_by_key(const Distribution &d) {
    std::vector<WeightedWorld> out;
    for (const auto &b : d.branches) {
        auto it = std::find_if(out.begin(), out.end(), [&](const WeightedWorld &o) { return same_key(o.world, b.world); });
        if (it == out.end()) {
            out.push_back(b);
        } else {
            it->prob += b.prob;
        }
    }
    return out;
}

std::string delta_text(const char *name, std::int64_t value) {
    return std::string(name) + "'-" + name + "=" + std::to_string(value);
}

void evaluate(const Spec &spec, const World &initial, const Distribution &dist, double tolerance,
              VerifyReport &report) {
    std::visit(Overloaded{
                   [&](const BranchPredicate &p) {
                       for (std::size_t i = 0; i < dist.branches.size(); ++i) {
                           if (auto why = p.check(initial, dist.branches[i].world)) {
                               report.failures.push_back({static_cast<std::int64_t>(i), p.name, *why});
                           }
                       }
                   },
                   [&](const CounterDelta &cd) {
                       for (std::size_t i = 0; i < dist.branches.size(); ++i) {
                           const World &w = dist.branches[i].world;
                           auto idx = static_cast<std::int64_t>(i);
                           if (cd.classical_bits) {
                               auto dc = static_cast<std::int64_t>(w.c()) - static_cast<std::int64_t>(initial.c());
                               if (w.uncounted_sends()) {
                                   report.failures.push_back(
                                       {idx, "classical bit count undefined: int channel without a range was used",
                                        delta_text("c", dc)});
                               } else if (dc != *cd.classical_bits) {
                                   report.failures.push_back(
                                       {idx, "counter mismatch: expected " + delta_text("c", *cd.classical_bits),
                                        delta_text("c", dc)});
                               }
                           }
                           if (cd.quantum_bits) {
                               auto dq = static_cast<std::int64_t>(w.q()) - static_cast<std::int64_t>(initial.q());
                               if (dq != *cd.quantum_bits) {
                                   report.failures.push_back(
                                       {idx, "counter mismatch: expected " + delta_text("q", *cd.quantum_bits),
                                        delta_text("q", dq)});
                               }
                           }
                       }
                   },
                   [&](const ExpectedDistribution &e) {
                       auto match = compare_distributions(dist, e.target, tolerance);
                       report.max_prob_error = std::max(report.max_prob_error, match.max_error);
                       if (!match.equal) {
                           std::ostringstream measured;
                           measured << "max |dp| = " << match.max_error;
                           report.failures.push_back({-1, "distribution mismatch", measured.str()});
                       }
                   },
                   [&](const Conjunction &c) {
                       for (const auto &part : c.parts) {
                           evaluate(part, initial, dist, tolerance, report);
                       }
                   },
               },
               spec.node);
}

// Uniform double in [-1, 1) built from 53 random bits; portable across standard libraries.
double signed_unit(std::mt19937_64 &rng) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2 * u - 1;
}

Amplitude unit_disk(std::mt19937_64 &rng) {
    while (true) {
        double x = signed_unit(rng);
        double y = signed_unit(rng);
        if (x * x + y * y < 1) {
            return {x, y};
        }
    }
}

}  // namespace

DistributionMatch compare_distributions(const Distribution &a, const Distribution &b, double tolerance) {
    auto ga = group_by_key(a);
    auto gb = group_by_key(b);
    std::vector<bool> used(gb.size(), false);
    bool equal = true;
    double worst = 0;
    for (const auto &x : ga) {
        bool found = false;
        for (std::size_t j = 0; j < gb.size(); ++j) {
            if (!used[j] && same_key(x.world, gb[j].world)) {
                used[j] = true;
                found = true;
                worst = std::max(worst, std::abs(x.prob - gb[j].prob));
                break;
            }
        }
        if (!found) {
            equal = false;
            worst = std::max(worst, x.prob);
        }
    }
    for (std::size_t j = 0; j < gb.size(); ++j) {
        if (!used[j]) {
            equal = false;
            worst = std::max(worst, gb[j].prob);
        }
    }
    return {equal && worst <= tolerance, worst};
}

VerifyReport check_distribution(const World &initial, const Distribution &dist, const Spec &spec, double tolerance) {
    if (!(tolerance > 0)) {
        throw DomainError("tolerance must be positive");
    }
    VerifyReport report;
    report.trials = 1;
    double total = dist.total_probability();
    if (std::abs(total - 1) > tolerance) {
        std::ostringstream measured;
        measured << "total = " << total;
        report.failures.push_back({-1, "branch probabilities do not sum to 1", measured.str()});
    }
    evaluate(spec, initial, dist, tolerance, report);
    report.passed = report.failures.empty() && report.max_prob_error <= tolerance;
    return report;
}

VerifyReport check_spec(const Program &program, const World &initial, const Spec &spec, double tolerance) {
    if (!(tolerance > 0)) {
        throw DomainError("tolerance must be positive");
    }
    return check_distribution(initial, run(program, initial), spec, tolerance);
}

VerifyReport combine_reports(const std::vector<VerifyReport> &reports, double tolerance) {
    VerifyReport out;
    for (const auto &r : reports) {
        out.trials += r.trials;
        out.max_prob_error = std::max(out.max_prob_error, r.max_prob_error);
        out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
        out.passed = out.passed && r.passed;
    }
    out.passed = out.passed && out.failures.empty() && out.max_prob_error <= tolerance;
    return out;
}

std::string report_to_json(const VerifyReport &report) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto &f : report.failures) {
        failures.push_back({{"branch", f.branch}, {"reason", f.reason}, {"measured", f.measured}});
    }
    nlohmann::json doc = {
        {"passed", report.passed},
        {"trials", report.trials},
        {"max_prob_error", report.max_prob_error},
        {"failures", failures},
    };
    return doc.dump(2);
}

std::vector<std::pair<Amplitude, Amplitude>> sample_initial_states(std::size_t count, std::uint64_t seed) {
    if (count == 0) {
        throw DomainError("sample count must be at least 1");
    }
    const double r = 1 / std::sqrt(2.0);
    std::vector<std::pair<Amplitude, Amplitude>> out = {
        {1.0, 0.0},
        {0.0, 1.0},
        {r, r},
        {r, Amplitude(0, r)},
    };
    out.resize(std::min(count, out.size()));
    std::mt19937_64 rng(seed);
    while (out.size() < count) {
        Amplitude a = unit_disk(rng);
        Amplitude b = unit_disk(rng);
        double norm = std::sqrt(std::norm(a) + std::norm(b));
        if (norm < 1e-6) {
            continue;
        }
        out.emplace_back(a / norm, b / norm);
    }
    return out;
}

std::optional<StateVector> qubit_factor(const StateVector &state, std::size_t qubit, double tolerance) {
    std::size_t n = state.num_qubits();
    if (qubit >= n) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n) + " qubits");
    }
    std::size_t bit = std::size_t{1} << (n - 1 - qubit);

    std::size_t best = 0;
    double best_norm = -1;
    for (std::size_t r = 0; r < state.dimension(); ++r) {
        if (r & bit) {
            continue;
        }
        double nr = std::norm(state[r]) + std::norm(state[r | bit]);
        if (nr > best_norm + kExactTolerance) {
            best_norm = nr;
            best = r;
        }
    }
    double scale = std::sqrt(best_norm);
    Amplitude f0 = state[best] / scale;
    Amplitude f1 = state[best | bit] / scale;

    for (std::size_t r = 0; r < state.dimension(); ++r) {
        if (r & bit) {
            continue;
        }
        Amplitude coeff = std::conj(f0) * state[r] + std::conj(f1) * state[r | bit];
        if (std::abs(state[r] - coeff * f0) > tolerance || std::abs(state[r | bit] - coeff * f1) > tolerance) {
            return std::nullopt;
        }
    }
    return StateVector::normalized({f0, f1});
}

}  // namespace qlocc
