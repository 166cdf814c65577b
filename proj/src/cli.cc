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

#include "qlocc/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlocc/errors.h"
#include "qlocc/parser.h"
#include "qlocc/protocols.h"
#include "qlocc/runtime.h"

namespace qlocc {

namespace {

struct Options {
    std::string subject;
    double tolerance = 1e-9;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string alpha;
    std::string beta;
    std::optional<int> a0;
    std::optional<int> a1;
};

class UsageError : public Error {
   public:
    using Error::Error;
};

// Rounds away printf's "-0.000000".
double tidy(double x) {
    return std::abs(x) < 5e-7 ? 0.0 : x;
}

std::string fixed6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", tidy(x));
    return buf;
}

std::string complex6(Amplitude a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", tidy(a.real()), tidy(a.imag()));
    return buf;
}

std::string basis_label(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if ((index >> (n - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return "|" + s + ">";
}

Amplitude parse_complex(const std::string &text, const char *flag) {
    auto comma = text.find(',');
    std::string re_text = comma == std::string::npos ? text : text.substr(0, comma);
    std::string im_text = comma == std::string::npos ? "0" : text.substr(comma + 1);
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (s.empty() || used != s.size() || !std::isfinite(v)) {
            throw UsageError(std::string(flag) + " expects RE,IM, got '" + text + "'");
        }
        return v;
    };
    return {number(re_text), number(im_text)};
}

std::optional<std::pair<Amplitude, Amplitude>> input_qubit(const Options &o) {
    if (o.alpha.empty() && o.beta.empty()) {
        return std::nullopt;
    }
    if (o.alpha.empty() || o.beta.empty()) {
        throw UsageError("--alpha and --beta must be given together");
    }
    return std::make_pair(parse_complex(o.alpha, "--alpha"), parse_complex(o.beta, "--beta"));
}

ParseOverrides overrides_from(const Options &o) {
    ParseOverrides ov;
    ov.input_qubit = input_qubit(o);
    if (o.a0) {
        ov.vars["a0"] = *o.a0;
    }
    if (o.a1) {
        ov.vars["a1"] = *o.a1;
    }
    return ov;
}

ParsedProtocol load(const std::string &path, const ParseOverrides &ov) {
    if (!std::filesystem::exists(path)) {
        throw UsageError("no such file: " + path);
    }
    return load_protocol_file(path, ov);
}

nlohmann::json branch_json(const WeightedWorld &b) {
    const World &w = b.world;
    nlohmann::json owners = nlohmann::json::array();
    for (const auto &p : w.qubit_owner()) {
        owners.push_back(p.name());
    }
    nlohmann::json state = nlohmann::json::array();
    for (const auto &a : w.state().amplitudes()) {
        state.push_back({tidy(a.real()), tidy(a.imag())});
    }
    return {
        {"prob", b.prob}, {"vars", w.vars()}, {"qubit_owner", owners},
        {"c", w.c()},     {"q", w.q()},       {"t", w.t()},
        {"state", state},
    };
}

void print_distribution(const std::string &name, const Distribution &d, const Options &o, std::ostream &out) {
    if (o.format == "json") {
        nlohmann::json branches = nlohmann::json::array();
        for (const auto &b : d.branches) {
            branches.push_back(branch_json(b));
        }
        out << nlohmann::json{{"protocol", name}, {"branches", branches}}.dump(2) << "\n";
        return;
    }
    out << name << ": " << d.branches.size() << (d.branches.size() == 1 ? " branch" : " branches") << "\n";
    for (const auto &b : d.branches) {
        const World &w = b.world;
        out << fixed6(b.prob);
        for (const auto &[var, value] : w.vars()) {
            out << "  " << var << "=" << value;
        }
        out << "  c=" << w.c() << " q=" << w.q() << " t=" << w.t() << "\n";
        out << "    owners";
        for (std::size_t i = 0; i < w.num_qubits(); ++i) {
            out << " q" << i << ":" << w.qubit_owner()[i].name();
        }
        out << "\n    state ";
        std::size_t n = w.num_qubits();
        bool first = true;
        for (std::size_t i = 0; i < w.state().dimension(); ++i) {
            Amplitude a = w.state()[i];
            if (std::abs(a) < 5e-7) {
                continue;
            }
            out << (first ? " " : " + ") << "(" << complex6(a) << ")" << basis_label(i, n);
            first = false;
        }
        out << "\n";
    }
}

int run_command(const Options &o, std::ostream &out, std::ostream &err) {
    ParsedProtocol p = load(o.subject, overrides_from(o));
    Distribution d;
    try {
        d = run(p.program, p.initial);
    } catch (const Error &e) {
        err << "qlocc: run failed: " << e.what() << "\n";
        return kExitSpecFailure;
    }
    sort_by_outcome(d);
    print_distribution(p.name, d, o, out);
    return kExitPass;
}

int report(const std::string &name, const SuiteResult &result, const Options &o, std::ostream &out) {
    if (o.format == "json") {
        out << report_to_json(result.overall) << "\n";
    } else {
        std::size_t passed = 0;
        for (const auto &row : result.rows) {
            passed += row.report.passed ? 1 : 0;
            out << (row.report.passed ? "PASS" : "FAIL") << "  " << row.label << "  branches=" << row.branches
                << "\n";
            for (const auto &f : row.report.failures) {
                out << "      ";
                if (f.branch >= 0) {
                    out << "branch " << f.branch << ": ";
                }
                out << f.reason << " (" << f.measured << ")\n";
            }
        }
        char err_buf[32];
        std::snprintf(err_buf, sizeof err_buf, "%.3g", result.overall.max_prob_error);
        out << name << ": " << passed << "/" << result.rows.size() << " passed, max_prob_error=" << err_buf
            << ", tol=" << o.tolerance << "\n";
    }
    return result.overall.passed ? kExitPass : kExitSpecFailure;
}

int verify_command(const Options &o, std::ostream &out) {
    auto qubit = input_qubit(o);
    if (qubit) {
        // Rejects an unnormalized pair before any protocol is built.
        build_teleportation(qubit->first, qubit->second);
    }
    std::vector<std::pair<int, int>> bits;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            if ((!o.a0 || *o.a0 == x) && (!o.a1 || *o.a1 == y)) {
                bits.emplace_back(x, y);
            }
        }
    }

    auto teleport = [&](const TeleportFactory &factory, const std::string &name) {
        SuiteResult r = qubit ? verify_teleportation_inputs(factory, {*qubit}, o.tolerance)
                              : verify_teleportation_suite(factory, o.trials, o.seed, o.tolerance);
        return report(name, r, o, out);
    };
    auto dense = [&](const DenseCodingFactory &factory, const std::string &name) {
        return report(name, verify_dense_coding_inputs(factory, bits, o.tolerance), o, out);
    };

    if (o.subject == "teleport") {
        return teleport([](Amplitude a, Amplitude b) { return build_teleportation(a, b); }, "teleport");
    }
    if (o.subject == "densecode") {
        return dense(build_dense_coding, "densecode");
    }

    ParsedProtocol parsed = load(o.subject, {});
    const std::string path = o.subject;
    if (parsed.name == "teleport") {
        return teleport(
            [path](Amplitude a, Amplitude b) {
                ParseOverrides ov;
                ov.input_qubit = {a, b};
                ParsedProtocol p = load_protocol_file(path, ov);
                return Protocol{p.program, p.initial};
            },
            path);
    }
    if (parsed.name == "densecode") {
        return dense(
            [path](int a0, int a1) {
                ParseOverrides ov;
                ov.vars = {{"a0", a0}, {"a1", a1}};
                ParsedProtocol p = load_protocol_file(path, ov);
                return Protocol{p.program, p.initial};
            },
            path);
    }
    throw UsageError("no specification for protocol '" + parsed.name + "' (verify knows teleport and densecode)");
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"qlocc: simulate and check LOCC quantum protocols", "qlocc"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--alpha", o.alpha, "Input qubit amplitude of |0>, as RE,IM");
        sub->add_option("--beta", o.beta, "Input qubit amplitude of |1>, as RE,IM");
        sub->add_option("--a0", o.a0, "Dense coding input bit a0")->check(CLI::Range(0, 1));
        sub->add_option("--a1", o.a1, "Dense coding input bit a1")->check(CLI::Range(0, 1));
        sub->add_option("--tol", o.tolerance, "Comparison tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--trials", o.trials, "Random input states on top of the fixed probes")
            ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
        sub->add_option("--seed", o.seed, "Seed for the random input states");
    };
    CLI::App *run_cmd = app.add_subcommand("run", "Print the final distribution of a protocol file");
    run_cmd->add_option("file", o.subject, "Protocol file")->required();
    add_common(run_cmd);
    CLI::App *verify_cmd = app.add_subcommand("verify", "Check a protocol against its specification");
    verify_cmd->add_option("target", o.subject, "teleport, densecode or a protocol file")->required();
    add_common(verify_cmd);

    std::vector<const char *> argv = {"qlocc"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        err << "qlocc: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            return run_command(o, out, err);
        }
        return verify_command(o, out);
    } catch (const ParseError &e) {
        err << o.subject << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "qlocc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError &e) {
        err << "qlocc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "qlocc: " << e.what() << "\n";
        return kExitSpecFailure;
    }
}

}  // namespace qlocc
