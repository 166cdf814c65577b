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

#include "qlocc/parser.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qlocc/errors.h"

namespace qlocc {

namespace {

struct Token {
    enum class Kind { Ident, Number, Symbol, Newline, End };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    static const char *const kTwoChar[] = {"->", ":=", "!=", "<=", ">="};
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        col += n;
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            out.push_back({Token::Kind::Newline, "\\n", line, col});
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            advance(1);
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            continue;
        }
        std::size_t start_col = col;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), line, start_col});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && i + 1 < text.size() &&
                                                              std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            while (j < text.size()) {
                char c = text[j];
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                    ++j;
                } else if ((c == 'e' || c == 'E') && j + 1 < text.size()) {
                    ++j;
                    if (text[j] == '+' || text[j] == '-') {
                        ++j;
                    }
                } else {
                    break;
                }
            }
            out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), line, start_col});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const char *two : kTwoChar) {
            if (text.substr(i, 2) == two) {
                out.push_back({Token::Kind::Symbol, two, line, start_col});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        if (std::string_view("{}()+-*/%=<>:;,").find(ch) != std::string_view::npos) {
            out.push_back({Token::Kind::Symbol, std::string(1, ch), line, start_col});
            advance(1);
            continue;
        }
        throw ParseError(line, start_col, std::string("unexpected character '") + ch + "'");
    }
    out.push_back({Token::Kind::End, "end of file", line, col});
    return out;
}

struct ChannelDecl {
    std::string name;
    ChannelKind kind;
    PartyId writer;
    PartyId reader;
    SourceLoc loc;
};

class Parser {
   public:
    Parser(std::vector<Token> tokens, const ParseOverrides &overrides)
        : tokens_(std::move(tokens)), overrides_(overrides) {
    }

    ParsedProtocol parse() {
        skip_newlines();
        if (peek().kind == Token::Kind::End) {
            throw ParseError(1, 1, "empty protocol file: expected 'protocol NAME' as the first line");
        }
        if (!peek_ident("protocol")) {
            fail(peek(), "expected 'protocol NAME' as the first line");
        }
        std::vector<Program> body;
        while (peek().kind != Token::Kind::End) {
            const Token &t = peek();
            if (t.kind == Token::Kind::Ident && parse_declaration()) {
                end_of_statement();
            } else {
                require_header(t);
                body.push_back(parse_statement(PartyId{}));
                end_of_statement();
            }
            skip_newlines();
        }
        require_header(peek());
        return finish(std::move(body));
    }

   private:
    // -- token helpers --------------------------------------------------------

    const Token &peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[k];
    }
    const Token &next() {
        const Token &t = peek();
        if (pos_ < tokens_.size() - 1) {
            ++pos_;
        }
        return t;
    }
    bool peek_ident(std::string_view word) const {
        return peek().kind == Token::Kind::Ident && peek().text == word;
    }
    bool peek_symbol(std::string_view sym, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Symbol && peek(ahead).text == sym;
    }
    [[noreturn]] static void fail(const Token &t, const std::string &message) {
        throw ParseError(t.line, t.column, message);
    }
    static SourceLoc loc_of(const Token &t) {
        return {t.line, t.column};
    }
    void skip_newlines() {
        while (peek().kind == Token::Kind::Newline || peek_symbol(";")) {
            next();
        }
    }
    std::string expect_ident(const char *what) {
        const Token &t = next();
        if (t.kind != Token::Kind::Ident) {
            fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        }
        return t.text;
    }
    void expect_symbol(std::string_view sym) {
        const Token &t = next();
        if (t.kind != Token::Kind::Symbol || t.text != sym) {
            fail(t, "expected '" + std::string(sym) + "', found '" + t.text + "'");
        }
    }
    std::int64_t expect_int(const char *what) {
        bool negative = false;
        if (peek_symbol("-")) {
            next();
            negative = true;
        }
        const Token &t = next();
        if (t.kind != Token::Kind::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        }
        try {
            std::int64_t v = std::stoll(t.text);
            return negative ? -v : v;
        } catch (const std::exception &) {
            fail(t, "integer '" + t.text + "' is out of range");
        }
    }
    double expect_real() {
        double sign = 1;
        if (peek_symbol("-")) {
            next();
            sign = -1;
        } else if (peek_symbol("+")) {
            next();
        }
        const Token &t = next();
        if (t.kind != Token::Kind::Number) {
            fail(t, "expected a number, found '" + t.text + "'");
        }
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t.text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != t.text.size() || !std::isfinite(v)) {
            fail(t, "malformed number '" + t.text + "'");
        }
        return sign * v;
    }
    static void check_not_counter(const Token &t, const std::string &var) {
        if (var == "c" || var == "q" || var == "t") {
            fail(t, "'" + var + "' is a communication counter maintained by the runtime");
        }
    }
    std::string expect_var() {
        const Token &t = peek();
        std::string var = expect_ident("a variable name");
        check_not_counter(t, var);
        return var;
    }

    void end_of_statement() {
        const Token &t = peek();
        if (t.kind == Token::Kind::Newline || t.kind == Token::Kind::End || peek_symbol(";") || peek_symbol("}")) {
            return;
        }
        fail(t, "unexpected '" + t.text + "' after statement");
    }

    // -- declarations ---------------------------------------------------------

    void require_header(const Token &t) {
        if (name_.empty()) {
            fail(t, "expected 'protocol NAME' as the first line");
        }
        if (!num_qubits_) {
            fail(t, "missing 'qubits K' declaration");
        }
    }

    PartyId expect_party() {
        const Token &t = peek();
        std::string name = expect_ident("a party name");
        PartyId id(name);
        if (!parties_.count(id)) {
            fail(t, "unknown party '" + name + "'");
        }
        return id;
    }

    std::size_t expect_qubit_index() {
        const Token &t = peek();
        std::size_t index = 0;
        if (t.kind == Token::Kind::Number) {
            index = static_cast<std::size_t>(expect_int("a qubit index"));
        } else {
            auto ref = parse_qubit_ref();
            auto *i = std::get_if<std::size_t>(&ref.ref);
            if (!i) {
                fail(t, "expected a qubit index, found '" + t.text + "'");
            }
            index = *i;
        }
        check_qubit_range(t, index);
        return index;
    }

    void check_qubit_range(const Token &t, std::size_t index) const {
        if (num_qubits_ && index >= *num_qubits_) {
            fail(t, "qubit q" + std::to_string(index) + " out of range (register has " + std::to_string(*num_qubits_) +
                        " qubits)");
        }
    }

    // Returns false when the line is not a declaration.
    bool parse_declaration() {
        const Token &head = peek();
        const std::string &word = head.text;
        if (word == "protocol") {
            next();
            if (!name_.empty()) {
                fail(head, "duplicate 'protocol' line");
            }
            name_ = expect_ident("a protocol name");
            return true;
        }
        if (word == "party") {
            next();
            const Token &t = peek();
            PartyId p(expect_ident("a party name"));
            if (!parties_.insert(p).second) {
                fail(t, "party '" + p.name() + "' declared twice");
            }
            party_order_.push_back(p);
            return true;
        }
        if (word == "qubits") {
            next();
            const Token &t = peek();
            if (num_qubits_) {
                fail(head, "duplicate 'qubits' line");
            }
            std::int64_t k = expect_int("a qubit count");
            if (k < 1 || k > static_cast<std::int64_t>(kMaxQubits)) {
                fail(t, "qubit count must be between 1 and " + std::to_string(kMaxQubits));
            }
            num_qubits_ = static_cast<std::size_t>(k);
            owners_.assign(*num_qubits_, PartyId{});
            return true;
        }
        if (word == "owns") {
            next();
            require_qubits(head);
            PartyId party = expect_party();
            bool in_vars = false;
            while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Number) {
                const Token &t = peek();
                if (t.text == "var") {
                    next();
                    in_vars = true;
                    continue;
                }
                if (in_vars) {
                    std::string var = expect_var();
                    expect_symbol("=");
                    std::int64_t value = expect_int("an integer");
                    if (var_owner_.count(var)) {
                        fail(t, "variable '" + var + "' declared twice");
                    }
                    var_owner_.emplace(var, party);
                    var_order_.emplace_back(var, value);
                } else {
                    std::size_t index = expect_qubit_index();
                    if (!owners_[index].empty()) {
                        fail(t, "qubit q" + std::to_string(index) + " is already owned by " + owners_[index].name());
                    }
                    owners_[index] = party;
                }
            }
            return true;
        }
        if (word == "init") {
            next();
            require_qubits(head);
            parse_init(head);
            return true;
        }
        if (word == "chan" || word == "qchan") {
            next();
            ChannelDecl decl;
            decl.loc = loc_of(head);
            const Token &name_tok = peek();
            decl.name = expect_ident("a channel name");
            if (word == "qchan") {
                decl.kind = ChannelKind::quantum();
            } else {
                const Token &kind_tok = peek();
                std::string kind = expect_ident("a channel type");
                if (kind == "bit") {
                    decl.kind = ChannelKind::bit();
                } else if (kind == "int") {
                    decl.kind = ChannelKind::integer();
                    if (peek().kind == Token::Kind::Number) {
                        const Token &range_tok = peek();
                        std::int64_t range = expect_int("a channel range");
                        if (range < 1) {
                            fail(range_tok, "channel range must be positive");
                        }
                        decl.kind.range = static_cast<std::uint64_t>(range);
                    }
                } else {
                    fail(kind_tok, "unknown channel type '" + kind + "' (expected bit or int)");
                }
            }
            decl.writer = expect_party();
            expect_symbol("->");
            decl.reader = expect_party();
            if (decl.writer == decl.reader) {
                fail(name_tok, "channel '" + decl.name + "' must connect two different parties");
            }
            for (const auto &c : channels_) {
                if (c.name == decl.name) {
                    fail(name_tok, "channel '" + decl.name + "' declared twice");
                }
            }
            channels_.push_back(std::move(decl));
            return true;
        }
        return false;
    }

    void require_qubits(const Token &t) const {
        if (!num_qubits_) {
            fail(t, "'qubits K' must come before '" + t.text + "'");
        }
    }

    void parse_init(const Token &head) {
        const Token &form = peek();
        std::string kind = expect_ident("bell, ket or amp");
        if (kind == "bell") {
            const Token &t = peek();
            std::size_t i = expect_qubit_index();
            std::size_t j = expect_qubit_index();
            if (i == j) {
                fail(t, "a bell pair needs two different qubits");
            }
            for (auto q : {i, j}) {
                if (!paired_.insert(q).second) {
                    fail(t, "qubit q" + std::to_string(q) + " appears in two bell pairs");
                }
            }
            bell_pairs_.emplace_back(i, j);
        } else if (kind == "ket") {
            if (free_init_ || !free_amps_.empty()) {
                fail(form, "only one 'init ket' or 'init amp' description is allowed");
            }
            const Token &t = next();
            if (t.kind != Token::Kind::Number || t.text.find_first_not_of("01") != std::string::npos) {
                fail(t, "expected a bit string, found '" + t.text + "'");
            }
            free_init_ = FreeInit{t.text, loc_of(head)};
        } else if (kind == "amp") {
            if (free_init_) {
                fail(form, "only one 'init ket' or 'init amp' description is allowed");
            }
            if (peek().kind != Token::Kind::Number) {
                fail(peek(), "expected INDEX RE IM after 'init amp'");
            }
            while (peek().kind == Token::Kind::Number || peek_symbol("-") || peek_symbol("+")) {
                const Token &t = peek();
                std::int64_t index = expect_int("an amplitude index");
                double re = expect_real();
                double im = expect_real();
                if (index < 0) {
                    fail(t, "amplitude index must be non-negative");
                }
                free_amps_.push_back({static_cast<std::size_t>(index), Amplitude(re, im), t});
            }
            amp_loc_ = loc_of(head);
        } else {
            fail(form, "unknown init form '" + kind + "' (expected bell, ket or amp)");
        }
    }

    // -- statements -----------------------------------------------------------

    QubitRef parse_qubit_ref() {
        const Token &t = peek();
        std::string name = expect_ident("a qubit");
        if (name.size() > 1 && name[0] == 'q' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
            std::size_t index = std::stoul(name.substr(1));
            check_qubit_range(t, index);
            return QubitRef::index(index);
        }
        return QubitRef::alias(name);
    }

    std::vector<QubitRef> parse_qubit_list() {
        std::vector<QubitRef> out;
        while (peek().kind == Token::Kind::Ident) {
            out.push_back(parse_qubit_ref());
        }
        return out;
    }

    const ChannelDecl &channel_for(const Token &t, const std::string &name, bool quantum) const {
        for (const auto &c : channels_) {
            if (c.name == name) {
                if (c.kind.is_quantum() != quantum) {
                    fail(t, "channel '" + name + "' is " + (quantum ? "classical" : "quantum"));
                }
                return c;
            }
        }
        fail(t, "unknown channel '" + name + "'");
    }

    void check_endpoint(const Token &t, const ChannelDecl &c, const PartyId &party, bool writing) const {
        const PartyId &expected = writing ? c.writer : c.reader;
        if (party != expected) {
            fail(t, "channel endpoint mismatch: " + party.name() + " cannot " + (writing ? "write to" : "read from") +
                        " channel '" + c.name + "' (" + (writing ? "writer " : "reader ") + expected.name() + ")");
        }
    }

    Program parse_block(const PartyId &inherited) {
        expect_symbol("{");
        PartyId party = inherited;
        std::vector<Program> body;
        skip_newlines();
        while (!peek_symbol("}")) {
            if (peek().kind == Token::Kind::End) {
                fail(peek(), "missing '}'");
            }
            if (peek().kind == Token::Kind::Ident && peek_symbol(":", 1) &&
                (peek(2).kind == Token::Kind::Newline || peek(2).text == "}" || peek(2).text == ";")) {
                party = expect_party();
                expect_symbol(":");
            } else {
                body.push_back(parse_statement(party));
                end_of_statement();
            }
            skip_newlines();
        }
        expect_symbol("}");
        return prog::seq(std::move(body));
    }

    // Skips newlines only when `word` follows them.
    bool lookahead_past_newlines(std::string_view word) {
        std::size_t k = 0;
        while (peek(k).kind == Token::Kind::Newline) {
            ++k;
        }
        if (peek(k).kind == Token::Kind::Ident && peek(k).text == word) {
            pos_ += k;
            return true;
        }
        return false;
    }

    Program parse_statement(PartyId party) {
        const Token &start = peek();
        if (start.kind == Token::Kind::Ident && peek_symbol(":", 1)) {
            party = expect_party();
            expect_symbol(":");
        }
        const Token &head = peek();
        if (head.kind != Token::Kind::Ident) {
            fail(head, "expected a statement, found '" + head.text + "'");
        }
        SourceLoc loc = loc_of(head);
        auto need_party = [&]() {
            if (party.empty()) {
                fail(head, "ownership declaration missing: '" + head.text + "' has no owning party");
            }
        };

        if (head.text == "par") {
            next();
            skip_newlines();
            Program left = parse_block(party);
            skip_newlines();
            Program right = parse_block(party);
            return prog::located(prog::par(left, right), loc);
        }
        if (head.text == "if") {
            next();
            need_party();
            Expr cond = parse_expr();
            Program then_branch = parse_block(party);
            Program else_branch = nullptr;
            if (lookahead_past_newlines("else")) {
                next();
                if (peek_ident("if")) {
                    else_branch = parse_statement(party);
                } else {
                    else_branch = parse_block(party);
                }
            }
            return prog::located(prog::if_then(party, cond, then_branch, else_branch), loc);
        }

        next();
        need_party();
        const std::string &word = head.text;
        if (word == "ok") {
            return prog::located(prog::ok(party), loc);
        }
        if (word == "apply") {
            const Token &gate_tok = peek();
            std::string gate = expect_ident("a gate name");
            static const std::pair<const char *, GateId> kGates[] = {
                {"I", GateId::I}, {"X", GateId::X}, {"Y", GateId::Y},
                {"Z", GateId::Z}, {"H", GateId::H}, {"CNOT", GateId::CNOT},
            };
            std::optional<GateId> id;
            for (const auto &[gname, gid] : kGates) {
                if (gate == gname) {
                    id = gid;
                }
            }
            if (!id) {
                fail(gate_tok, "unknown gate '" + gate + "'");
            }
            auto targets = parse_qubit_list();
            std::size_t arity = Operator::gate(*id).num_qubits();
            if (targets.size() != arity) {
                fail(gate_tok, gate + " takes " + std::to_string(arity) + " qubit(s), got " +
                                   std::to_string(targets.size()));
            }
            return prog::located(prog::apply(party, *id, std::move(targets)), loc);
        }
        if (word == "measure") {
            auto targets = parse_qubit_list();
            if (targets.empty()) {
                fail(peek(), "measure needs at least one qubit");
            }
            expect_symbol("->");
            std::vector<std::string> results;
            while (peek().kind == Token::Kind::Ident) {
                results.push_back(expect_var());
            }
            if (results.size() != targets.size() && results.size() != 1) {
                fail(head, "measure of " + std::to_string(targets.size()) + " qubits needs 1 or " +
                               std::to_string(targets.size()) + " result variables");
            }
            return prog::located(prog::measure(party, std::move(targets), std::move(results)), loc);
        }
        if (word == "send" || word == "recv" || word == "qsend" || word == "qrecv") {
            const Token &ch_tok = peek();
            std::string ch = expect_ident("a channel name");
            bool quantum = word[0] == 'q';
            bool writing = word == "send" || word == "qsend";
            const ChannelDecl &decl = channel_for(ch_tok, ch, quantum);
            check_endpoint(ch_tok, decl, party, writing);
            if (word == "send") {
                return prog::located(prog::send(party, ch, parse_expr()), loc);
            }
            if (word == "qsend") {
                return prog::located(prog::qsend(party, ch, parse_qubit_ref()), loc);
            }
            expect_symbol("->");
            if (word == "recv") {
                return prog::located(prog::recv(party, ch, expect_var()), loc);
            }
            return prog::located(prog::qrecv(party, ch, parse_qubit_ref()), loc);
        }
        if (word == "reset") {
            auto qubits = parse_qubit_list();
            if (qubits.empty()) {
                fail(peek(), "reset needs at least one qubit");
            }
            return prog::located(prog::init_qubits(party, std::move(qubits)), loc);
        }
        if (word == "checkpoint") {
            return prog::located(prog::checkpoint(expect_ident("a checkpoint label")), loc);
        }
        if (peek_symbol(":=")) {
            check_not_counter(head, word);
            next();
            return prog::located(prog::assign(party, word, parse_expr()), loc);
        }
        fail(head, "unknown statement '" + word + "'");
    }

    // -- expressions ----------------------------------------------------------

    Expr parse_expr() {
        return parse_or();
    }
    Expr parse_or() {
        Expr lhs = parse_and();
        while (peek_ident("or")) {
            next();
            lhs = Expr::binary(BinaryOp::Or, lhs, parse_and());
        }
        return lhs;
    }
    Expr parse_and() {
        Expr lhs = parse_comparison();
        while (peek_ident("and")) {
            next();
            lhs = Expr::binary(BinaryOp::And, lhs, parse_comparison());
        }
        return lhs;
    }
    Expr parse_comparison() {
        static const std::pair<const char *, BinaryOp> kOps[] = {
            {"=", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
            {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge},
        };
        Expr lhs = parse_additive();
        for (const auto &[sym, op] : kOps) {
            if (peek_symbol(sym)) {
                next();
                return Expr::binary(op, lhs, parse_additive());
            }
        }
        return lhs;
    }
    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        while (peek_symbol("+") || peek_symbol("-")) {
            BinaryOp op = next().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
            lhs = Expr::binary(op, lhs, parse_multiplicative());
        }
        return lhs;
    }
    Expr parse_multiplicative() {
        Expr lhs = parse_unary();
        while (true) {
            BinaryOp op;
            if (peek_symbol("*")) {
                op = BinaryOp::Mul;
            } else if (peek_symbol("/") || peek_ident("div")) {
                op = BinaryOp::Div;
            } else if (peek_symbol("%") || peek_ident("mod")) {
                op = BinaryOp::Mod;
            } else {
                return lhs;
            }
            next();
            lhs = Expr::binary(op, lhs, parse_unary());
        }
    }
    Expr parse_unary() {
        if (peek_symbol("-")) {
            next();
            return Expr::binary(BinaryOp::Sub, Expr::constant(0), parse_unary());
        }
        return parse_primary();
    }
    Expr parse_primary() {
        const Token &t = peek();
        if (peek_symbol("(")) {
            next();
            Expr e = parse_expr();
            expect_symbol(")");
            return e;
        }
        if (t.kind == Token::Kind::Number) {
            return Expr::constant(expect_int("an integer"));
        }
        if (t.kind == Token::Kind::Ident) {
            return Expr::var(next().text);
        }
        fail(t, "expected an expression, found '" + t.text + "'");
    }

    // -- assembly -------------------------------------------------------------

    StateVector initial_state() const {
        std::size_t n = *num_qubits_;
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i) {
            if (!paired_.count(i)) {
                free.push_back(i);
            }
        }
        std::size_t free_dim = std::size_t{1} << free.size();

        std::vector<Amplitude> free_amps(free_dim);
        if (overrides_.input_qubit) {
            if (free.size() != 1) {
                throw DomainError("an input qubit override needs exactly one qubit outside bell pairs; this protocol has " +
                                  std::to_string(free.size()));
            }
            auto [alpha, beta] = *overrides_.input_qubit;
            double n2 = std::norm(alpha) + std::norm(beta);
            if (std::abs(n2 - 1) > kNormTolerance) {
                throw DomainError("input qubit is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(n2));
            }
            free_amps = {alpha, beta};
        } else if (free_init_) {
            if (free_init_->bits.size() != free.size()) {
                throw ParseError(free_init_->loc.line, free_init_->loc.column,
                                 "ket has " + std::to_string(free_init_->bits.size()) + " bits but " +
                                     std::to_string(free.size()) + " qubits are outside bell pairs");
            }
            free_amps[std::stoull(free_init_->bits, nullptr, 2)] = 1;
        } else if (!free_amps_.empty()) {
            std::set<std::size_t> seen;
            for (const auto &a : free_amps_) {
                if (a.index >= free_dim) {
                    fail(a.token, "amplitude index " + std::to_string(a.index) + " out of range for " +
                                      std::to_string(free.size()) + " unpaired qubits");
                }
                if (!seen.insert(a.index).second) {
                    fail(a.token, "amplitude index " + std::to_string(a.index) + " given twice");
                }
                free_amps[a.index] = a.value;
            }
            double n2 = 0;
            for (const auto &a : free_amps) {
                n2 += std::norm(a);
            }
            if (std::abs(n2 - 1) > kNormTolerance) {
                throw ParseError(amp_loc_.line, amp_loc_.column,
                                 "init amp amplitudes are not normalized (squared norm " + std::to_string(n2) + ")");
            }
        } else {
            free_amps[0] = 1;
        }

        const double r = 1 / std::sqrt(2.0);
        std::vector<Amplitude> amps(std::size_t{1} << n);
        auto bit_at = [n](std::size_t label, std::size_t q) { return (label >> (n - 1 - q)) & 1; };
        for (std::size_t label = 0; label < amps.size(); ++label) {
            std::size_t sub = 0;
            for (auto q : free) {
                sub = (sub << 1) | bit_at(label, q);
            }
            Amplitude a = free_amps[sub];
            for (const auto &[i, j] : bell_pairs_) {
                a *= bit_at(label, i) == bit_at(label, j) ? r : 0.0;
            }
            amps[label] = a;
        }
        return StateVector(std::move(amps));
    }

    ParsedProtocol finish(std::vector<Program> body) {
        for (std::size_t i = 0; i < owners_.size(); ++i) {
            if (owners_[i].empty()) {
                throw ParseError(tokens_.back().line, 1,
                                 "ownership declaration missing: no party owns qubit q" + std::to_string(i));
            }
        }
        World initial(initial_state(), owners_);
        for (const auto &[var, value] : var_order_) {
            initial.write_var(var_owner_.at(var), var, value);
        }
        for (const auto &[var, value] : overrides_.vars) {
            auto it = var_owner_.find(var);
            if (it == var_owner_.end()) {
                throw DomainError("override for undeclared variable '" + var + "'");
            }
            initial.write_var(it->second, var, value);
        }

        Program program = prog::seq(std::move(body));
        for (auto it = channels_.rbegin(); it != channels_.rend(); ++it) {
            program = prog::located(prog::chan(it->name, it->kind, it->writer, it->reader, program), it->loc);
        }
        return {name_, party_order_, std::move(program), std::move(initial)};
    }

    struct FreeInit {
        std::string bits;
        SourceLoc loc;
    };
    struct AmpEntry {
        std::size_t index;
        Amplitude value;
        Token token;
    };

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const ParseOverrides &overrides_;

    std::string name_;
    std::set<PartyId> parties_;
    std::vector<PartyId> party_order_;
    std::optional<std::size_t> num_qubits_;
    std::vector<PartyId> owners_;
    std::map<std::string, PartyId> var_owner_;
    std::vector<std::pair<std::string, std::int64_t>> var_order_;
    std::vector<std::pair<std::size_t, std::size_t>> bell_pairs_;
    std::set<std::size_t> paired_;
    std::optional<FreeInit> free_init_;
    std::vector<AmpEntry> free_amps_;
    SourceLoc amp_loc_;
    std::vector<ChannelDecl> channels_;
};

}  // namespace

ParsedProtocol parse_protocol(std::string_view text, const ParseOverrides &overrides) {
    return Parser(tokenize(text), overrides).parse();
}

ParsedProtocol load_protocol_file(const std::filesystem::path &path, const ParseOverrides &overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, 0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_protocol(buf.str(), overrides);
}

}  // namespace qlocc
