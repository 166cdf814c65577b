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

#include "qlocc/expr.h"

#include <variant>

#include "qlocc/errors.h"

namespace qlocc {

struct Expr::Node {
    struct Binary {
        BinaryOp op;
        Expr lhs;
        Expr rhs;
    };
    std::variant<std::int64_t, std::string, Binary> value;
};

Expr Expr::constant(std::int64_t value) {
    return Expr(std::make_shared<const Node>(Node{value}));
}

Expr Expr::var(std::string name) {
    return Expr(std::make_shared<const Node>(Node{std::move(name)}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}}));
}

bool Expr::is_constant() const {
    return std::holds_alternative<std::int64_t>(node_->value);
}
bool Expr::is_var() const {
    return std::holds_alternative<std::string>(node_->value);
}
std::int64_t Expr::constant_value() const {
    return std::get<std::int64_t>(node_->value);
}
const std::string &Expr::var_name() const {
    return std::get<std::string>(node_->value);
}
BinaryOp Expr::op() const {
    return std::get<Node::Binary>(node_->value).op;
}
const Expr &Expr::lhs() const {
    return std::get<Node::Binary>(node_->value).lhs;
}
const Expr &Expr::rhs() const {
    return std::get<Node::Binary>(node_->value).rhs;
}

namespace {

const char *op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
            return "+";
        case BinaryOp::Sub:
            return "-";
        case BinaryOp::Mul:
            return "*";
        case BinaryOp::Div:
            return "/";
        case BinaryOp::Mod:
            return "%";
        case BinaryOp::Eq:
            return "=";
        case BinaryOp::Ne:
            return "!=";
        case BinaryOp::Lt:
            return "<";
        case BinaryOp::Le:
            return "<=";
        case BinaryOp::Gt:
            return ">";
        case BinaryOp::Ge:
            return ">=";
        case BinaryOp::And:
            return "and";
        case BinaryOp::Or:
            return "or";
    }
    return "?";
}

void check_overflow(bool overflowed, const Expr &e) {
    if (overflowed) {
        throw ExecutionError("integer overflow in " + e.to_string());
    }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    if (a == INT64_MIN && b == -1) {
        throw ExecutionError("integer overflow");
    }
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    if (b == -1) {
        return 0;
    }
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) {
        r += b;
    }
    return r;
}

}  // namespace

std::string Expr::to_string() const {
    if (is_constant()) {
        return std::to_string(constant_value());
    }
    if (is_var()) {
        return var_name();
    }
    return "(" + lhs().to_string() + " " + op_symbol(op()) + " " + rhs().to_string() + ")";
}

Expr operator+(Expr a, Expr b) {
    return Expr::binary(BinaryOp::Add, std::move(a), std::move(b));
}
Expr operator-(Expr a, Expr b) {
    return Expr::binary(BinaryOp::Sub, std::move(a), std::move(b));
}
Expr operator*(Expr a, Expr b) {
    return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b));
}

std::int64_t eval_expr(const Expr &e, const VarStore &store) {
    if (e.is_constant()) {
        return e.constant_value();
    }
    if (e.is_var()) {
        auto it = store.find(e.var_name());
        if (it == store.end()) {
            throw ExecutionError("unbound variable '" + e.var_name() + "'");
        }
        return it->second;
    }
    std::int64_t a = eval_expr(e.lhs(), store);
    std::int64_t b = eval_expr(e.rhs(), store);
    std::int64_t out = 0;
    switch (e.op()) {
        case BinaryOp::Add:
            check_overflow(__builtin_add_overflow(a, b, &out), e);
            return out;
        case BinaryOp::Sub:
            check_overflow(__builtin_sub_overflow(a, b, &out), e);
            return out;
        case BinaryOp::Mul:
            check_overflow(__builtin_mul_overflow(a, b, &out), e);
            return out;
        case BinaryOp::Div:
            if (b == 0) {
                throw ExecutionError("division by zero in " + e.to_string());
            }
            return floor_div(a, b);
        case BinaryOp::Mod:
            if (b == 0) {
                throw ExecutionError("modulo by zero in " + e.to_string());
            }
            return floor_mod(a, b);
        case BinaryOp::Eq:
            return a == b;
        case BinaryOp::Ne:
            return a != b;
        case BinaryOp::Lt:
            return a < b;
        case BinaryOp::Le:
            return a <= b;
        case BinaryOp::Gt:
            return a > b;
        case BinaryOp::Ge:
            return a >= b;
        case BinaryOp::And:
            return (a != 0) && (b != 0);
        case BinaryOp::Or:
            return (a != 0) || (b != 0);
    }
    throw ExecutionError("unknown operator");
}

std::set<std::string> free_vars(const Expr &e) {
    if (e.is_constant()) {
        return {};
    }
    if (e.is_var()) {
        return {e.var_name()};
    }
    auto out = free_vars(e.lhs());
    out.merge(free_vars(e.rhs()));
    return out;
}

Expr substitute(const Expr &e, const std::string &name, const Expr &replacement) {
    if (e.is_constant()) {
        return e;
    }
    if (e.is_var()) {
        return e.var_name() == name ? replacement : e;
    }
    return Expr::binary(e.op(), substitute(e.lhs(), name, replacement), substitute(e.rhs(), name, replacement));
}

}  // namespace qlocc
