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

#ifndef QLOCC_EXPR_H_
#define QLOCC_EXPR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>

namespace qlocc {

using VarStore = std::map<std::string, std::int64_t>;

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

/// Immutable integer expression over classical variables. Comparisons and
/// logical operators yield 0 or 1; `div` and `mod` round toward negative infinity.
class Expr {
   public:
    static Expr constant(std::int64_t value);
    static Expr var(std::string name);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    bool is_constant() const;
    bool is_var() const;
    /// Valid only when is_constant().
    std::int64_t constant_value() const;
    /// Valid only when is_var().
    const std::string &var_name() const;
    /// Valid only for binary nodes.
    BinaryOp op() const;
    const Expr &lhs() const;
    const Expr &rhs() const;

    std::string to_string() const;

   private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }
    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);

std::int64_t eval_expr(const Expr &e, const VarStore &store);

std::set<std::string> free_vars(const Expr &e);

/// e with every occurrence of `name` replaced by `replacement`.
Expr substitute(const Expr &e, const std::string &name, const Expr &replacement);

}  // namespace qlocc

#endif  // QLOCC_EXPR_H_
