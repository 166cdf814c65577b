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

#ifndef QLOCC_CLI_H_
#define QLOCC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace qlocc {

inline constexpr int kExitPass = 0;
inline constexpr int kExitSpecFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `qlocc` tool. `args` excludes the program name.
///
///     qlocc run FILE [--format text|json] [--alpha RE,IM --beta RE,IM] [--a0 B] [--a1 B]
///     qlocc verify teleport|densecode|FILE [--tol T] [--trials N] [--seed S] [--format F] ...
///
/// Returns 0 on pass, 1 on spec or run-time failure, 2 on usage or parse errors.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qlocc

#endif  // QLOCC_CLI_H_
