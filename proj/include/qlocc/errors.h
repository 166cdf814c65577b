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

#ifndef QLOCC_ERRORS_H_
#define QLOCC_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlocc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to a linear-algebra or measurement operation (out-of-range index,
/// dimension mismatch, non-unitary operator in strict mode, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A party touched a qubit or variable it does not own.
class OwnershipError : public Error {
   public:
    using Error::Error;
};

/// No process can make progress while at least one is unfinished.
class DeadlockError : public Error {
   public:
    using Error::Error;
};

/// Any other run-time failure: unbound variable, channel misuse, division by zero.
class ExecutionError : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string &message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {
    }

    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace qlocc

#endif  // QLOCC_ERRORS_H_
