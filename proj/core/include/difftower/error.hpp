/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFTOWER_ERROR_HPP
#define DIFFTOWER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace difftower {

/// A mathematical precondition failed (division by zero, pole at evaluation
/// point, operator not divisible, ...).
class DomainError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Singular-point structure falls outside the class the exponential-solution
/// search can decide. Callers degrade to an Unknown verdict.
class UnsupportedSingularity : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Malformed expression or script; carries a 1-based source position.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

   private:
    int line_;
    int column_;
};

}  // namespace difftower

#endif  // DIFFTOWER_ERROR_HPP
