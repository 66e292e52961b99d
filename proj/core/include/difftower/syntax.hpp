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

// Expression grammar, evaluation into elements, operators and differential
// polynomials, and the line-oriented tower script.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] integer | '^' '(' ['-'] integer ')')?
//   primary := integer | ident "'"* | '(' expr ')'
//
// Juxtaposition is not multiplication. In operator expressions D is the
// derivation and products compose left to right as written.

#ifndef DIFFTOWER_SYNTAX_HPP
#define DIFFTOWER_SYNTAX_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "difftower/operator.hpp"
#include "difftower/riccati.hpp"
#include "difftower/tower.hpp"

namespace difftower {

struct Expr {
    enum class Kind { integer, name, neg, add, sub, mul, div, pow };
    Kind kind = Kind::integer;
    mpz_class value;       // integer
    std::string name;      // name
    unsigned primes = 0;   // name: number of trailing '
    long exponent = 0;     // pow
    std::vector<Expr> args;
    int line = 1;
    int column = 1;
};

/// Positions are reported relative to (line, column) of the first character.
Expr parse_expr(std::string_view text, int line = 1, int column = 1);

/// Fully parenthesized form, for diagnostics.
std::string to_string(const Expr& e);

/// Names in scope: tower indeterminates, let-bound elements and op-bound
/// operators.
struct Scope {
    Tower tower = Tower::rational("x");
    std::map<std::string, Elem> lets;
    std::map<std::string, LinDiffOp> ops;

    bool defines(const std::string& name) const;
};

Elem eval_element(const Expr& e, const Scope& scope);
LinDiffOp eval_operator(const Expr& e, const Scope& scope);
/// Differential polynomial in u, u', u'', ... over the scope's tower.
DiffPoly eval_differential(const Expr& e, const Scope& scope);

Elem parse_element(std::string_view text, const Scope& scope);
LinDiffOp parse_operator(std::string_view text, const Scope& scope);
DiffPoly parse_differential(std::string_view text, const Scope& scope);

struct Statement {
    enum class Kind { base, extend, let, op };
    Kind kind;
    std::string name;
    std::string text;  // right-hand side, empty for base
    int line;
};

struct Script {
    std::vector<Statement> statements;
    Scope scope;
};

/// Statements: `base <ident>`, `extend <ident> = <expr>`, `let <ident> =
/// <expr>`, `op <ident> = <opexpr>`; `#` starts a comment. An extend rule may
/// use its own name. Without a base statement the base is Q(x).
Script parse_script(std::string_view text);

/// Canonical script text for a scope built from statements.
std::string format(const Script& script);

}  // namespace difftower

#endif  // DIFFTOWER_SYNTAX_HPP
