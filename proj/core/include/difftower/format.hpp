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

// Canonical text forms. Every string produced here parses back (syntax.hpp)
// to the same canonical value.

#ifndef DIFFTOWER_FORMAT_HPP
#define DIFFTOWER_FORMAT_HPP

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "difftower/tower.hpp"
#include "difftower/upoly.hpp"

namespace difftower {

std::string format(const mpq_class& q);
std::string format(const mpz_class& z);
std::string format(const Elem& e, const Tower& tower);

/// Joins "monomial" terms into a signed sum. Each term is (coefficient,
/// monomial text); an empty monomial means a bare coefficient.
std::string format_sum(const std::vector<std::pair<Elem, std::string>>& terms, const Tower& tower);

/// Polynomial over Q in the named variable.
std::string format(const UPoly<mpq_class>& p, const std::string& var = "x");

}  // namespace difftower

#endif  // DIFFTOWER_FORMAT_HPP
