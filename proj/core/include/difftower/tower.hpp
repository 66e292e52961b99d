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

#ifndef DIFFTOWER_TOWER_HPP
#define DIFFTOWER_TOWER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "difftower/elem.hpp"

namespace difftower {

enum class RuleKind {
    integral,         // t' = a, a in the level below
    exp_of_integral,  // t' = a t
    special,          // t' = t P/Q with Q(0) != 0
    general,
};

std::string_view to_string(RuleKind kind);

struct DerivationRule {
    Elem rule;  // rational function in the level's own indeterminate
    RuleKind kind = RuleKind::general;
};

struct TowerLevel {
    std::string name;
    DerivationRule rule;
};

/// A differential field tower over Q. Level 0 is Q with the zero derivation;
/// level k adjoins t_k with t_k' = rule_k. Immutable: adjoin returns a copy.
class Tower {
   public:
    /// Q alone.
    Tower() = default;
    /// Q(x) with x' = 1.
    static Tower rational(std::string name = "x");

    Tower adjoin(std::string name, const Elem& rule) const;

    int height() const noexcept { return static_cast<int>(levels_.size()); }
    /// 1-based.
    const TowerLevel& level(int k) const;
    std::optional<int> find(std::string_view name) const;
    Elem generator(int k) const;
    /// The first k levels.
    Tower truncated(int k) const;

    /// Level 1 is an indeterminate with derivative 1.
    bool has_rational_base() const;

   private:
    std::vector<TowerLevel> levels_;
};

/// Classifies t' = rule for the indeterminate at `level`.
RuleKind classify_rule(const Elem& rule, int level);

/// True iff rule = t P/Q with Q(0) != 0, i.e. the rule has order >= 1 at t = 0.
bool is_special_rule(const Elem& rule, int level);

/// Free-function form of Tower::adjoin.
Tower adjoin(const Tower& tower, std::string name, const Elem& rule);

/// The derivation induced by the tower's rules:
/// R' = R'_K + rule * dR/dt at every level.
Elem derive(const Elem& e, const Tower& tower);

/// k-th derivative.
Elem derive(const Elem& e, const Tower& tower, unsigned k);

}  // namespace difftower

#endif  // DIFFTOWER_TOWER_HPP
