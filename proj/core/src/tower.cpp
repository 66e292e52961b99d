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

#include "difftower/tower.hpp"

#include <utility>

#include "difftower/error.hpp"

namespace difftower {

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::integral:
            return "integral";
        case RuleKind::exp_of_integral:
            return "exp-of-integral";
        case RuleKind::special:
            return "special";
        case RuleKind::general:
            return "general";
    }
    return "general";
}

Tower Tower::rational(std::string name) { return Tower().adjoin(std::move(name), Elem(1)); }

Tower Tower::adjoin(std::string name, const Elem& rule) const {
    if (name.empty()) throw DomainError("indeterminate name must be nonempty");
    if (name == "D" || name == "u")
        throw DomainError("'" + name + "' is reserved and cannot name an indeterminate");
    if (find(name)) throw DomainError("indeterminate '" + name + "' is already defined");
    const int level = height() + 1;
    if (rule.level() > level) throw DomainError("rule references symbols outside the tower");
    // A zero rule would adjoin a new constant; every field here shares Q.
    if (rule.is_zero()) throw DomainError("derivation rule must be nonzero");
    Tower t = *this;
    t.levels_.push_back({std::move(name), {rule, classify_rule(rule, level)}});
    return t;
}

Tower adjoin(const Tower& tower, std::string name, const Elem& rule) {
    return tower.adjoin(std::move(name), rule);
}

const TowerLevel& Tower::level(int k) const {
    if (k < 1 || k > height()) throw DomainError("level " + std::to_string(k) + " is not in the tower");
    return levels_[static_cast<std::size_t>(k - 1)];
}

std::optional<int> Tower::find(std::string_view name) const {
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i].name == name) return static_cast<int>(i + 1);
    return std::nullopt;
}

Elem Tower::generator(int k) const {
    (void)level(k);
    return Elem::generator(k);
}

Tower Tower::truncated(int k) const {
    if (k < 0 || k > height()) throw DomainError("cannot truncate tower to level " + std::to_string(k));
    Tower t;
    t.levels_.assign(levels_.begin(), levels_.begin() + k);
    return t;
}

bool Tower::has_rational_base() const { return height() >= 1 && levels_[0].rule.rule.is_one(); }

RuleKind classify_rule(const Elem& rule, int level) {
    if (rule.level() < level) return RuleKind::integral;
    const ElemFrac& f = rule.frac();
    if (f.is_polynomial() && f.num().degree() == 1 && f.num().coeff(0).is_zero())
        return RuleKind::exp_of_integral;
    if (is_special_rule(rule, level)) return RuleKind::special;
    return RuleKind::general;
}

bool is_special_rule(const Elem& rule, int level) {
    if (rule.is_zero()) return true;
    if (rule.level() < level) return false;
    const ElemFrac& f = rule.frac();
    return f.num().trailing_index() - f.den().trailing_index() >= 1;
}

namespace {

// rd * P_K + rn * dP/dt, where rule = rn/rd and P_K differentiates coefficients.
ElemPoly derive_scaled(const ElemPoly& p, const ElemPoly& rn, const ElemPoly& rd, const Tower& tower) {
    std::vector<Elem> dk;
    dk.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) dk.push_back(derive(c, tower));
    ElemPoly r = rd * ElemPoly(std::move(dk));
    r += rn * derivative(p);
    return r;
}

}  // namespace

Elem derive(const Elem& e, const Tower& tower) {
    const int level = e.level();
    if (level == 0) return Elem();
    const Elem& rule = tower.level(level).rule.rule;
    const ElemFrac rf = rule.as_fraction(level);
    const ElemPoly& n = e.frac().num();
    const ElemPoly& d = e.frac().den();
    // (N/D)' = N'/D - (N/D) (D'/D), each reduced piecewise.
    const ElemFrac dn = ElemFrac::make(derive_scaled(n, rf.num(), rf.den(), tower), rf.den());
    if (d.degree() == 0) return Elem::from_fraction(level, dn);
    const ElemFrac inv_d = ElemFrac::from_reduced(ElemPoly(Elem(1)), d);
    const ElemFrac dd = ElemFrac::make(derive_scaled(d, rf.num(), rf.den(), tower), rf.den());
    return Elem::from_fraction(level, dn * inv_d - e.frac() * (dd * inv_d));
}

Elem derive(const Elem& e, const Tower& tower, unsigned k) {
    Elem r = e;
    for (unsigned i = 0; i < k && !r.is_zero(); ++i) r = derive(r, tower);
    return r;
}

}  // namespace difftower
