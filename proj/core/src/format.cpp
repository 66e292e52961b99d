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

#include "difftower/format.hpp"

#include <utility>

namespace difftower {

namespace {

std::string power_text(const std::string& var, std::size_t k) {
    if (k == 0) return "";
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
}

std::string join_signed(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string& s = parts[i];
        if (!s.empty() && s.front() == '-')
            out += " - " + s.substr(1);
        else
            out += " + " + s;
    }
    return out;
}

std::string level_name(const Tower& tower, int level) {
    if (level >= 1 && level <= tower.height()) return tower.level(level).name;
    return "t" + std::to_string(level);
}

std::string poly_text(const ElemPoly& p, const std::string& var, const Tower& tower) {
    std::vector<std::pair<Elem, std::string>> terms;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;)
        if (!c[k].is_zero()) terms.emplace_back(c[k], power_text(var, k));
    return format_sum(terms, tower);
}

// A coefficient as a product factor: bare when it is a single power
// product, otherwise parenthesized.
std::string factor_text(const Elem& c, const Tower& tower) {
    auto bare = [](const std::string& s) { return s.find_first_of(" /()") == std::string::npos; };
    std::string s = format(c, tower);
    if (bare(s)) return s;
    std::string neg = format(-c, tower);
    if (bare(neg)) return "-" + neg;
    return "(" + s + ")";
}

}  // namespace

std::string format(const mpq_class& q) { return q.get_str(); }
std::string format(const mpz_class& z) { return z.get_str(); }

std::string format_sum(const std::vector<std::pair<Elem, std::string>>& terms, const Tower& tower) {
    std::vector<std::string> parts;
    parts.reserve(terms.size());
    for (const auto& [c, mono] : terms) {
        if (mono.empty())
            parts.push_back(format(c, tower));
        else if (c.is_one())
            parts.push_back(mono);
        else if (c == Elem(-1))
            parts.push_back("-" + mono);
        else if (c.level() == 0)
            parts.push_back(format(c.rational()) + "*" + mono);
        else
            parts.push_back(factor_text(c, tower) + "*" + mono);
    }
    return join_signed(parts);
}

std::string format(const Elem& e, const Tower& tower) {
    if (e.level() == 0) return format(e.rational());
    const std::string var = level_name(tower, e.level());
    const ElemFrac& f = e.frac();
    std::string num = poly_text(f.num(), var, tower);
    if (f.den().degree() == 0) return num;
    std::string den = poly_text(f.den(), var, tower);
    if (num.find_first_of(" /") != std::string::npos) num = "(" + num + ")";
    if (den.find_first_of(" */") != std::string::npos || den.front() == '-') den = "(" + den + ")";
    return num + "/" + den;
}

std::string format(const UPoly<mpq_class>& p, const std::string& var) {
    std::vector<std::string> parts;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (sgn(c[k]) == 0) continue;
        const std::string mono = power_text(var, k);
        if (mono.empty())
            parts.push_back(format(c[k]));
        else if (c[k] == 1)
            parts.push_back(mono);
        else if (c[k] == -1)
            parts.push_back("-" + mono);
        else
            parts.push_back(format(c[k]) + "*" + mono);
    }
    return join_signed(parts);
}

}  // namespace difftower
