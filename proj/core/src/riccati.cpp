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

#include "difftower/riccati.hpp"

#include <algorithm>
#include <utility>

#include "difftower/error.hpp"
#include "difftower/format.hpp"

namespace difftower {

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial product(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t j = 0; j < a.size(); ++j) r[j] += a[j];
    for (std::size_t j = 0; j < b.size(); ++j) r[j] += b[j];
    return r;
}

std::string monomial_text(const Monomial& m) {
    std::string out;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += "u" + std::string(j, '\'');
        if (m[j] > 1) out += "^" + std::to_string(m[j]);
    }
    return out;
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t j = n; j-- > 0;) {
        const unsigned ea = j < a.size() ? a[j] : 0;
        const unsigned eb = j < b.size() ? b[j] : 0;
        if (ea != eb) return ea > eb;
    }
    return false;
}

unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

DiffPoly DiffPoly::constant(const Elem& c) {
    DiffPoly p;
    p.add_term({}, c);
    return p;
}

DiffPoly DiffPoly::variable(unsigned j) {
    Monomial m(j + 1, 0);
    m[j] = 1;
    DiffPoly p;
    p.add_term(std::move(m), Elem(1));
    return p;
}

int DiffPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(total_degree(m)));
    return d;
}

int DiffPoly::order() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()) - 1);
    return d;
}

DiffPoly DiffPoly::homogeneous_part(unsigned degree) const {
    DiffPoly r;
    for (const auto& [m, c] : terms_)
        if (total_degree(m) == degree) r.terms_.emplace(m, c);
    return r;
}

Elem DiffPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Elem() : it->second;
}

int DiffPoly::level() const {
    int l = 0;
    for (const auto& [m, c] : terms_) l = std::max(l, c.level());
    return l;
}

void DiffPoly::add_term(Monomial m, const Elem& c) {
    if (c.is_zero()) return;
    trim(m);
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

DiffPoly operator-(const DiffPoly& a) {
    DiffPoly r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(product(ma, mb), ca * cb);
    return r;
}

DiffPoly scale(const Elem& c, const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [m, a] : p.terms()) r.add_term(m, c * a);
    return r;
}

DiffPoly pow(const DiffPoly& p, unsigned k) {
    DiffPoly r = DiffPoly::constant(Elem(1));
    for (unsigned i = 0; i < k; ++i) r = r * p;
    return r;
}

DiffPoly total_derive(const DiffPoly& p, const Tower& tower) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        r.add_term(m, derive(c, tower));
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0) continue;
            Monomial next = m;
            next[j] -= 1;
            if (next.size() <= j + 1) next.resize(j + 2, 0);
            next[j + 1] += 1;
            r.add_term(std::move(next), c * Elem(static_cast<long>(m[j])));
        }
    }
    return r;
}

DiffPoly d_poly(unsigned n) {
    const Tower constants;
    const DiffPoly u = DiffPoly::variable(0);
    DiffPoly d = DiffPoly::constant(Elem(1));
    for (unsigned k = 0; k < n; ++k) d = total_derive(d, constants) + u * d;
    return d;
}

DiffPoly gen_riccati(const LinDiffOp& op) {
    if (op.order() < 1) throw DomainError("generalized Riccati polynomial needs an operator of order >= 1");
    const Elem inv = op.leading().inverse();
    const Tower constants;
    const DiffPoly u = DiffPoly::variable(0);
    DiffPoly dk = DiffPoly::constant(Elem(1));
    DiffPoly r;
    for (int k = 0; k <= op.order(); ++k) {
        if (k > 0) dk = total_derive(dk, constants) + u * dk;
        const Elem b = k == op.order() ? Elem(1) : op.coeff(k) * inv;
        if (!b.is_zero()) r = r + scale(b, dk);
    }
    return r;
}

Elem eval_diffpoly(const DiffPoly& p, const Elem& u, const Tower& tower) {
    const int ord = p.order();
    std::vector<Elem> derivs;
    derivs.push_back(u);
    for (int j = 1; j <= ord; ++j) derivs.push_back(derive(derivs.back(), tower));
    Elem acc;
    for (const auto& [m, c] : p.terms()) {
        Elem term = c;
        for (std::size_t j = 0; j < m.size() && !term.is_zero(); ++j)
            if (m[j] > 0) term *= pow(derivs[j], static_cast<long>(m[j]));
        acc += term;
    }
    return acc;
}

bool is_rosenlicht(const DiffPoly& p) {
    if (p.is_zero()) throw DomainError("the zero differential polynomial has no degree");
    const auto n = static_cast<unsigned>(p.degree());
    const DiffPoly top = p.homogeneous_part(n);
    Monomial un = n == 0 ? Monomial{} : Monomial{n};
    return top.terms().size() == 1 && top.coeff(un).is_one();
}

std::string format(const DiffPoly& p, const Tower& tower) {
    std::vector<std::pair<Elem, std::string>> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(c, monomial_text(m));
    return format_sum(terms, tower);
}

}  // namespace difftower
