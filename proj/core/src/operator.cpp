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

#include "difftower/operator.hpp"

#include <algorithm>
#include <utility>

#include "difftower/error.hpp"
#include "difftower/format.hpp"

namespace difftower {

namespace {

void trim(std::vector<Elem>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// D ∘ op
LinDiffOp d_compose(const LinDiffOp& op, const Tower& tower) {
    const auto& c = op.coeffs();
    if (c.empty()) return op;
    std::vector<Elem> r(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        r[k] += derive(c[k], tower);
        r[k + 1] += c[k];
    }
    return LinDiffOp(std::move(r));
}

}  // namespace

LinDiffOp::LinDiffOp(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(c_); }

LinDiffOp LinDiffOp::scalar(const Elem& c) { return LinDiffOp({c}); }
LinDiffOp LinDiffOp::derivation() { return LinDiffOp({Elem(), Elem(1)}); }
LinDiffOp LinDiffOp::first_order(const Elem& p) { return LinDiffOp({-p, Elem(1)}); }

Elem LinDiffOp::coeff(int i) const {
    if (i < 0 || i > order()) return Elem();
    return c_[static_cast<std::size_t>(i)];
}

const Elem& LinDiffOp::leading() const {
    if (c_.empty()) throw DomainError("zero operator has no leading coefficient");
    return c_.back();
}

int LinDiffOp::level() const {
    int l = 0;
    for (const auto& c : c_) l = std::max(l, c.level());
    return l;
}

LinDiffOp operator+(const LinDiffOp& a, const LinDiffOp& b) {
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return LinDiffOp(std::move(r));
}

LinDiffOp operator-(const LinDiffOp& a) {
    std::vector<Elem> r;
    r.reserve(a.c_.size());
    for (const auto& c : a.c_) r.push_back(-c);
    return LinDiffOp(std::move(r));
}

LinDiffOp operator-(const LinDiffOp& a, const LinDiffOp& b) { return a + (-b); }

LinDiffOp scale(const Elem& c, const LinDiffOp& op) {
    std::vector<Elem> r;
    r.reserve(op.coeffs().size());
    for (const auto& a : op.coeffs()) r.push_back(c * a);
    return LinDiffOp(std::move(r));
}

Elem apply(const LinDiffOp& op, const Elem& y, const Tower& tower) {
    Elem acc;
    Elem dy = y;
    const auto& c = op.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) dy = derive(dy, tower);
        if (dy.is_zero()) break;
        if (!c[i].is_zero()) acc += c[i] * dy;
    }
    return acc;
}

LinDiffOp mul(const LinDiffOp& lhs, const LinDiffOp& rhs, const Tower& tower) {
    LinDiffOp acc;
    LinDiffOp power = rhs;  // D^i ∘ rhs
    const auto& a = lhs.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i > 0) power = d_compose(power, tower);
        if (!a[i].is_zero()) acc = acc + scale(a[i], power);
    }
    return acc;
}

Division right_divide(const LinDiffOp& op, const LinDiffOp& divisor, const Tower& tower) {
    if (divisor.is_zero()) throw DomainError("right division by the zero operator");
    const int m = divisor.order();
    const Elem inv = divisor.leading().inverse();
    std::vector<LinDiffOp> shifted{divisor};  // D^k ∘ divisor
    std::vector<Elem> q(static_cast<std::size_t>(std::max(op.order() - m + 1, 0)));
    LinDiffOp r = op;
    while (r.order() >= m) {
        const int k = r.order() - m;
        while (static_cast<int>(shifted.size()) <= k) shifted.push_back(d_compose(shifted.back(), tower));
        const Elem c = r.leading() * inv;
        LinDiffOp next = r - scale(c, shifted[static_cast<std::size_t>(k)]);
        if (next.order() >= r.order()) throw DomainError("right division failed to reduce the order");
        r = std::move(next);
        q[static_cast<std::size_t>(k)] = c;
    }
    return {LinDiffOp(std::move(q)), std::move(r)};
}

Elem remainder_scalar(const LinDiffOp& op, const Elem& p, const Elem& y1, const Tower& tower) {
    if (y1.is_zero()) throw DomainError("y1 must be nonzero");
    if (derive(y1, tower) != p * y1) throw DomainError("y1 is not an exponential of the integral of p");
    return apply(op, y1, tower) / y1;
}

LinDiffOp reduce_order(const LinDiffOp& op, const Elem& p, const Tower& tower) {
    Division d = right_divide(op, LinDiffOp::first_order(p), tower);
    if (!d.remainder.is_zero())
        throw DomainError("operator is not divisible by D - (" + format(p, tower) +
                          "); remainder " + format(d.remainder, tower));
    return d.quotient;
}

bool verify_factorization(const LinDiffOp& op, std::span<const Elem> ps, const Tower& tower) {
    if (op.is_zero()) throw DomainError("cannot factor the zero operator");
    if (static_cast<int>(ps.size()) != op.order())
        throw DomainError("expected " + std::to_string(op.order()) + " factors, got " + std::to_string(ps.size()));
    LinDiffOp prod = LinDiffOp::scalar(op.leading());
    for (std::size_t i = ps.size(); i-- > 0;) prod = mul(prod, LinDiffOp::first_order(ps[i]), tower);
    return prod == op;
}

Elem lift_integrand(const Elem& u, const Elem& p, const Tower& tower) {
    if (p.is_zero()) return u;
    for (int k = 1; k <= tower.height(); ++k) {
        const auto& lvl = tower.level(k);
        if (lvl.rule.kind == RuleKind::exp_of_integral && lvl.rule.rule == p * Elem::generator(k))
            return u / Elem::generator(k);
    }
    throw DomainError("tower has no indeterminate y1 with y1' = (" + format(p, tower) + ")*y1");
}

std::string format(const LinDiffOp& op, const Tower& tower) {
    std::vector<std::pair<Elem, std::string>> terms;
    const auto& c = op.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "D" : "D^" + std::to_string(k));
        terms.emplace_back(c[k], std::move(mono));
    }
    return format_sum(terms, tower);
}

}  // namespace difftower
