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

#include "difftower/valuation.hpp"

#include <random>
#include <stdexcept>

#include "difftower/error.hpp"
#include "difftower/format.hpp"
#include "difftower/sampling.hpp"

namespace difftower {

long Order::value() const {
    if (infinite_) throw DomainError("order is infinite");
    return value_;
}

std::string to_string(const Order& o) { return o.is_infinite() ? "inf" : std::to_string(o.value()); }

Order ord0(const Elem& e, int level) {
    if (e.is_zero()) return Order::infinity();
    if (e.level() > level) throw DomainError("element lives above the valuation level");
    if (e.level() < level) return Order(0);
    const ElemFrac& f = e.frac();
    return Order(f.num().trailing_index() - f.den().trailing_index());
}

Order ord0(const Elem& e, const Tower& tower) { return ord0(e, tower.height()); }

Elem eval0(const Elem& e, int level) {
    const Order o = ord0(e, level);
    if (o < Order(0)) throw DomainError("pole at 0: evaluation is undefined");
    if (e.level() < level) return e;
    if (o > Order(0)) return Elem();
    const ElemFrac& f = e.frac();
    return f.num().coeff(0) / f.den().coeff(0);
}

Elem eval0(const Elem& e, const Tower& tower) { return eval0(e, tower.height()); }

OrderLemmaReport sample_order_monotonicity(const Tower& tower, const SamplingOptions& options) {
    const int level = tower.height();
    if (level < 1) throw DomainError("tower has no indeterminate");
    std::mt19937_64 rng(options.seed);
    SampleShape shape;
    shape.degree = options.degree;
    shape.coeff_degree = options.coeff_degree;
    OrderLemmaReport report;
    const Elem t = Elem::generator(level);

    auto check = [&](const Elem& e) {
        if (e.is_zero()) return;
        ++report.samples;
        const Elem de = derive(e, tower);
        if (ord0(de, level) < ord0(e, level)) {
            if (report.violations++ == 0) {
                report.counterexample = e;
                report.counterexample_derivative = de;
            }
        }
    };

    // Pure powers first; they are where the lemma is tight.
    for (long m = -3; m <= 3 && report.samples < options.samples; ++m) check(pow(t, m));
    while (report.samples < options.samples) check(random_elem(rng, level, shape));
    return report;
}

OrderLemmaReport assert_order_monotone(const Tower& tower, const SamplingOptions& options) {
    const int level = tower.height();
    if (level < 1) throw DomainError("tower has no indeterminate");
    const auto& top = tower.level(level);
    if (!is_special_rule(top.rule.rule, level))
        throw DomainError("top rule " + top.name + "' = " + format(top.rule.rule, tower) +
                          " is not special (order at 0 is below 1)");
    return sample_order_monotonicity(tower, options);
}

Elem rosenlicht_descend(const DiffPoly& t, const Elem& r, const Tower& tower) {
    const int level = tower.height();
    if (level < 1) throw DomainError("tower has no indeterminate to descend through");
    if (t.is_zero() || !is_rosenlicht(t)) throw DomainError("equation is not of Rosenlicht type");
    if (t.level() >= level) throw DomainError("equation coefficients must lie below the top level");
    const auto& top = tower.level(level);
    if (!is_special_rule(top.rule.rule, level)) throw DomainError("top level is not special transcendental");
    if (!eval_diffpoly(t, r, tower).is_zero()) throw DomainError("R is not a solution of the equation");
    if (r.level() < level) return r;
    if (ord0(r, level) < Order(0))
        throw DomainError("solution has a pole at " + top.name + " = 0, contradicting order monotonicity");
    Elem u0 = eval0(r, level);
    if (!eval_diffpoly(t, u0, tower).is_zero())
        throw std::logic_error("descended value does not satisfy the equation");
    return u0;
}

}  // namespace difftower
