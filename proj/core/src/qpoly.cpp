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

#include "difftower/qpoly.hpp"

#include <algorithm>

#include "difftower/error.hpp"

namespace difftower {

QFrac to_qfrac(const Elem& e) {
    if (e.level() == 0) return QFrac(e.rational());
    if (e.level() > 1) throw DomainError("element is not in the base field Q(x)");
    auto conv = [](const ElemPoly& p) {
        std::vector<mpq_class> c;
        c.reserve(p.coeffs().size());
        for (const Elem& a : p.coeffs()) c.push_back(a.rational());
        return QPoly(std::move(c));
    };
    return QFrac::from_reduced(conv(e.frac().num()), conv(e.frac().den()));
}

namespace {

ElemPoly to_elem_poly(const QPoly& p) {
    std::vector<Elem> c;
    c.reserve(p.coeffs().size());
    for (const mpq_class& a : p.coeffs()) c.emplace_back(a);
    return ElemPoly(std::move(c));
}

}  // namespace

Elem to_elem(const QFrac& f) {
    return Elem::from_fraction(1, ElemFrac::from_reduced(to_elem_poly(f.num()), to_elem_poly(f.den())));
}

Elem to_elem(const QPoly& p) { return to_elem(QFrac(p)); }

QFrac derive(const QFrac& f) {
    const QPoly& n = f.num();
    const QPoly& d = f.den();
    return QFrac::make(derivative(n) * d - n * derivative(d), d * d);
}

int compare(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t k = a.coeffs().size(); k-- > 0;) {
        const int c = cmp(a.coeffs()[k], b.coeffs()[k]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::vector<QFactor> squarefree_decomposition(const QPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree decomposition of zero");
    std::vector<QFactor> out;
    if (f.degree() == 0) return out;
    const QPoly a = monic(f);
    const QPoly da = derivative(a);
    QPoly g = poly_gcd(a, da);
    QPoly b = exact_quotient(a, g);
    QPoly c = exact_quotient(da, g);
    QPoly d = c - derivative(b);
    for (int i = 1; b.degree() > 0; ++i) {
        QPoly h = poly_gcd(b, d);
        if (h.degree() > 0) out.push_back({h, i});
        b = exact_quotient(b, h);
        c = exact_quotient(d, h);
        d = c - derivative(b);
    }
    return out;
}

std::vector<mpq_class> rational_roots(const QPoly& f) {
    std::vector<mpq_class> r;
    for (const QFactor& q : factor(f))
        if (q.poly.degree() == 1) r.push_back(-q.poly.coeff(0));
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace difftower
