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

#include "difftower/solver.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "difftower/error.hpp"
#include "difftower/format.hpp"

namespace difftower {

const Tower& base_tower() {
    static const Tower t = Tower::rational("x");
    return t;
}

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

// Basis of {v : m v = 0} from the reduced row echelon form, one vector per
// free column with a 1 there.
std::vector<std::vector<mpq_class>> nullspace(QMatrix m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        const mpq_class inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            const mpq_class f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::vector<mpq_class> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Coefficients scaled to polynomials with no common factor.
std::vector<QPoly> polynomial_coeffs(const LinDiffOp& op) {
    std::vector<QFrac> f;
    for (const Elem& c : op.coeffs()) f.push_back(to_qfrac(c));
    QPoly den(mpq_class(1));
    for (const QFrac& c : f) den = exact_quotient(den * c.den(), poly_gcd(den, c.den()));
    std::vector<QPoly> a;
    QPoly g;
    for (const QFrac& c : f) {
        a.push_back(exact_quotient(c.num() * den, c.den()));
        g = poly_gcd(g, a.back());
    }
    for (QPoly& p : a) p = exact_quotient(p, g);
    return a;
}

void require_base(const LinDiffOp& op) {
    if (op.is_zero()) throw DomainError("zero operator");
    if (op.level() > 1) throw DomainError("operator coefficients must lie in Q(x)");
}

QPoly falling(int i) {
    // e (e - 1) ... (e - i + 1)
    QPoly r(mpq_class(1));
    for (int k = 0; k < i; ++k) r = r * QPoly(std::vector<mpq_class>{mpq_class(-k), mpq_class(1)});
    return r;
}

// Nonnegative integer roots of the indicial polynomial at infinity: the
// possible degrees of polynomial solutions.
std::vector<long> degrees_at_infinity(const std::vector<QPoly>& a) {
    std::optional<int> best;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) best = std::max(best.value_or(a[i].degree() - static_cast<int>(i)), a[i].degree() - static_cast<int>(i));
    QPoly ind;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && a[i].degree() - static_cast<int>(i) == *best)
            ind = ind + scale(falling(static_cast<int>(i)), a[i].lc());
    std::vector<long> out;
    if (ind.is_zero()) return out;
    for (const mpq_class& r : rational_roots(ind))
        if (r.get_den() == 1 && r >= 0) out.push_back(r.get_num().get_si());
    return out;
}

Elem x_power(const mpq_class& c, int d) {
    std::vector<mpq_class> v(static_cast<std::size_t>(d) + 1);
    v.back() = c;
    return to_elem(QPoly(std::move(v)));
}

// Nonzero c such that c x^d balances the dominant terms at infinity.
std::vector<mpq_class> characteristic_roots(const std::vector<QPoly>& a, int d) {
    std::optional<int> top;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) top = std::max(top.value_or(a[i].degree() + static_cast<int>(i) * d), a[i].degree() + static_cast<int>(i) * d);
    std::vector<mpq_class> chi(a.size());
    int ties = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && a[i].degree() + static_cast<int>(i) * d == *top) {
            chi[i] = a[i].lc();
            ++ties;
        }
    std::vector<mpq_class> out;
    if (ties < 2) return out;
    for (const mpq_class& c : rational_roots(QPoly(chi)))
        if (sgn(c) != 0) out.push_back(c);
    return out;
}

// Candidate polynomial parts of p at infinity of degree <= max_degree, built
// top term first from the Newton polygon. Always contains 0.
void polynomial_parts(const LinDiffOp& op, int max_degree, const Elem& prefix, std::vector<Elem>& out) {
    out.push_back(prefix);
    if (max_degree < 0) return;
    const std::vector<QPoly> a = polynomial_coeffs(op);
    for (int d = max_degree; d >= 0; --d)
        for (const mpq_class& c : characteristic_roots(a, d)) {
            const Elem term = x_power(c, d);
            polynomial_parts(gauge_transform(op, term), d - 1, prefix + term, out);
        }
}

// Largest integer slope of the Newton polygon at infinity; -1 when none.
int largest_slope(const std::vector<QPoly>& a) {
    int best = -1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (a[i].is_zero() || a[j].is_zero()) continue;
            const int num = a[j].degree() - a[i].degree();
            const int den = static_cast<int>(i - j);
            if (num < 0 || num % den != 0) continue;
            best = std::max(best, num / den);
        }
    return best;
}

struct LocalExponents {
    mpq_class point;
    std::vector<mpq_class> exponents;
};

LocalExponents local_exponents(const std::vector<QPoly>& a, const mpq_class& alpha) {
    const int n = static_cast<int>(a.size()) - 1;
    std::optional<int> low;
    std::vector<QPoly> shifted;
    for (const QPoly& p : a) shifted.push_back(taylor_shift(p, alpha));
    for (int i = 0; i <= n; ++i)
        if (!shifted[i].is_zero()) low = std::min(low.value_or(shifted[i].trailing_index() - i), shifted[i].trailing_index() - i);
    if (shifted[n].trailing_index() - n != *low)
        throw UnsupportedSingularity("irregular singular point at x = " + format(alpha));
    QPoly ind;
    for (int i = 0; i <= n; ++i)
        if (!shifted[i].is_zero() && shifted[i].trailing_index() - i == *low)
            ind = ind + scale(falling(i), shifted[i].coeff(static_cast<std::size_t>(shifted[i].trailing_index())));
    return {alpha, rational_roots(ind)};
}

}  // namespace

std::vector<QPoly> polynomial_solutions(const LinDiffOp& op, int degree_bound) {
    require_base(op);
    if (degree_bound < 0) return {};
    const std::vector<QPoly> a = polynomial_coeffs(op);
    const std::size_t cols = static_cast<std::size_t>(degree_bound) + 1;
    std::vector<QPoly> images;
    std::size_t rows = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        QPoly y = pow(QPoly::variable(), static_cast<unsigned>(j)), img;
        for (const QPoly& c : a) {
            img = img + c * y;
            y = derivative(y);
        }
        rows = std::max(rows, img.coeffs().size());
        images.push_back(std::move(img));
    }
    QMatrix m(rows, std::vector<mpq_class>(cols));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < images[j].coeffs().size(); ++i) m[i][j] = images[j].coeffs()[i];
    std::vector<QPoly> out;
    for (auto& v : nullspace(std::move(m), cols)) out.push_back(monic(QPoly(std::move(v))));
    std::sort(out.begin(), out.end(), [](const QPoly& x, const QPoly& y) { return compare(x, y) < 0; });
    return out;
}

LinDiffOp gauge_transform(const LinDiffOp& op, const Elem& r) {
    if (r.is_zero()) return op;
    const Tower& t = base_tower();
    const LinDiffOp shift({r, Elem(1)});
    LinDiffOp acc, power = LinDiffOp::scalar(Elem(1));
    const auto& c = op.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) power = mul(shift, power, t);
        if (!c[k].is_zero()) acc = acc + scale(c[k], power);
    }
    return acc;
}

ExpSolutions exponential_solutions(const LinDiffOp& op, const SearchBounds& bounds) {
    require_base(op);
    if (op.order() < 1) throw DomainError("exponential solutions need an operator of order >= 1");
    const Tower& t = base_tower();
    ExpSolutions out;
    if (op.order() == 1) {
        out.solutions.push_back(-op.coeff(0) / op.coeff(1));
        return out;
    }
    const std::vector<QPoly> a = polynomial_coeffs(op);

    // Finite singular points must be rational and regular.
    std::vector<LocalExponents> local;
    for (const QFactor& f : factor(a.back())) {
        if (f.poly.degree() > 1)
            throw UnsupportedSingularity("singular points at the roots of " + format(f.poly) + " are not rational");
        local.push_back(local_exponents(a, -f.poly.coeff(0)));
        if (local.back().exponents.empty()) return out;
    }

    // Polynomial parts at infinity.
    const int slope = largest_slope(a);
    for (int d = bounds.degree + 1; d <= slope; ++d)
        if (!characteristic_roots(a, d).empty()) out.truncated = true;
    std::vector<Elem> parts;
    polynomial_parts(op, std::min(slope, bounds.degree), Elem(), parts);

    std::vector<Elem> found;
    std::vector<std::size_t> idx(local.size(), 0);
    for (;;) {
        Elem poles;
        for (std::size_t k = 0; k < local.size(); ++k) {
            const QPoly lin(std::vector<mpq_class>{-local[k].point, mpq_class(1)});
            poles += to_elem(QFrac::make(QPoly(local[k].exponents[idx[k]]), lin));
        }
        for (const Elem& part : parts) {
            const Elem r = poles + part;
            const LinDiffOp g = gauge_transform(op, r);
            const auto degs = degrees_at_infinity(polynomial_coeffs(g));
            if (degs.empty()) continue;
            long n = *std::max_element(degs.begin(), degs.end());
            if (n > bounds.poly_degree) {
                out.truncated = true;
                n = bounds.poly_degree;
            }
            const std::vector<QPoly> zs = polynomial_solutions(g, static_cast<int>(n));
            if (zs.size() > 1) out.family = true;
            for (const QPoly& z : zs) found.push_back(r + to_elem(QFrac::make(derivative(z), z)));
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == local[k].exponents.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const Elem& p : found)
        if (!right_divide(op, LinDiffOp::first_order(p), t).remainder.is_zero())
            throw std::logic_error("exponential solution candidate does not divide the operator");
    out.solutions = std::move(found);
    return out;
}

namespace {

void explore(const LinDiffOp& op, std::vector<Elem>& prefix, const SearchBounds& bounds, ChainSearch& s) {
    StageRecord rec;
    rec.prefix = prefix;
    if (s.nodes >= bounds.nodes) {
        s.bounds_hit.nodes = true;
        rec.status = StageStatus::budget;
        rec.note = "node budget exhausted";
        s.trace.push_back(std::move(rec));
        return;
    }
    ++s.nodes;
    ExpSolutions sols;
    try {
        sols = exponential_solutions(op, bounds);
    } catch (const UnsupportedSingularity& e) {
        s.unsupported = true;
        rec.status = StageStatus::unsupported;
        rec.note = e.what();
        s.trace.push_back(std::move(rec));
        return;
    }
    rec.candidates = sols.solutions;
    rec.family = sols.family;
    rec.truncated = sols.truncated;
    s.family = s.family || sols.family;
    s.bounds_hit.degree = s.bounds_hit.degree || sols.truncated;
    rec.status = sols.solutions.empty() ? StageStatus::dead_end : StageStatus::expanded;
    s.trace.push_back(std::move(rec));
    for (const Elem& p : sols.solutions) {
        prefix.push_back(p);
        const LinDiffOp q = reduce_order(op, p, base_tower());
        if (q.order() == 0)
            s.chains.push_back(prefix);
        else
            explore(q, prefix, bounds, s);
        prefix.pop_back();
    }
}

std::vector<QFrac> as_qfracs(const std::vector<Elem>& ps) {
    std::vector<QFrac> r;
    for (const Elem& p : ps) r.push_back(to_qfrac(p));
    return r;
}

}  // namespace

ChainSearch factor_chain(const LinDiffOp& op, const SearchBounds& bounds) {
    require_base(op);
    if (op.order() < 1) throw DomainError("factor_chain needs an operator of order >= 1");
    ChainSearch s;
    std::vector<Elem> prefix;
    explore(op, prefix, bounds, s);
    for (const auto& chain : s.chains)
        if (!verify_factorization(op, chain, base_tower()))
            throw std::logic_error("chain does not reproduce the operator");
    return s;
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::solvable:
            return "solvable";
        case VerdictStatus::not_solvable_by_admissible:
            return "not_solvable_by_admissible";
        case VerdictStatus::torsion_obstructed:
            return "torsion_obstructed";
        case VerdictStatus::unknown:
            break;
    }
    return "unknown";
}

Verdict solvability_verdict(const LinDiffOp& op, const SearchBounds& bounds) {
    const ChainSearch s = factor_chain(op, bounds);
    Verdict v;
    v.trace = s.trace;
    v.bounds_hit = s.bounds_hit;
    if (s.unsupported) v.notes.push_back("a stage has singularities outside the supported class");
    if (s.family) v.notes.push_back("a stage has a family of exponential solutions; one representative per basis vector was explored");
    if (s.bounds_hit.nodes) v.notes.push_back("node budget exhausted");
    if (s.bounds_hit.degree) v.notes.push_back("a degree bound truncated the candidate search");

    for (const auto& chain : s.chains) {
        const std::vector<QFrac> ps = as_qfracs(chain);
        ChainAnalysis c{chain, relation_lattice(ps), {}};
        c.torsion = torsion_report(c.lattice);
        v.explored.push_back(c);
        if (c.torsion.torsion_free) {
            if (!verify_factorization(op, chain, base_tower()))
                throw std::logic_error("solvable chain fails verification");
            v.status = VerdictStatus::solvable;
            v.chain = chain;
            v.lattice = c.lattice;
            v.torsion = c.torsion;
            return v;
        }
    }
    if (!v.explored.empty()) {
        v.chain = v.explored.front().chain;
        v.lattice = v.explored.front().lattice;
        v.torsion = v.explored.front().torsion;
        v.status = s.complete() ? VerdictStatus::torsion_obstructed : VerdictStatus::unknown;
        return v;
    }
    v.status = s.complete() ? VerdictStatus::not_solvable_by_admissible : VerdictStatus::unknown;
    return v;
}

}  // namespace difftower
