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

#include "difftower/expint.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "difftower/error.hpp"

namespace difftower {

namespace {

struct PolyLess {
    bool operator()(const QPoly& a, const QPoly& b) const { return compare(a, b) < 0; }
};

QPoly integrate(const QPoly& p) {
    std::vector<mpq_class> c(p.coeffs().size() + 1);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) c[k + 1] = p.coeffs()[k] / mpq_class(static_cast<long>(k + 1));
    return QPoly(std::move(c));
}

QPoly constant(const mpq_class& c) { return QPoly(c); }

// a = c P' + r with deg r < deg P - 1 (P monic of degree >= 1).
std::pair<mpq_class, QPoly> split_along_derivative(const QPoly& a, const QPoly& p) {
    const int d = p.degree();
    const mpq_class c = a.coeff(static_cast<std::size_t>(d - 1)) / mpq_class(d);
    return {c, a - scale(derivative(p), c)};
}

mpz_class lcm_of_dens(const std::vector<mpq_class>& v) {
    mpz_class l = 1;
    for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

std::vector<mpz_class> clear(const std::vector<mpq_class>& v) {
    const mpz_class l = lcm_of_dens(v);
    std::vector<mpz_class> r;
    for (const auto& c : v) r.push_back(mpz_class(c * l));
    return r;
}

}  // namespace

QFrac PartialFraction::recombine() const {
    QFrac r(polynomial);
    for (const PoleTerm& t : terms)
        r = r + QFrac::make(t.numerator, pow(t.pole, static_cast<unsigned>(t.multiplicity)));
    return r;
}

PartialFraction partial_fractions(const QFrac& a) {
    PartialFraction out;
    auto [q, r] = poly_divmod(a.num(), a.den());
    out.polynomial = q;
    if (r.is_zero()) return out;
    const QPoly& d = a.den();
    for (const QFactor& f : factor(d)) {
        const QPoly block = pow(f.poly, static_cast<unsigned>(f.multiplicity));
        const QPoly cofactor = exact_quotient(d, block);
        const auto x = poly_xgcd(cofactor, block);  // x.s * cofactor = 1 mod block
        QPoly rest = (r * x.s) % block;
        // Expansion in powers of the pole: rest = sum c_j P^j.
        for (int j = 0; !rest.is_zero(); ++j) {
            auto [quo, c] = poly_divmod(rest, f.poly);
            if (!c.is_zero()) out.terms.push_back({f.poly, f.multiplicity - j, c});
            rest = std::move(quo);
        }
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const PoleTerm& x, const PoleTerm& y) {
        const int c = compare(x.pole, y.pole);
        return c != 0 ? c < 0 : x.multiplicity < y.multiplicity;
    });
    return out;
}

QFrac LogDerCert::value() const {
    QFrac r;
    for (const auto& [p, n] : factors) r = r + QFrac::make(scale(derivative(p), mpq_class(n)), p);
    return r;
}

QFrac LogDerCert::preimage() const {
    QFrac r(constant(1));
    for (const auto& [p, n] : factors) {
        const QFrac pp(pow(p, static_cast<unsigned>(mpz_class(abs(n)).get_ui())));
        r = sgn(n) > 0 ? r * pp : r / pp;
    }
    return r;
}

std::optional<LogDerCert> is_log_derivative(const QFrac& a) {
    LogDerCert cert;
    if (a.is_zero()) return cert;
    const PartialFraction pf = partial_fractions(a);
    if (!pf.polynomial.is_zero()) return std::nullopt;
    for (const PoleTerm& t : pf.terms) {
        if (t.multiplicity != 1) return std::nullopt;
        auto [c, rest] = split_along_derivative(t.numerator, t.pole);
        if (!rest.is_zero() || c.get_den() != 1) return std::nullopt;
        cert.factors.emplace_back(t.pole, c.get_num());
    }
    if (cert.value() != a) throw std::logic_error("logarithmic-derivative certificate does not recombine");
    return cert;
}

std::optional<QFrac> rational_antiderivative(const QFrac& a) {
    const PartialFraction pf = partial_fractions(a);
    QPoly poly = pf.polynomial;
    QFrac g;
    // Hermite reduction pole by pole: C/P^m = (-t/((m-1)P^(m-1)))' + (s + t'/(m-1))/P^(m-1)
    // where s P + t P' = C.
    std::map<QPoly, std::map<int, QPoly>, PolyLess> groups;
    for (const PoleTerm& t : pf.terms) groups[t.pole][t.multiplicity] = t.numerator;
    for (auto& [p, nums] : groups) {
        const QPoly dp = derivative(p);
        const auto x = poly_xgcd(p, dp);  // x.s P + x.t P' = 1
        for (int m = nums.rbegin()->first; m >= 2; --m) {
            auto [carry, c] = poly_divmod(nums[m], p);
            nums[m - 1] = nums[m - 1] + carry;
            if (c.is_zero()) continue;
            const QPoly t = (c * x.t) % p;
            const QPoly s = exact_quotient(c - t * dp, p);
            const mpq_class k(m - 1);
            g = g + QFrac::make(scale(t, mpq_class(-1 / k)), pow(p, static_cast<unsigned>(m - 1)));
            nums[m - 1] = nums[m - 1] + s + scale(derivative(t), mpq_class(1 / k));
        }
        auto [carry, c] = poly_divmod(nums[1], p);
        if (!c.is_zero()) return std::nullopt;
        poly = poly + carry;
    }
    g = g + QFrac(integrate(poly));
    if (derive(g) != a) throw std::logic_error("antiderivative does not differentiate back");
    return g;
}

QFrac combination(const std::vector<QFrac>& as, const IntVector& k) {
    if (as.size() != k.size()) throw DomainError("exponent vector length does not match the family");
    QFrac r;
    for (std::size_t i = 0; i < as.size(); ++i)
        if (sgn(k[i]) != 0) r = r + QFrac::make(scale(as[i].num(), mpq_class(k[i])), as[i].den());
    return r;
}

RelationLattice relation_lattice(const std::vector<QFrac>& as) {
    const std::size_t n = as.size();
    std::vector<PartialFraction> pfs;
    for (const QFrac& a : as) pfs.push_back(partial_fractions(a));

    // Coordinates of every a_i in a common basis of the partial-fraction space.
    // Keys: (pole or empty for the polynomial part, multiplicity, power of x),
    // multiplicity 0 marking the integral coordinate along P'/P.
    using Key = std::tuple<QPoly, int, int>;
    auto key_less = [](const Key& x, const Key& y) {
        const int c = compare(std::get<0>(x), std::get<0>(y));
        if (c != 0) return c < 0;
        return std::make_pair(std::get<1>(x), std::get<2>(x)) < std::make_pair(std::get<1>(y), std::get<2>(y));
    };
    std::map<Key, std::vector<mpq_class>, decltype(key_less)> linear(key_less), integral(key_less);
    auto put = [&](auto& table, const Key& key, std::size_t i, const mpq_class& v) {
        if (sgn(v) == 0) return;
        auto it = table.try_emplace(key, std::vector<mpq_class>(n)).first;
        it->second[i] = v;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pc = pfs[i].polynomial.coeffs();
        for (std::size_t k = 0; k < pc.size(); ++k) put(linear, Key{QPoly(), 0, static_cast<int>(k)}, i, pc[k]);
        for (const PoleTerm& t : pfs[i].terms) {
            QPoly rest = t.numerator;
            if (t.multiplicity == 1) {
                auto [c, r] = split_along_derivative(t.numerator, t.pole);
                put(integral, Key{t.pole, 0, 0}, i, c);
                rest = r;
            }
            const auto& rc = rest.coeffs();
            for (std::size_t k = 0; k < rc.size(); ++k) put(linear, Key{t.pole, t.multiplicity, static_cast<int>(k)}, i, rc[k]);
        }
    }

    // Integer solutions of the linear constraints.
    std::vector<IntVector> rows;
    for (const auto& [key, v] : linear) rows.push_back(clear(v));
    const IntMatrix kernel = integer_kernel(IntMatrix::from_rows(rows, n));  // r x n
    const std::size_t r = kernel.rows();

    // Integrality of the P'/P coordinates on the kernel: E K^T z in Z^m.
    std::vector<std::vector<mpq_class>> f;
    for (const auto& [key, e] : integral) {
        std::vector<mpq_class> row(r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < n; ++i) row[j] += e[i] * mpq_class(kernel(j, i));
        f.push_back(std::move(row));
    }
    const std::size_t m = f.size();
    std::vector<mpq_class> all;
    for (const auto& row : f) all.insert(all.end(), row.begin(), row.end());
    const mpz_class delta = lcm_of_dens(all);
    // z with G z = delta w: the kernel of [G | -delta I], projected to z.
    IntMatrix stacked(m, r + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < r; ++j) stacked(i, j) = mpz_class(f[i][j] * delta);
        stacked(i, r + i) = -delta;
    }
    const IntMatrix zk = integer_kernel(stacked);
    IntMatrix z(zk.rows(), r);
    for (std::size_t i = 0; i < zk.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j) z(i, j) = zk(i, j);

    RelationLattice lattice;
    lattice.n = n;
    lattice.basis = hnf(z * kernel);
    for (std::size_t i = 0; i < lattice.basis.rows(); ++i)
        if (!is_log_derivative(combination(as, lattice.basis.row(i))))
            throw std::logic_error("relation lattice basis row does not certify");
    return lattice;
}

namespace {

struct Quotient {
    std::vector<mpz_class> divisors;
    IntMatrix vinv;  // rows: a basis of Z^n adapted to the lattice
};

Quotient quotient_structure(const RelationLattice& lattice) {
    const SmithForm snf = smith_normal_form(lattice.basis);
    Quotient q;
    q.divisors = snf.diagonal();
    q.divisors.resize(lattice.n, 0);
    q.vinv = unimodular_inverse(snf.v);
    return q;
}

}  // namespace

TorsionReport torsion_report(const RelationLattice& lattice) {
    TorsionReport rep;
    const Quotient q = quotient_structure(lattice);
    rep.elementary_divisors = q.divisors;
    for (std::size_t i = 0; i < q.divisors.size(); ++i) {
        if (q.divisors[i] > 1) {
            rep.torsion_free = false;
            // Lambda = sum d_i Z w_i, so w_i has order exactly d_i.
            rep.witness = reduce_mod(q.vinv.row(i), lattice.basis);
            rep.order = q.divisors[i];
            break;
        }
    }
    return rep;
}

std::vector<IntVector> chain_generators(const std::vector<QFrac>& as, const RelationLattice& lattice) {
    if (as.size() != lattice.n) throw DomainError("family size does not match the lattice");
    const Quotient q = quotient_structure(lattice);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < q.divisors.size(); ++i) {
        if (q.divisors[i] > 1) throw DomainError("quotient by the relation lattice has torsion");
        if (q.divisors[i] == 0) gens.push_back(reduce_mod(q.vinv.row(i), lattice.basis));
    }
    return gens;
}

}  // namespace difftower
