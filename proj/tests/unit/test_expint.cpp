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

#include "doctest.h"
#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "difftower/expint.hpp"
#include "difftower/intmatrix.hpp"
#include "difftower/qpoly.hpp"

using namespace difftower;

namespace {

QPoly qp(std::vector<long> c) {
    std::vector<mpq_class> v(c.begin(), c.end());
    return QPoly(std::move(v));
}
const QPoly X = qp({0, 1});
QFrac qf(const QPoly& n, const QPoly& d = qp({1})) { return QFrac::make(n, d); }
mpq_class q(long n, long d) {
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}
QFrac qc(long n, long d = 1) { return QFrac(QPoly(q(n, d))); }

IntVector iv(std::vector<long> v) { return IntVector(v.begin(), v.end()); }
IntMatrix im(std::vector<std::vector<long>> rows, std::size_t cols) {
    std::vector<IntVector> r;
    for (auto& x : rows) r.push_back(iv(x));
    return IntMatrix::from_rows(r, cols);
}

// Rational roots by the rational root theorem, searched exhaustively.
bool has_rational_root(const QPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    const long a0 = mpz_class(p.coeff(0) * l).get_si(), an = mpz_class(p.lc() * l).get_si();
    if (a0 == 0) return true;
    for (long num = 1; num <= std::labs(a0); ++num) {
        if (a0 % num) continue;
        for (long den = 1; den <= std::labs(an); ++den) {
            if (an % den) continue;
            for (long s : {1L, -1L})
                if (sgn(eval(p, q(s * num, den))) == 0) return true;
        }
    }
    return false;
}

// Irreducible polynomials over Q with a reason that does not depend on the
// code under test: linear, Eisenstein at 2 or 3, negative discriminant, or
// known closed forms.
std::vector<QPoly> irreducible_pool() {
    return {
        qp({-1, 1}),          qp({2, 1}),           qp({1, 2}),           qp({1, 0, 1}),
        qp({2, 0, 1}),        qp({-2, 0, 1}),       qp({1, 1, 1}),        qp({-2, 0, 0, 1}),
        qp({3, 3, 0, 1}),     qp({1, 0, 0, 0, 1}),  qp({1, 0, -10, 0, 1}), qp({2, 2, 2, 2, 0, 1}),
        qp({-3, 0, 0, 0, 0, 0, 1}),
    };
}

QPoly random_shift(std::mt19937_64& rng, const QPoly& p) {
    std::uniform_int_distribution<long> c(-2, 2);
    return taylor_shift(p, mpq_class(c(rng)));
}

bool same_factors(std::vector<QFactor> a, std::vector<QFactor> b) {
    auto key = [](const QFactor& x, const QFactor& y) {
        const int c = compare(x.poly, y.poly);
        return c != 0 ? c < 0 : x.multiplicity < y.multiplicity;
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].poly != b[i].poly || a[i].multiplicity != b[i].multiplicity) return false;
    return true;
}

QFrac random_qfrac(std::mt19937_64& rng, int degree) {
    return to_qfrac(random_elem(rng, 1, fx::small_shape(degree)));
}

mpz_class gcd_of(std::initializer_list<mpz_class> v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

}  // namespace

TEST_CASE("squarefree decomposition") {
    const QPoly a = qp({-1, 1}), b = qp({1, 0, 1});
    const auto sq = squarefree_decomposition(scale(a * pow(b, 3), mpq_class(5)));
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].poly == a);
    CHECK(sq[0].multiplicity == 1);
    CHECK(sq[1].poly == b);
    CHECK(sq[1].multiplicity == 3);
}

TEST_CASE("factorization recovers planted irreducibles") {
    std::mt19937_64 rng(17);
    const auto pool = irreducible_pool();
    for (const QPoly& p : pool) {
        CHECK(!(p.degree() > 1 && p.degree() <= 3 && has_rational_root(p)));
        const auto f = factor(p);
        REQUIRE(f.size() == 1);
        CHECK(f[0].poly == monic(p));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, 3), mult(1, 2);
    for (int i = 0; i < 60; ++i) {
        std::vector<QFactor> planted;
        QPoly f = qp({3});
        for (int k = count(rng); k-- > 0;) {
            const QPoly g = monic(random_shift(rng, pool[pick(rng)]));
            const int m = mult(rng);
            auto it = std::find_if(planted.begin(), planted.end(), [&](const QFactor& q) { return q.poly == g; });
            if (it != planted.end())
                it->multiplicity += m;
            else
                planted.push_back({g, m});
            f = f * pow(g, static_cast<unsigned>(m));
        }
        const auto got = factor(f);
        CHECK(same_factors(got, planted));
        QPoly back = qp({3});
        for (const auto& q : got) back = back * pow(q.poly, static_cast<unsigned>(q.multiplicity));
        CHECK(back == f);
    }
}

TEST_CASE("rational roots") {
    const QPoly f = qp({-1, 2}) * qp({3, 1}) * qp({1, 0, 1});
    const auto r = rational_roots(f);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == -3);
    CHECK(r[1] == mpq_class(1, 2));
}

TEST_CASE("partial fractions") {
    const auto pf = partial_fractions(qf(qp({1}), qp({-1, 0, 1})));
    CHECK(pf.polynomial.is_zero());
    REQUIRE(pf.terms.size() == 2);
    CHECK(pf.terms[0].pole == qp({-1, 1}));
    CHECK(pf.terms[0].numerator == QPoly(q(1, 2)));
    CHECK(pf.terms[1].pole == qp({1, 1}));
    CHECK(pf.terms[1].numerator == QPoly(q(-1, 2)));

    const auto poly = partial_fractions(qf(X));
    CHECK(poly.polynomial == X);
    CHECK(poly.terms.empty());

    const auto quad = partial_fractions(qf(qp({0, 2}), qp({1, 0, 1})));
    REQUIRE(quad.terms.size() == 1);
    CHECK(quad.terms[0].pole == qp({1, 0, 1}));
    CHECK(quad.terms[0].multiplicity == 1);
    CHECK(quad.terms[0].numerator == qp({0, 2}));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 40; ++i) {
        const QFrac a = random_qfrac(rng, 4) * qf(qp({1}), pow(qp({1, 1}), 2));
        const auto d = partial_fractions(a);
        CHECK(d.recombine() == a);
        for (const auto& t : d.terms) {
            CHECK(t.multiplicity >= 1);
            CHECK(!t.numerator.is_zero());
            CHECK(t.numerator.degree() < t.pole.degree());
            if (t.pole.degree() <= 3) CHECK((t.pole.degree() == 1 || !has_rational_root(t.pole)));
        }
    }
}

TEST_CASE("logarithmic derivatives") {
    auto c1 = is_log_derivative(qf(qp({1}), X));
    REQUIRE(c1);
    REQUIRE(c1->factors.size() == 1);
    CHECK(c1->factors[0].first == X);
    CHECK(c1->factors[0].second == 1);
    CHECK(!is_log_derivative(qf(qp({1}), qp({0, 2}))));
    auto c2 = is_log_derivative(qf(qp({0, 2}), qp({1, 0, 1})));
    REQUIRE(c2);
    CHECK(c2->preimage() == qf(qp({1, 0, 1})));
    CHECK(!is_log_derivative(qc(1)));
    CHECK(is_log_derivative(QFrac()));

    // f'/f for planted f certifies with preimage f up to a constant.
    std::mt19937_64 rng(29);
    const auto pool = irreducible_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int i = 0; i < 40; ++i) {
        QFrac f = qc(7);
        for (int k = 0; k < 3; ++k) {
            const int m = e(rng);
            const QFrac g(pow(random_shift(rng, pool[pick(rng)]), static_cast<unsigned>(std::abs(m))));
            f = m >= 0 ? f * g : f / g;
        }
        const QFrac a = derive(f) / f;
        auto cert = is_log_derivative(a);
        REQUIRE(cert);
        CHECK(cert->value() == a);
        const QFrac ratio = f / cert->preimage();
        CHECK(ratio.is_constant());
        // Shifting by a non-integral residue destroys the certificate.
        CHECK(!is_log_derivative(a + qf(qp({1}), qp({0, 3}))));
    }
}

TEST_CASE("rational antiderivatives") {
    CHECK(rational_antiderivative(qf(qp({0, 2}))) == std::optional<QFrac>(qf(qp({0, 0, 1}))));
    CHECK(rational_antiderivative(qf(qp({1}), qp({0, 0, 1}))) == std::optional<QFrac>(qf(qp({-1}), X)));
    CHECK(!rational_antiderivative(qf(qp({1}), X)));

    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const QFrac g = random_qfrac(rng, 3);
        const QFrac a = derive(g);
        auto h = rational_antiderivative(a);
        REQUIRE(h);
        CHECK(derive(*h) == a);
        CHECK((*h - g).is_constant());
        CHECK(!rational_antiderivative(a + qf(qp({1}), qp({1, 0, 1}) * qp({2, 1}))));
    }
}

TEST_CASE("Hermite normal form and kernels") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> e(-4, 4);
    for (int i = 0; i < 50; ++i) {
        IntMatrix m(3, 4);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = e(rng);
        const IntMatrix h = hnf(m);
        // Same lattice after a random unimodular change of basis.
        IntMatrix u = IntMatrix::identity(3);
        u.add_row(0, 1, e(rng));
        u.add_row(2, 0, e(rng));
        u.swap_rows(1, 2);
        CHECK(hnf(u * m) == h);
        for (std::size_t r = 0; r < m.rows(); ++r) CHECK(in_lattice(m.row(r), h));
        const IntMatrix k = integer_kernel(m);
        CHECK(k.rows() + h.rows() == 4);
        for (std::size_t r = 0; r < k.rows(); ++r) {
            const IntMatrix col = IntMatrix::from_rows({k.row(r)}, 4).transpose();
            CHECK(m * col == IntMatrix(3, 1));
        }
    }
    CHECK(det(im({{2, 1}, {1, 1}}, 2)) == 1);
    CHECK(det(im({{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}, 3)) == -2);
}

TEST_CASE("Smith normal form") {
    CHECK(smith_normal_form(im({{2}}, 1)).s == im({{2}}, 1));
    CHECK(smith_normal_form(IntMatrix::identity(3)).s == IntMatrix::identity(3));
    const SmithForm d = smith_normal_form(im({{2, 0}, {0, 3}}, 2));
    CHECK(d.s == im({{1, 0}, {0, 6}}, 2));
    CHECK(abs(det(d.u)) == 1);
    CHECK(abs(det(d.v)) == 1);
    CHECK(d.u * im({{2, 0}, {0, 3}}, 2) * d.v == d.s);

    // Random shapes: the defining identity, unimodularity and the chain.
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> e(-6, 6);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int i = 0; i < 60; ++i) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = e(rng);
        const SmithForm s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.s);
        CHECK(abs(det(s.u)) == 1);
        CHECK(abs(det(s.v)) == 1);
        const auto diag = s.diagonal();
        for (std::size_t k = 0; k < diag.size(); ++k) {
            CHECK(diag[k] >= 0);
            if (k + 1 < diag.size() && sgn(diag[k]) != 0) CHECK(mpz_divisible_p(diag[k + 1].get_mpz_t(), diag[k].get_mpz_t()));
            if (sgn(diag[k]) == 0 && k + 1 < diag.size()) CHECK(sgn(diag[k + 1]) == 0);
        }
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (r != c) CHECK(sgn(s.s(r, c)) == 0);
    }

    // 2x2 entries in [-5, 5] against determinantal divisors: d1 = gcd of the
    // entries, d1 * d2 = |det|.
    for (long a = -5; a <= 5; ++a)
        for (long b = -5; b <= 5; ++b)
            for (long c = -5; c <= 5; ++c)
                for (long dd = -5; dd <= 5; ++dd) {
                    const IntMatrix m = im({{a, b}, {c, dd}}, 2);
                    const auto diag = smith_normal_form(m).diagonal();
                    const mpz_class g = gcd_of({a, b, c, dd});
                    if (diag[0] != g || diag[0] * diag[1] != abs(det(m))) {
                        FAIL_CHECK("SNF mismatch for " << to_string(m));
                    }
                }
}

TEST_CASE("relation lattice examples") {
    const QFrac inv_x = qf(qp({1}), X);
    const RelationLattice l1 = relation_lattice({inv_x, qf(qp({2}), X)});
    CHECK(l1.basis == IntMatrix::identity(2));

    const RelationLattice l2 = relation_lattice({qf(qp({1}), qp({0, 2}))});
    CHECK(l2.basis == im({{2}}, 1));

    const RelationLattice l3 = relation_lattice({qc(1), inv_x});
    CHECK(l3.basis == im({{0, 1}}, 2));

    const RelationLattice l4 = relation_lattice({qc(1), qc(2)});
    CHECK(l4.basis == im({{2, -1}}, 2));
}

TEST_CASE("torsion reports and chain generators") {
    const std::vector<QFrac> half{qf(qp({1}), qp({0, 2}))};
    const TorsionReport t = torsion_report(relation_lattice(half));
    CHECK(!t.torsion_free);
    CHECK(t.elementary_divisors == std::vector<mpz_class>{2});
    REQUIRE(t.witness);
    CHECK(*t.witness == iv({1}));
    CHECK(t.order == 2);
    CHECK_THROWS_AS(chain_generators(half, relation_lattice(half)), DomainError);

    RelationLattice full{2, IntMatrix::identity(2)};
    CHECK(torsion_report(full).torsion_free);
    CHECK(chain_generators({qc(1), qc(2)}, full).empty());

    RelationLattice zero{2, IntMatrix(0, 2)};
    const TorsionReport tz = torsion_report(zero);
    CHECK(tz.torsion_free);
    CHECK(tz.elementary_divisors == std::vector<mpz_class>{0, 0});

    const std::vector<QFrac> one{qc(1)};
    const RelationLattice lone = relation_lattice(one);
    CHECK(lone.basis.rows() == 0);
    CHECK(chain_generators(one, lone) == std::vector<IntVector>{iv({1})});

    const std::vector<QFrac> pair{qc(1), qc(2)};
    const RelationLattice lp = relation_lattice(pair);
    CHECK(torsion_report(lp).torsion_free);
    const auto gens = chain_generators(pair, lp);
    REQUIRE(gens.size() == 1);
    // The generator together with the lattice spans Z^2.
    IntMatrix span = lp.basis;
    span = IntMatrix::from_rows({lp.basis.row(0), gens[0]}, 2);
    CHECK(abs(det(span)) == 1);
}

TEST_CASE("relation lattice properties") {
    std::mt19937_64 rng(43);
    const QPoly poles[] = {X, qp({1, 1}), qp({1, 0, 1}), qp({-2, 0, 1})};
    std::uniform_int_distribution<int> pick(0, 3), num(-3, 3), den(1, 3), coin(0, 3);
    std::uniform_int_distribution<long> k(-4, 4);
    for (int i = 0; i < 25; ++i) {
        std::vector<QFrac> as;
        for (int j = 0; j < 3; ++j) {
            QFrac a;
            for (int t = 0; t < 2; ++t) {
                const QPoly& p = poles[pick(rng)];
                a = a + QFrac::make(scale(derivative(p), q(num(rng), den(rng))), p);
            }
            if (coin(rng) == 0) a = a + qc(num(rng));
            as.push_back(a);
        }
        const RelationLattice l = relation_lattice(as);
        for (std::size_t r = 0; r < l.basis.rows(); ++r) CHECK(is_log_derivative(combination(as, l.basis.row(r))));
        for (int s = 0; s < 20; ++s) {
            const IntVector v = iv({k(rng), k(rng), k(rng)});
            const bool member = l.contains(v);
            CHECK(member == is_log_derivative(combination(as, v)).has_value());
            if (member) {
                IntVector neg = v;
                for (auto& c : neg) c = -c;
                CHECK(l.contains(neg));
            }
        }
        // Closure under addition on random members.
        if (l.basis.rows() > 0) {
            IntVector sum(3);
            for (std::size_t r = 0; r < l.basis.rows(); ++r) {
                const mpz_class m = k(rng);
                for (std::size_t c = 0; c < 3; ++c) sum[c] += l.basis(r, c) * m;
            }
            CHECK(is_log_derivative(combination(as, sum)));
        }
    }
}

TEST_CASE("no relations in the exponent box when the lattice is trivial") {
    const std::vector<std::vector<QFrac>> families{
        {qc(1), qf(X)},
        {qc(1), qf(qp({1}), qp({0, 0, 1}))},
        {qf(X), qf(qp({1}), qp({1, 0, 1})), qc(3)},
    };
    for (const auto& as : families) {
        REQUIRE(relation_lattice(as).basis.rows() == 0);
        const std::size_t n = as.size();
        std::vector<long> ks(n, -5);
        for (;;) {
            if (std::none_of(ks.begin(), ks.end(), [](long v) { return v == 0; })) {
                IntVector v(ks.begin(), ks.end());
                CHECK(!is_log_derivative(combination(as, v)));
            }
            std::size_t i = 0;
            while (i < n && ks[i] == 5) ks[i++] = -5;
            if (i == n) break;
            ++ks[i];
        }
    }
}

TEST_CASE("derivative of a monomial in an exponential") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) {
        const Elem a = random_elem(rng, 1, fx::small_shape(2));
        const Tower t = fx::over_base([&](const Elem& y) { return a * y; });
        const Elem c = random_elem(rng, 1, fx::small_shape(2));
        std::uniform_int_distribution<long> m(-3, 3);
        const long e = m(rng);
        const Elem ym = pow(fx::y(), e);
        CHECK(derive(c * ym, t) == (derive(c, t) + Elem(e) * a * c) * ym);
    }
}

TEST_CASE("base field conversions") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 30; ++i) {
        const Elem e = random_elem(rng, 1, fx::small_shape(3));
        CHECK(to_elem(to_qfrac(e)) == e);
        CHECK(to_qfrac(derive(e, fx::base())) == derive(to_qfrac(e)));
    }
    CHECK_THROWS_AS(to_qfrac(fx::y()), DomainError);
}
