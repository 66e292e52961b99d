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

// Factorization over Q: squarefree parts, Cantor-Zassenhaus modulo a small
// prime, linear Hensel lifting and Zassenhaus recombination.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "difftower/error.hpp"
#include "difftower/qpoly.hpp"

namespace difftower {

namespace {

using ZPoly = std::vector<mpz_class>;    // low to high, no trailing zeros
using FPoly = std::vector<std::uint64_t>;  // over F_p, same convention

void trim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}
void trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
int deg(const FPoly& a) { return static_cast<int>(a.size()) - 1; }
int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

// ---- F_p[x] ----

struct Fp {
    std::uint64_t p;

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
    std::uint64_t of(const mpz_class& z) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
        return r.get_ui();
    }

    FPoly of(const ZPoly& a) const {
        FPoly r;
        r.reserve(a.size());
        for (const auto& c : a) r.push_back(of(c));
        trim(r);
        return r;
    }

    FPoly sub(const FPoly& a, const FPoly& b) const {
        FPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        trim(r);
        return r;
    }
    FPoly add(const FPoly& a, const FPoly& b) const {
        FPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
        trim(r);
        return r;
    }
    FPoly mul(const FPoly& a, const FPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
        trim(r);
        return r;
    }
    FPoly scale(const FPoly& a, std::uint64_t s) const {
        FPoly r;
        r.reserve(a.size());
        for (auto c : a) r.push_back(mul(c, s));
        trim(r);
        return r;
    }
    FPoly monic(const FPoly& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

    std::pair<FPoly, FPoly> divmod(FPoly a, const FPoly& b) const {
        if (deg(a) < deg(b)) return {{}, a};
        const std::uint64_t li = inv(b.back());
        const std::size_t db = b.size() - 1;
        FPoly q(a.size() - db, 0);
        for (std::size_t k = a.size(); k-- > db;) {
            const std::uint64_t f = mul(a[k], li);
            if (f == 0) continue;
            q[k - db] = f;
            for (std::size_t j = 0; j <= db; ++j) a[k - db + j] = sub(a[k - db + j], mul(f, b[j]));
        }
        trim(a);
        trim(q);
        return {q, a};
    }
    FPoly mod(const FPoly& a, const FPoly& b) const { return divmod(a, b).second; }

    FPoly gcd(FPoly a, FPoly b) const {
        while (!b.empty()) {
            FPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s*a + t*b = 1 for coprime a, b.
    std::pair<FPoly, FPoly> bezout(const FPoly& a, const FPoly& b) const {
        FPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            FPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (deg(r0) != 0) throw std::logic_error("Hensel factors are not coprime modulo p");
        const std::uint64_t li = inv(r0[0]);
        return {scale(s0, li), scale(t0, li)};
    }

    FPoly powmod(FPoly b, const mpz_class& e, const FPoly& m) const {
        FPoly r{1};
        b = mod(b, m);
        for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
            r = mod(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, b), m);
        }
        return r;
    }
    FPoly derivative(const FPoly& a) const {
        FPoly r;
        for (std::size_t k = 1; k < a.size(); ++k) r.push_back(mul(k % p, a[k]));
        trim(r);
        return r;
    }
};

// Distinct-degree factorization of a monic squarefree f: pairs (product, d).
std::vector<std::pair<FPoly, int>> distinct_degree(const Fp& F, FPoly f) {
    std::vector<std::pair<FPoly, int>> out;
    const FPoly x{0, 1};
    FPoly h = x;
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = F.powmod(h, mpz_class(F.p), f);
        FPoly g = F.gcd(F.sub(h, x), f);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = F.divmod(f, g).first;
            h = F.mod(h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

// Equal-degree splitting of a product of irreducibles of degree d.
void equal_degree(const Fp& F, const FPoly& f, int d, std::mt19937_64& rng, std::vector<FPoly>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coef(0, F.p - 1);
    for (;;) {
        FPoly a(static_cast<std::size_t>(deg(f)), 0);
        for (auto& c : a) c = coef(rng);
        trim(a);
        if (deg(a) < 1) continue;
        FPoly b = F.sub(F.powmod(a, e, f), FPoly{1});
        FPoly g = F.gcd(b, f);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree(F, g, d, rng, out);
            equal_degree(F, F.divmod(f, g).first, d, rng, out);
            return;
        }
    }
}

std::vector<FPoly> factor_mod_p(const Fp& F, const FPoly& f) {
    std::mt19937_64 rng(F.p);
    std::vector<FPoly> out;
    for (auto& [g, d] : distinct_degree(F, F.monic(f))) equal_degree(F, g, d, rng, out);
    return out;
}

// ---- Z[x] ----

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

ZPoly zmod(ZPoly a, const mpz_class& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    trim(a);
    return a;
}

// Representatives in (-m/2, m/2].
ZPoly symmetric(ZPoly a, const mpz_class& m) {
    const mpz_class half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    trim(a);
    return a;
}

ZPoly lift(const FPoly& a) {
    ZPoly r;
    r.reserve(a.size());
    for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

mpz_class zcontent(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive(ZPoly a) {
    mpz_class g = zcontent(a);
    if (a.back() < 0) g = -g;
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return a;
}

// a / b over Z when exact.
std::optional<ZPoly> zdivide(ZPoly a, const ZPoly& b) {
    if (deg(a) < deg(b)) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    const std::size_t db = b.size() - 1;
    ZPoly q(a.size() - db);
    for (std::size_t k = a.size(); k-- > db;) {
        if (sgn(a[k]) == 0) continue;
        if (!mpz_divisible_p(a[k].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), a[k].get_mpz_t(), b.back().get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= f * b[j];
        q[k - db] = f;
    }
    trim(a);
    if (!a.empty()) return std::nullopt;
    trim(q);
    return q;
}

// Lift f = A*B (mod p), A and B monic and coprime mod p, to modulus m = p^k;
// f is monic modulo m.
std::pair<ZPoly, ZPoly> hensel_pair(const Fp& F, const ZPoly& f, ZPoly A, ZPoly B, const mpz_class& modulus) {
    const FPoly a0 = F.of(A), b0 = F.of(B);
    const auto [s, t] = F.bezout(a0, b0);
    mpz_class m = F.p;
    while (m < modulus) {
        ZPoly e = f;
        const ZPoly ab = zmul(A, B);
        e.resize(std::max(e.size(), ab.size()));
        for (std::size_t i = 0; i < ab.size(); ++i) e[i] -= ab[i];
        trim(e);
        for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        const FPoly ep = F.of(e);
        auto [q, alpha] = F.divmod(F.mul(t, ep), a0);
        const FPoly beta = F.add(F.mul(s, ep), F.mul(q, b0));
        auto bump = [&](ZPoly& P, const FPoly& d) {
            P.resize(std::max(P.size(), d.size()));
            for (std::size_t i = 0; i < d.size(); ++i) P[i] += m * static_cast<unsigned long>(d[i]);
        };
        bump(A, alpha);
        bump(B, beta);
        m *= F.p;
        A = zmod(A, m);
        B = zmod(B, m);
    }
    return {A, B};
}

std::vector<ZPoly> hensel_lift(const Fp& F, const ZPoly& f, const std::vector<FPoly>& factors,
                               const mpz_class& modulus) {
    // Make f monic modulo the target modulus.
    mpz_class li;
    mpz_invert(li.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
    ZPoly target = f;
    for (auto& c : target) c *= li;
    target = zmod(target, modulus);
    std::vector<ZPoly> out;
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        FPoly rest{1};
        for (std::size_t j = i + 1; j < factors.size(); ++j) rest = F.mul(rest, factors[j]);
        auto [a, b] = hensel_pair(F, target, lift(factors[i]), lift(rest), modulus);
        out.push_back(std::move(a));
        target = std::move(b);
    }
    out.push_back(std::move(target));
    return out;
}

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible factors over Z of a primitive squarefree f with positive lc.
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
    const int n = deg(f);
    if (n <= 1) return {f};
    // Among a few good primes keep the one with the fewest modular factors.
    std::vector<FPoly> best;
    Fp bestF{0};
    int good = 0;
    for (unsigned long p = 3; good < 5; p += 2) {
        if (!is_prime(p)) continue;
        const Fp F{p};
        if (F.of(f.back()) == 0) continue;
        const FPoly fp = F.of(f);
        if (deg(F.gcd(fp, F.derivative(fp))) > 0) continue;
        ++good;
        std::vector<FPoly> fs = factor_mod_p(F, fp);
        if (bestF.p == 0 || fs.size() < best.size()) {
            best = std::move(fs);
            bestF = F;
        }
        if (best.size() == 1) break;
    }
    if (best.size() == 1) return {f};
    // Coefficient bound for any factor: 2^n * |f|_2.
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class bound = sqrt(norm2) + 1;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    const mpz_class need = 2 * abs(f.back()) * bound;
    mpz_class modulus = bestF.p;
    while (modulus <= need) modulus *= bestF.p;
    std::vector<ZPoly> lifted = hensel_lift(bestF, f, best, modulus);

    std::vector<ZPoly> out;
    ZPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            ZPoly g{rest.back()};
            for (auto i : idx) g = zmod(zmul(g, lifted[i]), modulus);
            g = primitive(symmetric(g, modulus));
            if (auto q = zdivide(rest, g)) {
                out.push_back(g);
                rest = std::move(*q);
                for (std::size_t k = s; k-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
                found = true;
                break;
            }
            // Next s-subset in lexicographic order.
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (deg(rest) > 0) out.push_back(primitive(rest));
    return out;
}

QPoly to_q(const ZPoly& a) {
    std::vector<mpq_class> c(a.begin(), a.end());
    return monic(QPoly(std::move(c)));
}

ZPoly to_z(const QPoly& a) {
    mpz_class l = 1;
    for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZPoly r;
    for (const auto& c : a.coeffs()) r.push_back(mpz_class(c * l));
    return primitive(r);
}

}  // namespace

std::vector<QFactor> factor(const QPoly& f) {
    std::vector<QFactor> out;
    for (const QFactor& sq : squarefree_decomposition(f))
        for (const ZPoly& g : factor_squarefree(to_z(sq.poly))) out.push_back({to_q(g), sq.multiplicity});
    std::sort(out.begin(), out.end(), [](const QFactor& a, const QFactor& b) { return compare(a.poly, b.poly) < 0; });
    return out;
}

}  // namespace difftower
