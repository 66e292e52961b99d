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

#include "difftower/mpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "difftower/error.hpp"

namespace difftower {

namespace {

MPoly constant_like(const MPoly& shape, const mpz_class& c) { return MPoly(shape.vars(), c); }

MPoly lift(const MPoly& p, int vars) {
    MPoly r = p;
    for (int v = p.vars() + 1; v <= vars; ++v) r = MPoly::from_coeffs(v, {r});
    return r;
}

// Multiply every main-variable coefficient by c (one variable fewer).
MPoly scale_coeffs(const MPoly& a, const MPoly& c) {
    std::vector<MPoly> k;
    k.reserve(a.coeffs().size());
    for (const MPoly& x : a.coeffs()) k.push_back(x * c);
    return MPoly::from_coeffs(a.vars(), std::move(k));
}

std::optional<MPoly> divide_coeffs(const MPoly& a, const MPoly& c) {
    std::vector<MPoly> k;
    k.reserve(a.coeffs().size());
    for (const MPoly& x : a.coeffs()) {
        auto q = divide_exact(x, c);
        if (!q) return std::nullopt;
        k.push_back(std::move(*q));
    }
    return MPoly::from_coeffs(a.vars(), std::move(k));
}

// t_n^s * a
MPoly shift(const MPoly& a, int s) {
    if (a.is_zero() || s == 0) return a;
    std::vector<MPoly> k(static_cast<std::size_t>(s), MPoly(a.vars() - 1, 0));
    k.insert(k.end(), a.coeffs().begin(), a.coeffs().end());
    return MPoly::from_coeffs(a.vars(), std::move(k));
}

MPoly power(const MPoly& a, int e) {
    MPoly r = constant_like(a, 1);
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b in the main variable.
MPoly pseudo_remainder(MPoly a, const MPoly& b) {
    const int db = b.degree();
    const MPoly& lb = b.lc();
    int steps = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
        const MPoly la = a.lc();
        const int s = a.degree() - db;
        a = scale_coeffs(a, lb) - shift(scale_coeffs(b, la), s);
        --steps;
    }
    if (steps > 0) a = scale_coeffs(a, power(lb, steps));
    return a;
}

MPoly normalize_sign(const MPoly& a) { return sgn(a.numeric_lc()) < 0 ? -a : a; }

MPoly primitive_part(const MPoly& a) {
    if (a.is_zero()) return a;
    return normalize_sign(*divide_coeffs(a, content(a)));
}

// Subresultant remainder sequence on primitive inputs with deg a >= deg b.
MPoly primitive_gcd(MPoly a, MPoly b) {
    MPoly g = constant_like(a.lc(), 1), h = g;
    for (;;) {
        const int delta = a.degree() - b.degree();
        MPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) return primitive_part(b);
        if (r.degree() == 0) return constant_like(a, 1);
        a = std::move(b);
        b = *divide_coeffs(r, g * power(h, delta));
        g = a.lc();
        if (delta > 0) h = *divide_exact(power(g, delta), power(h, delta - 1));
    }
}

mpz_class max_norm(const MPoly& a) {
    if (a.vars() == 0) return abs(a.integer());
    mpz_class m = 0;
    for (const MPoly& x : a.coeffs()) {
        mpz_class v = max_norm(x);
        if (v > m) m = v;
    }
    return m;
}

MPoly scale_int(const MPoly& a, const mpz_class& c) {
    if (a.vars() == 0) return MPoly(0, a.integer() * c);
    std::vector<MPoly> k;
    k.reserve(a.coeffs().size());
    for (const MPoly& x : a.coeffs()) k.push_back(scale_int(x, c));
    return MPoly::from_coeffs(a.vars(), std::move(k));
}

// a(t_n = xi), one variable fewer.
MPoly eval_main(const MPoly& a, const mpz_class& xi) {
    MPoly r(a.vars() - 1, 0);
    const auto& k = a.coeffs();
    for (std::size_t i = k.size(); i-- > 0;) r = scale_int(r, xi) + k[i];
    return r;
}

// Splits every integer coefficient c of g into the symmetric residue
// c mods xi (returned) and (c - residue) / xi (left in g).
MPoly split_digit(MPoly& g, const mpz_class& xi, const mpz_class& half) {
    if (g.vars() == 0) {
        mpz_class c = g.integer(), r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
        if (r > half) r -= xi;
        g = MPoly(0, mpz_class((c - r) / xi));
        return MPoly(0, r);
    }
    std::vector<MPoly> k = g.coeffs(), d;
    d.reserve(k.size());
    for (MPoly& x : k) d.push_back(split_digit(x, xi, half));
    g = MPoly::from_coeffs(g.vars(), std::move(k));
    return MPoly::from_coeffs(g.vars(), std::move(d));
}

mpz_class integer_content(const MPoly& a) {
    mpz_class g = 0;
    std::vector<const MPoly*> stack{&a};
    while (!stack.empty()) {
        const MPoly* p = stack.back();
        stack.pop_back();
        if (p->vars() == 0) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p->integer().get_mpz_t());
        } else {
            for (const MPoly& x : p->coeffs()) stack.push_back(&x);
        }
        if (g == 1) break;
    }
    return g;
}

// Heuristic gcd by evaluation at a large integer and xi-adic
// reconstruction. A result is returned only after trial division.
std::optional<MPoly> heuristic_gcd(const MPoly& a, const MPoly& b) {
    if (a.vars() == 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.integer().get_mpz_t(), b.integer().get_mpz_t());
        return MPoly(0, g);
    }
    if (a.is_zero() || b.is_zero()) return normalize_sign(a.is_zero() ? b : a);
    const mpz_class ca = integer_content(a), cb = integer_content(b);
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (ca != 1 || cb != 1) {
        auto g = heuristic_gcd(*divide_exact(a, MPoly(a.vars(), ca)), *divide_exact(b, MPoly(b.vars(), cb)));
        if (!g) return std::nullopt;
        return scale_int(*g, c);
    }
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    const int deg = std::max(a.degree(), b.degree());
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(deg + 1) > 60000) return std::nullopt;
        const MPoly ea = eval_main(a, xi), eb = eval_main(b, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto gamma = heuristic_gcd(ea, eb)) {
                const mpz_class half = xi / 2;
                std::vector<MPoly> digits;
                MPoly rest = *gamma;
                while (!rest.is_zero()) digits.push_back(split_digit(rest, xi, half));
                MPoly g = MPoly::from_coeffs(a.vars(), std::move(digits));
                if (!g.is_zero()) {
                    g = *divide_exact(g, MPoly(g.vars(), integer_content(g)));
                    if (divide_exact(a, g) && divide_exact(b, g)) return normalize_sign(g);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace modp {
constexpr std::uint64_t P = (std::uint64_t{1} << 61) - 1;
__extension__ typedef unsigned __int128 u128;

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const u128 r = static_cast<u128>(a) * b;
    std::uint64_t v = static_cast<std::uint64_t>(r & P) + static_cast<std::uint64_t>(r >> 61);
    return v >= P ? v - P : v;
}
std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t v = a + b;
    return v >= P ? v - P : v;
}
std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
std::uint64_t inv(std::uint64_t a) {
    std::uint64_t r = 1, e = P - 2;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
std::uint64_t from_mpz(const mpz_class& z) {
    if (z.fits_slong_p()) {
        const long v = z.get_si();
        return v >= 0 ? static_cast<std::uint64_t>(v) % P : P - static_cast<std::uint64_t>(-(v + 1)) % P - 1;
    }
    static const mpz_class p(std::to_string(P));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
    return r.get_ui();
}

// Fixed evaluation points for t_1, t_2, ...; a bad point only disables the
// fast path.
std::uint64_t point(int level) { return add(mul(0x9e3779b97f4a7c15ULL % P, static_cast<std::uint64_t>(level)), 12345); }

// Values are kept as numerator/denominator pairs so that no inversion is
// needed until the end.
struct Val {
    std::uint64_t n, d;
};

std::optional<Val> eval_poly(const ElemPoly& p, int level);

std::optional<Val> eval(const Elem& e) {
    if (e.level() == 0) {
        const std::uint64_t d = from_mpz(e.rational().get_den());
        if (d == 0) return std::nullopt;
        return Val{from_mpz(e.rational().get_num()), d};
    }
    auto n = eval_poly(e.frac().num(), e.level());
    if (!n) return std::nullopt;
    auto d = eval_poly(e.frac().den(), e.level());
    if (!d || d->n == 0) return std::nullopt;
    return Val{mul(n->n, d->d), mul(n->d, d->n)};
}

std::optional<Val> eval_poly(const ElemPoly& p, int level) {
    const std::uint64_t t = point(level);
    Val acc{0, 1};
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        auto v = eval(c[k]);
        if (!v) return std::nullopt;
        acc = Val{add(mul(mul(acc.n, t), v->d), mul(v->n, acc.d)), mul(acc.d, v->d)};
    }
    return acc;
}

// Images of the coefficients; empty when a coefficient is undefined there or
// the leading coefficient vanishes.
std::vector<std::uint64_t> image(const ElemPoly& p) {
    std::vector<Val> v;
    v.reserve(p.coeffs().size());
    for (const Elem& c : p.coeffs()) {
        auto x = eval(c);
        if (!x) return {};
        v.push_back(*x);
    }
    if (v.back().n == 0) return {};
    // One inversion for all denominators.
    std::vector<std::uint64_t> prefix(v.size() + 1, 1), r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = mul(prefix[i], v[i].d);
    std::uint64_t inv_all = inv(prefix.back());
    for (std::size_t i = v.size(); i-- > 0;) {
        r[i] = mul(v[i].n, mul(inv_all, prefix[i]));
        inv_all = mul(inv_all, v[i].d);
    }
    return r;
}

std::size_t gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    while (!b.empty()) {
        const std::uint64_t il = inv(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t f = mul(a.back(), il);
            const std::size_t s = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = sub(a[s + j], mul(f, b[j]));
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.size() - 1;
}

// True when a and b are certainly coprime over the tower field: their images
// keep full degree and have a constant gcd modulo P.
bool certainly_coprime(const ElemPoly& a, const ElemPoly& b) {
    auto ia = image(a);
    if (ia.empty()) return false;
    auto ib = image(b);
    if (ib.empty()) return false;
    return gcd_degree(std::move(ia), std::move(ib)) == 0;
}
}  // namespace modp

}  // namespace

MPoly::MPoly(int vars, const mpz_class& c) : vars_(vars) {
    if (vars == 0) {
        c_ = c;
        return;
    }
    if (sgn(c) != 0) k_.push_back(MPoly(vars - 1, c));
}

MPoly MPoly::from_coeffs(int vars, std::vector<MPoly> coeffs) {
    if (vars <= 0) throw DomainError("from_coeffs needs at least one variable");
    MPoly p;
    p.vars_ = vars;
    p.k_ = std::move(coeffs);
    p.trim();
    return p;
}

void MPoly::trim() {
    while (!k_.empty() && k_.back().is_zero()) k_.pop_back();
}

int MPoly::degree() const {
    if (vars_ == 0) return sgn(c_) == 0 ? -1 : 0;
    return static_cast<int>(k_.size()) - 1;
}

const MPoly& MPoly::lc() const {
    if (vars_ == 0 || k_.empty()) throw DomainError("leading coefficient of a constant or zero polynomial");
    return k_.back();
}

const mpz_class& MPoly::numeric_lc() const {
    const MPoly* p = this;
    while (p->vars_ > 0) {
        if (p->k_.empty()) return p->c_;  // zero: c_ is 0
        p = &p->k_.back();
    }
    return p->c_;
}

bool MPoly::is_unit() const {
    const MPoly* p = this;
    while (p->vars_ > 0) {
        if (p->k_.size() != 1) return false;
        p = &p->k_[0];
    }
    return p->c_ == 1 || p->c_ == -1;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.vars_ == 0) return MPoly(0, a.c_ + b.c_);
    MPoly r = a.k_.size() >= b.k_.size() ? a : b;
    const MPoly& o = a.k_.size() >= b.k_.size() ? b : a;
    for (std::size_t i = 0; i < o.k_.size(); ++i) r.k_[i] = r.k_[i] + o.k_[i];
    r.trim();
    return r;
}

MPoly operator-(const MPoly& a) {
    if (a.vars_ == 0) return MPoly(0, -a.c_);
    MPoly r = a;
    for (auto& x : r.k_) x = -x;
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ == 0) return MPoly(0, a.c_ * b.c_);
    if (a.is_zero() || b.is_zero()) return MPoly(a.vars_, 0);
    std::vector<MPoly> k(a.k_.size() + b.k_.size() - 1, MPoly(a.vars_ - 1, 0));
    for (std::size_t i = 0; i < a.k_.size(); ++i) {
        if (a.k_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.k_.size(); ++j) k[i + j] = k[i + j] + a.k_[i] * b.k_[j];
    }
    return MPoly::from_coeffs(a.vars_, std::move(k));
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) return false;
    if (a.vars_ == 0) return a.c_ == b.c_;
    return a.k_ == b.k_;
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.vars() == 0) {
        if (!mpz_divisible_p(a.integer().get_mpz_t(), b.integer().get_mpz_t())) return std::nullopt;
        return MPoly(0, mpz_class(a.integer() / b.integer()));
    }
    if (a.is_zero()) return a;
    if (b.degree() == 0) return divide_coeffs(a, b.coeffs()[0]);
    const int db = b.degree();
    if (a.degree() < db) return std::nullopt;
    std::vector<MPoly> q(static_cast<std::size_t>(a.degree() - db + 1), MPoly(a.vars() - 1, 0));
    MPoly r = a;
    while (!r.is_zero() && r.degree() >= db) {
        auto c = divide_exact(r.lc(), b.lc());
        if (!c) return std::nullopt;
        const int s = r.degree() - db;
        r = r - shift(scale_coeffs(b, *c), s);
        q[static_cast<std::size_t>(s)] = std::move(*c);
    }
    if (!r.is_zero()) return std::nullopt;
    return MPoly::from_coeffs(a.vars(), std::move(q));
}

MPoly content(const MPoly& a) {
    if (a.vars() == 0) throw DomainError("content of an integer");
    MPoly c(a.vars() - 1, 0);
    for (const MPoly& x : a.coeffs()) {
        c = gcd(c, x);
        if (c.is_unit()) break;
    }
    return c;
}

MPoly gcd(const MPoly& a, const MPoly& b, GcdMethod method) {
    if (a.vars() == 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.integer().get_mpz_t(), b.integer().get_mpz_t());
        return MPoly(0, g);
    }
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    const MPoly ca = content(a), cb = content(b);
    const MPoly c = gcd(ca, cb, method);
    MPoly pa = *divide_coeffs(a, ca), pb = *divide_coeffs(b, cb);
    if (pa.degree() < pb.degree()) std::swap(pa, pb);
    MPoly g = constant_like(pa, 1);
    if (pb.degree() > 0) {
        std::optional<MPoly> h;
        if (method == GcdMethod::heuristic) h = heuristic_gcd(pa, pb);
        if (h)
            g = std::move(*h);
        else
            g = primitive_gcd(std::move(pa), std::move(pb));
    }
    return normalize_sign(scale_coeffs(g, c));
}

void to_mpoly(const ElemPoly& p, int vars, MPoly& poly, MPoly& mult) {
    std::vector<MPoly> nums, dens;
    MPoly m(vars - 1, 1);
    for (const Elem& c : p.coeffs()) {
        MPoly n, d;
        to_mpoly(c, vars - 1, n, d);
        if (!c.is_zero()) m = *divide_exact(m * d, gcd(m, d));
        nums.push_back(std::move(n));
        dens.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < nums.size(); ++i) nums[i] = nums[i] * *divide_exact(m, dens[i]);
    poly = MPoly::from_coeffs(vars, std::move(nums));
    mult = std::move(m);
}

void to_mpoly(const Elem& e, int vars, MPoly& num, MPoly& den) {
    if (e.level() > vars) throw DomainError("element needs more variables");
    if (e.level() == 0) {
        num = MPoly(vars, e.rational().get_num());
        den = MPoly(vars, e.rational().get_den());
        return;
    }
    const int lvl = e.level();
    MPoly pn, mn, pd, md;
    to_mpoly(e.frac().num(), lvl, pn, mn);
    to_mpoly(e.frac().den(), lvl, pd, md);
    num = lift(scale_coeffs(pn, md), vars);
    den = lift(scale_coeffs(pd, mn), vars);
}

Elem from_mpoly(const MPoly& p) {
    if (p.vars() == 0) return Elem(mpq_class(p.integer()));
    std::vector<Elem> c;
    c.reserve(p.coeffs().size());
    for (const MPoly& x : p.coeffs()) c.push_back(from_mpoly(x));
    return Elem::from_parts(p.vars(), ElemPoly(std::move(c)), ElemPoly(Elem(1)));
}

ElemPoly fraction_gcd(const ElemPoly& a, const ElemPoly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.degree() == 0 || b.degree() == 0) return ElemPoly(Elem(1));
    if (modp::certainly_coprime(a, b)) return ElemPoly(Elem(1));
    int m = 0;
    for (const Elem& c : a.coeffs()) m = std::max(m, c.level());
    for (const Elem& c : b.coeffs()) m = std::max(m, c.level());
    MPoly pa, ma, pb, mb;
    to_mpoly(a, m + 1, pa, ma);
    to_mpoly(b, m + 1, pb, mb);
    const MPoly g = gcd(pa, pb);
    std::vector<Elem> c;
    c.reserve(g.coeffs().size());
    for (const MPoly& x : g.coeffs()) c.push_back(from_mpoly(x));
    return monic(ElemPoly(std::move(c)));
}

}  // namespace difftower
