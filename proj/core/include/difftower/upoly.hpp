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

// Dense univariate polynomials over an exact coefficient field.
//
// The coefficient type C must provide C(long), the field operations and an
// is_zero(const C&) overload reachable from namespace difftower (ADL or the
// GMP overloads below). Ring-only coefficient types (mpz_class) may use every
// operation except the division-based ones.

#ifndef DIFFTOWER_UPOLY_HPP
#define DIFFTOWER_UPOLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "difftower/error.hpp"

namespace difftower {

inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero(const mpz_class& z) { return sgn(z) == 0; }

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
    return is_zero(c);
}
}  // namespace detail

template <class C>
class UPoly {
   public:
    UPoly() = default;
    explicit UPoly(const C& c) {
        if (!detail::coeff_is_zero(c)) c_.push_back(c);
    }
    explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly monomial(const C& c, std::size_t k) {
        if (detail::coeff_is_zero(c)) return UPoly();
        std::vector<C> v(k + 1, C(0));
        v[k] = c;
        UPoly p;
        p.c_ = std::move(v);
        return p;
    }
    static UPoly variable() { return monomial(C(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const C& lc() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }
    const std::vector<C>& coeffs() const noexcept { return c_; }

    /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
    int trailing_index() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!detail::coeff_is_zero(c_[k])) return static_cast<int>(k);
        return -1;
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
        trim();
        return *this;
    }
    UPoly& operator*=(const UPoly& o) {
        *this = *this * o;
        return *this;
    }

    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(UPoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

   private:
    void trim() {
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

template <class C>
UPoly<C> scale(const UPoly<C>& p, const C& s) {
    if (is_zero(s)) return UPoly<C>();
    std::vector<C> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(c * s);
    return UPoly<C>(std::move(v));
}

/// Formal derivative with respect to the polynomial's own variable.
template <class C>
UPoly<C> derivative(const UPoly<C>& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return UPoly<C>();
    std::vector<C> v;
    v.reserve(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) v.push_back(C(static_cast<long>(k)) * c[k]);
    return UPoly<C>(std::move(v));
}

template <class C>
C eval(const UPoly<C>& p, const C& x) {
    C acc(0);
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

template <class C>
UPoly<C> pow(const UPoly<C>& p, unsigned k) {
    UPoly<C> r(C(1)), base = p;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

/// Quotient and remainder; b must be nonzero. Requires a field.
template <class C>
std::pair<UPoly<C>, UPoly<C>> poly_divmod(const UPoly<C>& a, const UPoly<C>& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly<C>(), a};
    const C inv = C(1) / b.lc();
    std::vector<C> r = a.coeffs();
    std::vector<C> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), C(0));
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    for (std::size_t k = r.size(); k-- > db;) {
        if (is_zero(r[k])) continue;
        C f = r[k] * inv;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = r[k - db + j] - f * bc[j];
        q[k - db] = f;
    }
    return {UPoly<C>(std::move(q)), UPoly<C>(std::move(r))};
}

template <class C>
UPoly<C> operator%(const UPoly<C>& a, const UPoly<C>& b) {
    return poly_divmod(a, b).second;
}

/// a / b, asserting the division is exact.
template <class C>
UPoly<C> exact_quotient(const UPoly<C>& a, const UPoly<C>& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw DomainError("polynomial division is not exact");
    return q;
}

template <class C>
UPoly<C> monic(const UPoly<C>& p) {
    if (p.is_zero()) return p;
    return scale(p, C(C(1) / p.lc()));
}

/// Monic gcd; gcd(0, 0) = 0.
template <class C>
UPoly<C> poly_gcd(UPoly<C> a, UPoly<C> b) {
    // Monic remainders keep coefficient growth near the subresultant size.
    a = monic(a);
    b = monic(b);
    while (!b.is_zero()) {
        UPoly<C> r = monic(poly_divmod(a, b).second);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// The gcd used to reduce fractions; coefficient types may overload it.
template <class C>
UPoly<C> fraction_gcd(const UPoly<C>& a, const UPoly<C>& b) {
    return poly_gcd(a, b);
}

template <class C>
struct XgcdResult {
    UPoly<C> g, s, t;  // s*a + t*b = g, g monic
};

template <class C>
XgcdResult<C> poly_xgcd(const UPoly<C>& a, const UPoly<C>& b) {
    UPoly<C> r0 = a, r1 = b;
    UPoly<C> s0(C(1)), s1, t0, t1(C(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly<C> s2 = s0 - q * s1;
        UPoly<C> t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const C inv = C(1) / r0.lc();
    return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
}

/// p(t + c).
template <class C>
UPoly<C> taylor_shift(const UPoly<C>& p, const C& c) {
    std::vector<C> v = p.coeffs();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k-- > i;) v[k] = v[k] + c * v[k + 1];
    return UPoly<C>(std::move(v));
}

}  // namespace difftower

#endif  // DIFFTOWER_UPOLY_HPP
