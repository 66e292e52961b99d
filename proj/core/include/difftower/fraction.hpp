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

#ifndef DIFFTOWER_FRACTION_HPP
#define DIFFTOWER_FRACTION_HPP

#include <utility>

#include "difftower/upoly.hpp"

namespace difftower {

/// Reduced rational function num/den: gcd(num, den) = 1, den monic, and the
/// zero fraction is 0/1.
template <class C>
class Fraction {
   public:
    Fraction() : den_(C(1)) {}
    explicit Fraction(const C& c) : num_(c), den_(C(1)) {}
    explicit Fraction(UPoly<C> p) : num_(std::move(p)), den_(C(1)) {}

    /// Canonical representative of num/den.
    static Fraction make(UPoly<C> num, UPoly<C> den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        Fraction f;
        if (num.is_zero()) return f;
        if (den.degree() > 0) {
            UPoly<C> g = fraction_gcd(num, den);
            if (g.degree() > 0) {
                num = exact_quotient(num, g);
                den = exact_quotient(den, g);
            }
        }
        const C inv = C(1) / den.lc();
        f.num_ = scale(num, inv);
        f.den_ = scale(den, inv);
        return f;
    }

    /// Trusts the caller: num/den must already be canonical.
    static Fraction from_reduced(UPoly<C> num, UPoly<C> den) {
        Fraction f;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        return f;
    }

    const UPoly<C>& num() const noexcept { return num_; }
    const UPoly<C>& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

    Fraction inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        const C inv = C(1) / num_.lc();
        return from_reduced(scale(den_, inv), scale(num_, inv));
    }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (b.is_polynomial()) return add_polynomial(a, b);
        if (a.is_polynomial()) return add_polynomial(b, a);
        if (a.den_ == b.den_) return make(a.num_ + b.num_, a.den_);
        // Henrici: only the common part g of the denominators can cancel.
        UPoly<C> g = fraction_gcd(a.den_, b.den_);
        if (g.degree() == 0) return from_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        const UPoly<C> ad = exact_quotient(a.den_, g), bd = exact_quotient(b.den_, g);
        UPoly<C> t = a.num_ * bd + b.num_ * ad;
        if (t.is_zero()) return Fraction();
        const UPoly<C> h = fraction_gcd(t, g);
        if (h.degree() > 0) {
            t = exact_quotient(t, h);
            g = exact_quotient(g, h);
        }
        return from_reduced(std::move(t), ad * bd * g);
    }
    friend Fraction operator-(const Fraction& a) {
        Fraction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        if (a.is_zero() || b.is_zero()) return Fraction();
        const UPoly<C> g1 = fraction_gcd(a.num_, b.den_), g2 = fraction_gcd(b.num_, a.den_);
        auto cut = [](const UPoly<C>& p, const UPoly<C>& g) { return g.degree() > 0 ? exact_quotient(p, g) : p; };
        return from_reduced(cut(a.num_, g1) * cut(b.num_, g2), cut(a.den_, g2) * cut(b.den_, g1));
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }
    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

   private:
    // den(b) == 1: gcd(a.num + b.num*a.den, a.den) = gcd(a.num, a.den) = 1.
    static Fraction add_polynomial(const Fraction& a, const Fraction& b) {
        Fraction r;
        r.num_ = a.num_ + b.num_ * a.den_;
        r.den_ = r.num_.is_zero() ? UPoly<C>(C(1)) : a.den_;
        return r;
    }

    UPoly<C> num_;
    UPoly<C> den_;
};

/// Canonical reduced form of num/den.
template <class C>
Fraction<C> rf_normalize(UPoly<C> num, UPoly<C> den) {
    return Fraction<C>::make(std::move(num), std::move(den));
}

template <class C>
Fraction<C> derivative(const Fraction<C>& f) {
    const auto& n = f.num();
    const auto& d = f.den();
    return Fraction<C>::make(derivative(n) * d - n * derivative(d), d * d);
}

}  // namespace difftower

#endif  // DIFFTOWER_FRACTION_HPP
