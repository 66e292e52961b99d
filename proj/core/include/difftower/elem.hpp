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

// Elements of a tower Q = K0 ⊂ K1 ⊂ ... ⊂ Kh where K(i) = K(i-1)(t_i).
//
// An element of level L > 0 is a reduced rational function in t_L whose
// coefficients are elements of level < L. Every element is stored at the
// smallest level that contains it, so structural equality is field equality.
// Arithmetic needs no tower; only differentiation does (see tower.hpp).

#ifndef DIFFTOWER_ELEM_HPP
#define DIFFTOWER_ELEM_HPP

#include <gmpxx.h>

#include <memory>

#include "difftower/fraction.hpp"
#include "difftower/upoly.hpp"

namespace difftower {

class Elem;
using ElemPoly = UPoly<Elem>;
using ElemFrac = Fraction<Elem>;

/// Fraction reduction over a tower field: clears denominators and takes the
/// gcd over Z[t_1, ..., t_k] (mpoly.cpp).
ElemPoly fraction_gcd(const ElemPoly& a, const ElemPoly& b);

class Elem {
   public:
    Elem() = default;
    Elem(long v) : q_(v) {}  // NOLINT: integers are elements
    Elem(const mpq_class& q) : q_(q) { q_.canonicalize(); }  // NOLINT

    /// The indeterminate t_level.
    static Elem generator(int level);
    /// Element of K(level) given by a fraction in t_level; demoted when constant.
    static Elem from_fraction(int level, ElemFrac f);
    static Elem from_parts(int level, ElemPoly num, ElemPoly den);

    int level() const noexcept { return level_; }
    bool is_zero() const noexcept { return level_ == 0 && sgn(q_) == 0; }
    bool is_one() const noexcept { return level_ == 0 && q_ == 1; }

    /// Value of a level-0 element.
    const mpq_class& rational() const;
    /// Reduced fraction of a level > 0 element.
    const ElemFrac& frac() const;
    /// This element viewed as a fraction in t_level; level >= this->level().
    ElemFrac as_fraction(int level) const;

    Elem inverse() const;

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    friend Elem operator*(const Elem& a, const Elem& b);
    friend Elem operator/(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a);
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }

    friend bool operator==(const Elem& a, const Elem& b);
    friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
    friend bool is_zero(const Elem& e) { return e.is_zero(); }

    /// Total order on canonical forms: level first, then structure.
    friend int compare(const Elem& a, const Elem& b);

   private:
    int level_ = 0;
    mpq_class q_;
    std::shared_ptr<const ElemFrac> frac_;
};

inline bool operator<(const Elem& a, const Elem& b) { return compare(a, b) < 0; }

/// Integer power; negative exponents invert.
Elem pow(const Elem& e, long k);

}  // namespace difftower

#endif  // DIFFTOWER_ELEM_HPP
