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

#include "difftower/elem.hpp"

#include <cstdlib>
#include <utility>

#include "difftower/error.hpp"

namespace difftower {

namespace {

int compare_poly(const ElemPoly& a, const ElemPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    for (std::size_t k = ac.size(); k-- > 0;) {
        int c = compare(ac[k], bc[k]);
        if (c != 0) return c;
    }
    return 0;
}

// Multiply every numerator coefficient by a nonzero lower-level scalar; the
// result stays reduced.
ElemFrac scale_numerator(const ElemFrac& f, const Elem& s) {
    return ElemFrac::from_reduced(scale(f.num(), s), f.den());
}

}  // namespace

Elem Elem::generator(int level) {
    if (level <= 0) throw DomainError("tower indeterminates start at level 1");
    Elem e;
    e.level_ = level;
    e.frac_ = std::make_shared<const ElemFrac>(ElemPoly::variable());
    return e;
}

Elem Elem::from_fraction(int level, ElemFrac f) {
    if (f.is_constant()) return f.num().is_zero() ? Elem() : f.num().coeffs()[0];
    Elem e;
    e.level_ = level;
    e.frac_ = std::make_shared<const ElemFrac>(std::move(f));
    return e;
}

Elem Elem::from_parts(int level, ElemPoly num, ElemPoly den) {
    return from_fraction(level, ElemFrac::make(std::move(num), std::move(den)));
}

const mpq_class& Elem::rational() const {
    if (level_ != 0) throw DomainError("element is not a rational constant");
    return q_;
}

const ElemFrac& Elem::frac() const {
    if (level_ == 0) throw DomainError("rational constant has no fraction form");
    return *frac_;
}

ElemFrac Elem::as_fraction(int level) const {
    if (level < level_) throw DomainError("element lives above the requested level");
    if (level == level_) return *frac_;
    return ElemFrac(*this);
}

Elem Elem::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (level_ == 0) return Elem(mpq_class(1 / q_));
    return from_fraction(level_, frac_->inverse());
}

Elem operator+(const Elem& a, const Elem& b) {
    if (a.level_ == 0 && b.level_ == 0) return Elem(mpq_class(a.q_ + b.q_));
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.level_ != b.level_) {
        const Elem& hi = a.level_ > b.level_ ? a : b;
        const Elem& lo = a.level_ > b.level_ ? b : a;
        return Elem::from_fraction(hi.level_, *hi.frac_ + ElemFrac(lo));
    }
    return Elem::from_fraction(a.level_, *a.frac_ + *b.frac_);
}

Elem operator-(const Elem& a) {
    if (a.level_ == 0) return Elem(mpq_class(-a.q_));
    return Elem::from_fraction(a.level_, -*a.frac_);
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator*(const Elem& a, const Elem& b) {
    if (a.level_ == 0 && b.level_ == 0) return Elem(mpq_class(a.q_ * b.q_));
    if (a.is_zero() || b.is_zero()) return Elem();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.level_ != b.level_) {
        const Elem& hi = a.level_ > b.level_ ? a : b;
        const Elem& lo = a.level_ > b.level_ ? b : a;
        return Elem::from_fraction(hi.level_, scale_numerator(*hi.frac_, lo));
    }
    return Elem::from_fraction(a.level_, *a.frac_ * *b.frac_);
}

Elem operator/(const Elem& a, const Elem& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.level_ == 0 && b.level_ == 0) return Elem(mpq_class(a.q_ / b.q_));
    return a * b.inverse();
}

bool operator==(const Elem& a, const Elem& b) {
    if (a.level_ != b.level_) return false;
    if (a.level_ == 0) return a.q_ == b.q_;
    return a.frac_ == b.frac_ || *a.frac_ == *b.frac_;
}

int compare(const Elem& a, const Elem& b) {
    if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
    if (a.level_ == 0) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    int c = compare_poly(a.frac_->num(), b.frac_->num());
    if (c != 0) return c;
    return compare_poly(a.frac_->den(), b.frac_->den());
}

Elem pow(const Elem& e, long k) {
    if (k < 0) return pow(e.inverse(), -k);
    Elem r(1), base = e;
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

}  // namespace difftower
