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

// Linear differential operators a_n D^n + ... + a_0 over a tower field and
// the noncommutative algebra they form under composition.

#ifndef DIFFTOWER_OPERATOR_HPP
#define DIFFTOWER_OPERATOR_HPP

#include <span>
#include <string>
#include <vector>

#include "difftower/elem.hpp"
#include "difftower/tower.hpp"

namespace difftower {

class LinDiffOp {
   public:
    LinDiffOp() = default;
    /// coeffs[i] multiplies D^i.
    explicit LinDiffOp(std::vector<Elem> coeffs);

    static LinDiffOp scalar(const Elem& c);
    /// D
    static LinDiffOp derivation();
    /// D - p
    static LinDiffOp first_order(const Elem& p);

    /// -1 for the zero operator.
    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Elem coeff(int i) const;
    const Elem& leading() const;
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    /// Highest tower level among the coefficients.
    int level() const;

    friend LinDiffOp operator+(const LinDiffOp& a, const LinDiffOp& b);
    friend LinDiffOp operator-(const LinDiffOp& a, const LinDiffOp& b);
    friend LinDiffOp operator-(const LinDiffOp& a);
    friend bool operator==(const LinDiffOp& a, const LinDiffOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LinDiffOp& a, const LinDiffOp& b) { return !(a == b); }

   private:
    std::vector<Elem> c_;
};

/// c * L (left multiplication by a scalar).
LinDiffOp scale(const Elem& c, const LinDiffOp& op);

/// sum_i a_i y^(i)
Elem apply(const LinDiffOp& op, const Elem& y, const Tower& tower);

/// Composition lhs ∘ rhs.
LinDiffOp mul(const LinDiffOp& lhs, const LinDiffOp& rhs, const Tower& tower);

struct Division {
    LinDiffOp quotient;
    LinDiffOp remainder;
};

/// L = quotient ∘ divisor + remainder with order(remainder) < order(divisor).
Division right_divide(const LinDiffOp& op, const LinDiffOp& divisor, const Tower& tower);

/// (1/y1) L(y1), the order-0 remainder of L right-divided by D - p when
/// y1' = p y1. Throws DomainError when y1 = 0 or y1' != p y1.
Elem remainder_scalar(const LinDiffOp& op, const Elem& p, const Elem& y1, const Tower& tower);

/// The cofactor Lq of order n-1 with L = Lq ∘ (D - p). Throws DomainError when
/// the remainder is nonzero.
LinDiffOp reduce_order(const LinDiffOp& op, const Elem& p, const Tower& tower);

/// L == a_n (D - p_n) ∘ ... ∘ (D - p_1), with ps = [p_1, ..., p_n].
bool verify_factorization(const LinDiffOp& op, std::span<const Elem> ps, const Tower& tower);

/// u / y1 where y1 is the tower indeterminate with y1' = p y1: the integrand
/// whose integral z gives y = y1 z solving (D - p) y = u. For p = 0, y1 = 1.
Elem lift_integrand(const Elem& u, const Elem& p, const Tower& tower);

std::string format(const LinDiffOp& op, const Tower& tower);

}  // namespace difftower

#endif  // DIFFTOWER_OPERATOR_HPP
