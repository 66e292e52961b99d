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

// Dense recursive polynomials in Z[t_1, ..., t_n], used to reduce tower
// fractions without the coefficient swell of Euclid over Q(t_1, ...).

#ifndef DIFFTOWER_MPOLY_HPP
#define DIFFTOWER_MPOLY_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "difftower/elem.hpp"

namespace difftower {

/// A polynomial in n variables: for n = 0 an integer, otherwise a dense
/// polynomial in t_n with coefficients in n - 1 variables.
class MPoly {
   public:
    MPoly() = default;
    /// The integer c in `vars` variables.
    MPoly(int vars, const mpz_class& c);
    static MPoly from_coeffs(int vars, std::vector<MPoly> coeffs);

    int vars() const noexcept { return vars_; }
    bool is_zero() const noexcept { return vars_ == 0 ? sgn(c_) == 0 : k_.empty(); }
    /// Degree in the main variable; -1 for zero. Constants have degree 0.
    int degree() const;
    const mpz_class& integer() const { return c_; }
    const std::vector<MPoly>& coeffs() const noexcept { return k_; }
    /// Coefficient of the highest power of t_n.
    const MPoly& lc() const;
    /// The integer leading coefficient under the recursive order.
    const mpz_class& numeric_lc() const;
    bool is_unit() const;

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend bool operator==(const MPoly& a, const MPoly& b);

   private:
    void trim();
    int vars_ = 0;
    mpz_class c_;
    std::vector<MPoly> k_;
};

/// a / b when b divides a exactly.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
enum class GcdMethod { heuristic, subresultant };

/// gcd with positive numeric leading coefficient; gcd(0, 0) = 0. The
/// heuristic method falls back to subresultants when it fails.
MPoly gcd(const MPoly& a, const MPoly& b, GcdMethod method = GcdMethod::heuristic);
/// gcd of the coefficients in the main variable.
MPoly content(const MPoly& a);

/// p = poly / mult with poly over Z in `vars` variables (the last one is p's
/// own variable) and mult in vars - 1 variables.
void to_mpoly(const ElemPoly& p, int vars, MPoly& poly, MPoly& mult);
/// e = num / den with num, den over Z in the first `vars` tower variables.
void to_mpoly(const Elem& e, int vars, MPoly& num, MPoly& den);
/// The element of level <= vars represented by p.
Elem from_mpoly(const MPoly& p);

}  // namespace difftower

#endif  // DIFFTOWER_MPOLY_HPP
