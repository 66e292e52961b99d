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

// Differential polynomials in u, u', u'', ... with tower coefficients, the
// D_n recursion (y^(n) = D_n(u) y when y' = u y) and generalized Riccati
// polynomials of linear operators.

#ifndef DIFFTOWER_RICCATI_HPP
#define DIFFTOWER_RICCATI_HPP

#include <map>
#include <string>
#include <vector>

#include "difftower/operator.hpp"
#include "difftower/tower.hpp"

namespace difftower {

/// exponents[j] is the power of u_j (the j-th derivative of u); no trailing
/// zeros. Every u_j has weight 1 toward the total degree.
using Monomial = std::vector<unsigned>;

/// Print order: compare from the highest derivative index down; the larger
/// exponent comes first. Puts u'' before u*u' before u^3 before u before 1.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

unsigned total_degree(const Monomial& m);

class DiffPoly {
   public:
    using Terms = std::map<Monomial, Elem, MonomialOrder>;

    DiffPoly() = default;
    static DiffPoly constant(const Elem& c);
    /// u_j
    static DiffPoly variable(unsigned j);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    /// Largest derivative index present; -1 when no u_j occurs.
    int order() const;
    DiffPoly homogeneous_part(unsigned degree) const;
    Elem coeff(const Monomial& m) const;
    /// Highest tower level among the coefficients.
    int level() const;

    void add_term(Monomial m, const Elem& c);

    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

   private:
    Terms terms_;
};

DiffPoly scale(const Elem& c, const DiffPoly& p);
DiffPoly pow(const DiffPoly& p, unsigned k);

/// d/dx of T: coefficients differentiated in the tower, u_j -> u_{j+1}.
DiffPoly total_derive(const DiffPoly& p, const Tower& tower);

/// D_0 = 1, D_{k+1} = total_derive(D_k) + u D_k.
DiffPoly d_poly(unsigned n);

/// D_n + b_{n-1} D_{n-1} + ... + b_0 D_0 with b_i = a_i / a_n.
DiffPoly gen_riccati(const LinDiffOp& op);

/// T(u, u', ..., u^(d)) with derivatives taken in the tower.
Elem eval_diffpoly(const DiffPoly& p, const Elem& u, const Tower& tower);

/// Top homogeneous part is exactly u^n with coefficient 1.
bool is_rosenlicht(const DiffPoly& p);

std::string format(const DiffPoly& p, const Tower& tower);

}  // namespace difftower

#endif  // DIFFTOWER_RICCATI_HPP
