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

// Polynomials and rational functions over Q, the base field Q(x), and exact
// univariate factorization.

#ifndef DIFFTOWER_QPOLY_HPP
#define DIFFTOWER_QPOLY_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "difftower/elem.hpp"
#include "difftower/fraction.hpp"
#include "difftower/upoly.hpp"

namespace difftower {

using QPoly = UPoly<mpq_class>;
using QFrac = Fraction<mpq_class>;

/// The element as a rational function of t_1; throws DomainError above level 1.
QFrac to_qfrac(const Elem& e);
Elem to_elem(const QFrac& f);
Elem to_elem(const QPoly& p);

QFrac derive(const QFrac& f);

/// Degree first, then coefficients from the top down.
int compare(const QPoly& a, const QPoly& b);

struct QFactor {
    QPoly poly;  // monic
    int multiplicity;
};

/// Yun's algorithm: f = lc * prod P_i^i with monic pairwise coprime squarefree
/// P_i; only nonconstant parts are returned, by increasing multiplicity.
std::vector<QFactor> squarefree_decomposition(const QPoly& f);

/// Monic irreducible factors over Q sorted by compare(); f must be nonzero.
std::vector<QFactor> factor(const QPoly& f);

/// Distinct rational roots in increasing order.
std::vector<mpq_class> rational_roots(const QPoly& f);

}  // namespace difftower

#endif  // DIFFTOWER_QPOLY_HPP
