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

// Seeded pseudo-random tower elements for property checks.

#ifndef DIFFTOWER_SAMPLING_HPP
#define DIFFTOWER_SAMPLING_HPP

#include <gmpxx.h>

#include <random>

#include "difftower/elem.hpp"

namespace difftower {

struct SampleShape {
    int degree = 3;        // degree bound in the top indeterminate
    int coeff_degree = 1;  // degree bound at lower levels
    long coeff_bound = 5;  // |numerator| and denominator bound for rationals
    bool polynomial = false;  // denominators = 1 at the top level
};

mpq_class random_rational(std::mt19937_64& rng, long bound);

/// Polynomial in t_level of exact degree `degree` with coefficients of level
/// < level.
ElemPoly random_poly(std::mt19937_64& rng, int level, int degree, const SampleShape& shape);

/// Random element of K(level) (may land at a lower level after reduction).
Elem random_elem(std::mt19937_64& rng, int level, const SampleShape& shape);

/// Random nonzero element.
Elem random_nonzero_elem(std::mt19937_64& rng, int level, const SampleShape& shape);

}  // namespace difftower

#endif  // DIFFTOWER_SAMPLING_HPP
