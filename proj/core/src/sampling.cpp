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

#include "difftower/sampling.hpp"

#include <vector>

namespace difftower {

mpq_class random_rational(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound > 1 ? bound / 2 + 1 : 1);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

ElemPoly random_poly(std::mt19937_64& rng, int level, int degree, const SampleShape& shape) {
    SampleShape lower = shape;
    lower.degree = shape.coeff_degree;
    lower.polynomial = false;
    std::vector<Elem> c;
    c.reserve(static_cast<std::size_t>(degree) + 1);
    std::bernoulli_distribution sparse(0.3);
    for (int k = 0; k <= degree; ++k) {
        if (k < degree && sparse(rng)) {
            c.emplace_back();
            continue;
        }
        c.push_back(k == degree ? random_nonzero_elem(rng, level - 1, lower) : random_elem(rng, level - 1, lower));
    }
    return ElemPoly(std::move(c));
}

Elem random_elem(std::mt19937_64& rng, int level, const SampleShape& shape) {
    if (level <= 0) return Elem(random_rational(rng, shape.coeff_bound));
    std::uniform_int_distribution<int> deg(0, shape.degree);
    ElemPoly num = random_poly(rng, level, deg(rng), shape);
    ElemPoly den = shape.polynomial ? ElemPoly(Elem(1)) : random_poly(rng, level, deg(rng), shape);
    return Elem::from_parts(level, std::move(num), std::move(den));
}

Elem random_nonzero_elem(std::mt19937_64& rng, int level, const SampleShape& shape) {
    for (;;) {
        Elem e = random_elem(rng, level, shape);
        if (!e.is_zero()) return e;
    }
}

}  // namespace difftower
