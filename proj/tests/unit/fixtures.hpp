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

// Shared towers and samplers for the unit tests.

#ifndef DIFFTOWER_TEST_FIXTURES_HPP
#define DIFFTOWER_TEST_FIXTURES_HPP

#include <random>

#include "difftower/elem.hpp"
#include "difftower/sampling.hpp"
#include "difftower/tower.hpp"

namespace fx {

using namespace difftower;

inline Tower base() { return Tower::rational("x"); }
inline Elem x() { return Elem::generator(1); }
inline Elem y() { return Elem::generator(2); }
inline Elem q(long n, long d = 1) { return Elem(mpq_class(n, d)); }

/// B<y; y' = rule(y)>
template <class F>
Tower over_base(F rule) {
    return base().adjoin("y", rule(y()));
}

inline Tower exp_tower() {
    return over_base([](const Elem& t) { return t; });
}

inline SampleShape small_shape(int degree = 2) {
    SampleShape s;
    s.degree = degree;
    s.coeff_degree = 1;
    s.coeff_bound = 4;
    return s;
}

}  // namespace fx

#endif
