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

// The order of a rational function at t = 0 for the top tower indeterminate,
// evaluation at t = 0, and descent of Rosenlicht-type equations through a
// special transcendental level.

#ifndef DIFFTOWER_VALUATION_HPP
#define DIFFTOWER_VALUATION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "difftower/riccati.hpp"
#include "difftower/tower.hpp"

namespace difftower {

/// An integer or +infinity (the order of zero).
class Order {
   public:
    constexpr explicit Order(long v) : value_(v) {}
    static constexpr Order infinity() {
        Order o(0);
        o.infinite_ = true;
        return o;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    long value() const;

    friend constexpr bool operator==(const Order& a, const Order& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Order& a, const Order& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend Order operator+(const Order& a, const Order& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Order(a.value_ + b.value_);
    }

   private:
    long value_ = 0;
    bool infinite_ = false;
};

std::string to_string(const Order& o);

/// Order at t_level = 0; elements below the level have order 0.
Order ord0(const Elem& e, int level);
/// Order with respect to the tower's top indeterminate.
Order ord0(const Elem& e, const Tower& tower);

/// R(0) for ord0(R) >= 0, one level down. Throws DomainError at a pole.
Elem eval0(const Elem& e, int level);
Elem eval0(const Elem& e, const Tower& tower);

struct SamplingOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 200;
    int degree = 6;
    int coeff_degree = 1;  // degree bound of the lower-level coefficients
};

struct OrderLemmaReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    // First element whose derivative drops in order, if any.
    std::optional<Elem> counterexample;
    std::optional<Elem> counterexample_derivative;

    bool holds() const noexcept { return violations == 0; }
};

/// Samples elements of the top level and counts those with
/// ord0(e') < ord0(e). No precondition on the top rule.
OrderLemmaReport sample_order_monotonicity(const Tower& tower, const SamplingOptions& options = {});

/// As above, but the top rule must be special (throws DomainError otherwise).
OrderLemmaReport assert_order_monotone(const Tower& tower, const SamplingOptions& options = {});

/// Given a solution R in K<y> (y the special top level) of the Rosenlicht-type
/// equation T = 0 over K, returns R(0), a solution in K. Throws DomainError
/// when a precondition fails.
Elem rosenlicht_descend(const DiffPoly& t, const Elem& r, const Tower& tower);

}  // namespace difftower

#endif  // DIFFTOWER_VALUATION_HPP
