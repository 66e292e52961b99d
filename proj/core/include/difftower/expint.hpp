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

// Decisions over the base field Q(x): logarithmic derivatives, rational
// antiderivatives, and the lattice of multiplicative relations among a family
// of exponentials of integrals.

#ifndef DIFFTOWER_EXPINT_HPP
#define DIFFTOWER_EXPINT_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "difftower/intmatrix.hpp"
#include "difftower/qpoly.hpp"

namespace difftower {

struct PoleTerm {
    QPoly pole;  // monic irreducible
    int multiplicity;
    QPoly numerator;  // nonzero, degree < deg pole
};

struct PartialFraction {
    QPoly polynomial;
    std::vector<PoleTerm> terms;  // by pole (see compare), then multiplicity

    QFrac recombine() const;
};

PartialFraction partial_fractions(const QFrac& a);

/// a = sum n_P P'/P, i.e. a = f'/f with f = prod P^n_P.
struct LogDerCert {
    std::vector<std::pair<QPoly, mpz_class>> factors;

    QFrac value() const;
    /// f = prod P^n_P
    QFrac preimage() const;
};

std::optional<LogDerCert> is_log_derivative(const QFrac& a);

/// g with g' = a, when one exists in Q(x).
std::optional<QFrac> rational_antiderivative(const QFrac& a);

/// Lattice of k in Z^n with sum k_i a_i a logarithmic derivative in Q(x).
struct RelationLattice {
    std::size_t n = 0;
    IntMatrix basis;  // Hermite normal form, rows

    bool contains(const IntVector& k) const { return in_lattice(k, basis); }
};

QFrac combination(const std::vector<QFrac>& as, const IntVector& k);

RelationLattice relation_lattice(const std::vector<QFrac>& as);

struct TorsionReport {
    /// Invariant factors of Z^n / L, one per coordinate; 0 stands for a free
    /// summand Z.
    std::vector<mpz_class> elementary_divisors;
    bool torsion_free = true;
    /// When torsion exists: k not in L with order * k in L, order minimal.
    std::optional<IntVector> witness;
    mpz_class order = 0;
};

TorsionReport torsion_report(const RelationLattice& lattice);

/// Exponent vectors whose classes freely generate Z^n / L; each is reduced
/// modulo L. Throws DomainError when the quotient has torsion.
std::vector<IntVector> chain_generators(const std::vector<QFrac>& as, const RelationLattice& lattice);

}  // namespace difftower

#endif  // DIFFTOWER_EXPINT_HPP
