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

// Exponential solutions, factorization chains and the solvability verdict for
// linear operators over Q(x).

#ifndef DIFFTOWER_SOLVER_HPP
#define DIFFTOWER_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "difftower/expint.hpp"
#include "difftower/operator.hpp"
#include "difftower/tower.hpp"

namespace difftower {

struct SearchBounds {
    int degree = 8;               // degree of the polynomial part of p at infinity
    std::size_t nodes = 10000;    // exponential-solution searches in factor_chain
    int poly_degree = 64;         // degree of polynomial solutions after gauging
};

/// Basis of the polynomial solutions of degree <= degree_bound, each monic,
/// with distinct degrees in increasing order.
std::vector<QPoly> polynomial_solutions(const LinDiffOp& op, int degree_bound);

/// L(D + r): solutions z of the result give solutions e^(int r) z of L.
LinDiffOp gauge_transform(const LinDiffOp& op, const Elem& r);

struct ExpSolutions {
    std::vector<Elem> solutions;  // canonical order, no duplicates
    /// Some polynomial solution space had dimension > 1; one representative
    /// per basis vector was kept.
    bool family = false;
    /// A degree bound cut the search.
    bool truncated = false;
};

/// All p in Q(x) with L divisible on the right by D - p, up to the family
/// convention. Throws UnsupportedSingularity outside the supported class.
ExpSolutions exponential_solutions(const LinDiffOp& op, const SearchBounds& bounds = {});

enum class StageStatus { expanded, dead_end, unsupported, budget };

struct StageRecord {
    std::vector<Elem> prefix;  // p_1, ..., p_k chosen before this stage
    std::vector<Elem> candidates;
    StageStatus status = StageStatus::expanded;
    bool family = false;
    bool truncated = false;
    std::string note;
};

struct BoundsHit {
    bool nodes = false;
    bool degree = false;
    bool any() const noexcept { return nodes || degree; }
};

struct ChainSearch {
    std::vector<std::vector<Elem>> chains;  // [p_1, ..., p_n], DFS order
    std::vector<StageRecord> trace;
    BoundsHit bounds_hit;
    bool unsupported = false;
    bool family = false;
    std::size_t nodes = 0;

    /// Every branch was explored to the end without truncation.
    bool complete() const noexcept { return !bounds_hit.any() && !unsupported && !family; }
};

/// Depth-first enumeration of factorizations L = a_n (D - p_n) ... (D - p_1).
ChainSearch factor_chain(const LinDiffOp& op, const SearchBounds& bounds = {});

enum class VerdictStatus { solvable, not_solvable_by_admissible, torsion_obstructed, unknown };

std::string to_string(VerdictStatus s);

struct ChainAnalysis {
    std::vector<Elem> chain;
    RelationLattice lattice;
    TorsionReport torsion;
};

struct Verdict {
    VerdictStatus status = VerdictStatus::unknown;
    std::optional<std::vector<Elem>> chain;
    std::optional<RelationLattice> lattice;
    std::optional<TorsionReport> torsion;
    std::vector<ChainAnalysis> explored;
    std::vector<StageRecord> trace;
    BoundsHit bounds_hit;
    std::vector<std::string> notes;
};

Verdict solvability_verdict(const LinDiffOp& op, const SearchBounds& bounds = {});

/// The base tower Q(x) used by the solver.
const Tower& base_tower();

}  // namespace difftower

#endif  // DIFFTOWER_SOLVER_HPP
