#pragma once

// Linear-forms matrices A (rows = forms x + sum_j a_ij t_j), their extended
// matrix E(A), minimal linearly dependent subsets of the forms, and the
// resulting divergence scenario.

#include "divlab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divlab {

using IntMatrix = std::vector<std::vector<long>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
[[nodiscard]] int rank(const IntMatrix& matrix);
[[nodiscard]] int rank(const RationalMatrix& matrix);

struct RankAnalysis {
    IntMatrix extended;  // rows (a_i1..a_im, 1) followed by (0..0, 1)
    int rank_a;
    int rank_extended;
};

/// Throws std::invalid_argument on an empty or ragged matrix.
[[nodiscard]] RankAnalysis analyze(const IntMatrix& a);

/// Rows (a_i1, ..., a_im, 1) representing the forms x + sum_j a_ij t_j.
[[nodiscard]] IntMatrix augmented_rows(const IntMatrix& a);

struct DependentSubset {
    int r;
    std::vector<int> indices;         // 0-based row indices, increasing
    std::vector<Rational> dependence; // coefficients with sum_i c_i v_i = 0; integral, gcd 1, first entry > 0
};

inline constexpr std::size_t kMaxFormsForCircuitSearch = 20;

/// Smallest linearly dependent set of forms; lexicographically first among
/// equal sizes. nullopt when all forms are independent. Throws std::length_error
/// above kMaxFormsForCircuitSearch rows.
[[nodiscard]] std::optional<DependentSubset> minimal_dependent_subset(const IntMatrix& a);

enum class Scenario { independent, nondegenerate, degenerate };
[[nodiscard]] std::string to_string(Scenario s);

/// Coordinates of the remaining t-parts in a basis of the witness's t-parts.
struct ReducedOperator {
    std::vector<int> basis;                 // row indices whose t-parts form the basis
    std::vector<int> expressed;             // row indices written in that basis
    std::vector<std::vector<Rational>> coefficients;  // one row per expressed index
};

struct Classification {
    Scenario scenario;
    std::optional<DependentSubset> witness;
    int t_rank;                       // rank of the witness's t-parts (0 when independent)
    std::optional<Rational> p_bound;  // r/(r-1) in the degenerate case
    std::optional<ReducedOperator> reduced;
};

[[nodiscard]] Classification classify(const IntMatrix& a);

}  // namespace divlab
