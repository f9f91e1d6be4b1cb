#pragma once

// The counterexample families: the radix-12 sets for the triple averages
// x+t, x+2t, x+3t, the radix-2^{m+1} cube family, and the blow-up series
// certifying that the associated maximal inequalities fail.

#include "divlab/digit_set.hpp"
#include "divlab/interval_union.hpp"
#include "divlab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divlab {

/// Lebesgue measure on the line, or the probability measure m1 = Lebesgue/2 on [-1, 1].
enum class Normalization { lebesgue, normalized };

[[nodiscard]] std::string to_string(Normalization n);
[[nodiscard]] Normalization parse_normalization(const std::string& text);

enum class TripleSet { A, B, C, D };

struct ScenarioThm1 {
    int k;
    DigitSetSpec spec_a;
    DigitSetSpec spec_b;
    DigitSetSpec spec_c;
    DigitSetSpec spec_d;
    IntervalUnion set_a;
    IntervalUnion set_b;
    IntervalUnion set_c;
    IntervalUnion set_d;
    /// 1/(8*12^k), the level reached on D.
    Rational lambda;

    [[nodiscard]] const DigitSetSpec& spec(TripleSet which) const;
    [[nodiscard]] const IntervalUnion& set(TripleSet which) const;
    [[nodiscard]] Rational measure(TripleSet which, Normalization n = Normalization::lebesgue) const;
    /// ||1_S||_p under the chosen measure.
    [[nodiscard]] double norm(TripleSet which, double p, Normalization n) const;

    friend bool operator==(const ScenarioThm1&, const ScenarioThm1&) = default;
};

/// Sets A, B, C, D at depth k: radix 12, A0 = {-4,-2,0}, B0 = {0,1,2,3},
/// C = 2B0 - A0, D = 2A0 - B0, tails 1/(2*12^k) and 1/(8*12^k) for D.
[[nodiscard]] ScenarioThm1 furstenberg_family(int k);

/// 0/1 vector of length m; vertices of the unit cube minus the origin.
using CubeVertex = std::vector<int>;

/// V_m in lexicographically increasing order.
[[nodiscard]] std::vector<CubeVertex> cube_vertices(int m);
[[nodiscard]] std::string vertex_label(const CubeVertex& eps);

struct CubeSet {
    CubeVertex eps;
    int ones;
    DigitSetSpec spec;       // base points of A~_eps, tail = set tail
    mpz_class cardinality;   // exact number of base points
    mpz_class cardinality_bound;   // 2^{(m-l+1)k} for l <= m-2, 2^k otherwise

    friend bool operator==(const CubeSet&, const CubeSet&) = default;
};

struct ScenarioCubes {
    int m;
    int k;
    std::vector<DigitSetSpec> b_sets;  // B_1..B_m
    DigitSetSpec b;                    // B
    std::vector<CubeSet> sets;         // one per vertex, order of cube_vertices(m)
    DigitSetSpec c_tilde;              // B_1 + ... + B_m - (m-1)B, tail 0
    DigitSetSpec c;                    // c_tilde with tail box_tail
    Rational set_tail;                 // 1/2^{k(m+1)}
    Rational box_tail;                 // 1/((m+1) 2^{k(m+1)})

    [[nodiscard]] const CubeSet& set_for(const CubeVertex& eps) const;

    friend bool operator==(const ScenarioCubes&, const ScenarioCubes&) = default;
};

/// Digit specs for the cube averages. Each A~_eps is derived from the
/// constraint algebra: with Z the zero positions of eps,
/// A~_eps = sum_{j in Z} B_j - (|Z| - 1) B, and A~_(1..1) = B.
/// Throws std::invalid_argument for m < 3 or k < 1; NoCarryError if a digit carries.
[[nodiscard]] ScenarioCubes cube_family(int m, int k);

struct ThresholdKind {
    enum class Family { furstenberg, cubes, degenerate };
    Family family;
    int parameter;  // m for cubes, r for degenerate

    static ThresholdKind furstenberg() { return {Family::furstenberg, 0}; }
    static ThresholdKind cubes(int m) { return {Family::cubes, m}; }
    static ThresholdKind degenerate(int r) { return {Family::degenerate, r}; }
};

struct Threshold {
    double value;
    std::optional<Rational> exact;
};

/// furstenberg: ln 24 / ln 12; cubes(m): (2^{m-1}+1)/(m+1); degenerate(r): r/(r-1).
[[nodiscard]] Threshold threshold(ThresholdKind kind);

/// 1 + log_6 2 / (1 + log_6 2), the form in which p0 is usually quoted.
[[nodiscard]] double furstenberg_p0_log6_form();

/// 1 + (sum_{l=1}^{m-2} l C(m,l)) / (m(m+1)), exact.
[[nodiscard]] Rational cube_threshold_sum_form(int m);

enum class Verdict { diverges, boundary, decays };
[[nodiscard]] std::string to_string(Verdict v);

enum class SeriesKind { thm1, cubes, h3 };
[[nodiscard]] std::string to_string(SeriesKind kind);

enum class CardinalityMode { exact, bound };

struct BlowupEntry {
    int k;
    double value;
    double log_value;
    double lower_bound;   // level / integral lower bound at depth k
    double norm_product;  // product of the L^p norms of the test functions
    std::optional<double> step_ratio;  // value_{k}/value_{k-1}
};

struct BlowupSeries {
    SeriesKind kind;
    double p;
    int m;  // cubes only
    bool weighted;
    Normalization normalization;
    CardinalityMode mode;
    std::vector<BlowupEntry> entries;
    /// Geometric base of the series (per-step ratio without polynomial weights).
    double asymptotic_ratio;
    double threshold;
    Verdict verdict;
};

struct BlowupRequest {
    SeriesKind kind = SeriesKind::thm1;
    double p = 1.0;
    int kmax = 5;
    int m = 3;
    bool weighted = false;
    std::optional<Normalization> normalization;  // default: normalized for thm1, lebesgue otherwise
    CardinalityMode mode = CardinalityMode::exact;
};

/// thm1: value_k = prod_S (c*|S|-scale)^{1/p} / (32*12^k) with the norms of A, B, C
/// (divided by k^6 when weighted); cubes: [(m+1)2^{k(m+1)}]^{-m} prod_eps (2^{k(m+1)}/|A~_eps|)^{1/p};
/// h3: see h3_ratio_series. Throws std::invalid_argument for p < 1 or kmax < 1.
[[nodiscard]] BlowupSeries blowup_series(const BlowupRequest& request);

/// Verdict of a geometric base, with a 1e-12 band around 1.
[[nodiscard]] Verdict verdict_for(double asymptotic_ratio);

/// The p at which the exact-cardinality cube series has base exactly 1.
[[nodiscard]] double cube_exact_threshold(int m);

}  // namespace divlab
