#pragma once

// Radix-expansion digit sets { sum_i d_i * radix^-i + z : d_i in alphabet, 0 <= z < tail }
// and the digitwise sumset algebra on them.

#include "divlab/interval_union.hpp"
#include "divlab/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace divlab {

class DigitSetSpec {
public:
    /// The alphabet is stored sorted with duplicates removed.
    /// Throws std::invalid_argument for radix < 2, depth < 1, an empty alphabet or a negative tail.
    DigitSetSpec(int radix, int depth, std::vector<Rational> alphabet, Rational tail);

    [[nodiscard]] int radix() const { return radix_; }
    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] const std::vector<Rational>& alphabet() const { return alphabet_; }
    [[nodiscard]] const Rational& tail() const { return tail_; }

    [[nodiscard]] DigitSetSpec with_tail(Rational tail) const;
    [[nodiscard]] DigitSetSpec with_depth(int depth) const;

    friend bool operator==(const DigitSetSpec&, const DigitSetSpec&) = default;

private:
    int radix_;
    int depth_;
    std::vector<Rational> alphabet_;
    Rational tail_;
};

/// Raised when a combined digit reaches the radix in magnitude.
class NoCarryError : public std::domain_error {
public:
    NoCarryError(const std::string& what, std::vector<Rational> digits, Rational value)
        : std::domain_error(what), digits_(std::move(digits)), value_(std::move(value)) {}
    [[nodiscard]] const std::vector<Rational>& digits() const { return digits_; }
    [[nodiscard]] const Rational& value() const { return value_; }

private:
    std::vector<Rational> digits_;
    Rational value_;
};

/// Upper limit on digit strings enumerated explicitly.
inline constexpr std::size_t kMaxEnumeratedPoints = std::size_t{1} << 22;

/// All distinct base points sum_i d_i radix^-i, sorted. Throws std::length_error
/// if more than kMaxEnumeratedPoints digit strings would be enumerated.
[[nodiscard]] std::vector<Rational> base_points(const DigitSetSpec& spec);

[[nodiscard]] IntervalUnion materialize(const DigitSetSpec& spec);

/// Smallest difference between consecutive base points (nullopt-like zero when only one point).
[[nodiscard]] Rational min_gap(const DigitSetSpec& spec);

struct CombineTerm {
    long coefficient;
    DigitSetSpec spec;
};

/// Digitwise linear combination sum_j c_j * spec_j. The result's alphabet is
/// { sum_j c_j d_j }; every such value must have magnitude < radix.
/// Terms with coefficient 0 are ignored. Throws std::invalid_argument on
/// radix/depth mismatch or no terms, NoCarryError on a carry.
[[nodiscard]] DigitSetSpec alphabet_combine(const std::vector<CombineTerm>& terms, Rational tail);

/// True when distinct digit strings are guaranteed to give distinct points:
/// alphabet width <= (smallest digit gap) * (radix - 1).
[[nodiscard]] bool positions_independent(const DigitSetSpec& spec);

/// Number of distinct base points: |alphabet|^depth when positions_independent,
/// otherwise by enumeration.
[[nodiscard]] mpz_class cardinality(const DigitSetSpec& spec);

}  // namespace divlab
