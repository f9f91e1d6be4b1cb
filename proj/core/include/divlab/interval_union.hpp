#pragma once

#include "divlab/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace divlab {

/// Half-open interval [lo, hi) with lo < hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational lo_, Rational hi_);

    [[nodiscard]] Rational length() const { return hi - lo; }
    [[nodiscard]] bool contains(const Rational& x) const { return lo <= x && x < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite disjoint union of half-open intervals, kept sorted with touching
/// pieces merged. Every instance is in canonical form, so two unions
/// describing the same set (up to finitely many points) compare equal.
class IntervalUnion {
public:
    IntervalUnion() = default;

    /// Canonical union of the given pairs; pairs with lo == hi are dropped.
    /// Throws std::invalid_argument if some pair has lo > hi.
    static IntervalUnion normalize(std::span<const std::pair<Rational, Rational>> pairs);
    static IntervalUnion normalize(std::vector<Interval> pieces);
    static IntervalUnion single(const Rational& lo, const Rational& hi);

    [[nodiscard]] const std::vector<Interval>& intervals() const { return pieces_; }
    [[nodiscard]] std::size_t size() const { return pieces_.size(); }
    [[nodiscard]] bool empty() const { return pieces_.empty(); }

    [[nodiscard]] Rational measure() const;
    [[nodiscard]] bool contains(const Rational& x) const;
    /// Index of the piece containing x, if any.
    [[nodiscard]] std::optional<std::size_t> locate(const Rational& x) const;

    /// Image {a*t + b : t in U}. Throws std::invalid_argument when a == 0.
    [[nodiscard]] IntervalUnion affine_image(const Rational& a, const Rational& b) const;
    [[nodiscard]] IntervalUnion translate(const Rational& b) const { return affine_image(Rational(1), b); }

    [[nodiscard]] std::optional<Rational> inf() const;
    [[nodiscard]] std::optional<Rational> sup() const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    explicit IntervalUnion(std::vector<Interval> canonical) : pieces_(std::move(canonical)) {}
    std::vector<Interval> pieces_;

    friend IntervalUnion intersect(const IntervalUnion&, const IntervalUnion&);
    friend IntervalUnion unite(const IntervalUnion&, const IntervalUnion&);
};

[[nodiscard]] IntervalUnion intersect(const IntervalUnion& u1, const IntervalUnion& u2);
[[nodiscard]] IntervalUnion unite(const IntervalUnion& u1, const IntervalUnion& u2);
[[nodiscard]] IntervalUnion difference(const IntervalUnion& u1, const IntervalUnion& u2);
[[nodiscard]] bool subset(const IntervalUnion& u1, const IntervalUnion& u2);

}  // namespace divlab
