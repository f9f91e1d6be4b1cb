#pragma once

#include "divlab/interval_union.hpp"
#include "divlab/rational.hpp"

#include <vector>

namespace divlab {

/// Continuous piecewise linear function given by its values at strictly
/// increasing breakpoints; linear in between and constant outside the range.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    /// Throws std::invalid_argument on size mismatch or non-increasing breakpoints.
    PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> values);

    [[nodiscard]] const std::vector<Rational>& breakpoints() const { return xs_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return ys_; }
    [[nodiscard]] bool empty() const { return xs_.empty(); }

    [[nodiscard]] Rational operator()(const Rational& x) const;

    /// {x in window : f(x) >= level}, exact.
    [[nodiscard]] IntervalUnion superlevel(const Rational& level, const Interval& window) const;

    /// Same function with breakpoints clipped to the window (window ends added).
    [[nodiscard]] PiecewiseLinear restrict(const Interval& window) const;

    /// Drops breakpoints where the slope does not change.
    [[nodiscard]] PiecewiseLinear simplified() const;

private:
    std::vector<Rational> xs_;
    std::vector<Rational> ys_;
};

/// Right-continuous step function: value ys[j] on [xs[j], xs[j+1]),
/// `outside` before xs[0] and from xs.back() on.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational outside);

    [[nodiscard]] const std::vector<Rational>& breakpoints() const { return xs_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return ys_; }

    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] IntervalUnion superlevel(const Rational& level, const Interval& window) const;

private:
    std::vector<Rational> xs_;
    std::vector<Rational> ys_;  // ys_.size() == xs_.size() - 1 (or both empty)
    Rational outside_;
};

}  // namespace divlab
