#include "divlab/piecewise_linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace divlab {

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
    if (xs_.size() != ys_.size()) throw std::invalid_argument("PiecewiseLinear: size mismatch");
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (!(xs_[i - 1] < xs_[i])) throw std::invalid_argument("PiecewiseLinear: breakpoints not increasing");
    }
}

Rational PiecewiseLinear::operator()(const Rational& x) const {
    if (xs_.empty()) return Rational(0);
    if (x <= xs_.front()) return ys_.front();
    if (xs_.back() <= x) return ys_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const auto j = static_cast<std::size_t>(it - xs_.begin());
    const Rational& x0 = xs_[j - 1];
    const Rational& x1 = xs_[j];
    return ys_[j - 1] + (ys_[j] - ys_[j - 1]) * (x - x0) / (x1 - x0);
}

PiecewiseLinear PiecewiseLinear::restrict(const Interval& window) const {
    std::vector<Rational> xs{window.lo};
    std::vector<Rational> ys{(*this)(window.lo)};
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (window.lo < xs_[i] && xs_[i] < window.hi) {
            xs.push_back(xs_[i]);
            ys.push_back(ys_[i]);
        }
    }
    xs.push_back(window.hi);
    ys.push_back((*this)(window.hi));
    return PiecewiseLinear(std::move(xs), std::move(ys));
}

PiecewiseLinear PiecewiseLinear::simplified() const {
    if (xs_.size() <= 2) return *this;
    std::vector<Rational> xs{xs_.front()};
    std::vector<Rational> ys{ys_.front()};
    for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
        const Rational left = (ys_[i] - ys.back()) * (xs_[i + 1] - xs_[i]);
        const Rational right = (ys_[i + 1] - ys_[i]) * (xs_[i] - xs.back());
        if (left != right) {
            xs.push_back(xs_[i]);
            ys.push_back(ys_[i]);
        }
    }
    xs.push_back(xs_.back());
    ys.push_back(ys_.back());
    return PiecewiseLinear(std::move(xs), std::move(ys));
}

IntervalUnion PiecewiseLinear::superlevel(const Rational& level, const Interval& window) const {
    const PiecewiseLinear f = restrict(window);
    const auto& xs = f.xs_;
    const auto& ys = f.ys_;
    std::vector<Interval> pieces;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        const Rational& x0 = xs[j];
        const Rational& x1 = xs[j + 1];
        const Rational& y0 = ys[j];
        const Rational& y1 = ys[j + 1];
        const bool in0 = level <= y0;
        const bool in1 = level <= y1;
        if (in0 && in1) {
            pieces.emplace_back(x0, x1);
        } else if (in0 || in1) {
            // single crossing of the level inside (x0, x1)
            const Rational cross = x0 + (level - y0) * (x1 - x0) / (y1 - y0);
            if (in0 && x0 < cross) pieces.emplace_back(x0, cross);
            if (in1 && cross < x1) pieces.emplace_back(cross, x1);
        }
    }
    return IntervalUnion::normalize(std::move(pieces));
}

StepFunction::StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values, Rational outside)
    : xs_(std::move(breakpoints)), ys_(std::move(values)), outside_(std::move(outside)) {
    if (!(xs_.empty() && ys_.empty()) && ys_.size() + 1 != xs_.size()) {
        throw std::invalid_argument("StepFunction: expected one value per gap");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (!(xs_[i - 1] < xs_[i])) throw std::invalid_argument("StepFunction: breakpoints not increasing");
    }
}

Rational StepFunction::operator()(const Rational& x) const {
    if (xs_.empty() || x < xs_.front() || xs_.back() <= x) return outside_;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return ys_[static_cast<std::size_t>(it - xs_.begin()) - 1];
}

IntervalUnion StepFunction::superlevel(const Rational& level, const Interval& window) const {
    std::vector<Interval> pieces;
    const bool outside_in = level <= outside_;
    if (xs_.empty()) {
        if (outside_in) pieces.emplace_back(window.lo, window.hi);
        return IntervalUnion::normalize(std::move(pieces));
    }
    auto clip = [&](const Rational& a, const Rational& b) {
        const Rational& lo = max(a, window.lo);
        const Rational& hi = min(b, window.hi);
        if (lo < hi) pieces.emplace_back(lo, hi);
    };
    if (outside_in) {
        clip(min(window.lo, xs_.front()), xs_.front());
        clip(xs_.back(), max(window.hi, xs_.back()));
    }
    for (std::size_t j = 0; j < ys_.size(); ++j) {
        if (level <= ys_[j]) clip(xs_[j], xs_[j + 1]);
    }
    return IntervalUnion::normalize(std::move(pieces));
}

}  // namespace divlab
