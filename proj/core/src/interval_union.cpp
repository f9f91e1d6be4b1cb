#include "divlab/interval_union.hpp"

#include <algorithm>
#include <stdexcept>

namespace divlab {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (!(lo < hi)) throw std::invalid_argument("interval requires lo < hi: [" + lo.str() + ", " + hi.str() + ")");
}

IntervalUnion IntervalUnion::normalize(std::span<const std::pair<Rational, Rational>> pairs) {
    std::vector<Interval> pieces;
    pieces.reserve(pairs.size());
    for (const auto& [lo, hi] : pairs) {
        if (hi < lo) throw std::invalid_argument("normalize: pair with lo > hi: (" + lo.str() + ", " + hi.str() + ")");
        if (lo < hi) pieces.emplace_back(lo, hi);
    }
    return normalize(std::move(pieces));
}

IntervalUnion IntervalUnion::normalize(std::vector<Interval> pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    merged.reserve(pieces.size());
    for (auto& piece : pieces) {
        if (!merged.empty() && piece.lo <= merged.back().hi) {
            if (merged.back().hi < piece.hi) merged.back().hi = std::move(piece.hi);
        } else {
            merged.push_back(std::move(piece));
        }
    }
    return IntervalUnion(std::move(merged));
}

IntervalUnion IntervalUnion::single(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("single: lo > hi");
    if (lo == hi) return {};
    return IntervalUnion(std::vector<Interval>{Interval(lo, hi)});
}

Rational IntervalUnion::measure() const {
    Rational total;
    for (const auto& piece : pieces_) total += piece.length();
    return total;
}

std::optional<std::size_t> IntervalUnion::locate(const Rational& x) const {
    // first piece with hi > x
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const Interval& piece) { return v < piece.hi; });
    if (it == pieces_.end() || x < it->lo) return std::nullopt;
    return static_cast<std::size_t>(it - pieces_.begin());
}

bool IntervalUnion::contains(const Rational& x) const { return locate(x).has_value(); }

IntervalUnion IntervalUnion::affine_image(const Rational& a, const Rational& b) const {
    if (a.is_zero()) throw std::invalid_argument("affine_image: zero scale");
    std::vector<Interval> out;
    out.reserve(pieces_.size());
    if (a.sign() > 0) {
        for (const auto& piece : pieces_) out.emplace_back(a * piece.lo + b, a * piece.hi + b);
    } else {
        for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) out.emplace_back(a * it->hi + b, a * it->lo + b);
    }
    // scaling preserves order and gaps, so the result is already canonical
    return IntervalUnion(std::move(out));
}

std::optional<Rational> IntervalUnion::inf() const {
    if (pieces_.empty()) return std::nullopt;
    return pieces_.front().lo;
}

std::optional<Rational> IntervalUnion::sup() const {
    if (pieces_.empty()) return std::nullopt;
    return pieces_.back().hi;
}

IntervalUnion intersect(const IntervalUnion& u1, const IntervalUnion& u2) {
    const auto& a = u1.intervals();
    const auto& b = u2.intervals();
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const Rational& lo = max(a[i].lo, b[j].lo);
        const Rational& hi = min(a[i].hi, b[j].hi);
        if (lo < hi) out.emplace_back(lo, hi);
        if (a[i].hi < b[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    // pieces of a merged input never touch, so neither do the clipped pieces
    return IntervalUnion(std::move(out));
}

IntervalUnion unite(const IntervalUnion& u1, const IntervalUnion& u2) {
    std::vector<Interval> pieces = u1.intervals();
    pieces.insert(pieces.end(), u2.intervals().begin(), u2.intervals().end());
    return IntervalUnion::normalize(std::move(pieces));
}

IntervalUnion difference(const IntervalUnion& u1, const IntervalUnion& u2) {
    std::vector<Interval> out;
    const auto& b = u2.intervals();
    std::size_t j = 0;
    for (const auto& piece : u1.intervals()) {
        Rational cursor = piece.lo;
        while (j < b.size() && b[j].hi <= cursor) ++j;
        std::size_t k = j;
        while (k < b.size() && b[k].lo < piece.hi) {
            if (cursor < b[k].lo) out.emplace_back(cursor, b[k].lo);
            cursor = max(cursor, b[k].hi);
            if (!(cursor < piece.hi)) break;
            ++k;
        }
        if (cursor < piece.hi) out.emplace_back(cursor, piece.hi);
    }
    return IntervalUnion::normalize(std::move(out));
}

bool subset(const IntervalUnion& u1, const IntervalUnion& u2) {
    const auto& b = u2.intervals();
    std::size_t j = 0;
    for (const auto& piece : u1.intervals()) {
        while (j < b.size() && b[j].hi <= piece.lo) ++j;
        if (j == b.size() || piece.lo < b[j].lo || b[j].hi < piece.hi) return false;
    }
    return true;
}

}  // namespace divlab
