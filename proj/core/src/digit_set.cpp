#include "divlab/digit_set.hpp"

#include <algorithm>

namespace divlab {

namespace {

void sort_unique(std::vector<Rational>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace

DigitSetSpec::DigitSetSpec(int radix, int depth, std::vector<Rational> alphabet, Rational tail)
    : radix_(radix), depth_(depth), alphabet_(std::move(alphabet)), tail_(std::move(tail)) {
    if (radix_ < 2) throw std::invalid_argument("digit set: radix must be >= 2");
    if (depth_ < 1) throw std::invalid_argument("digit set: depth must be >= 1");
    if (alphabet_.empty()) throw std::invalid_argument("digit set: empty alphabet");
    if (tail_.sign() < 0) throw std::invalid_argument("digit set: negative tail");
    sort_unique(alphabet_);
}

DigitSetSpec DigitSetSpec::with_tail(Rational tail) const { return {radix_, depth_, alphabet_, std::move(tail)}; }

DigitSetSpec DigitSetSpec::with_depth(int depth) const { return {radix_, depth, alphabet_, tail_}; }

std::vector<Rational> base_points(const DigitSetSpec& spec) {
    double estimate = 1.0;
    for (int i = 0; i < spec.depth(); ++i) estimate *= static_cast<double>(spec.alphabet().size());
    if (estimate > static_cast<double>(kMaxEnumeratedPoints)) {
        throw std::length_error("digit set too large to enumerate (" + std::to_string(spec.alphabet().size()) + "^" +
                                std::to_string(spec.depth()) + " strings)");
    }
    std::vector<Rational> points{Rational(0)};
    Rational scale(1);
    const Rational inv_radix(1, spec.radix());
    for (int i = 1; i <= spec.depth(); ++i) {
        scale *= inv_radix;
        std::vector<Rational> next;
        next.reserve(points.size() * spec.alphabet().size());
        for (const auto& p : points) {
            for (const auto& d : spec.alphabet()) next.push_back(p + d * scale);
        }
        sort_unique(next);
        points = std::move(next);
    }
    return points;
}

IntervalUnion materialize(const DigitSetSpec& spec) {
    if (spec.tail().is_zero()) return {};
    std::vector<Interval> pieces;
    const auto points = base_points(spec);
    pieces.reserve(points.size());
    for (const auto& p : points) pieces.emplace_back(p, p + spec.tail());
    return IntervalUnion::normalize(std::move(pieces));
}

Rational min_gap(const DigitSetSpec& spec) {
    const auto points = base_points(spec);
    if (points.size() < 2) return Rational(0);
    Rational best = points[1] - points[0];
    for (std::size_t i = 2; i < points.size(); ++i) best = min(best, points[i] - points[i - 1]);
    return best;
}

DigitSetSpec alphabet_combine(const std::vector<CombineTerm>& terms, Rational tail) {
    std::vector<const CombineTerm*> active;
    for (const auto& term : terms) {
        if (term.coefficient != 0) active.push_back(&term);
    }
    if (active.empty()) throw std::invalid_argument("alphabet_combine: no nonzero terms");
    const int radix = active.front()->spec.radix();
    const int depth = active.front()->spec.depth();
    for (const auto* term : active) {
        if (term->spec.radix() != radix || term->spec.depth() != depth) {
            throw std::invalid_argument("alphabet_combine: radix/depth mismatch");
        }
    }

    // mixed-radix walk over one digit per term, keeping the witness for diagnostics
    std::vector<std::size_t> index(active.size(), 0);
    std::vector<Rational> combined;
    const Rational bound(radix);
    while (true) {
        Rational value;
        for (std::size_t j = 0; j < active.size(); ++j) {
            value += Rational(active[j]->coefficient) * active[j]->spec.alphabet()[index[j]];
        }
        if (!(value.abs() < bound)) {
            std::vector<Rational> witness;
            std::string detail;
            for (std::size_t j = 0; j < active.size(); ++j) {
                witness.push_back(active[j]->spec.alphabet()[index[j]]);
                detail += (j ? " + " : "") + std::to_string(active[j]->coefficient) + "*(" + witness.back().str() + ")";
            }
            throw NoCarryError("no-carry violation: " + detail + " = " + value.str() + " has magnitude >= radix " +
                                   std::to_string(radix),
                               std::move(witness), value);
        }
        combined.push_back(std::move(value));

        std::size_t j = 0;
        while (j < active.size() && ++index[j] == active[j]->spec.alphabet().size()) {
            index[j] = 0;
            ++j;
        }
        if (j == active.size()) break;
    }
    return {radix, depth, std::move(combined), std::move(tail)};
}

bool positions_independent(const DigitSetSpec& spec) {
    const auto& a = spec.alphabet();
    if (a.size() < 2) return true;
    Rational gap = a[1] - a[0];
    for (std::size_t i = 2; i < a.size(); ++i) gap = min(gap, a[i] - a[i - 1]);
    return a.back() - a.front() <= gap * Rational(spec.radix() - 1);
}

mpz_class cardinality(const DigitSetSpec& spec) {
    if (positions_independent(spec)) {
        mpz_class out;
        mpz_ui_pow_ui(out.get_mpz_t(), spec.alphabet().size(), static_cast<unsigned long>(spec.depth()));
        return out;
    }
    return mpz_class(static_cast<unsigned long>(base_points(spec).size()));
}

}  // namespace divlab
