// Exact sweep of F(x) = int_T prod_i 1_{U_i}(x + c_i t) dt.
//
// For a fixed choice of one interval per set, the t-slice at x is the interval
// between the largest lower and smallest upper bound among lines of slope
// -1/c_i (plus the two constant ends of T), so its length is a concave
// piecewise linear function of x whose kinks sit at pairwise line crossings.
// F is the sum of these tent-like pieces over all interval tuples that can
// meet inside the window; we add them up as slope changes (kinks) and
// integrate once at the end.

#include "divlab/averages.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace divlab {

namespace {

struct Line {
    Rational slope;
    Rational intercept;
    [[nodiscard]] Rational at(const Rational& x) const { return slope * x + intercept; }
};

struct Range {
    Rational lo;
    Rational hi;
};

bool overlaps_open(const Range& r, const Rational& lo, const Rational& hi) { return r.lo < hi && lo < r.hi; }

// alpha * [a.lo, a.hi] + beta * [b.lo, b.hi]
Range combine(const Rational& alpha, const Range& a, const Rational& beta, const Range& b) {
    auto scaled = [](const Rational& s, const Range& r) {
        return s.sign() >= 0 ? Range{s * r.lo, s * r.hi} : Range{s * r.hi, s * r.lo};
    };
    const Range sa = scaled(alpha, a);
    const Range sb = scaled(beta, b);
    return {sa.lo + sb.lo, sa.hi + sb.hi};
}

// indices of pieces meeting the open range
std::pair<std::size_t, std::size_t> candidates(const std::vector<Interval>& pieces, const Range& r) {
    auto first = std::upper_bound(pieces.begin(), pieces.end(), r.lo,
                                  [](const Rational& v, const Interval& piece) { return v < piece.hi; });
    auto last = first;
    while (last != pieces.end() && last->lo < r.hi) ++last;
    return {static_cast<std::size_t>(first - pieces.begin()), static_cast<std::size_t>(last - pieces.begin())};
}

struct Group {
    long coefficient;
    IntervalUnion set;
};

class ProfileBuilder {
public:
    ProfileBuilder(std::vector<Group> groups, Interval domain, Interval window)
        : groups_(std::move(groups)), domain_(std::move(domain)), window_(std::move(window)) {}

    PiecewiseLinear build() {
        if (std::any_of(groups_.begin(), groups_.end(), [](const Group& g) { return g.set.empty(); })) return {};
        if (groups_.size() == 1) {
            for (const auto& piece : groups_[0].set.intervals()) add_tuple({&piece});
        } else {
            enumerate_pairs();
        }
        return integrate();
    }

private:
    void enumerate_pairs() {
        const long c1 = groups_[0].coefficient;
        const long c2 = groups_[1].coefficient;
        const Rational d(c2 - c1);
        const Range t_range{domain_.lo, domain_.hi};
        const Rational alpha_x = Rational(c2) / d;
        const Rational beta_x = Rational(-c1) / d;
        for (const auto& first : groups_[0].set.intervals()) {
            const Range u{first.lo, first.hi};
            // v = u + (c2 - c1) t
            const Range v_reach = combine(Rational(1), u, d, t_range);
            const auto [jb, je] = candidates(groups_[1].set.intervals(), v_reach);
            for (std::size_t j = jb; j < je; ++j) {
                const Interval& second = groups_[1].set.intervals()[j];
                const Range v{second.lo, second.hi};
                const Range t = combine(Rational(-1) / d, u, Rational(1) / d, v);
                if (!overlaps_open(t, domain_.lo, domain_.hi)) continue;
                const Range x = combine(alpha_x, u, beta_x, v);
                if (!overlaps_open(x, window_.lo, window_.hi)) continue;
                std::vector<const Interval*> tuple{&first, &second};
                extend(tuple, u, v, 2);
            }
        }
    }

    void extend(std::vector<const Interval*>& tuple, const Range& u, const Range& v, std::size_t g) {
        if (g == groups_.size()) {
            add_tuple(tuple);
            return;
        }
        const long c1 = groups_[0].coefficient;
        const long c2 = groups_[1].coefficient;
        const long cg = groups_[g].coefficient;
        const Rational d(c2 - c1);
        // x + c_g t = ((c2 - c_g) u + (c_g - c1) v) / (c2 - c1)
        const Range reach = combine(Rational(c2 - cg) / d, u, Rational(cg - c1) / d, v);
        const auto& pieces = groups_[g].set.intervals();
        const auto [b, e] = candidates(pieces, reach);
        for (std::size_t i = b; i < e; ++i) {
            tuple.push_back(&pieces[i]);
            extend(tuple, u, v, g + 1);
            tuple.pop_back();
        }
    }

    void add_tuple(const std::vector<const Interval*>& tuple) {
        std::vector<Line> lowers{{Rational(0), domain_.lo}};
        std::vector<Line> uppers{{Rational(0), domain_.hi}};
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            const Rational inv(1, groups_[i].coefficient);
            const Rational slope = -inv;
            if (groups_[i].coefficient > 0) {
                lowers.push_back({slope, tuple[i]->lo * inv});
                uppers.push_back({slope, tuple[i]->hi * inv});
            } else {
                lowers.push_back({slope, tuple[i]->hi * inv});
                uppers.push_back({slope, tuple[i]->lo * inv});
            }
        }
        std::vector<Line> all = lowers;
        all.insert(all.end(), uppers.begin(), uppers.end());
        std::vector<Rational> xs;
        for (std::size_t a = 0; a < all.size(); ++a) {
            for (std::size_t b = a + 1; b < all.size(); ++b) {
                if (all[a].slope == all[b].slope) continue;
                xs.push_back((all[b].intercept - all[a].intercept) / (all[a].slope - all[b].slope));
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

        auto value = [&](const Rational& x) {
            Rational hi = uppers[0].at(x);
            for (std::size_t i = 1; i < uppers.size(); ++i) hi = min(hi, uppers[i].at(x));
            Rational lo = lowers[0].at(x);
            for (std::size_t i = 1; i < lowers.size(); ++i) lo = max(lo, lowers[i].at(x));
            const Rational len = hi - lo;
            return len.sign() > 0 ? len : Rational(0);
        };
        std::vector<Rational> ys;
        ys.reserve(xs.size());
        bool any = false;
        for (const auto& x : xs) {
            ys.push_back(value(x));
            any = any || !ys.back().is_zero();
        }
        if (!any) return;
        if (!ys.front().is_zero() || !ys.back().is_zero()) throw std::logic_error("sweep: unbounded tuple support");

        Rational previous_slope(0);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const Rational slope = j + 1 < xs.size() ? (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]) : Rational(0);
            Rational kink = slope - previous_slope;
            if (!kink.is_zero()) kinks_.emplace_back(xs[j], std::move(kink));
            previous_slope = slope;
        }
    }

    PiecewiseLinear integrate() {
        if (kinks_.empty()) return {};
        std::sort(kinks_.begin(), kinks_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Rational> xs;
        std::vector<Rational> deltas;
        for (auto& [x, delta] : kinks_) {
            if (!xs.empty() && xs.back() == x) {
                deltas.back() += delta;
            } else {
                xs.push_back(std::move(x));
                deltas.push_back(std::move(delta));
            }
        }
        std::vector<Rational> ys{Rational(0)};
        Rational slope(0);
        for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
            slope += deltas[j];
            ys.push_back(ys.back() + slope * (xs[j + 1] - xs[j]));
        }
        slope += deltas.back();
        if (!slope.is_zero() || !ys.back().is_zero()) throw std::logic_error("sweep: kinks do not close");
        return PiecewiseLinear(std::move(xs), std::move(ys)).simplified();
    }

    std::vector<Group> groups_;
    Interval domain_;
    Interval window_;
    std::vector<std::pair<Rational, Rational>> kinks_;
};

std::vector<Group> group_by_coefficient(const std::vector<IntervalUnion>& sets, const std::vector<long>& coefficients) {
    if (sets.size() != coefficients.size()) throw std::invalid_argument("sweep: sets/coefficients size mismatch");
    if (sets.empty()) throw std::invalid_argument("sweep: no sets");
    std::map<long, IntervalUnion> merged;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (coefficients[i] == 0) throw std::invalid_argument("sweep: zero coefficient");
        auto [it, inserted] = merged.try_emplace(coefficients[i], sets[i]);
        if (!inserted) it->second = intersect(it->second, sets[i]);
    }
    std::vector<Group> groups;
    for (auto& [c, set] : merged) groups.push_back({c, std::move(set)});
    return groups;
}

}  // namespace

PiecewiseLinear average_profile(const std::vector<IntervalUnion>& sets, const std::vector<long>& coefficients,
                                const Interval& domain, const Interval& window) {
    ProfileBuilder builder(group_by_coefficient(sets, coefficients), domain, window);
    return builder.build().restrict(window).simplified();
}

SweepResult superlevel_set(const std::vector<IntervalUnion>& sets, const std::vector<long>& coefficients,
                           const Rational& level, const Interval& window, const Interval& domain) {
    PiecewiseLinear f = average_profile(sets, coefficients, domain, window);
    IntervalUnion superlevel = f.superlevel(level, window);
    Rational measure = superlevel.measure();
    return {std::move(f), std::move(superlevel), std::move(measure)};
}

}  // namespace divlab
