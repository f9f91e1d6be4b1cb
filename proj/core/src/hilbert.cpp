#include "divlab/hilbert.hpp"

#include <cmath>

namespace divlab {

IntervalUnion h3_support(const Rational& x, const IntervalUnion& a, const IntervalUnion& b, const IntervalUnion& c) {
    if (x.sign() > 0) throw PreconditionError("h3_support: x = " + x.str() + " must be <= 0");
    if (const auto lo = b.inf(); lo && lo->sign() < 0) {
        throw PreconditionError("h3_support: B must lie in [0, inf) (inf B = " + lo->str() + ")");
    }
    IntervalUnion support = a.translate(-x);
    support = intersect(support, b.affine_image(Rational(1, 2), -x / Rational(2)));
    support = intersect(support, c.affine_image(Rational(1, 3), -x / Rational(3)));
    if (support.empty()) return support;
    // x <= 0 and B >= 0 already force t >= -x/2 >= 0; the clip only guards exotic inputs
    return intersect(support, IntervalUnion::single(Rational(0), max(Rational(1), *support.sup())));
}

H3Evaluation h3_exact(const Rational& x, const IntervalUnion& a, const IntervalUnion& b, const IntervalUnion& c) {
    H3Evaluation out{x, h3_support(x, a, b, c), 0.0, false, Rational(0)};
    for (const auto& piece : out.support.intervals()) {
        if (piece.lo.is_zero()) {
            out.infinite = true;
            continue;
        }
        out.value += std::log1p((piece.length() / piece.lo).to_double());
    }
    out.lower_bound = intersect(out.support, IntervalUnion::single(Rational(0), Rational(1))).measure();
    return out;
}

BlowupSeries h3_ratio_series(double p, int kmax, Normalization n) {
    if (!(p >= 1.0)) throw std::invalid_argument("h3_ratio_series: p must be >= 1");
    if (kmax < 1) throw std::invalid_argument("h3_ratio_series: kmax must be >= 1");
    const double c = n == Normalization::normalized ? 4.0 : 2.0;
    BlowupSeries out{SeriesKind::h3, p, 0, false, n, CardinalityMode::exact, {}, 0.0, 0.0, Verdict::decays};
    for (int k = 1; k <= kmax; ++k) {
        const double kk = k;
        // ||H3(1_A,1_B,1_C)||_{p/3} >= (1/8)^{3/p} / (8*12^k)
        const double log_lower = -3.0 * std::log(8.0) / p - (std::log(8.0) + kk * std::log(12.0));
        const double log_norms = -(3.0 * std::log(c) + kk * std::log(24.0)) / p;
        const double log_value = log_lower - log_norms;
        out.entries.push_back({k, std::exp(log_value), log_value, std::exp(log_lower), std::exp(log_norms), std::nullopt});
    }
    for (std::size_t i = 1; i < out.entries.size(); ++i) {
        out.entries[i].step_ratio = std::exp(out.entries[i].log_value - out.entries[i - 1].log_value);
    }
    out.asymptotic_ratio = std::exp(std::log(24.0) / p - std::log(12.0));
    out.threshold = threshold(ThresholdKind::furstenberg()).value;
    out.verdict = verdict_for(out.asymptotic_ratio);
    return out;
}

}  // namespace divlab
