#pragma once

// Trilinear Hilbert transform H3(f1,f2,f3)(x) = p.v. int f1(x+t) f2(x+2t) f3(x+3t) dt/t
// evaluated exactly on indicator functions of finite interval unions.

#include "divlab/constructions.hpp"
#include "divlab/interval_union.hpp"
#include "divlab/rational.hpp"

#include <stdexcept>

namespace divlab {

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct H3Evaluation {
    Rational x;
    IntervalUnion support;  // {t >= 0 : x+t in A, x+2t in B, x+3t in C}
    double value;           // sum of ln(b/a) over support pieces [a, b); meaningless when infinite
    bool infinite;          // support reaches t = 0
    Rational lower_bound;   // measure(support within [0, 1])
};

/// Requires x <= 0 and B within [0, inf), which forces every t in the
/// support to be nonnegative so the principal value is a one-sided integral.
/// Throws PreconditionError otherwise.
[[nodiscard]] IntervalUnion h3_support(const Rational& x, const IntervalUnion& a, const IntervalUnion& b,
                                       const IntervalUnion& c);

[[nodiscard]] H3Evaluation h3_exact(const Rational& x, const IntervalUnion& a, const IntervalUnion& b,
                                    const IntervalUnion& c);

/// value_k = (1/8)^{3/p} / (8*12^k) divided by ||1_A||_p ||1_B||_p ||1_C||_p on the
/// depth-k sets; the constant in the trilinear bound must exceed every value_k.
[[nodiscard]] BlowupSeries h3_ratio_series(double p, int kmax, Normalization n = Normalization::lebesgue);

}  // namespace divlab
