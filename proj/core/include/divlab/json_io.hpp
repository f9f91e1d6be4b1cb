#pragma once

// Machine-readable renderings: rationals as "num/den" strings, interval unions
// as [[lo, hi], ...] string pairs, reals rounded to 15 significant digits.

#include "divlab/averages.hpp"
#include "divlab/constructions.hpp"
#include "divlab/digit_set.hpp"
#include "divlab/hilbert.hpp"
#include "divlab/interval_union.hpp"
#include "divlab/linear_forms.hpp"
#include "divlab/rational.hpp"

#include <json.hpp>

#include <string>

namespace divlab::io {

using Json = nlohmann::ordered_json;

/// Value of x rounded to 15 significant digits.
[[nodiscard]] double round15(double x);
/// "%.15g" rendering; "inf"/"-inf"/"nan" for non-finite values.
[[nodiscard]] std::string format_real(double x);
/// JSON number rounded to 15 significant digits, or null when not finite.
[[nodiscard]] Json real(double x);

[[nodiscard]] Json to_json(const Rational& r);
[[nodiscard]] Rational rational_from_json(const Json& j);

[[nodiscard]] Json to_json(const IntervalUnion& u);
[[nodiscard]] IntervalUnion interval_union_from_json(const Json& j);

[[nodiscard]] Json to_json(const DigitSetSpec& spec);
[[nodiscard]] DigitSetSpec digit_set_from_json(const Json& j);

[[nodiscard]] Json to_json(const ScenarioThm1& s);
[[nodiscard]] ScenarioThm1 thm1_from_json(const Json& j);

[[nodiscard]] Json to_json(const ScenarioCubes& s);
[[nodiscard]] ScenarioCubes cubes_from_json(const Json& j);

[[nodiscard]] Json to_json(const SweepResult& s);
[[nodiscard]] std::string to_csv(const PiecewiseLinear& f);

[[nodiscard]] Json to_json(const DiscreteSweepResult& s);
[[nodiscard]] std::string to_csv(const StepFunction& g);

[[nodiscard]] Json to_json(const CubeCertificate& c);
[[nodiscard]] Json to_json(const Classification& c, const IntMatrix& a);
[[nodiscard]] Json to_json(const BlowupSeries& s);
[[nodiscard]] std::string to_csv(const BlowupSeries& s);
[[nodiscard]] Json to_json(const H3Evaluation& e);
[[nodiscard]] Json to_json(const Threshold& t);

}  // namespace divlab::io
