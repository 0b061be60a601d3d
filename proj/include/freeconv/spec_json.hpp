#pragma once

// Distribution expressions: JSON and shorthand text forms, evaluation to
// DistSpec, and JSON encodings of results.

#include "freeconv/measures.hpp"
#include "freeconv/rmt.hpp"
#include "freeconv/verdict.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace freeconv {

using Json = nlohmann::ordered_json;

/// A distribution, possibly built from others by convolutions and maps.
struct SpecExpr {
  enum class Op { Leaf, Symmetric, Boxplus, Boxtimes, Reflect, PushPower, CompoundPoisson, BoxplusPower };

  Op op = Op::Leaf;
  std::vector<DistSpec> leaf;  // exactly one element when op == Leaf
  std::vector<SpecExpr> args;
  Scalar param{0};  // p for PushPower, c for CompoundPoisson and BoxplusPower

  static SpecExpr of(DistSpec d);
};

/// Evaluates to a DistSpec that can supply at least `order` moments.
DistSpec evaluate(const SpecExpr& e, std::size_t order);

/// Throws SpecValidation (or InvalidParams for catalog domains).
SpecExpr spec_from_json(const Json& j);
Json spec_to_json(const SpecExpr& e);
Json dist_to_json(const DistSpec& d);

/// Shorthand such as "marchenko_pastur(1/10)", "gue", "wishart(1)",
/// "reflect(marchenko_pastur(1/2))" or "boxtimes(mlotkowski(3/2,1),mlotkowski(3/2,1))".
SpecExpr parse_shorthand(std::string_view text);

/// JSON text when it starts with '{', a JSON file when it starts with '@', shorthand otherwise.
SpecExpr parse_spec_argument(std::string_view text);

/// Scalars in specs: exact values as "p/q" strings, floats as "~" + 17 digits.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

/// Display encoding: exact values as "p/q" strings, floats as numbers rounded to 12 digits.
Json display_scalar(const Scalar& s);
Json display_double(double v);

Json verdict_to_json(const Verdict& v);
Json report_to_json(const MCReport& r, double threshold);

}  // namespace freeconv
