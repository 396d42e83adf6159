#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "schmidt/interval.hpp"

namespace schmidt {

using Json = nlohmann::ordered_json;

// Rationals become "num/den"; field elements become
// {"poly": [...], "coeffs": [...], "enclosure": [lo, hi]} with the field's
// initial isolating enclosure, so output does not depend on refinement state.
Json scalar_to_json(const Scalar& s);
Json interval_to_json(const Interval& iv);

// Reuses one field object per (polynomial, enclosure) so that parsed scalars
// can be combined.
class FieldRegistry {
 public:
  FieldPtr get(const Polynomial& p, const Rational& lo, const Rational& hi);
  void add(const FieldPtr& f);

 private:
  std::map<std::string, FieldPtr> fields_;
};

Scalar scalar_from_json(const Json& j, FieldRegistry& fields);
Interval interval_from_json(const Json& j, FieldRegistry& fields);

}  // namespace schmidt
