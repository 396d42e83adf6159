#include "schmidt/serialize.hpp"

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

std::string field_key(const Polynomial& p, const Rational& lo, const Rational& hi) {
  std::string k;
  Polynomial mp = p.monic();
  for (const auto& c : mp.coeffs()) k += to_string(c) + ",";
  return k + "|" + to_string(lo) + "|" + to_string(hi);
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return to_string(s.rational());
  const auto& f = *s.algebraic().field();
  Json poly = Json::array(), coeffs = Json::array();
  for (const auto& c : f.polynomial().coeffs()) poly.push_back(to_string(c));
  for (const auto& c : s.algebraic().coeffs()) coeffs.push_back(to_string(c));
  auto [lo, hi] = f.initial_enclosure();
  Json out;
  out["poly"] = poly;
  out["coeffs"] = coeffs;
  out["enclosure"] = Json::array({to_string(lo), to_string(hi)});
  return out;
}

Json interval_to_json(const Interval& iv) { return Json::array({scalar_to_json(iv.lo), scalar_to_json(iv.hi)}); }

FieldPtr FieldRegistry::get(const Polynomial& p, const Rational& lo, const Rational& hi) {
  auto key = field_key(p, lo, hi);
  auto it = fields_.find(key);
  if (it != fields_.end()) return it->second;
  auto f = AlgebraicField::create(p, lo, hi);
  fields_.emplace(key, f);
  return f;
}

void FieldRegistry::add(const FieldPtr& f) {
  auto [lo, hi] = f->initial_enclosure();
  fields_.emplace(field_key(f->polynomial(), lo, hi), f);
}

Scalar scalar_from_json(const Json& j, FieldRegistry& fields) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (!j.is_object() || !j.contains("poly") || !j.contains("coeffs") || !j.contains("enclosure"))
    throw ParseError("scalar must be a rational string or {poly, coeffs, enclosure}");
  std::vector<Rational> pc, cc;
  for (const auto& c : j.at("poly")) pc.push_back(parse_rational(c.get<std::string>()));
  for (const auto& c : j.at("coeffs")) cc.push_back(parse_rational(c.get<std::string>()));
  const auto& e = j.at("enclosure");
  if (!e.is_array() || e.size() != 2) throw ParseError("enclosure must be [lo, hi]");
  auto f = fields.get(Polynomial(pc), parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>()));
  return Scalar(AlgebraicScalar(f, cc));
}

Interval interval_from_json(const Json& j, FieldRegistry& fields) {
  if (!j.is_array() || j.size() != 2) throw ParseError("interval must be [lo, hi]");
  return {scalar_from_json(j[0], fields), scalar_from_json(j[1], fields)};
}

}  // namespace schmidt
