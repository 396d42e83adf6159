#include "schmidt/target.hpp"

#include <sstream>

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
  return Rational(a, b);
}

}  // namespace

Scalar periodic_point(const MapModel& m, const Word& w) {
  if (w.empty()) throw ConfigError("target", "empty itinerary");
  Cylinder cyl = cylinder(m, w);
  const Mobius& f = cyl.chart;
  Scalar y;
  if (f.is_affine()) {
    y = f.b / (Scalar(1) - f.a);
  } else {
    if (!f.a.is_rational() || !f.b.is_rational() || !f.c.is_rational() || !f.d.is_rational() || !cyl.lo.is_rational() ||
        !cyl.hi.is_rational())
      throw ConfigError("target", "periodic points of non-rational projective charts are not supported");
    // c y^2 + (d - a) y - b = 0 with the root inside the cylinder
    Rational a = f.a.rational(), b = f.b.rational(), c = f.c.rational(), d = f.d.rational();
    Rational disc = (d - a) * (d - a) + 4 * b * c;
    if (auto r = rational_sqrt(disc)) {
      for (const Rational& root : {Rational((a - d - *r) / (2 * c)), Rational((a - d + *r) / (2 * c))})
        if (cyl.lo <= Scalar(root) && Scalar(root) <= cyl.hi) y = root;
    } else {
      Polynomial p({-b, d - a, c});
      y = Scalar::generator(AlgebraicField::create(p, cyl.lo.rational(), cyl.hi.rational()));
    }
  }
  std::size_t depth = 4 * w.size();
  auto code = encode(m, y, depth);
  bool ok = code.has_value();
  for (std::size_t i = 0; ok && i < depth; ++i) ok = (*code)[i] == w[i % w.size()];
  if (!ok) throw ConfigError("target", "itinerary is not realized by a periodic point");
  return y;
}

Scalar parse_target(const MapModel& m, const std::string& text) {
  try {
    if (text.rfind("digits:", 0) == 0) {
      Word w;
      for (const auto& s : split(text.substr(7), ',')) w.push_back(m.parse_symbol(s));
      return periodic_point(m, w);
    }
    if (text.rfind("alg:", 0) == 0) {
      auto at = text.find('@');
      if (at == std::string::npos) throw ConfigError("target", "expected alg:c0,c1,...@lo,hi");
      std::vector<Rational> coeffs;
      for (const auto& s : split(text.substr(4, at - 4), ',')) coeffs.push_back(parse_rational(s));
      auto enc = split(text.substr(at + 1), ',');
      if (enc.size() != 2) throw ConfigError("target", "expected an enclosure lo,hi");
      Polynomial p(coeffs);
      if (p.degree() < 1) throw ConfigError("target", "polynomial must be non-constant");
      return Scalar::generator(AlgebraicField::create(p, parse_rational(enc[0]), parse_rational(enc[1])));
    }
    return Scalar::parse(text);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("target", e.what());
  }
}

}  // namespace schmidt
