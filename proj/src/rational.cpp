#include "schmidt/rational.hpp"

#include <cctype>

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view mant = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string_view::npos) {
    mant = text.substr(0, epos);
    Integer e = parse_integer(text.substr(epos + 1));
    if (!e.fits_slong_p() || abs(e) > 100000) throw ParseError("exponent out of range");
    exp10 = e.get_si();
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  auto dot = mant.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(mant);
  } else {
    std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw ParseError("not a number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  }
  if (!all_digits(digits)) throw ParseError("not a number: '" + std::string(text) + "'");
  Rational q{Integer(digits, 10)};
  Integer ten = 10, scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    q *= scale;
  else
    q /= scale;
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  return r;
}

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw DivisionByZero();
    return pow(Rational(1) / q, -e);
  }
  Rational r(0);
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::size_t height_bits(const Rational& q) {
  auto a = mpz_sizeinbase(q.get_num_mpz_t(), 2);
  auto b = mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return a > b ? a : b;
}

}  // namespace schmidt
