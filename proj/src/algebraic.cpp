#include "schmidt/algebraic.hpp"

#include <algorithm>

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::pair<Rational, Rational> imul(const std::pair<Rational, Rational>& a,
                                   const std::pair<Rational, Rational>& b) {
  if (a.first >= 0 && b.first >= 0) return {a.first * b.first, a.second * b.second};
  Rational p[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

AlgebraicField::AlgebraicField(Polynomial p, Rational lo, Rational hi, unsigned max_refinements)
    : p_(std::move(p)), lo0_(std::move(lo)), hi0_(std::move(hi)), max_refinements_(max_refinements) {
  squarefree_ = p_ / Polynomial::gcd(p_, p_.derivative());
  sign_lo_ = squarefree_.sign_at(lo0_);
  if (p_.degree() == 2) {
    Polynomial mp = p_.monic();
    half_p1_ = mp.coeff(1) / 2;
    disc_ = mp.coeff(1) * mp.coeff(1) - 4 * mp.coeff(0);
    if (disc_ > 0) {
      quadratic_ = true;
      // the two roots are symmetric about -p1/2; refine until one side is known
      for (unsigned bits = 8;; bits *= 2) {
        auto [lo, hi] = enclosure(bits);
        if (lo > -half_p1_) { sigma_ = 1; break; }
        if (hi < -half_p1_) { sigma_ = -1; break; }
      }
    }
  }
}

FieldPtr AlgebraicField::create(const Polynomial& p, const Rational& lo, const Rational& hi,
                                unsigned max_refinements) {
  if (p.degree() < 1) throw ModelError("defining polynomial must have degree >= 1");
  if (!(lo < hi)) throw ModelError("isolating enclosure must satisfy lo < hi");
  if (p.sign_at(lo) == 0 || p.sign_at(hi) == 0)
    throw ModelError("isolating enclosure endpoint is a root");
  if (p.count_roots(lo, hi) != 1) throw ModelError("enclosure does not isolate exactly one root");
  return FieldPtr(new AlgebraicField(p, lo, hi, max_refinements));
}

std::pair<Rational, Rational> AlgebraicField::enclosure(unsigned bits) const {
  // The result is the state after a fixed number of bisection steps from the
  // initial enclosure, so it does not depend on earlier requests.
  Rational target = pow2(-static_cast<long>(bits));
  Rational width = hi0_ - lo0_;
  unsigned steps = 0;
  while (width > target) {
    width /= 2;
    ++steps;
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.upper_bound(steps);
  Rational lo = lo0_, hi = hi0_;
  unsigned done = 0;
  if (it != cache_.begin()) {
    --it;
    done = it->first;
    lo = it->second.first;
    hi = it->second.second;
  }
  for (; done < steps && lo != hi; ++done) {
    Rational mid = (lo + hi) / 2;
    int s = squarefree_.sign_at(mid);
    if (s == 0) {
      // theta is dyadic; collapse onto it
      lo = hi = mid;
    } else if (s == sign_lo_) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  cache_[steps] = {lo, hi};
  return {lo, hi};
}

std::pair<Rational, Rational> AlgebraicField::evaluate(const std::vector<Rational>& a, unsigned bits) const {
  if (a.empty()) return {Rational(0), Rational(0)};
  auto enc = enclosure(bits);
  std::pair<Rational, Rational> v{a.back(), a.back()};
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    v = imul(v, enc);
    v.first += a[i];
    v.second += a[i];
  }
  return v;
}

bool AlgebraicField::is_zero(const std::vector<Rational>& a) const {
  Polynomial g = Polynomial::gcd(Polynomial(a), p_);
  if (g.degree() <= 0) return false;
  return g.count_roots(lo0_, hi0_) > 0;
}

int AlgebraicField::sign(const std::vector<Rational>& a, unsigned* rounds) const {
  if (a.empty()) return 0;
  if (a.size() == 1) return sgn(a[0]);
  if (quadratic_ && a.size() == 2) {
    if (rounds) *rounds = 0;
    // a0 + a1 theta = u + v sqrt(D)
    Rational u = a[0] - a[1] * half_p1_, v = a[1] * sigma_ / 2;
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    int cmp = ::cmp(Rational(u * u), Rational(v * v * disc_));
    return cmp > 0 ? su : cmp < 0 ? sv : 0;
  }
  std::size_t h = 0;
  for (const auto& c : a) h = std::max(h, height_bits(c));
  unsigned bits = static_cast<unsigned>(std::max<std::size_t>(64, 2 * h + 32));
  bool zero_tested = false;
  for (unsigned r = 0; r <= max_refinements_; ++r) {
    if (rounds) *rounds = r;
    auto v = evaluate(a, bits);
    if (v.first > 0) return 1;
    if (v.second < 0) return -1;
    if (!zero_tested) {
      zero_tested = true;
      if (is_zero(a)) return 0;
    }
    bits *= 2;
  }
  throw RefinementBudgetExceeded("sign undecided after refinement budget; check the defining polynomial");
}

std::vector<Rational> AlgebraicField::reduce(const Polynomial& a) const {
  auto r = (a % p_).coeffs();
  return r;
}

std::vector<Rational> AlgebraicField::multiply(const std::vector<Rational>& a,
                                               const std::vector<Rational>& b) const {
  return reduce(Polynomial(a) * Polynomial(b));
}

std::vector<Rational> AlgebraicField::inverse(const std::vector<Rational>& a) const {
  Polynomial modulus = p_;
  Polynomial pa(a);
  if (pa.is_zero()) throw DivisionByZero();
  while (true) {
    auto eg = Polynomial::ext_gcd(pa % modulus, modulus);
    if (eg.g.degree() == 0) return reduce(eg.s);
    // a shares the factor g with the modulus; theta is a root of exactly one
    // of g and modulus/g when squarefree, so decide which.
    if (eg.g.count_roots(lo0_, hi0_) > 0) throw DivisionByZero();
    modulus = modulus / eg.g;
  }
}

bool AlgebraicField::same_as(const AlgebraicField& other) const {
  if (this == &other) return true;
  if (!(p_.monic() == other.p_.monic())) return false;
  Rational lo = std::min(lo0_, other.lo0_), hi = std::max(hi0_, other.hi0_);
  if (std::max(lo0_, other.lo0_) > std::min(hi0_, other.hi0_)) return false;
  return p_.count_roots(lo, hi) == 1;
}

AlgebraicScalar::AlgebraicScalar(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) > field_->degree()) c_ = field_->reduce(Polynomial(std::move(c_)));
  trim(c_);
}

AlgebraicScalar AlgebraicScalar::generator(FieldPtr field) {
  return AlgebraicScalar(std::move(field), {Rational(0), Rational(1)});
}

}  // namespace schmidt
