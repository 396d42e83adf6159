#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "schmidt/polynomial.hpp"

namespace schmidt {

class AlgebraicField;
using FieldPtr = std::shared_ptr<const AlgebraicField>;

// Q(theta) where theta is the unique root of p inside an isolating enclosure.
// p may be reducible; elements are reduced modulo p and zero-testing goes
// through gcd(a, p), so no factorization is needed.
class AlgebraicField {
 public:
  static constexpr unsigned kDefaultRefinements = 64;

  static FieldPtr create(const Polynomial& p, const Rational& lo, const Rational& hi,
                         unsigned max_refinements = kDefaultRefinements);

  const Polynomial& polynomial() const { return p_; }
  int degree() const { return p_.degree(); }
  std::pair<Rational, Rational> initial_enclosure() const { return {lo0_, hi0_}; }
  unsigned max_refinements() const { return max_refinements_; }

  // Enclosure of theta of width at most 2^-bits. Cached per precision level;
  // safe to call concurrently.
  std::pair<Rational, Rational> enclosure(unsigned bits) const;

  // Interval of values of sum a_i theta^i evaluated over the enclosure at
  // the given precision.
  std::pair<Rational, Rational> evaluate(const std::vector<Rational>& a, unsigned bits) const;

  // Sign of sum a_i theta^i. `rounds` (if given) receives the number of
  // precision doublings used. Throws RefinementBudgetExceeded.
  int sign(const std::vector<Rational>& a, unsigned* rounds = nullptr) const;
  bool is_zero(const std::vector<Rational>& a) const;

  std::vector<Rational> reduce(const Polynomial& a) const;
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  std::vector<Rational> inverse(const std::vector<Rational>& a) const;

  // Same polynomial and the same root.
  bool same_as(const AlgebraicField& other) const;

 private:
  AlgebraicField(Polynomial p, Rational lo, Rational hi, unsigned max_refinements);

  Polynomial p_;
  Polynomial squarefree_;
  Rational lo0_, hi0_;
  int sign_lo_;
  unsigned max_refinements_;
  // Quadratic p with distinct roots: theta = (-p1 + sigma sqrt(D)) / 2 for
  // monic x^2 + p1 x + p0, so signs are decided exactly.
  bool quadratic_ = false;
  Rational half_p1_, disc_;
  int sigma_ = 0;

  mutable std::mutex mu_;
  mutable std::map<unsigned, std::pair<Rational, Rational>> cache_;
};

class AlgebraicScalar {
 public:
  AlgebraicScalar(FieldPtr field, std::vector<Rational> coeffs);
  static AlgebraicScalar generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

 private:
  FieldPtr field_;
  std::vector<Rational> c_;
};

}  // namespace schmidt
