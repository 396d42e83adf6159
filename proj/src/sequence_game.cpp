#include <algorithm>

#include "schmidt/error.hpp"
#include "schmidt/strategies.hpp"

namespace schmidt {

int minimal_block_size(const Rational& c) {
  if (c <= 0) throw ConfigError("c", "must be positive");
  unsigned long p = c.get_num().get_ui(), q = c.get_den().get_ui();
  if (!c.get_num().fits_ulong_p() || !c.get_den().fits_ulong_p()) throw ConfigError("c", "numerator and denominator must fit in 64 bits");
  for (unsigned long n = 1;; ++n) {
    Integer lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, p * n);
    mpz_ui_pow_ui(rhs.get_mpz_t(), n + 1, q);
    if (lhs > rhs) return static_cast<int>(n);
  }
}

SequenceGamePlan plan_block_size(const Rational& c, int b0) {
  SequenceGamePlan plan;
  plan.c = c;
  plan.n = minimal_block_size(c);
  plan.b0 = b0;
  plan.N = b0 + 2 * plan.n;
  return plan;
}

std::set<Word> dangerous_words(const Word& window, int n) {
  std::set<Word> out;
  if (n <= 0) return out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= window.size(); ++i)
    out.emplace(window.begin() + static_cast<std::ptrdiff_t>(i), window.begin() + static_cast<std::ptrdiff_t>(i) + n);
  return out;
}

Side sequence_game_choose(SequenceGamePlan& plan, const std::set<Word>& left, const std::set<Word>& right) {
  std::set<Word> l, r;
  for (const auto& w : plan.dangerous) {
    if (left.count(w)) l.insert(w);
    if (right.count(w)) r.insert(w);
  }
  if (r.size() < l.size()) {
    plan.dangerous = std::move(r);
    return Side::Right;
  }
  plan.dangerous = std::move(l);
  return Side::Left;
}

Interval avoid_finite_points(const Interval& B, const std::vector<Scalar>& points, const Scalar& alpha) {
  std::vector<Interval> regions;
  regions.reserve(points.size());
  for (const auto& p : points) regions.push_back({p, p});
  return avoid_regions(B, std::move(regions), alpha);
}

Interval avoid_regions(const Interval& B, std::vector<Interval> regions, const Scalar& alpha) {
  Scalar len = alpha * B.length();
  std::erase_if(regions, [&](const Interval& r) { return r.hi < B.lo || B.hi < r.lo; });
  for (auto& r : regions) r = intersect(r, B);
  std::sort(regions.begin(), regions.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (auto& r : regions) {
    if (!merged.empty() && !(merged.back().hi < r.lo)) {
      if (merged.back().hi < r.hi) merged.back().hi = r.hi;
    } else {
      merged.push_back(std::move(r));
    }
  }
  Interval flush_left{B.lo, B.lo + len}, flush_right{B.hi - len, B.hi};
  if (merged.empty()) return flush_left;

  std::optional<Interval> best;
  Scalar best_dist;
  auto offer = [&](Interval w, Scalar d) {
    if (!best || best_dist < d) {
      best = std::move(w);
      best_dist = std::move(d);
    }
  };
  offer(flush_left, merged.front().lo - B.lo - len);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    Scalar gap = merged[i + 1].lo - merged[i].hi;
    Scalar mid = (merged[i].hi + merged[i + 1].lo) / Scalar(2);
    Scalar lo = mid - len / Scalar(2);
    // keep the candidate inside B even when the gap is narrower than len
    if (lo < B.lo) lo = B.lo;
    if (B.hi < lo + len) lo = B.hi - len;
    offer({lo, lo + len}, (gap - len) / Scalar(2));
  }
  offer(flush_right, B.hi - merged.back().hi - len);
  return *best;
}

}  // namespace schmidt
