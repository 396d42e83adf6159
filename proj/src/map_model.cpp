#include "schmidt/map_model.hpp"

#include <algorithm>
#include <random>

#include "schmidt/error.hpp"

namespace schmidt {

Symbol MapModel::parse_symbol(const std::string& s) const {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw UnknownSymbol("bad symbol '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UnknownSymbol("bad symbol '" + s + "'");
  }
}

Interval MapModel::branch_closure(int state, Symbol s) const {
  auto ns = next_state(state, s);
  if (!ns) throw InadmissibleWord("symbol " + symbol_name(s) + " not allowed here");
  Mobius a = inverse_branch(s);
  Scalar p = a.apply(Scalar(0)), q = a.apply(domain_hi(*ns));
  return p < q ? Interval{p, q} : Interval{q, p};
}

Cylinder root_cylinder(const MapModel& m) {
  Cylinder c;
  c.state = m.start_state();
  c.lo = Scalar(0);
  c.hi = m.domain_hi(c.state);
  return c;
}

Cylinder child_cylinder(const MapModel& m, const Cylinder& parent, Symbol s) {
  auto ns = m.next_state(parent.state, s);
  if (!ns) throw InadmissibleWord("symbol " + m.symbol_name(s) + " cannot follow the word");
  Cylinder c;
  c.word.reserve(parent.word.size() + 1);
  c.word = parent.word;
  c.word.push_back(s);
  c.chart = parent.chart.compose(m.inverse_branch(s));
  c.state = *ns;
  c.orientation = parent.orientation * m.branch_orientation(s);
  Scalar p = c.chart.apply(Scalar(0)), q = c.chart.apply(m.domain_hi(c.state));
  if (c.orientation > 0) {
    c.lo = std::move(p);
    c.hi = std::move(q);
  } else {
    c.lo = std::move(q);
    c.hi = std::move(p);
  }
  return c;
}

Cylinder cylinder(const MapModel& m, const Word& w) {
  Cylinder c = root_cylinder(m);
  for (Symbol s : w) c = child_cylinder(m, c, s);
  return c;
}

std::optional<Symbol> branch_at(const MapModel& m, int state, const Scalar& y, Tie tie, int orientation) {
  BranchQuery q = m.branches_meeting(state, y, y, Scalar(0));
  if (q.symbols.empty()) return std::nullopt;
  if (q.symbols.size() == 1) {
    Symbol s = q.symbols[0];
    if (tie == Tie::HalfOpen) {
      Interval c = m.branch_closure(state, s);
      if (m.half_open_upper() ? y == c.hi : y == c.lo) return std::nullopt;
    }
    return s;
  }
  Symbol lower = q.symbols.front(), upper = q.symbols.back();
  switch (tie) {
    case Tie::HalfOpen:
      return m.half_open_upper() ? upper : lower;
    case Tie::Left:
      return orientation > 0 ? lower : upper;
    case Tie::Right:
      return orientation > 0 ? upper : lower;
  }
  return std::nullopt;
}

PointCoder::PointCoder(const MapModel& m, const Cylinder& frame, const Scalar& x, Tie tie)
    : m_(&m), tie_(tie), state_(frame.state), orientation_(frame.orientation) {
  iterates_.push_back(frame.chart.inverse().apply(x));
}

bool PointCoder::extend() {
  if (dead_) return false;
  const Scalar& y = iterates_.back();
  auto s = branch_at(*m_, state_, y, tie_, orientation_);
  if (!s) {
    dead_ = true;
    return false;
  }
  auto ns = m_->next_state(state_, *s);
  if (!ns) {
    dead_ = true;
    return false;
  }
  Scalar next = m_->forward(*s, y);
  symbols_.push_back(*s);
  iterates_.push_back(std::move(next));
  state_ = *ns;
  orientation_ *= m_->branch_orientation(*s);
  return true;
}

std::optional<Symbol> PointCoder::symbol(std::size_t i) {
  while (symbols_.size() <= i)
    if (!extend()) return std::nullopt;
  return symbols_[i];
}

const Scalar& PointCoder::iterate(std::size_t i) {
  while (iterates_.size() <= i)
    if (!extend()) throw ModelError("iterate beyond the end of the expansion");
  return iterates_[i];
}

std::optional<Word> encode(const MapModel& m, const Scalar& x, std::size_t n) {
  PointCoder pc(m, root_cylinder(m), x, Tie::HalfOpen);
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    auto s = pc.symbol(i);
    if (!s) return std::nullopt;
    w.push_back(*s);
  }
  return w;
}

std::optional<Cylinder> cylinder_at(const MapModel& m, const Cylinder& frame, const Scalar& p, int gen, Tie tie) {
  PointCoder pc(m, frame, p, tie);
  Cylinder c = frame;
  for (int i = 0; i < gen; ++i) {
    auto s = pc.symbol(static_cast<std::size_t>(i));
    if (!s) return std::nullopt;
    c = child_cylinder(m, c, *s);
  }
  return c;
}

ChildQuery children_meeting(const MapModel& m, const Cylinder& parent, const Interval& I, const Scalar& min_length,
                            std::size_t max_children) {
  ChildQuery out;
  if (!parent.closure().meets(I)) return out;
  Interval J = intersect(parent.closure(), I);
  Mobius inv = parent.chart.inverse();
  Scalar a = inv.apply(J.lo), b = inv.apply(J.hi);
  if (b < a) std::swap(a, b);
  Scalar chart_min(0);
  if (min_length.sign() > 0) {
    Scalar d = max(parent.chart.derivative_abs(Scalar(0)), parent.chart.derivative_abs(m.domain_hi(parent.state)));
    chart_min = min_length / d;
  }
  BranchQuery q = m.branches_meeting(parent.state, a, b, chart_min);
  out.complete = q.complete;
  if (q.symbols.size() > max_children) {
    out.truncated = true;
    return out;
  }
  for (Symbol s : q.symbols) out.children.push_back(child_cylinder(m, parent, s));
  if (parent.orientation < 0) std::reverse(out.children.begin(), out.children.end());
  for (const auto& y : q.accumulation) out.accumulation.push_back(parent.chart.apply(y));
  std::sort(out.accumulation.begin(), out.accumulation.end());
  return out;
}

Scalar contraction_bound(const MapModel& m, int mth) {
  auto g = m.contraction(mth);
  if (!g) throw ModelError("model " + m.name() + " has no contraction function");
  return *g;
}

EndpointsResult endpoints_in(const MapModel& m, const Interval& I, int k) {
  if (m.kind() == ModelKind::Pathological) throw ModelError("endpoints_in is undefined for the pathological model");
  EndpointsResult out;
  std::vector<Cylinder> level{root_cylinder(m)};
  for (int j = 0; j < k; ++j) {
    std::vector<Cylinder> next;
    bool last = j + 1 == k;
    for (const auto& node : level) {
      ChildQuery q = children_meeting(m, node, I, Scalar(0));
      for (auto& a : q.accumulation)
        if (I.contains(a)) out.accumulation.push_back(a);
      std::optional<Symbol> from;
      if (!q.complete) {
        for (const auto& c : q.children)
          if (I.contains(c.chart.apply(Scalar(0))) && (!from || c.word.back() < *from)) from = c.word.back();
        if (from) out.tails.push_back({node.word, *from});
      }
      for (auto& c : q.children) {
        if (last && from && c.word.back() >= *from) continue;
        next.push_back(std::move(c));
      }
    }
    level = std::move(next);
  }
  for (const auto& c : level) {
    Scalar p = c.chart.apply(Scalar(0));
    if (I.contains(p)) out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  std::sort(out.accumulation.begin(), out.accumulation.end());
  out.accumulation.erase(std::unique(out.accumulation.begin(), out.accumulation.end()), out.accumulation.end());
  return out;
}

namespace {

Symbol sample_symbol(const MapModel& m, int state, std::mt19937_64& rng) {
  if (m.kind() == ModelKind::Gauss) {
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng) != 0) return std::uniform_int_distribution<Symbol>(1, 20)(rng);
    std::uniform_int_distribution<int> e(1, 40);
    return std::uniform_int_distribution<Symbol>(1, Symbol(1) << e(rng))(rng);
  }
  Scalar floor_len = m.finite_alphabet() ? Scalar(0) : Scalar(Rational(1, 6561));
  BranchQuery q = m.branches_meeting(state, Scalar(0), m.domain_hi(state), floor_len);
  if (q.symbols.empty()) throw ModelError("state without branches");
  std::uniform_int_distribution<std::size_t> pick(0, q.symbols.size() - 1);
  return q.symbols[pick(rng)];
}

}  // namespace

ConditionReport check_condition_ii(const MapModel& m, int n, int mext, std::size_t samples, std::uint64_t seed) {
  Scalar g = contraction_bound(m, mext);
  ConditionReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Cylinder c = root_cylinder(m);
    for (int j = 0; j < n; ++j) c = child_cylinder(m, c, sample_symbol(m, c.state, rng));
    Cylinder d = c;
    for (int j = 0; j < mext; ++j) d = child_cylinder(m, d, sample_symbol(m, d.state, rng));
    Scalar ratio = d.length() / c.length();
    ++rep.checked;
    if (rep.worst_word.empty() || rep.worst_ratio < ratio) {
      rep.worst_ratio = ratio;
      rep.worst_word = d.word;
    }
    if (g < ratio) {
      rep.ok = false;
      rep.worst_ratio = ratio;
      rep.worst_word = d.word;
      return rep;
    }
  }
  return rep;
}

}  // namespace schmidt
