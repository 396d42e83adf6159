#include "schmidt/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "schmidt/beta_shift.hpp"
#include "schmidt/models.hpp"

namespace schmidt {

// ---------------------------------------------------------------- codings

int sibling_compare(const MapModel& m, Symbol a, Symbol b, int parent_orientation) {
  if (a == b) return 0;
  int c;
  switch (m.kind()) {
    case ModelKind::IntegerBase:
    case ModelKind::Beta:
      c = a < b ? -1 : 1;
      break;
    case ModelKind::Gauss:
      c = a > b ? -1 : 1;
      break;
    default:
      c = m.inverse_branch(a).apply(Scalar(0)) < m.inverse_branch(b).apply(Scalar(0)) ? -1 : 1;
  }
  return c * parent_orientation;
}

IntervalCoding::IntervalCoding(const MapModel& m, const Cylinder& frame, const Interval& I)
    : m_(&m), frame_(&frame), I_(I), lo_(m, frame, I.lo, Tie::Left), hi_(m, frame, I.hi, Tie::Right) {}

std::size_t IntervalCoding::common(std::size_t limit) {
  std::size_t j = 0;
  for (; j < limit; ++j) {
    auto a = lo_.symbol(j), b = hi_.symbol(j);
    if (!a || !b || *a != *b) break;
  }
  return j;
}

// 1: w is on the wanted side of (or equal to a prefix of) the coding,
// 0: strictly on the wrong side, -1: the coding ends before deciding.
int IntervalCoding::side_ok(const Word& w, std::size_t from, PointCoder& pc, int want) {
  int o = frame_->orientation;
  for (std::size_t j = 0; j < from; ++j) o *= m_->branch_orientation(w[j]);
  for (std::size_t j = from; j < w.size(); ++j) {
    auto u = pc.symbol(j);
    if (!u) return -1;
    if (*u != w[j]) return sibling_compare(*m_, w[j], *u, o) * want > 0 ? 1 : 0;
    o *= m_->branch_orientation(w[j]);
  }
  return 1;
}

bool IntervalCoding::alive(std::size_t s, const Word& d) {
  const Word& fw = frame_->word;
  std::size_t f = fw.size(), n = d.size();
  for (std::size_t pos = s; pos < std::min(s + n, f); ++pos)
    if (fw[pos] != d[pos - s]) return false;
  if (s + n <= f) return true;
  std::size_t start = std::max(s, f) - f, doff = std::max(s, f) - s;
  if (common(start) < start) return true;
  Word w;
  w.reserve(start + n - doff);
  for (std::size_t j = 0; j < start; ++j) w.push_back(*lo_.symbol(j));
  w.insert(w.end(), d.begin() + static_cast<std::ptrdiff_t>(doff), d.end());
  int state = frame_->state;
  for (Symbol sym : w) {
    auto ns = m_->next_state(state, sym);
    if (!ns) return false;
    state = *ns;
  }
  int a = side_ok(w, start, lo_, 1), b = side_ok(w, start, hi_, -1);
  if (a == 0 || b == 0) return false;
  if (a == 1 && b == 1) return true;
  // an endpoint coding ended early; decide from the cylinder itself
  Cylinder c = *frame_;
  for (Symbol sym : w) c = child_cylinder(*m_, c, sym);
  return c.closure().meets(I_);
}

// ---------------------------------------------------------------- plan

int strategy_k(const MapModel& m, int* k_contraction, int* k_distortion) {
  int k = 1;
  while (!(contraction_bound(m, k - 1) < Scalar(Rational(1, 4)))) {
    if (++k > 100000) throw ModelError("g(k-1) < 1/4 never holds");
  }
  int kt = 0;
  if (m.kind() == ModelKind::Beta) {
    const auto& sys = static_cast<const BetaModel&>(m).system();
    long double cb = sys.distortion_constant().to_double(), b = sys.beta().to_double();
    kt = static_cast<int>(std::ceil(1.0L + 4.0L * cb * cb / std::log(b)));
  }
  if (k_contraction) *k_contraction = k;
  if (k_distortion) *k_distortion = kt;
  return std::max(k, kt);
}

MasterPlan master_plan(const MapModel& m, const Scalar& alpha, const Scalar& beta) {
  MasterPlan p;
  p.k = strategy_k(m, &p.k_contraction, &p.k_distortion);
  Scalar bound = pow(alpha * beta, 3);
  int mm = 0;
  while (!(contraction_bound(m, mm + 1) < bound)) {
    if (++mm > 1000000) throw ModelError("contraction function does not decay");
  }
  p.M = mm;
  p.K = p.k + p.M;
  p.c = Rational(1, 2 * p.K);
  p.n = minimal_block_size(p.c);
  return p;
}

GameConfig effective_config(const GameConfig& cfg, int m) {
  GameConfig out = cfg;
  out.beta = cfg.beta * pow(cfg.alpha * cfg.beta, m - 1);
  if (out.modified) out.modified->gamma0 = cfg.modified->gamma0 * pow(cfg.modified->alpha0 * cfg.modified->gamma0, m - 1);
  return out;
}

namespace {

Json word_json(const MapModel& m, const Word& w, std::size_t from = 0) {
  Json out = Json::array();
  for (std::size_t i = from; i < w.size(); ++i) {
    if (m.kind() == ModelKind::Pathological)
      out.push_back(m.symbol_name(w[i]));
    else
      out.push_back(w[i]);
  }
  return out;
}

// ---------------------------------------------------------------- Phase 2

struct TrapStep {
  Interval W;
  std::string mode;
  std::optional<Cylinder> trapped;
};

// Penalty of a candidate trap, compared lexicographically (smaller is better).
using FitScorer = std::function<std::vector<long>(const Interval& W)>;

class Trapper {
 public:
  Trapper(const MapModel& m, MasterOptions opt) : m_(m), opt_(opt) {}

  TrapStep step(const Cylinder& frame, int depth, const Interval& B, const Scalar& alpha, int /*turn*/,
                const FitScorer& score) const {
    Scalar len = alpha * B.length();
    if (auto f = best_fit(frame, depth, B, len, score)) return *f;
    TrapStep st = descend(enclosing(frame, depth, B), B, alpha);
    // the move may land inside one cylinder without having aimed for it
    auto c = cylinder_at(m_, frame, st.W.lo, depth, Tie::Right);
    if (c && c->closure().contains(st.W)) st.trapped = std::move(c);
    return st;
  }

 private:
  std::optional<TrapStep> best_fit(const Cylinder& frame, int depth, const Interval& B, const Scalar& len,
                                   const FitScorer& score) const {
    std::vector<Cylinder> level{frame};
    for (int d = 0; d < depth && !level.empty(); ++d) {
      std::vector<Cylinder> next;
      for (const auto& c : level) {
        auto q = children_meeting(m_, c, B, len);
        for (auto& ch : q.children)
          if (len < ch.length()) next.push_back(std::move(ch));
      }
      level = std::move(next);
    }
    std::optional<TrapStep> best;
    std::vector<long> best_score;
    Scalar best_len;
    for (auto& c : level) {
      Interval J = intersect(c.closure(), B);
      if (!(len < J.length())) continue;
      Interval W = place_within(J, len, J.center(), true, true);
      std::vector<long> sc = score ? score(W) : std::vector<long>{};
      bool better = !best || sc < best_score || (sc == best_score && best_len < J.length());
      if (better) {
        best = TrapStep{W, "fit", std::move(c)};
        best_score = std::move(sc);
        best_len = J.length();
      }
    }
    return best;
  }

  // Deepest cylinder below the frame, short of the trap generation, whose
  // closure holds B.
  Cylinder enclosing(const Cylinder& frame, int depth, const Interval& B) const {
    Cylinder E = frame;
    for (int g = 1; g < depth; ++g) {
      auto c = cylinder_at(m_, frame, B.lo, g, Tie::Right);
      if (!c || !c->closure().contains(B)) break;
      E = std::move(*c);
    }
    return E;
  }

  // One generation below E: move into a child when one has room, otherwise
  // keep away from the children's endpoints and accumulation points. Children
  // shorter than |W|/8 are not listed; the stretches they fill are avoided as
  // a whole when that leaves room, and ignored otherwise.
  TrapStep descend(const Cylinder& E, const Interval& B, const Scalar& alpha) const {
    Scalar len = alpha * B.length();
    auto q = children_meeting(m_, E, B, len / Scalar(8), opt_.endpoint_cap);
    if (q.truncated) return {place_within(B, len, B.center()), "center", std::nullopt};
    std::optional<Interval> room;
    for (const auto& ch : q.children) {
      Interval J = intersect(ch.closure(), B);
      if (len < J.length() && (!room || room->length() < J.length())) room = J;
    }
    if (room) return {place_within(*room, len, room->center(), true, true), "descend", std::nullopt};

    std::vector<Scalar> points = q.accumulation;
    for (const auto& ch : q.children) {
      points.push_back(ch.lo);
      points.push_back(ch.hi);
    }
    std::vector<Interval> regions;
    for (const auto& pt : points) regions.push_back({pt, pt});
    if (!q.complete) {
      Interval span = intersect(E.closure(), B);
      Scalar at = span.lo;
      for (const auto& ch : q.children) {
        if (at < ch.lo) regions.push_back({at, ch.lo});
        if (at < ch.hi) at = ch.hi;
      }
      if (at < span.hi) regions.push_back({at, span.hi});
    }
    Interval W = avoid_regions(B, regions, alpha);
    for (const auto& r : regions)
      if (!(W.hi < r.lo) && !(r.hi < W.lo)) return {avoid_finite_points(B, points, alpha), "endpoints", std::nullopt};
    return {W, "endpoints", std::nullopt};
  }

  const MapModel& m_;
  MasterOptions opt_;
};

// ---------------------------------------------------------------- master

class MasterWhite final : public WhiteStrategy {
 public:
  MasterWhite(ModelPtr m, Scalar x, const GameConfig& cfg, MasterOptions opt)
      : m_(std::move(m)), x_(std::move(x)), opt_(opt), trapper_(*m_, opt), frame_(root_cylinder(*m_)) {
    if (cfg.modified) {
      alpha_ = min(cfg.modified->alpha0, Scalar(Rational(1, 4)));
      beta_ = cfg.modified->gamma0;
    } else {
      alpha_ = cfg.alpha;
      beta_ = cfg.beta;
    }
    if (Scalar(Rational(1, 4)) < alpha_) throw ConfigError("alpha", "the master strategy needs alpha <= 1/4");
    if (!m_->contraction(0)) throw ConfigError("model", "the master strategy needs a contraction function g");
    plan_ = master_plan(*m_, alpha_, beta_);
    if (!encode(*m_, x_, static_cast<std::size_t>(2 * plan_.n)))
      throw ConfigError("target", "target has no expansion of the required length");
  }

  WhiteMove respond(const GameConfig&, const std::vector<RoundRecord>& history, const Interval& B) override {
    int round = static_cast<int>(history.size());
    if (b0_ >= 0) filter_blocks(B);
    WhiteMove mv = phase_one_ ? phase_one(B) : phase_two(B, round);
    if (b0_ >= 0) filter_blocks(mv.interval);
    return mv;
  }

 private:
  long block_of(long pos) const { return (pos - b0_) / plan_.n; }
  long block_start(long b) const { return b0_ + b * plan_.n; }

  std::vector<Word>& block(long b) {
    auto it = blocks_.find(b);
    if (it == blocks_.end()) it = blocks_.emplace(b, D0_).first;
    return it->second;
  }

  long count_alive(IntervalCoding& ic, long b) {
    long c = 0;
    for (const auto& d : block(b))
      if (ic.alive(static_cast<std::size_t>(block_start(b)), d)) ++c;
    return c;
  }

  // Blocks whose start is already pinned down by the interval's coding.
  std::vector<long> open_blocks(IntervalCoding& ic) {
    std::vector<long> out;
    long f = frame_.generation();
    for (long b = block_of(std::max<long>(f, b0_));; ++b) {
      long s = block_start(b);
      if (s > f && static_cast<long>(ic.common(static_cast<std::size_t>(s - f))) < s - f) break;
      out.push_back(b);
    }
    return out;
  }

  void filter_blocks(const Interval& I) {
    IntervalCoding ic(*m_, frame_, I);
    for (long b : open_blocks(ic)) {
      auto& D = block(b);
      std::erase_if(D, [&](const Word& d) { return !ic.alive(static_cast<std::size_t>(block_start(b)), d); });
    }
  }

  std::vector<long> fit_score(const Interval& W) {
    if (b0_ < 0) return {};
    IntervalCoding ic(*m_, frame_, W);
    long b = block_of(frame_.generation());
    return {count_alive(ic, b), count_alive(ic, b + 1)};
  }

  WhiteMove phase_one(const Interval& B) {
    Scalar blen = B.length();
    // k_i: deepest generation with a cylinder of length >= |B| meeting B
    std::vector<Cylinder> level{frame_};
    int ki = frame_.generation();
    for (;;) {
      std::vector<Cylinder> next;
      for (const auto& c : level) {
        auto q = children_meeting(*m_, c, B, blen);
        for (auto& ch : q.children)
          if (!(ch.length() < blen) && ch.closure().meets(B)) next.push_back(std::move(ch));
      }
      if (next.empty()) break;
      level = std::move(next);
      ++ki;
    }
    int p = ki + plan_.k;
    Scalar center = B.center();
    auto cprime = cylinder_at(*m_, frame_, center, p - frame_.generation(), Tie::Right);
    Scalar clo = cprime ? cprime->lo : center, chi = cprime ? cprime->hi : center;
    Scalar quarter = blen / Scalar(4);
    if (!(quarter < clo - B.lo) || !(quarter < B.hi - chi))
      throw Error("phase 1: a side of the central cylinder is not longer than |B|/4");
    Scalar len = alpha_ * blen;
    Interval wl{B.lo, B.lo + len}, wr{B.hi - len, B.hi};

    Json ann;
    ann["phase"] = 1;
    ann["i"] = i_;
    ann["k_i"] = ki;
    ann["p"] = p;
    ann["C_prime"] = cprime ? interval_to_json(cprime->closure()) : Json(nullptr);
    Side side = Side::Left;
    if (i_ == 0) {
      Json plan;
      plan["k"] = plan_.k;
      plan["M"] = plan_.M;
      plan["K"] = plan_.K;
      plan["c"] = to_string(plan_.c);
      plan["n"] = plan_.n;
      ann["plan"] = plan;
    } else {
      int prev_turns = phase2_turns_.back();
      int gap = ki - k_seq_.back() - plan_.k;
      Scalar g = contraction_bound(*m_, gap), bound = pow(alpha_ * beta_, prev_turns == 1 ? 2 : 3);
      Json gj;
      gj["m"] = gap;
      gj["phase2_turns"] = prev_turns;
      gj["exponent"] = prev_turns == 1 ? 2 : 3;
      gj["g_below_bound"] = g < bound;
      gj["g_at_least_bound"] = !(g < bound);
      ann["gap"] = gj;
    }
    if (b0_ >= 0) {
      long b = block_of(frame_.generation());
      IntervalCoding icl(*m_, frame_, wl), icr(*m_, frame_, wr);
      long before = static_cast<long>(block(b).size());
      long left = count_alive(icl, b), right = count_alive(icr, b);
      long decide_l = left, decide_r = right;
      if (before == 0 && block_start(b + 1) < p) {
        decide_l = count_alive(icl, b + 1);
        decide_r = count_alive(icr, b + 1);
      }
      side = decide_r < decide_l ? Side::Right : Side::Left;
      Json sj;
      sj["block"] = b;
      sj["before"] = before;
      sj["left"] = left;
      sj["right"] = right;
      sj["after"] = side == Side::Left ? left : right;
      ann["seq"] = sj;
    }
    ann["side"] = side == Side::Left ? "L" : "R";
    k_seq_.push_back(ki);
    phase_one_ = false;
    turn_ = 0;
    p_ = p;
    return {side == Side::Left ? wl : wr, ann};
  }

  WhiteMove phase_two(const Interval& B, int round) {
    if (++turn_ > opt_.phase2_budget) throw ForfeitSignal("phase 2 budget of " + std::to_string(opt_.phase2_budget) + " turns exceeded");
    int depth = p_ - frame_.generation();
    TrapStep st = trapper_.step(frame_, depth, B, alpha_, turn_, [this](const Interval& W) { return fit_score(W); });
    Json ann;
    ann["phase"] = 2;
    ann["i"] = i_;
    ann["turn"] = turn_;
    ann["mode"] = st.mode;
    if (st.trapped) {
      Json tj;
      tj["word"] = word_json(*m_, st.trapped->word, static_cast<std::size_t>(frame_.generation()));
      tj["cylinder"] = interval_to_json(st.trapped->closure());
      tj["j"] = round;
      frame_ = std::move(*st.trapped);
      phase2_turns_.push_back(turn_);
      if (i_ == 0) start_blocks();
      tj["complete_blocks_clean"] = finalize_blocks();
      if (i_ == 0) {
        tj["b0"] = b0_;
        tj["N"] = b0_ + 2 * plan_.n;
      }
      ann["trap"] = tj;
      ++i_;
      phase_one_ = true;
    }
    return {st.W, ann};
  }

  void start_blocks() {
    b0_ = frame_.generation();
    std::size_t N = static_cast<std::size_t>(b0_ + 2 * plan_.n);
    auto xc = encode(*m_, x_, N);
    if (!xc) throw ForfeitSignal("target has no expansion to depth " + std::to_string(N));
    Word window(xc->begin() + b0_, xc->end());
    auto ds = dangerous_words(window, plan_.n);
    D0_.assign(ds.begin(), ds.end());
  }

  bool finalize_blocks() {
    bool clean = true;
    long f = frame_.generation();
    for (auto it = blocks_.begin(); it != blocks_.end();) {
      if (block_start(it->first) + plan_.n <= f) {
        if (!it->second.empty()) clean = false;
        it = blocks_.erase(it);
      } else {
        ++it;
      }
    }
    return clean;
  }

  ModelPtr m_;
  Scalar x_;
  MasterOptions opt_;
  Trapper trapper_;
  Scalar alpha_, beta_;
  MasterPlan plan_;
  Cylinder frame_;
  bool phase_one_ = true;
  int i_ = 0, p_ = 0, turn_ = 0;
  std::vector<int> k_seq_, phase2_turns_;
  long b0_ = -1;
  std::vector<Word> D0_;
  std::map<long, std::vector<Word>> blocks_;
};

class TrapWhite final : public WhiteStrategy {
 public:
  TrapWhite(ModelPtr m, int step, MasterOptions opt)
      : m_(std::move(m)), step_(step), opt_(opt), trapper_(*m_, opt), frame_(root_cylinder(*m_)) {
    if (step < 1) throw ConfigError("step", "must be positive");
  }

  WhiteMove respond(const GameConfig& cfg, const std::vector<RoundRecord>& history, const Interval& B) override {
    if (++turn_ > opt_.phase2_budget) throw ForfeitSignal("phase 2 budget of " + std::to_string(opt_.phase2_budget) + " turns exceeded");
    Scalar alpha = cfg.modified ? min(cfg.modified->alpha0, Scalar(Rational(1, 4))) : cfg.alpha;
    TrapStep st = trapper_.step(frame_, step_, B, alpha, turn_, nullptr);
    Json ann;
    ann["phase"] = 2;
    ann["turn"] = turn_;
    ann["mode"] = st.mode;
    if (st.trapped) {
      Json tj;
      tj["word"] = word_json(*m_, st.trapped->word, static_cast<std::size_t>(frame_.generation()));
      tj["j"] = static_cast<int>(history.size());
      ann["trap"] = tj;
      frame_ = std::move(*st.trapped);
      turn_ = 0;
    }
    return {st.W, ann};
  }

 private:
  ModelPtr m_;
  int step_;
  MasterOptions opt_;
  Trapper trapper_;
  Cylinder frame_;
  int turn_ = 0;
};

class Interleaver final : public WhiteStrategy {
 public:
  explicit Interleaver(std::vector<std::unique_ptr<WhiteStrategy>> parts)
      : parts_(std::move(parts)), sub_(parts_.size()) {
    if (parts_.empty()) throw ConfigError("strategies", "need at least one strategy");
  }

  WhiteMove respond(const GameConfig& cfg, const std::vector<RoundRecord>& history, const Interval& B) override {
    std::size_t m = parts_.size(), r = history.size();
    if (r > 0) sub_[(r - 1) % m].push_back(history.back());
    std::size_t i = r % m;
    GameConfig eff = effective_config(cfg, static_cast<int>(m));
    WhiteMove mv;
    try {
      mv = parts_[i]->respond(eff, sub_[i], B);
    } catch (const ForfeitSignal& e) {
      throw ForfeitSignal("component " + std::to_string(i) + ": " + e.what());
    }
    Json ann;
    ann["component"] = i;
    ann["inner"] = std::move(mv.ann);
    mv.ann = std::move(ann);
    return mv;
  }

 private:
  std::vector<std::unique_ptr<WhiteStrategy>> parts_;
  std::vector<std::vector<RoundRecord>> sub_;
};

// ---------------------------------------------------------------- Black

Interval random_opening(std::mt19937_64& rng) {
  Rational u(Integer(std::to_string(rng() >> 31)), Integer(1) << 34);
  return {Scalar(u), Scalar(Rational(u + Rational(1, 2)))};
}

Scalar black_ratio(const GameConfig& cfg) { return cfg.modified ? cfg.modified->gamma0 : cfg.beta; }

class GreedyTracker final : public BlackStrategy {
 public:
  GreedyTracker(ModelPtr m, Scalar x, std::uint64_t seed)
      : m_(std::move(m)), x_(std::move(x)), rng_(seed), frame_(root_cylinder(*m_)), xc_(*m_, root_cylinder(*m_), x_, Tie::HalfOpen) {}

  Interval opening(const GameConfig&) override { return random_opening(rng_); }

  Interval respond(const GameConfig& cfg, const std::vector<RoundRecord>& history) override {
    const Interval& W = history.back().white;
    PointCoder lo(*m_, frame_, W.lo, Tie::Right), hi(*m_, frame_, W.hi, Tie::Left);
    for (std::size_t j = 0;; ++j) {
      auto a = lo.symbol(j), b = hi.symbol(j);
      if (!a || !b || *a != *b) break;
      frame_ = child_cylinder(*m_, frame_, *a);
      feed(*a);
    }
    Scalar len = black_ratio(cfg) * W.length();
    Scalar z = W.center();
    if (matched_ < pattern_.size() || extend_pattern()) {
      const Scalar& y = xc_.iterate(matched_);
      if (!(m_->domain_hi(frame_.state) < y)) z = frame_.chart.apply(y);
    }
    return place_within(W, len, z);
  }

 private:
  bool extend_pattern() {
    if (pattern_.size() >= kMaxPattern) return false;
    auto s = xc_.symbol(pattern_.size());
    if (!s) return false;
    pattern_.push_back(*s);
    std::size_t q = pattern_.size() - 1;
    if (q == 0) {
      fail_.push_back(0);
    } else {
      std::size_t k = fail_[q - 1];
      while (k > 0 && pattern_[k] != pattern_[q]) k = fail_[k - 1];
      if (pattern_[k] == pattern_[q]) ++k;
      fail_.push_back(k);
    }
    return true;
  }

  // KMP step over the committed coding.
  void feed(Symbol s) {
    for (;;) {
      if (matched_ == pattern_.size() && !extend_pattern()) {
        if (matched_ == 0) return;
        matched_ = fail_[matched_ - 1];
        continue;
      }
      if (pattern_[matched_] == s) {
        ++matched_;
        return;
      }
      if (matched_ == 0) return;
      matched_ = fail_[matched_ - 1];
    }
  }

  static constexpr std::size_t kMaxPattern = 1 << 14;
  ModelPtr m_;
  Scalar x_;
  std::mt19937_64 rng_;
  Cylinder frame_;
  PointCoder xc_;
  Word pattern_;
  std::vector<std::size_t> fail_;
  std::size_t matched_ = 0;
};

class RandomBlack final : public BlackStrategy {
 public:
  explicit RandomBlack(std::uint64_t seed) : rng_(seed) {}
  Interval opening(const GameConfig&) override { return random_opening(rng_); }
  Interval respond(const GameConfig& cfg, const std::vector<RoundRecord>& history) override {
    const Interval& W = history.back().white;
    Scalar len = black_ratio(cfg) * W.length();
    Scalar u(Rational(Integer(std::to_string(rng_() >> 32)), Integer(1) << 32));
    Scalar lo = W.lo + u * (W.length() - len);
    return {lo, lo + len};
  }

 private:
  std::mt19937_64 rng_;
};

class PathologicalBlack final : public BlackStrategy {
 public:
  PathologicalBlack(long i, std::uint64_t seed) : i_(i), rng_(seed) {
    if (i < 1) throw ConfigError("i", "must be at least 1");
  }
  Interval opening(const GameConfig&) override {
    path_ = {i_};
    return Pathological::part(path_);
  }
  Interval respond(const GameConfig& cfg, const std::vector<RoundRecord>& history) override {
    const Interval& W = history.back().white;
    Interval cur = Pathological::part(path_);
    Scalar w = cur.length() / Scalar(4 * i_);
    if (black_ratio(cfg) * W.length() != w) throw ForfeitSignal("pathological_black needs alpha*beta = 1/(4i)");
    std::vector<long> ok;
    for (long j = 0; j < 4 * i_; j += 2) {
      Scalar lo = cur.lo + w * Scalar(j);
      if (W.contains(Interval{lo, lo + w})) ok.push_back(j);
    }
    if (ok.empty()) throw ForfeitSignal("no undefined part inside White's interval");
    long j = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng_)];
    path_.push_back(j);
    return Pathological::part(path_);
  }

 private:
  long i_;
  std::mt19937_64 rng_;
  std::vector<long> path_;
};

}  // namespace

std::unique_ptr<WhiteStrategy> white_master_strategy(ModelPtr m, Scalar x, const GameConfig& cfg, MasterOptions opt) {
  return std::make_unique<MasterWhite>(std::move(m), std::move(x), cfg, opt);
}

std::unique_ptr<WhiteStrategy> trap_strategy(ModelPtr m, int step, MasterOptions opt) {
  return std::make_unique<TrapWhite>(std::move(m), step, opt);
}

std::unique_ptr<WhiteStrategy> interleave_strategies(std::vector<std::unique_ptr<WhiteStrategy>> parts) {
  return std::make_unique<Interleaver>(std::move(parts));
}

std::unique_ptr<BlackStrategy> greedy_tracker(ModelPtr m, Scalar x, std::uint64_t seed) {
  return std::make_unique<GreedyTracker>(std::move(m), std::move(x), seed);
}

std::unique_ptr<BlackStrategy> random_black(std::uint64_t seed) { return std::make_unique<RandomBlack>(seed); }

std::unique_ptr<BlackStrategy> pathological_black(long i, std::uint64_t seed) {
  return std::make_unique<PathologicalBlack>(i, seed);
}

}  // namespace schmidt
