#include "schmidt/verification.hpp"

#include <algorithm>
#include <map>

#include "schmidt/models.hpp"

namespace schmidt {

namespace {

// Cylinder below `frame` whose word is the common prefix of the codings of
// I.lo and I.hi under the given ties.
Cylinder common_cylinder(const MapModel& m, const Cylinder& frame, const Interval& I, Tie lo_tie, Tie hi_tie,
                         std::size_t limit) {
  PointCoder lo(m, frame, I.lo, lo_tie), hi(m, frame, I.hi, hi_tie);
  Cylinder c = frame;
  for (std::size_t j = 0; c.word.size() < limit; ++j) {
    auto a = lo.symbol(j), b = hi.symbol(j);
    if (!a || !b || *a != *b) break;
    c = child_cylinder(m, c, *a);
  }
  return c;
}

Scalar distance(const Scalar& x, const Interval& I) {
  if (x < I.lo) return I.lo - x;
  if (I.hi < x) return x - I.hi;
  return Scalar(0);
}

Interval chart_image(const Mobius& chart, const Scalar& dhi) {
  Scalar a = chart.apply(Scalar(0)), b = chart.apply(dhi);
  if (b < a) std::swap(a, b);
  return {a, b};
}

// A rational strictly inside I near lo + t (hi - lo).
Rational interior_rational(const Interval& I, const Rational& t) {
  Scalar target = I.lo + I.length() * Scalar(t);
  for (unsigned bits = 64;; bits *= 2) {
    Rational q = target.approx(bits);
    if (I.contains_in_interior(Scalar(q))) return q;
    if (bits > (1u << 20)) throw Error("cannot find a rational sample inside the enclosure");
  }
}

}  // namespace

Cylinder enclosing_cylinder(const MapModel& m, const Cylinder& frame, const Interval& I, std::size_t limit) {
  return common_cylinder(m, frame, I, Tie::Right, Tie::Left, limit);
}

// ---------------------------------------------------------------- certificates

Orbit orbit(const MapModel& m, const Scalar& y, std::size_t steps) {
  Orbit out;
  Cylinder root = root_cylinder(m);
  if (!root.closure().contains(y)) throw Error("orbit: point outside the unit interval");
  PointCoder pc(m, root, y, Tie::HalfOpen);
  out.points.push_back(y);
  for (std::size_t i = 0; i < steps; ++i) {
    if (!pc.symbol(i)) {
      out.truncated = true;
      break;
    }
    out.points.push_back(pc.iterate(i + 1));
  }
  return out;
}

AvoidanceCertificate certify_avoidance(const MapModel& m, const GameTranscript& t, const Scalar& x, int N,
                                       const BlockStructure& blocks) {
  if (N < 1) throw ConfigError("N", "must be positive");
  if (blocks.n < 1 || blocks.b0 < 0) throw ConfigError("blocks", "b0 must be non-negative and n positive");
  AvoidanceCertificate cert;
  cert.model = m.name();
  auto xc = encode(m, x, static_cast<std::size_t>(std::max<long>(N, blocks.b0 + 2L * blocks.n)));
  if (!xc) throw CannotCertify("the target has no expansion of length " + std::to_string(N));
  cert.target_prefix.assign(xc->begin(), xc->begin() + N);

  Cylinder root = root_cylinder(m);
  Cylinder L = enclosing_cylinder(m, root, t.limit_enclosure, std::size_t{1} << 20);
  cert.coding = L.word;
  cert.L = L.word.size();
  if (cert.L < static_cast<std::size_t>(N))
    throw CannotCertify("coding of the limit enclosure has length " + std::to_string(cert.L) + " < N = " +
                        std::to_string(N));
  auto hit = std::search(cert.coding.begin(), cert.coding.end(), cert.target_prefix.begin(), cert.target_prefix.end());
  if (hit != cert.coding.end())
    throw CannotCertify("the target prefix occurs at position " + std::to_string(hit - cert.coding.begin()));

  Word window(xc->begin() + blocks.b0, xc->begin() + blocks.b0 + 2 * blocks.n);
  auto D0 = dangerous_words(window, blocks.n);
  for (long b = 0;; ++b) {
    std::size_t s = static_cast<std::size_t>(blocks.b0 + b * blocks.n), e = s + static_cast<std::size_t>(blocks.n);
    if (e > cert.L) break;
    Word w(cert.coding.begin() + static_cast<std::ptrdiff_t>(s), cert.coding.begin() + static_cast<std::ptrdiff_t>(e));
    if (D0.count(w)) throw CannotCertify("block " + std::to_string(b) + " carries a factor of the target");
    ++cert.blocks_checked;
  }
  if (cert.blocks_checked == 0) throw CannotCertify("no complete block");

  // windows y_{k+1}..y_{k+N}: slide the chart instead of rebuilding it
  std::size_t windows = cert.L - static_cast<std::size_t>(N) + 1;
  Word first(cert.coding.begin(), cert.coding.begin() + N);
  Cylinder c = cylinder(m, first);
  Mobius chart = c.chart;
  for (std::size_t k = 0; k < windows; ++k) {
    if (k > 0) {
      chart = m.inverse_branch(cert.coding[k - 1]).inverse().compose(chart).compose(
          m.inverse_branch(cert.coding[k + static_cast<std::size_t>(N) - 1]));
    }
    int state = m.start_state();
    for (std::size_t j = k; j < k + static_cast<std::size_t>(N); ++j) {
      auto ns = m.next_state(state, cert.coding[j]);
      if (!ns) throw Error("limit coding is not admissible");
      state = *ns;
    }
    Scalar d = distance(x, chart_image(chart, m.domain_hi(state)));
    if (d.sign() == 0) throw CannotCertify("the target lies on the closure of window " + std::to_string(k));
    if (k == 0 || d < cert.epsilon) cert.epsilon = d;
  }

  Scalar slack = cert.epsilon * Scalar(Rational(1) - pow2(-20));
  std::size_t steps = std::min<std::size_t>(200, cert.L - static_cast<std::size_t>(N));
  for (int j = 1; j <= 3; ++j) {
    Scalar y(interior_rational(t.limit_enclosure, Rational(j, 4)));
    Orbit o = orbit(m, y, steps);
    for (const auto& z : o.points) {
      if (abs(z - x) < slack) throw Error("certificate check failed: an orbit point comes within epsilon of the target");
      ++cert.steps_checked;
    }
    ++cert.samples_checked;
  }
  return cert;
}

// ---------------------------------------------------------------- audit

namespace {

Json word_json(const MapModel& m, const Word& w, std::size_t from) {
  Json out = Json::array();
  for (std::size_t i = from; i < w.size(); ++i) {
    if (m.kind() == ModelKind::Pathological)
      out.push_back(m.symbol_name(w[i]));
    else
      out.push_back(w[i]);
  }
  return out;
}

// Dangerous-word liveness for one interval, decided from cylinders.
class Liveness {
 public:
  Liveness(const MapModel& m, const Cylinder& frame, const Interval& I, std::size_t limit)
      : m_(m), I_(I), common_(common_cylinder(m, frame, I, Tie::Left, Tie::Right, limit)) {}

  bool alive(std::size_t s, const Word& d) const {
    const Word& cw = common_.word;
    std::size_t c = cw.size(), n = d.size();
    if (c < s) return true;
    for (std::size_t pos = s; pos < std::min(c, s + n); ++pos)
      if (cw[pos] != d[pos - s]) return false;
    if (c >= s + n) return true;
    Cylinder cyl = common_;
    bool inside = false;
    for (std::size_t j = c - s; j < n; ++j) {
      if (inside) {
        auto ns = m_.next_state(cyl.state, d[j]);
        if (!ns) return false;
        cyl.state = *ns;
        continue;
      }
      if (!m_.next_state(cyl.state, d[j])) return false;
      cyl = child_cylinder(m_, cyl, d[j]);
      if (!cyl.closure().meets(I_)) return false;
      inside = I_.contains(cyl.closure());
    }
    return true;
  }

  long count(std::size_t s, const std::vector<Word>& D) const {
    long k = 0;
    for (const auto& d : D)
      if (alive(s, d)) ++k;
    return k;
  }

 private:
  const MapModel& m_;
  Interval I_;
  Cylinder common_;
};

// Deepest generation with a cylinder of length >= |B| meeting B. Such a
// cylinder contains an endpoint of B in its closure.
int audit_ki(const MapModel& m, const Cylinder& frame, const Interval& B) {
  Scalar len = B.length();
  int best = frame.generation();
  for (const Scalar* pt : {&B.lo, &B.hi}) {
    for (Tie tie : {Tie::Left, Tie::Right}) {
      PointCoder pc(m, frame, *pt, tie);
      Cylinder c = frame;
      for (std::size_t j = 0;; ++j) {
        auto s = pc.symbol(j);
        if (!s) break;
        Cylinder ch = child_cylinder(m, c, *s);
        if (ch.length() < len) break;
        c = std::move(ch);
      }
      best = std::max(best, c.generation());
    }
  }
  return best;
}

}  // namespace

AuditReport transcript_audit(const MapModel& m, const Scalar& x, const GameConfig& cfg, const GameTranscript& t) {
  AuditReport rep;
  Scalar alpha = cfg.modified ? min(cfg.modified->alpha0, Scalar(Rational(1, 4))) : cfg.alpha;
  Scalar beta = cfg.modified ? cfg.modified->gamma0 : cfg.beta;
  rep.plan = master_plan(m, alpha, beta);
  const MasterPlan& plan = rep.plan;
  const auto& R = t.rounds;

  auto fail = [&](long round, const std::string& check, const std::string& msg) {
    rep.failures.push_back({round, check, msg});
  };
  auto expect = [&](bool ok, long round, const std::string& check, const std::string& msg) {
    if (!ok) fail(round, check, msg);
    return ok;
  };

  for (std::size_t pos = 0; pos < R.size(); ++pos) {
    std::optional<Interval> outer;
    if (pos > 0) outer = R[pos - 1].white;
    if (auto v = validate_move(cfg, outer, R[pos].black, Role::Black)) fail(R[pos].index, "nesting", v->message);
    if (auto v = validate_move(cfg, R[pos].black, R[pos].white, Role::White)) fail(R[pos].index, "nesting", v->message);
  }

  Cylinder frame = root_cylinder(m);
  bool phase_one = true;
  int i = 0, p = 0, turn = 0;
  std::vector<int> k_seq, turns;
  std::vector<Word> D0;
  std::map<long, long> density;  // block -> Phase 1 turns deciding in it
  long n = plan.n;
  auto block_of = [&](long pos) { return (pos - rep.b0) / n; };
  auto block_start = [&](long b) { return rep.b0 + b * n; };
  long blocks_done = 0;

  for (std::size_t pos = 0; pos < R.size(); ++pos) {
    const RoundRecord& r = R[pos];
    const Json& ann = r.ann;
    long idx = r.index;
    const Interval& B = r.black;
    const Interval& W = r.white;
    if (!ann.is_object() || !ann.contains("phase")) {
      fail(idx, "structure", "missing annotation");
      break;
    }
    if (phase_one) {
      if (!expect(ann["phase"] == 1 && ann.value("i", -1) == i, idx, "structure",
                  "expected Phase 1 of step " + std::to_string(i)))
        break;
      int ki = audit_ki(m, frame, B);
      p = ki + plan.k;
      expect(ann["k_i"] == ki, idx, "k_i", "annotated " + ann["k_i"].dump() + ", recomputed " + std::to_string(ki));
      expect(ann["p"] == p, idx, "k_i", "annotated p " + ann["p"].dump() + ", recomputed " + std::to_string(p));
      auto cprime = cylinder_at(m, frame, B.center(), p - frame.generation(), Tie::Right);
      Scalar blen = B.length(), len = alpha * blen;
      Interval wl{B.lo, B.lo + len}, wr{B.hi - len, B.hi};
      // a centre whose coding ends before generation p stands for itself
      Scalar centre = B.center();
      Scalar clo = cprime ? cprime->lo : centre, chi = cprime ? cprime->hi : centre;
      expect(ann["C_prime"] == (cprime ? interval_to_json(cprime->closure()) : Json(nullptr)), idx,
             "central-cylinder", "C' differs");
      Scalar quarter = blen / Scalar(4);
      expect(quarter < clo - B.lo && quarter < B.hi - chi, idx, "central-cylinder",
             "a side of C' is not longer than |B|/4");
      expect(wl.hi <= clo && chi <= wr.lo, idx, "central-cylinder", "the end intervals meet C'");
      if (i == 0) {
        const Json& pj = ann.contains("plan") ? ann["plan"] : Json();
        expect(pj.is_object() && pj["k"] == plan.k && pj["M"] == plan.M && pj["K"] == plan.K &&
                   pj["c"] == to_string(plan.c) && pj["n"] == plan.n,
               idx, "plan", "annotated plan differs from the recomputed one");
      } else {
        int gap = ki - k_seq.back() - plan.k;
        int e = turns.back() == 1 ? 2 : 3;
        rep.K_observed = std::max(rep.K_observed, ki - k_seq.back());
        expect(ki - k_seq.back() <= plan.K, idx, "gap-K",
               "k_{i+1} - k_i = " + std::to_string(ki - k_seq.back()) + " > K = " + std::to_string(plan.K));
        if (expect(gap >= 0, idx, "gap-bound", "k_{i+1} - k_i < k")) {
          bool below = contraction_bound(m, gap) < pow(alpha * beta, e);
          if (below) rep.gap_bound_derived_ok = false;
          else rep.gap_bound_ok = false;
          expect(!below, idx, "gap-bound", "g(" + std::to_string(gap) + ") < (alpha beta)^" + std::to_string(e));
          const Json& gj = ann.contains("gap") ? ann["gap"] : Json();
          expect(gj.is_object() && gj["m"] == gap && gj["phase2_turns"] == turns.back() && gj["exponent"] == e &&
                     gj["g_below_bound"] == below && gj["g_at_least_bound"] == !below,
                 idx, "gap-bound", "gap annotation differs");
        }
      }
      Side side = Side::Left;
      if (rep.b0 >= 0) {
        long b = block_of(frame.generation());
        std::size_t limit = static_cast<std::size_t>(block_start(b + 2));
        Liveness lb(m, frame, B, limit), ll(m, frame, wl, limit), lr(m, frame, wr, limit);
        std::size_t s = static_cast<std::size_t>(block_start(b));
        long before = lb.count(s, D0), left = ll.count(s, D0), right = lr.count(s, D0);
        long dl = left, dr = right;
        if (before == 0 && block_start(b + 1) < p) {
          std::size_t s1 = static_cast<std::size_t>(block_start(b + 1));
          dl = ll.count(s1, D0);
          dr = lr.count(s1, D0);
        }
        side = dr < dl ? Side::Right : Side::Left;
        long after = side == Side::Left ? left : right;
        const Json& sj = ann.contains("seq") ? ann["seq"] : Json();
        expect(sj.is_object() && sj["block"] == b && sj["before"] == before && sj["left"] == left &&
                   sj["right"] == right && sj["after"] == after,
               idx, "sequence", "dangerous-word counts differ (recomputed before " + std::to_string(before) +
                                    ", left " + std::to_string(left) + ", right " + std::to_string(right) + ")");
        expect(2 * after <= before + 1 || before == 0, idx, "halving",
               std::to_string(after) + " of " + std::to_string(before) + " dangerous words survive");
        ++density[b];
        ++rep.sequence_turns;
      }
      const char* sname = side == Side::Left ? "L" : "R";
      expect(ann["side"] == sname, idx, "side", std::string("expected side ") + sname);
      expect(W == (side == Side::Left ? wl : wr), idx, "side", "W is not the chosen end interval");
      k_seq.push_back(ki);
      phase_one = false;
      turn = 0;
      continue;
    }

    ++turn;
    if (!expect(ann["phase"] == 2 && ann.value("i", -1) == i && ann.value("turn", -1) == turn, idx, "structure",
                "expected Phase 2 turn " + std::to_string(turn) + " of step " + std::to_string(i)))
      break;
    Cylinder cyl = enclosing_cylinder(m, frame, W, static_cast<std::size_t>(p));
    bool trapped = cyl.generation() == p;
    if (!expect(trapped == ann.contains("trap"), idx, "trap-round",
                trapped ? "W lies in a generation-p cylinder but no trap is annotated"
                        : "trap annotated but W is not inside a generation-p cylinder"))
      break;
    if (!trapped) continue;
    const Json& tj = ann["trap"];
    expect(tj["word"] == word_json(m, cyl.word, static_cast<std::size_t>(frame.generation())), idx, "trap-round",
           "trap word differs");
    expect(tj["cylinder"] == interval_to_json(cyl.closure()), idx, "trap-round", "trap cylinder differs");
    expect(tj["j"] == static_cast<long>(pos), idx, "trap-round", "trap round index differs");
    if (turn > 1 && pos >= 2)
      expect(cyl.length() <= R[pos - 2].black.length(), idx, "trap-size", "|C| > |B_{j-2}|");
    frame = std::move(cyl);
    turns.push_back(turn);
    if (i == 0) {
      rep.b0 = p;
      rep.N = static_cast<int>(p + 2 * n);
      auto xc = encode(m, x, static_cast<std::size_t>(rep.N));
      if (!xc) {
        fail(idx, "blocks", "the target has no expansion to depth N");
        break;
      }
      auto ds = dangerous_words(Word(xc->begin() + p, xc->end()), plan.n);
      D0.assign(ds.begin(), ds.end());
      expect(tj["b0"] == rep.b0 && tj["N"] == rep.N, idx, "blocks", "b0 or N differs");
    }
    bool clean = true;
    for (;; ++blocks_done) {
      long s = block_start(blocks_done);
      if (s + n > frame.generation()) break;
      Word w(frame.word.begin() + s, frame.word.begin() + s + n);
      if (std::find(D0.begin(), D0.end(), w) != D0.end()) {
        clean = false;
        fail(idx, "block-clean", "block " + std::to_string(blocks_done) + " carries a factor of the target");
      }
    }
    expect(tj["complete_blocks_clean"] == clean, idx, "block-clean", "cleanliness annotation differs");
    ++i;
    phase_one = true;
    ++rep.phases;
  }

  rep.coding_length = static_cast<std::size_t>(frame.generation());
  rep.blocks_complete = static_cast<std::size_t>(blocks_done);
  for (long b = 0; b < blocks_done; ++b) {
    long turns_in = density.count(b) ? density[b] : 0;
    expect(plan.c * n <= Rational(turns_in), R.empty() ? 0 : R.back().index, "density",
           "block " + std::to_string(b) + " saw " + std::to_string(turns_in) + " Phase 1 turns");
  }
  std::stable_sort(rep.failures.begin(), rep.failures.end(),
                   [](const AuditFailure& a, const AuditFailure& b) { return a.round < b.round; });
  return rep;
}

GameTranscript component_transcript(const GameTranscript& t, int i, int m) {
  if (m < 1 || i < 0 || i >= m) throw ConfigError("component", "index out of range");
  GameTranscript out;
  out.limit_enclosure = t.limit_enclosure;
  out.forfeit = t.forfeit;
  for (const auto& r : t.rounds) {
    if (r.index % m != i) continue;
    RoundRecord c = r;
    if (r.ann.is_object() && r.ann.contains("inner")) c.ann = r.ann["inner"];
    out.rounds.push_back(std::move(c));
  }
  return out;
}

}  // namespace schmidt
