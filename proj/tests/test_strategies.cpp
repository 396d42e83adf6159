#include <functional>
#include <random>

#include "doctest.h"
#include "schmidt/error.hpp"
#include "schmidt/models.hpp"
#include "schmidt/serialize.hpp"
#include "schmidt/strategies.hpp"
#include "schmidt/target.hpp"

using namespace schmidt;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

GameConfig config(const char* alpha, const char* beta) {
  GameConfig cfg;
  cfg.alpha = q(alpha);
  cfg.beta = q(beta);
  return cfg;
}

std::set<Word> all_factor_sets_key(const Word& w, int n) { return dangerous_words(w, n); }

// Every way of splitting `d` into a left and right offer, with each word
// consistent with exactly one side.
void for_each_split(const std::set<Word>& d, const std::function<void(const std::set<Word>&, const std::set<Word>&)>& f) {
  std::vector<Word> v(d.begin(), d.end());
  for (unsigned mask = 0; mask < (1u << v.size()); ++mask) {
    std::set<Word> l, r;
    for (std::size_t i = 0; i < v.size(); ++i) ((mask >> i) & 1 ? r : l).insert(v[i]);
    f(l, r);
  }
}

// Worst-case number of choices before the dangerous set is empty.
int worst_choices(const std::set<Word>& d) {
  if (d.empty()) return 0;
  int worst = 0;
  for_each_split(d, [&](const std::set<Word>& l, const std::set<Word>& r) {
    SequenceGamePlan plan;
    plan.dangerous = d;
    sequence_game_choose(plan, l, r);
    CHECK(plan.dangerous.size() <= d.size() / 2);
    worst = std::max(worst, 1 + worst_choices(plan.dangerous));
  });
  return worst;
}

}  // namespace

TEST_CASE("block size is the least n with 2^(cn) > n + 1") {
  CHECK(minimal_block_size(Rational(1, 2)) == 6);
  CHECK(minimal_block_size(Rational(1)) == 2);
  CHECK(minimal_block_size(Rational(1, 4)) == 17);
  CHECK(minimal_block_size(Rational(1, 26)) == 199);
  CHECK(minimal_block_size(Rational(1, 74)) == 700);
  auto plan = plan_block_size(Rational(1, 2), 5);
  CHECK(plan.n == 6);
  CHECK(plan.N == 17);
  CHECK_THROWS_AS(minimal_block_size(Rational(0)), ConfigError);
}

TEST_CASE("dangerous words and halving choices") {
  Word w{0, 1, 0, 1, 0, 1};
  auto d = dangerous_words(w, 3);
  CHECK(d == std::set<Word>{{0, 1, 0}, {1, 0, 1}});
  SequenceGamePlan plan;
  plan.dangerous = d;
  CHECK(sequence_game_choose(plan, {{0, 1, 0}}, {{1, 0, 1}}) == Side::Left);
  CHECK(plan.dangerous.size() == 1);
  CHECK(sequence_game_choose(plan, {{0, 1, 0}}, {}) == Side::Right);
  CHECK(plan.dangerous.empty());
}

TEST_CASE("halving empties every dangerous set of a length-12 window within 3 choices") {
  std::set<std::set<Word>> seen;
  for (unsigned bits = 0; bits < (1u << 12); ++bits) {
    Word w;
    for (int i = 0; i < 12; ++i) w.push_back((bits >> i) & 1);
    seen.insert(all_factor_sets_key(w, 6));
  }
  int worst = 0;
  for (const auto& d : seen) {
    CHECK(d.size() <= 7);
    worst = std::max(worst, worst_choices(d));
  }
  CHECK(worst == 3);
}

TEST_CASE("halving on random offers") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    Word w;
    for (int i = 0; i < 2 * n; ++i) w.push_back(static_cast<Symbol>(rng() & 1));
    SequenceGamePlan plan;
    plan.dangerous = dangerous_words(w, n);
    REQUIRE(plan.dangerous.size() <= static_cast<std::size_t>(n + 1));
    int choices = 0;
    while (!plan.dangerous.empty()) {
      std::set<Word> l, r;
      for (const auto& d : plan.dangerous) (rng() & 1 ? r : l).insert(d);
      std::size_t before = plan.dangerous.size();
      sequence_game_choose(plan, l, r);
      REQUIRE(plan.dangerous.size() <= before / 2);
      ++choices;
    }
    // 2^(choices - 1) <= n + 1
    REQUIRE((1 << (choices - 1)) <= n + 1);
  }
}

TEST_CASE("avoid_finite_points") {
  Interval B{q("0"), q("1")};
  auto W = avoid_finite_points(B, {}, q("1/4"));
  CHECK(W.lo == q("0"));
  CHECK(W.hi == q("1/4"));
  // ties between the end gaps go left
  W = avoid_finite_points(B, {q("1/2")}, q("1/4"));
  CHECK(W.lo == q("0"));
  W = avoid_finite_points(B, {q("1/8")}, q("1/4"));
  CHECK(W.lo == q("3/4"));
  W = avoid_finite_points(B, {q("1/10"), q("7/10")}, q("1/4"));
  CHECK(W.lo == q("11/40"));
  CHECK(W.hi == q("21/40"));
  // points outside B are ignored
  W = avoid_finite_points(B, {q("2"), q("-1")}, q("1/4"));
  CHECK(W.lo == q("0"));
}

TEST_CASE("middle third is found in one turn") {
  auto m = make_model("cantor_complement");
  Interval B{q("0"), q("1")};
  Scalar alpha = q("1/9");
  // endpoints of the removed intervals at least as long as White's interval
  auto kids = children_meeting(*m, root_cylinder(*m), B, alpha);
  std::vector<Scalar> pts;
  for (const auto& c : kids.children) {
    pts.push_back(c.lo);
    pts.push_back(c.hi);
  }
  CHECK(pts.size() == 6);
  auto W = avoid_finite_points(B, pts, alpha);
  CHECK(W.lo == q("4/9"));
  CHECK(W.hi == q("5/9"));
  auto mid = CantorComplement::removed_interval(0);
  CHECK(mid.lo < W.lo);
  CHECK(W.hi < mid.hi);

  struct UnitOpening : BlackStrategy {
    Interval opening(const GameConfig&) override { return {Scalar(0), Scalar(1)}; }
    Interval respond(const GameConfig&, const std::vector<RoundRecord>&) override { throw Error("unused"); }
  } b;
  GameConfig cfg = config("1/9", "1/2");
  auto w = trap_strategy(m, 1);
  auto t = run_game(cfg, b, *w, 0);
  CHECK(t.rounds[0].ann.contains("trap"));
  CHECK(t.rounds[0].white.lo == q("4/9"));
}

TEST_CASE("interval codings") {
  auto m = make_model("integer_base:2");
  Cylinder root = root_cylinder(*m);
  IntervalCoding ic(*m, root, Interval{q("5/16"), q("11/32")});
  CHECK(ic.common(10) == 3);  // 0100111... and 0101100...
  CHECK(ic.alive(0, {0, 1, 0}));
  CHECK_FALSE(ic.alive(0, {0, 1, 1}));
  CHECK_FALSE(ic.alive(0, {1, 0}));
  // undecided positions count as alive
  IntervalCoding wide(*m, root, Interval{q("0"), q("1")});
  CHECK(wide.alive(0, {1, 1, 1}));
  CHECK(wide.alive(5, {0}));
}

TEST_CASE("master plan constants") {
  auto f2 = make_model("integer_base:2");
  auto p = master_plan(*f2, q("1/4"), q("1/2"));
  CHECK(p.k == 4);
  CHECK(p.M == 9);
  CHECK(p.K == 13);
  CHECK(p.c == Rational(1, 26));
  CHECK(p.n == 199);
  auto golden = make_model("beta:11");
  p = master_plan(*golden, q("1/4"), q("1/2"));
  CHECK(p.k == 23);
  CHECK(p.M == 14);
  CHECK(p.K == 37);
  CHECK(p.c == Rational(1, 74));
  CHECK(p.n == 700);
  auto gauss = make_model("gauss");
  CHECK(strategy_k(*gauss) == 7);
  auto cfg = config("1/2", "1/2");
  CHECK_THROWS_AS(white_master_strategy(f2, q("1/3"), cfg), ConfigError);
  CHECK_THROWS_AS(white_master_strategy(gauss, q("1/3"), config("1/4", "1/2")), ConfigError);
}

TEST_CASE("targets") {
  auto f2 = make_model("integer_base:2");
  CHECK(parse_target(*f2, "digits:0,1") == q("1/3"));
  CHECK(parse_target(*f2, "1/3") == q("1/3"));
  auto gauss = make_model("gauss");
  Scalar g = parse_target(*gauss, "digits:1");
  CHECK(g * g + g == Scalar(1));
  CHECK(parse_target(*gauss, "digits:2") * parse_target(*gauss, "digits:2") + Scalar(2) * parse_target(*gauss, "digits:2") ==
        Scalar(1));
  Scalar a = parse_target(*gauss, "alg:-1,1,1@1/2,1");
  CHECK(a == g);
  CHECK_THROWS_AS(parse_target(*gauss, "alg:-1,1,1"), ConfigError);
  CHECK_THROWS_AS(parse_target(*f2, "digits:"), ConfigError);
}

TEST_CASE("master strategy games") {
  struct Case {
    const char* model;
    const char* target;
    const char* beta;
    int rounds;
  };
  for (const Case& c : {Case{"integer_base:2", "1/3", "1/2", 120}, Case{"integer_base:2", "1/3", "1/10", 80},
                        Case{"integer_base:3", "1/2", "1/2", 80}, Case{"gauss", "digits:1", "1/2", 120}}) {
    CAPTURE(c.model);
    CAPTURE(c.beta);
    auto m = make_model(c.model);
    auto cfg = config("1/4", c.beta);
    Scalar x = parse_target(*m, c.target);
    for (std::uint64_t seed : {1, 2, 3}) {
      auto w = white_master_strategy(m, x, cfg);
      auto b = greedy_tracker(m, x, seed);
      auto t = run_game(cfg, *b, *w, c.rounds);
      CHECK_FALSE(t.forfeit);
      REQUIRE(t.rounds.size() == static_cast<std::size_t>(c.rounds + 1));
      int last_i = -1;
      bool expect_phase1 = true;
      for (const auto& r : t.rounds) {
        int phase = r.ann["phase"];
        CHECK(phase == (expect_phase1 ? 1 : 2));
        if (phase == 1) {
          CHECK(r.ann["i"] == last_i + 1);
          last_i = r.ann["i"];
          if (r.ann.contains("gap")) CHECK(r.ann["gap"]["g_at_least_bound"] == true);
        }
        if (r.ann.contains("trap")) CHECK(r.ann["trap"]["complete_blocks_clean"] == true);
        expect_phase1 = r.ann.contains("trap");
      }
      CHECK(last_i > 3);
    }
  }
}

TEST_CASE("phase 1 moves to an end of B") {
  auto m = make_model("integer_base:2");
  auto cfg = config("1/4", "1/2");
  auto w = white_master_strategy(m, q("1/3"), cfg);
  auto b = greedy_tracker(m, q("1/3"), 4);
  auto t = run_game(cfg, *b, *w, 40);
  for (const auto& r : t.rounds) {
    if (r.ann["phase"] != 1) continue;
    Scalar len = r.black.length() / Scalar(4);
    if (r.ann["side"] == "L") {
      CHECK(r.white.lo == r.black.lo);
    } else {
      CHECK(r.white.hi == r.black.hi);
    }
    CHECK(r.white.length() == len);
  }
}

TEST_CASE("interleaving one strategy changes nothing") {
  auto m = make_model("integer_base:3");
  auto cfg = config("1/4", "1/2");
  CHECK(effective_config(cfg, 1).beta == cfg.beta);
  CHECK(effective_config(cfg, 3).beta == q("1/128"));
  auto solo = white_master_strategy(m, q("1/2"), cfg);
  std::vector<std::unique_ptr<WhiteStrategy>> parts;
  parts.push_back(white_master_strategy(m, q("1/2"), cfg));
  auto inter = interleave_strategies(std::move(parts));
  auto b1 = random_black(9), b2 = random_black(9);
  auto t1 = run_game(cfg, *b1, *solo, 60);
  auto t2 = run_game(cfg, *b2, *inter, 60);
  REQUIRE(t1.rounds.size() == t2.rounds.size());
  for (std::size_t i = 0; i < t1.rounds.size(); ++i) {
    CHECK(t1.rounds[i].white.lo == t2.rounds[i].white.lo);
    CHECK(t1.rounds[i].white.hi == t2.rounds[i].white.hi);
    CHECK(t2.rounds[i].ann["component"] == 0);
    CHECK(t2.rounds[i].ann["inner"] == t1.rounds[i].ann);
  }
}

TEST_CASE("interleaved components take turns") {
  auto cfg = config("1/4", "1/2");
  GameConfig eff = effective_config(cfg, 2);
  std::vector<std::unique_ptr<WhiteStrategy>> parts;
  auto f2 = make_model("integer_base:2"), f3 = make_model("integer_base:3");
  parts.push_back(white_master_strategy(f2, q("1/3"), eff));
  parts.push_back(white_master_strategy(f3, q("1/2"), eff));
  auto w = interleave_strategies(std::move(parts));
  auto b = random_black(5);
  auto t = run_game(cfg, *b, *w, 50);
  CHECK_FALSE(t.forfeit);
  for (const auto& r : t.rounds) CHECK(r.ann["component"] == static_cast<int>(r.index % 2));
}

TEST_CASE("pathological adversary exhausts the trap budget") {
  auto m = make_model("pathological");
  auto cfg = config("1/4", "1/5");
  {
    auto w = trap_strategy(m, 1);
    auto b = pathological_black(5, 1);
    auto t = run_game(cfg, *b, *w, 600);
    REQUIRE(t.forfeit);
    CHECK(t.forfeit->role == Role::White);
    CHECK(t.forfeit->reason.find("budget") != std::string::npos);
    CHECK(t.forfeit->round == 500);
  }
  // on a map with finitely many branches the same trap succeeds repeatedly
  auto f2 = make_model("integer_base:2");
  auto w = trap_strategy(f2, 1);
  auto b = random_black(3);
  auto t = run_game(cfg, *b, *w, 600);
  CHECK_FALSE(t.forfeit);
  // the adversary needs alpha beta = 1/(4i)
  auto b2 = pathological_black(5, 1);
  auto w2 = trap_strategy(m, 1);
  auto t2 = run_game(config("1/4", "1/4"), *b2, *w2, 10);
  REQUIRE(t2.forfeit);
  CHECK(t2.forfeit->role == Role::Black);
}

TEST_CASE("seeded adversaries are reproducible") {
  auto cfg = config("1/4", "1/2");
  auto m = make_model("integer_base:2");
  auto play = [&](std::uint64_t seed) {
    auto w = white_master_strategy(m, q("1/3"), cfg);
    auto b = random_black(seed);
    return transcript_to_jsonl(run_game(cfg, *b, *w, 80), cfg);
  };
  CHECK(play(11) == play(11));
  CHECK(play(11) != play(12));
  auto golden = make_model("beta:11");
  auto play_golden = [&] {
    auto w = white_master_strategy(golden, q("1/2"), cfg);
    auto b = greedy_tracker(golden, q("1/2"), 3);
    return transcript_to_jsonl(run_game(cfg, *b, *w, 60), cfg);
  };
  CHECK(play_golden() == play_golden());
}
