#include <cmath>
#include <random>

#include "doctest.h"
#include "schmidt/models.hpp"
#include "schmidt/strategies.hpp"
#include "schmidt/target.hpp"
#include "schmidt/verification.hpp"

using namespace schmidt;

namespace {

Scalar q(const char* s) { return Scalar::parse(s); }

GameConfig config(const char* alpha, const char* beta) {
  GameConfig cfg;
  cfg.alpha = q(alpha);
  cfg.beta = q(beta);
  return cfg;
}

// Keeps x in the middle of its interval, so the limit point is x itself.
class HomingWhite final : public WhiteStrategy {
 public:
  explicit HomingWhite(Scalar x) : x_(std::move(x)) {}
  WhiteMove respond(const GameConfig& cfg, const std::vector<RoundRecord>&, const Interval& B) override {
    return {place_within(B, cfg.alpha * B.length(), x_), Json::object()};
  }

 private:
  Scalar x_;
};

Word binary_prefix_one_third(int n) {
  Word w;
  for (int i = 0; i < n; ++i) w.push_back(i % 2);
  return w;
}

}  // namespace

TEST_CASE("orbits") {
  auto f2 = make_model("integer_base:2");
  auto o = orbit(*f2, q("1/5"), 8);
  REQUIRE(o.points.size() == 9);
  CHECK_FALSE(o.truncated);
  CHECK(o.points[0] == q("1/5"));
  CHECK(o.points[1] == q("2/5"));
  CHECK(o.points[2] == q("4/5"));
  CHECK(o.points[3] == q("3/5"));
  CHECK(o.points[4] == q("1/5"));
  CHECK(o.points[8] == q("1/5"));

  auto gauss = make_model("gauss");
  auto g = orbit(*gauss, q("2/7"), 10);
  CHECK(g.truncated);
  REQUIRE(g.points.size() == 3);
  CHECK(g.points[1] == q("1/2"));
  CHECK(g.points[2] == q("0"));

  auto golden = make_model("beta:11");
  Scalar phi = parse_target(*golden, "alg:-1,-1,1@1,2");
  auto h = orbit(*golden, phi.inv(), 3);
  REQUIRE(h.points.size() >= 2);
  CHECK(h.points[1] == q("0"));
}

TEST_CASE("enclosing cylinders") {
  auto f2 = make_model("integer_base:2");
  auto root = root_cylinder(*f2);
  auto c = enclosing_cylinder(*f2, root, {q("5/16"), q("11/32")}, 100);
  CHECK(c.word == Word{0, 1, 0, 1, 0});
  // an endpoint on a boundary still lies in the closure
  CHECK(enclosing_cylinder(*f2, root, {q("1/4"), q("3/8")}, 100).word == Word{0, 1, 0});
  CHECK(enclosing_cylinder(*f2, root, {q("1/4"), q("3/8")}, 1).word == Word{0});
}

TEST_CASE("master games audit and certify") {
  struct Case {
    const char* model;
    const char* target;
    const char* beta;
    int rounds;
  };
  for (const Case& c : {Case{"integer_base:2", "1/3", "1/2", 220}, Case{"integer_base:3", "1/4", "1/2", 300},
                        Case{"gauss", "digits:1", "1/2", 750}}) {
    CAPTURE(c.model);
    auto m = make_model(c.model);
    auto cfg = config("1/4", c.beta);
    Scalar x = parse_target(*m, c.target);
    auto w = white_master_strategy(m, x, cfg);
    auto b = greedy_tracker(m, x, 1);
    auto t = run_game(cfg, *b, *w, c.rounds);
    REQUIRE_FALSE(t.forfeit);
    auto rep = transcript_audit(*m, x, cfg, t);
    for (const auto& f : rep.failures) MESSAGE(f.round << " " << f.check << ": " << f.message);
    CHECK(rep.ok());
    CHECK(rep.gap_bound_derived_ok);
    CHECK(rep.K_observed <= rep.plan.K);
    CHECK(rep.blocks_complete >= 2);
    REQUIRE(rep.blocks());
    auto cert = certify_avoidance(*m, t, x, rep.N, *rep.blocks());
    CHECK(cert.L >= static_cast<std::size_t>(rep.N));
    CHECK(cert.epsilon.sign() > 0);
    CHECK(cert.samples_checked == 3);
  }
}

TEST_CASE("gauss games that pass near rationals") {
  // seed 6 drives Black onto a rational where deeper cylinders accumulate;
  // seed 10 has a Phase 1 centre whose continued fraction ends before p
  auto m = make_model("gauss");
  auto cfg = config("1/4", "1/2");
  Scalar x = parse_target(*m, "digits:1");
  for (std::uint64_t seed : {6, 10}) {
    CAPTURE(seed);
    auto w = white_master_strategy(m, x, cfg);
    auto b = greedy_tracker(m, x, seed);
    auto t = run_game(cfg, *b, *w, 750);
    REQUIRE_FALSE(t.forfeit);
    auto rep = transcript_audit(*m, x, cfg, t);
    for (const auto& f : rep.failures) MESSAGE(f.round << " " << f.check << ": " << f.message);
    CHECK(rep.ok());
    REQUIRE(rep.blocks());
    CHECK_NOTHROW(certify_avoidance(*m, t, x, rep.N, *rep.blocks()));
  }
}

TEST_CASE("plan values seen by the audit") {
  auto f2 = make_model("integer_base:2");
  auto cfg = config("1/4", "1/2");
  auto w = white_master_strategy(f2, q("1/3"), cfg);
  auto b = greedy_tracker(f2, q("1/3"), 2);
  auto t = run_game(cfg, *b, *w, 200);
  auto rep = transcript_audit(*f2, q("1/3"), cfg, t);
  CHECK(rep.ok());
  CHECK(rep.plan.k == 4);
  CHECK(rep.plan.K == 13);
  CHECK(rep.plan.n == 199);
  CHECK(rep.N == rep.b0 + 398);
}

TEST_CASE("a corrupted move is caught in its round") {
  auto f2 = make_model("integer_base:2");
  auto cfg = config("1/4", "1/2");
  auto w = white_master_strategy(f2, q("1/3"), cfg);
  auto b = greedy_tracker(f2, q("1/3"), 1);
  auto t = run_game(cfg, *b, *w, 120);
  REQUIRE(transcript_audit(*f2, q("1/3"), cfg, t).ok());

  std::size_t r = 0;
  for (std::size_t i = 20; i < t.rounds.size(); ++i)
    if (t.rounds[i].ann["phase"] == 1) {
      r = i;
      break;
    }
  REQUIRE(r > 0);
  auto bad = t;
  auto& rec = bad.rounds[r];
  Scalar len = rec.white.length();
  // the other end of B: a legal move that the strategy would not make
  if (rec.white.lo == rec.black.lo)
    rec.white = {rec.black.hi - len, rec.black.hi};
  else
    rec.white = {rec.black.lo, rec.black.lo + len};
  auto rep = transcript_audit(*f2, q("1/3"), cfg, bad);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.failures.front().round == rec.index);
  CHECK(rep.failures.front().check == "side");

  // a wrong k_i annotation
  auto bad2 = t;
  bad2.rounds[r].ann["k_i"] = bad2.rounds[r].ann["k_i"].get<int>() + 1;
  auto rep2 = transcript_audit(*f2, q("1/3"), cfg, bad2);
  REQUIRE_FALSE(rep2.ok());
  CHECK(rep2.failures.front().check == "k_i");
}

TEST_CASE("a strategy that homes in on the target cannot be certified") {
  auto f2 = make_model("integer_base:2");
  auto cfg = config("1/4", "1/2");
  HomingWhite w(q("1/3"));
  auto b = greedy_tracker(f2, q("1/3"), 1);
  auto t = run_game(cfg, *b, w, 300);
  CHECK_THROWS_AS(certify_avoidance(*f2, t, q("1/3"), 403, BlockStructure{5, 199}), CannotCertify);
  // too short a game cannot be certified either
  auto w2 = white_master_strategy(f2, q("1/3"), cfg);
  auto b2 = greedy_tracker(f2, q("1/3"), 1);
  auto t2 = run_game(cfg, *b2, *w2, 40);
  CHECK_THROWS_AS(certify_avoidance(*f2, t2, q("1/3"), 403, BlockStructure{5, 199}), CannotCertify);
}

TEST_CASE("interleaved components audit separately") {
  auto cfg = config("1/4", "1/2");
  GameConfig eff = effective_config(cfg, 2);
  auto f2 = make_model("integer_base:2"), f3 = make_model("integer_base:3");
  std::vector<std::unique_ptr<WhiteStrategy>> parts;
  parts.push_back(white_master_strategy(f2, q("1/3"), eff));
  parts.push_back(white_master_strategy(f3, q("1/2"), eff));
  auto w = interleave_strategies(std::move(parts));
  auto b = random_black(7);
  auto t = run_game(cfg, *b, *w, 500);
  REQUIRE_FALSE(t.forfeit);
  auto t0 = component_transcript(t, 0, 2), t1 = component_transcript(t, 1, 2);
  CHECK(t0.rounds.size() == 251);
  CHECK(t1.rounds.size() == 250);
  auto r0 = transcript_audit(*f2, q("1/3"), eff, t0);
  auto r1 = transcript_audit(*f3, q("1/2"), eff, t1);
  for (const auto& f : r0.failures) MESSAGE("f2 " << f.round << " " << f.check << ": " << f.message);
  for (const auto& f : r1.failures) MESSAGE("f3 " << f.round << " " << f.check << ": " << f.message);
  CHECK(r0.ok());
  CHECK(r1.ok());
  REQUIRE(r0.blocks());
  REQUIRE(r1.blocks());
  CHECK_NOTHROW(certify_avoidance(*f2, t, q("1/3"), r0.N, *r0.blocks()));
  CHECK_NOTHROW(certify_avoidance(*f3, t, q("1/2"), r1.N, *r1.blocks()));
}

TEST_CASE("subshift dimension oracle") {
  struct Frozen {
    int N;
    double value;
  };
  double prev = -1;
  for (Frozen f : {Frozen{3, 0.8113704627516493}, Frozen{4, 0.9131889113212767}, Frozen{5, 0.9619135958090337},
                   Frozen{6, 0.9817202175202265}, Frozen{8, 0.9956684479197034}, Frozen{10, 0.9989353814770369}}) {
    CAPTURE(f.N);
    auto d = subshift_dimension_oracle(2, {binary_prefix_one_third(f.N)});
    CHECK(d.estimate == doctest::Approx(f.value).epsilon(1e-9));
    CHECK(d.estimate <= d.upper);
    CHECK(d.upper - d.estimate < 1e-8);
    CHECK(prev < d.estimate);
    prev = d.estimate;
  }
  auto two = subshift_dimension_oracle(2, {binary_prefix_one_third(2)});
  CHECK_FALSE(two.empty);
  CHECK(two.estimate == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(subshift_dimension_oracle(2, {Word{1, 1}}).estimate ==
        doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2) / std::log(2.0)).epsilon(1e-9));
  CHECK(subshift_dimension_oracle(2, {}).estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(subshift_dimension_oracle(2, {Word{0}, Word{1}}).empty);
  CHECK_THROWS_AS(subshift_dimension_oracle(2, {Word{2}}), ConfigError);
}

TEST_CASE("box counting") {
  auto f2 = make_model("integer_base:2");
  auto d = box_count_lower_bound(*f2, Word{0, 1, 0}, 12);
  CHECK(d.count == 1081);
  CHECK(d.estimate == doctest::Approx(0.8398459006445542).epsilon(1e-9));
  double oracle = subshift_dimension_oracle(2, {Word{0, 1, 0}}).estimate;
  double deep = box_count_lower_bound(*f2, Word{0, 1, 0}, 20).estimate;
  CHECK(std::abs(deep - oracle) < std::abs(d.estimate - oracle));

  auto f3 = make_model("integer_base:3");
  auto e = box_count_lower_bound(*f3, Word{0, 0}, 10);
  CHECK(e.count == 24960);
  CHECK(e.estimate == doctest::Approx(0.9216199315190922).epsilon(1e-9));
  CHECK(subshift_dimension_oracle(3, {Word{0, 0}}).estimate == doctest::Approx(0.9148382455842039).epsilon(1e-9));

  auto gauss = make_model("gauss");
  auto g = box_count_lower_bound(*gauss, Word{1, 1}, 6, 5);
  CHECK(g.digit_bound == 5);
  CHECK(g.count == 13056);  // words over 1..5 of length 6 without 11
  CHECK(g.estimate > 0);

  for (int depth : {1, 5, 12}) CHECK(box_count_lower_bound(*f2, Word{}, depth).estimate == doctest::Approx(1.0).epsilon(1e-12));

  auto golden = make_model("beta:11");
  // avoiding 1 leaves only the fixed point 0
  auto z = box_count_lower_bound(*golden, Word{1}, 8);
  CHECK(z.count == 1);
  CHECK_THROWS_AS(box_count_lower_bound(*make_model("pathological"), Word{1}, 3), ModelError);
}

TEST_CASE("oracle properties") {
  // growing the avoided prefix of 1/3 never lowers the value, which stays above 1 - 2^(2 - N/2)
  double prev = 0;
  for (int N : {4, 6, 8, 10}) {
    double v = subshift_dimension_oracle(2, {binary_prefix_one_third(N)}).estimate;
    CHECK(v >= prev);
    CHECK(v > 1 - std::pow(2.0, 2 - N / 2.0));
    prev = v;
  }
  // adding forbidden words never raises the value
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int b = 2 + static_cast<int>(rng() % 2);
    std::vector<Word> W;
    double last = 1.0 + 1e-9;
    for (int k = 0; k < 4; ++k) {
      Word w(2 + rng() % 3);
      for (auto& s : w) s = static_cast<Symbol>(rng() % static_cast<unsigned>(b));
      W.push_back(w);
      auto d = subshift_dimension_oracle(b, W);
      double v = d.empty ? 0.0 : d.estimate;
      CHECK(v <= last + 1e-9);
      last = v;
    }
  }
}
