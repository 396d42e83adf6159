#include "schmidt/models.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "schmidt/beta_shift.hpp"
#include "schmidt/error.hpp"

namespace schmidt {

namespace {

Symbol to_symbol(const Integer& z) {
  if (!z.fits_slong_p()) throw ModelError("digit exceeds the 64-bit symbol range");
  return z.get_si();
}

}  // namespace

// ---------------------------------------------------------------- IntegerBase

IntegerBase::IntegerBase(int b) : b_(b) {
  if (b < 2) throw ModelError("integer base must be at least 2");
}

std::optional<int> IntegerBase::next_state(int, Symbol s) const {
  if (s < 0 || s >= b_) return std::nullopt;
  return 0;
}

Mobius IntegerBase::inverse_branch(Symbol s) const {
  if (s < 0 || s >= b_) throw UnknownSymbol("digit " + std::to_string(s) + " outside base " + std::to_string(b_));
  return Mobius::affine(Scalar(Rational(1, b_)), Scalar(Rational(s, b_)));
}

BranchQuery IntegerBase::branches_meeting(int, const Scalar& ylo, const Scalar& yhi, const Scalar&) const {
  BranchQuery q;
  Scalar b(b_);
  Scalar lo = max(Scalar(-1), min(ylo * b, b)), hi = max(Scalar(-1), min(yhi * b, b));
  Symbol first = std::max<Symbol>(0, to_symbol(lo.floor()) - 1);
  Symbol last = std::min<Symbol>(b_ - 1, to_symbol(hi.floor()));
  for (Symbol s = first; s <= last; ++s) {
    // closure [s/b, (s+1)/b]
    if (Scalar(Rational(s + 1, b_)) < ylo || yhi < Scalar(Rational(s, b_))) continue;
    q.symbols.push_back(s);
  }
  return q;
}

std::optional<Scalar> IntegerBase::contraction(int m) const {
  Rational r = pow(Rational(b_), -static_cast<long>(m));
  return Scalar(r);
}

// ---------------------------------------------------------------- Gauss

std::optional<int> Gauss::next_state(int, Symbol s) const {
  if (s < 1) return std::nullopt;
  return 0;
}

Mobius Gauss::inverse_branch(Symbol a) const {
  if (a < 1) throw UnknownSymbol("continued-fraction digits start at 1");
  return Mobius{Scalar(0), Scalar(1), Scalar(1), Scalar(Rational(a))};
}

BranchQuery Gauss::branches_meeting(int, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const {
  BranchQuery q;
  if (yhi.sign() <= 0 || Scalar(1) < ylo) {
    if (ylo.sign() <= 0 && yhi.sign() >= 0) {
      q.accumulation.push_back(Scalar(0));
      q.complete = false;
    }
    return q;
  }
  // closure of branch a is [1/(a+1), 1/a]
  Integer amin = (yhi.inv() - Scalar(1)).floor();
  if (Scalar(Rational(amin)) < yhi.inv() - Scalar(1)) amin += 1;
  if (amin < 1) amin = 1;
  std::optional<Integer> amax;
  if (ylo.sign() > 0) amax = ylo.inv().floor();
  std::vector<Symbol> digits;
  bool stopped = false;
  for (Integer a = amin;; ++a) {
    if (amax && a > *amax) break;
    // digits beyond the symbol range are treated like the omitted tail
    if (a - amin >= kMaxBranches || !a.fits_slong_p() || Scalar(Rational(1, a * (a + 1))) < min_length) {
      stopped = true;
      break;
    }
    digits.push_back(a.get_si());
  }
  if (stopped) {
    q.complete = false;
    if (ylo.sign() <= 0) q.accumulation.push_back(Scalar(0));
  }
  std::reverse(digits.begin(), digits.end());
  q.symbols = std::move(digits);
  return q;
}

std::optional<Scalar> Gauss::contraction(int m) const { return Scalar(pow2(-static_cast<long>(m / 2))); }

std::optional<Scalar> gauss_two_step_derivative(const Scalar& x) {
  if (x.sign() <= 0) return std::nullopt;
  Scalar inv = x.inv();
  Scalar fx = inv - Scalar(Rational(inv.floor()));
  if (fx.sign() == 0) return std::nullopt;
  Scalar p = x * fx;
  return (p * p).inv();
}

TwoStepReport gauss_two_step_expansion_check(std::size_t samples, std::uint64_t seed) {
  TwoStepReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den(2, 1L << 40);
  const Scalar bound(Rational(9, 4));
  auto gauss = [](const Scalar& y) { return y.inv() - Scalar(Rational(y.inv().floor())); };
  while (rep.checked < samples) {
    long d = den(rng);
    Scalar x(Rational(std::uniform_int_distribution<long>(1, d - 1)(rng), d));
    // skip f^-1(0) and f^-2(0)
    Scalar fx = gauss(x);
    if (fx.sign() == 0 || gauss(fx).sign() == 0) {
      ++rep.excluded;
      continue;
    }
    Scalar v = *gauss_two_step_derivative(x);
    if (rep.checked == 0 || v < rep.minimum) rep.minimum = v;
    ++rep.checked;
    if (v < bound) rep.ok = false;
  }
  return rep;
}

// ---------------------------------------------------------------- Pathological

Symbol Pathological::intern(const std::vector<long>& p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(p);
  if (it != ids_.end()) return it->second;
  Symbol id = static_cast<Symbol>(paths_.size());
  paths_.push_back(p);
  ids_.emplace(p, id);
  return id;
}

std::vector<long> Pathological::path(Symbol s) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (s < 0 || static_cast<std::size_t>(s) >= paths_.size()) throw UnknownSymbol("unknown pathological symbol");
  return paths_[static_cast<std::size_t>(s)];
}

Interval Pathological::part(const std::vector<long>& p) {
  long i = p.at(0);
  Rational lo = pow2(-i), w = pow2(-i);
  for (std::size_t j = 1; j < p.size(); ++j) {
    w /= 4 * i;
    lo += w * p[j];
  }
  return {Scalar(lo), Scalar(Rational(lo + w))};
}

std::optional<int> Pathological::next_state(int, Symbol s) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (s < 0 || static_cast<std::size_t>(s) >= paths_.size()) return std::nullopt;
  return 0;
}

Mobius Pathological::inverse_branch(Symbol s) const {
  Interval iv = part(path(s));
  return Mobius::affine(iv.length(), iv.lo);
}

BranchQuery Pathological::branches_meeting(int, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const {
  BranchQuery q;
  if (yhi.sign() <= 0 || Scalar(1) < ylo) {
    if (ylo.sign() <= 0 && yhi.sign() >= 0) {
      q.accumulation.push_back(Scalar(0));
      q.complete = false;
    }
    return q;
  }
  bool lim = min_length.sign() > 0;
  std::vector<long> p;
  // Recursive walk over parts meeting the query. [ulo, uhi] is the query in
  // coordinates where the current part is [0, 1], so every level costs a
  // multiplication by 4i rather than a division.
  auto visit = [&](auto&& self, long i, const Rational& w, const Scalar& ulo, const Scalar& uhi, int budget,
                   int depth) -> void {
    if (q.symbols.size() >= kMaxBranches || depth > kMaxDepth) {
      q.complete = false;
      return;
    }
    Rational pw = w / (4 * i);
    Scalar slo = ulo * Scalar(4 * i), shi = uhi * Scalar(4 * i);
    // part j is [j, j+1] here; it meets the query when slo <= j+1 and j <= shi
    long a = 0, b = 4 * i - 1;
    if (slo.sign() > 0) {
      Integer c = -(-slo).floor() - 1;
      a = c > b ? b + 1 : std::max<long>(0, c.get_si());
    }
    if (shi < Scalar(b)) {
      Integer f = shi.floor();
      b = f < 0 ? -1 : f.get_si();
    }
    bool single = a == b;
    for (long j = a; j <= b; ++j) {
      p.push_back(j);
      if (j % 2 == 1) {
        if (lim && Scalar(pw) < min_length)
          q.complete = false;
        else
          q.symbols.push_back(intern(p));
      } else {
        int nb = single ? budget : budget - 1;
        if (nb < 0 || (lim && Scalar(Rational(pw / (4 * i))) < min_length))
          q.complete = false;
        else
          self(self, i, pw, slo - Scalar(j), shi - Scalar(j), nb, depth + 1);
      }
      p.pop_back();
    }
  };
  // regions [2^-i, 2^-(i-1)] meeting the query, in increasing position
  std::vector<long> regions;
  for (long i = 1; i < 4096; ++i) {
    Scalar rlo(pow2(-i)), rhi(pow2(-(i - 1)));
    if (rhi < ylo) break;
    if (yhi < rlo) continue;
    if (lim && rhi - rlo < min_length) {
      q.complete = false;
      break;
    }
    if (regions.size() >= 64) {
      q.complete = false;
      break;
    }
    regions.push_back(i);
  }
  if (ylo.sign() <= 0) {
    q.complete = false;
    q.accumulation.push_back(Scalar(0));
  }
  std::reverse(regions.begin(), regions.end());
  for (long i : regions) {
    p.assign(1, i);
    Scalar scale(pow2(i));
    visit(visit, i, pow2(-i), (ylo - Scalar(pow2(-i))) * scale, (yhi - Scalar(pow2(-i))) * scale,
          regions.size() == 1 ? kDepthBudget : kDepthBudget - 1, 0);
  }
  return q;
}

std::string Pathological::symbol_name(Symbol s) const {
  auto p = path(s);
  std::string out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) out += '.';
    out += std::to_string(p[j]);
  }
  return out;
}

Symbol Pathological::parse_symbol(const std::string& s) const {
  std::vector<long> p;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    try {
      p.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw UnknownSymbol("bad pathological symbol '" + s + "'");
    }
  }
  if (p.size() < 2 || p[0] < 1 || p.back() % 2 != 1) throw UnknownSymbol("bad pathological symbol '" + s + "'");
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j] < 0 || p[j] >= 4 * p[0]) throw UnknownSymbol("bad pathological symbol '" + s + "'");
    if (j + 1 < p.size() && p[j] % 2 != 0) throw UnknownSymbol("bad pathological symbol '" + s + "'");
  }
  return intern(p);
}

// ---------------------------------------------------------------- CantorComplement

Interval CantorComplement::removed_interval(Symbol s) {
  if (s < 0) throw UnknownSymbol("negative Cantor symbol");
  int level = 0;
  while ((Symbol(2) << level) - 1 <= s) ++level;
  Symbol m = s + 1 - (Symbol(1) << level);
  Rational c(0), w(1);
  for (int j = level - 1; j >= 0; --j) {
    w /= 3;
    if ((m >> j) & 1) c += 2 * w;
  }
  return {Scalar(Rational(c + w / 3)), Scalar(Rational(c + 2 * w / 3))};
}

std::optional<int> CantorComplement::next_state(int, Symbol s) const {
  if (s < 0 || s >= (Symbol(1) << kMaxLevel)) return std::nullopt;
  return 0;
}

Mobius CantorComplement::inverse_branch(Symbol s) const {
  Interval iv = removed_interval(s);
  return Mobius::affine(iv.length(), iv.lo);
}

BranchQuery CantorComplement::branches_meeting(int, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const {
  BranchQuery q;
  bool lim = min_length.sign() > 0;
  auto visit = [&](auto&& self, int level, Symbol m, const Rational& c, const Rational& w, int budget) -> void {
    Scalar lo(c), hi(Rational(c + w));
    if (hi < ylo || yhi < lo) return;
    if (level >= kMaxLevel || q.symbols.size() >= 4096) {
      q.complete = false;
      return;
    }
    Rational t = w / 3;
    Scalar mlo(Rational(c + t)), mhi(Rational(c + 2 * t));
    bool left = !(Scalar(mlo) < ylo || yhi < lo), right = !(hi < ylo || yhi < mhi);
    bool mid = !(mhi < ylo || yhi < mlo);
    int nb = (left && right) || (mid && (left || right)) ? budget - 1 : budget;
    auto descend = [&](Symbol cm, const Rational& cc) {
      if (nb < 0 || (lim && Scalar(Rational(t / 3)) < min_length))
        q.complete = false;
      else
        self(self, level + 1, cm, cc, t, nb);
    };
    if (left) descend(2 * m, c);
    if (mid) {
      if (lim && Scalar(t) < min_length)
        q.complete = false;
      else
        q.symbols.push_back((Symbol(1) << level) - 1 + m);
    }
    if (right) descend(2 * m + 1, c + 2 * t);
  };
  visit(visit, 0, 0, Rational(0), Rational(1), kDepthBudget);
  return q;
}

std::optional<Scalar> CantorComplement::contraction(int m) const {
  return Scalar(pow(Rational(3), -static_cast<long>(m)));
}

// ---------------------------------------------------------------- factory

ModelPtr make_model(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "integer_base") {
    int b = 0;
    try {
      b = std::stoi(arg);
    } catch (const std::exception&) {
      throw ModelError("integer_base needs a base, e.g. integer_base:2");
    }
    return std::make_shared<IntegerBase>(b);
  }
  if (kind == "gauss" && arg.empty()) return std::make_shared<Gauss>();
  if (kind == "beta") return std::make_shared<BetaModel>(std::make_shared<BetaSystem>(arg));
  if (kind == "pathological" && arg.empty()) return std::make_shared<Pathological>();
  if (kind == "cantor_complement" && arg.empty()) return std::make_shared<CantorComplement>();
  throw ModelError("unknown model '" + spec + "'");
}

ModelPtr make_model_json(const nlohmann::json& j) {
  if (j.is_string()) return make_model(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ModelError("model spec needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "integer_base") return std::make_shared<IntegerBase>(j.at("b").get<int>());
  if (kind == "beta") return make_model("beta:" + j.at("d1_word").get<std::string>());
  return make_model(kind);
}

nlohmann::json model_to_json(const MapModel& m) {
  switch (m.kind()) {
    case ModelKind::IntegerBase:
      return {{"kind", "integer_base"}, {"b", static_cast<const IntegerBase&>(m).base()}};
    case ModelKind::Gauss:
      return {{"kind", "gauss"}};
    case ModelKind::Beta:
      return {{"kind", "beta"}, {"d1_word", static_cast<const BetaModel&>(m).system().d1_string()}};
    case ModelKind::Pathological:
      return {{"kind", "pathological"}};
    case ModelKind::CantorComplement:
      return {{"kind", "cantor_complement"}};
  }
  return {};
}

}  // namespace schmidt
