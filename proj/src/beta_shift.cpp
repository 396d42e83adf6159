#include "schmidt/beta_shift.hpp"

#include <cmath>
#include <map>

#include "schmidt/error.hpp"

namespace schmidt {

namespace {

Polynomial defining_polynomial(const std::vector<int>& d) {
  int k = static_cast<int>(d.size());
  std::vector<Rational> c(static_cast<std::size_t>(k + 1));
  c[static_cast<std::size_t>(k)] = 1;
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(k - 1 - i)] -= d[static_cast<std::size_t>(i)];
  return Polynomial(std::move(c));
}

}  // namespace

BetaSystem::BetaSystem(const std::string& word, unsigned max_refinements) {
  if (word.empty()) throw ModelError("d1_word must be non-empty");
  for (char ch : word) {
    if (ch != '0' && ch != '1') throw ModelError("d1_word must be binary");
    d_.push_back(ch - '0');
  }
  if (d_.back() != 1) throw ModelError("d1_word must end in 1 (trailing zeros are implicit)");
  if (d_.size() > 20) throw ModelError("d1_word longer than 20 symbols is not supported");
  int ones = 0;
  for (int j : d_) ones += j;
  if (ones < 2) throw ModelError("d1_word " + word + " forces beta = 1, outside (1,2)");
  for (std::size_t n = 1; n < d_.size(); ++n) {
    // sigma^n(d 0^inf) must be strictly below d 0^inf
    int c = 0;
    for (std::size_t i = 0; i < d_.size() && c == 0; ++i) {
      int a = n + i < d_.size() ? d_[n + i] : 0;
      c = a - d_[i];
    }
    if (c >= 0) throw ModelError("d1_word " + word + " is not the greedy expansion of 1 of any beta");
  }

  for (int j : d_) dval_ = (dval_ << 1) | static_cast<unsigned>(j);
  state_mask_ = (1u << (d_.size() - 1)) - 1;

  field_ = AlgebraicField::create(defining_polynomial(d_), Rational(1), Rational(2), max_refinements);
  beta_ = Scalar::generator(field_);
  beta_inv_ = beta_.inv();

  auto expected = d_one(beta_, static_cast<int>(d_.size()) + 1);
  if (!expected || *expected != d_) throw ModelError("d1_word " + word + " is not reproduced by the greedy expansion");

  unsigned nstates = state_mask_ + 1;
  int km1 = k() - 1;
  live_.assign(nstates, 1);
  for (unsigned s = 0; s < nstates; ++s) {
    for (int j = 1; j <= km1; ++j) {
      unsigned window = (s << j) & ((state_mask_ << 1) | 1u);
      if (window_forbidden(window)) live_[s] = 0;
    }
  }

  // reachable states and greedy-max continuations
  std::vector<char> seen(nstates, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    reachable_.push_back(s);
    for (int sym = 0; sym < 2; ++sym) {
      auto ns = next_state(s, sym);
      if (ns && !seen[static_cast<unsigned>(*ns)]) {
        seen[static_cast<unsigned>(*ns)] = 1;
        stack.push_back(*ns);
      }
    }
  }
  std::sort(reachable_.begin(), reachable_.end());

  extent_.assign(nstates, Scalar(0));
  for (int s0 : reachable_) {
    std::vector<int> digits;
    std::map<int, std::size_t> first_seen;
    int s = s0;
    while (!first_seen.count(s)) {
      first_seen[s] = digits.size();
      auto one = next_state(s, 1);
      int sym = one ? 1 : 0;
      digits.push_back(sym);
      s = one ? *one : *next_state(s, 0);
    }
    std::size_t pre = first_seen[s];
    std::vector<int> u(digits.begin(), digits.begin() + static_cast<long>(pre));
    std::vector<int> v(digits.begin() + static_cast<long>(pre), digits.end());
    Scalar per = pi(v) / (Scalar(1) - pow(beta_inv_, static_cast<long>(v.size())));
    extent_[static_cast<unsigned>(s0)] = pi(u) + pow(beta_inv_, static_cast<long>(u.size())) * per;
  }

  Scalar tmin = extent_[0];
  Scalar tmax = extent_[0];
  for (int s : reachable_) {
    tmin = min(tmin, extent_[static_cast<unsigned>(s)]);
    tmax = max(tmax, extent_[static_cast<unsigned>(s)]);
  }
  Scalar need = max(max(Scalar(1), tmax), tmin.inv());
  Integer eighths = need.floor() * 8;
  while (Scalar(Rational(eighths, 8)) <= need) eighths += 1;
  cb_ = Scalar(Rational(eighths, 8));
}

std::string BetaSystem::d1_string() const {
  std::string s;
  for (int j : d_) s.push_back(static_cast<char>('0' + j));
  return s;
}

std::vector<std::string> BetaSystem::forbidden_words() const {
  std::vector<std::string> out;
  for (unsigned w = dval_; w < (1u << d_.size()); ++w) {
    std::string s;
    for (int i = k() - 1; i >= 0; --i) s.push_back((w >> i) & 1u ? '1' : '0');
    out.push_back(s);
  }
  return out;
}

std::optional<int> BetaSystem::next_state(int state, int symbol) const {
  if (symbol != 0 && symbol != 1) return std::nullopt;
  unsigned window = (static_cast<unsigned>(state) << 1) | static_cast<unsigned>(symbol);
  if (window_forbidden(window)) return std::nullopt;
  unsigned ns = window & state_mask_;
  if (!live_[ns]) return std::nullopt;
  return static_cast<int>(ns);
}

bool BetaSystem::is_admissible(const std::vector<int>& w) const {
  // no forbidden factor in 0^(k-1) w 0^(k-1)
  unsigned window = 0, full = (state_mask_ << 1) | 1u;
  std::vector<int> padded(w);
  padded.insert(padded.end(), static_cast<std::size_t>(k() - 1), 0);
  for (int sym : padded) {
    if (sym != 0 && sym != 1) return false;
    window = ((window << 1) | static_cast<unsigned>(sym)) & full;
    if (window_forbidden(window)) return false;
  }
  return true;
}

bool BetaSystem::is_admissible_direct(const std::vector<int>& w) const {
  for (std::size_t n = 0; n < w.size(); ++n) {
    int c = 0;
    for (std::size_t i = 0; c == 0 && i < d_.size(); ++i) {
      int a = n + i < w.size() ? w[n + i] : 0;
      c = a - d_[i];
    }
    if (c >= 0) return false;  // the tail beyond d is all zeros on both sides
  }
  return true;
}

const Scalar& BetaSystem::follower_extent(int state) const { return extent_.at(static_cast<unsigned>(state)); }

std::vector<int> BetaSystem::d_expansion(const Scalar& x, std::size_t n) const {
  if (x < Scalar(0) || x >= Scalar(1)) throw ModelError("d_expansion needs x in [0,1)");
  std::vector<int> out;
  Scalar y = x;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar by = beta_ * y;
    int digit = by >= Scalar(1) ? 1 : 0;
    out.push_back(digit);
    y = by - Scalar(digit);
  }
  return out;
}

Scalar BetaSystem::pi(const std::vector<int>& w) const {
  Scalar acc(0);
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = (acc + Scalar(*it)) * beta_inv_;
  return acc;
}

std::optional<std::vector<int>> d_one(const Scalar& beta, int max_steps) {
  if (beta <= Scalar(1) || beta >= Scalar(2)) throw ModelError("d_one needs 1 < beta < 2");
  std::vector<int> out;
  Scalar y(1);
  for (int i = 0; i < max_steps; ++i) {
    Scalar by = beta * y;
    int digit = by >= Scalar(1) ? 1 : 0;
    out.push_back(digit);
    y = by - Scalar(digit);
    if (y.sign() == 0) return out;
  }
  return std::nullopt;
}

BetaModel::BetaModel(std::shared_ptr<const BetaSystem> sys) : sys_(std::move(sys)) {
  branch_[0] = Mobius::affine(sys_->beta_inv(), Scalar(0));
  branch_[1] = Mobius::affine(sys_->beta_inv(), sys_->beta_inv());
  for (int st : sys_->reachable_states())
    for (Symbol s = 0; s < 2; ++s)
      if (next_state(st, s)) closures_[st][s] = branch_closure(st, s);
}

std::optional<int> BetaModel::next_state(int state, Symbol s) const {
  if (s != 0 && s != 1) return std::nullopt;
  return sys_->next_state(state, static_cast<int>(s));
}

Mobius BetaModel::inverse_branch(Symbol s) const {
  if (s != 0 && s != 1) throw UnknownSymbol("beta-shift symbols are 0 and 1");
  return branch_[s];
}

BranchQuery BetaModel::branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar&) const {
  BranchQuery q;
  auto it = closures_.find(state);
  if (it == closures_.end()) return q;
  for (Symbol s = 0; s < 2; ++s) {
    const auto& c = it->second[s];
    if (c && !(yhi < c->lo || c->hi < ylo)) q.symbols.push_back(s);
  }
  return q;
}

std::optional<Scalar> BetaModel::contraction(int m) const {
  const Scalar& cb = sys_->distortion_constant();
  return cb * cb * pow(sys_->beta_inv(), m);
}

Cylinder beta_cylinder(const BetaModel& m, const std::vector<int>& w) {
  if (!m.system().is_admissible(w)) throw InadmissibleWord("word is not admissible in the beta-shift");
  return cylinder(m, Word(w.begin(), w.end()));
}

}  // namespace schmidt
