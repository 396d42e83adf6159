#pragma once

#include <array>
#include <map>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/map_model.hpp"

namespace schmidt {

// Greedy beta-expansion system for 1 < beta < 2 whose expansion of 1
// terminates: 1 = sum j_i beta^-(i+1). The shift is of finite type and is
// presented by the automaton on the last k-1 symbols.
class BetaSystem {
 public:
  explicit BetaSystem(const std::string& d1_word, unsigned max_refinements = AlgebraicField::kDefaultRefinements);

  const std::vector<int>& d1_word() const { return d_; }
  std::string d1_string() const;
  int k() const { return static_cast<int>(d_.size()); }
  const FieldPtr& field() const { return field_; }
  const Scalar& beta() const { return beta_; }
  const Scalar& beta_inv() const { return beta_inv_; }

  // Length-k words w >= d(1, beta).
  std::vector<std::string> forbidden_words() const;
  bool is_admissible(const std::vector<int>& w) const;
  // sigma^n(w 0^inf) < d(1,beta) 0^inf for every n.
  bool is_admissible_direct(const std::vector<int>& w) const;

  int start_state() const { return 0; }
  std::optional<int> next_state(int state, int symbol) const;
  // sup of pi over admissible continuations from the state; the chart domain.
  const Scalar& follower_extent(int state) const;
  const std::vector<int>& reachable_states() const { return reachable_; }
  // Certified C_b with C_b^-1 < |C_w| beta^n < C_b for every admissible w.
  const Scalar& distortion_constant() const { return cb_; }

  std::vector<int> d_expansion(const Scalar& x, std::size_t n) const;
  Scalar pi(const std::vector<int>& w) const;

 private:
  bool window_forbidden(unsigned window) const { return window >= dval_; }

  std::vector<int> d_;
  unsigned dval_ = 0;
  unsigned state_mask_ = 0;
  FieldPtr field_;
  Scalar beta_, beta_inv_;
  std::vector<char> live_;
  std::vector<int> reachable_;
  std::vector<Scalar> extent_;
  Scalar cb_;
};

// Greedy expansion of 1 in base beta; nullopt when it does not terminate
// within max_steps.
std::optional<std::vector<int>> d_one(const Scalar& beta, int max_steps);

class BetaModel final : public MapModel {
 public:
  explicit BetaModel(std::shared_ptr<const BetaSystem> sys);
  const BetaSystem& system() const { return *sys_; }

  ModelKind kind() const override { return ModelKind::Beta; }
  std::string name() const override { return "beta:" + sys_->d1_string(); }
  Scalar domain_hi(int state) const override { return sys_->follower_extent(state); }
  std::optional<int> next_state(int state, Symbol s) const override;
  Mobius inverse_branch(Symbol s) const override;
  BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const override;
  std::optional<Scalar> contraction(int m) const override;
  std::optional<int> accumulation_depth() const override { return 1; }
  bool finite_alphabet() const override { return true; }

 private:
  std::shared_ptr<const BetaSystem> sys_;
  Mobius branch_[2];
  std::map<int, std::array<std::optional<Interval>, 2>> closures_;
};

Cylinder beta_cylinder(const BetaModel& m, const std::vector<int>& w);

}  // namespace schmidt
