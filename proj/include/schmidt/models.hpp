#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "schmidt/map_model.hpp"

namespace schmidt {

// x -> b x mod 1.
class IntegerBase final : public MapModel {
 public:
  explicit IntegerBase(int b);
  int base() const { return b_; }

  ModelKind kind() const override { return ModelKind::IntegerBase; }
  std::string name() const override { return "integer_base:" + std::to_string(b_); }
  std::optional<int> next_state(int state, Symbol s) const override;
  Mobius inverse_branch(Symbol s) const override;
  BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const override;
  std::optional<Scalar> contraction(int m) const override;
  std::optional<int> accumulation_depth() const override { return 1; }
  bool finite_alphabet() const override { return true; }

 private:
  int b_;
};

// x -> 1/x mod 1; digit a has branch (1/(a+1), 1/a].
class Gauss final : public MapModel {
 public:
  static constexpr Symbol kMaxBranches = 4096;

  ModelKind kind() const override { return ModelKind::Gauss; }
  std::string name() const override { return "gauss"; }
  std::optional<int> next_state(int state, Symbol s) const override;
  Mobius inverse_branch(Symbol s) const override;
  int branch_orientation(Symbol) const override { return -1; }
  bool half_open_upper() const override { return false; }
  BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const override;
  std::optional<Scalar> contraction(int m) const override;
  std::optional<int> accumulation_depth() const override { return 2; }
  bool finite_alphabet() const override { return false; }
};

// |(f^2)'(x)| = 1/(x f(x))^2 for the Gauss map; nullopt when x or f(x) is 0.
std::optional<Scalar> gauss_two_step_derivative(const Scalar& x);
struct TwoStepReport {
  bool ok = true;
  Scalar minimum;
  std::size_t checked = 0, excluded = 0;
};
TwoStepReport gauss_two_step_expansion_check(std::size_t samples, std::uint64_t seed);

// Each [2^-i, 2^-(i-1)) is cut into 4i equal parts; f is linear onto [0,1)
// on the odd-indexed parts and the even-indexed parts are cut again, forever.
// Symbols name the path (i, even indices..., odd index) and are interned.
class Pathological final : public MapModel {
 public:
  static constexpr int kDepthBudget = 3;
  static constexpr int kMaxDepth = 4096;
  static constexpr std::size_t kMaxBranches = 4096;

  ModelKind kind() const override { return ModelKind::Pathological; }
  std::string name() const override { return "pathological"; }
  std::optional<int> next_state(int state, Symbol s) const override;
  Mobius inverse_branch(Symbol s) const override;
  BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const override;
  std::optional<Scalar> contraction(int) const override { return std::nullopt; }
  std::optional<int> accumulation_depth() const override { return std::nullopt; }
  bool finite_alphabet() const override { return false; }
  std::string symbol_name(Symbol s) const override;
  Symbol parse_symbol(const std::string& s) const override;

  Symbol intern(const std::vector<long>& path) const;
  std::vector<long> path(Symbol s) const;
  // Interval of the part reached by a path of the form (i, p1, ..., pL).
  static Interval part(const std::vector<long>& path);

 private:
  mutable std::mutex mu_;
  mutable std::map<std::vector<long>, Symbol> ids_;
  mutable std::vector<std::vector<long>> paths_;
};

// f is linear onto [0,1) on every interval removed in the middle-thirds
// construction of the Cantor set. Symbol 2^L - 1 + m is the middle third of
// the m-th level-L Cantor interval.
class CantorComplement final : public MapModel {
 public:
  static constexpr int kDepthBudget = 8;
  static constexpr int kMaxLevel = 60;

  ModelKind kind() const override { return ModelKind::CantorComplement; }
  std::string name() const override { return "cantor_complement"; }
  std::optional<int> next_state(int state, Symbol s) const override;
  Mobius inverse_branch(Symbol s) const override;
  BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi, const Scalar& min_length) const override;
  std::optional<Scalar> contraction(int m) const override;
  std::optional<int> accumulation_depth() const override { return std::nullopt; }
  bool finite_alphabet() const override { return false; }

  static Interval removed_interval(Symbol s);
};

// "integer_base:3", "gauss", "beta:11", "pathological", "cantor_complement".
ModelPtr make_model(const std::string& spec);
ModelPtr make_model_json(const nlohmann::json& spec);
nlohmann::json model_to_json(const MapModel& m);

}  // namespace schmidt
