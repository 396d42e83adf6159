#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/interval.hpp"
#include "schmidt/mobius.hpp"

namespace schmidt {

using Symbol = std::int64_t;
using Word = std::vector<Symbol>;

enum class ModelKind { IntegerBase, Gauss, Beta, Pathological, CantorComplement };

// Generation-1 branches of a state whose closures meet a query interval
// (chart coordinates). Branches may be omitted when they are shorter than
// the requested minimum length or lie beyond a materialization budget; the
// omission is reported through `complete` and `accumulation`.
struct BranchQuery {
  std::vector<Symbol> symbols;       // increasing chart coordinate
  std::vector<Scalar> accumulation;  // accumulation points of omitted branches inside the query
  bool complete = true;
};

// An expanding interval map presented by its generation-1 partition.
// Markov constraints (beta-shifts) are carried by an integer state: the
// branches available, and the chart domain [0, domain_hi(state)], depend on
// the state reached after the symbols read so far.
class MapModel {
 public:
  virtual ~MapModel() = default;

  virtual ModelKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual int start_state() const { return 0; }
  virtual Scalar domain_hi(int /*state*/) const { return Scalar(1); }
  virtual std::optional<int> next_state(int state, Symbol s) const = 0;
  // Maps [0, domain_hi(next_state)] onto the closure of the branch.
  virtual Mobius inverse_branch(Symbol s) const = 0;
  virtual int branch_orientation(Symbol /*s*/) const { return 1; }
  // In the half-open convention a point on a shared boundary belongs to the
  // branch above it (chart coordinates) when true, below it when false.
  virtual bool half_open_upper() const { return true; }
  virtual BranchQuery branches_meeting(int state, const Scalar& ylo, const Scalar& yhi,
                                       const Scalar& min_length) const = 0;
  // Contraction function g(m) of condition (ii); nullopt when the model has none.
  virtual std::optional<Scalar> contraction(int m) const = 0;
  // n with Acc^n(E(f)) empty; nullopt when no finite n exists.
  virtual std::optional<int> accumulation_depth() const = 0;
  virtual bool finite_alphabet() const = 0;
  virtual std::string symbol_name(Symbol s) const { return std::to_string(s); }
  virtual Symbol parse_symbol(const std::string& s) const;

  Scalar forward(Symbol s, const Scalar& y) const { return inverse_branch(s).inverse().apply(y); }
  // Closure of a branch in chart coordinates.
  Interval branch_closure(int state, Symbol s) const;
};

using ModelPtr = std::shared_ptr<const MapModel>;

struct Cylinder {
  Word word;
  Mobius chart;  // maps [0, domain_hi(state)] onto the closure
  int state = 0;
  int orientation = 1;  // +1 when the chart is increasing
  Scalar lo, hi;

  int generation() const { return static_cast<int>(word.size()); }
  Scalar length() const { return hi - lo; }
  Interval closure() const { return {lo, hi}; }
};

Cylinder root_cylinder(const MapModel& m);
Cylinder child_cylinder(const MapModel& m, const Cylinder& parent, Symbol s);
Cylinder cylinder(const MapModel& m, const Word& w);

enum class Tie { HalfOpen, Left, Right };  // Left/Right are geometric

// Symbol of the branch of `state` containing chart point y. Left/Right pick
// between two branches sharing a boundary; `orientation` is the orientation
// of the chart that y lives in. nullopt when y has no expansion.
std::optional<Symbol> branch_at(const MapModel& m, int state, const Scalar& y, Tie tie, int orientation);

// Lazily computed itinerary of a point relative to a frame cylinder.
class PointCoder {
 public:
  PointCoder(const MapModel& m, const Cylinder& frame, const Scalar& x, Tie tie);
  // i-th symbol after the frame (0-based), nullopt if the expansion stops.
  std::optional<Symbol> symbol(std::size_t i);
  // Chart coordinate after i symbols have been consumed.
  const Scalar& iterate(std::size_t i);
  std::size_t known() const { return symbols_.size(); }

 private:
  bool extend();
  const MapModel* m_;
  Tie tie_;
  std::vector<Symbol> symbols_;
  std::vector<Scalar> iterates_;
  int state_;
  int orientation_;
  bool dead_ = false;
};

// First n symbols of the itinerary of x; nullopt (NoExpansion) when some
// iterate has no branch.
std::optional<Word> encode(const MapModel& m, const Scalar& x, std::size_t n);

// Generation-(frame+gen) cylinder whose closure contains p, inside frame.
std::optional<Cylinder> cylinder_at(const MapModel& m, const Cylinder& frame, const Scalar& p, int gen, Tie tie);

struct ChildQuery {
  std::vector<Cylinder> children;    // increasing geometric position
  std::vector<Scalar> accumulation;  // global coordinates
  bool complete = true;
  bool truncated = false;            // more than max_children; children left empty
};
ChildQuery children_meeting(const MapModel& m, const Cylinder& parent, const Interval& I, const Scalar& min_length,
                            std::size_t max_children = SIZE_MAX);

Scalar contraction_bound(const MapModel& m, int mth);

struct EndpointTail {
  Word parent;       // generation k-1 word whose children are not all listed
  Symbol from = 0;   // first omitted symbol
};
struct EndpointsResult {
  std::vector<Scalar> points;       // sorted
  std::vector<Scalar> accumulation; // sorted, inside I
  std::vector<EndpointTail> tails;
  bool finite() const { return accumulation.empty() && tails.empty(); }
};
// Generation-k cylinder endpoints that belong to their (half-open) cylinder
// and lie in I.
EndpointsResult endpoints_in(const MapModel& m, const Interval& I, int k);

struct ConditionReport {
  bool ok = true;
  Scalar worst_ratio;
  Word worst_word;
  std::size_t checked = 0;
};
ConditionReport check_condition_ii(const MapModel& m, int n, int mext, std::size_t samples, std::uint64_t seed);

}  // namespace schmidt
