#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "schmidt/verification.hpp"

namespace schmidt {

namespace {

// Strongly connected components (iterative Tarjan); returns component ids.
std::vector<int> scc(const std::vector<std::vector<int>>& adj, int& count) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int next = 0;
  count = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back({s, 0});
    index[s] = low[s] = next++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < adj[v].size()) {
        int w = adj[v][e++];
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

struct Bracket {
  double lo = 0, hi = 0;
};

// Collatz-Wielandt bracket for the spectral radius of an irreducible
// non-negative matrix, iterating with A + I so the iteration is primitive.
Bracket spectral_bracket(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A, double rel_tol) {
  Eigen::Index n = A.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n), w;
  Bracket br{0, 0};
  for (int it = 0; it < 200000; ++it) {
    w = A * v + v;
    double lo = HUGE_VAL, hi = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = w[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    br = {lo - 1, hi - 1};
    if (hi - lo <= rel_tol * std::max(1.0, lo - 1)) break;
    v = w / w.maxCoeff();
  }
  return br;
}

}  // namespace

DimensionEstimate subshift_dimension_oracle(int b, const std::vector<Word>& forbidden, double rel_tol) {
  if (b < 2) throw ConfigError("b", "alphabet needs at least two symbols");
  std::size_t l = 1;
  for (const auto& w : forbidden) {
    if (w.empty()) throw ConfigError("forbidden", "empty word");
    for (Symbol s : w)
      if (s < 0 || s >= b) throw ConfigError("forbidden", "symbol outside the alphabet");
    l = std::max(l, w.size());
  }
  std::size_t len = std::max<std::size_t>(1, l - 1);
  double states_d = std::pow(static_cast<double>(b), static_cast<double>(len));
  if (states_d > 5e6) throw ConfigError("forbidden", "transfer matrix too large");
  int S = static_cast<int>(states_d);

  auto decode = [&](int code, std::size_t n) {
    Word w(n);
    for (std::size_t i = n; i-- > 0;) {
      w[i] = code % b;
      code /= b;
    }
    return w;
  };
  auto has_forbidden = [&](const Word& u) {
    for (const auto& f : forbidden)
      if (f.size() <= u.size() && std::search(u.begin(), u.end(), f.begin(), f.end()) != u.end()) return true;
    return false;
  };

  std::vector<std::vector<int>> adj(S);
  for (int u = 0; u < S; ++u) {
    Word w = decode(u, len);
    if (has_forbidden(w)) continue;
    for (int a = 0; a < b; ++a) {
      Word e = w;
      e.push_back(a);
      if (has_forbidden(e)) continue;
      adj[u].push_back(static_cast<int>((static_cast<long>(u) * b + a) % S));
    }
  }

  int ncomp = 0;
  auto comp = scc(adj, ncomp);
  std::vector<std::vector<int>> members(ncomp);
  for (int u = 0; u < S; ++u) members[comp[u]].push_back(u);

  DimensionEstimate est;
  est.method = "transfer-matrix";
  est.empty = true;
  double lo = 0, hi = 0;
  for (const auto& mem : members) {
    std::vector<Eigen::Triplet<double>> trips;
    std::map<int, int> pos;
    for (std::size_t i = 0; i < mem.size(); ++i) pos[mem[i]] = static_cast<int>(i);
    for (int u : mem)
      for (int v : adj[u])
        if (auto it = pos.find(v); it != pos.end()) trips.emplace_back(pos[u], it->second, 1.0);
    if (trips.empty()) continue;  // a single state without a loop carries no cycle
    est.empty = false;
    Eigen::SparseMatrix<double, Eigen::RowMajor> A(static_cast<Eigen::Index>(mem.size()),
                                                   static_cast<Eigen::Index>(mem.size()));
    A.setFromTriplets(trips.begin(), trips.end());
    Bracket br = spectral_bracket(A, rel_tol);
    lo = std::max(lo, br.lo);
    hi = std::max(hi, br.hi);
  }
  if (est.empty) return est;
  // rounding in the bracket is far below this margin
  double margin = 1e-12;
  double lb = std::log(b);
  est.estimate = std::max(0.0, std::log(lo * (1 - margin)) / lb);
  est.upper = std::log(hi * (1 + margin)) / lb;
  return est;
}

DimensionEstimate box_count_lower_bound(const MapModel& m, const Word& avoid, int depth, Symbol digit_bound,
                                        std::size_t node_budget) {
  if (depth < 1) throw ConfigError("depth", "must be positive");
  DimensionEstimate est;
  est.method = "box-count";

  std::function<std::vector<Symbol>(int)> alphabet;
  if (m.kind() == ModelKind::Gauss) {
    if (digit_bound < 1) throw ConfigError("digit_bound", "must be positive");
    est.digit_bound = digit_bound;
    std::vector<Symbol> digits;
    for (Symbol a = 1; a <= digit_bound; ++a) digits.push_back(a);
    alphabet = [digits](int) { return digits; };
  } else if (m.finite_alphabet()) {
    alphabet = [&m](int state) {
      return m.branches_meeting(state, Scalar(0), m.domain_hi(state), Scalar(0)).symbols;
    };
  } else {
    throw ModelError("box counting needs a finite alphabet or the Gauss map");
  }

  // KMP failure function for the forbidden word
  std::size_t L = avoid.size();
  std::vector<std::size_t> fail(L, 0);
  for (std::size_t i = 1, k = 0; i < L; ++i) {
    while (k > 0 && avoid[i] != avoid[k]) k = fail[k - 1];
    if (avoid[i] == avoid[k]) ++k;
    fail[i] = k;
  }
  auto advance = [&](std::size_t k, Symbol s) -> std::size_t {
    if (L == 0) return 1;  // nothing is avoided
    while (k > 0 && avoid[k] != s) k = fail[k - 1];
    if (avoid[k] == s) ++k;
    return k;
  };

  struct Chart {
    double a, b, c, d;
  };
  auto as_double = [](const Mobius& mb) {
    return Chart{mb.a.to_double(), mb.b.to_double(), mb.c.to_double(), mb.d.to_double()};
  };
  auto compose = [](const Chart& f, const Chart& g) {
    return Chart{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
  };
  auto apply = [](const Chart& f, double y) { return (f.a * y + f.b) / (f.c * y + f.d); };

  std::map<Symbol, Chart> branch;
  std::size_t nodes = 0;
  double max_len = 0;
  std::function<void(int, const Chart&, int, std::size_t)> dfs = [&](int state, const Chart& ch, int level,
                                                                     std::size_t k) {
    if (++nodes > node_budget) throw Error("box counting exceeded the node budget");
    if (level == depth) {
      double len = std::abs(apply(ch, m.domain_hi(state).to_double()) - apply(ch, 0.0));
      max_len = std::max(max_len, len);
      ++est.count;
      return;
    }
    for (Symbol s : alphabet(state)) {
      std::size_t nk = advance(k, s);
      if (L > 0 && nk == L) continue;
      auto ns = m.next_state(state, s);
      if (!ns) continue;
      auto it = branch.find(s);
      if (it == branch.end()) it = branch.emplace(s, as_double(m.inverse_branch(s))).first;
      dfs(*ns, compose(ch, it->second), level + 1, nk);
    }
  };
  dfs(m.start_state(), Chart{1, 0, 0, 1}, 0, 0);
  if (est.count == 0) {
    est.empty = true;
    return est;
  }
  est.estimate = std::log(static_cast<double>(est.count)) / -std::log(max_len);
  return est;
}

}  // namespace schmidt
