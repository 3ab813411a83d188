#pragma once

// Propagation-based backtracking search over big constraints, extra small
// constraints, forced cell equalities and givens.
//
// Cells forced equal are merged into one search variable. Propagation removes
// an assigned value from every neighbour and applies hidden singles on
// "complete" regions, i.e. regions whose every cell pair is constrained to
// differ (those must hold each value exactly once). Branching takes the
// smallest choice among cell domains and value placements in complete regions.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sudoku_redundancy/board.hpp"

namespace sudoku_redundancy {

struct SolverProblem {
  BoardOrder order;
  ConstraintSet bigs;
  std::vector<SmallConstraint> extra_smalls;
  std::vector<std::pair<CellIndex, CellIndex>> equalities;
  Grid givens;

  static SolverProblem for_model(const ConstraintSet& bigs) {
    return {bigs.order(), bigs, {}, {}, Grid(bigs.order())};
  }
  // Only the listed small constraints, no big ones.
  static SolverProblem for_smalls(BoardOrder order, std::vector<SmallConstraint> smalls) {
    return {order, ConstraintSet::empty(order), std::move(smalls), {}, Grid(order)};
  }
};

enum class SolveStatus : std::uint8_t { Solution, Unsatisfiable, Budget };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solution: return "solution";
    case SolveStatus::Unsatisfiable: return "unsatisfiable";
    case SolveStatus::Budget: return "budget";
  }
  return "?";
}

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  // An equality joins two cells that are also constrained to differ.
  bool degenerate = false;

  SolverStats& operator+=(const SolverStats& o) {
    nodes += o.nodes;
    propagations += o.propagations;
    degenerate = degenerate || o.degenerate;
    return *this;
  }
};

struct SolverOutcome {
  SolveStatus status = SolveStatus::Unsatisfiable;
  std::optional<Grid> solution;
  SolverStats stats;
};

enum class Branching : std::uint8_t {
  // Minimum remaining domain only.
  Cells,
  // Also consider "where does value v go in region R", whichever is smaller.
  CellsAndPlacements,
};

struct SolverOptions {
  // Total over all restarts.
  std::uint64_t node_budget = 10'000'000;
  // Shuffle value order per node when set; ascending otherwise.
  std::optional<std::uint64_t> value_seed;
  Branching branching = Branching::CellsAndPlacements;
  // When non-zero, restart with budgets restart_base * luby(i) and a fresh
  // shuffle seed per run. A run that finishes inside its budget is still a
  // complete search, so Unsatisfiable stays a proof.
  std::uint64_t restart_base = 0;
};

// 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
inline std::uint64_t luby(std::uint64_t i) {
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    if (i == full) return std::uint64_t{1} << (k - 1);
    if (i < full) return luby(i - ((std::uint64_t{1} << (k - 1)) - 1));
  }
}

// Independent check of a complete grid against every part of a problem.
inline bool satisfies(const Grid& grid, const SolverProblem& p) {
  if (!grid.is_complete() || !(grid.order() == p.order)) return false;
  if (!verify_grid(grid, p.bigs).empty()) return false;
  for (const auto& sc : p.extra_smalls)
    if (grid.at(sc.a) == grid.at(sc.b)) return false;
  for (const auto& [x, y] : p.equalities)
    if (grid.at(x) != grid.at(y)) return false;
  for (int i = 0; i < p.order.cells(); ++i)
    if (p.givens.at_flat(i) != 0 && p.givens.at_flat(i) != grid.at_flat(i)) return false;
  return true;
}

class Solver {
 public:
  explicit Solver(SolverProblem problem, SolverOptions options = {})
      : problem_(std::move(problem)), options_(options), rng_(options.value_seed.value_or(0)) {
    compile();
  }

  SolverOutcome solve() {
    SolverOutcome out;
    stats_ = {};
    stats_.degenerate = degenerate_;
    if (!inconsistent_) {
      bool found = false;
      if (options_.restart_base == 0) {
        found = run(options_.node_budget, options_.value_seed.has_value());
      } else {
        const std::uint64_t seed0 = options_.value_seed.value_or(0);
        for (std::uint64_t i = 1; stats_.nodes < options_.node_budget; ++i) {
          rng_.seed(seed0 + i);
          const std::uint64_t cap = std::min(options_.restart_base * luby(i), options_.node_budget - stats_.nodes);
          found = run(stats_.nodes + cap, true);
          if (found || !out_of_budget_) break;
        }
      }
      if (found) {
        out.status = SolveStatus::Solution;
        out.solution = to_grid(solution_);
        if (!satisfies(*out.solution, problem_)) {
          throw std::logic_error("solver produced a grid that fails verification");
        }
      } else {
        out.status = out_of_budget_ ? SolveStatus::Budget : SolveStatus::Unsatisfiable;
      }
    }
    out.stats = stats_;
    return out;
  }

 private:
  // One complete search from the root; stops once stats_.nodes passes node_limit.
  bool run(std::uint64_t node_limit, bool shuffle) {
    node_limit_ = node_limit;
    shuffle_ = shuffle;
    out_of_budget_ = false;
    solution_.clear();
    std::vector<std::uint32_t> domains = initial_domains_;
    std::vector<int> queue;
    for (int v = 0; v < vars_; ++v)
      if (std::has_single_bit(domains[v])) queue.push_back(v);
    return propagate(domains, queue) && search(domains);
  }

  void compile() {
    const BoardOrder order = problem_.order;
    if (!(problem_.bigs.order() == order) || !(problem_.givens.order() == order)) {
      throw std::invalid_argument("solver problem mixes board orders");
    }
    const int cells = order.cells();
    for (const auto& sc : problem_.extra_smalls)
      if (!sc.a.valid(order) || !sc.b.valid(order)) throw std::invalid_argument("small constraint off the board");
    for (const auto& [x, y] : problem_.equalities)
      if (!x.valid(order) || !y.valid(order)) throw std::invalid_argument("equality cell off the board");

    // Union-find over equalities; variables numbered by their smallest cell.
    std::vector<int> parent(cells);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [x, y] : problem_.equalities) {
      int a = find(x.flat(order)), b = find(y.flat(order));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    var_of_cell_.assign(cells, -1);
    vars_ = 0;
    std::vector<int> var_of_root(cells, -1);
    for (int c = 0; c < cells; ++c) {
      int r = find(c);
      if (var_of_root[r] < 0) var_of_root[r] = vars_++;
      var_of_cell_[c] = var_of_root[r];
    }

    std::vector<std::uint8_t> differ(static_cast<std::size_t>(cells) * cells, 0);
    auto mark = [&](int a, int b) {
      differ[static_cast<std::size_t>(a) * cells + b] = 1;
      differ[static_cast<std::size_t>(b) * cells + a] = 1;
    };
    for (const auto& id : problem_.bigs.present()) {
      const auto rc = region_cells(id, order);
      for (std::size_t i = 0; i < rc.size(); ++i)
        for (std::size_t j = i + 1; j < rc.size(); ++j) mark(rc[i].flat(order), rc[j].flat(order));
    }
    for (const auto& sc : problem_.extra_smalls) mark(sc.a.flat(order), sc.b.flat(order));

    std::vector<std::vector<std::uint8_t>> adj(vars_, std::vector<std::uint8_t>(vars_, 0));
    for (int a = 0; a < cells; ++a) {
      for (int b = a + 1; b < cells; ++b) {
        if (!differ[static_cast<std::size_t>(a) * cells + b]) continue;
        const int va = var_of_cell_[a], vb = var_of_cell_[b];
        if (va == vb) {
          degenerate_ = true;
          inconsistent_ = true;
        } else {
          adj[va][vb] = adj[vb][va] = 1;
        }
      }
    }
    neighbours_.assign(vars_, {});
    for (int a = 0; a < vars_; ++a)
      for (int b = 0; b < vars_; ++b)
        if (adj[a][b]) neighbours_[a].push_back(b);
    std::vector<int> members(vars_, 0);
    for (int c = 0; c < cells; ++c) ++members[var_of_cell_[c]];
    tie_rank_.assign(vars_, 0);
    for (int v = 0; v < vars_; ++v) tie_rank_[v] = members[v] * (cells + 1) + static_cast<int>(neighbours_[v].size());

    // Complete regions become hidden-single / placement groups.
    for (const auto& id : all_constraints(order)) {
      const auto rc = region_cells(id, order);
      bool complete = true;
      for (std::size_t i = 0; i < rc.size() && complete; ++i)
        for (std::size_t j = i + 1; j < rc.size() && complete; ++j)
          complete = differ[static_cast<std::size_t>(rc[i].flat(order)) * cells + rc[j].flat(order)] != 0;
      if (!complete) continue;
      std::vector<int> group;
      for (const auto& cell : rc) group.push_back(var_of_cell_[cell.flat(order)]);
      groups_.push_back(std::move(group));
    }

    all_values_ = (order.values() == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << order.values()) - 1;
    initial_domains_.assign(vars_, all_values_);
    for (int c = 0; c < cells; ++c) {
      const int v = problem_.givens.at_flat(c);
      if (v == 0) continue;
      initial_domains_[var_of_cell_[c]] &= std::uint32_t{1} << (v - 1);
      if (initial_domains_[var_of_cell_[c]] == 0) inconsistent_ = true;
    }
  }

  bool propagate(std::vector<std::uint32_t>& dom, std::vector<int>& queue) {
    for (;;) {
      while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        const std::uint32_t bit = dom[v];
        for (int nb : neighbours_[v]) {
          if (!(dom[nb] & bit)) continue;
          dom[nb] &= ~bit;
          ++stats_.propagations;
          if (dom[nb] == 0) return false;
          if (std::has_single_bit(dom[nb])) queue.push_back(nb);
        }
      }
      for (const auto& group : groups_) {
        std::uint32_t once = 0, twice = 0;
        for (int v : group) {
          twice |= once & dom[v];
          once |= dom[v];
        }
        if (once != all_values_) return false;
        std::uint32_t singles = once & ~twice;
        while (singles) {
          const std::uint32_t bit = singles & (~singles + 1);
          singles &= singles - 1;
          for (int v : group) {
            if (!(dom[v] & bit)) continue;
            if (dom[v] != bit) {
              dom[v] = bit;
              ++stats_.propagations;
              queue.push_back(v);
            }
            break;
          }
        }
      }
      if (queue.empty()) return true;
    }
  }

  bool search(std::vector<std::uint32_t>& dom) {
    // Smallest domain; ties go to variables merging more cells, then to more
    // neighbours, then to the lower index.
    int best_var = -1;
    int best_size = 64;
    for (int v = 0; v < vars_; ++v) {
      const int size = std::popcount(dom[v]);
      if (size <= 1) continue;
      if (size < best_size || (size == best_size && tie_rank_[v] > tie_rank_[best_var])) {
        best_size = size;
        best_var = v;
      }
    }
    if (best_var < 0) {
      solution_ = dom;
      return true;
    }

    // Placement alternative: fewest cells that can still take some value in a group.
    const std::vector<int>* best_group = nullptr;
    std::uint32_t best_bit = 0;
    if (options_.branching == Branching::CellsAndPlacements) {
      for (const auto& group : groups_) {
        for (std::uint32_t bits = all_values_; bits; bits &= bits - 1) {
          const std::uint32_t bit = bits & (~bits + 1);
          int count = 0;
          bool placed = false;
          for (int v : group) {
            if (dom[v] == bit) { placed = true; break; }
            if (dom[v] & bit) ++count;
          }
          if (!placed && count < best_size) {
            best_size = count;
            best_group = &group;
            best_bit = bit;
          }
        }
      }
    }

    std::vector<std::pair<int, std::uint32_t>> choices;
    if (best_group) {
      for (int v : *best_group)
        if (dom[v] & best_bit) choices.emplace_back(v, best_bit);
    } else {
      for (std::uint32_t bits = dom[best_var]; bits; bits &= bits - 1)
        choices.emplace_back(best_var, bits & (~bits + 1));
    }
    if (shuffle_) std::shuffle(choices.begin(), choices.end(), rng_);

    for (const auto& [var, bit] : choices) {
      if (++stats_.nodes > node_limit_) {
        out_of_budget_ = true;
        return false;
      }
      std::vector<std::uint32_t> next = dom;
      next[var] = bit;
      std::vector<int> queue{var};
      if (propagate(next, queue) && search(next)) return true;
      if (out_of_budget_) return false;
    }
    return false;
  }

  Grid to_grid(const std::vector<std::uint32_t>& dom) const {
    Grid g(problem_.order);
    for (int c = 0; c < problem_.order.cells(); ++c)
      g.set_flat(c, std::countr_zero(dom[var_of_cell_[c]]) + 1);
    return g;
  }

  SolverProblem problem_;
  SolverOptions options_;
  std::mt19937_64 rng_;

  int vars_ = 0;
  std::vector<int> var_of_cell_;
  std::vector<std::vector<int>> neighbours_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> tie_rank_;
  std::vector<std::uint32_t> initial_domains_;
  std::uint32_t all_values_ = 0;
  bool degenerate_ = false;
  bool inconsistent_ = false;

  SolverStats stats_;
  std::uint64_t node_limit_ = 0;
  bool shuffle_ = false;
  bool out_of_budget_ = false;
  std::vector<std::uint32_t> solution_;
};

inline SolverOutcome solve(const SolverProblem& problem, SolverOptions options = {}) {
  return Solver(problem, options).solve();
}

// Cells x, y share a region whose constraint is present in `model`.
inline bool jointly_covered(CellIndex x, CellIndex y, const ConstraintSet& model) {
  const BoardOrder order = model.order();
  for (const auto& id : regions_of(x, order))
    if (model.contains(id) && region_contains(id, y, order)) return true;
  return false;
}

struct WitnessProbe {
  BigConstraintId region;
  SmallConstraint pair;
};

struct WitnessResult {
  std::optional<Grid> grid;
  std::optional<WitnessProbe> probe;
  std::size_t probes_tried = 0;
  // Probes that ran out of budget; NoneFound is then inconclusive even as a hint.
  std::size_t budget_hits = 0;
  SolverStats stats;

  bool found() const { return grid.has_value(); }
};

// Looks for a complete grid that satisfies every constraint of `model` and
// violates at least one absent constraint. Probes, in order of absent
// region and then cell pair, force two cells of the region that no present
// constraint separates to be equal. Not finding one proves nothing.
inline WitnessResult find_witness(const ConstraintSet& model, SolverOptions options = {}) {
  if (model.is_full()) throw std::invalid_argument("find_witness needs a model with a missing constraint");
  const BoardOrder order = model.order();
  WitnessResult result;
  for (const auto& region : model.missing()) {
    const auto rc = region_cells(region, order);
    for (std::size_t i = 0; i < rc.size(); ++i) {
      for (std::size_t j = i + 1; j < rc.size(); ++j) {
        if (jointly_covered(rc[i], rc[j], model)) continue;
        SolverProblem problem = SolverProblem::for_model(model);
        problem.equalities.emplace_back(rc[i], rc[j]);
        ++result.probes_tried;
        auto outcome = solve(problem, options);
        result.stats += outcome.stats;
        if (outcome.status == SolveStatus::Budget) ++result.budget_hits;
        if (outcome.status != SolveStatus::Solution) continue;
        const Grid& g = *outcome.solution;
        if (!verify_grid(g, model).empty() || verify_grid(g, ConstraintSet::full(order)).empty()) {
          throw std::logic_error("witness grid failed re-verification");
        }
        result.grid = g;
        result.probe = WitnessProbe{region, SmallConstraint::make(rc[i], rc[j])};
        return result;
      }
    }
  }
  return result;
}

}  // namespace sudoku_redundancy
