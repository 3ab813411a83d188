#pragma once

// Binary-inequality ("small") view of a model and single-pair minimality probes.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "sudoku_redundancy/board.hpp"
#include "sudoku_redundancy/solver.hpp"

namespace sudoku_redundancy {

// Sorted, duplicate-free set of small constraints on one board.
class SmallConstraintSet {
 public:
  SmallConstraintSet() = default;
  explicit SmallConstraintSet(BoardOrder order) : order_(order) {}
  SmallConstraintSet(BoardOrder order, std::vector<SmallConstraint> pairs) : order_(order), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  BoardOrder order() const { return order_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  const std::vector<SmallConstraint>& pairs() const { return pairs_; }

  bool contains(const SmallConstraint& sc) const { return std::binary_search(pairs_.begin(), pairs_.end(), sc); }

  SmallConstraintSet without(const SmallConstraint& sc) const {
    SmallConstraintSet out = *this;
    auto it = std::lower_bound(out.pairs_.begin(), out.pairs_.end(), sc);
    if (it == out.pairs_.end() || *it != sc) throw std::invalid_argument("pair " + sc.label() + " not in set");
    out.pairs_.erase(it);
    return out;
  }

  bool includes(const SmallConstraintSet& other) const {
    return std::includes(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end());
  }

  // Number of pairs touching `cell`.
  int degree(CellIndex cell) const {
    return static_cast<int>(std::count_if(pairs_.begin(), pairs_.end(),
                                          [&](const SmallConstraint& sc) { return sc.a == cell || sc.b == cell; }));
  }

  bool operator==(const SmallConstraintSet&) const = default;

 private:
  BoardOrder order_;
  std::vector<SmallConstraint> pairs_;
};

inline SmallConstraintSet expand_small(const ConstraintSet& s) {
  std::vector<SmallConstraint> pairs;
  for (const auto& id : s.present()) {
    const auto rc = region_cells(id, s.order());
    for (std::size_t i = 0; i < rc.size(); ++i)
      for (std::size_t j = i + 1; j < rc.size(); ++j) pairs.push_back(SmallConstraint::make(rc[i], rc[j]));
  }
  return {s.order(), std::move(pairs)};
}

struct SmallCountRange {
  std::size_t min = 0;
  std::size_t max = 0;
  std::vector<ConstraintSet> argmin;
  std::vector<ConstraintSet> argmax;
};

inline SmallCountRange small_count_range(std::span<const ConstraintSet> classes) {
  if (classes.empty()) throw std::invalid_argument("small_count_range needs at least one class");
  SmallCountRange r;
  r.min = SIZE_MAX;
  for (const auto& s : classes) {
    const std::size_t count = expand_small(s).size();
    if (count < r.min) {
      r.min = count;
      r.argmin.clear();
    }
    if (count == r.min) r.argmin.push_back(s);
    if (count > r.max) {
      r.max = count;
      r.argmax.clear();
    }
    if (count == r.max) r.argmax.push_back(s);
  }
  return r;
}

// Which pairs of a base set to probe.
struct ProbeSelection {
  enum class Mode : std::uint8_t { All, Sample, Explicit };
  Mode mode = Mode::All;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::vector<SmallConstraint> pairs;

  static ProbeSelection all() { return {}; }
  static ProbeSelection sample(std::size_t k, std::uint64_t seed) { return {Mode::Sample, k, seed, {}}; }
  static ProbeSelection only(std::vector<SmallConstraint> pairs) { return {Mode::Explicit, 0, 0, std::move(pairs)}; }

  std::vector<SmallConstraint> resolve(const SmallConstraintSet& base) const {
    switch (mode) {
      case Mode::All: return base.pairs();
      case Mode::Sample: {
        std::vector<SmallConstraint> out;
        std::mt19937_64 rng(seed);
        std::sample(base.begin(), base.end(), std::back_inserter(out), std::min(sample_size, base.size()), rng);
        return out;
      }
      case Mode::Explicit:
        for (const auto& p : pairs)
          if (!base.contains(p)) throw std::invalid_argument("probe pair " + p.label() + " is not in the base set");
        return pairs;
    }
    return {};
  }
};

enum class ProbeVerdict : std::uint8_t {
  // Base minus the pair admits a grid with the two cells equal: the pair cannot go.
  Needed,
  // Exhaustive search found no such grid: base minus the pair still entails it.
  Redundant,
  Inconclusive,
};

inline const char* probe_verdict_name(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Needed: return "needed";
    case ProbeVerdict::Redundant: return "redundant";
    case ProbeVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ProbeRecord {
  SmallConstraint pair;
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::optional<Grid> witness;
  // Corpus index of the puzzle whose givens led to the witness.
  std::optional<std::size_t> seed_puzzle;
  std::size_t seeds_tried = 0;
  SolverStats stats;
};

inline SolverOptions default_probe_solver_options() {
  SolverOptions o;
  o.restart_base = 1000;
  return o;
}

struct ProbeOptions {
  // Solutions of a probe are rare, so searches restart with shuffled values.
  SolverOptions solver = default_probe_solver_options();
  // After the corpus fails, also run one search without givens.
  bool unseeded_fallback = true;
};

// For each selected pair (x, y): solve (base minus the pair) plus x = y.
// With a corpus, puzzles are tried as givens in file order until one
// yields a solution; a failure under givens proves nothing.
inline ProbeRecord probe_pair(const SmallConstraintSet& base, const SmallConstraint& pair,
                              std::span<const Grid> corpus = {}, const ProbeOptions& options = {}) {
  const auto rest = base.without(pair);
  SolverProblem problem = SolverProblem::for_smalls(base.order(), rest.pairs());
  problem.equalities.emplace_back(pair.a, pair.b);

  ProbeRecord record;
  record.pair = pair;
  auto accept = [&](const SolverOutcome& outcome) {
    const Grid& g = *outcome.solution;
    for (const auto& sc : rest)
      if (g.at(sc.a) == g.at(sc.b)) throw std::logic_error("probe witness violates a kept pair");
    if (g.at(pair.a) != g.at(pair.b)) throw std::logic_error("probe witness does not merge the pair");
    record.verdict = ProbeVerdict::Needed;
    record.witness = g;
  };

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    SolverProblem seeded = problem;
    seeded.givens = corpus[i];
    ++record.seeds_tried;
    const auto outcome = solve(seeded, options.solver);
    record.stats += outcome.stats;
    if (outcome.status == SolveStatus::Solution) {
      accept(outcome);
      record.seed_puzzle = i;
      return record;
    }
  }
  if (corpus.empty() || options.unseeded_fallback) {
    const auto outcome = solve(problem, options.solver);
    record.stats += outcome.stats;
    if (outcome.status == SolveStatus::Solution) accept(outcome);
    else if (outcome.status == SolveStatus::Unsatisfiable) record.verdict = ProbeVerdict::Redundant;
  }
  return record;
}

inline std::vector<ProbeRecord> probe_minimality(const SmallConstraintSet& base, const ProbeSelection& selection,
                                                 std::span<const Grid> corpus = {},
                                                 const ProbeOptions& options = {}) {
  std::vector<ProbeRecord> records;
  for (const auto& pair : selection.resolve(base)) records.push_back(probe_pair(base, pair, corpus, options));
  return records;
}

}  // namespace sudoku_redundancy
