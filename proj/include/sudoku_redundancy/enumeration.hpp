#pragma once

// Missing(k) classification: enumerate models with k missing constraints up
// to symmetry, close each under the chute lemmas, discover the catalog of
// minimal stuck fixpoints (each backed by a witness grid) and classify.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "sudoku_redundancy/board.hpp"
#include "sudoku_redundancy/rewrite.hpp"
#include "sudoku_redundancy/solver.hpp"
#include "sudoku_redundancy/symmetry.hpp"

namespace sudoku_redundancy {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

// Calls fn(missing_mask) for every k-subset of the 3n^2 slots, in increasing
// mask order (mask bit i = slot i).
template <class Fn>
void for_each_missing_set(BoardOrder order, int k, Fn&& fn) {
  const int width = order.regions();
  if (k < 0 || k > width) throw std::invalid_argument("missing count out of range");
  if (k == 0) {
    fn(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = width == 64 ? 0 : (std::uint64_t{1} << width);
  std::uint64_t mask = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  for (;;) {
    fn(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    if (ripple == 0 || (limit != 0 && ripple >= limit)) break;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
    if (limit != 0 && mask >= limit) break;
  }
}

inline ConstraintSet from_missing_mask(BoardOrder order, std::uint64_t mask) {
  std::uint64_t key = ConstraintSet::width_mask(order);
  for (int slot = 0; slot < order.regions(); ++slot)
    if (mask >> slot & 1u) key &= ~ConstraintSet::slot_bit(slot, order);
  return ConstraintSet::from_key(order, key);
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

struct ClassEntry {
  ConstraintSet representative;  // canonical
  std::uint64_t orbit_size = 0;  // raw models mapping to this class
};

struct ClassEnumeration {
  BoardOrder order;
  int n_missing = 0;
  std::uint64_t raw_count = 0;
  std::vector<ClassEntry> classes;  // ascending canonical key
};

inline ClassEnumeration enumerate_classes(BoardOrder order, int n_missing) {
  if (n_missing < 0 || n_missing > order.regions()) {
    throw std::invalid_argument("n_missing must be in [0.." + std::to_string(order.regions()) + "]");
  }
  std::map<std::uint64_t, std::uint64_t> seen;
  ClassEnumeration out{order, n_missing, 0, {}};
  for_each_missing_set(order, n_missing, [&](std::uint64_t mask) {
    ++out.raw_count;
    ++seen[canonicalize(from_missing_mask(order, mask)).key()];
  });
  for (const auto& [key, count] : seen) out.classes.push_back({ConstraintSet::from_key(order, key), count});
  return out;
}

// Some chute misses two or more of its lines. Two parallel lines of one
// chute is the smallest stuck pattern; such models are trivially not Sudoku.
inline bool has_chute_line_pair(const ConstraintSet& s) {
  for (const Chute& chute : all_chutes(s.order())) {
    int missing = 0;
    for (const auto& id : chute_members(chute, s.order()).lines) missing += s.contains(id) ? 0 : 1;
    if (missing >= 2) return true;
  }
  return false;
}

struct CatalogEntry {
  ConstraintSet model;  // canonical stuck fixpoint
  Grid witness;
  int first_reached_from = 0;  // smallest k whose Missing(k) closes onto this class
};

struct Catalog {
  BoardOrder order;
  int max_missing = 0;
  std::vector<CatalogEntry> entries;
  // Minimal stuck fixpoints for which no witness was found.
  std::vector<ConstraintSet> unresolved;

  std::vector<ConstraintSet> models() const {
    std::vector<ConstraintSet> out;
    for (const auto& e : entries) out.push_back(e.model);
    return out;
  }
};

struct ClassificationOptions {
  SolverOptions solver;
  // Attach a direct witness grid to every non-Sudoku class.
  bool witness_each = true;
  unsigned threads = 0;
};

namespace detail {

// Stuck fixpoint classes reachable from Missing(k), k <= max_missing, with
// the smallest k reaching each.
inline std::map<std::uint64_t, int> stuck_fixpoints(const std::vector<ClassEnumeration>& levels) {
  std::map<std::uint64_t, int> stuck;
  for (const auto& level : levels) {
    for (const auto& entry : level.classes) {
      const auto trace = closure(entry.representative);
      if (trace.reaches_full()) continue;
      stuck.emplace(canonicalize(trace.fixpoint).key(), level.n_missing);
    }
  }
  return stuck;
}

inline Catalog build_catalog(BoardOrder order, int max_missing, const std::vector<ClassEnumeration>& levels,
                             const ClassificationOptions& options) {
  const auto stuck = stuck_fixpoints(levels);
  std::vector<std::pair<ConstraintSet, int>> candidates;
  for (const auto& [key, k] : stuck) candidates.emplace_back(ConstraintSet::from_key(order, key), k);
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.first.missing_count() < b.first.missing_count();
  });

  Catalog catalog{order, max_missing, {}, {}};
  // Smaller fixpoints first, so every entry's possible sub-patterns are settled before it.
  for (const auto& [model, k] : candidates) {
    const bool subsumed = std::any_of(catalog.entries.begin(), catalog.entries.end(),
                                      [&](const CatalogEntry& e) { return embeds_up_to_symmetry(e.model, model); });
    if (subsumed) continue;
    auto w = find_witness(model, options.solver);
    if (w.found()) catalog.entries.push_back({model, *w.grid, k});
    else catalog.unresolved.push_back(model);
  }
  return catalog;
}

inline std::vector<ClassEnumeration> enumerate_levels(BoardOrder order, int max_missing) {
  std::vector<ClassEnumeration> levels;
  for (int k = 0; k <= max_missing; ++k) levels.push_back(enumerate_classes(order, k));
  return levels;
}

}  // namespace detail

// Subset-minimal witnessed stuck fixpoints of Missing(k), k <= max_missing.
inline Catalog minimal_catalog(BoardOrder order, int max_missing, const ClassificationOptions& options = {}) {
  if (max_missing < 2) throw std::invalid_argument("minimal_catalog needs max_missing >= 2");
  return detail::build_catalog(order, max_missing, detail::enumerate_levels(order, max_missing), options);
}

struct ClassificationRecord {
  ConstraintSet model;  // canonical representative
  std::uint64_t orbit_size = 0;
  ClosureTrace trace;
  // Stuck here means unresolved: no catalog match and no witness.
  VerdictKind verdict = VerdictKind::Stuck;
  std::optional<std::size_t> catalog_match;
  std::optional<Grid> witness;
  bool chute_line_pair = false;
};

struct ClassificationReport {
  BoardOrder order;
  int n_missing = 0;
  std::uint64_t raw_count = 0;
  std::vector<ClassificationRecord> records;
  Catalog catalog;
  double seconds = 0;

  std::size_t class_count() const { return records.size(); }
  std::size_t count(VerdictKind v) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.verdict == v; }));
  }
  std::size_t sudoku_count() const { return count(VerdictKind::Sudoku); }
  std::size_t not_sudoku_count() const { return count(VerdictKind::NotSudoku); }
  std::size_t unresolved_count() const { return count(VerdictKind::Stuck); }

  // Inventory without classes that miss two parallel lines of one chute.
  std::vector<const ClassificationRecord*> reduced() const {
    std::vector<const ClassificationRecord*> out;
    for (const auto& r : records)
      if (!r.chute_line_pair) out.push_back(&r);
    return out;
  }
  std::size_t reduced_count(VerdictKind v) const {
    const auto rs = reduced();
    return static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [&](const auto* r) { return r->verdict == v; }));
  }

  std::vector<ConstraintSet> sudoku_classes() const {
    std::vector<ConstraintSet> out;
    for (const auto& r : records)
      if (r.verdict == VerdictKind::Sudoku) out.push_back(r.model);
    return out;
  }
};

inline ClassificationReport run_classification(BoardOrder order, int n_missing,
                                               const ClassificationOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto levels = detail::enumerate_levels(order, n_missing);
  ClassificationReport report;
  report.order = order;
  report.n_missing = n_missing;
  report.raw_count = levels.back().raw_count;
  report.catalog = n_missing >= 2 ? detail::build_catalog(order, n_missing, levels, options)
                                  : Catalog{order, n_missing, {}, {}};
  const auto catalog_models = report.catalog.models();

  const auto& classes = levels.back().classes;
  report.records.resize(classes.size());
  parallel_for(classes.size(), options.threads, [&](std::size_t i) {
    auto& rec = report.records[i];
    rec.model = classes[i].representative;
    rec.orbit_size = classes[i].orbit_size;
    rec.chute_line_pair = has_chute_line_pair(rec.model);
    auto c = classify(rec.model, catalog_models);
    rec.trace = std::move(c.trace);
    rec.catalog_match = c.catalog_match;
    rec.verdict = c.kind;
    if (rec.verdict == VerdictKind::Sudoku) return;
    if (options.witness_each || rec.verdict == VerdictKind::Stuck) {
      auto w = find_witness(rec.trace.fixpoint, options.solver);
      if (w.found()) {
        rec.witness = *w.grid;
        rec.verdict = VerdictKind::NotSudoku;
      }
    }
  });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sudoku_redundancy
