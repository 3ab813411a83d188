#pragma once

// Chute lemmas as rewrite rules on constraint sets.
//
//   LemmaI:  all n lines of a chute plus n-1 of its boxes entail the last box.
//   LemmaII: all n boxes of a chute plus n-1 of its lines entail the last line.
//
// Closure applies rules until none adds a constraint. The rules only ever
// add constraints, so the fixpoint does not depend on application order.

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sudoku_redundancy/board.hpp"
#include "sudoku_redundancy/symmetry.hpp"

namespace sudoku_redundancy {

enum class Lemma : std::uint8_t { LemmaI, LemmaII };

inline const char* lemma_name(Lemma l) { return l == Lemma::LemmaI ? "LemmaI" : "LemmaII"; }

struct RewriteStep {
  Lemma lemma = Lemma::LemmaI;
  Chute chute;
  BigConstraintId derived;

  bool operator==(const RewriteStep&) const = default;

  // "LemmaI H1 derives B2"
  std::string to_string() const {
    return std::string(lemma_name(lemma)) + " " + chute.label() + " derives " + derived.label();
  }
};

// LemmaI steps (chutes H1..Hn, V1..Vn) followed by LemmaII steps.
inline std::vector<RewriteStep> applicable_steps(const ConstraintSet& s) {
  const BoardOrder order = s.order();
  std::vector<RewriteStep> lemma1, lemma2;
  for (const Chute& chute : all_chutes(order)) {
    const auto m = chute_members(chute, order);
    auto absent = [&](const std::vector<BigConstraintId>& ids) {
      std::vector<BigConstraintId> out;
      for (const auto& id : ids)
        if (!s.contains(id)) out.push_back(id);
      return out;
    };
    const auto lines_absent = absent(m.lines);
    const auto boxes_absent = absent(m.boxes);
    if (lines_absent.empty() && boxes_absent.size() == 1) {
      lemma1.push_back({Lemma::LemmaI, chute, boxes_absent.front()});
    } else if (boxes_absent.empty() && lines_absent.size() == 1) {
      lemma2.push_back({Lemma::LemmaII, chute, lines_absent.front()});
    }
  }
  lemma1.insert(lemma1.end(), lemma2.begin(), lemma2.end());
  return lemma1;
}

struct ClosureTrace {
  ConstraintSet start;
  std::vector<RewriteStep> steps;
  ConstraintSet fixpoint;

  bool reaches_full() const { return fixpoint.is_full(); }

  // One step per line.
  std::string log() const {
    std::ostringstream out;
    for (const auto& step : steps) out << step.to_string() << '\n';
    return out.str();
  }
};

// `choose` picks an index into the non-empty list of applicable steps.
template <class Chooser>
ClosureTrace closure_with(const ConstraintSet& start, Chooser&& choose) {
  ClosureTrace trace{start, {}, start};
  for (;;) {
    const auto steps = applicable_steps(trace.fixpoint);
    if (steps.empty()) break;
    const auto& step = steps.at(choose(steps));
    trace.steps.push_back(step);
    trace.fixpoint = trace.fixpoint.with(step.derived);
  }
  return trace;
}

// Deterministic: always takes the first applicable step.
inline ClosureTrace closure(const ConstraintSet& start) {
  return closure_with(start, [](const std::vector<RewriteStep>&) { return std::size_t{0}; });
}

// Replays the trace and checks every step precondition and the final fixpoint.
inline bool validate_trace(const ClosureTrace& trace) {
  ConstraintSet current = trace.start;
  for (const auto& step : trace.steps) {
    const auto steps = applicable_steps(current);
    if (std::find(steps.begin(), steps.end(), step) == steps.end()) return false;
    current = current.with(step.derived);
  }
  return current == trace.fixpoint && applicable_steps(current).empty();
}

enum class VerdictKind : std::uint8_t { Sudoku, Stuck, NotSudoku };

inline const char* verdict_name(VerdictKind v) {
  switch (v) {
    case VerdictKind::Sudoku: return "Sudoku";
    case VerdictKind::Stuck: return "Stuck";
    case VerdictKind::NotSudoku: return "NotSudoku";
  }
  return "?";
}

struct Classification {
  VerdictKind kind = VerdictKind::Stuck;
  ClosureTrace trace;
  // Index into the catalog of the first entry embedding into the fixpoint.
  std::optional<std::size_t> catalog_match;
};

// Catalog entries are constraint sets known not to be Sudoku. A model whose
// fixpoint misses (up to symmetry) everything some entry misses has fewer
// constraints than that entry, so it is not Sudoku either.
inline Classification classify(const ConstraintSet& s, std::span<const ConstraintSet> catalog) {
  Classification c{VerdictKind::Stuck, closure(s), std::nullopt};
  if (c.trace.reaches_full()) {
    c.kind = VerdictKind::Sudoku;
    return c;
  }
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (embeds_up_to_symmetry(catalog[i], c.trace.fixpoint)) {
      c.kind = VerdictKind::NotSudoku;
      c.catalog_match = i;
      break;
    }
  }
  return c;
}

}  // namespace sudoku_redundancy
