#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "sudoku_redundancy/enumeration.hpp"
#include "sudoku_redundancy/rewrite.hpp"

using namespace sudoku_redundancy;

namespace {

ConstraintSet random_model(BoardOrder order, std::mt19937_64& rng, int max_missing) {
  std::vector<int> slots(order.regions());
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  const int k = 1 + static_cast<int>(rng() % max_missing);
  ConstraintSet s = ConstraintSet::full(order);
  for (int i = 0; i < k; ++i) s = s.without(BigConstraintId::from_slot(slots[i], order));
  return s;
}

// Preconditions checked from coordinates: does some chute have all lines
// but one box, or all boxes but one line?
bool oracle_has_step(const ConstraintSet& s) {
  const int n = s.order().n();
  for (int chute = 0; chute < n; ++chute) {
    for (int horizontal = 0; horizontal < 2; ++horizontal) {
      int lines_missing = 0, boxes_missing = 0;
      for (int i = 0; i < n; ++i) {
        const int line = chute * n + i + 1;
        const int box = horizontal ? chute * n + i + 1 : i * n + chute + 1;
        lines_missing += s.contains(horizontal ? BigConstraintId::row(line) : BigConstraintId::col(line)) ? 0 : 1;
        boxes_missing += s.contains(BigConstraintId::box(box)) ? 0 : 1;
      }
      if ((lines_missing == 0 && boxes_missing == 1) || (boxes_missing == 0 && lines_missing == 1)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("single missing constraints close in one step") {
  const BoardOrder order(3);
  const auto b2 = closure(ConstraintSet::parse_missing("B2", order));
  REQUIRE(b2.steps.size() == 1);
  CHECK(b2.steps[0].lemma == Lemma::LemmaI);
  CHECK(b2.steps[0].to_string() == "LemmaI H1 derives B2");
  CHECK(b2.reaches_full());

  const auto r2 = closure(ConstraintSet::parse_missing("R2", order));
  REQUIRE(r2.steps.size() == 1);
  CHECK(r2.steps[0].lemma == Lemma::LemmaII);
  CHECK(r2.reaches_full());

  for (const auto& id : all_constraints(order)) {
    const auto t = closure(ConstraintSet::full(order).without(id));
    CHECK(t.steps.size() == 1);
    CHECK(t.reaches_full());
  }
}

TEST_CASE("stuck and trivial closures") {
  const BoardOrder order(3);
  const auto s = ConstraintSet::parse_missing("C1,C3", order);
  CHECK(applicable_steps(s).empty());
  CHECK(!oracle_has_step(s));
  const auto t = closure(s);
  CHECK(t.steps.empty());
  CHECK(t.fixpoint == s);

  const auto full = closure(ConstraintSet::full(order));
  CHECK(full.steps.empty());
  CHECK(full.reaches_full());
}

TEST_CASE("the six-line model closes to the full set") {
  const auto t = closure(ConstraintSet::parse_missing("R2,R5,R8,C2,C5,C8", BoardOrder(3)));
  CHECK(t.reaches_full());
  CHECK(validate_trace(t));
}

TEST_CASE("step applicability agrees with the coordinate oracle") {
  for (int n : {2, 3}) {
    const BoardOrder order(n);
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 500; ++trial) {
      const auto s = random_model(order, rng, order.regions());
      CHECK(applicable_steps(s).empty() == !oracle_has_step(s));
      for (const auto& step : applicable_steps(s)) CHECK(!s.contains(step.derived));
    }
  }
}

TEST_CASE("closure is confluent") {
  const BoardOrder order(3);
  std::mt19937_64 rng(1234);
  for (int model = 0; model < 100; ++model) {
    const auto s = random_model(order, rng, 10);
    const auto reference = closure(s);
    REQUIRE(validate_trace(reference));
    for (int run = 0; run < 100; ++run) {
      const auto t = closure_with(s, [&](const std::vector<RewriteStep>& steps) { return rng() % steps.size(); });
      CHECK(t.fixpoint == reference.fixpoint);
      CHECK(t.steps.size() == reference.steps.size());
      CHECK(validate_trace(t));
    }
  }
}

TEST_CASE("closure commutes with symmetries") {
  const BoardOrder order(3);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_model(order, rng, 8);
    const auto g = SpatialSymmetry::random(order, rng);
    CHECK(closure(oracle::map_model(g, s)).fixpoint == oracle::map_model(g, closure(s).fixpoint));
  }
}

TEST_CASE("lemma steps are sound on solver grids") {
  const BoardOrder order(3);
  std::mt19937_64 rng(17);
  std::vector<ConstraintSet> instances = {ConstraintSet::parse_missing("B2", order),
                                          ConstraintSet::parse_missing("R2", order),
                                          ConstraintSet::parse_missing("C9", order),
                                          ConstraintSet::parse_missing("B9", order)};
  while (instances.size() < 10) {
    const auto s = random_model(order, rng, 6);
    if (!applicable_steps(s).empty()) instances.push_back(s);
  }
  for (const auto& s : instances) {
    const auto steps = applicable_steps(s);
    std::set<std::string> grids;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      SolverOptions options;
      options.value_seed = seed;
      const auto outcome = solve(SolverProblem::for_model(s), options);
      REQUIRE(outcome.status == SolveStatus::Solution);
      const Grid& g = *outcome.solution;
      grids.insert(g.to_string());
      for (const auto& step : steps) {
        const auto cells = oracle::cells_of(step.derived, order);
        std::set<int> values;
        for (auto c : cells) values.insert(g.at(c));
        CHECK(values.size() == cells.size());
      }
    }
    CHECK(grids.size() > 1);
  }
}

TEST_CASE("verdicts are invariant under the group") {
  const BoardOrder order(3);
  const auto catalog = minimal_catalog(order, 4).models();
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_model(order, rng, 6);
    const auto g = SpatialSymmetry::random(order, rng);
    const auto a = classify(s, catalog);
    const auto b = classify(oracle::map_model(g, s), catalog);
    CHECK(a.kind == b.kind);
  }
}

TEST_CASE("catalog matches decide classification") {
  const BoardOrder order(3);
  const std::vector<ConstraintSet> catalog = {ConstraintSet::parse_missing("C1,C3", order)};
  const auto c = classify(ConstraintSet::parse_missing("R4,R5", order), catalog);
  CHECK(c.kind == VerdictKind::NotSudoku);
  CHECK(c.catalog_match == std::size_t{0});
  const auto stuck = classify(ConstraintSet::parse_missing("B1,B2,B4,B5", order), catalog);
  CHECK(stuck.kind == VerdictKind::Stuck);
  CHECK(classify(ConstraintSet::parse_missing("B5", order), catalog).kind == VerdictKind::Sudoku);
}
