#include <catch_amalgamated.hpp>

#include <bit>
#include <numeric>

#include "oracles.hpp"
#include "sudoku_redundancy/enumeration.hpp"

using namespace sudoku_redundancy;

namespace {

const BoardOrder kOrder3(3);

ClassificationOptions fast_options() {
  ClassificationOptions o;
  o.witness_each = false;
  return o;
}

const ClassificationReport& missing6() {
  static const ClassificationReport report = run_classification(kOrder3, 6, fast_options());
  return report;
}

}  // namespace

TEST_CASE("raw counts and orbit sums") {
  for (int k = 0; k <= 4; ++k) {
    const auto e = enumerate_classes(kOrder3, k);
    CHECK(e.raw_count == binomial(27, k));
    std::uint64_t sum = 0;
    for (const auto& c : e.classes) {
      sum += c.orbit_size;
      CHECK(canonicalize(c.representative) == c.representative);
      CHECK(c.orbit_size == orbit_size(c.representative));
    }
    CHECK(sum == e.raw_count);
  }
  CHECK(enumerate_classes(kOrder3, 0).classes.size() == 1);
  CHECK(enumerate_classes(kOrder3, 1).classes.size() == 2);
  CHECK(enumerate_classes(kOrder3, 27).classes.size() == 1);
  CHECK_THROWS_AS(enumerate_classes(kOrder3, 28), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_classes(kOrder3, -1), std::invalid_argument);
}

TEST_CASE("subset iteration visits every k-subset once") {
  const BoardOrder order(2);
  std::set<std::uint64_t> seen;
  for_each_missing_set(order, 3, [&](std::uint64_t m) {
    CHECK(std::popcount(m) == 3);
    CHECK(m < (1u << 12));
    seen.insert(m);
  });
  CHECK(seen.size() == binomial(12, 3));
}

TEST_CASE("missing one constraint is always Sudoku") {
  const auto r = run_classification(kOrder3, 1);
  CHECK(r.class_count() == 2);
  CHECK(r.sudoku_count() == 2);
}

TEST_CASE("chute line pairs") {
  CHECK(has_chute_line_pair(ConstraintSet::parse_missing("C1,C3", kOrder3)));
  CHECK(has_chute_line_pair(ConstraintSet::parse_missing("R7,R8,B1", kOrder3)));
  CHECK(!has_chute_line_pair(ConstraintSet::parse_missing("R1,R4,C1,C4", kOrder3)));
}

TEST_CASE("catalog up to six missing") {
  const auto catalog = minimal_catalog(kOrder3, 6);
  CHECK(catalog.unresolved.empty());
  REQUIRE(catalog.entries.size() == 7);
  std::vector<int> sizes;
  for (const auto& e : catalog.entries) {
    sizes.push_back(e.model.missing_count());
    CHECK(applicable_steps(e.model).empty());
    CHECK(verify_grid(e.witness, e.model).empty());
    CHECK(!verify_grid(e.witness, ConstraintSet::full(kOrder3)).empty());
  }
  CHECK(sizes == std::vector<int>{2, 3, 4, 4, 5, 6, 6});
  CHECK(catalog.entries[0].model == canonicalize(ConstraintSet::parse_missing("C1,C3", kOrder3)));
  for (std::size_t i = 0; i < catalog.entries.size(); ++i)
    for (std::size_t j = 0; j < catalog.entries.size(); ++j)
      if (i != j) CHECK(!embeds_up_to_symmetry(catalog.entries[i].model, catalog.entries[j].model));
  CHECK_THROWS_AS(minimal_catalog(kOrder3, 1), std::invalid_argument);
}

TEST_CASE("missing six report invariants") {
  const auto& r = missing6();
  CHECK(r.raw_count == 296010);
  std::uint64_t sum = 0;
  for (const auto& rec : r.records) {
    sum += rec.orbit_size;
    if (rec.verdict == VerdictKind::NotSudoku) CHECK((rec.catalog_match || rec.witness));
  }
  CHECK(sum == r.raw_count);
  CHECK(r.unresolved_count() == 0);
  CHECK(r.sudoku_count() + r.not_sudoku_count() == r.class_count());
  CHECK(r.class_count() == 320);
  CHECK(r.sudoku_count() == 39);
  CHECK(r.reduced_count(VerdictKind::Sudoku) == 39);
  CHECK(r.reduced_count(VerdictKind::NotSudoku) == 70);
}

TEST_CASE("no Sudoku class contains a catalog pattern") {
  const auto& r = missing6();
  for (const auto& s : r.sudoku_classes()) {
    CHECK(!has_chute_line_pair(s));
    for (const auto& e : r.catalog.entries) CHECK(!embeds_up_to_symmetry(e.model, s));
  }
}

TEST_CASE("results for two to five missing follow from six") {
  const auto sudoku6 = missing6().sudoku_classes();
  for (int k = 2; k <= 5; ++k) {
    const auto direct = run_classification(kOrder3, k, fast_options());
    CHECK(direct.unresolved_count() == 0);
    for (const auto& rec : direct.records) {
      const bool derived = std::any_of(sudoku6.begin(), sudoku6.end(),
                                       [&](const ConstraintSet& t) { return embeds_up_to_symmetry(rec.model, t); });
      CHECK(derived == (rec.verdict == VerdictKind::Sudoku));
    }
  }
}

TEST_CASE("classification is independent of thread count") {
  ClassificationOptions one = fast_options(), many = fast_options();
  one.threads = 1;
  many.threads = 4;
  const auto a = run_classification(kOrder3, 4, one);
  const auto b = run_classification(kOrder3, 4, many);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].model == b.records[i].model);
    CHECK(a.records[i].verdict == b.records[i].verdict);
    CHECK(a.records[i].trace.steps == b.records[i].trace.steps);
  }
}

TEST_CASE("order 2 classification") {
  const BoardOrder order(2);
  for (int k = 0; k <= 4; ++k) {
    const auto r = run_classification(order, k);
    CHECK(r.unresolved_count() == 0);
    for (const auto& rec : r.records) {
      // Brute force: Sudoku iff every solution of the model is a full solution.
      bool sudoku = true;
      oracle::enumerate_solutions(SolverProblem::for_model(rec.model), [&](const Grid& g) {
        sudoku = verify_grid(g, ConstraintSet::full(order)).empty();
        return sudoku;
      });
      CHECK((rec.verdict == VerdictKind::Sudoku) == sudoku);
    }
  }
}
