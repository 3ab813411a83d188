#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "sudoku_redundancy/board.hpp"

using namespace sudoku_redundancy;

TEST_CASE("order bounds") {
  CHECK_THROWS_AS(BoardOrder(1), std::invalid_argument);
  CHECK_THROWS_AS(BoardOrder(5), std::invalid_argument);
  const BoardOrder o3(3);
  CHECK(o3.side() == 9);
  CHECK(o3.cells() == 81);
  CHECK(o3.regions() == 27);
}

TEST_CASE("region cells agree with coordinate oracle") {
  for (int n : {2, 3, 4}) {
    const BoardOrder order(n);
    for (const auto& id : all_constraints(order)) {
      CHECK(region_cells(id, order) == oracle::cells_of(id, order));
      for (auto cell : oracle::cells_of(id, order)) CHECK(region_contains(id, cell, order));
    }
  }
}

TEST_CASE("each cell lies in exactly three regions") {
  const BoardOrder order(3);
  for (int i = 0; i < order.cells(); ++i) {
    const auto cell = CellIndex::from_flat(i, order);
    int hits = 0;
    for (const auto& id : all_constraints(order)) hits += region_contains(id, cell, order) ? 1 : 0;
    CHECK(hits == 3);
    CHECK(regions_of(cell, order).size() == 3);
  }
}

TEST_CASE("labels and slots") {
  const BoardOrder order(3);
  CHECK(BigConstraintId::parse("R1", order).slot(order) == 0);
  CHECK(BigConstraintId::parse("C1", order).slot(order) == 9);
  CHECK(BigConstraintId::parse("B9", order).slot(order) == 26);
  CHECK(BigConstraintId::parse("c4", order) == BigConstraintId::col(4));
  for (int slot = 0; slot < order.regions(); ++slot) {
    const auto id = BigConstraintId::from_slot(slot, order);
    CHECK(BigConstraintId::parse(id.label(), order) == id);
  }
  for (const char* bad : {"X1", "R0", "R10", "B", "R1x", ""})
    CHECK_THROWS_AS(BigConstraintId::parse(bad, order), std::invalid_argument);
}

TEST_CASE("cell and pair labels") {
  const BoardOrder order(3);
  CHECK(CellIndex::parse("r3c7", order) == CellIndex{3, 7});
  CHECK(SmallConstraint::parse("r1c2-r1c1", order) == SmallConstraint::make({1, 1}, {1, 2}));
  CHECK(SmallConstraint::parse("r5c1=r5c2", order).label() == "r5c1-r5c2");
  for (const char* bad : {"r0c1", "r1c10", "rc1", "r1c", "x1c1", "r1c1c2"})
    CHECK_THROWS_AS(CellIndex::parse(bad, order), std::invalid_argument);
  CHECK_THROWS_AS(SmallConstraint::parse("r1c1-r1c1", order), std::invalid_argument);
  CHECK_THROWS_AS(SmallConstraint::parse("r1c1", order), std::invalid_argument);
}

TEST_CASE("model strings round-trip in canonical label order") {
  const BoardOrder order(3);
  const auto s = ConstraintSet::parse_missing("B7, C2,R5,B2 ,B5", order);
  CHECK(s.missing_labels() == "R5,C2,B2,B5,B7");
  CHECK(s.model_string() == "missing=R5,C2,B2,B5,B7");
  CHECK(ConstraintSet::parse_missing(s.model_string(), order) == s);
  CHECK(ConstraintSet::parse_missing("", order).is_full());
  CHECK_THROWS_AS(ConstraintSet::parse_missing("R1,R1", order), std::invalid_argument);
  CHECK_THROWS_AS(ConstraintSet::parse_missing("R1,Q3", order), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = ConstraintSet::from_key(order, rng() & ConstraintSet::width_mask(order));
    CHECK(ConstraintSet::parse_missing(t.missing_labels(), order) == t);
  }
}

TEST_CASE("key order is lexicographic on slots") {
  const BoardOrder order(3);
  const auto full = ConstraintSet::full(order);
  // Dropping an earlier slot gives a smaller key.
  CHECK(full.without(BigConstraintId::row(1)).key() < full.without(BigConstraintId::box(9)).key());
  CHECK(full.present_count() == 27);
  CHECK(full.without(BigConstraintId::row(1)).missing_count() == 1);
  CHECK(ConstraintSet::empty(order).present_count() == 0);
}

TEST_CASE("grid parse and render") {
  const BoardOrder order(3);
  const std::string text = "000000010400000000020000000000050407008000300001090000300400200050100000000806000";
  const auto g = Grid::parse(text, order);
  CHECK(g.given_count() == 17);
  CHECK(Grid::parse(g.to_string(), order) == g);
  CHECK(g.to_string()[0] == '.');
  CHECK_THROWS_AS(Grid::parse(text.substr(1), order), std::invalid_argument);
  CHECK_THROWS_AS(Grid::parse(std::string(80, '0') + "x", order), std::invalid_argument);
  const auto g4 = oracle::pattern_solution(BoardOrder(4));
  CHECK(Grid::parse(g4.to_string(), BoardOrder(4)) == g4);
}

TEST_CASE("verify_grid matches the brute-force region scan") {
  const BoardOrder order(3);
  const auto full = ConstraintSet::full(order);
  Grid g = oracle::pattern_solution(order);
  CHECK(verify_grid(g, full).empty());

  // Swapping two cells of row 1 inside box 1 breaks exactly their columns.
  const int a = g.at({1, 1}), b = g.at({1, 2});
  g.set({1, 1}, b);
  g.set({1, 2}, a);
  std::set<std::string> labels;
  for (const auto& id : verify_grid(g, full)) labels.insert(id.label());
  CHECK(labels == std::set<std::string>{"C1", "C2"});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Grid h(order);
    for (int i = 0; i < order.cells(); ++i) h.set_flat(i, static_cast<int>(rng() % 9) + 1);
    const auto s = ConstraintSet::from_key(order, rng() & ConstraintSet::width_mask(order));
    std::set<std::string> got;
    for (const auto& id : verify_grid(h, s)) got.insert(id.label());
    CHECK(got == oracle::duplicate_regions(h, s));
  }
  CHECK_THROWS_AS(verify_grid(Grid(order), full), std::invalid_argument);
}

TEST_CASE("chutes") {
  const BoardOrder order(3);
  const auto h1 = chute_members({ChuteOrientation::Horizontal, 1}, order);
  CHECK(h1.lines == std::vector<BigConstraintId>{BigConstraintId::row(1), BigConstraintId::row(2), BigConstraintId::row(3)});
  CHECK(h1.boxes == std::vector<BigConstraintId>{BigConstraintId::box(1), BigConstraintId::box(2), BigConstraintId::box(3)});
  const auto v2 = chute_members({ChuteOrientation::Vertical, 2}, order);
  CHECK(v2.boxes == std::vector<BigConstraintId>{BigConstraintId::box(2), BigConstraintId::box(5), BigConstraintId::box(8)});
  CHECK(all_chutes(order).size() == 6);
  // The lines of a chute cover exactly the cells of its boxes.
  for (const auto& chute : all_chutes(order)) {
    std::set<int> by_lines, by_boxes;
    const auto m = chute_members(chute, order);
    for (const auto& id : m.lines)
      for (auto c : region_cells(id, order)) by_lines.insert(c.flat(order));
    for (const auto& id : m.boxes)
      for (auto c : region_cells(id, order)) by_boxes.insert(c.flat(order));
    CHECK(by_lines == by_boxes);
  }
}
