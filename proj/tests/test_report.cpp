#include <catch_amalgamated.hpp>

#include <sstream>

#include "sudoku_redundancy/corpus.hpp"
#include "sudoku_redundancy/figure.hpp"
#include "sudoku_redundancy/report.hpp"

using namespace sudoku_redundancy;

namespace {

const BoardOrder kOrder3(3);

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

}  // namespace

TEST_CASE("ascii frame of the full model") {
  const auto lines = lines_of(ascii_board(ConstraintSet::full(kOrder3)));
  REQUIRE(lines.size() == 13);
  for (const auto& l : lines) CHECK(l.size() == 37);
  CHECK(lines[0] == "+-----------+-----------+-----------+");
  CHECK(lines[4] == lines[0]);
  CHECK(lines[1] == "|  .  .  .  |  .  .  .  |  .  .  .  |");
  for (const auto& l : lines) CHECK(l.find('#') == std::string::npos);
}

TEST_CASE("ascii shading follows the missing regions") {
  const auto s = ConstraintSet::parse_missing("C2,R5,B2,B5,B7", kOrder3);
  const auto text = ascii_board(s);
  const auto lines = lines_of(text);
  // Five regions of 9 cells; C2 meets R5 once and B7 three times, R5 meets B5 three times.
  CHECK(occurrences(text, "#") == 45 - 1 - 3 - 3);
  CHECK(lines[6] == "|  #  #  #  |  #  #  #  |  #  #  #  |");
  CHECK(lines[1] == "|  .  #  .  |  #  #  #  |  .  .  .  |");
  CHECK(lines[11] == "|  #  #  #  |  .  .  .  |  .  .  .  |");
}

TEST_CASE("order 2 ascii frame") {
  const auto lines = lines_of(ascii_board(ConstraintSet::parse_missing("B4", BoardOrder(2))));
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "+--------+--------+");
  CHECK(lines[5] == "|  .  .  |  #  #  |");
}

TEST_CASE("svg board") {
  const auto full = svg_board(ConstraintSet::full(kOrder3));
  CHECK(full.starts_with("<svg"));
  CHECK(occurrences(full, "class=\"missing\"") == 0);
  CHECK(occurrences(full, "<line") == 20);
  CHECK(occurrences(full, "stroke-width=\"2.5\"") == 8);

  const auto fig = svg_board(ConstraintSet::parse_missing("C2,R5,B2,B5,B7", kOrder3));
  CHECK(occurrences(fig, "class=\"missing\"") == 5);
  for (const char* label : {"C2", "R5", "B2", "B5", "B7"})
    CHECK(occurrences(fig, std::string("data-region=\"") + label + "\"") == 1);
  CHECK(fig == svg_board(ConstraintSet::parse_missing("B7,B5,B2,R5,C2", kOrder3)));
}

TEST_CASE("svg sheet") {
  std::vector<ConstraintSet> models;
  for (const char* m : {"R1,R2", "B1", "C1,C3,B5"}) models.push_back(ConstraintSet::parse_missing(m, kOrder3));
  const auto sheet = svg_sheet("demo", models, 2);
  CHECK(occurrences(sheet, "class=\"thumbnail\"") == 3);
  CHECK(sheet.find(">C1,C3,B5<") != std::string::npos);
}

TEST_CASE("corpus diagnostics carry line numbers") {
  std::istringstream in(
      "000000010400000000020000000000050407008000300001090000300400200050100000000806000\n"
      "\n"
      "12345\n"
      "00000001040000000002000000000005040700800030000109000030040020005010000000080600x\n"
      ".......1.4.........2...........5.4.7..8...3....1.9....3..4..2...5.1........8.6...\r\n");
  const auto corpus = read_corpus(in);
  CHECK(corpus.puzzles.size() == 2);
  REQUIRE(corpus.diagnostics.size() == 2);
  CHECK(corpus.diagnostics[0].line == 3);
  CHECK(corpus.diagnostics[1].line == 4);
  CHECK(corpus.diagnostics[1].message.find("position") != std::string::npos);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.txt"), std::runtime_error);
}

TEST_CASE("report json") {
  ClassificationOptions options;
  const auto report = run_classification(kOrder3, 2, options);
  const auto j = report_json(report);
  CHECK(j["raw_count"] == 351);
  CHECK(j["class_count"] == report.class_count());
  CHECK(j["catalog"]["entries"].size() == 1);
  CHECK(j["catalog"]["entries"][0]["witness"].get<std::string>().size() == 81);
  CHECK(j.contains("seconds"));
  const auto classes = report_classes(j);
  REQUIRE(classes.size() == report.class_count());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    CHECK(classes[i].model == report.records[i].model);
    CHECK(classes[i].verdict == report.records[i].verdict);
  }

  auto again = report_json(run_classification(kOrder3, 2, options));
  auto first = j;
  first.erase("seconds");
  again.erase("seconds");
  CHECK(first.dump() == again.dump());
}

TEST_CASE("probe json line") {
  ProbeRecord r;
  r.pair = SmallConstraint::make({1, 2}, {1, 1});
  r.verdict = ProbeVerdict::Needed;
  r.witness = Grid(kOrder3);
  const auto j = probe_json(r);
  CHECK(j["pair"] == "r1c1-r1c2");
  CHECK(j["verdict"] == "needed");
  CHECK(j["seed_puzzle"].is_null());
  CHECK(j.dump().find('\n') == std::string::npos);
}
