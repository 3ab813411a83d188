#pragma once

// Puzzle corpus ingestion: one puzzle per line, one character per cell,
// digits for givens and '0' or '.' for blanks. Bad lines are reported and skipped.

#include <filesystem>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sudoku_redundancy/board.hpp"

namespace sudoku_redundancy {

struct CorpusDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Corpus {
  std::vector<Grid> puzzles;
  std::vector<CorpusDiagnostic> diagnostics;
};

inline Corpus read_corpus(std::istream& in, BoardOrder order = BoardOrder{}) {
  Corpus corpus;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty()) continue;
    try {
      corpus.puzzles.push_back(Grid::parse(line, order));
    } catch (const std::invalid_argument& e) {
      corpus.diagnostics.push_back({number, e.what()});
    }
  }
  return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path, BoardOrder order = BoardOrder{}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read corpus file " + path.string());
  return read_corpus(in, order);
}

}  // namespace sudoku_redundancy
