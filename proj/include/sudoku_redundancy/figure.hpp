#pragma once

// Board drawings with missing regions shaded, as ASCII or SVG.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "sudoku_redundancy/board.hpp"

namespace sudoku_redundancy {

namespace detail {

inline bool cell_shaded(const ConstraintSet& s, CellIndex cell) {
  for (const auto& id : regions_of(cell, s.order()))
    if (!s.contains(id)) return true;
  return false;
}

}  // namespace detail

// Box borders drawn with +-|, cells " # " when some region through them is
// missing and " . " otherwise. Order 3 gives a 13 x 37 frame.
inline std::string ascii_board(const ConstraintSet& s) {
  const BoardOrder order = s.order();
  const int n = order.n();
  const std::string segment(3 * n + 2, '-');
  std::string border = "+";
  for (int b = 0; b < n; ++b) border += segment + "+";

  std::ostringstream out;
  out << border << '\n';
  for (int r = 1; r <= order.side(); ++r) {
    out << '|';
    for (int c = 1; c <= order.side(); ++c) {
      if ((c - 1) % n == 0) out << ' ';
      out << (detail::cell_shaded(s, {r, c}) ? " # " : " . ");
      if (c % n == 0) out << " |";
    }
    out << '\n';
    if (r % n == 0) out << border << '\n';
  }
  return out.str();
}

struct SvgStyle {
  int cell = 24;
  int margin = 4;
  // Opacity per missing region; overlapping missing regions get darker.
  double shade_opacity = 0.45;
};

namespace detail {

// Board drawn with its top-left corner at (x, y).
inline void svg_board_body(std::ostringstream& out, const ConstraintSet& s, int x, int y, const SvgStyle& style) {
  const BoardOrder order = s.order();
  const int n = order.n();
  const int side = order.side();
  const int cell = style.cell;
  const int size = side * cell;
  out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\"/>\n";
  for (const auto& id : s.missing()) {
    int rx = x, ry = y, w = size, h = size;
    switch (id.kind) {
      case RegionKind::Row: ry += (id.index - 1) * cell; h = cell; break;
      case RegionKind::Col: rx += (id.index - 1) * cell; w = cell; break;
      case RegionKind::Box:
        ry += ((id.index - 1) / n) * n * cell;
        rx += ((id.index - 1) % n) * n * cell;
        w = h = n * cell;
        break;
    }
    out << "<rect class=\"missing\" data-region=\"" << id.label() << "\" x=\"" << rx << "\" y=\"" << ry
        << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\"black\" fill-opacity=\"" << style.shade_opacity
        << "\"/>\n";
  }
  for (int i = 0; i <= side; ++i) {
    const double width = (i % n == 0) ? 2.5 : 0.6;
    const int p = i * cell;
    out << "<line x1=\"" << x + p << "\" y1=\"" << y << "\" x2=\"" << x + p << "\" y2=\"" << y + size
        << "\" stroke=\"black\" stroke-width=\"" << width << "\"/>\n";
    out << "<line x1=\"" << x << "\" y1=\"" << y + p << "\" x2=\"" << x + size << "\" y2=\"" << y + p
        << "\" stroke=\"black\" stroke-width=\"" << width << "\"/>\n";
  }
}

}  // namespace detail

inline std::string svg_board(const ConstraintSet& s, const SvgStyle& style = {}) {
  const int size = s.order().side() * style.cell + 2 * style.margin;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<title>" << (s.is_full() ? "full model" : s.model_string()) << "</title>\n";
  detail::svg_board_body(out, s, style.margin, style.margin, style);
  out << "</svg>\n";
  return out.str();
}

// Thumbnails in a grid, each labelled with its missing constraints.
inline std::string svg_sheet(const std::string& title, const std::vector<ConstraintSet>& models, int columns = 8,
                             SvgStyle style = {8, 10, 0.45}) {
  const int board = models.empty() ? 0 : models.front().order().side() * style.cell;
  const int tile_w = board + 2 * style.margin + 60;
  const int tile_h = board + 2 * style.margin + 18;
  const int rows = (static_cast<int>(models.size()) + columns - 1) / columns;
  const int width = std::max(1, columns) * tile_w;
  const int height = 30 + rows * tile_h;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << " (" << models.size()
      << ")</text>\n";
  for (std::size_t i = 0; i < models.size(); ++i) {
    const int x = static_cast<int>(i % columns) * tile_w + style.margin + 30;
    const int y = 30 + static_cast<int>(i / columns) * tile_h + style.margin;
    out << "<g class=\"thumbnail\">\n";
    detail::svg_board_body(out, models[i], x, y, style);
    out << "<text x=\"" << x + board / 2 << "\" y=\"" << y + board + 12
        << "\" font-family=\"sans-serif\" font-size=\"8\" text-anchor=\"middle\">" << models[i].missing_labels()
        << "</text>\n</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sudoku_redundancy
