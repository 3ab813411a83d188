#pragma once

// Board geometry and the constraint vocabulary: cells, regions (rows,
// columns, boxes), sets of region constraints, grids and small
// (pairwise inequality) constraints. Everything is parameterized by the
// board order n: an order-n board has n^2 x n^2 cells and 3n^2 regions.

#include <algorithm>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sudoku_redundancy {

class BoardOrder {
 public:
  static constexpr int kMin = 2;
  // Constraint sets are stored in 64 bits, so 3n^2 <= 64.
  static constexpr int kMax = 4;

  BoardOrder() = default;
  explicit BoardOrder(int n) : n_(n) {
    if (n < kMin || n > kMax) {
      throw std::invalid_argument("board order must be in [" + std::to_string(kMin) + ".." +
                                  std::to_string(kMax) + "], got " + std::to_string(n));
    }
  }

  int n() const { return n_; }
  int side() const { return n_ * n_; }
  int cells() const { return side() * side(); }
  int regions() const { return 3 * side(); }
  int values() const { return side(); }

  bool operator==(const BoardOrder&) const = default;

 private:
  int n_ = 3;
};

enum class RegionKind : std::uint8_t { Row = 0, Col = 1, Box = 2 };

inline char kind_letter(RegionKind k) {
  switch (k) {
    case RegionKind::Row: return 'R';
    case RegionKind::Col: return 'C';
    case RegionKind::Box: return 'B';
  }
  return '?';
}

// 1-based (row, col).
struct CellIndex {
  int row = 1;
  int col = 1;

  auto operator<=>(const CellIndex&) const = default;

  bool valid(BoardOrder order) const {
    return row >= 1 && row <= order.side() && col >= 1 && col <= order.side();
  }
  int box(BoardOrder order) const {
    const int n = order.n();
    return ((row - 1) / n) * n + (col - 1) / n + 1;
  }
  // Row-major index in [0, n^4).
  int flat(BoardOrder order) const { return (row - 1) * order.side() + (col - 1); }
  static CellIndex from_flat(int index, BoardOrder order) {
    return CellIndex{index / order.side() + 1, index % order.side() + 1};
  }
  std::string label() const { return "r" + std::to_string(row) + "c" + std::to_string(col); }

  // "r3c12"
  static CellIndex parse(std::string_view text, BoardOrder order) {
    auto fail = [&] { return std::invalid_argument("unknown cell label '" + std::string(text) + "'"); };
    if (text.size() < 4 || text[0] != 'r') throw fail();
    std::size_t c = 1;
    while (c < text.size() && text[c] != 'c') ++c;
    if (c == text.size()) throw fail();
    CellIndex cell{0, 0};
    const std::string_view row(text.data() + 1, c - 1), col(text.data() + c + 1, text.size() - c - 1);
    if (std::from_chars(row.data(), row.data() + row.size(), cell.row).ptr != row.data() + row.size() ||
        std::from_chars(col.data(), col.data() + col.size(), cell.col).ptr != col.data() + col.size() ||
        !cell.valid(order)) {
      throw fail();
    }
    return cell;
  }
};

// One of the 3n^2 region constraints. Ordering (kind, index) gives the
// canonical label order R1..Rn², C1..Cn², B1..Bn².
struct BigConstraintId {
  RegionKind kind = RegionKind::Row;
  int index = 1;

  auto operator<=>(const BigConstraintId&) const = default;

  static BigConstraintId row(int i) { return {RegionKind::Row, i}; }
  static BigConstraintId col(int i) { return {RegionKind::Col, i}; }
  static BigConstraintId box(int i) { return {RegionKind::Box, i}; }

  bool valid(BoardOrder order) const { return index >= 1 && index <= order.side(); }

  // Position in [0, 3n^2) following the canonical label order.
  int slot(BoardOrder order) const { return static_cast<int>(kind) * order.side() + index - 1; }
  static BigConstraintId from_slot(int slot, BoardOrder order) {
    return {static_cast<RegionKind>(slot / order.side()), slot % order.side() + 1};
  }

  std::string label() const { return std::string(1, kind_letter(kind)) + std::to_string(index); }

  static BigConstraintId parse(std::string_view text, BoardOrder order) {
    auto fail = [&] {
      return std::invalid_argument("unknown constraint label '" + std::string(text) + "'");
    };
    if (text.size() < 2) throw fail();
    BigConstraintId id;
    switch (text.front()) {
      case 'R': case 'r': id.kind = RegionKind::Row; break;
      case 'C': case 'c': id.kind = RegionKind::Col; break;
      case 'B': case 'b': id.kind = RegionKind::Box; break;
      default: throw fail();
    }
    int value = 0;
    for (char ch : text.substr(1)) {
      if (ch < '0' || ch > '9' || value > 1000) throw fail();
      value = value * 10 + (ch - '0');
    }
    id.index = value;
    if (!id.valid(order)) throw fail();
    return id;
  }
};

inline bool region_contains(BigConstraintId id, CellIndex cell, BoardOrder order) {
  switch (id.kind) {
    case RegionKind::Row: return cell.row == id.index;
    case RegionKind::Col: return cell.col == id.index;
    case RegionKind::Box: return cell.box(order) == id.index;
  }
  return false;
}

// The n^2 cells of a region in row-major order.
inline std::vector<CellIndex> region_cells(BigConstraintId id, BoardOrder order) {
  if (!id.valid(order)) {
    throw std::invalid_argument("region " + id.label() + " out of range for order " +
                                std::to_string(order.n()));
  }
  const int n = order.n();
  const int side = order.side();
  std::vector<CellIndex> cells;
  cells.reserve(side);
  switch (id.kind) {
    case RegionKind::Row:
      for (int c = 1; c <= side; ++c) cells.push_back({id.index, c});
      break;
    case RegionKind::Col:
      for (int r = 1; r <= side; ++r) cells.push_back({r, id.index});
      break;
    case RegionKind::Box: {
      const int r0 = ((id.index - 1) / n) * n;
      const int c0 = ((id.index - 1) % n) * n;
      for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) cells.push_back({r0 + r, c0 + c});
      break;
    }
  }
  return cells;
}

// The three regions a cell belongs to.
inline std::vector<BigConstraintId> regions_of(CellIndex cell, BoardOrder order) {
  return {BigConstraintId::row(cell.row), BigConstraintId::col(cell.col),
          BigConstraintId::box(cell.box(order))};
}

inline std::vector<BigConstraintId> all_constraints(BoardOrder order) {
  std::vector<BigConstraintId> ids;
  ids.reserve(order.regions());
  for (int s = 0; s < order.regions(); ++s) ids.push_back(BigConstraintId::from_slot(s, order));
  return ids;
}

// A band (horizontal) or stack (vertical) of n boxes together with its n lines.
enum class ChuteOrientation : std::uint8_t { Horizontal = 0, Vertical = 1 };

struct Chute {
  ChuteOrientation orientation = ChuteOrientation::Horizontal;
  int index = 1;

  auto operator<=>(const Chute&) const = default;

  std::string label() const {
    return (orientation == ChuteOrientation::Horizontal ? "H" : "V") + std::to_string(index);
  }
};

struct ChuteMembers {
  std::vector<BigConstraintId> lines;
  std::vector<BigConstraintId> boxes;
};

inline ChuteMembers chute_members(Chute chute, BoardOrder order) {
  const int n = order.n();
  if (chute.index < 1 || chute.index > n) {
    throw std::invalid_argument("chute " + chute.label() + " out of range for order " +
                                std::to_string(n));
  }
  ChuteMembers m;
  const int first = (chute.index - 1) * n;
  for (int k = 1; k <= n; ++k) {
    if (chute.orientation == ChuteOrientation::Horizontal) {
      m.lines.push_back(BigConstraintId::row(first + k));
      m.boxes.push_back(BigConstraintId::box(first + k));
    } else {
      m.lines.push_back(BigConstraintId::col(first + k));
      m.boxes.push_back(BigConstraintId::box((k - 1) * n + chute.index));
    }
  }
  return m;
}

// H1..Hn then V1..Vn.
inline std::vector<Chute> all_chutes(BoardOrder order) {
  std::vector<Chute> chutes;
  for (auto o : {ChuteOrientation::Horizontal, ChuteOrientation::Vertical})
    for (int i = 1; i <= order.n(); ++i) chutes.push_back({o, i});
  return chutes;
}

// Subset of the big constraints, stored as a bit vector of present
// constraints. Slot 0 (R1) is the most significant bit, so comparing keys
// numerically is the lexicographic order on the R1..B(n²) presence bits.
class ConstraintSet {
 public:
  ConstraintSet() : ConstraintSet(BoardOrder{}, 0) {}

  static ConstraintSet full(BoardOrder order) { return {order, width_mask(order)}; }
  static ConstraintSet empty(BoardOrder order) { return {order, 0}; }
  static ConstraintSet from_key(BoardOrder order, std::uint64_t key) {
    if (key & ~width_mask(order)) throw std::invalid_argument("constraint key has stray bits");
    return {order, key};
  }
  static ConstraintSet with_missing(BoardOrder order, std::span<const BigConstraintId> missing) {
    ConstraintSet s = full(order);
    for (const auto& id : missing) s = s.without(id);
    return s;
  }

  // Accepts "R2,R5,C2", optionally prefixed with "missing=". Empty text is the full set.
  static ConstraintSet parse_missing(std::string_view text, BoardOrder order) {
    constexpr std::string_view prefix = "missing=";
    if (text.starts_with(prefix)) text.remove_prefix(prefix.size());
    ConstraintSet s = full(order);
    while (!text.empty()) {
      const auto comma = text.find(',');
      std::string_view token = text.substr(0, comma);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      const auto id = BigConstraintId::parse(token, order);
      if (!s.contains(id)) throw std::invalid_argument("duplicate constraint label '" + id.label() + "'");
      s = s.without(id);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return s;
  }

  BoardOrder order() const { return order_; }
  std::uint64_t key() const { return bits_; }
  std::uint64_t missing_key() const { return ~bits_ & width_mask(order_); }

  bool contains(BigConstraintId id) const { return bits_ & bit(id.slot(order_)); }
  bool contains_slot(int slot) const { return bits_ & bit(slot); }

  ConstraintSet with(BigConstraintId id) const {
    check(id);
    return {order_, bits_ | bit(id.slot(order_))};
  }
  ConstraintSet without(BigConstraintId id) const {
    check(id);
    return {order_, bits_ & ~bit(id.slot(order_))};
  }

  int present_count() const { return std::popcount(bits_); }
  int missing_count() const { return order_.regions() - present_count(); }
  bool is_full() const { return bits_ == width_mask(order_); }

  // True when every constraint present in `other` is present here.
  bool includes(const ConstraintSet& other) const { return (other.bits_ & ~bits_) == 0; }

  std::vector<BigConstraintId> present() const { return collect(true); }
  std::vector<BigConstraintId> missing() const { return collect(false); }

  std::string missing_labels() const {
    std::string out;
    for (const auto& id : missing()) {
      if (!out.empty()) out += ',';
      out += id.label();
    }
    return out;
  }
  std::string model_string() const { return "missing=" + missing_labels(); }

  bool operator==(const ConstraintSet& o) const { return order_ == o.order_ && bits_ == o.bits_; }
  auto operator<=>(const ConstraintSet& o) const { return bits_ <=> o.bits_; }

  // Bit for a slot inside a key of this order.
  static std::uint64_t slot_bit(int slot, BoardOrder order) {
    return std::uint64_t{1} << (order.regions() - 1 - slot);
  }
  static std::uint64_t width_mask(BoardOrder order) {
    return order.regions() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order.regions()) - 1;
  }

 private:
  ConstraintSet(BoardOrder order, std::uint64_t bits) : order_(order), bits_(bits) {}

  std::uint64_t bit(int slot) const { return slot_bit(slot, order_); }
  void check(BigConstraintId id) const {
    if (!id.valid(order_)) throw std::invalid_argument("constraint " + id.label() + " out of range");
  }
  std::vector<BigConstraintId> collect(bool want_present) const {
    std::vector<BigConstraintId> ids;
    for (int s = 0; s < order_.regions(); ++s)
      if (contains_slot(s) == want_present) ids.push_back(BigConstraintId::from_slot(s, order_));
    return ids;
  }

  BoardOrder order_;
  std::uint64_t bits_;
};

// Full or partial assignment; 0 means unassigned.
class Grid {
 public:
  Grid() : Grid(BoardOrder{}) {}
  explicit Grid(BoardOrder order) : order_(order), values_(order.cells(), 0) {}

  BoardOrder order() const { return order_; }

  int at(CellIndex cell) const { return values_[cell.flat(order_)]; }
  int at_flat(int index) const { return values_[index]; }
  void set(CellIndex cell, int value) { set_flat(cell.flat(order_), value); }
  void set_flat(int index, int value) {
    if (value < 0 || value > order_.values()) {
      throw std::invalid_argument("value " + std::to_string(value) + " outside domain");
    }
    values_[index] = value;
  }

  bool is_complete() const {
    return std::none_of(values_.begin(), values_.end(), [](int v) { return v == 0; });
  }
  int given_count() const {
    return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](int v) { return v != 0; }));
  }

  // One character per cell, row-major: 1-9 then A.. for values above 9, '.' for blanks.
  std::string to_string() const {
    std::string s;
    s.reserve(values_.size());
    for (int v : values_) s += value_char(v);
    return s;
  }

  // Inverse of to_string; '0' is also accepted as a blank.
  static Grid parse(std::string_view text, BoardOrder order) {
    if (static_cast<int>(text.size()) != order.cells()) {
      throw std::invalid_argument("expected " + std::to_string(order.cells()) + " characters, got " +
                                  std::to_string(text.size()));
    }
    Grid g(order);
    for (int i = 0; i < order.cells(); ++i) {
      const int v = char_value(text[i]);
      if (v < 0 || v > order.values()) {
        throw std::invalid_argument(std::string("invalid character '") + text[i] + "' at position " +
                                    std::to_string(i + 1));
      }
      g.values_[i] = v;
    }
    return g;
  }

  bool operator==(const Grid&) const = default;

 private:
  static char value_char(int v) {
    if (v == 0) return '.';
    return v <= 9 ? static_cast<char>('0' + v) : static_cast<char>('A' + v - 10);
  }
  static int char_value(char ch) {
    if (ch == '.' || ch == '0') return 0;
    if (ch >= '1' && ch <= '9') return ch - '0';
    if (ch >= 'A' && ch <= 'Z') return ch - 'A' + 10;
    return -1;
  }

  BoardOrder order_;
  std::vector<int> values_;
};

// Constraints of `model` whose region holds a repeated value in a complete grid.
inline std::vector<BigConstraintId> verify_grid(const Grid& grid, const ConstraintSet& model) {
  if (!(grid.order() == model.order())) throw std::invalid_argument("grid and model orders differ");
  if (!grid.is_complete()) throw std::invalid_argument("verify_grid needs a complete grid");
  const BoardOrder order = grid.order();
  std::vector<BigConstraintId> violated;
  for (const auto& id : model.present()) {
    std::uint64_t seen = 0;
    for (const auto& cell : region_cells(id, order)) {
      const std::uint64_t b = std::uint64_t{1} << grid.at(cell);
      if (seen & b) {
        violated.push_back(id);
        break;
      }
      seen |= b;
    }
  }
  return violated;
}

// Unordered pair of distinct cells required to differ; stored with a < b (row-major).
struct SmallConstraint {
  CellIndex a;
  CellIndex b;

  static SmallConstraint make(CellIndex x, CellIndex y) {
    if (x == y) throw std::invalid_argument("small constraint needs two distinct cells");
    return x < y ? SmallConstraint{x, y} : SmallConstraint{y, x};
  }

  auto operator<=>(const SmallConstraint&) const = default;

  std::string label() const { return a.label() + "-" + b.label(); }

  // "r1c1-r1c2"; '=' also accepted as the separator.
  static SmallConstraint parse(std::string_view text, BoardOrder order) {
    const auto sep = text.find_first_of("-=");
    if (sep == std::string_view::npos) throw std::invalid_argument("expected a cell pair, got '" + std::string(text) + "'");
    return make(CellIndex::parse(text.substr(0, sep), order), CellIndex::parse(text.substr(sep + 1), order));
  }
};

inline bool shares_region(CellIndex x, CellIndex y, BoardOrder order) {
  return x.row == y.row || x.col == y.col || x.box(order) == y.box(order);
}

}  // namespace sudoku_redundancy
