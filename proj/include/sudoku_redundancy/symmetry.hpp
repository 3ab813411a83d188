#pragma once

// Spatial symmetries of the board acting on constraint labels.
//
// The group is generated by transposition, permutations of bands, row
// permutations inside each band, and the column duals (permutations of
// stacks, column permutations inside each stack). Row permutations inside a
// band fix every box and column label, so an element factors as a "coarse"
// part (transpose, band permutation, stack permutation) and an "inner" part
// that only reorders lines inside their chute.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

#include "sudoku_redundancy/board.hpp"

namespace sudoku_redundancy {

// Bijection on constraint slots.
class LabelPermutation {
 public:
  explicit LabelPermutation(BoardOrder order) : order_(order), image_(order.regions()) {
    std::iota(image_.begin(), image_.end(), 0);
  }
  LabelPermutation(BoardOrder order, std::vector<int> image) : order_(order), image_(std::move(image)) {
    std::vector<int> sorted = image_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
      if (sorted[i] != i || static_cast<int>(sorted.size()) != order.regions()) {
        throw std::invalid_argument("label permutation is not a bijection");
      }
    }
  }

  BoardOrder order() const { return order_; }
  int image_slot(int slot) const { return image_[slot]; }

  BigConstraintId operator()(BigConstraintId id) const {
    return BigConstraintId::from_slot(image_[id.slot(order_)], order_);
  }

  ConstraintSet apply(const ConstraintSet& s) const {
    std::uint64_t key = 0;
    for (int slot = 0; slot < order_.regions(); ++slot)
      if (s.contains_slot(slot)) key |= ConstraintSet::slot_bit(image_[slot], order_);
    return ConstraintSet::from_key(order_, key);
  }

  // Apply this, then `next`.
  LabelPermutation then(const LabelPermutation& next) const {
    std::vector<int> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) image[i] = next.image_[image_[i]];
    return {order_, std::move(image)};
  }

  LabelPermutation inverse() const {
    std::vector<int> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) image[image_[i]] = static_cast<int>(i);
    return {order_, std::move(image)};
  }

  bool is_identity() const {
    for (int i = 0; i < static_cast<int>(image_.size()); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  bool operator==(const LabelPermutation&) const = default;

 private:
  BoardOrder order_;
  std::vector<int> image_;
};

// A group element in factored form. Permutations are 0-based: band b moves
// to band band_perm[b]; row i of (source) band b lands at position
// row_perm[b][i] inside its destination band. Transpose is applied first.
struct SpatialSymmetry {
  bool transpose = false;
  std::vector<int> band_perm;
  std::vector<int> stack_perm;
  std::vector<std::vector<int>> row_perm;
  std::vector<std::vector<int>> col_perm;

  static SpatialSymmetry identity(BoardOrder order) {
    const int n = order.n();
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return {false, id, id, std::vector<std::vector<int>>(n, id), std::vector<std::vector<int>>(n, id)};
  }

  template <class Rng>
  static SpatialSymmetry random(BoardOrder order, Rng& rng) {
    SpatialSymmetry g = identity(order);
    g.transpose = std::bernoulli_distribution(0.5)(rng);
    std::shuffle(g.band_perm.begin(), g.band_perm.end(), rng);
    std::shuffle(g.stack_perm.begin(), g.stack_perm.end(), rng);
    for (auto& p : g.row_perm) std::shuffle(p.begin(), p.end(), rng);
    for (auto& p : g.col_perm) std::shuffle(p.begin(), p.end(), rng);
    return g;
  }

  LabelPermutation labels(BoardOrder order) const {
    const int n = order.n();
    const int side = order.side();
    auto line = [&](int line0, const std::vector<int>& chute_perm,
                    const std::vector<std::vector<int>>& inner) {
      const int chute = line0 / n;
      return chute_perm[chute] * n + inner[chute][line0 % n];
    };
    std::vector<int> image(order.regions());
    for (int slot = 0; slot < order.regions(); ++slot) {
      auto kind = static_cast<RegionKind>(slot / side);
      int idx = slot % side;
      if (transpose) {
        if (kind == RegionKind::Row) kind = RegionKind::Col;
        else if (kind == RegionKind::Col) kind = RegionKind::Row;
        else idx = (idx % n) * n + idx / n;
      }
      int target = 0;
      switch (kind) {
        case RegionKind::Row: target = line(idx, band_perm, row_perm); break;
        case RegionKind::Col: target = side + line(idx, stack_perm, col_perm); break;
        case RegionKind::Box: target = 2 * side + band_perm[idx / n] * n + stack_perm[idx % n]; break;
      }
      image[slot] = target;
    }
    return {order, std::move(image)};
  }
};

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline const std::vector<std::vector<int>>& permutations_of(int n) {
  static const std::vector<std::vector<int>> cache[] = {
      {}, {}, all_permutations(2), all_permutations(3), all_permutations(4)};
  return cache[n];
}

// What the inner (within-chute) permutations cannot change: how many lines
// of each band/stack are missing, and which boxes are missing.
struct MissingProfile {
  std::vector<int> rows_per_band;
  std::vector<int> cols_per_stack;
  std::vector<std::uint8_t> box_missing;  // row-major n x n

  static MissingProfile of(const ConstraintSet& s) {
    const BoardOrder order = s.order();
    const int n = order.n();
    const int side = order.side();
    MissingProfile p{std::vector<int>(n, 0), std::vector<int>(n, 0),
                     std::vector<std::uint8_t>(side, 0)};
    for (int i = 0; i < side; ++i) {
      if (!s.contains_slot(i)) ++p.rows_per_band[i / n];
      if (!s.contains_slot(side + i)) ++p.cols_per_stack[i / n];
      if (!s.contains_slot(2 * side + i)) p.box_missing[i] = 1;
    }
    return p;
  }

  MissingProfile transposed(int n) const {
    MissingProfile t{cols_per_stack, rows_per_band, box_missing};
    for (int b = 0; b < n; ++b)
      for (int s = 0; s < n; ++s) t.box_missing[s * n + b] = box_missing[b * n + s];
    return t;
  }
};

}  // namespace detail

// Transpose, every band permutation (acting on rows and boxes), every row
// permutation inside each band, and the column duals. Identities are omitted.
inline std::vector<LabelPermutation> generators(BoardOrder order) {
  const int n = order.n();
  std::vector<LabelPermutation> gens;
  auto push = [&](const SpatialSymmetry& g) {
    auto perm = g.labels(order);
    if (!perm.is_identity()) gens.push_back(std::move(perm));
  };
  SpatialSymmetry t = SpatialSymmetry::identity(order);
  t.transpose = true;
  push(t);
  for (const auto& p : detail::permutations_of(n)) {
    SpatialSymmetry g = SpatialSymmetry::identity(order);
    g.band_perm = p;
    push(g);
    for (int band = 0; band < n; ++band) {
      SpatialSymmetry r = SpatialSymmetry::identity(order);
      r.row_perm[band] = p;
      push(r);
    }
  }
  for (const auto& p : detail::permutations_of(n)) {
    SpatialSymmetry g = SpatialSymmetry::identity(order);
    g.stack_perm = p;
    push(g);
    for (int stack = 0; stack < n; ++stack) {
      SpatialSymmetry c = SpatialSymmetry::identity(order);
      c.col_perm[stack] = p;
      push(c);
    }
  }
  return gens;
}

// Orbit representative with the lexicographically smallest presence vector.
// Loops over the 2(n!)^2 coarse elements; for each, the best inner
// permutation just lists the missing lines of every chute first.
inline ConstraintSet canonicalize(const ConstraintSet& s) {
  const BoardOrder order = s.order();
  const int n = order.n();
  const int side = order.side();
  const auto& perms = detail::permutations_of(n);
  const auto base = detail::MissingProfile::of(s);

  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> src_band(n), src_stack(n);
  for (int t = 0; t < 2; ++t) {
    const auto prof = t ? base.transposed(n) : base;
    for (const auto& p : perms) {
      for (int b = 0; b < n; ++b) src_band[p[b]] = b;
      std::uint64_t row_part = 0;
      for (int d = 0; d < n; ++d) {
        const int missing = prof.rows_per_band[src_band[d]];
        for (int k = 0; k < n; ++k) row_part = (row_part << 1) | (k >= missing ? 1u : 0u);
      }
      for (const auto& q : perms) {
        for (int c = 0; c < n; ++c) src_stack[q[c]] = c;
        std::uint64_t key = row_part;
        for (int d = 0; d < n; ++d) {
          const int missing = prof.cols_per_stack[src_stack[d]];
          for (int k = 0; k < n; ++k) key = (key << 1) | (k >= missing ? 1u : 0u);
        }
        for (int box = 0; box < side; ++box) {
          const int src = src_band[box / n] * n + src_stack[box % n];
          key = (key << 1) | (prof.box_missing[src] ? 0u : 1u);
        }
        best = std::min(best, key);
      }
    }
  }
  return ConstraintSet::from_key(order, best);
}

// All distinct images of `s`, by breadth-first closure under the generators.
inline std::vector<ConstraintSet> orbit(const ConstraintSet& s) {
  const auto gens = generators(s.order());
  std::unordered_set<std::uint64_t> seen{s.key()};
  std::vector<ConstraintSet> members{s};
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (const auto& g : gens) {
      auto image = g.apply(members[head]);
      if (seen.insert(image.key()).second) members.push_back(image);
    }
  }
  return members;
}

inline std::size_t orbit_size(const ConstraintSet& s) { return orbit(s).size(); }

// True if some group element g makes every constraint missing from g·pattern
// also missing from target.
inline bool embeds_up_to_symmetry(const ConstraintSet& pattern, const ConstraintSet& target) {
  if (!(pattern.order() == target.order())) return false;
  if (pattern.missing_count() > target.missing_count()) return false;
  const int n = pattern.order().n();
  const auto& perms = detail::permutations_of(n);
  const auto base = detail::MissingProfile::of(pattern);
  const auto tgt = detail::MissingProfile::of(target);
  for (int t = 0; t < 2; ++t) {
    const auto prof = t ? base.transposed(n) : base;
    for (const auto& p : perms) {
      bool rows_fit = true;
      for (int b = 0; b < n && rows_fit; ++b) rows_fit = prof.rows_per_band[b] <= tgt.rows_per_band[p[b]];
      if (!rows_fit) continue;
      for (const auto& q : perms) {
        bool fits = true;
        for (int c = 0; c < n && fits; ++c) fits = prof.cols_per_stack[c] <= tgt.cols_per_stack[q[c]];
        for (int box = 0; box < n * n && fits; ++box) {
          if (prof.box_missing[box]) fits = tgt.box_missing[p[box / n] * n + q[box % n]] != 0;
        }
        if (fits) return true;
      }
    }
  }
  return false;
}

}  // namespace sudoku_redundancy
