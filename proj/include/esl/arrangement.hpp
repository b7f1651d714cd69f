// Faces of line arrangements, cell classification and empty-cell census.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "esl/core.hpp"

namespace esl {

/// Per-line side (+1 above, -1 below), indexed like the lines it refers to.
using SignVector = std::vector<std::int8_t>;

enum class FaceKind { Bounded, Cup, Cap, LeftUnbounded, RightUnbounded };
const char* to_string(FaceKind kind);

/// A boundary piece of a face, traversed with the face on its left.
/// `direction` is +1 when the traversal runs toward +x. A missing endpoint
/// means the edge is a half-line (or the whole line) in that direction.
struct Edge {
  int line = -1;
  std::optional<PointR> start;
  std::optional<PointR> end;
  int direction = +1;
};

struct Face {
  SignVector signs;
  std::vector<Edge> boundary;
  /// Sorted line indices contributing a positive-length edge.
  std::vector<int> bounding_lines;
  FaceKind kind = FaceKind::Bounded;
  std::optional<std::pair<int, int>> end_lines;

  int size() const { return static_cast<int>(bounding_lines.size()); }
  bool bounded() const { return kind == FaceKind::Bounded; }
};

using FaceSet = std::vector<Face>;

/// Combinatorial view of a family: for every vertex a_i ∩ a_j the side of
/// every other line, and the order of the vertices along each line. All
/// face queries on the family or any of its sub-families are answered from
/// these tables; exact coordinates are only computed for reported edges.
class Arrangement {
 public:
  explicit Arrangement(LineFamily f);

  const LineFamily& family() const { return family_; }
  int size() const { return n_; }

  /// side_of(a_k, a_i ∩ a_j) for k not in {i, j}.
  int side(int k, int i, int j) const { return side_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j]; }
  /// Position of the vertex a_i ∩ a_j along a_i, left to right.
  int rank(int i, int j) const { return rank_[static_cast<std::size_t>(i) * n_ + j]; }

  /// The stretch of line `line` inside the open region given by `signs` over
  /// `subset` (lines equal to `line` are skipped). Returns the bounding line
  /// on the left and on the right (-1 when unbounded), or nullopt if the
  /// line misses the region.
  std::optional<std::pair<int, int>> chord(int line, std::span<const int> subset,
                                           std::span<const std::int8_t> signs) const;

  /// Sign vectors of all faces of the sub-arrangement, lexicographically sorted.
  std::vector<SignVector> face_signs(std::span<const int> subset) const;

  /// Builds a face from its sign vector; nullopt if the region is empty.
  std::optional<Face> face(std::span<const int> subset, const SignVector& signs) const;

  FaceSet faces(std::span<const int> subset) const;
  FaceSet faces() const;

  /// Sign vectors of the faces bounded by every line of the subset.
  std::vector<SignVector> full_cell_signs(std::span<const int> subset) const;
  /// True iff the sub-family is in convex position (defines a |subset|-cell).
  bool in_convex_position(std::span<const int> subset) const;
  /// The |subset|-cell, preferring a bounded one, then the smallest sign vector.
  std::optional<Face> defines_cell(std::span<const int> subset) const;

  /// Lines outside `subset` that meet the open face `signs` of the sub-arrangement.
  std::vector<int> crossing_lines(std::span<const int> subset, const SignVector& signs) const;

  /// Sign vector of a point off all lines of the subset.
  SignVector signs_at(std::span<const int> subset, const PointR& p) const;

  std::vector<int> all_indices() const;

 private:
  LineFamily family_;
  int n_ = 0;
  std::vector<std::int8_t> side_;
  std::vector<int> rank_;
};

FaceSet faces(const LineFamily& f);

/// Exact boundary chain of the region with the given signs; nullopt if empty.
std::optional<std::vector<Edge>> face_region(const LineFamily& f, const SignVector& signs);

std::optional<Face> defines_cell(const LineFamily& g);

/// Lines of f outside `subset` meeting the interior of the face `signs`
/// of the sub-arrangement (signs indexed like `subset`).
std::vector<int> crossing_lines(const LineFamily& f, std::span<const int> subset,
                                const SignVector& signs);

struct Census {
  std::map<int, long> all;      ///< faces by number of bounding lines
  std::map<int, long> bounded;  ///< the same, bounded faces only
};

/// Census of the faces of the full arrangement. With `monochromatic` only
/// faces whose bounding lines share one color are counted (needs colors).
Census empty_cell_census(const LineFamily& f, bool monochromatic = false);

/// For every line, the triangle it forms with the two lines meeting closest
/// to it. Each triangle is checked to be an empty 3-cell; the distinct ones
/// are returned as sorted index triples.
std::vector<std::array<int, 3>> nearest_vertex_triangles(const LineFamily& f);

}  // namespace esl
