// Exact-n crossing cells, mixed point/line polygons, halfplane selection and
// transversal checks.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "esl/arrangement.hpp"
#include "esl/core.hpp"
#include "esl/search.hpp"

namespace esl {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A face of a sub-family together with the other lines meeting it.
struct CrossingSeed {
  std::vector<int> subset;
  SignVector signs;
  std::vector<int> crossing;
};

/// Among all faces of all 2- and 3-line sub-families, the first one met by
/// the most other lines (pairs before triples, lexicographic order).
CrossingSeed max_crossing_seed(const Arrangement& arr);

struct ExactCrossingResult {
  std::vector<int> subset;  ///< lines of f bounding the cell
  SignVector signs;         ///< the cell, over `subset`
  Face cell;
  std::vector<int> crossing;
  CrossingSeed seed;
  int steps = 0;
};

/// Anchor point on the boundary of the face, off every crossing line.
PointR crossing_anchor(const Arrangement& arr, const std::vector<int>& subset, const SignVector& signs,
                       const std::vector<int>& crossing);

/// prec[i][j]: chords i and j (positions in `crossing`) are disjoint and
/// chord i separates chord j from c. Throws std::logic_error unless the
/// relation is a strict partial order.
std::vector<std::vector<bool>> crossing_order(const Arrangement& arr, const std::vector<int>& subset,
                                              const SignVector& signs, const std::vector<int>& crossing,
                                              const PointR& c);

/// A cell met by exactly n other lines, reached from `seed` by cutting off
/// one crossing line at a time. Throws Infeasible when the seed has fewer.
ExactCrossingResult exact_crossing_cell(const Arrangement& arr, const CrossingSeed& seed, int n);
ExactCrossingResult exact_crossing_cell(const LineFamily& f, int n);

struct MixedPolygon {
  PointR translation;
  std::vector<PointR> vertices;     ///< counter-clockwise
  std::vector<int> edge_lines;      ///< per edge i (vertices i, i+1): line of f, or -1
  std::vector<int> point_vertices;  ///< per vertex: index into the point list, or -1
};

/// Convex 2n-gon with n vertices from t + s and n edges on lines of f.
/// Needs at least f_l(2n-1, 2n-1) lines and points; points need distinct
/// x-coordinates and no three on a line.
MixedPolygon mixed_polygon(const LineFamily& f, const std::vector<PointR>& s, int n);

/// Exact replay: strict convexity, exactly n vertices in t + s, exactly n
/// edges on lines of f, bookkeeping consistent. Empty string when valid.
std::string check_mixed_polygon(const LineFamily& f, const std::vector<PointR>& s, int n,
                                const MixedPolygon& k);

enum class HalfSide { Above, Below };

struct HalfPlane {
  Line line;
  HalfSide side = HalfSide::Above;
};

enum class HalfplaneMode { Intersection, Complements };
const char* to_string(HalfplaneMode m);

struct HalfplaneSelection {
  std::vector<int> indices;  ///< into the input, increasing
  HalfplaneMode mode = HalfplaneMode::Intersection;
  Face cell;                 ///< over the selected lines in slope order
  std::vector<int> big_cell; ///< the 2n lines in convex position (input indices)
};

/// n halfplanes whose intersection, or n whose complements' intersection,
/// is an n-cell. Throws Infeasible if no 2n bounding lines are in convex
/// position (or the search budget runs out).
HalfplaneSelection halfplane_select(const std::vector<HalfPlane>& hs, int n, const SearchOptions& opts = {});

struct TransversalReport {
  bool all_cells = true;
  std::vector<int> failing;  ///< per group, the index of the chosen line
  std::uint64_t checked = 0;
};

/// Whether every choice of one line per group defines a |groups|-cell.
/// Reports the lexicographically first failure. Throws BudgetExceeded when
/// the number of transversals exceeds the budget.
TransversalReport check_transversals(const std::vector<LineFamily>& groups, const SearchOptions& opts = {});

}  // namespace esl
