// Explicit line families: clusters, cup/cap extremal families, the lower
// bound families, families with few empty cells, and regular polygon sides.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "esl/core.hpp"

namespace esl {

struct ClusterSpec {
  Line center;
  Rational epsilon{1};
};

/// Squeezes f into a narrow pencil around spec.center: slopes within epsilon
/// of the center's, every vertex below the x-axis and all vertices within
/// epsilon of each other. The image differs from f by an unbounded-cell
/// preserving transform, so its combinatorial type is unchanged.
LineFamily make_cluster(const LineFamily& f, const ClusterSpec& spec);

/// The transform make_cluster uses for a given delta.
UcpTransform cluster_transform(const Line& center, const Rational& delta);

/// Union of clusters of parts[i] around centers[i], with a shared epsilon
/// shrunk until the union is in general position and has the combinatorial
/// type of the limit epsilon -> 0. `groups` receives the cluster of every
/// line of the result.
LineFamily cluster_union(const std::vector<Line>& centers, const std::vector<LineFamily>& parts,
                         std::vector<int>* groups = nullptr);

class UnsupportedN : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// C(k+l-2, k-1) lines, no (k+1)-cup, no (l+1)-cap, no right-unbounded 4-cell.
LineFamily build_Fkl(int k, int l);
/// Mirror image of build_Fkl: no left-unbounded 4-cell instead.
LineFamily build_Fkl_mirror(int k, int l);

/// Family with no n lines in convex position, n >= 6.
LineFamily build_prop_lower(int n, std::vector<int>* groups = nullptr);
std::uint64_t prop_lower_size(int n);

/// Family spanning no n-cell, n >= 5.
LineFamily build_thm_lower(int n, std::vector<int>* groups = nullptr);
std::uint64_t thm_lower_size(int n);

/// The two-sided lower bound family before clustering: 2N lines, the first
/// N a reflected F_{k,k}, the last N a reflected mirror F_{k,k}.
LineFamily thm_lower_base(int k);

/// N lines whose arrangement has no face bounded by five or more lines.
/// Every line passes below all vertices of the earlier ones.
LineFamily build_no_empty(int N);

/// build_no_empty colored 0/1 alternately along the x-axis.
LineFamily build_no_empty_colored(int N);

/// Side lines of a rational regular N-gon (N odd) with the exact
/// combinatorial type of the real one.
LineFamily build_regular_ngon_lines(int N);

/// Random family with coefficients a/b, |a| <= 50, 1 <= b <= 7.
LineFamily random_family(int n, std::mt19937_64& rng);

/// Random restarts looking for N lines with no empty 4-cell.
std::optional<LineFamily> search_no_empty_4cell(int N, int attempts, std::mt19937_64& rng);

}  // namespace esl
