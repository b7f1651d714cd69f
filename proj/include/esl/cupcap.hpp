// Cups and caps of line families, their point duals, and the cup/cap bound.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "esl/arrangement.hpp"
#include "esl/core.hpp"

namespace esl {

enum class ChainKind { Cup, Cap };

struct CupCapWitness {
  std::vector<int> indices;  ///< increasing (slope order for lines, x order for points)
  ChainKind kind = ChainKind::Cup;
  int size() const { return static_cast<int>(indices.size()); }
};

enum class CupCapClass { Cup, Cap, Neither, Both };
const char* to_string(CupCapClass c);

/// y = m x + c  ->  (m, c).
PointR dualize(const Line& l);

/// Slope-sorted lines i < j < k: a_j passes strictly above a_i ∩ a_k.
bool is_cup_triple(const Arrangement& arr, int i, int j, int k);
bool is_cap_triple(const Arrangement& arr, int i, int j, int k);

CupCapClass classify_cupcap(const LineFamily& g);

/// Longest chains for a triple predicate over 0..n-1, with helpers for the
/// per-element "longest chain ending here / starting here" lengths.
class ChainTable {
 public:
  ChainTable(int n, const std::function<bool(int, int, int)>& ok);

  int longest() const { return longest_; }
  /// Lexicographically smallest chain of maximum length.
  std::vector<int> witness() const;
  /// Longest chain whose last element is j.
  int longest_ending_at(int j) const;
  /// Longest chain whose first element is i.
  int longest_starting_at(int i) const;

 private:
  int n_;
  std::function<bool(int, int, int)> ok_;
  std::vector<int> start_;  ///< longest chain beginning with the pair (i, j)
  std::vector<int> end_;    ///< longest chain ending with the pair (i, j)
  int longest_ = 0;
};

struct LongestCupCap {
  CupCapWitness cup;
  CupCapWitness cap;
};

LongestCupCap longest_cup_cap(const Arrangement& arr);
LongestCupCap longest_cup_cap(const LineFamily& f);

/// Points sorted by strictly increasing x: a cup has every inner point below
/// the segment of its neighbours, a cap above.
LongestCupCap longest_point_cup_cap(std::span<const PointR> points);

std::uint64_t binomial(int n, int k);

/// Fewest lines forcing a k-cup or an l-cap: C(k+l-4, k-2) + 1.
std::uint64_t f_l_value(int k, int l);

}  // namespace esl
