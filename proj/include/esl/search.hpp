// Convex-position search, lower-bound certificates and vertical configurations.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esl/core.hpp"

namespace esl {

struct SearchOptions {
  int jobs = 1;
  /// Maximum number of convex-position tests; 0 means the default.
  std::uint64_t budget = 0;
};

/// 10^8, or ESL_BUDGET from the environment when set.
std::uint64_t default_budget();

struct ConvexPositionResult {
  int max_k = 0;
  std::vector<int> witness;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(ConvexPositionResult best)
      : std::runtime_error("subset budget exceeded"), best_(std::move(best)) {}
  const ConvexPositionResult& best() const { return best_; }

 private:
  ConvexPositionResult best_;
};

/// Largest k (at most `cap`) such that some k lines are in convex position.
/// Starts from the longest cup or cap and climbs one size at a time; since
/// subsets of lines in convex position are in convex position, the first
/// size with no witness ends the search.
ConvexPositionResult max_convex_position(const LineFamily& f, std::optional<int> cap = std::nullopt,
                                         const SearchOptions& opts = {});

/// Lexicographically first n-subset in convex position, or nullopt.
/// Throws BudgetExceeded.
std::optional<std::vector<int>> find_convex_subset(const LineFamily& f, int n, const SearchOptions& opts,
                                                   std::uint64_t* checked = nullptr);

enum class Verdict { Certified, Refuted, BudgetExceeded };
const char* to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Certified;
  int n = 0;
  std::size_t lines = 0;
  std::uint64_t subsets_checked = 0;
  std::uint64_t subsets_total = 0;
  std::string family_hash;         ///< fnv1a64 of the canonical text form
  std::vector<int> witness;        ///< the n-cell found when refuted
};

/// Exhaustively checks that no n lines of f are in convex position.
Certificate certify_lower_bound(const LineFamily& f, int n, const SearchOptions& opts = {});

/// 16 hex digits of FNV-1a 64 over "m c\n" per line.
std::string content_hash(const LineFamily& f);

/// The vertex of the first and last line lies above every other vertex.
bool is_vertical(const LineFamily& f);

struct VerticalResult {
  LineFamily family;
  Matrix3 matrix;
  /// Indices in the input of the two lines through the chosen hull vertex.
  std::pair<int, int> pivot{0, 0};
};

/// Projective image of f that is a vertical configuration, found by sending
/// a line just outside the hull of the vertices to infinity.
VerticalResult make_vertical_configuration(const LineFamily& f);

class NotVertical : public std::invalid_argument {
 public:
  NotVertical() : std::invalid_argument("family is not a vertical configuration") {}
};

struct VerticalConfigAnalysis {
  bool vertical = false;
  std::vector<int> A;  ///< last lines of (n-1)-caps
  std::vector<int> B;  ///< first lines of (n-1)-cups
};

VerticalConfigAnalysis cup_cap_roles(const LineFamily& f, int n);

}  // namespace esl
