#pragma once

#include <random>
#include <string>
#include <vector>

#include "esl/core.hpp"

namespace esl::testing {

inline Rational Q(const std::string& s) { return parse_rational(s); }
inline Line L(const std::string& m, const std::string& c) { return {Q(m), Q(c)}; }
inline PointR P(const std::string& x, const std::string& y) { return {Q(x), Q(y)}; }

inline LineFamily family(std::vector<Line> lines) { return LineFamily::from_lines(std::move(lines)); }

/// Random family with small-denominator rational coefficients.
inline LineFamily random_lines(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-60, 60), den(1, 6);
  for (;;) {
    std::vector<Line> lines;
    for (int i = 0; i < n; ++i) {
      lines.push_back({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
      lines.back().m.canonicalize();
      lines.back().c.canonicalize();
    }
    auto r = check_general_position(lines);
    if (auto* f = std::get_if<LineFamily>(&r)) return *f;
  }
}

inline std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

/// Calls fn on every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> s = iota_vec(k);
  for (;;) {
    fn(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace esl::testing
