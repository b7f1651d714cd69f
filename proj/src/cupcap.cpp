#include "esl/cupcap.hpp"

#include <algorithm>
#include <stdexcept>

namespace esl {

const char* to_string(CupCapClass c) {
  switch (c) {
    case CupCapClass::Cup: return "cup";
    case CupCapClass::Cap: return "cap";
    case CupCapClass::Neither: return "neither";
    case CupCapClass::Both: return "both";
  }
  return "?";
}

PointR dualize(const Line& l) { return {l.m, l.c}; }

bool is_cup_triple(const Arrangement& arr, int i, int j, int k) { return arr.side(j, i, k) < 0; }
bool is_cap_triple(const Arrangement& arr, int i, int j, int k) { return arr.side(j, i, k) > 0; }

CupCapClass classify_cupcap(const LineFamily& g) {
  if (g.size() <= 2) return CupCapClass::Both;
  bool cup = true, cap = true;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    int s = side_of(g[i], intersect(g[i - 1], g[i + 1]));
    cup = cup && s < 0;
    cap = cap && s > 0;
  }
  if (cup) return CupCapClass::Cup;
  if (cap) return CupCapClass::Cap;
  return CupCapClass::Neither;
}

ChainTable::ChainTable(int n, const std::function<bool(int, int, int)>& ok) : n_(n), ok_(ok) {
  const auto N = static_cast<std::size_t>(n);
  start_.assign(N * N, 0);
  end_.assign(N * N, 0);
  longest_ = n > 0 ? 1 : 0;
  for (int i = n - 1; i >= 0; --i)
    for (int j = n - 1; j > i; --j) {
      int best = 2;
      for (int k = j + 1; k < n; ++k)
        if (ok_(i, j, k)) best = std::max(best, 1 + start_[static_cast<std::size_t>(j) * N + k]);
      start_[static_cast<std::size_t>(i) * N + j] = best;
      longest_ = std::max(longest_, best);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      int best = 2;
      for (int i = 0; i < j; ++i)
        if (ok_(i, j, k)) best = std::max(best, 1 + end_[static_cast<std::size_t>(i) * N + j]);
      end_[static_cast<std::size_t>(j) * N + k] = best;
    }
}

std::vector<int> ChainTable::witness() const {
  if (n_ == 0) return {};
  if (longest_ == 1) return {0};
  const auto N = static_cast<std::size_t>(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      if (start_[static_cast<std::size_t>(i) * N + j] != longest_) continue;
      std::vector<int> chain{i, j};
      int remaining = longest_ - 1;
      while (remaining > 1) {
        int a = chain[chain.size() - 2], b = chain.back();
        for (int k = b + 1; k < n_; ++k)
          if (ok_(a, b, k) && start_[static_cast<std::size_t>(b) * N + k] == remaining) {
            chain.push_back(k);
            break;
          }
        --remaining;
      }
      return chain;
    }
  throw std::logic_error("chain table has no maximal chain");
}

int ChainTable::longest_ending_at(int j) const {
  int best = 1;
  for (int i = 0; i < j; ++i) best = std::max(best, end_[static_cast<std::size_t>(i) * n_ + j]);
  return best;
}

int ChainTable::longest_starting_at(int i) const {
  int best = 1;
  for (int j = i + 1; j < n_; ++j) best = std::max(best, start_[static_cast<std::size_t>(i) * n_ + j]);
  return best;
}

LongestCupCap longest_cup_cap(const Arrangement& arr) {
  ChainTable cups(arr.size(), [&](int i, int j, int k) { return is_cup_triple(arr, i, j, k); });
  ChainTable caps(arr.size(), [&](int i, int j, int k) { return is_cap_triple(arr, i, j, k); });
  return {{cups.witness(), ChainKind::Cup}, {caps.witness(), ChainKind::Cap}};
}

LongestCupCap longest_cup_cap(const LineFamily& f) { return longest_cup_cap(Arrangement(f)); }

LongestCupCap longest_point_cup_cap(std::span<const PointR> points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i - 1].x >= points[i].x) throw std::invalid_argument("points must have increasing x");
  const int n = static_cast<int>(points.size());
  std::vector<std::int8_t> orient(static_cast<std::size_t>(n) * n * n, 0);
  auto at = [&](int i, int j, int k) -> std::int8_t& {
    return orient[(static_cast<std::size_t>(i) * n + j) * n + k];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        int o = orientation(points[i], points[j], points[k]);
        if (o == 0) throw std::invalid_argument("three collinear points");
        at(i, j, k) = static_cast<std::int8_t>(o);
      }
  ChainTable cups(n, [&](int i, int j, int k) { return at(i, j, k) > 0; });
  ChainTable caps(n, [&](int i, int j, int k) { return at(i, j, k) < 0; });
  return {{cups.witness(), ChainKind::Cup}, {caps.witness(), ChainKind::Cap}};
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t f_l_value(int k, int l) {
  if (k < 2 || l < 2) throw std::invalid_argument("f_l needs k, l >= 2");
  return binomial(k + l - 4, k - 2) + 1;
}

}  // namespace esl
