#include "esl/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "esl/arrangement.hpp"
#include "esl/cupcap.hpp"

namespace esl {

namespace {

// Point of the center line where the cluster's vertices gather.
PointR cluster_anchor(const Line& center) {
  if (center.m != 0) return {(Rational(-1) - center.c) / center.m, Rational(-1)};
  if (center.c < 0) return {Rational(0), center.c};
  throw std::invalid_argument("cluster center is horizontal and not below the x-axis");
}

std::vector<PointR> vertices(const LineFamily& f) {
  std::vector<PointR> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) out.push_back(intersect(f[i], f[j]));
  return out;
}

bool cluster_ok(const LineFamily& g, const Line& center, const Rational& eps) {
  for (const auto& l : g.lines())
    if (abs(l.m - center.m) > eps) return false;
  auto vs = vertices(g);
  for (const auto& v : vs)
    if (v.y >= 0) return false;
  Rational eps2 = eps * eps;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Rational dx = vs[i].x - vs[j].x, dy = vs[i].y - vs[j].y;
      if (dx * dx + dy * dy > eps2) return false;
    }
  return true;
}

}  // namespace

UcpTransform cluster_transform(const Line& center, const Rational& delta) {
  return UcpTransform{delta, center.m, cluster_anchor(center)};
}

LineFamily make_cluster(const LineFamily& f, const ClusterSpec& spec) {
  if (spec.epsilon <= 0) throw std::invalid_argument("cluster epsilon must be positive");
  Rational delta(1);
  for (;;) {
    auto g = apply_ucp(f, cluster_transform(spec.center, delta));
    if (cluster_ok(g, spec.center, spec.epsilon)) return g;
    delta /= 2;
  }
}

LineFamily cluster_union(const std::vector<Line>& centers, const std::vector<LineFamily>& parts,
                         std::vector<int>* groups) {
  if (centers.size() != parts.size()) throw std::invalid_argument("one family per center");
  const int g = static_cast<int>(centers.size());
  {
    auto r = check_general_position(centers);
    if (std::holds_alternative<Violation>(r))
      throw GeneralPositionError(std::get<Violation>(r));
  }
  std::vector<PointR> anchors;
  for (const auto& c : centers) anchors.push_back(cluster_anchor(c));

  // Slopes of different clusters must not interleave.
  Rational eps(1);
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) eps = std::min<Rational>(eps, abs(centers[i].m - centers[j].m) / 4);

  for (;;) {
    std::vector<std::pair<Line, int>> all;
    for (int i = 0; i < g; ++i) {
      auto cl = make_cluster(parts[static_cast<std::size_t>(i)], {centers[static_cast<std::size_t>(i)], eps});
      for (const auto& l : cl.lines()) all.emplace_back(l, i);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.m < b.first.m; });
    std::vector<Line> lines;
    for (const auto& [l, grp] : all) lines.push_back(l);

    bool ok = std::holds_alternative<LineFamily>(check_general_position(lines));
    const std::size_t n = all.size();
    for (std::size_t x = 0; ok && x < n; ++x)
      for (std::size_t y = x + 1; ok && y < n; ++y) {
        int gx = all[x].second, gy = all[y].second;
        PointR v = intersect(all[x].first, all[y].first);
        PointR limit = gx == gy ? anchors[static_cast<std::size_t>(gx)]
                                : intersect(centers[static_cast<std::size_t>(gx)], centers[static_cast<std::size_t>(gy)]);
        for (std::size_t z = 0; ok && z < n; ++z) {
          int gz = all[z].second;
          if (gz == gx || gz == gy) continue;
          ok = side_of(all[z].first, v) == side_of(centers[static_cast<std::size_t>(gz)], limit);
        }
      }
    if (ok) {
      if (groups) {
        groups->clear();
        for (const auto& [l, grp] : all) groups->push_back(grp);
      }
      return LineFamily::from_lines(std::move(lines));
    }
    eps /= 2;
  }
}

LineFamily build_Fkl(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("build_Fkl needs k, l >= 1");
  static std::map<std::pair<int, int>, LineFamily> memo;
  static std::recursive_mutex mu;
  if (k == 1 || l == 1) return LineFamily::from_lines({Line{Rational(0), Rational(0)}});
  std::lock_guard lock(mu);
  if (auto it = memo.find({k, l}); it != memo.end()) return it->second;
  const Line a1{Rational(1), Rational(2)};
  const Line a2{Rational(2), Rational(1)};
  auto f = cluster_union({a1, a2}, {build_Fkl(k - 1, l), build_Fkl(k, l - 1)});
  memo.emplace(std::make_pair(k, l), f);
  return f;
}

LineFamily build_Fkl_mirror(int k, int l) { return reflect(build_Fkl(k, l), Axis::Vertical); }

namespace {

void check_n(int n, int least) {
  if (n < least) throw UnsupportedN("n must be at least " + std::to_string(least));
}

// Moves f so that all slopes are positive and all vertices lie above the x-axis.
LineFamily lift_positive(const LineFamily& f) {
  Rational min_m = f[0].m;
  UcpTransform T{Rational(1), Rational(1) - min_m, {Rational(0), Rational(0)}};
  Rational low(0);
  bool first = true;
  for (const auto& v : vertices(f)) {
    Rational y = T.apply(v).y;
    if (first || y < low) low = y;
    first = false;
  }
  T.b.y = Rational(1) - low;
  return apply_ucp(f, T);
}

}  // namespace

std::uint64_t prop_lower_size(int n) {
  check_n(n, 5);
  int k = (n - 1) / 2;
  if (n % 2 == 0) {
    k = (n - 2) / 2;
    auto N = binomial(2 * k - 2, k - 1);
    return N * N;
  }
  return (binomial(2 * k - 2, k - 1) + 1) * binomial(2 * k - 3, k - 1);
}

LineFamily build_prop_lower(int n, std::vector<int>* groups) {
  check_n(n, 5);
  const bool even = n % 2 == 0;
  const int k = even ? (n - 2) / 2 : (n - 1) / 2;
  auto base = lift_positive(build_Fkl_mirror(k, k));
  std::vector<LineFamily> parts;
  for (std::size_t i = 0; i < base.size(); ++i)
    parts.push_back(even || i == 0 ? build_Fkl(k, k) : build_Fkl(k - 1, k));
  return cluster_union(base.lines(), parts, groups);
}

LineFamily thm_lower_base(int k) {
  const Line a{Rational(1), Rational(1)};
  const Line b{Rational(-1), Rational(1)};
  auto pair = cluster_union({a, b}, {build_Fkl(k, k), build_Fkl_mirror(k, k)});
  auto flipped = reflect(pair, Axis::Horizontal);
  Rational low(0);
  bool first = true;
  for (const auto& v : vertices(flipped)) {
    if (first || v.y < low) low = v.y;
    first = false;
  }
  std::vector<Line> lifted;
  for (const auto& l : flipped.lines()) lifted.push_back({l.m, l.c + Rational(1) - low});
  return LineFamily::from_lines(std::move(lifted));
}

std::uint64_t thm_lower_size(int n) {
  check_n(n, 5);
  if (n % 2 == 0) {
    int k = (n - 2) / 2;
    auto N = binomial(2 * k - 2, k - 1);
    return 2 * N * N;
  }
  int k = (n - 1) / 2;
  return 2 * (binomial(2 * k - 2, k - 1) + 1) * binomial(2 * k - 3, k - 1);
}

LineFamily build_thm_lower(int n, std::vector<int>* groups) {
  check_n(n, 5);
  const bool even = n % 2 == 0;
  const int k = even ? (n - 2) / 2 : (n - 1) / 2;
  auto base = thm_lower_base(k);
  const std::size_t N = base.size() / 2;
  std::vector<LineFamily> parts;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const bool left_half = i < N;
    const bool head = i == N - 1 || i == N;
    const int kk = even || head ? k : k - 1;
    parts.push_back(left_half ? build_Fkl_mirror(kk, k) : build_Fkl(kk, k));
  }
  return cluster_union(base.lines(), parts, groups);
}

namespace {

// Colors lines 0/1 alternately in the order they cross the x-axis.
std::vector<int> crossing_colors(const std::vector<Line>& lines) {
  std::vector<int> order(lines.size());
  std::iota(order.begin(), order.end(), 0);
  auto root = [&](int i) -> Rational {
    const auto& l = lines[static_cast<std::size_t>(i)];
    return -l.c / l.m;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return root(a) < root(b); });
  std::vector<int> colors(lines.size());
  for (std::size_t r = 0; r < order.size(); ++r) colors[static_cast<std::size_t>(order[r])] = static_cast<int>(r % 2);
  return colors;
}

}  // namespace

LineFamily build_no_empty(int N) {
  if (N < 2) throw std::invalid_argument("build_no_empty needs N >= 2");
  // Line i goes below every earlier vertex, with its slope placed in the
  // middle of the earlier slopes. One extra line of the same kind becomes
  // the x-axis.
  std::vector<Line> lines;
  std::vector<Rational> slopes;
  for (int i = 0; i <= N; ++i) {
    const std::size_t rank = i < 3 ? 0 : static_cast<std::size_t>((i - 1) / 2);
    Rational m;
    if (slopes.empty())
      m = 1;
    else if (rank == 0)
      m = slopes.front() - 1;
    else
      m = (slopes[rank - 1] + slopes[rank]) / 2;
    Rational c(0);
    bool first = true;
    for (std::size_t a = 0; a < lines.size(); ++a)
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        auto v = intersect(lines[a], lines[b]);
        Rational through = v.y - m * v.x;
        if (first || through < c) c = through;
        first = false;
      }
    lines.push_back({m, c - 1});
    slopes.insert(std::upper_bound(slopes.begin(), slopes.end(), m), m);
  }
  const Line axis = lines.back();
  lines.pop_back();
  UcpTransform level{Rational(1), -axis.m, {Rational(0), -axis.c}};
  return apply_ucp(LineFamily::from_lines(std::move(lines)), level);
}

LineFamily build_no_empty_colored(int N) {
  auto f = build_no_empty(N);
  return f.with_colors(crossing_colors(f.lines()));
}

LineFamily build_regular_ngon_lines(int N) {
  if (N < 3 || N % 2 == 0) throw std::invalid_argument("regular N-gon needs odd N >= 3");
  using ld = long double;
  const ld pi = std::numbers::pi_v<long double>;
  std::vector<ld> px, py;
  for (int j = 0; j < N; ++j) {
    ld th = 2 * pi * j / N + pi / (2 * N);
    px.push_back(std::cos(th));
    py.push_back(std::sin(th));
  }
  // Ideal lines in long double, sorted by slope.
  struct Ld { ld m, c; };
  std::vector<Ld> ideal;
  for (int j = 0; j < N; ++j) {
    int k = (j + 1) % N;
    ld m = (py[k] - py[j]) / (px[k] - px[j]);
    ideal.push_back({m, py[j] - m * px[j]});
  }
  std::sort(ideal.begin(), ideal.end(), [](const Ld& a, const Ld& b) { return a.m < b.m; });
  auto ideal_side = [&](int k, int i, int j) {
    ld x = (ideal[j].c - ideal[i].c) / (ideal[i].m - ideal[j].m);
    ld y = ideal[i].m * x + ideal[i].c;
    ld d = y - ideal[k].m * x - ideal[k].c;
    return d > 0 ? 1 : -1;
  };

  for (long den = 1000000;; den *= 10) {
    std::vector<PointR> pts;
    for (int j = 0; j < N; ++j) {
      Rational x(mpz_class(static_cast<long>(std::llround(px[j] * den))), mpz_class(den));
      Rational y(mpz_class(static_cast<long>(std::llround(py[j] * den))), mpz_class(den));
      x.canonicalize();
      y.canonicalize();
      pts.push_back({x, y});
    }
    std::vector<Line> lines;
    for (int j = 0; j < N; ++j) {
      const auto& a = pts[static_cast<std::size_t>(j)];
      const auto& b = pts[static_cast<std::size_t>((j + 1) % N)];
      Rational m = (b.y - a.y) / (b.x - a.x);
      lines.push_back({m, a.y - m * a.x});
    }
    auto r = check_general_position(lines);
    if (!std::holds_alternative<LineFamily>(r)) continue;
    auto f = std::get<LineFamily>(std::move(r));
    Arrangement arr(f);
    bool same = true;
    for (int k = 0; k < N && same; ++k)
      for (int i = 0; i < N && same; ++i)
        for (int j = i + 1; j < N && same; ++j)
          if (k != i && k != j) same = arr.side(k, i, j) == ideal_side(k, i, j);
    if (same) return f;
  }
}

LineFamily random_family(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-50, 50), den(1, 7);
  for (;;) {
    std::vector<Line> lines;
    for (int i = 0; i < n; ++i) {
      Rational m(num(rng), den(rng)), c(num(rng), den(rng));
      m.canonicalize();
      c.canonicalize();
      lines.push_back({m, c});
    }
    auto r = check_general_position(lines);
    if (auto* f = std::get_if<LineFamily>(&r)) return std::move(*f);
  }
}

std::optional<LineFamily> search_no_empty_4cell(int N, int attempts, std::mt19937_64& rng) {
  for (int t = 0; t < attempts; ++t) {
    auto f = random_family(N, rng);
    auto census = empty_cell_census(f);
    if (census.all[4] == 0) return f;
  }
  return std::nullopt;
}

}  // namespace esl
