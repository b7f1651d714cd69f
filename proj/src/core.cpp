#include "esl/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace esl {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

PointR intersect(const Line& a, const Line& b) {
  if (a.m == b.m) throw ParallelLines();
  Rational x = (b.c - a.c) / (a.m - b.m);
  Rational y = a.m * x + a.c;
  return {x, y};
}

int side_of(const Line& l, const PointR& p) { return sgn(p.y - l.m * p.x - l.c); }

int orientation(const PointR& p, const PointR& q, const PointR& r) {
  return sgn((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << (kind == Kind::Parallel ? "Parallel(" : "Concurrent(");
  for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
  os << ")";
  return os.str();
}

GeneralPositionError::GeneralPositionError(Violation v)
    : std::invalid_argument("not in general position: " + v.describe()),
      violation_(std::move(v)) {}

std::variant<LineFamily, Violation> check_general_position(std::span<const Line> lines) {
  const int n = static_cast<int>(lines.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lines[a].m < lines[b].m; });

  std::optional<std::pair<int, int>> parallel;
  for (int k = 0; k + 1 < n;) {
    int e = k + 1;
    while (e < n && lines[order[e]].m == lines[order[k]].m) ++e;
    if (e - k >= 2) {
      std::vector<int> group(order.begin() + k, order.begin() + e);
      std::sort(group.begin(), group.end());
      std::pair<int, int> p{group[0], group[1]};
      if (!parallel || p < *parallel) parallel = p;
    }
    k = e;
  }
  if (parallel) return Violation{Violation::Kind::Parallel, {parallel->first, parallel->second}};

  // Concurrency: group equal vertices, keep the smallest triple of each group.
  struct Vertex {
    PointR p;
    int i, j;
  };
  std::vector<Vertex> vs;
  vs.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) vs.push_back({intersect(lines[i], lines[j]), i, j});
  auto less = [](const Vertex& a, const Vertex& b) {
    if (a.p.x != b.p.x) return a.p.x < b.p.x;
    return a.p.y < b.p.y;
  };
  std::sort(vs.begin(), vs.end(), less);
  std::optional<std::array<int, 3>> concurrent;
  for (std::size_t k = 0; k < vs.size();) {
    std::size_t e = k + 1;
    while (e < vs.size() && vs[e].p == vs[k].p) ++e;
    if (e - k >= 2) {
      std::vector<int> ids;
      for (std::size_t t = k; t < e; ++t) {
        ids.push_back(vs[t].i);
        ids.push_back(vs[t].j);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      std::array<int, 3> t{ids[0], ids[1], ids[2]};
      if (!concurrent || t < *concurrent) concurrent = t;
    }
    k = e;
  }
  if (concurrent) {
    return Violation{Violation::Kind::Concurrent,
                     {(*concurrent)[0], (*concurrent)[1], (*concurrent)[2]}};
  }

  LineFamily f;
  f.lines_.reserve(n);
  for (int idx : order) f.lines_.push_back(lines[idx]);
  return f;
}

LineFamily LineFamily::from_lines(std::vector<Line> lines, std::optional<std::vector<int>> colors) {
  if (colors && colors->size() != lines.size()) {
    throw std::invalid_argument("color count does not match line count");
  }
  auto result = check_general_position(lines);
  if (auto* v = std::get_if<Violation>(&result)) throw GeneralPositionError(*v);
  LineFamily f = std::get<LineFamily>(std::move(result));
  if (colors) {
    // Re-associate colors with the sorted order (slopes are distinct).
    std::vector<int> sorted(lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
      auto it = std::lower_bound(f.lines_.begin(), f.lines_.end(), lines[k].m,
                                 [](const Line& l, const Rational& m) { return l.m < m; });
      sorted[static_cast<std::size_t>(it - f.lines_.begin())] = (*colors)[k];
    }
    f.colors_ = std::move(sorted);
  }
  return f;
}

LineFamily LineFamily::with_colors(std::vector<int> colors) const {
  if (colors.size() != size()) throw std::invalid_argument("color count does not match line count");
  LineFamily f = *this;
  f.colors_ = std::move(colors);
  return f;
}

LineFamily LineFamily::subfamily(std::span<const int> indices) const {
  LineFamily f;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || static_cast<std::size_t>(indices[k]) >= size() ||
        (k > 0 && indices[k] <= indices[k - 1])) {
      throw std::invalid_argument("subfamily indices must be increasing and in range");
    }
    f.lines_.push_back(lines_[indices[k]]);
  }
  if (colors_) {
    std::vector<int> c;
    for (int i : indices) c.push_back((*colors_)[i]);
    f.colors_ = std::move(c);
  }
  return f;
}

PointR UcpTransform::apply(const PointR& p) const {
  return {delta * p.x + b.x, delta * t * p.x + delta * delta * p.y + b.y};
}

Line UcpTransform::apply(const Line& l) const {
  Rational m = t + delta * l.m;
  Rational c = delta * delta * l.c + b.y - m * b.x;
  return {m, c};
}

LineFamily apply_ucp(const LineFamily& f, const UcpTransform& T) {
  if (T.delta <= 0) throw std::invalid_argument("ucp transform needs delta > 0");
  std::vector<Line> out;
  out.reserve(f.size());
  for (const Line& l : f.lines()) out.push_back(T.apply(l));
  auto result = check_general_position(out);
  if (std::holds_alternative<Violation>(result)) {
    throw DegenerateOutput("ucp image lost general position");
  }
  LineFamily g = std::get<LineFamily>(std::move(result));
  return f.colors() ? g.with_colors(*f.colors()) : g;
}

Line reflect(const Line& l, Axis axis) {
  if (axis == Axis::Vertical) return {-l.m, l.c};
  return {-l.m, -l.c};
}

PointR reflect(const PointR& p, Axis axis) {
  if (axis == Axis::Vertical) return {-p.x, p.y};
  return {p.x, -p.y};
}

LineFamily reflect(const LineFamily& f, Axis axis) {
  std::vector<Line> out;
  for (auto it = f.lines().rbegin(); it != f.lines().rend(); ++it) out.push_back(reflect(*it, axis));
  std::optional<std::vector<int>> colors;
  if (f.colors()) colors = std::vector<int>(f.colors()->rbegin(), f.colors()->rend());
  // Slopes are negated, so the reversed sequence is already sorted.
  return LineFamily::from_lines(std::move(out), std::move(colors));
}

Matrix3 identity3() {
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? 1 : 0;
  return m;
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      m[i][j] = s;
    }
  return m;
}

Rational determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 inverse(const Matrix3& m) {
  Rational det = determinant(m);
  if (det == 0) throw std::invalid_argument("singular projective matrix");
  Matrix3 inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
    }
  return inv;
}

std::optional<PointR> projective_apply(const Matrix3& M, const PointR& p) {
  Rational X = M[0][0] * p.x + M[0][1] * p.y + M[0][2];
  Rational Y = M[1][0] * p.x + M[1][1] * p.y + M[1][2];
  Rational W = M[2][0] * p.x + M[2][1] * p.y + M[2][2];
  if (W == 0) return std::nullopt;
  return PointR{X / W, Y / W};
}

LineFamily projective_map(const LineFamily& f, const Matrix3& M, std::vector<int>& origin) {
  Matrix3 inv = inverse(M);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (!projective_apply(M, intersect(f[i], f[j]))) {
        throw MapsToInfinity("an intersection point is sent to infinity");
      }
    }
  // Line (m, -1, c) . (x, y, 1) = 0 maps to inv^T (m, -1, c).
  std::vector<Line> out;
  for (const Line& l : f.lines()) {
    std::array<Rational, 3> h{l.m, Rational(-1), l.c};
    std::array<Rational, 3> g;
    for (int k = 0; k < 3; ++k) g[k] = inv[0][k] * h[0] + inv[1][k] * h[1] + inv[2][k] * h[2];
    if (g[1] == 0) throw ProducesVertical("an image line is vertical");
    out.push_back({-g[0] / g[1], -g[2] / g[1]});
  }
  auto result = check_general_position(out);
  if (auto* v = std::get_if<Violation>(&result)) {
    throw MapsToInfinity("image not in general position: " + v->describe());
  }
  LineFamily g = std::get<LineFamily>(std::move(result));
  origin.assign(f.size(), -1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto it = std::lower_bound(g.lines().begin(), g.lines().end(), out[k].m,
                               [](const Line& l, const Rational& m) { return l.m < m; });
    origin[static_cast<std::size_t>(it - g.lines().begin())] = static_cast<int>(k);
  }
  if (f.colors()) {
    std::vector<int> colors(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) colors[k] = (*f.colors())[origin[k]];
    g = g.with_colors(std::move(colors));
  }
  return g;
}

LineFamily projective_map(const LineFamily& f, const Matrix3& M) {
  std::vector<int> origin;
  return projective_map(f, M, origin);
}

}  // namespace esl
