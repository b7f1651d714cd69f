#include "esl/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace esl {

const char* to_string(FaceKind kind) {
  switch (kind) {
    case FaceKind::Bounded: return "bounded";
    case FaceKind::Cup: return "cup";
    case FaceKind::Cap: return "cap";
    case FaceKind::LeftUnbounded: return "left-unbounded";
    case FaceKind::RightUnbounded: return "right-unbounded";
  }
  return "?";
}

Arrangement::Arrangement(LineFamily f) : family_(std::move(f)), n_(static_cast<int>(family_.size())) {
  const auto n = static_cast<std::size_t>(n_);
  side_.assign(n * n * n, 0);
  auto at = [&](int k, int i, int j) -> std::int8_t& {
    return side_[(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  // For slope-sorted p < q < r with s = side_of(a_q, a_p ∩ a_r), the other two
  // lines see the remaining vertices on side -s.
  for (int p = 0; p < n_; ++p)
    for (int r = p + 2; r < n_; ++r) {
      PointR v = intersect(family_[p], family_[r]);
      for (int q = p + 1; q < r; ++q) {
        auto s = static_cast<std::int8_t>(side_of(family_[q], v));
        if (s == 0) throw GeneralPositionError(Violation{Violation::Kind::Concurrent, {p, q, r}});
        at(q, p, r) = at(q, r, p) = s;
        at(p, q, r) = at(p, r, q) = static_cast<std::int8_t>(-s);
        at(r, p, q) = at(r, q, p) = static_cast<std::int8_t>(-s);
      }
    }
  rank_.assign(n * n, -1);
  std::vector<int> others;
  for (int i = 0; i < n_; ++i) {
    others.clear();
    for (int j = 0; j < n_; ++j)
      if (j != i) others.push_back(j);
    // a_i ∩ a_j lies left of a_i ∩ a_k iff, at the former, a_i is still on its
    // far-left side of a_k: above it when k > i.
    std::sort(others.begin(), others.end(), [&](int j, int k) {
      return side(k, i, j) == (k > i ? 1 : -1);
    });
    for (std::size_t r = 0; r < others.size(); ++r) rank_[static_cast<std::size_t>(i) * n + others[r]] = static_cast<int>(r);
  }
}

std::vector<int> Arrangement::all_indices() const {
  std::vector<int> v(static_cast<std::size_t>(n_));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::optional<std::pair<int, int>> Arrangement::chord(int line, std::span<const int> subset,
                                                      std::span<const std::int8_t> signs) const {
  int lo = -1, hi = -1;
  for (std::size_t t = 0; t < subset.size(); ++t) {
    int j = subset[t];
    if (j == line) continue;
    int left_sign = j > line ? 1 : -1;
    if (signs[t] == left_sign) {
      if (hi < 0 || rank(line, j) < rank(line, hi)) hi = j;
    } else {
      if (lo < 0 || rank(line, j) > rank(line, lo)) lo = j;
    }
  }
  if (lo >= 0 && hi >= 0 && rank(line, lo) > rank(line, hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::vector<SignVector> Arrangement::face_signs(std::span<const int> subset) const {
  const std::size_t m = subset.size();
  std::set<SignVector> seen;
  if (m == 0) return {SignVector{}};
  if (m == 1) return {SignVector{-1}, SignVector{1}};
  SignVector s(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t t = 0; t < m; ++t)
        if (t != a && t != b) s[t] = static_cast<std::int8_t>(side(subset[t], subset[a], subset[b]));
      for (int sa : {-1, 1})
        for (int sb : {-1, 1}) {
          s[a] = static_cast<std::int8_t>(sa);
          s[b] = static_cast<std::int8_t>(sb);
          seen.insert(s);
        }
    }
  return {seen.begin(), seen.end()};
}

std::optional<Face> Arrangement::face(std::span<const int> subset, const SignVector& signs) const {
  if (signs.size() != subset.size()) throw std::invalid_argument("sign vector length mismatch");
  struct Piece {
    int line, lo, hi, dir;
  };
  std::vector<Piece> pieces;
  for (std::size_t t = 0; t < subset.size(); ++t) {
    auto c = chord(subset[t], subset, signs);
    if (c) pieces.push_back({subset[t], c->first, c->second, signs[t]});
  }
  if (pieces.empty()) return std::nullopt;

  Face f;
  f.signs = signs;
  for (const auto& p : pieces) f.bounding_lines.push_back(p.line);
  std::sort(f.bounding_lines.begin(), f.bounding_lines.end());

  auto start_of = [](const Piece& p) { return p.dir > 0 ? p.lo : p.hi; };
  auto end_of = [](const Piece& p) { return p.dir > 0 ? p.hi : p.lo; };
  std::size_t first = 0;
  bool open = false;
  for (std::size_t k = 0; k < pieces.size(); ++k)
    if (start_of(pieces[k]) < 0) {
      first = k;
      open = true;
      break;
    }
  std::vector<std::size_t> chain{first};
  while (chain.size() < pieces.size()) {
    int next_line = end_of(pieces[chain.back()]);
    if (next_line < 0) break;
    auto it = std::find_if(pieces.begin(), pieces.end(), [&](const Piece& p) { return p.line == next_line; });
    if (it == pieces.end()) throw std::logic_error("broken face boundary chain");
    auto idx = static_cast<std::size_t>(it - pieces.begin());
    if (idx == first) break;
    chain.push_back(idx);
  }
  if (chain.size() != pieces.size()) throw std::logic_error("face boundary is not a single chain");

  for (std::size_t k : chain) {
    const Piece& p = pieces[k];
    Edge e;
    e.line = p.line;
    e.direction = p.dir;
    if (start_of(p) >= 0) e.start = intersect(family_[p.line], family_[start_of(p)]);
    if (end_of(p) >= 0) e.end = intersect(family_[p.line], family_[end_of(p)]);
    f.boundary.push_back(std::move(e));
  }
  if (!open) {
    f.kind = FaceKind::Bounded;
    return f;
  }
  const Edge& head = f.boundary.front();
  const Edge& tail = f.boundary.back();
  int head_end = -head.direction;  // x-direction of the unbounded start
  int tail_end = tail.direction;
  if (head_end < 0 && tail_end < 0) {
    f.kind = FaceKind::LeftUnbounded;
  } else if (head_end > 0 && tail_end > 0) {
    f.kind = FaceKind::RightUnbounded;
  } else {
    f.kind = head.direction > 0 ? FaceKind::Cup : FaceKind::Cap;
  }
  if (f.kind == FaceKind::LeftUnbounded || f.kind == FaceKind::RightUnbounded) {
    f.end_lines = std::minmax(head.line, tail.line);
  }
  return f;
}

FaceSet Arrangement::faces(std::span<const int> subset) const {
  FaceSet out;
  for (const auto& s : face_signs(subset)) {
    auto f = face(subset, s);
    if (!f) throw std::logic_error("vertex-incident sign vector is not realized");
    out.push_back(std::move(*f));
  }
  return out;
}

FaceSet Arrangement::faces() const {
  auto all = all_indices();
  return faces(all);
}

namespace {

// Does every line of the subset contribute an edge to this region?
bool all_bounding(const Arrangement& arr, std::span<const int> subset, const SignVector& s) {
  for (int line : subset)
    if (!arr.chord(line, subset, s)) return false;
  return true;
}

}  // namespace

std::vector<SignVector> Arrangement::full_cell_signs(std::span<const int> subset) const {
  std::vector<SignVector> out;
  for (const auto& s : face_signs(subset))
    if (all_bounding(*this, subset, s)) out.push_back(s);
  return out;
}

bool Arrangement::in_convex_position(std::span<const int> subset) const {
  const std::size_t m = subset.size();
  if (m <= 1) return m == 1;
  SignVector s(m);
  // Every face bounded by all lines has a vertex a_i ∩ a_j with consecutive
  // boundary lines; scanning pairs incident to subset[0] suffices since that
  // line bounds the cell and each of its edge endpoints is such a vertex.
  std::size_t a = 0;
  for (std::size_t b = 1; b < m; ++b) {
    for (std::size_t t = 0; t < m; ++t)
      if (t != a && t != b) s[t] = static_cast<std::int8_t>(side(subset[t], subset[a], subset[b]));
    for (int sa : {-1, 1})
      for (int sb : {-1, 1}) {
        s[a] = static_cast<std::int8_t>(sa);
        s[b] = static_cast<std::int8_t>(sb);
        if (all_bounding(*this, subset, s)) return true;
      }
  }
  return false;
}

std::optional<Face> Arrangement::defines_cell(std::span<const int> subset) const {
  auto cells = full_cell_signs(subset);
  if (cells.empty()) return std::nullopt;
  if (subset.size() >= 5 && cells.size() > 1) {
    throw std::logic_error("a family of five or more lines defines two full cells");
  }
  std::optional<Face> best;
  for (const auto& s : cells) {
    auto f = face(subset, s);
    if (!best || (f->bounded() && !best->bounded())) best = std::move(f);
  }
  return best;
}

std::vector<int> Arrangement::crossing_lines(std::span<const int> subset, const SignVector& signs) const {
  std::vector<int> out;
  std::vector<bool> in(static_cast<std::size_t>(n_), false);
  for (int i : subset) in[static_cast<std::size_t>(i)] = true;
  for (int l = 0; l < n_; ++l)
    if (!in[static_cast<std::size_t>(l)] && chord(l, subset, signs)) out.push_back(l);
  return out;
}

SignVector Arrangement::signs_at(std::span<const int> subset, const PointR& p) const {
  SignVector s;
  for (int i : subset) {
    int v = side_of(family_[i], p);
    if (v == 0) throw std::invalid_argument("point lies on a line");
    s.push_back(static_cast<std::int8_t>(v));
  }
  return s;
}

FaceSet faces(const LineFamily& f) { return Arrangement(f).faces(); }

std::optional<std::vector<Edge>> face_region(const LineFamily& f, const SignVector& signs) {
  Arrangement arr(f);
  auto all = arr.all_indices();
  auto face = arr.face(all, signs);
  if (!face) return std::nullopt;
  return face->boundary;
}

std::optional<Face> defines_cell(const LineFamily& g) {
  Arrangement arr(g);
  auto all = arr.all_indices();
  return arr.defines_cell(all);
}

std::vector<int> crossing_lines(const LineFamily& f, std::span<const int> subset, const SignVector& signs) {
  return Arrangement(f).crossing_lines(subset, signs);
}

Census empty_cell_census(const LineFamily& f, bool monochromatic) {
  if (monochromatic && !f.colors()) throw std::invalid_argument("monochromatic census needs colors");
  Census c;
  for (const Face& face : faces(f)) {
    if (monochromatic) {
      const auto& col = *f.colors();
      bool mono = std::all_of(face.bounding_lines.begin(), face.bounding_lines.end(),
                              [&](int i) { return col[i] == col[face.bounding_lines.front()]; });
      if (!mono) continue;
    }
    ++c.all[face.size()];
    if (face.bounded()) ++c.bounded[face.size()];
  }
  return c;
}

std::vector<std::array<int, 3>> nearest_vertex_triangles(const LineFamily& f) {
  const int n = static_cast<int>(f.size());
  Arrangement arr(f);
  std::set<std::array<int, 3>> found;
  for (int l = 0; l < n; ++l) {
    std::optional<Rational> best;
    std::pair<int, int> pair{-1, -1};
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (a == l || b == l) continue;
        PointR v = intersect(f[a], f[b]);
        Rational d = abs(v.y - f[l].eval(v.x));
        if (!best || d < *best) {
          best = d;
          pair = {a, b};
        }
      }
    if (pair.first < 0) continue;
    std::array<int, 3> tri{l, pair.first, pair.second};
    std::sort(tri.begin(), tri.end());
    std::optional<SignVector> inside;
    for (const auto& s : arr.face_signs(tri)) {
      auto face = arr.face(tri, s);
      if (face->bounded()) inside = s;
    }
    if (!inside || !arr.crossing_lines(tri, *inside).empty()) {
      throw std::logic_error("nearest-vertex triangle is not empty");
    }
    found.insert(tri);
  }
  return {found.begin(), found.end()};
}

}  // namespace esl
