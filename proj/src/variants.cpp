#include "esl/variants.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "esl/cupcap.hpp"

namespace esl {

namespace {

const Line& line_of(const Arrangement& arr, int i) { return arr.family()[static_cast<std::size_t>(i)]; }

PointR on_line(const Line& l, const Rational& x) { return {x, Rational(l.m * x + l.c)}; }

// Some point strictly inside chord = line ∩ face.
PointR chord_point(const Arrangement& arr, int line, const std::vector<int>& subset, const SignVector& signs) {
  auto ch = arr.chord(line, subset, signs);
  if (!ch) throw std::logic_error("line misses the face");
  const Line& l = line_of(arr, line);
  auto x_at = [&](int other) -> Rational { return intersect(l, line_of(arr, other)).x; };
  Rational x;
  if (ch->first >= 0 && ch->second >= 0)
    x = (x_at(ch->first) + x_at(ch->second)) / 2;
  else if (ch->first >= 0)
    x = x_at(ch->first) + 1;
  else if (ch->second >= 0)
    x = x_at(ch->second) - 1;
  else
    x = 0;
  return on_line(l, x);
}

bool inside(const Arrangement& arr, const std::vector<int>& subset, const SignVector& signs, const PointR& p) {
  for (std::size_t t = 0; t < subset.size(); ++t)
    if (side_of(line_of(arr, subset[t]), p) != signs[t]) return false;
  return true;
}

}  // namespace

CrossingSeed max_crossing_seed(const Arrangement& arr) {
  const int N = arr.size();
  CrossingSeed best;
  bool have = false;
  auto consider = [&](const std::vector<int>& sub) {
    for (const auto& s : arr.face_signs(sub)) {
      auto cr = arr.crossing_lines(sub, s);
      if (!have || cr.size() > best.crossing.size()) {
        best = {sub, s, cr};
        have = true;
      }
    }
  };
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) consider({i, j});
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int k = j + 1; k < N; ++k) consider({i, j, k});
  if (!have) throw Infeasible("need at least two lines for a seed cell");
  return best;
}

PointR crossing_anchor(const Arrangement& arr, const std::vector<int>& subset, const SignVector& signs,
                       const std::vector<int>& crossing) {
  auto face = arr.face(subset, signs);
  if (!face) throw std::invalid_argument("empty face");
  const Edge* e = nullptr;
  for (const auto& edge : face->boundary)
    if (!e || edge.line < e->line) e = &edge;
  const Line& l = line_of(arr, e->line);
  PointR dir{Rational(e->direction), Rational(e->direction * l.m)};
  PointR base;
  PointR u;
  if (e->start && e->end) {
    base = *e->start;
    u = {e->end->x - e->start->x, e->end->y - e->start->y};
  } else if (e->start) {
    base = *e->start;
    u = dir;
  } else if (e->end) {
    base = *e->end;
    u = {-dir.x, -dir.y};
  } else {
    base = on_line(l, Rational(0));
    u = dir;
  }
  // Start at the middle (or one unit out) and halve toward the base point.
  Rational t = e->start && e->end ? Rational(1, 2) : Rational(1);
  for (;;) {
    PointR c{base.x + t * u.x, base.y + t * u.y};
    bool clear = true;
    for (int j : crossing)
      if (side_of(line_of(arr, j), c) == 0) clear = false;
    if (clear) return c;
    t /= 2;
  }
}

std::vector<std::vector<bool>> crossing_order(const Arrangement& arr, const std::vector<int>& subset,
                                              const SignVector& signs, const std::vector<int>& crossing,
                                              const PointR& c) {
  const std::size_t m = crossing.size();
  std::vector<PointR> mid;
  for (int j : crossing) mid.push_back(chord_point(arr, j, subset, signs));
  std::vector<std::vector<bool>> prec(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Line& li = line_of(arr, crossing[i]);
      PointR x = intersect(li, line_of(arr, crossing[j]));
      if (inside(arr, subset, signs, x)) continue;  // chords meet
      prec[i][j] = side_of(li, mid[j]) != side_of(li, c);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (prec[i][j] && prec[j][i]) throw std::logic_error("crossing order is not antisymmetric");
      for (std::size_t k = 0; k < m; ++k)
        if (prec[i][j] && prec[j][k] && !prec[i][k]) throw std::logic_error("crossing order is not transitive");
    }
  return prec;
}

ExactCrossingResult exact_crossing_cell(const Arrangement& arr, const CrossingSeed& seed, int n) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (static_cast<int>(seed.crossing.size()) < n)
    throw Infeasible("no seed cell is crossed by " + std::to_string(n) + " lines");
  ExactCrossingResult res;
  res.seed = seed;
  std::vector<int> sub = seed.subset;
  SignVector signs = seed.signs;
  std::vector<int> cross = seed.crossing;
  while (static_cast<int>(cross.size()) > n) {
    PointR c = crossing_anchor(arr, sub, signs, cross);
    auto prec = crossing_order(arr, sub, signs, cross, c);
    std::size_t pick = 0;
    for (std::size_t i = 0; i < cross.size(); ++i) {
      bool maximal = std::none_of(prec[i].begin(), prec[i].end(), [](bool b) { return b; });
      if (maximal) {
        pick = i;
        break;
      }
    }
    int cut = cross[pick];
    // The half of the face on the side of c.
    std::vector<int> grown = sub;
    grown.insert(std::lower_bound(grown.begin(), grown.end(), cut), cut);
    SignVector gs;
    for (int i : grown) {
      if (i == cut) {
        gs.push_back(static_cast<std::int8_t>(side_of(line_of(arr, cut), c)));
      } else {
        auto at = std::lower_bound(sub.begin(), sub.end(), i) - sub.begin();
        gs.push_back(signs[static_cast<std::size_t>(at)]);
      }
    }
    auto half = arr.face(grown, gs);
    if (!half) throw std::logic_error("split produced an empty face");
    SignVector hs;
    for (int i : half->bounding_lines) {
      auto at = std::lower_bound(grown.begin(), grown.end(), i) - grown.begin();
      hs.push_back(gs[static_cast<std::size_t>(at)]);
    }
    auto next = arr.crossing_lines(half->bounding_lines, hs);
    if (next.size() + 1 != cross.size()) throw std::logic_error("split did not remove exactly one crossing line");
    sub = half->bounding_lines;
    signs = hs;
    cross = next;
    ++res.steps;
  }
  auto cell = arr.face(sub, signs);
  res.subset = sub;
  res.signs = signs;
  res.cell = *cell;
  res.crossing = cross;
  return res;
}

ExactCrossingResult exact_crossing_cell(const LineFamily& f, int n) {
  Arrangement arr(f);
  return exact_crossing_cell(arr, max_crossing_seed(arr), n);
}

// ---------------------------------------------------------------------------
// Mixed polygons.

namespace {

using Accept = std::function<bool(const MixedPolygon&)>;

struct Frame {
  std::vector<Line> lines;  // slope order
  std::vector<int> line_id;
  std::vector<PointR> pts;  // x order
  std::vector<int> pt_id;
};

Frame reflected(const Frame& in, Axis axis) {
  Frame out;
  for (std::size_t i = in.lines.size(); i-- > 0;) {
    out.lines.push_back(reflect(in.lines[i], axis));
    out.line_id.push_back(in.line_id[i]);
  }
  auto take = [&](std::size_t i) {
    out.pts.push_back(reflect(in.pts[i], axis));
    out.pt_id.push_back(in.pt_id[i]);
  };
  if (axis == Axis::Vertical)
    for (std::size_t i = in.pts.size(); i-- > 0;) take(i);
  else
    for (std::size_t i = 0; i < in.pts.size(); ++i) take(i);
  return out;
}

MixedPolygon reflected(const MixedPolygon& k, Axis axis) {
  MixedPolygon out;
  out.translation = reflect(k.translation, axis);
  // Reflection flips orientation: walk the vertices backwards.
  const std::size_t m = k.vertices.size();
  for (std::size_t t = 0; t < m; ++t) {
    std::size_t v = (m - t) % m;
    out.vertices.push_back(reflect(k.vertices[v], axis));
    out.point_vertices.push_back(k.point_vertices[v]);
    // Edge from new vertex t to t+1 is old edge (v-1, v).
    out.edge_lines.push_back(k.edge_lines[(v + m - 1) % m]);
  }
  return out;
}

Rational slope(const PointR& a, const PointR& b) { return (b.y - a.y) / (b.x - a.x); }

int turn(const PointR& a, const PointR& b, const PointR& c) {
  return sgn(Rational((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)));
}

bool strictly_convex(const std::vector<PointR>& v) {
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i)
    if (turn(v[i], v[(i + 1) % m], v[(i + 2) % m]) <= 0) return false;
  // Left turns everywhere plus one full revolution of edge directions:
  // count passages from the lower half [pi, 2pi) into the upper half [0, pi).
  auto upper = [](const PointR& a, const PointR& b) { return b.y > a.y || (b.y == a.y && b.x > a.x); };
  int wraps = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (!upper(v[i], v[(i + 1) % m]) && upper(v[(i + 1) % m], v[(i + 2) % m])) ++wraps;
  return wraps == 1;
}

MixedPolygon cup_cup_at(const Frame& fr, int n, const PointR& target);

// Lines a_1..a_n form a cup, points p_n..p_{2n-1} a cup; the vertex p_n is
// placed on a_n right of a_{n-1} ∩ a_n.
std::optional<MixedPolygon> cup_cup(const Frame& fr, int n, const Accept& accept) {
  const auto& a = fr.lines;
  const auto& p = fr.pts;
  const auto N = static_cast<std::size_t>(n);
  // Line through p_n with the other points above it.
  Rational sa = (slope(p[N - 2], p[N - 1]) + slope(p[N - 1], p[N])) / 2;
  if (a[N - 1].m > sa) return std::nullopt;
  // p on a_n strictly between its neighbours in the upper envelope; the
  // midpoint first, then other fractions if an unused point gets in the way.
  Rational xl = intersect(a[N - 2], a[N - 1]).x, xr = intersect(a[N - 1], a[N]).x;
  for (int den = 2; den < 64; ++den)
    for (int num = 1; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      PointR target = on_line(a[N - 1], xl + (xr - xl) * Rational(num, den));
      auto k = cup_cup_at(fr, n, target);
      if (accept(k)) return k;
    }
  return std::nullopt;
}

MixedPolygon cup_cup_at(const Frame& fr, int n, const PointR& target) {
  const auto& a = fr.lines;
  const auto& p = fr.pts;
  const auto N = static_cast<std::size_t>(n);
  MixedPolygon k;
  k.translation = {target.x - p[N - 1].x, target.y - p[N - 1].y};
  std::vector<PointR> q;
  PointR q2 = intersect(a[0], a[1]);
  q.push_back(on_line(a[0], q2.x - 1));
  for (std::size_t i = 1; i < N; ++i) q.push_back(intersect(a[i - 1], a[i]));
  for (std::size_t i = 0; i < N; ++i) {
    k.vertices.push_back(q[i]);
    k.point_vertices.push_back(-1);
    k.edge_lines.push_back(fr.line_id[i]);
  }
  for (std::size_t i = N - 1; i < 2 * N - 1; ++i) {
    k.vertices.push_back({p[i].x + k.translation.x, p[i].y + k.translation.y});
    k.point_vertices.push_back(fr.pt_id[i]);
    k.edge_lines.push_back(-1);
  }
  return k;
}

// Lines L_1..L_n form a cup and points P_1..P_n a cap, with the slope of
// L_n above the first cap edge. P_n goes on L_n; a free vertex on L_1
// closes the polygon.
std::optional<MixedPolygon> cup_cap(const std::vector<Line>& L, const std::vector<int>& lid,
                                    const std::vector<PointR>& P, const std::vector<int>& pid,
                                    const Accept& accept) {
  const std::size_t n = L.size();
  if (!(L[n - 1].m > slope(P[0], P[1]))) return std::nullopt;
  std::vector<PointR> q;
  for (std::size_t i = 1; i < n; ++i) q.push_back(intersect(L[i - 1], L[i]));
  const PointR& q2 = q.front();
  const PointR& qn = q.back();
  for (Rational d(1); d < Rational(1L << 40); d *= 2) {
    PointR star = on_line(L[n - 1], qn.x + d);
    PointR t{star.x - P[n - 1].x, star.y - P[n - 1].y};
    std::vector<PointR> moved;
    for (const auto& pt : P) moved.push_back({pt.x + t.x, pt.y + t.y});
    if (side_of(L[0], moved[0]) <= 0) continue;
    if (turn(moved[0], moved[1], q2) >= 0) continue;  // q2 must lie below the first cap edge line
    for (Rational e(1); e > Rational(1, 1 << 20); e /= 2) {
      MixedPolygon k;
      k.translation = t;
      k.vertices.push_back(on_line(L[0], q2.x - e));
      k.point_vertices.push_back(-1);
      k.edge_lines.push_back(lid[0]);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        k.vertices.push_back(q[i]);
        k.point_vertices.push_back(-1);
        k.edge_lines.push_back(lid[i + 1]);
      }
      for (std::size_t i = n; i-- > 0;) {
        k.vertices.push_back(moved[i]);
        k.point_vertices.push_back(pid[i]);
        k.edge_lines.push_back(-1);
      }
      if (strictly_convex(k.vertices) && accept(k)) return k;
    }
  }
  return std::nullopt;
}

std::optional<MixedPolygon> easy_branch(const Frame& fr, int n, const Accept& accept) {
  const auto N = static_cast<std::size_t>(n);
  const std::size_t M = fr.lines.size();
  std::vector<Line> L(fr.lines.end() - static_cast<std::ptrdiff_t>(N), fr.lines.end());
  std::vector<int> lid(fr.line_id.end() - static_cast<std::ptrdiff_t>(N), fr.line_id.end());
  std::vector<PointR> P(fr.pts.end() - static_cast<std::ptrdiff_t>(N), fr.pts.end());
  std::vector<int> pid(fr.pt_id.end() - static_cast<std::ptrdiff_t>(N), fr.pt_id.end());
  (void)M;
  return cup_cap(L, lid, P, pid, accept);
}

}  // namespace

std::string check_mixed_polygon(const LineFamily& f, const std::vector<PointR>& s, int n, const MixedPolygon& k) {
  const std::size_t m = k.vertices.size();
  if (m != static_cast<std::size_t>(2 * n)) return "polygon does not have 2n vertices";
  if (k.edge_lines.size() != m || k.point_vertices.size() != m) return "bookkeeping size mismatch";
  if (!strictly_convex(k.vertices)) return "polygon is not strictly convex";
  std::vector<PointR> moved;
  for (const auto& p : s) moved.push_back({p.x + k.translation.x, p.y + k.translation.y});
  int pv = 0, le = 0;
  for (std::size_t i = 0; i < m; ++i) {
    int hits = 0;
    for (std::size_t j = 0; j < moved.size(); ++j)
      if (moved[j] == k.vertices[i]) {
        ++hits;
        if (k.point_vertices[i] != static_cast<int>(j)) return "vertex matches an unlisted point";
      }
    if (k.point_vertices[i] >= 0 && hits == 0) return "listed point vertex is not a translated point";
    pv += hits;
    const PointR& a = k.vertices[i];
    const PointR& b = k.vertices[(i + 1) % m];
    int on = 0;
    for (std::size_t l = 0; l < f.size(); ++l)
      if (side_of(f[l], a) == 0 && side_of(f[l], b) == 0) {
        ++on;
        if (k.edge_lines[i] != static_cast<int>(l)) return "edge lies on an unlisted line";
      }
    if (k.edge_lines[i] >= 0 && on == 0) return "listed line edge is not on its line";
    le += on;
  }
  if (pv != n) return "expected n point vertices, found " + std::to_string(pv);
  if (le != n) return "expected n line edges, found " + std::to_string(le);
  return {};
}

MixedPolygon mixed_polygon(const LineFamily& f, const std::vector<PointR>& s, int n) {
  if (n < 2) throw std::invalid_argument("mixed_polygon needs n >= 2");
  const auto need = f_l_value(2 * n - 1, 2 * n - 1);
  if (f.size() < need || s.size() < need)
    throw std::invalid_argument("mixed_polygon needs at least " + std::to_string(need) + " lines and points");
  std::vector<int> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return s[static_cast<std::size_t>(a)].x < s[static_cast<std::size_t>(b)].x;
  });
  std::vector<PointR> sorted;
  for (int i : order) sorted.push_back(s[static_cast<std::size_t>(i)]);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].x == sorted[i + 1].x) throw std::invalid_argument("points need distinct x-coordinates");
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      for (std::size_t l = j + 1; l < sorted.size(); ++l)
        if (orientation(sorted[i], sorted[j], sorted[l]) == 0)
          throw std::invalid_argument("three points on a line");

  const auto want = static_cast<std::size_t>(2 * n - 1);
  auto lc = longest_cup_cap(f);
  auto pc = longest_point_cup_cap(sorted);
  bool line_cup = lc.cup.indices.size() >= want;
  bool pt_cup = pc.cup.indices.size() >= want;
  if (!line_cup && lc.cap.indices.size() < want) throw std::logic_error("no (2n-1)-cup or cap of lines");
  if (!pt_cup && pc.cap.indices.size() < want) throw std::logic_error("no (2n-1)-cup or cap of points");
  // Same kinds give the main construction; prefer it when available.
  bool pt_kind_cup = line_cup ? pt_cup : !(pc.cap.indices.size() >= want);

  Frame fr;
  const auto& lchain = line_cup ? lc.cup.indices : lc.cap.indices;
  const auto& pchain = pt_kind_cup ? pc.cup.indices : pc.cap.indices;
  for (std::size_t i = 0; i < want; ++i) {
    fr.lines.push_back(f[static_cast<std::size_t>(lchain[i])]);
    fr.line_id.push_back(lchain[i]);
    fr.pts.push_back(sorted[static_cast<std::size_t>(pchain[i])]);
    fr.pt_id.push_back(order[static_cast<std::size_t>(pchain[i])]);
  }
  // Turn line caps into cups; points follow along.
  bool flip_y = !line_cup;
  if (flip_y) fr = reflected(fr, Axis::Horizontal);
  bool same = line_cup == pt_kind_cup;

  // Candidates are replayed in input coordinates, so a placement that
  // happens to hit an unused point or line is skipped.
  auto accept = [&](bool mirrored) -> Accept {
    return [&, mirrored](const MixedPolygon& cand) {
      MixedPolygon u = mirrored ? reflected(cand, Axis::Vertical) : cand;
      if (flip_y) u = reflected(u, Axis::Horizontal);
      return check_mixed_polygon(f, s, n, u).empty();
    };
  };
  std::optional<MixedPolygon> k;
  if (same) {
    k = cup_cup(fr, n, accept(false));
    if (!k) {
      auto mk = cup_cup(reflected(fr, Axis::Vertical), n, accept(true));
      if (mk) k = reflected(*mk, Axis::Vertical);
    }
  } else {
    k = easy_branch(fr, n, accept(false));
    if (!k) {
      auto mk = easy_branch(reflected(fr, Axis::Vertical), n, accept(true));
      if (mk) k = reflected(*mk, Axis::Vertical);
    }
  }
  if (!k) throw std::logic_error("mixed_polygon: construction failed");
  if (flip_y) k = reflected(*k, Axis::Horizontal);
  auto err = check_mixed_polygon(f, s, n, *k);
  if (!err.empty()) throw std::logic_error("mixed_polygon: " + err);
  return *k;
}

// ---------------------------------------------------------------------------

const char* to_string(HalfplaneMode m) { return m == HalfplaneMode::Intersection ? "intersection" : "complements"; }

HalfplaneSelection halfplane_select(const std::vector<HalfPlane>& hs, int n, const SearchOptions& opts) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (hs.size() < static_cast<std::size_t>(2 * n)) throw Infeasible("fewer than 2n halfplanes");
  std::vector<Line> lines;
  for (const auto& h : hs) lines.push_back(h.line);
  auto gp = check_general_position(lines);
  if (std::holds_alternative<Violation>(gp)) throw std::invalid_argument("bounding lines not in general position");
  const auto& f = std::get<LineFamily>(gp);
  // Input index of each line in slope order.
  std::vector<int> origin(hs.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (hs[j].line == f[i]) origin[i] = static_cast<int>(j);

  std::optional<std::vector<int>> big;
  try {
    big = find_convex_subset(f, 2 * n, opts);
  } catch (const BudgetExceeded&) {
    throw Infeasible("search budget exhausted before finding 2n lines in convex position");
  }
  if (!big) throw Infeasible("no 2n bounding lines are in convex position");
  Arrangement arr(f);
  auto cell = arr.defines_cell(*big);
  std::vector<int> with, against;
  for (std::size_t t = 0; t < big->size(); ++t) {
    int i = (*big)[t];
    int want = hs[static_cast<std::size_t>(origin[static_cast<std::size_t>(i)])].side == HalfSide::Above ? 1 : -1;
    (want == cell->signs[t] ? with : against).push_back(i);
  }
  HalfplaneSelection out;
  out.mode = static_cast<int>(with.size()) >= n ? HalfplaneMode::Intersection : HalfplaneMode::Complements;
  auto chosen = out.mode == HalfplaneMode::Intersection ? with : against;
  chosen.resize(static_cast<std::size_t>(n));
  SignVector signs;
  for (int i : chosen) {
    auto at = std::find(big->begin(), big->end(), i) - big->begin();
    signs.push_back(cell->signs[static_cast<std::size_t>(at)]);
  }
  auto face = arr.face(chosen, signs);
  if (!face || face->size() != n) throw std::logic_error("selected halfplanes do not give an n-cell");
  out.cell = *face;
  for (int i : chosen) out.indices.push_back(origin[static_cast<std::size_t>(i)]);
  for (int i : *big) out.big_cell.push_back(origin[static_cast<std::size_t>(i)]);
  std::sort(out.indices.begin(), out.indices.end());
  std::sort(out.big_cell.begin(), out.big_cell.end());
  return out;
}

// ---------------------------------------------------------------------------

TransversalReport check_transversals(const std::vector<LineFamily>& groups, const SearchOptions& opts) {
  const std::size_t g = groups.size();
  if (g == 0) return {};
  std::vector<Line> all;
  for (const auto& grp : groups) {
    if (grp.size() == 0) throw std::invalid_argument("empty group");
    for (const auto& l : grp.lines()) all.push_back(l);
  }
  auto gp = check_general_position(all);
  if (std::holds_alternative<Violation>(gp)) throw std::invalid_argument("lines of the groups are not in general position");
  const auto& u = std::get<LineFamily>(gp);
  Arrangement arr(u);
  std::vector<std::vector<int>> idx(g);
  for (std::size_t k = 0; k < g; ++k)
    for (const auto& l : groups[k].lines())
      idx[k].push_back(static_cast<int>(std::lower_bound(u.lines().begin(), u.lines().end(), l,
                                                         [](const Line& a, const Line& b) { return a.m < b.m; }) -
                                        u.lines().begin()));
  std::uint64_t total = 1;
  const std::uint64_t budget = opts.budget ? opts.budget : default_budget();
  for (const auto& v : idx) {
    if (total > budget / v.size() + 1) throw BudgetExceeded({});
    total *= v.size();
  }
  if (total > budget) throw BudgetExceeded({});

  std::atomic<std::uint64_t> checked{0};
  std::atomic<int> best_first{1 << 30};
  std::mutex mu;
  std::vector<int> failing;
  std::atomic<int> next{0};
  const int first_size = static_cast<int>(idx[0].size());
  auto shard = [&](int first) {
    std::vector<int> pick(g, 0);
    pick[0] = first;
    std::vector<int> sub(g);
    std::uint64_t local = 0;
    for (;;) {
      for (std::size_t k = 0; k < g; ++k) sub[k] = idx[k][static_cast<std::size_t>(pick[k])];
      std::sort(sub.begin(), sub.end());
      ++local;
      if (!arr.in_convex_position(sub)) {
        std::lock_guard lock(mu);
        if (failing.empty() || pick < failing) failing = pick;
        int cur = best_first.load();
        while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
        }
        break;
      }
      std::size_t k = g;
      while (k-- > 1) {
        if (++pick[k] < static_cast<int>(idx[k].size())) break;
        pick[k] = 0;
      }
      if (k == 0) break;
      if ((local & 1023) == 0 && best_first.load() < first) break;
    }
    checked += local;
  };
  auto worker = [&] {
    for (;;) {
      int first = next.fetch_add(1);
      if (first >= first_size) return;
      if (best_first.load() < first) continue;
      shard(first);
    }
  };
  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  TransversalReport r;
  r.checked = checked.load();
  r.all_cells = failing.empty();
  r.failing = failing;
  return r;
}

}  // namespace esl
