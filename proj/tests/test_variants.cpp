#include <doctest.h>

#include <algorithm>
#include <random>

#include "esl/arrangement.hpp"
#include "esl/constructions.hpp"
#include "esl/cupcap.hpp"
#include "esl/variants.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace esl;
using namespace esl::testing;

namespace {

std::vector<PointR> random_points(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-40, 40);
  std::vector<PointR> s;
  while (static_cast<int>(s.size()) < n) {
    PointR p{Rational(d(rng)), Rational(d(rng))};
    bool ok = true;
    for (const auto& q : s) ok &= q.x != p.x;
    for (std::size_t i = 0; i < s.size() && ok; ++i)
      for (std::size_t j = i + 1; j < s.size() && ok; ++j) ok &= orientation(s[i], s[j], p) != 0;
    if (ok) s.push_back(p);
  }
  return s;
}

// Tangents to y = x^2 at 1..k (a cup); `sign` -1 turns them into a cap.
LineFamily parabola_lines(int k, int sign) {
  std::vector<Line> v;
  for (int a = 1; a <= k; ++a) v.push_back({Rational(sign * 2 * a), Rational(-sign * a * a)});
  return family(v);
}

std::vector<PointR> parabola_points(int k, int sign, int shift) {
  std::vector<PointR> v;
  for (int a = 0; a < k; ++a) v.push_back({Rational(a + shift), Rational(sign * (a + shift) * (a + shift))});
  return v;
}

}  // namespace

static int index_of(const LineFamily& f, const Line& l) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == l) return static_cast<int>(i);
  return -1;
}

TEST_CASE("recount oracle on a triangle") {
  // Triangle y > 0, y < x + 4, y < -x + 4; y = 10x - 5 and y = x/10 + 1
  // cross it, y = x/2 + 10 passes above.
  auto f = family({L("-1", "4"), L("0", "0"), L("1", "4"), L("10", "-5"), L("1/10", "1"), L("1/2", "10")});
  Arrangement arr(f);
  REQUIRE(index_of(f, L("-1", "4")) == 0);
  REQUIRE(index_of(f, L("0", "0")) == 1);
  REQUIRE(index_of(f, L("1", "4")) == 4);
  std::vector<int> sub{0, 1, 4};
  SignVector s{-1, 1, -1};
  auto face = arr.face(sub, s);
  REQUIRE(face);
  CHECK(face->bounded());
  CHECK(recount_crossings(f, sub, *face) == 2);
  CHECK(arr.crossing_lines(sub, s) == std::vector<int>{2, 5});
}

TEST_CASE("exact_crossing_cell hits every feasible count") {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 80; ++t) {
    int N = 3 + t % 10;
    auto f = random_lines(N, rng);
    Arrangement arr(f);
    auto seed = max_crossing_seed(arr);
    for (int n = 0; n <= static_cast<int>(seed.crossing.size()); ++n) {
      auto r = exact_crossing_cell(arr, seed, n);
      CHECK(static_cast<int>(r.crossing.size()) == n);
      CHECK(recount_crossings(f, r.subset, r.cell) == n);
      CHECK(r.steps == static_cast<int>(seed.crossing.size()) - n);
      CHECK(r.cell.size() == static_cast<int>(r.subset.size()));
    }
    CHECK_THROWS_AS(exact_crossing_cell(arr, seed, static_cast<int>(seed.crossing.size()) + 1), Infeasible);
  }
}

TEST_CASE("seed is the best pair or triple face") {
  std::mt19937_64 rng(82);
  for (int t = 0; t < 10; ++t) {
    auto f = random_lines(7, rng);
    Arrangement arr(f);
    auto seed = max_crossing_seed(arr);
    std::size_t best = 0;
    for (int k = 2; k <= 3; ++k)
      for_each_subset(7, k, [&](const std::vector<int>& sub) {
        for (const auto& face : Arrangement(f).faces(sub))
          best = std::max<std::size_t>(best, recount_crossings(f, sub, face));
      });
    CHECK(seed.crossing.size() == best);
  }
}

TEST_CASE("triangle with m transversals: one split step") {
  auto f = family({L("-1", "4"), L("0", "0"), L("1", "4"), L("10", "-5"), L("1/10", "1"), L("1/2", "1")});
  Arrangement arr(f);
  std::vector<int> tri{0, 1, 4};
  CrossingSeed seed{tri, {-1, 1, -1}, arr.crossing_lines(tri, SignVector{-1, 1, -1})};
  REQUIRE(seed.crossing.size() == 3);
  auto r = exact_crossing_cell(arr, seed, 2);
  CHECK(r.steps == 1);
  CHECK(recount_crossings(f, r.subset, r.cell) == 2);
}

TEST_CASE("n = 0 gives a face of the whole arrangement") {
  std::mt19937_64 rng(83);
  auto f = random_lines(6, rng);
  auto r = exact_crossing_cell(f, 0);
  CHECK(r.crossing.empty());
  auto all = faces(f);
  bool found = std::any_of(all.begin(), all.end(), [&](const Face& g) {
    return g.bounding_lines == r.cell.bounding_lines && g.size() == r.cell.size();
  });
  CHECK(found);
}

TEST_CASE("crossing order is a strict partial order") {
  std::mt19937_64 rng(84);
  for (int t = 0; t < 60; ++t) {
    auto f = random_lines(9, rng);
    Arrangement arr(f);
    auto seed = max_crossing_seed(arr);
    if (seed.crossing.empty()) continue;
    auto c = crossing_anchor(arr, seed.subset, seed.signs, seed.crossing);
    for (std::size_t i = 0; i < seed.subset.size(); ++i) {
      bool on = side_of(f[static_cast<std::size_t>(seed.subset[i])], c) == 0;
      if (on) break;
    }
    for (int j : seed.crossing) CHECK(side_of(f[static_cast<std::size_t>(j)], c) != 0);
    std::vector<std::vector<bool>> prec;
    CHECK_NOTHROW(prec = crossing_order(arr, seed.subset, seed.signs, seed.crossing, c));
    for (std::size_t i = 0; i < prec.size(); ++i) CHECK_FALSE(prec[i][i]);
  }
}

TEST_CASE("mixed polygon on hand-built cups and caps") {
  for (int n = 2; n <= 3; ++n) {
    int N = static_cast<int>(f_l_value(2 * n - 1, 2 * n - 1));
    for (int ls : {1, -1})
      for (int ps : {1, -1}) {
        auto f = parabola_lines(N, ls);
        auto s = parabola_points(N, ps, 3);
        auto k = mixed_polygon(f, s, n);
        CHECK(check_mixed_polygon(f, s, n, k) == "");
        CHECK(k.vertices.size() == static_cast<std::size_t>(2 * n));
        CHECK(std::count_if(k.point_vertices.begin(), k.point_vertices.end(), [](int i) { return i >= 0; }) == n);
        CHECK(std::count_if(k.edge_lines.begin(), k.edge_lines.end(), [](int i) { return i >= 0; }) == n);
      }
  }
}

TEST_CASE("mixed polygon needs enough input") {
  auto f = parabola_lines(2, 1);
  CHECK_THROWS_AS(mixed_polygon(f, parabola_points(2, 1, 0), 2), std::invalid_argument);
  auto f3 = parabola_lines(3, 1);
  CHECK_THROWS_AS(mixed_polygon(f3, {P("0", "0"), P("0", "1"), P("1", "5")}, 2), std::invalid_argument);
}

TEST_CASE("check_mixed_polygon rejects broken polygons") {
  auto f = parabola_lines(3, 1);
  auto s = parabola_points(3, 1, 2);
  auto k = mixed_polygon(f, s, 2);
  auto bad = k;
  std::swap(bad.vertices[0], bad.vertices[1]);
  CHECK(check_mixed_polygon(f, s, 2, bad) != "");
  bad = k;
  bad.translation.x += 1;
  CHECK(check_mixed_polygon(f, s, 2, bad) != "");
}

TEST_CASE("mixed polygon replay on random inputs") {
  std::mt19937_64 rng(85);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 2;
    int N = static_cast<int>(f_l_value(2 * n - 1, 2 * n - 1));
    auto f = random_lines(N + t % 3, rng);
    auto s = random_points(N, rng);
    auto k = mixed_polygon(f, s, n);
    CHECK(check_mixed_polygon(f, s, n, k) == "");
  }
}

TEST_CASE("mixed polygon on small integer inputs") {
  // Tiny coordinates make unused points land on polygon vertices often.
  std::mt19937_64 rng(86);
  std::uniform_int_distribution<int> d(-3, 3);
  int runs = 0;
  while (runs < 300) {
    std::vector<Line> v;
    for (int i = 0; i < 3; ++i) v.push_back({Rational(d(rng)), Rational(d(rng))});
    auto gp = check_general_position(v);
    if (!std::holds_alternative<LineFamily>(gp)) continue;
    std::vector<PointR> s;
    for (int i = 0; i < 3; ++i) s.push_back({Rational(d(rng)), Rational(d(rng))});
    if (s[0].x == s[1].x || s[0].x == s[2].x || s[1].x == s[2].x || orientation(s[0], s[1], s[2]) == 0) continue;
    const auto& f = std::get<LineFamily>(gp);
    auto k = mixed_polygon(f, s, 2);
    CHECK(check_mixed_polygon(f, s, 2, k) == "");
    ++runs;
  }
}

TEST_CASE("halfplanes: complements of a regular polygon") {
  auto lines = build_regular_ngon_lines(15);
  PointR centre{Rational(0), Rational(0)};
  std::vector<HalfPlane> hs;
  for (const auto& l : lines.lines())
    hs.push_back({l, side_of(l, centre) > 0 ? HalfSide::Below : HalfSide::Above});
  auto sel = halfplane_select(hs, 5);
  CHECK(sel.mode == HalfplaneMode::Complements);
  CHECK(sel.indices.size() == 5);
  CHECK(sel.cell.size() == 5);
  CHECK(sel.cell.bounded());
}

TEST_CASE("halfplanes: all containing their cell") {
  // Sides of a hexagon-like cup, each halfplane taken toward the inside.
  auto lines = build_regular_ngon_lines(7);
  PointR centre{Rational(0), Rational(0)};
  std::vector<HalfPlane> hs;
  for (int i = 0; i < 6; ++i) {
    const auto& l = lines[static_cast<std::size_t>(i)];
    hs.push_back({l, side_of(l, centre) > 0 ? HalfSide::Above : HalfSide::Below});
  }
  auto sel = halfplane_select(hs, 3);
  CHECK(sel.mode == HalfplaneMode::Intersection);
  CHECK(sel.indices == std::vector<int>{0, 1, 2});
}

TEST_CASE("halfplanes: random replay") {
  std::mt19937_64 rng(86);
  int found = 0;
  for (int t = 0; t < 40; ++t) {
    auto f = random_lines(10, rng);
    std::vector<HalfPlane> hs;
    for (const auto& l : f.lines()) hs.push_back({l, rng() % 2 ? HalfSide::Above : HalfSide::Below});
    std::shuffle(hs.begin(), hs.end(), rng);
    HalfplaneSelection sel;
    try {
      sel = halfplane_select(hs, 3);
    } catch (const Infeasible&) {
      CHECK(certify_lower_bound(f, 6).verdict == Verdict::Certified);
      continue;
    }
    ++found;
    REQUIRE(sel.indices.size() == 3);
    std::vector<Line> chosen;
    for (int i : sel.indices) chosen.push_back(hs[static_cast<std::size_t>(i)].line);
    auto sub = family(chosen);
    auto cell = defines_cell(sub);
    REQUIRE(cell);
    // The returned face is the intersection of the selected halfplanes (or
    // of their complements) and is bounded by all three lines.
    CHECK(sel.cell.size() == 3);
    for (std::size_t t2 = 0; t2 < sub.size(); ++t2) {
      int input = -1;
      for (int i : sel.indices)
        if (hs[static_cast<std::size_t>(i)].line == sub[t2]) input = i;
      int want = hs[static_cast<std::size_t>(input)].side == HalfSide::Above ? 1 : -1;
      if (sel.mode == HalfplaneMode::Complements) want = -want;
      CHECK(sel.cell.signs[t2] == want);
    }
    // The big cell lies inside the returned face.
    for (int i : sel.indices) CHECK(std::count(sel.big_cell.begin(), sel.big_cell.end(), i) == 1);
  }
  CHECK(found > 10);
}

TEST_CASE("halfplanes infeasible") {
  std::vector<HalfPlane> hs{{L("0", "0"), HalfSide::Above}, {L("1", "0"), HalfSide::Above},
                            {L("-1", "3"), HalfSide::Above}};
  CHECK_THROWS_AS(halfplane_select(hs, 2), Infeasible);
  // Six lines with no 6-cell.
  auto f = build_thm_lower(5);
  std::vector<HalfPlane> six;
  for (const auto& l : f.lines()) six.push_back({l, HalfSide::Above});
  CHECK_THROWS_AS(halfplane_select(six, 3), Infeasible);
}

TEST_CASE("transversals: single lines and clusters") {
  auto five = parabola_lines(5, 1);
  std::vector<LineFamily> singles;
  for (const auto& l : five.lines()) singles.push_back(family({l}));
  auto r = check_transversals(singles);
  CHECK(r.all_cells);
  CHECK(r.checked == 1);

  std::mt19937_64 rng(87);
  auto shape = random_lines(3, rng);
  bool done = false;
  Rational eps(1);
  for (int step = 0; step < 40 && !done; ++step, eps /= 2) {
    std::vector<LineFamily> groups;
    for (const auto& l : five.lines()) groups.push_back(make_cluster(shape, {l, eps}));
    std::vector<Line> all;
    for (const auto& g : groups)
      for (const auto& l : g.lines()) all.push_back(l);
    if (!std::holds_alternative<LineFamily>(check_general_position(all))) continue;
    auto rep = check_transversals(groups, {3, 0});
    if (rep.all_cells) {
      CHECK(rep.checked == 243);
      MESSAGE("clusters of 3 lines work at epsilon " << to_string(eps));
      done = true;
    }
  }
  CHECK(done);
}

TEST_CASE("transversals: polluted group fails with a real counterexample") {
  auto five = parabola_lines(5, 1);
  std::vector<LineFamily> groups;
  for (const auto& l : five.lines()) groups.push_back(make_cluster(family({l, Line{l.m + Rational(1, 1000), l.c}}), {l, Rational(1, 100000)}));
  auto base = check_transversals(groups);
  // A steep line through the middle of the cup polluting group 2.
  auto polluted = groups;
  std::vector<Line> g2 = polluted[2].lines();
  g2.push_back({Rational(7), Rational(-20)});
  polluted[2] = family(g2);
  auto rep = check_transversals(polluted, {2, 0});
  CHECK_FALSE(rep.all_cells);
  REQUIRE(rep.failing.size() == 5);
  std::vector<Line> tr;
  for (std::size_t k = 0; k < 5; ++k) tr.push_back(polluted[k][static_cast<std::size_t>(rep.failing[k])]);
  CHECK_FALSE(defines_cell(family(tr)).has_value());
  if (base.all_cells) CHECK(rep.failing[2] == 2);
}

TEST_CASE("transversals agree with a direct loop") {
  std::mt19937_64 rng(88);
  for (int t = 0; t < 30; ++t) {
    auto f = random_lines(8, rng);
    std::vector<LineFamily> groups{f.subfamily(std::vector<int>{0, 1}), f.subfamily(std::vector<int>{2, 3, 4}), f.subfamily(std::vector<int>{5}), f.subfamily(std::vector<int>{6, 7})};
    std::vector<int> first_fail;
    for (int a = 0; a < 2 && first_fail.empty(); ++a)
      for (int b = 0; b < 3 && first_fail.empty(); ++b)
        for (int d = 0; d < 2 && first_fail.empty(); ++d) {
          auto sub = family({groups[0][a], groups[1][b], groups[2][0], groups[3][d]});
          if (!defines_cell(sub)) first_fail = {a, b, 0, d};
        }
    for (int jobs : {1, 3}) {
      auto rep = check_transversals(groups, {jobs, 0});
      CHECK(rep.all_cells == first_fail.empty());
      CHECK(rep.failing == first_fail);
    }
  }
  SearchOptions tiny{1, 5};
  auto f = random_lines(9, rng);
  CHECK_THROWS_AS(check_transversals({f.subfamily(std::vector<int>{0, 1, 2}), f.subfamily(std::vector<int>{3, 4, 5}), f.subfamily(std::vector<int>{6, 7, 8})}, tiny),
                  BudgetExceeded);
}
