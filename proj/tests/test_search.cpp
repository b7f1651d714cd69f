#include <doctest.h>

#include <algorithm>
#include <random>

#include "esl/arrangement.hpp"
#include "esl/constructions.hpp"
#include "esl/cupcap.hpp"
#include "esl/search.hpp"
#include "support.hpp"

using namespace esl;
using namespace esl::testing;

namespace {

// Brute force: a subset is in convex position iff its own arrangement has a
// face touching every line.
bool full_face(const LineFamily& f, const std::vector<int>& s) {
  auto sub = f.subfamily(s);
  for (const auto& face : faces(sub))
    if (face.size() == static_cast<int>(s.size())) return true;
  return false;
}

int brute_max_convex(const LineFamily& f) {
  int best = 0;
  const int N = static_cast<int>(f.size());
  for (int k = 1; k <= N; ++k) {
    bool any = false;
    for_each_subset(N, k, [&](const std::vector<int>& s) {
      if (!any && full_face(f, s)) any = true;
    });
    if (any) best = k;
  }
  return best;
}

std::vector<std::vector<int>> convex_subsets(const LineFamily& f, int k) {
  std::vector<std::vector<int>> out;
  Arrangement arr(f);
  for_each_subset(static_cast<int>(f.size()), k, [&](const std::vector<int>& s) {
    if (arr.in_convex_position(s)) out.push_back(s);
  });
  return out;
}

}  // namespace

TEST_CASE("max_convex_position matches brute force on small families") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    int n = 3 + t % 5;
    auto f = random_lines(n, rng);
    auto r = max_convex_position(f);
    CHECK(r.max_k == brute_max_convex(f));
    CHECK(r.exhaustive);
    CHECK(static_cast<int>(r.witness.size()) == r.max_k);
    CHECK(defines_cell(f.subfamily(r.witness)).has_value());
  }
}

TEST_CASE("any 3 lines: max_k >= 3") {
  auto f = family({L("0", "0"), L("1", "1"), L("-1", "3")});
  CHECK(max_convex_position(f).max_k == 3);
}

TEST_CASE("thm_lower families: exhaustive max_k") {
  auto f5 = build_thm_lower(5);
  auto r5 = max_convex_position(f5);
  CHECK(r5.max_k == 4);
  CHECK(r5.exhaustive);
  auto f6 = build_thm_lower(6);
  auto r6 = max_convex_position(f6);
  CHECK(r6.max_k == 5);
  CHECK(r6.exhaustive);
  CHECK(defines_cell(f6.subfamily(r6.witness)).has_value());
}

TEST_CASE("cap limits the search") {
  std::mt19937_64 rng(5);
  auto f = random_lines(9, rng);
  auto r = max_convex_position(f, 3);
  CHECK(r.max_k == 3);
  CHECK(defines_cell(f.subfamily(r.witness)).has_value());
}

TEST_CASE("budget overrun carries the best witness") {
  std::mt19937_64 rng(6);
  auto f = build_thm_lower(6);
  SearchOptions o;
  o.budget = 10;
  bool thrown = false;
  try {
    max_convex_position(f, std::nullopt, o);
  } catch (const BudgetExceeded& e) {
    thrown = true;
    CHECK(e.best().max_k >= 4);
    CHECK(defines_cell(f.subfamily(e.best().witness)).has_value());
    CHECK_FALSE(e.best().exhaustive);
  }
  CHECK(thrown);
  auto c = certify_lower_bound(f, 6, o);
  CHECK(c.verdict == Verdict::BudgetExceeded);
}

TEST_CASE("certify_lower_bound on thm_lower and on 4 lines") {
  auto c5 = certify_lower_bound(build_thm_lower(5), 5);
  CHECK(c5.verdict == Verdict::Certified);
  CHECK(c5.subsets_checked == 6);
  CHECK(c5.subsets_total == 6);
  auto c6 = certify_lower_bound(build_thm_lower(6), 6, {4, 0});
  CHECK(c6.verdict == Verdict::Certified);
  CHECK(c6.subsets_checked == 28);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto f = random_lines(4, rng);
    auto c = certify_lower_bound(f, 4);
    CHECK(c.verdict == Verdict::Refuted);
    CHECK(c.witness == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("certify and max_convex agree; witness is lexicographically first") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    int N = 5 + t % 6;
    auto f = random_lines(N, rng);
    int mk = max_convex_position(f).max_k;
    for (int n = 4; n <= N; ++n) {
      auto c = certify_lower_bound(f, n, {1 + t % 3, 0});
      CHECK((c.verdict == Verdict::Refuted) == (n <= mk));
      if (c.verdict == Verdict::Refuted) {
        auto all = convex_subsets(f, n);
        REQUIRE_FALSE(all.empty());
        CHECK(c.witness == all.front());
      }
    }
  }
}

TEST_CASE("parallel and serial searches give identical certificates") {
  std::mt19937_64 rng(31);
  auto f = random_lines(11, rng);
  for (int n = 5; n <= 7; ++n) {
    auto a = certify_lower_bound(f, n, {1, 0});
    auto b = certify_lower_bound(f, n, {6, 0});
    CHECK(a.verdict == b.verdict);
    CHECK(a.witness == b.witness);
    CHECK(a.family_hash == b.family_hash);
  }
}

TEST_CASE("monotonicity: adding a line never lowers max_k") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    auto f = random_lines(8, rng);
    int prev = 0;
    for (int n = 2; n <= 8; ++n) {
      auto sub = f.subfamily(iota_vec(n));
      int k = max_convex_position(sub).max_k;
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("content_hash depends on the lines only") {
  auto a = family({L("1", "0"), L("2", "1/2")});
  auto b = family({L("2", "1/2"), L("1", "0")});
  auto c = family({L("1", "0"), L("2", "1/3")});
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a) != content_hash(c));
  CHECK(content_hash(a).size() == 16);
}

TEST_CASE("is_vertical by definition") {
  // Min and max slope lines meet at (0, 10), the rest below.
  auto f = family({L("-2", "10"), L("0", "0"), L("1", "-1"), L("2", "10")});
  CHECK(is_vertical(f));
  auto g = family({L("-2", "0"), L("0", "5"), L("2", "0")});
  CHECK_FALSE(is_vertical(g));
  auto r = make_vertical_configuration(f);
  CHECK(r.matrix == identity3());
  CHECK(r.family.lines() == f.lines());
}

TEST_CASE("make_vertical_configuration on random families") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    int N = 3 + t % 5;
    auto f = random_lines(N, rng);
    auto r = make_vertical_configuration(f);
    REQUIRE(r.family.size() == f.size());
    CHECK(is_vertical(r.family));
    CHECK(check_general_position(r.family.lines()).index() == 0);
    // Convex-position subsets keep their count for every size.
    for (int k = 3; k <= std::min(N, 5); ++k)
      CHECK(convex_subsets(f, k).size() == convex_subsets(r.family, k).size());
  }
}

TEST_CASE("make_vertical_configuration preserves convex subsets by identity") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 15; ++t) {
    auto f = random_lines(6, rng);
    auto r = make_vertical_configuration(f);
    std::vector<int> origin;
    auto g = projective_map(f, r.matrix, origin);
    CHECK(g.lines() == r.family.lines());
    Arrangement before(f), after(g);
    std::vector<int> where(origin.size());
    for (std::size_t i = 0; i < origin.size(); ++i) where[static_cast<std::size_t>(origin[i])] = static_cast<int>(i);
    for (int k = 3; k <= 5; ++k)
      for_each_subset(6, k, [&](const std::vector<int>& s) {
        std::vector<int> img;
        for (int i : s) img.push_back(where[static_cast<std::size_t>(i)]);
        std::sort(img.begin(), img.end());
        CHECK(before.in_convex_position(s) == after.in_convex_position(img));
      });
  }
}

TEST_CASE("cup_cap_roles") {
  auto g = family({L("-2", "0"), L("0", "5"), L("2", "0")});
  CHECK_THROWS_AS(cup_cap_roles(g, 3), NotVertical);

  auto f = family({L("-2", "10"), L("0", "0"), L("2", "10")});
  auto r = cup_cap_roles(f, 3);
  CHECK(r.vertical);
  CHECK(r.A == std::vector<int>{1, 2});
  CHECK(r.B == std::vector<int>{0, 1});

  auto v5 = make_vertical_configuration(build_thm_lower(5)).family;
  auto a5 = cup_cap_roles(v5, 5);
  std::vector<int> both;
  std::set_intersection(a5.A.begin(), a5.A.end(), a5.B.begin(), a5.B.end(), std::back_inserter(both));
  CHECK(both.empty());
  CHECK(std::find(a5.A.begin(), a5.A.end(), 0) == a5.A.end());
  CHECK(std::find(a5.B.begin(), a5.B.end(), 0) == a5.B.end());
}

TEST_CASE("A and B are disjoint whenever no n-cell exists") {
  std::mt19937_64 rng(61);
  int certified = 0, overlapping = 0;
  for (int t = 0; t < 200; ++t) {
    int N = 5 + t % 4;
    auto f = make_vertical_configuration(random_lines(N, rng)).family;
    for (int n = 4; n <= 6; ++n) {
      if (n > N) continue;
      auto c = certify_lower_bound(f, n);
      auto roles = cup_cap_roles(f, n);
      std::vector<int> both;
      std::set_intersection(roles.A.begin(), roles.A.end(), roles.B.begin(), roles.B.end(),
                            std::back_inserter(both));
      bool first_used = std::count(roles.A.begin(), roles.A.end(), 0) + std::count(roles.B.begin(), roles.B.end(), 0);
      if (c.verdict == Verdict::Certified) {
        ++certified;
        CHECK(both.empty());
        CHECK_FALSE(first_used);
      } else if (!both.empty() || first_used) {
        ++overlapping;
      }
    }
  }
  CHECK(certified > 0);
  MESSAGE("certified " << certified << ", overlaps among refuted " << overlapping);
}
