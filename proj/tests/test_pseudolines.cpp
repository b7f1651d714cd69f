#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "esl/arrangement.hpp"
#include "esl/constructions.hpp"
#include "esl/pseudolines.hpp"
#include "esl/search.hpp"
#include "support.hpp"

using namespace esl;
using namespace esl::testing;

namespace {

// Every reduced word of the reversal, without any pruning.
void all_words(int n, std::vector<int>& order, std::vector<int>& word, std::vector<std::vector<int>>& out) {
  if (word.size() == static_cast<std::size_t>(n * (n - 1) / 2)) {
    out.push_back(word);
    return;
  }
  for (int p = 1; p < n; ++p)
    if (order[p - 1] < order[p]) {
      std::swap(order[p - 1], order[p]);
      word.push_back(p);
      all_words(n, order, word, out);
      word.pop_back();
      std::swap(order[p - 1], order[p]);
    }
}

std::vector<std::vector<int>> all_words(int n) {
  std::vector<int> order(n), word;
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> out;
  all_words(n, order, word, out);
  return out;
}

// Words reachable by swapping adjacent commuting letters.
std::set<std::vector<int>> commutation_class(const std::vector<int>& w) {
  std::set<std::vector<int>> seen{w};
  std::vector<std::vector<int>> todo{w};
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      if (std::abs(cur[i] - cur[i + 1]) >= 2) {
        auto nxt = cur;
        std::swap(nxt[i], nxt[i + 1]);
        if (seen.insert(nxt).second) todo.push_back(nxt);
      }
  }
  return seen;
}

std::map<int, long> histogram(const std::vector<WDFace>& faces, bool bounded_only) {
  std::map<int, long> h;
  for (const auto& f : faces)
    if (!bounded_only || f.bounded) ++h[f.size()];
  return h;
}

}  // namespace

TEST_CASE("validate and text form") {
  WiringDiagram ok{3, {1, 2, 1}};
  CHECK_NOTHROW(validate(ok));
  CHECK_THROWS_AS(validate({3, {1, 1, 2}}), InvalidWiring);
  CHECK_THROWS_AS(validate({3, {1, 2}}), InvalidWiring);
  CHECK_THROWS_AS(validate({3, {1, 3, 1}}), InvalidWiring);
  CHECK(to_string(ok) == "1 2 1");
  CHECK(parse_wiring(3, " 2 1  2") == WiringDiagram{3, {2, 1, 2}});
  CHECK_THROWS_AS(parse_wiring(3, "1 x 1"), InvalidWiring);
}

TEST_CASE("wiring_from_family small cases") {
  auto two = family({L("0", "0"), L("1", "0")});
  CHECK(wiring_from_family(two) == WiringDiagram{2, {1}});
  // Vertices at x = -1, 0, 1 in order (0,2), (0,1), (1,2).
  auto three = family({L("-1", "0"), L("0", "1"), L("1", "0")});
  auto wd = wiring_from_family(three);
  CHECK_NOTHROW(validate(wd));
  // By hand: 0∩1 at x=-1, 0∩2 at 0, 1∩2 at 1.
  CHECK(wd.swaps == std::vector<int>{1, 2, 1});
}

TEST_CASE("wiring_from_family handles crossings sharing an x-coordinate") {
  // 0∩3 and 1∩2 both at x = 0.
  auto f = family({L("-3", "3"), L("-1", "1"), L("1", "1"), L("3", "3")});
  auto wd = wiring_from_family(f);
  CHECK_NOTHROW(validate(wd));
  CHECK(histogram(wd_faces(wd), false) == empty_cell_census(f).all);
}

TEST_CASE("faces of tiny diagrams") {
  auto f2 = wd_faces({2, {1}});
  CHECK(f2.size() == 4);
  for (const auto& f : f2) CHECK(f.size() == 2);
  auto f3 = wd_faces({3, {1, 2, 1}});
  CHECK(f3.size() == 7);
  CHECK(histogram(f3, false) == std::map<int, long>{{2, 3}, {3, 4}});
  CHECK(histogram(f3, true) == std::map<int, long>{{3, 1}});
}

TEST_CASE("face census agrees with the geometric arrangement") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 150; ++t) {
    int n = 2 + t % 7;
    auto f = random_lines(n, rng);
    auto faces = wd_faces(wiring_from_family(f));
    CHECK(faces.size() == static_cast<std::size_t>(1 + n + n * (n - 1) / 2));
    auto census = empty_cell_census(f);
    CHECK(histogram(faces, false) == census.all);
    CHECK(histogram(faces, true) == census.bounded);
  }
}

TEST_CASE("wd_delete matches geometric restriction") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 100; ++t) {
    int n = 3 + t % 6;
    auto f = random_lines(n, rng);
    auto wd = wiring_from_family(f);
    CHECK(wd_delete(wd, iota_vec(n)) == wd);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (rng() % 2) keep.push_back(i);
    if (keep.size() < 2) keep = {0, n - 1};
    std::vector<int> shuffled = keep;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto sub = wd_delete(wd, shuffled);
    CHECK(sub == wiring_from_family(f.subfamily(keep)));
  }
  CHECK(wd_delete({4, {1, 2, 3, 1, 2, 1}}, {1, 3}).swaps == std::vector<int>{1});
}

TEST_CASE("normal form is the minimum of the commutation class") {
  for (int n = 3; n <= 5; ++n)
    for (const auto& w : all_words(n)) {
      auto cls = commutation_class(w);
      CHECK(normal_form({n, w}).swaps == *cls.begin());
    }
}

TEST_CASE("commutation classes match an unpruned enumeration") {
  for (int n = 2; n <= 6; ++n) {
    std::set<std::vector<int>> brute;
    for (const auto& w : all_words(n)) brute.insert(normal_form({n, w}).swaps);
    auto got = enumerate_commutation_classes(n, 3);
    std::set<std::vector<int>> mine;
    for (const auto& wd : got) mine.insert(wd.swaps);
    CHECK(got.size() == mine.size());
    CHECK(mine == brute);
  }
}

TEST_CASE("class counts follow the known census of primitive sorting networks") {
  const std::vector<std::size_t> expected{1, 1, 2, 8, 62, 908, 24698};
  for (int n = 1; n <= 7; ++n) CHECK(enumerate_commutation_classes(n, 4).size() == expected[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("symmetry classes") {
  CHECK(enumerate_wiring_diagrams(2).size() == 1);
  CHECK(enumerate_wiring_diagrams(3).size() == 1);
  for (int n = 3; n <= 6; ++n) {
    auto reps = enumerate_wiring_diagrams(n);
    std::set<WiringDiagram> seen;
    for (const auto& wd : enumerate_commutation_classes(n)) {
      auto c = canonical_form(wd);
      CHECK(canonical_form(c) == c);
      seen.insert(c);
    }
    CHECK(std::vector<WiringDiagram>(seen.begin(), seen.end()) == reps);
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  CHECK(enumerate_commutation_classes(6, 1) == enumerate_commutation_classes(6, 8));
}

TEST_CASE("random line families are found among the enumerated diagrams") {
  std::mt19937_64 rng(73);
  std::vector<std::set<WiringDiagram>> reps(8);
  for (int n = 2; n <= 7; ++n) {
    auto all = enumerate_wiring_diagrams(n, 4);
    reps[static_cast<std::size_t>(n)] = {all.begin(), all.end()};
  }
  int missing = 0;
  for (int t = 0; t < 10000; ++t) {
    int n = 2 + t % 6;
    auto wd = canonical_form(wiring_from_family(random_family(n, rng)));
    missing += reps[static_cast<std::size_t>(n)].count(wd) == 0;
  }
  CHECK(missing == 0);
}

TEST_CASE("wd_spans_n_cell agrees with geometric search") {
  std::mt19937_64 rng(74);
  for (int t = 0; t < 80; ++t) {
    int n = 4 + t % 5;
    auto f = random_lines(n, rng);
    auto wd = wiring_from_family(f);
    int mk = max_convex_position(f).max_k;
    for (int k = 3; k <= n; ++k) CHECK(wd_spans_n_cell(wd, k) == (k <= mk));
  }
  auto lower = wiring_from_family(build_thm_lower(5));
  CHECK(lower.n == 6);
  CHECK_FALSE(wd_spans_n_cell(lower, 5));
  CHECK(wd_spans_n_cell(lower, 4));
}

TEST_CASE("wd_spans_n_cell is monotone under adding wires") {
  for (const auto& wd : enumerate_commutation_classes(6)) {
    bool full = wd_spans_n_cell(wd, 5);
    for (int drop = 0; drop < 6; ++drop) {
      std::vector<int> keep;
      for (int i = 0; i < 6; ++i)
        if (i != drop) keep.push_back(i);
      if (wd_spans_n_cell(wd_delete(wd, keep), 5)) CHECK(full);
    }
  }
}

TEST_CASE("exhaustive small cell bounds") {
  for (const auto& wd : enumerate_commutation_classes(3)) CHECK(wd_spans_n_cell(wd, 3));
  for (const auto& wd : enumerate_commutation_classes(4)) CHECK(wd_spans_n_cell(wd, 4));
  int without = 0;
  for (const auto& wd : enumerate_commutation_classes(6)) without += !wd_spans_n_cell(wd, 5);
  CHECK(without > 0);
}
