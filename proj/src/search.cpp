#include "esl/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include "esl/arrangement.hpp"
#include "esl/cupcap.hpp"

namespace esl {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ESL_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100'000'000ULL;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

struct BudgetHit {};

// Scans n-subsets sharded by their first index. With `stop_at_first` the
// scan ends at the lexicographically first convex subset.
struct SubsetScan {
  const Arrangement& arr;
  int n;
  std::uint64_t budget;
  std::atomic<std::uint64_t> checked{0};
  std::atomic<int> best_first{1 << 30};
  std::atomic<bool> over{false};
  std::mutex mu;
  std::vector<int> best;

  SubsetScan(const Arrangement& a, int n_, std::uint64_t b) : arr(a), n(n_), budget(b) {}

  void shard(int first) {
    const int N = arr.size();
    std::vector<int> s(static_cast<std::size_t>(n));
    s[0] = first;
    // Odometer over the remaining n-1 positions.
    for (int i = 1; i < n; ++i) s[static_cast<std::size_t>(i)] = first + i;
    if (s.back() >= N) return;
    std::uint64_t local = 0;
    for (;;) {
      if (++local == 4096) {
        if (checked.fetch_add(local) + local > budget) over = true;
        local = 0;
        if (over || best_first.load() < first) break;
      }
      if (arr.in_convex_position(s)) {
        std::lock_guard lock(mu);
        if (best.empty() || s < best) best = s;
        int cur = best_first.load();
        while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
        }
        break;
      }
      int i = n - 1;
      while (i >= 1 && s[static_cast<std::size_t>(i)] == N - n + i) --i;
      if (i < 1) break;
      ++s[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (checked.fetch_add(local) + local > budget) over = true;
  }

  void run(int jobs) {
    const int N = arr.size();
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        int first = next.fetch_add(1);
        if (first > N - n || over) return;
        if (best_first.load() < first) continue;
        shard(first);
      }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    // A witness is final once every smaller first index was scanned, which
    // the skip rule guarantees; an overrun leaves it possibly non-minimal.
  }
};

}  // namespace

std::optional<std::vector<int>> find_convex_subset(const LineFamily& f, int n, const SearchOptions& opts,
                                                   std::uint64_t* checked) {
  if (n < 1 || n > static_cast<int>(f.size())) return std::nullopt;
  Arrangement arr(f);
  SubsetScan scan(arr, n, opts.budget ? opts.budget : default_budget());
  scan.run(opts.jobs);
  if (checked) *checked = scan.checked.load();
  if (scan.over && scan.best.empty()) throw BudgetExceeded({});
  if (scan.best.empty()) return std::nullopt;
  return scan.best;
}

ConvexPositionResult max_convex_position(const LineFamily& f, std::optional<int> cap, const SearchOptions& opts) {
  const int N = static_cast<int>(f.size());
  if (N < 2) throw std::invalid_argument("max_convex_position needs at least 2 lines");
  const int limit = std::min(N, cap.value_or(N));
  ConvexPositionResult res;
  auto cc = longest_cup_cap(f);
  const auto& chain = cc.cup.size() >= cc.cap.size() ? cc.cup : cc.cap;
  // Any 3 or 4 lines define a 3-cell or a 4-cell.
  if (chain.size() >= std::min(N, 4)) {
    res.max_k = chain.size();
    res.witness = chain.indices;
  } else {
    res.max_k = std::min(N, 4);
    res.witness.resize(static_cast<std::size_t>(res.max_k));
    std::iota(res.witness.begin(), res.witness.end(), 0);
  }
  if (res.max_k > limit) {
    res.max_k = limit;
    res.witness.resize(static_cast<std::size_t>(limit));
    return res;
  }
  std::uint64_t budget = opts.budget ? opts.budget : default_budget();
  for (int k = res.max_k + 1; k <= limit; ++k) {
    SearchOptions o = opts;
    o.budget = budget > res.subsets_checked ? budget - res.subsets_checked : 1;
    std::uint64_t used = 0;
    std::optional<std::vector<int>> w;
    try {
      w = find_convex_subset(f, k, o, &used);
    } catch (const BudgetExceeded&) {
      res.subsets_checked += o.budget;
      throw BudgetExceeded(res);
    }
    res.subsets_checked += used;
    if (!w) {
      res.exhaustive = true;
      return res;
    }
    res.max_k = k;
    res.witness = *w;
  }
  res.exhaustive = res.max_k == N;
  return res;
}

std::string content_hash(const LineFamily& f) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& l : f.lines()) feed(to_string(l.m) + " " + to_string(l.c) + "\n");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Certificate certify_lower_bound(const LineFamily& f, int n, const SearchOptions& opts) {
  if (n < 1 || static_cast<std::size_t>(n) > f.size())
    throw std::invalid_argument("certify_lower_bound needs 1 <= n <= |f|");
  Certificate c;
  c.n = n;
  c.lines = f.size();
  c.family_hash = content_hash(f);
  c.subsets_total = binomial(static_cast<int>(f.size()), n);
  Arrangement arr(f);
  SubsetScan scan(arr, n, opts.budget ? opts.budget : default_budget());
  scan.run(opts.jobs);
  c.subsets_checked = scan.checked.load();
  if (!scan.best.empty()) {
    c.verdict = Verdict::Refuted;
    c.witness = scan.best;
  } else if (scan.over) {
    c.verdict = Verdict::BudgetExceeded;
  } else {
    c.verdict = Verdict::Certified;
  }
  return c;
}

bool is_vertical(const LineFamily& f) {
  const std::size_t N = f.size();
  if (N < 2) return true;
  PointR top = intersect(f[0], f[N - 1]);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      if (i == 0 && j == N - 1) continue;
      if (intersect(f[i], f[j]).y >= top.y) return false;
    }
  return true;
}

VerticalResult make_vertical_configuration(const LineFamily& f) {
  const int N = static_cast<int>(f.size());
  if (N < 2) throw std::invalid_argument("make_vertical_configuration needs at least 2 lines");
  if (is_vertical(f)) return {f, identity3(), {0, N - 1}};

  // Lexicographically smallest vertex; it is a vertex of the hull.
  int ia = 0, ib = 1;
  PointR v = intersect(f[0], f[1]);
  std::vector<PointR> verts;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      PointR w = intersect(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
      verts.push_back(w);
      if (std::tie(w.x, w.y) < std::tie(v.x, v.y)) {
        v = w;
        ia = i;
        ib = j;
      }
    }
  // u = (x - vx) + tau (y - vy) + eta is smallest at v among all vertices,
  // so u = 0 misses the hull; it becomes the line at infinity.
  Rational tau(1);
  bool any = false;
  for (const auto& w : verts)
    if (w.x > v.x && w.y < v.y) {
      Rational r = (w.x - v.x) / (v.y - w.y);
      if (!any || r < tau) tau = r;
      any = true;
    }

  // An input line parallel to u = 0 would turn vertical; shrinking tau
  // moves u = 0 off every such slope after finitely many steps.
  const Rational eta(1);
  for (int step = 1; step <= 256; ++step) {
    tau = tau * step / (step + 1);
    // (x, y) -> (1/u, y/u): v becomes the rightmost vertex.
    Matrix3 P{};
    P[0] = {Rational(0), Rational(0), Rational(1)};
    P[1] = {Rational(0), Rational(1), Rational(0)};
    P[2] = {Rational(1), tau, eta - v.x - tau * v.y};
    try {
      std::vector<int> origin;
      auto g = projective_map(f, P, origin);
      // a and a' are adjacent in slope order now; turn the plane so the
      // direction between their slopes points up.
      int pa = -1, pb = -1;
      for (int k = 0; k < N; ++k) {
        if (origin[static_cast<std::size_t>(k)] == ia) pa = k;
        if (origin[static_cast<std::size_t>(k)] == ib) pb = k;
      }
      Rational s = (g[static_cast<std::size_t>(pa)].m + g[static_cast<std::size_t>(pb)].m) / 2;
      Matrix3 G{};
      G[0] = {s, Rational(-1), Rational(0)};
      G[1] = {Rational(1), Rational(0), Rational(0)};
      G[2] = {Rational(0), Rational(0), Rational(1)};
      Matrix3 M = multiply(G, P);
      auto h = projective_map(f, M);
      if (is_vertical(h)) return {h, M, {ia, ib}};
    } catch (const ProducesVertical&) {
    } catch (const MapsToInfinity&) {
    }
  }
  throw std::logic_error("make_vertical_configuration: no admissible map found");
}

VerticalConfigAnalysis cup_cap_roles(const LineFamily& f, int n) {
  if (!is_vertical(f)) throw NotVertical();
  Arrangement arr(f);
  const int N = arr.size();
  ChainTable cups(N, [&](int i, int j, int k) { return is_cup_triple(arr, i, j, k); });
  ChainTable caps(N, [&](int i, int j, int k) { return is_cap_triple(arr, i, j, k); });
  VerticalConfigAnalysis out;
  out.vertical = true;
  // With the top vertex on a_1 and a_N, an (n-1)-cup from a_1 closes to an
  // n-cell with a_N, so cups supply B and caps supply A.
  for (int j = 0; j < N; ++j) {
    if (caps.longest_ending_at(j) >= n - 1) out.A.push_back(j);
    if (cups.longest_starting_at(j) >= n - 1) out.B.push_back(j);
  }
  return out;
}

}  // namespace esl
