#include "esl/pseudolines.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace esl {

void validate(const WiringDiagram& wd) {
  const int n = wd.n;
  if (n < 1) throw InvalidWiring("wiring diagram needs at least one wire");
  if (wd.swaps.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
    throw InvalidWiring("wiring diagram must have n(n-1)/2 swaps");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int p : wd.swaps) {
    if (p < 1 || p >= n) throw InvalidWiring("swap position out of range: " + std::to_string(p));
    auto& a = order[static_cast<std::size_t>(p - 1)];
    auto& b = order[static_cast<std::size_t>(p)];
    if (a > b) throw InvalidWiring("wires cross twice at position " + std::to_string(p));
    std::swap(a, b);
  }
}

std::string to_string(const WiringDiagram& wd) {
  std::string out;
  for (std::size_t i = 0; i < wd.swaps.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(wd.swaps[i]);
  }
  return out;
}

WiringDiagram parse_wiring(int n, const std::string& text) {
  WiringDiagram wd{n, {}};
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      int p = std::stoi(tok, &used);
      if (used != tok.size()) throw InvalidWiring("bad swap token: " + tok);
      wd.swaps.push_back(p);
    } catch (const std::logic_error&) {
      throw InvalidWiring("bad swap token: " + tok);
    }
  }
  validate(wd);
  return wd;
}

WiringDiagram wiring_from_family(const LineFamily& f) {
  const int n = static_cast<int>(f.size());
  struct Event {
    PointR at;
    int i, j;
  };
  std::vector<Event> ev;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ev.push_back({intersect(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]), i, j});
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    if (a.at.x != b.at.x) return a.at.x < b.at.x;
    return a.at.y > b.at.y;
  });
  std::vector<int> order(static_cast<std::size_t>(n)), height(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::iota(height.begin(), height.end(), 0);
  WiringDiagram wd{n, {}};
  for (const auto& e : ev) {
    int hi = std::min(height[static_cast<std::size_t>(e.i)], height[static_cast<std::size_t>(e.j)]);
    if (std::abs(height[static_cast<std::size_t>(e.i)] - height[static_cast<std::size_t>(e.j)]) != 1)
      throw std::logic_error("wiring_from_family: crossing wires are not adjacent");
    wd.swaps.push_back(hi + 1);
    std::swap(order[static_cast<std::size_t>(hi)], order[static_cast<std::size_t>(hi + 1)]);
    height[static_cast<std::size_t>(order[static_cast<std::size_t>(hi)])] = hi;
    height[static_cast<std::size_t>(order[static_cast<std::size_t>(hi + 1)])] = hi + 1;
  }
  return wd;
}

WiringDiagram normal_form(const WiringDiagram& wd) {
  // Repeatedly move to the front the smallest swap that commutes with
  // everything before it.
  std::vector<int> rest = wd.swaps;
  WiringDiagram out{wd.n, {}};
  out.swaps.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t pick = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      bool free = true;
      for (std::size_t i = 0; i < j && free; ++i) free = std::abs(rest[i] - rest[j]) >= 2;
      if (!free) continue;
      if (rest[j] < rest[pick]) pick = j;
      if (rest[pick] == 1) break;
    }
    out.swaps.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

WiringDiagram canonical_form(const WiringDiagram& wd) {
  WiringDiagram flip = wd, rev = wd, both;
  for (int& p : flip.swaps) p = wd.n - p;
  std::reverse(rev.swaps.begin(), rev.swaps.end());
  both = rev;
  for (int& p : both.swaps) p = wd.n - p;
  return std::min({normal_form(wd), normal_form(flip), normal_form(rev), normal_form(both)});
}

namespace {

// Depth-first search over words kept in normal form: appending b is allowed
// unless b could commute left past a larger swap.
struct ClassSearch {
  int n;
  std::size_t total;
  std::vector<int> word;
  std::vector<int> order;
  std::vector<WiringDiagram>* out;

  bool appendable(int b) const {
    if (order[static_cast<std::size_t>(b - 1)] > order[static_cast<std::size_t>(b)]) return false;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (std::abs(*it - b) <= 1) return true;
      if (*it > b) return false;
    }
    return true;
  }

  void apply(int b) {
    word.push_back(b);
    std::swap(order[static_cast<std::size_t>(b - 1)], order[static_cast<std::size_t>(b)]);
  }
  void undo() {
    int b = word.back();
    word.pop_back();
    std::swap(order[static_cast<std::size_t>(b - 1)], order[static_cast<std::size_t>(b)]);
  }

  void dfs() {
    if (word.size() == total) {
      out->push_back({n, word});
      return;
    }
    for (int b = 1; b < n; ++b)
      if (appendable(b)) {
        apply(b);
        dfs();
        undo();
      }
  }

  // Normal-form prefixes of the given length, in increasing order.
  void prefixes(std::size_t len, std::vector<std::vector<int>>& acc) {
    if (word.size() == len || word.size() == total) {
      acc.push_back(word);
      return;
    }
    for (int b = 1; b < n; ++b)
      if (appendable(b)) {
        apply(b);
        prefixes(len, acc);
        undo();
      }
  }
};

}  // namespace

std::vector<WiringDiagram> enumerate_commutation_classes(int n, int jobs) {
  if (n < 1) throw std::invalid_argument("enumerate needs at least one wire");
  const std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
  ClassSearch root{n, total, {}, {}, nullptr};
  root.order.resize(static_cast<std::size_t>(n));
  std::iota(root.order.begin(), root.order.end(), 0);
  std::vector<std::vector<int>> pre;
  root.prefixes(std::min<std::size_t>(total, 4), pre);

  std::vector<std::vector<WiringDiagram>> parts(pre.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= pre.size()) return;
      ClassSearch s{n, total, {}, root.order, &parts[k]};
      for (int b : pre[k]) s.apply(b);
      s.dfs();
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
  std::vector<WiringDiagram> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

std::vector<WiringDiagram> enumerate_wiring_diagrams(int n, int jobs) {
  std::set<WiringDiagram> reps;
  for (const auto& wd : enumerate_commutation_classes(n, jobs)) reps.insert(canonical_form(wd));
  return {reps.begin(), reps.end()};
}

WiringDiagram wd_delete(const WiringDiagram& wd, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.size() < 2) throw std::invalid_argument("wd_delete keeps at least two wires");
  std::vector<int> label(static_cast<std::size_t>(wd.n), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= wd.n) throw std::invalid_argument("wd_delete: no such wire");
    label[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  }
  std::vector<int> order(static_cast<std::size_t>(wd.n));
  std::iota(order.begin(), order.end(), 0);
  WiringDiagram out{static_cast<int>(keep.size()), {}};
  for (int p : wd.swaps) {
    auto& a = order[static_cast<std::size_t>(p - 1)];
    auto& b = order[static_cast<std::size_t>(p)];
    if (label[static_cast<std::size_t>(a)] >= 0 && label[static_cast<std::size_t>(b)] >= 0) {
      int above = 0;
      for (int h = 0; h < p - 1; ++h) above += label[static_cast<std::size_t>(order[static_cast<std::size_t>(h)])] >= 0;
      out.swaps.push_back(above + 1);
    }
    std::swap(a, b);
  }
  return out;
}

std::vector<WDFace> wd_faces(const WiringDiagram& wd) {
  const int n = wd.n;
  struct Open {
    std::vector<int> wires;
    bool left_closed = false;
  };
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Region r lies between heights r-1 and r; regions 0 and n are outermost.
  std::vector<Open> region(static_cast<std::size_t>(n + 1));
  for (int r = 0; r <= n; ++r) {
    if (r > 0) region[static_cast<std::size_t>(r)].wires.push_back(r - 1);
    if (r < n) region[static_cast<std::size_t>(r)].wires.push_back(r);
  }
  std::vector<WDFace> out;
  auto close = [&](Open& o, bool bounded) {
    std::sort(o.wires.begin(), o.wires.end());
    o.wires.erase(std::unique(o.wires.begin(), o.wires.end()), o.wires.end());
    out.push_back({o.wires, bounded});
  };
  for (int p : wd.swaps) {
    int a = order[static_cast<std::size_t>(p - 1)], b = order[static_cast<std::size_t>(p)];
    close(region[static_cast<std::size_t>(p)], region[static_cast<std::size_t>(p)].left_closed);
    region[static_cast<std::size_t>(p)] = {{a, b}, true};
    region[static_cast<std::size_t>(p - 1)].wires.push_back(b);
    region[static_cast<std::size_t>(p + 1)].wires.push_back(a);
    std::swap(order[static_cast<std::size_t>(p - 1)], order[static_cast<std::size_t>(p)]);
  }
  for (auto& o : region) close(o, false);
  return out;
}

bool wd_spans_n_cell(const WiringDiagram& wd, int n) {
  if (n < 1 || n > wd.n) throw std::invalid_argument("wd_spans_n_cell needs 1 <= n <= wires");
  if (n <= 2) return true;
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  for (;;) {
    for (const auto& face : wd_faces(wd_delete(wd, s)))
      if (face.size() == n) return true;
    int i = n - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == wd.n - n + i) --i;
    if (i < 0) return false;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace esl
