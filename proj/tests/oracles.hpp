#pragma once

#include <algorithm>
#include <vector>

#include "esl/arrangement.hpp"

namespace esl::testing {

// A line meets the open face iff the face has points strictly on both
// sides: check its vertices and the far ends of its half-lines.
inline int recount_crossings(const LineFamily& f, const std::vector<int>& subset, const Face& face) {
  int count = 0;
  for (int l = 0; l < static_cast<int>(f.size()); ++l) {
    if (std::binary_search(subset.begin(), subset.end(), l)) continue;
    const Line& line = f[static_cast<std::size_t>(l)];
    bool pos = false, neg = false;
    auto note = [&](int s) {
      pos |= s > 0;
      neg |= s < 0;
    };
    for (const auto& e : face.boundary) {
      const Line& el = f[static_cast<std::size_t>(e.line)];
      if (e.start) note(side_of(line, *e.start));
      if (e.end) note(side_of(line, *e.end));
      // Direction of travel along the edge, times the line's normal.
      Rational dx(e.direction), dy(e.direction * el.m);
      Rational toward = dy - line.m * dx;  // > 0: moving above `line`
      if (!e.end) note(sgn(toward));
      if (!e.start) note(-sgn(toward));
    }
    count += pos && neg;
  }
  return count;
}

}  // namespace esl::testing
