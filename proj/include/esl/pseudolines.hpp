// Simple wiring diagrams: enumeration, faces, sub-diagrams and n-cell checks.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "esl/core.hpp"

namespace esl {

/// Wires are numbered by their top-to-bottom order on the left. A swap at
/// position p (1-based) exchanges the wires at heights p and p+1, counted
/// from the top.
struct WiringDiagram {
  int n = 0;
  std::vector<int> swaps;

  auto operator<=>(const WiringDiagram&) const = default;
};

class InvalidWiring : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidWiring unless every pair of wires crosses exactly once.
void validate(const WiringDiagram& wd);

/// "p p p ..." and back.
std::string to_string(const WiringDiagram& wd);
WiringDiagram parse_wiring(int n, const std::string& text);

struct WDFace {
  std::vector<int> bounding_wires;  ///< sorted
  bool bounded = false;
  int size() const { return static_cast<int>(bounding_wires.size()); }
};

/// Wire i is line i of the family (lowest slope on top at the far left).
/// Crossings are taken by increasing x; crossings sharing an x-coordinate
/// involve disjoint wire pairs and are taken top to bottom.
WiringDiagram wiring_from_family(const LineFamily& f);

/// Lexicographically smallest word among those equivalent by commuting
/// swaps whose positions differ by at least 2.
WiringDiagram normal_form(const WiringDiagram& wd);

/// Smallest normal form over the top-bottom flip, the left-right reversal
/// and both together.
WiringDiagram canonical_form(const WiringDiagram& wd);

/// Every commutation class of n wires, as normal forms in increasing order.
std::vector<WiringDiagram> enumerate_commutation_classes(int n, int jobs = 1);

/// One canonical_form per symmetry class, in increasing order.
std::vector<WiringDiagram> enumerate_wiring_diagrams(int n, int jobs = 1);

/// Restriction to the wires in `keep` (any order), renumbered 0..|keep|-1
/// by their original numbers.
WiringDiagram wd_delete(const WiringDiagram& wd, std::vector<int> keep);

std::vector<WDFace> wd_faces(const WiringDiagram& wd);

/// Some n wires have a face of their own sub-diagram bounded by all n.
bool wd_spans_n_cell(const WiringDiagram& wd, int n);

}  // namespace esl
