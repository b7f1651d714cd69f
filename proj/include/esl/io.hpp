// Family files (JSON), wiring diagram lists and certificate records.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "esl/core.hpp"
#include "esl/pseudolines.hpp"
#include "esl/search.hpp"
#include "esl/variants.hpp"

namespace esl::io {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a family file can carry. Per-line data (groups, sides) is
/// kept in slope order, like the lines themselves.
struct FamilyFile {
  LineFamily family;
  std::vector<PointR> points;
  std::vector<int> groups;
  std::vector<HalfSide> sides;
};

nlohmann::json to_json(const FamilyFile& file);
std::string write_family(const FamilyFile& file);
std::string write_family(const LineFamily& f);

/// Throws InputError on malformed JSON, bad rationals, or lines not in
/// general position (the message names the violation).
FamilyFile read_family(const std::string& text);

/// Whitespace-separated swap positions, one diagram per line; lines that
/// are blank or start with '#' are skipped. The wire count follows from
/// the number of swaps.
std::vector<WiringDiagram> read_wirings(const std::string& text);

std::string read_text(const std::string& path);

nlohmann::json to_json(const PointR& p);
nlohmann::json to_json(const Face& face);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const ConvexPositionResult& r);

}  // namespace esl::io
