#include "esl/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace esl::io {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational in '") + key + "': " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError(std::string("field '") + key + "' must be a \"p/q\" string");
}

}  // namespace

json to_json(const PointR& p) { return {{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

json to_json(const FamilyFile& file) {
  json lines = json::array();
  for (const auto& l : file.family.lines()) lines.push_back({{"m", to_string(l.m)}, {"c", to_string(l.c)}});
  json j = {{"format", "esl-family"}, {"version", 1}, {"lines", lines}};
  if (file.family.colors()) j["colors"] = *file.family.colors();
  if (!file.points.empty()) {
    j["points"] = json::array();
    for (const auto& p : file.points) j["points"].push_back(to_json(p));
  }
  if (!file.groups.empty()) j["groups"] = file.groups;
  if (!file.sides.empty()) {
    j["sides"] = json::array();
    for (auto s : file.sides) j["sides"].push_back(s == HalfSide::Above ? "above" : "below");
  }
  return j;
}

std::string write_family(const FamilyFile& file) { return to_json(file).dump(2) + "\n"; }
std::string write_family(const LineFamily& f) { return write_family(FamilyFile{f, {}, {}, {}}); }

FamilyFile read_family(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "esl-family") throw InputError("not an esl-family document");
  if (j.value("version", 0) != 1) throw InputError("unsupported esl-family version");
  if (!j.contains("lines") || !j["lines"].is_array()) throw InputError("missing 'lines' array");
  std::vector<Line> raw;
  for (const auto& l : j["lines"]) {
    if (!l.is_object()) throw InputError("each line must be an object with m and c");
    raw.push_back({rational_field(l, "m"), rational_field(l, "c")});
  }
  const std::size_t n = raw.size();
  auto per_line = [&](const char* key) {
    if (j.contains(key) && (!j[key].is_array() || j[key].size() != n))
      throw InputError(std::string("'") + key + "' must have one entry per line");
    return j.contains(key);
  };
  auto gp = check_general_position(raw);
  if (auto* v = std::get_if<Violation>(&gp)) throw InputError("lines not in general position: " + v->describe());
  // Slope order of the input lines.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a].m < raw[b].m; });

  FamilyFile out;
  out.family = std::get<LineFamily>(gp);
  try {
    if (per_line("colors")) {
      std::vector<int> colors;
      for (auto i : order) colors.push_back(j["colors"][i].get<int>());
      out.family = out.family.with_colors(colors);
    }
    if (per_line("groups"))
      for (auto i : order) out.groups.push_back(j["groups"][i].get<int>());
    if (per_line("sides"))
      for (auto i : order) {
        auto s = j["sides"][i].get<std::string>();
        if (s != "above" && s != "below") throw InputError("side must be \"above\" or \"below\"");
        out.sides.push_back(s == "above" ? HalfSide::Above : HalfSide::Below);
      }
    if (j.contains("points")) {
      if (!j["points"].is_array()) throw InputError("'points' must be an array");
      for (const auto& p : j["points"]) out.points.push_back({rational_field(p, "x"), rational_field(p, "y")});
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad per-line data: ") + e.what());
  }
  return out;
}

std::vector<WiringDiagram> read_wirings(const std::string& text) {
  std::vector<WiringDiagram> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream words(line);
    std::size_t count = 0;
    std::string w;
    while (words >> w) ++count;
    int n = 1;
    while (static_cast<std::size_t>(n) * (n - 1) / 2 < count) ++n;
    if (static_cast<std::size_t>(n) * (n - 1) / 2 != count)
      throw InputError("line " + std::to_string(lineno) + ": swap count is not n(n-1)/2");
    try {
      out.push_back(parse_wiring(n, line));
    } catch (const InvalidWiring& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ostringstream ss;
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

json to_json(const Face& face) {
  return {{"lines", face.bounding_lines},
          {"signs", std::vector<int>(face.signs.begin(), face.signs.end())},
          {"kind", to_string(face.kind)},
          {"size", face.size()}};
}

json to_json(const Certificate& c) {
  json j = {{"verdict", to_string(c.verdict)},
            {"n", c.n},
            {"lines", c.lines},
            {"family_hash", c.family_hash},
            {"subsets_checked", c.subsets_checked},
            {"subsets_total", c.subsets_total},
            {"exhaustive", c.verdict == Verdict::Certified}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

json to_json(const ConvexPositionResult& r) {
  return {{"max_k", r.max_k}, {"witness", r.witness}, {"exhaustive", r.exhaustive}, {"subsets_checked", r.subsets_checked}};
}

}  // namespace esl::io
