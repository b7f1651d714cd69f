#include "esl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "esl/arrangement.hpp"
#include "esl/constructions.hpp"
#include "esl/cupcap.hpp"
#include "esl/io.hpp"
#include "esl/pseudolines.hpp"
#include "esl/search.hpp"
#include "esl/svg.hpp"
#include "esl/variants.hpp"

namespace esl::cli {

using nlohmann::json;

namespace {

constexpr int kOk = 0, kRefuted = 1, kInputError = 2, kBudget = 3;
constexpr std::uint64_t kDefaultSeed = 20180213;

struct Globals {
  int jobs = 1;
  std::uint64_t budget = 0;
  std::uint64_t seed = kDefaultSeed;
  SearchOptions search() const { return {jobs, budget}; }
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, std::string command)
      : in_(in), out_(out), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    return io::read_text(path);
  }
  io::FamilyFile family(const std::string& path) { return io::read_family(slurp(path)); }

  /// Stamps certificate metadata.
  json stamp(json j) const {
    j["command"] = command_;
    j["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return j;
  }
  void emit(const json& j) { out_ << j.dump(2) << "\n"; }
  void emit_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw io::InputError("cannot write " + path);
    f << text;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
};

json census_json(const std::map<int, long>& m) {
  json j = json::object();
  for (auto [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

json census_json(const Census& c) { return {{"all", census_json(c.all)}, {"bounded", census_json(c.bounded)}}; }

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw io::InputError("bad index list '" + text + "'");
    }
  }
  return out;
}

void check_indices(const std::vector<int>& idx, std::size_t n) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || static_cast<std::size_t>(idx[i]) >= n) throw io::InputError("line index out of range");
    if (i > 0 && idx[i] <= idx[i - 1]) throw io::InputError("line indices must be increasing");
  }
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  bool census = false, mono = false, cupcap = false, max_convex = false, faces = false;
};

int analyze(Context& ctx, const Globals& g, const AnalyzeArgs& a) {
  auto ff = ctx.family(a.file);
  const auto& f = ff.family;
  json j = {{"lines", f.size()}, {"family_hash", content_hash(f)}};
  bool all = !(a.census || a.mono || a.cupcap || a.max_convex || a.faces);
  if (a.census || all) j["census"] = census_json(empty_cell_census(f));
  if (a.mono) {
    if (!f.colors()) throw io::InputError("--mono needs a colored family");
    j["mono_census"] = census_json(empty_cell_census(f, true));
  }
  if (a.cupcap || all) {
    auto lc = longest_cup_cap(f);
    j["longest_cup"] = lc.cup.indices;
    j["longest_cap"] = lc.cap.indices;
  }
  if (a.faces) {
    j["faces"] = json::array();
    for (const auto& face : faces(f)) j["faces"].push_back(io::to_json(face));
  }
  if (a.max_convex) {
    try {
      j["max_convex"] = io::to_json(max_convex_position(f, std::nullopt, g.search()));
    } catch (const BudgetExceeded& e) {
      j["max_convex"] = io::to_json(e.best());
      ctx.emit(j);
      return kBudget;
    }
  }
  ctx.emit(j);
  return kOk;
}

// --- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  int n = 0, k = 0, l = 0;
  std::string output;
};

int construct(Context& ctx, const Globals& g, const ConstructArgs& a) {
  auto need = [&](int v, const char* name) {
    if (v <= 0) throw io::InputError(std::string("construct ") + a.kind + " needs --" + name);
    return v;
  };
  io::FamilyFile ff;
  try {
    if (a.kind == "thm-lower") {
      ff.family = build_thm_lower(need(a.n, "n"), &ff.groups);
    } else if (a.kind == "prop-lower") {
      ff.family = build_prop_lower(need(a.n, "n"), &ff.groups);
    } else if (a.kind == "fkl") {
      ff.family = build_Fkl(need(a.k, "k"), need(a.l, "l"));
    } else if (a.kind == "fkl-mirror") {
      ff.family = build_Fkl_mirror(need(a.k, "k"), need(a.l, "l"));
    } else if (a.kind == "no-empty") {
      ff.family = build_no_empty(need(a.n, "n"));
    } else if (a.kind == "no-empty-colored") {
      ff.family = build_no_empty_colored(need(a.n, "n"));
    } else if (a.kind == "ngon") {
      ff.family = build_regular_ngon_lines(need(a.n, "n"));
    } else if (a.kind == "random") {
      std::mt19937_64 rng(g.seed);
      ff.family = random_family(need(a.n, "n"), rng);
    } else {
      throw io::InputError("unknown construction '" + a.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw io::InputError(std::string("construct ") + a.kind + ": " + e.what());
  }
  ctx.emit_text(io::write_family(ff), a.output);
  return kOk;
}

// --- search / verify -------------------------------------------------------

int search_max_convex(Context& ctx, const Globals& g, const std::string& file, int cap) {
  auto f = ctx.family(file).family;
  json j = {{"family_hash", content_hash(f)}, {"lines", f.size()}};
  int code = kOk;
  try {
    auto r = max_convex_position(f, cap > 0 ? std::optional<int>(cap) : std::nullopt, g.search());
    j.update(io::to_json(r));
  } catch (const BudgetExceeded& e) {
    j.update(io::to_json(e.best()));
    j["verdict"] = "budget_exceeded";
    code = kBudget;
  }
  ctx.emit(ctx.stamp(j));
  return code;
}

int verify_lower_bound(Context& ctx, const Globals& g, const std::string& file, int n) {
  if (n < 1) throw io::InputError("--n must be positive");
  auto f = ctx.family(file).family;
  auto c = certify_lower_bound(f, n, g.search());
  json j = io::to_json(c);
  if (c.verdict == Verdict::Certified) j["claim"] = "ESl(" + std::to_string(n) + ") >= " + std::to_string(f.size() + 1);
  ctx.emit(ctx.stamp(j));
  switch (c.verdict) {
    case Verdict::Certified: return kOk;
    case Verdict::Refuted: return kRefuted;
    case Verdict::BudgetExceeded: return kBudget;
  }
  return kOk;
}

int verify_esl_upper(Context& ctx, const Globals& g, const std::string& file, int n, int wires) {
  if (n < 1) throw io::InputError("--n must be positive");
  auto list = io::read_wirings(ctx.slurp(file));
  if (list.empty()) throw io::InputError("no wiring diagrams in input");
  int w = wires > 0 ? wires : list.front().n;
  for (const auto& wd : list)
    if (wd.n != w) throw io::InputError("all diagrams must have " + std::to_string(w) + " wires");

  // Completeness: every symmetry class of w wires must appear (up to symmetry).
  std::set<WiringDiagram> given;
  for (const auto& wd : list) given.insert(canonical_form(wd));
  auto reps = enumerate_wiring_diagrams(w, g.jobs);
  std::size_t covered = 0;
  for (const auto& r : reps) covered += given.count(r);
  bool complete = covered == reps.size();

  json j = {{"n", n}, {"wires", w}, {"diagrams", list.size()}, {"classes_covered", covered},
            {"classes_total", reps.size()}, {"complete", complete}};
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!wd_spans_n_cell(list[i], n)) {
      j["verdict"] = "refuted";
      j["witness"] = {{"index", i}, {"swaps", list[i].swaps}};
      ctx.emit(ctx.stamp(j));
      return kRefuted;
    }
  }
  if (!complete) {
    j["verdict"] = "incomplete";
    ctx.emit(ctx.stamp(j));
    return kInputError;
  }
  j["verdict"] = "certified";
  j["claim"] = "ESl(" + std::to_string(n) + ") <= " + std::to_string(w);
  ctx.emit(ctx.stamp(j));
  return kOk;
}

/// Re-checks a certificate against the family it names.
int verify_certificate(Context& ctx, const Globals& g, const std::string& cert_path, const std::string& family) {
  json cert;
  try {
    cert = json::parse(io::read_text(cert_path));
  } catch (const json::exception& e) {
    throw io::InputError(std::string("bad certificate: ") + e.what());
  }
  auto f = ctx.family(family).family;
  json j = {{"family_hash", content_hash(f)}};
  try {
    if (cert.at("family_hash").get<std::string>() != content_hash(f)) {
      j["verdict"] = "hash_mismatch";
      ctx.emit(j);
      return kRefuted;
    }
    int n = cert.at("n").get<int>();
    auto verdict = cert.at("verdict").get<std::string>();
    if (verdict == to_string(Verdict::Refuted)) {
      auto w = cert.at("witness").get<std::vector<int>>();
      check_indices(w, f.size());
      bool ok = static_cast<int>(w.size()) == n && Arrangement(f).in_convex_position(w);
      j["verdict"] = ok ? "witness_valid" : "witness_invalid";
      ctx.emit(j);
      return ok ? kOk : kRefuted;
    }
    if (verdict != to_string(Verdict::Certified)) throw io::InputError("certificate has no checkable verdict");
    auto again = certify_lower_bound(f, n, g.search());
    j["verdict"] = to_string(again.verdict);
    ctx.emit(j);
    if (again.verdict == Verdict::BudgetExceeded) return kBudget;
    return again.verdict == Verdict::Certified ? kOk : kRefuted;
  } catch (const json::exception& e) {
    throw io::InputError(std::string("bad certificate: ") + e.what());
  }
}

// --- enumerate -------------------------------------------------------------

int enumerate(Context& ctx, const Globals& g, int wires, bool all_classes) {
  if (wires < 1 || wires > 8) throw io::InputError("--wires must be between 1 and 8");
  auto list = all_classes ? enumerate_commutation_classes(wires, g.jobs) : enumerate_wiring_diagrams(wires, g.jobs);
  std::ostringstream os;
  os << "# wires " << wires << " " << (all_classes ? "commutation classes" : "symmetry classes") << " "
     << list.size() << "\n";
  for (const auto& wd : list) os << to_string(wd) << "\n";
  ctx.emit_text(os.str(), "");
  return kOk;
}

// --- variants --------------------------------------------------------------

json polygon_json(const MixedPolygon& p) {
  json j = {{"translation", io::to_json(p.translation)}, {"vertices", json::array()},
            {"edge_lines", p.edge_lines}, {"point_vertices", p.point_vertices}};
  for (const auto& v : p.vertices) j["vertices"].push_back(io::to_json(v));
  return j;
}

int variant(Context& ctx, const Globals& g, const std::string& which, const std::string& file, int n,
            const std::string& points_file) {
  auto ff = ctx.family(file);
  const auto& f = ff.family;
  json j = {{"variant", which}, {"family_hash", content_hash(f)}};
  try {
    if (which == "exact-cross") {
      if (n < 0) throw io::InputError("--n must be given");
      auto r = exact_crossing_cell(f, n);
      j.update({{"n", n}, {"subset", r.subset}, {"signs", std::vector<int>(r.signs.begin(), r.signs.end())},
                {"crossing", r.crossing}, {"steps", r.steps}, {"cell", io::to_json(r.cell)}});
    } else if (which == "mixed") {
      if (n < 1) throw io::InputError("--n must be given");
      auto pts = ff.points;
      if (!points_file.empty()) pts = io::read_family(io::read_text(points_file)).points;
      auto poly = mixed_polygon(f, pts, n);
      auto problem = check_mixed_polygon(f, pts, n, poly);
      if (!problem.empty()) throw std::logic_error("mixed polygon replay failed: " + problem);
      j.update({{"n", n}, {"polygon", polygon_json(poly)}, {"replay", "ok"}});
    } else if (which == "halfplanes") {
      if (n < 1) throw io::InputError("--n must be given");
      if (ff.sides.size() != f.size()) throw io::InputError("halfplanes needs a 'sides' entry per line");
      std::vector<HalfPlane> hs;
      for (std::size_t i = 0; i < f.size(); ++i) hs.push_back({f[i], ff.sides[i]});
      auto s = halfplane_select(hs, n, g.search());
      j.update({{"n", n}, {"indices", s.indices}, {"mode", to_string(s.mode)}, {"big_cell", s.big_cell},
                {"cell", io::to_json(s.cell)}});
    } else if (which == "transversals") {
      if (ff.groups.size() != f.size()) throw io::InputError("transversals needs a 'groups' entry per line");
      int count = 0;
      for (int gi : ff.groups) {
        if (gi < 0) throw io::InputError("group ids must be non-negative");
        count = std::max(count, gi + 1);
      }
      std::vector<std::vector<int>> members(count);
      for (std::size_t i = 0; i < f.size(); ++i) members[ff.groups[i]].push_back(static_cast<int>(i));
      std::vector<LineFamily> groups;
      for (const auto& m : members) {
        if (m.empty()) throw io::InputError("group ids must be contiguous from 0");
        groups.push_back(f.subfamily(m));
      }
      auto r = check_transversals(groups, g.search());
      j.update({{"groups", count}, {"all_cells", r.all_cells}, {"checked", r.checked}});
      if (!r.all_cells) {
        std::vector<int> lines;
        for (std::size_t gi = 0; gi < r.failing.size(); ++gi) lines.push_back(members[gi][r.failing[gi]]);
        j["failing"] = lines;
        ctx.emit(ctx.stamp(j));
        return kRefuted;
      }
    } else {
      throw io::InputError("unknown variant '" + which + "'");
    }
  } catch (const Infeasible& e) {
    j["infeasible"] = e.what();
    ctx.emit(ctx.stamp(j));
    return kRefuted;
  } catch (const BudgetExceeded&) {
    j["verdict"] = "budget_exceeded";
    ctx.emit(ctx.stamp(j));
    return kBudget;
  } catch (const std::invalid_argument& e) {
    throw io::InputError(which + ": " + e.what());
  }
  ctx.emit(ctx.stamp(j));
  return kOk;
}

// --- render ----------------------------------------------------------------

struct RenderArgs {
  std::string file, output;
  std::vector<std::string> cells;
  std::string emphasize;
  bool max_cell = false;
  double width = 600;
};

int render(Context& ctx, const Globals& g, const RenderArgs& a) {
  auto ff = ctx.family(a.file);
  const auto& f = ff.family;
  SvgOptions opts;
  opts.width = a.width;
  opts.points = ff.points;
  Arrangement arr(f);
  auto highlight = [&](const std::vector<int>& subset) {
    check_indices(subset, f.size());
    auto cell = arr.defines_cell(subset);
    if (!cell) throw io::InputError("lines do not define a cell");
    opts.faces.push_back({subset, cell->signs, "#f4a261"});
    opts.emphasized_lines.insert(opts.emphasized_lines.end(), subset.begin(), subset.end());
  };
  for (const auto& c : a.cells) highlight(parse_indices(c));
  if (a.max_cell) {
    try {
      highlight(max_convex_position(f, std::nullopt, g.search()).witness);
    } catch (const BudgetExceeded&) {
      return kBudget;
    }
  }
  if (!a.emphasize.empty()) {
    auto e = parse_indices(a.emphasize);
    for (int i : e)
      if (i < 0 || static_cast<std::size_t>(i) >= f.size()) throw io::InputError("line index out of range");
    opts.emphasized_lines.insert(opts.emphasized_lines.end(), e.begin(), e.end());
  }
  ctx.emit_text(render_svg(f, opts), a.output);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex position of lines: constructions, searches and certificates", "esl"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs,-j", g.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--budget", g.budget, "maximum convex-position tests (default 1e8 or $ESL_BUDGET)");
  app.add_option("--seed", g.seed, "seed for randomized constructions");

  int rc = kOk;
  std::string command;
  for (const auto& s : args) command += (command.empty() ? "" : " ") + s;
  Context ctx(in, out, "esl " + command);
  std::function<int()> action;

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "census, cups/caps, faces and convex position of a family");
  analyze_cmd->add_option("file", aa.file, "family file ('-' for stdin)");
  analyze_cmd->add_flag("--census", aa.census, "empty-cell census");
  analyze_cmd->add_flag("--mono", aa.mono, "monochromatic census (colored families)");
  analyze_cmd->add_flag("--cupcap", aa.cupcap, "longest cup and cap");
  analyze_cmd->add_flag("--faces", aa.faces, "all faces");
  analyze_cmd->add_flag("--max-convex", aa.max_convex, "largest subset in convex position");
  analyze_cmd->callback([&] { action = [&] { return analyze(ctx, g, aa); }; });

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "write a family file");
  construct_cmd->add_option("kind", ca.kind, "construction")
      ->required()
      ->check(CLI::IsMember({"thm-lower", "prop-lower", "fkl", "fkl-mirror", "no-empty", "no-empty-colored",
                             "ngon", "random"}));
  construct_cmd->add_option("--n", ca.n);
  construct_cmd->add_option("--k", ca.k);
  construct_cmd->add_option("--l", ca.l);
  construct_cmd->add_option("-o,--output", ca.output);
  construct_cmd->callback([&] { action = [&] { return construct(ctx, g, ca); }; });

  std::string search_file;
  int search_cap = 0;
  auto* search_cmd = app.add_subcommand("search", "searches over subsets");
  search_cmd->require_subcommand(1);
  search_cmd->fallthrough();
  auto* max_convex_cmd = search_cmd->add_subcommand("max-convex", "largest subset in convex position");
  max_convex_cmd->add_option("file", search_file);
  max_convex_cmd->add_option("--cap", search_cap, "stop at this size");
  max_convex_cmd->callback([&] { action = [&] { return search_max_convex(ctx, g, search_file, search_cap); }; });

  std::string vfile, vfamily;
  int vn = 0, vwires = 0;
  auto* verify_cmd = app.add_subcommand("verify", "certificates");
  verify_cmd->require_subcommand(1);
  verify_cmd->fallthrough();
  auto* lower_cmd = verify_cmd->add_subcommand("lower-bound", "no n lines of the family are in convex position");
  lower_cmd->add_option("file", vfile);
  lower_cmd->add_option("--n", vn)->required();
  lower_cmd->callback([&] { action = [&] { return verify_lower_bound(ctx, g, vfile, vn); }; });
  auto* upper_cmd = verify_cmd->add_subcommand("esl-upper", "every listed wiring diagram spans an n-cell");
  upper_cmd->add_option("file", vfile);
  upper_cmd->add_option("--n", vn)->required();
  upper_cmd->add_option("--wires", vwires);
  upper_cmd->callback([&] { action = [&] { return verify_esl_upper(ctx, g, vfile, vn, vwires); }; });
  auto* cert_cmd = verify_cmd->add_subcommand("certificate", "re-check a lower-bound certificate");
  cert_cmd->add_option("certificate", vfile)->required();
  cert_cmd->add_option("--family", vfamily)->required();
  cert_cmd->callback([&] { action = [&] { return verify_certificate(ctx, g, vfile, vfamily); }; });

  int wires = 0;
  bool all_classes = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "simple wiring diagrams, one per line");
  enum_cmd->add_option("--wires", wires)->required();
  enum_cmd->add_flag("--all-classes", all_classes, "every commutation class instead of one per symmetry class");
  enum_cmd->callback([&] { action = [&] { return enumerate(ctx, g, wires, all_classes); }; });

  std::string which, var_file, points_file;
  int var_n = -1;
  auto* variant_cmd = app.add_subcommand("variant", "exact-cross, mixed, halfplanes, transversals");
  variant_cmd->add_option("which", which)
      ->required()
      ->check(CLI::IsMember({"exact-cross", "mixed", "halfplanes", "transversals"}));
  variant_cmd->add_option("file", var_file);
  variant_cmd->add_option("--n", var_n);
  variant_cmd->add_option("--points", points_file, "family file whose 'points' are used");
  variant_cmd->callback([&] { action = [&] { return variant(ctx, g, which, var_file, var_n, points_file); }; });

  RenderArgs ra;
  auto* render_cmd = app.add_subcommand("render", "SVG picture of the arrangement");
  render_cmd->add_option("file", ra.file);
  render_cmd->add_option("-o,--output", ra.output);
  render_cmd->add_option("--cell", ra.cells, "comma-separated lines whose cell is shaded");
  render_cmd->add_option("--emphasize", ra.emphasize, "comma-separated lines drawn thicker");
  render_cmd->add_flag("--max-cell", ra.max_cell, "shade a largest cell");
  render_cmd->add_option("--width", ra.width);
  render_cmd->callback([&] { action = [&] { return render(ctx, g, ra); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  if (!action) return kInputError;
  try {
    rc = action();
  } catch (const io::InputError& e) {
    err << "esl: " << e.what() << "\n";
    return kInputError;
  } catch (const GeneralPositionError& e) {
    err << "esl: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "esl: " << e.what() << "\n";
    return kBudget;
  }
  return rc;
}

}  // namespace esl::cli
