#include "dgk/dgk.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dgk;

namespace {

enum Exit { Ok = 0, Violations = 1, Usage = 2, Budget = 3 };

struct Options {
  std::string format = "text";
  long node_cap = 0;
  std::vector<std::string> inputs;
  std::vector<int> d;
  int t = 2;
  std::string rules = "epsilon";
  int workers = 1;
  std::string golden;
  std::string catalog;
  bool write_golden = false;
  bool pair = false;
  bool print = false;
  std::string context = "GS";
  std::vector<std::string> checks;
  std::vector<int> quintuple, klein_p;
  std::string klein_form, signs = "+-";
};

bool json_out(const Options& o) { return o.format == "json"; }

void need_inputs(const Options& o, std::size_t lo, std::size_t hi) {
  if (o.inputs.size() < lo || o.inputs.size() > hi)
    throw CLI::ValidationError("expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                               " input files, got " + std::to_string(o.inputs.size()));
  for (const auto& f : o.inputs)
    if (!fs::exists(f)) throw SchemaError("cannot read " + f);
}

std::vector<int> jumps(const Options& o) {
  std::vector<int> ds = o.d.empty() ? std::vector<int>{1, 2} : o.d;
  for (int d : ds) check_jump(d);
  return ds;
}

IntMatrix load_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  std::vector<std::vector<long long>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<long long> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(path + ": bad integer '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows[0].size()) throw ParseError(path + ": ragged matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": empty matrix");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Json group_json(const AbelianGroup& g) {
  Json j;
  j["group"] = g.to_string();
  j["free_rank"] = g.free_rank;
  j["torsion"] = Json::array();
  for (const auto& d : g.torsion) j["torsion"].push_back(d.str());
  return j;
}

int cmd_snf(const Options& o) {
  need_inputs(o, 1, 1);
  IntMatrix m = load_matrix(o.inputs[0]);
  auto r = smith_normal_form(to_big(m));
  auto factors = invariant_factors(r.D);
  AbelianGroup g = group_from_factors(m.cols(), factors);
  if (json_out(o)) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["invariant_factors"] = Json::array();
    for (const auto& d : factors) j["invariant_factors"].push_back(d.str());
    j["cokernel"] = g.to_string();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "invariant factors:";
    for (const auto& d : factors) std::cout << " " << d;
    std::cout << "\ncokernel: " << g.to_string() << "\n";
  }
  return Ok;
}

int cmd_group(const Options& o) {
  if (!o.pair) {
    need_inputs(o, 1, 1);
    AbelianGroup g = group_of(load_presentation(o.inputs[0]));
    std::cout << (json_out(o) ? group_json(g).dump() : g.to_string()) << "\n";
    return Ok;
  }
  need_inputs(o, 2, 2);
  RotationGraph gs = load_graph(o.inputs[0]), gt = load_graph(o.inputs[1]);
  auto ds = jumps(o);
  check_pair_parameters(gs, gt);
  Json out = Json::array();
  for (int d : ds) {
    auto res = search_pairs(gs, gt, d, o.node_cap);
    for (std::size_t k = 0; k < res.correspondences.size(); ++k) {
      Presentation p = pair_presentation(gs, gt, res.correspondences[k]);
      AbelianGroup g = group_of(p);
      if (o.print) {
        std::cout << "# d=" << d << " correspondence " << k << ": " << g.to_string() << "\n" << format_presentation(p);
      } else if (json_out(o)) {
        Json j = group_json(g);
        j["d"] = d;
        j["correspondence"] = k;
        out.push_back(j);
      } else {
        std::cout << "d=" << d << " #" << k << ": " << g.to_string() << "\n";
      }
    }
  }
  if (json_out(o) && !o.print) std::cout << out.dump() << "\n";
  return Ok;
}

int cmd_faces(const Options& o) {
  need_inputs(o, 1, 1);
  RotationGraph g = load_graph(o.inputs[0]);
  auto faces = trace_faces(g);
  Json out;
  out["vertices"] = g.num_vertices();
  out["edges"] = g.num_edges();
  out["faces"] = faces.size();
  out["euler_characteristic"] = euler_characteristic(g);
  out["cellular"] = is_cellular(g);
  out["face_list"] = Json::array();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    Json jf;
    jf["degree"] = faces[f].degree();
    jf["edges"] = Json::array();
    for (const auto& tr : faces[f].edges) jf["edges"].push_back(edge_label(g, tr.edge));
    if (g.t() == 2 && is_cellular(g) && faces[f].degree() >= 2) {
      try {
        jf["color"] = to_string(face_color(g, faces[f]));
      } catch (const ColorError&) {
        jf["color"] = "mixed";
      }
    }
    out["face_list"].push_back(jf);
  }
  if (json_out(o)) {
    std::cout << out.dump() << "\n";
    return Ok;
  }
  std::cout << "V=" << g.num_vertices() << " E=" << g.num_edges() << " F=" << faces.size()
            << " chi=" << euler_characteristic(g) << (is_cellular(g) ? "" : " (not cellular)") << "\n";
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Json& jf = out["face_list"][f];
    std::cout << "face " << f << " degree " << jf["degree"].get<int>() << ":";
    for (const auto& e : jf["edges"]) std::cout << " " << e.get<std::string>();
    if (jf.contains("color")) std::cout << " [" << jf["color"].get<std::string>() << "]";
    std::cout << "\n";
  }
  return Ok;
}

void print_violations(const std::vector<Violation>& vs, const Options& o, Json& sink) {
  for (const auto& v : vs) {
    if (json_out(o)) sink.push_back(to_json(v));
    else std::cout << (v.is_branch() ? "branch " : "violation ") << v.lemma_tag << " " << v.subject << ": " << v.detail
                   << "\n";
  }
}

int cmd_check(const Options& o) {
  need_inputs(o, 1, 2);
  RotationGraph a = load_graph(o.inputs[0]);
  Json out = Json::array();
  if (o.inputs.size() == 1) {
    CapContext ctx = parse_cap_context(o.context);
    auto vs = check_parallelism_bounds(a, ctx);
    print_violations(vs, o, out);
    if (json_out(o)) std::cout << out.dump() << "\n";
    else if (vs.empty()) std::cout << "no violations\n";
    return contradictions(vs).empty() ? Ok : Violations;
  }
  RotationGraph b = load_graph(o.inputs[1]);
  auto ds = jumps(o);
  check_pair_parameters(a, b);
  validate_check_names(o.checks);
  long found = 0, clean = 0;
  for (int d : ds) {
    auto res = search_pairs(a, b, d, o.node_cap);
    for (const auto& corr : res.correspondences) {
      ++found;
      auto vs = run_checks(o.checks, a, b, corr);
      bool ok = contradictions(vs).empty();
      if (ok) ++clean;
      if (!json_out(o)) std::cout << "d=" << d << " correspondence " << found - 1 << ": "
                                  << (ok ? "consistent" : std::to_string(contradictions(vs).size()) + " violations") << "\n";
      print_violations(vs, o, out);
    }
  }
  if (json_out(o)) {
    Json j;
    j["correspondences"] = found;
    j["consistent"] = clean;
    j["violations"] = out;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << found << " correspondences, " << clean << " consistent\n";
  }
  return clean > 0 ? Ok : Violations;
}

int cmd_enumerate(const Options& o) {
  if (o.t < 1) throw CLI::ValidationError("--t must be positive");
  auto qs = enumerate_quintuples(o.t, parse_rules(o.rules));
  if (json_out(o)) {
    Json j = Json::array();
    for (const auto& q : qs) j.push_back(q);
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& q : qs) std::cout << to_string(q) << "\n";
  }
  return Ok;
}

int cmd_search(const Options& o) {
  need_inputs(o, 2, 2);
  RotationGraph gs = load_graph(o.inputs[0]), gt = load_graph(o.inputs[1]);
  auto ds = jumps(o);
  check_pair_parameters(gs, gt);
  Json out = Json::array();
  long total = 0, nodes = 0;
  for (int d : ds) {
    auto res = search_pairs(gs, gt, d, o.node_cap);
    nodes += res.nodes;
    for (const auto& c : res.correspondences) {
      ++total;
      Json j;
      j["d"] = d;
      j["map"] = Json::array();
      for (std::size_t e = 0; e < c.map.size(); ++e)
        j["map"].push_back({edge_label(gs, static_cast<int>(e)), edge_label(gt, c.map[e])});
      out.push_back(j);
    }
  }
  if (json_out(o)) {
    Json j;
    j["correspondences_found"] = total;
    j["nodes_explored"] = nodes;
    j["correspondences"] = out;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& j : out) {
      std::cout << "d=" << j["d"].get<int>() << ":";
      for (const auto& p : j["map"]) std::cout << " " << p[0].get<std::string>() << "->" << p[1].get<std::string>();
      std::cout << "\n";
    }
    std::cout << total << " correspondences\n";
  }
  return Ok;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::vector<std::string> lines;
  std::ifstream f(p);
  std::string line;
  while (std::getline(f, line))
    if (!line.empty() && line.rfind("{\"_meta\"", 0) != 0) lines.push_back(line);
  return lines;
}

int cmd_replay(const Options& o) {
  if (o.catalog.empty()) throw CLI::ValidationError("--catalog is required");
  auto files = catalog_files(o.catalog);
  for (const auto& f : files) validate_catalog(f);
  if (!o.golden.empty() && !o.write_golden && !fs::is_directory(o.golden))
    throw SchemaError("golden directory " + o.golden + " not found");
  bool bad = false;
  for (const auto& f : files) {
    CatalogResult r = replay_catalog(f, o.node_cap, o.workers);
    std::vector<std::string> lines;
    for (const auto& rep : r.reports) lines.push_back(rep.to_json().dump());
    if (json_out(o)) {
      Json meta;
      meta["_meta"] = {{"catalog", f.filename().string()}, {"cases", r.reports.size()}};
      std::cout << meta.dump() << "\n";
      for (const auto& l : lines) std::cout << l << "\n";
    } else {
      for (const auto& rep : r.reports) {
        std::cout << rep.case_id << ": " << rep.verdict;
        if (!rep.lemma_tag.empty()) std::cout << " [" << rep.lemma_tag << "]";
        if (rep.group) std::cout << " -> " << *rep.group;
        std::cout << " (" << rep.correspondences_found << " correspondences)\n";
      }
    }
    for (const auto& m : r.expectation_mismatches) {
      std::cerr << f.filename().string() << ": " << m << "\n";
      bad = true;
    }
    if (o.golden.empty()) continue;
    fs::path gpath = fs::path(o.golden) / (f.stem().string() + ".jsonl");
    if (o.write_golden) {
      fs::create_directories(o.golden);
      std::ofstream g(gpath);
      for (const auto& l : lines) g << l << "\n";
      continue;
    }
    if (!fs::exists(gpath)) {
      std::cerr << "missing golden " << gpath.string() << "\n";
      bad = true;
      continue;
    }
    auto want = read_lines(gpath);
    for (std::size_t k = 0; k < std::max(want.size(), lines.size()); ++k) {
      std::string w = k < want.size() ? want[k] : "<none>", g = k < lines.size() ? lines[k] : "<none>";
      if (w == g) continue;
      std::cerr << gpath.string() << ":" << k + 1 << "\n  golden: " << w << "\n  actual: " << g << "\n";
      bad = true;
    }
  }
  return bad ? Violations : Ok;
}

int cmd_build(const Options& o) {
  RotationGraph g = [&] {
    if (!o.quintuple.empty()) {
      if (o.quintuple.size() != 5) throw CLI::ValidationError("--quintuple needs five entries");
      if (o.signs.size() != 2 || o.signs.find_first_not_of("+-") != std::string::npos)
        throw CLI::ValidationError("--signs must be two of '+'/'-'");
      std::array<Sign, 2> s{o.signs[0] == '+' ? Sign::Plus : Sign::Minus, o.signs[1] == '+' ? Sign::Plus : Sign::Minus};
      return build_quintuple_graph({o.quintuple[0], o.quintuple[1], o.quintuple[2], o.quintuple[3], o.quintuple[4]}, o.t,
                                   s);
    }
    if (o.klein_p.size() != 3 || (o.klein_form != "H" && o.klein_form != "H'"))
      throw CLI::ValidationError("give --quintuple, or --klein H|H' with --p p0,p1,p2");
    return build_klein_graph(o.klein_form == "H" ? KleinForm::H : KleinForm::HPrime, o.klein_p[0], o.klein_p[1],
                             o.klein_p[2], o.t);
  }();
  std::cout << dump_graph(g);
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgk: fat-graph pair checker for toroidal Dehn fillings"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--node-cap", o.node_cap, "backtrack node budget (default $DGK_NODE_CAP or 1e7)")
        ->check(CLI::PositiveNumber);
  };
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
  auto* group = app.add_subcommand("group", "homology of a presentation file, or of a graph pair with --pair");
  auto* faces = app.add_subcommand("faces", "face walks of a graph file");
  auto* check = app.add_subcommand("check", "parallelism caps of one graph, or consistency checks of a pair");
  auto* enumerate = app.add_subcommand("enumerate", "canonical quintuples for --t under --rules");
  auto* search = app.add_subcommand("search", "edge correspondences between two graphs");
  auto* replay = app.add_subcommand("replay", "replay a case catalog and compare with golden reports");
  auto* build = app.add_subcommand("build", "print the graph of a quintuple or one-vertex Klein family");
  for (auto* s : {snf, group, faces, check, enumerate, search, replay, build}) common(s);
  for (auto* s : {snf, group, faces, check, search}) s->add_option("inputs", o.inputs, "input files");
  for (auto* s : {group, check, search}) s->add_option("--d", o.d, "jumping number (repeatable; default 1 and 2)");
  group->add_flag("--pair", o.pair, "inputs are G_S and G_T graph files");
  group->add_flag("--print", o.print, "with --pair, print each presentation instead of its group");
  check->add_option("--context", o.context, "cap context for a single graph: GS, GT_allSameSign or GP");
  check->add_option("--checks", o.checks, "pair checks: bigon_color, census, gs_caps, gt_caps, gp_caps, scharlemann")
      ->delimiter(',');
  enumerate->add_option("--t", o.t, "label range");
  enumerate->add_option("--rules", o.rules, "comma list of epsilon, caps, or none");
  replay->add_option("--catalog", o.catalog, "catalog file or directory");
  replay->add_option("--golden", o.golden, "directory of golden .jsonl reports");
  replay->add_option("--workers", o.workers, "concurrent cases")->check(CLI::PositiveNumber);
  replay->add_flag("--write-golden", o.write_golden, "write reports into the golden directory");
  build->add_option("--t", o.t, "label range");
  build->add_option("--quintuple", o.quintuple, "a0,a1,a2,a3,a4")->delimiter(',');
  build->add_option("--signs", o.signs, "vertex signs, e.g. +- or ++");
  build->add_option("--klein", o.klein_form, "H or H'");
  build->add_option("--p", o.klein_p, "p0,p1,p2")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }
  if (o.node_cap <= 0) o.node_cap = default_node_cap();
  try {
    if (*snf) return cmd_snf(o);
    if (*group) return cmd_group(o);
    if (*faces) return cmd_faces(o);
    if (*check) return cmd_check(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*search) return cmd_search(o);
    if (*replay) return cmd_replay(o);
    if (*build) return cmd_build(o);
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Budget;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}
