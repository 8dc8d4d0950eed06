#ifndef DGK_REPLAY_HPP
#define DGK_REPLAY_HPP

#include "dgk/constraints.hpp"
#include "dgk/enumeration.hpp"
#include "dgk/graph_io.hpp"
#include "dgk/homology.hpp"
#include "dgk/pair.hpp"

#include <filesystem>
#include <future>
#include <set>
#include <string>
#include <vector>

namespace dgk {

namespace fs = std::filesystem;

struct CaseReport {
  std::string case_id;
  std::string verdict;  // "eliminated" or "survives"
  std::string lemma_tag;  // distinct contradiction tags joined by ';'
  long correspondences_found = 0;
  long nodes_explored = 0;
  std::optional<std::string> group;
  std::optional<std::string> group_transcribed;

  Json to_json() const {
    Json j;
    j["case_id"] = case_id;
    j["verdict"] = verdict;
    j["lemma_tag"] = lemma_tag;
    j["correspondences_found"] = correspondences_found;
    j["nodes_explored"] = nodes_explored;
    if (group) j["group"] = *group;
    if (group_transcribed) j["group_transcribed"] = *group_transcribed;
    return j;
  }
};

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph given by file, by quintuple or by one-vertex Klein family.
inline RotationGraph graph_from_spec(const Json& spec, const fs::path& base) {
  if (spec.contains("file")) return load_graph((base / spec.at("file").get<std::string>()).string());
  const int t = detail::int_field(spec, "t");
  if (spec.contains("quintuple")) {
    auto v = spec.at("quintuple").get<std::vector<int>>();
    if (v.size() != 5) throw CatalogError("quintuple needs five entries");
    std::array<Sign, 2> signs{Sign::Plus, Sign::Minus};
    if (spec.contains("signs")) {
      auto s = spec.at("signs").get<std::string>();
      if (s.size() != 2) throw CatalogError("signs must name two vertices");
      for (int k = 0; k < 2; ++k) signs[k] = s[k] == '-' ? Sign::Minus : Sign::Plus;
    }
    return build_quintuple_graph({v[0], v[1], v[2], v[3], v[4]}, t, signs);
  }
  if (spec.contains("klein")) {
    auto form = spec.at("klein").get<std::string>();
    auto p = spec.at("p").get<std::vector<int>>();
    if (p.size() != 3) throw CatalogError("klein family needs p0,p1,p2");
    if (form != "H" && form != "H'") throw CatalogError("klein form must be H or H'");
    return build_klein_graph(form == "H" ? KleinForm::H : KleinForm::HPrime, p[0], p[1], p[2], t);
  }
  throw CatalogError("graph spec needs 'file', 'quintuple' or 'klein'");
}

inline std::vector<Json> as_list(const Json& j) {
  if (j.is_array()) return {j.begin(), j.end()};
  return {j};
}

inline std::vector<int> jumps_of(const Json& c) {
  std::vector<int> ds = c.contains("d") ? c.at("d").get<std::vector<int>>() : std::vector<int>{1, 2};
  for (int d : ds) check_jump(d);
  return ds;
}

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"bigon_color", "census", "gt_caps", "gs_caps", "gp_caps", "scharlemann"};
  return names;
}

inline void validate_check_names(const std::vector<std::string>& checks) {
  for (const auto& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw CatalogError("unknown check '" + c + "'");
}

// Checks applied to each correspondence of a pair search; branch tags are kept.
inline std::vector<Violation> run_checks(const std::vector<std::string>& checks, const RotationGraph& gs,
                                         const RotationGraph& gt, const EdgeCorrespondence& c) {
  std::vector<Violation> out;
  auto append = [&](std::vector<Violation> v) { out.insert(out.end(), v.begin(), v.end()); };
  for (const auto& name : checks) {
    if (name == "bigon_color") {
      auto q = quintuple_of(gs);
      if (!q) throw CatalogError("bigon_color needs class labels on G_S");
      append(bigon_color_constraints(face_census(gs, gt, c), class_adjacency(*q)));
    } else if (name == "census") {
      append(face_census_feasible(face_census(gs, gt, c)));
    } else if (name == "gt_caps") {
      append(check_parallelism_bounds(gt, CapContext::GT_allSameSign));
    } else if (name == "gs_caps") {
      bool same = std::all_of(gt.signs().begin(), gt.signs().end(), [&](Sign s) { return s == gt.sign(0); });
      append(check_parallelism_bounds(gs, CapContext::GS, same));
    } else if (name == "gp_caps") {
      append(check_parallelism_bounds(gs, CapContext::GP));
    } else if (name == "scharlemann") {
      auto rp = realize(gs, gt, c);
      auto inv = c.inverse();
      for (const auto& sc : scharlemann_cycles(rp.gs, &rp.gt, &rp.map))
        if (sc.essential && !*sc.essential)
          out.push_back({"scharlemann", "scharlemann.inessential", "face " + std::to_string(sc.face),
                         "cycle is null-homologous in the partner"});
      for (const auto& sc : scharlemann_cycles(rp.gt, &rp.gs, &inv))
        if (sc.essential && !*sc.essential)
          out.push_back({"scharlemann", "scharlemann.inessential", "face " + std::to_string(sc.face),
                         "cycle is null-homologous in the partner"});
    } else {
      throw CatalogError("unknown check '" + name + "'");
    }
  }
  return out;
}

inline std::string join_tags(const std::vector<std::string>& tags) {
  std::string s;
  for (const auto& t : tags) s += (s.empty() ? "" : ";") + t;
  return s;
}

inline void add_tag(std::vector<std::string>& tags, const std::string& t) {
  if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
}

inline std::string join_groups(const std::set<std::string>& gs) {
  std::string s;
  for (const auto& g : gs) s += (s.empty() ? "" : "; ") + g;
  return s;
}

inline CaseReport replay_pair_search(const Json& c, const fs::path& base, long cap) {
  CaseReport r;
  r.case_id = c.at("id").get<std::string>();
  RotationGraph gs = graph_from_spec(c.at("gs"), base);
  std::vector<std::string> checks;
  if (c.contains("checks")) checks = c.at("checks").get<std::vector<std::string>>();
  const bool homology = c.contains("homology") && c.at("homology").get<bool>();
  std::vector<std::string> tags, branches;
  std::set<std::string> groups;
  bool survives = false;
  for (const Json& gspec : as_list(c.at("gt"))) {
    RotationGraph gt = graph_from_spec(gspec, base);
    long found = 0;
    std::set<std::string> cand_tags;
    for (int d : jumps_of(c)) {
      auto res = search_pairs(gs, gt, d, cap);
      r.nodes_explored += res.nodes;
      found += static_cast<long>(res.correspondences.size());
      for (const auto& corr : res.correspondences) {
        auto all = run_checks(checks, gs, gt, corr);
        auto v = contradictions(all);
        if (v.empty()) {
          survives = true;
          if (homology) groups.insert(group_of(pair_presentation(gs, gt, corr)).to_string());
          for (const auto& x : all) add_tag(branches, x.lemma_tag);
        }
        for (const auto& x : v) cand_tags.insert(x.lemma_tag);
      }
    }
    r.correspondences_found += found;
    if (found == 0) cand_tags.insert("search.no_correspondence");
    for (const auto& t : cand_tags) add_tag(tags, t);
  }
  r.verdict = survives ? "survives" : "eliminated";
  r.lemma_tag = join_tags(survives ? branches : tags);
  if (survives && homology) r.group = join_groups(groups);
  if (c.contains("presentation"))
    r.group_transcribed = group_of(load_presentation((base / c.at("presentation").get<std::string>()).string())).to_string();
  return r;
}

inline CaseReport replay_derive(const Json& c, const fs::path& base, long cap) {
  CaseReport r;
  r.case_id = c.at("id").get<std::string>();
  RotationGraph known = graph_from_spec(c.at("known"), base);
  const int s = detail::int_field(c, "partner_vertices");
  for (int d : jumps_of(c)) {
    auto partners = derive_partners(known, s, d, cap);
    r.nodes_explored += static_cast<long>(partners.size());
    for (const auto& p : partners) r.correspondences_found += admissible_partner(known, p);
  }
  if (r.correspondences_found == 0) {
    r.verdict = "eliminated";
    r.lemma_tag = "derive.no_partner";
    return r;
  }
  std::vector<std::string> tags, branches;
  if (c.contains("context"))
    for (const auto& v : check_parallelism_bounds(known, parse_cap_context(c.at("context").get<std::string>())))
      add_tag(v.is_branch() ? branches : tags, v.lemma_tag);
  r.verdict = tags.empty() ? "survives" : "eliminated";
  r.lemma_tag = join_tags(tags.empty() ? branches : tags);
  return r;
}

// Checks the one-generator reduction against the full presentation on a parameter grid
// and reports where the group is infinite.
inline CaseReport replay_parametric(const Json& c) {
  CaseReport r;
  r.case_id = c.at("id").get<std::string>();
  const std::string name = c.at("family").get<std::string>();
  ParametricFamily f = parse_family(name);
  const int range = c.contains("range") ? detail::int_field(c, "range") : 20;
  std::vector<std::string> infinite;
  for (int a = -range; a <= range; ++a)
    for (int b = -range; b <= range; ++b) {
      if (std::gcd(a, b) != 1) continue;
      if (parametric_group(f, a, b).free_rank > 0)
        infinite.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  r.verdict = "survives";
  std::string g = "Z/|" + name + "|";
  if (!infinite.empty()) {
    g += ", infinite at";
    for (const auto& x : infinite) g += " " + x;
  }
  r.group = g;
  return r;
}

inline CaseReport replay_census(const Json& c) {
  CaseReport r;
  r.case_id = c.at("id").get<std::string>();
  FaceCensus fc;
  fc.t = detail::int_field(c, "t");
  fc.D = detail::int_field(c, "D");
  fc.D2 = detail::int_field(c, "D2");
  fc.D3 = detail::int_field(c, "D3");
  auto v = face_census_feasible(fc);
  r.verdict = v.empty() ? "survives" : "eliminated";
  std::vector<std::string> tags;
  for (const auto& x : v) add_tag(tags, x.lemma_tag);
  r.lemma_tag = join_tags(tags);
  return r;
}

inline CaseReport replay_case(const Json& c, const fs::path& base, long cap) {
  const std::string kind = c.at("kind").get<std::string>();
  if (kind == "pair_search") return replay_pair_search(c, base, cap);
  if (kind == "derive") return replay_derive(c, base, cap);
  if (kind == "parametric") return replay_parametric(c);
  if (kind == "census") return replay_census(c);
  if (kind == "external") {
    CaseReport r;
    r.case_id = c.at("id").get<std::string>();
    r.verdict = "eliminated";
    r.lemma_tag = "external.citation";
    return r;
  }
  throw CatalogError("unknown case kind '" + kind + "'");
}

struct CatalogResult {
  fs::path file;
  std::vector<CaseReport> reports;
  std::vector<std::string> expectation_mismatches;
};

inline Json load_catalog(const fs::path& file) {
  Json j = read_json_file(file.string());
  if (!j.contains("cases") || !j.at("cases").is_array()) throw CatalogError(file.string() + ": missing 'cases' array");
  std::set<std::string> ids;
  for (const Json& c : j.at("cases")) {
    if (!c.contains("id") || !c.contains("kind")) throw CatalogError(file.string() + ": case without id or kind");
    if (!ids.insert(c.at("id").get<std::string>()).second)
      throw CatalogError(file.string() + ": duplicate case id " + c.at("id").get<std::string>());
  }
  return j;
}

// Parses every graph, presentation and parameter of a catalog without searching.
inline void validate_catalog(const fs::path& file) {
  Json cat = load_catalog(file);
  const fs::path base = file.parent_path();
  for (const Json& c : cat.at("cases")) {
    const std::string id = c.at("id").get<std::string>();
    try {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "pair_search") {
        RotationGraph gs = graph_from_spec(c.at("gs"), base);
        for (const Json& g : as_list(c.at("gt"))) check_pair_parameters(gs, graph_from_spec(g, base));
        jumps_of(c);
        if (c.contains("checks")) validate_check_names(c.at("checks").get<std::vector<std::string>>());
        if (c.contains("presentation")) load_presentation((base / c.at("presentation").get<std::string>()).string());
      } else if (kind == "derive") {
        graph_from_spec(c.at("known"), base);
        detail::int_field(c, "partner_vertices");
        jumps_of(c);
        if (c.contains("context")) parse_cap_context(c.at("context").get<std::string>());
      } else if (kind == "parametric") {
        parse_family(c.at("family").get<std::string>());
      } else if (kind == "census") {
        for (const char* k : {"t", "D", "D2", "D3"}) detail::int_field(c, k);
      } else if (kind != "external") {
        throw CatalogError("unknown case kind '" + kind + "'");
      }
    } catch (const std::exception& e) {
      throw CatalogError(file.string() + ": case " + id + ": " + e.what());
    }
  }
}

// Cases run concurrently on up to `workers` threads; reports keep catalog order.
inline CatalogResult replay_catalog(const fs::path& file, long cap, int workers = 1) {
  Json cat = load_catalog(file);
  const fs::path base = file.parent_path();
  const auto& cases = cat.at("cases");
  CatalogResult out;
  out.file = file;
  out.reports.resize(cases.size());
  workers = std::max(1, workers);
  for (std::size_t start = 0; start < cases.size(); start += workers) {
    std::vector<std::future<CaseReport>> batch;
    for (std::size_t k = start; k < std::min(cases.size(), start + workers); ++k)
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 [&, k] { return replay_case(cases[k], base, cap); }));
    for (std::size_t k = 0; k < batch.size(); ++k) out.reports[start + k] = batch[k].get();
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    if (!cases[k].contains("expect")) continue;
    const Json& e = cases[k].at("expect");
    const CaseReport& r = out.reports[k];
    auto mismatch = [&](const std::string& what, const std::string& want, const std::string& got) {
      out.expectation_mismatches.push_back(r.case_id + ": " + what + " expected '" + want + "' got '" + got + "'");
    };
    if (e.contains("verdict") && e.at("verdict").get<std::string>() != r.verdict)
      mismatch("verdict", e.at("verdict").get<std::string>(), r.verdict);
    if (e.contains("lemma_tag") && e.at("lemma_tag").get<std::string>() != r.lemma_tag)
      mismatch("lemma_tag", e.at("lemma_tag").get<std::string>(), r.lemma_tag);
    if (e.contains("group") && e.at("group").get<std::string>() != r.group.value_or(""))
      mismatch("group", e.at("group").get<std::string>(), r.group.value_or(""));
    if (r.group && r.group_transcribed && *r.group != *r.group_transcribed)
      mismatch("transcribed group", *r.group_transcribed, *r.group);
  }
  return out;
}

inline std::vector<fs::path> catalog_files(const fs::path& p) {
  std::vector<fs::path> files;
  if (fs::is_directory(p)) {
    for (const auto& e : fs::directory_iterator(p))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(p);
  }
  if (files.empty()) throw CatalogError("no catalog files under " + p.string());
  return files;
}

}  // namespace dgk

#endif  // DGK_REPLAY_HPP
