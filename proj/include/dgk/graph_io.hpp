#ifndef DGK_GRAPH_IO_HPP
#define DGK_GRAPH_IO_HPP

#include "dgk/graph.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace dgk {

using Json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace detail

inline RotationGraph graph_from_json(const Json& j) {
  using detail::field;
  using detail::int_field;
  const std::string surface = field(j, "surface").get<std::string>();
  SurfaceKind kind;
  if (surface == "torus") kind = SurfaceKind::TorusOrientable;
  else if (surface == "klein") kind = SurfaceKind::KleinBottle;
  else throw SchemaError("surface must be 'torus' or 'klein'");
  const int t = int_field(j, "t");
  const int delta = j.contains("delta") ? int_field(j, "delta") : 5;
  std::vector<Sign> signs;
  for (const Json& v : field(j, "vertices")) {
    const std::string s = field(v, "sign").get<std::string>();
    if (s == "+") signs.push_back(Sign::Plus);
    else if (s == "-") signs.push_back(Sign::Minus);
    else throw SchemaError("vertex sign must be '+' or '-'");
  }
  std::vector<Edge> edges;
  for (const Json& e : field(j, "edges")) {
    Edge ed;
    const Json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) throw SchemaError("edge must have two ends");
    for (int k = 0; k < 2; ++k) ed.ends[k] = {int_field(ends[k], "vertex"), int_field(ends[k], "slot")};
    ed.twist = e.contains("twist") ? int_field(e, "twist") : 0;
    if (e.contains("name")) ed.name = e.at("name").get<std::string>();
    if (e.contains("class")) ed.cls = edge_class_from_string(e.at("class").get<std::string>());
    edges.push_back(std::move(ed));
  }
  std::string ref = j.contains("figure_ref") ? j.at("figure_ref").get<std::string>() : "";
  try {
    return RotationGraph(kind, t, std::move(signs), std::move(edges), std::move(ref), delta);
  } catch (const GraphError& e) {
    throw SchemaError(e.what());
  }
}

inline Json graph_to_json(const RotationGraph& g) {
  Json j;
  j["surface"] = g.surface() == SurfaceKind::TorusOrientable ? "torus" : "klein";
  j["t"] = g.t();
  j["delta"] = g.delta();
  if (!g.figure_ref().empty()) j["figure_ref"] = g.figure_ref();
  j["vertices"] = Json::array();
  for (Sign s : g.signs()) j["vertices"].push_back({{"sign", s == Sign::Plus ? "+" : "-"}});
  j["edges"] = Json::array();
  for (const Edge& e : g.edges()) {
    Json je;
    je["ends"] = Json::array();
    for (const auto& x : e.ends) je["ends"].push_back({{"vertex", x.vertex}, {"slot", x.slot}});
    je["twist"] = e.twist;
    if (!e.name.empty()) je["name"] = e.name;
    if (e.cls) je["class"] = to_string(*e.cls);
    j["edges"].push_back(std::move(je));
  }
  return j;
}

// One edge per line; the layout used by the checked-in graph files.
inline std::string dump_graph(const RotationGraph& g) {
  Json j = graph_to_json(g);
  std::ostringstream o;
  o << "{\n";
  for (const char* key : {"surface", "t", "delta", "figure_ref"})
    if (j.contains(key)) o << " \"" << key << "\": " << j[key].dump() << ",\n";
  o << " \"vertices\": " << j["vertices"].dump(-1, ' ', false) << ",\n";
  o << " \"edges\": [\n";
  for (std::size_t e = 0; e < j["edges"].size(); ++e)
    o << "  " << j["edges"][e].dump() << (e + 1 < j["edges"].size() ? ",\n" : "\n");
  o << " ]\n}\n";
  return o.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

inline RotationGraph load_graph(const std::string& path) {
  try {
    return graph_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

}  // namespace dgk

#endif  // DGK_GRAPH_IO_HPP
