#ifndef DGK_CONSTRAINTS_HPP
#define DGK_CONSTRAINTS_HPP

#include "dgk/graph.hpp"
#include "dgk/graph_io.hpp"
#include "dgk/pair.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dgk {

// Tags starting with "branch." mark a case split rather than a contradiction.
struct Violation {
  std::string checker;
  std::string lemma_tag;
  std::string subject;
  std::string detail;

  bool is_branch() const { return lemma_tag.rfind("branch.", 0) == 0; }
  bool operator==(const Violation&) const = default;
  auto operator<=>(const Violation&) const = default;
};

inline Json to_json(const Violation& v) {
  return {{"checker", v.checker}, {"lemma_tag", v.lemma_tag}, {"subject", v.subject}, {"detail", v.detail}};
}

inline std::vector<Violation> contradictions(const std::vector<Violation>& vs) {
  std::vector<Violation> out;
  for (const auto& v : vs)
    if (!v.is_branch()) out.push_back(v);
  return out;
}

// ---- jumping order -------------------------------------------------------

inline int check_jump(int d) {
  if (d != 1 && d != 2) throw std::invalid_argument("jumping number must be 1 or 2");
  return d;
}

// k -> d*k (mod 5) on the point indices 1..5, written with 5 for 0.
inline std::array<int, 5> jumping_permutation(int d) {
  std::array<int, 5> p{};
  for (int k = 1; k <= 5; ++k) p[k - 1] = (d * k - 1) % 5 + 1;
  return p;
}

// Cyclic order a_d, a_2d, ..., a_5d of the five points, rotated to start at a_1.
// Interleaved: the ten points of two consecutive partner vertices.
inline std::vector<std::string> jumping_order(int d, bool interleaved) {
  check_jump(d);
  std::vector<int> seq;
  for (int k = 0; k < 5; ++k) seq.push_back((d * k) % 5 + 1);
  std::vector<std::string> out;
  for (int k : seq) {
    out.push_back("a" + std::to_string(k));
    if (interleaved) out.push_back("b" + std::to_string(k));
  }
  return out;
}

// ---- pair rules ----------------------------------------------------------

inline void check_bijection(const std::vector<int>& map, int n) {
  if (!is_permutation(map, n)) throw PairError("correspondence is not a bijection on edges");
}

inline std::vector<Violation> check_parity_rule(const RotationGraph& a, const RotationGraph& b,
                                                const std::vector<int>& map) {
  check_bijection(map, b.num_edges());
  if (a.num_edges() != b.num_edges()) throw PairError("graphs have different edge counts");
  std::vector<Violation> out;
  for (int e = 0; e < a.num_edges(); ++e)
    if (edge_sign(a, e) == edge_sign(b, map[e]))
      out.push_back({"parity", "parity", edge_label(a, e) + "~" + edge_label(b, map[e]),
                     std::string("both ") + to_string(edge_sign(a, e))});
  return out;
}

// ---- parallel families ---------------------------------------------------

struct ParallelFamily {
  std::vector<int> edges;  // successive parallels
  std::array<int, 2> endpoints{};
  EdgeSign sign = EdgeSign::Positive;
  std::optional<EdgeClass> cls;
  bool loop = false;

  int size() const { return static_cast<int>(edges.size()); }
};

struct Bigon {
  int face;
  std::array<int, 2> edges;
};

inline std::vector<Bigon> bigons(const std::vector<FaceWalk>& faces) {
  std::vector<Bigon> out;
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (faces[f].degree() == 2 && faces[f].edges[0].edge != faces[f].edges[1].edge)
      out.push_back({static_cast<int>(f), {faces[f].edges[0].edge, faces[f].edges[1].edge}});
  return out;
}

// Maximal chains of edges joined by bigon faces, each listed in chain order.
inline std::vector<ParallelFamily> parallel_families(const RotationGraph& g) {
  const int E = g.num_edges();
  std::vector<std::vector<int>> adj(E);
  for (const Bigon& b : bigons(trace_faces(g))) {
    adj[b.edges[0]].push_back(b.edges[1]);
    adj[b.edges[1]].push_back(b.edges[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> comp(E, -1);
  std::vector<std::vector<int>> members;
  for (int e = 0; e < E; ++e) {
    if (comp[e] != -1) continue;
    std::vector<int> stack{e}, m;
    comp[e] = static_cast<int>(members.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      m.push_back(x);
      for (int y : adj[x])
        if (comp[y] == -1) {
          comp[y] = comp[e];
          stack.push_back(y);
        }
    }
    std::sort(m.begin(), m.end());
    members.push_back(std::move(m));
  }
  std::vector<ParallelFamily> out;
  for (const auto& m : members) {
    int start = m[0];
    for (int x : m)
      if (adj[x].size() <= 1) {
        start = x;
        break;
      }
    ParallelFamily fam;
    std::set<int> seen;
    for (int cur = start; cur != -1;) {
      fam.edges.push_back(cur);
      seen.insert(cur);
      int next = -1;
      for (int y : adj[cur])
        if (!seen.count(y)) {
          next = y;
          break;
        }
      cur = next;
    }
    if (fam.edges.size() != m.size()) fam.edges = m;  // not a simple chain; keep index order
    const Edge& e0 = g.edge(fam.edges[0]);
    fam.endpoints = {std::min(e0.ends[0].vertex, e0.ends[1].vertex), std::max(e0.ends[0].vertex, e0.ends[1].vertex)};
    fam.sign = edge_sign(g, fam.edges[0]);
    fam.loop = g.is_loop(fam.edges[0]);
    fam.cls = e0.cls;
    for (int x : fam.edges)
      if (g.edge(x).cls != fam.cls) fam.cls.reset();
    out.push_back(std::move(fam));
  }
  return out;
}

inline std::vector<int> family_index(const RotationGraph& g, const std::vector<ParallelFamily>& fams) {
  std::vector<int> idx(g.num_edges(), -1);
  for (std::size_t f = 0; f < fams.size(); ++f)
    for (int e : fams[f].edges) idx[e] = static_cast<int>(f);
  return idx;
}

// Number of mutually non-parallel edges joining v and w.
inline int nu(const RotationGraph& g, int v, int w) {
  std::array<int, 2> key{std::min(v, w), std::max(v, w)};
  int n = 0;
  for (const auto& f : parallel_families(g))
    if (f.endpoints == key) ++n;
  return n;
}

inline std::vector<Violation> check_double_parallel(const RotationGraph& a, const RotationGraph& b,
                                                    const std::vector<int>& map) {
  check_bijection(map, b.num_edges());
  auto fa = family_index(a, parallel_families(a));
  auto fb = family_index(b, parallel_families(b));
  std::vector<Violation> out;
  for (int x = 0; x < a.num_edges(); ++x)
    for (int y = x + 1; y < a.num_edges(); ++y)
      if (fa[x] == fa[y] && fb[map[x]] == fb[map[y]])
        out.push_back({"double_parallel", "double_parallel",
                       edge_label(a, x) + "," + edge_label(a, y), "parallel in both graphs"});
  return out;
}

// ---- associated permutation ----------------------------------------------

struct AssociatedPermutation {
  int h = 0;  // normalized to min(h, t-h)
  bool single_orbit = false;
};

inline AssociatedPermutation shift_permutation(int h, int t) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  int r = pmod(h, t);
  return {r == 0 ? 0 : std::min(r, t - r), std::gcd(r, t) == 1};
}

// Orbit count of k -> k+h (mod t), by walking the orbits.
inline int shift_orbit_count(int h, int t) {
  std::vector<char> seen(t, 0);
  int orbits = 0;
  for (int k = 0; k < t; ++k) {
    if (seen[k]) continue;
    ++orbits;
    for (int x = k; !seen[x]; x = pmod(x + h, t)) seen[x] = 1;
  }
  return orbits;
}

// The ends of successive parallels are matched through the corners of the bigons
// between them; each edge is read from its end on the first edge's side.
inline AssociatedPermutation associated_permutation(const RotationGraph& g, const ParallelFamily& fam) {
  const int t = g.t();
  if (fam.edges.empty()) throw GraphError("empty family");
  auto faces = trace_faces(g);
  std::vector<int> start;
  if (g.is_loop(fam.edges[0])) start.push_back(2 * fam.edges[0]);
  else start.push_back(2 * fam.edges[0] + (g.vertex_of(2 * fam.edges[0]) == fam.endpoints[0] ? 0 : 1));
  for (std::size_t k = 0; k + 1 < fam.edges.size(); ++k) {
    int a = fam.edges[k], b = fam.edges[k + 1], next = -1;
    for (const auto& f : faces) {
      if (f.degree() != 2) continue;
      std::set<int> es{f.edges[0].edge, f.edges[1].edge};
      if (es != std::set<int>{a, b}) continue;
      for (const Corner& c : f.corners) {
        if (c.in_end == start.back()) next = c.out_end;
        if (c.out_end == start.back()) next = c.in_end;
      }
      if (next != -1) break;
    }
    if (next == -1 || RotationGraph::edge_of(next) != b) throw GraphError("family is not a chain of bigons");
    start.push_back(next);
  }
  int h = -1;
  for (int s : start) {
    int d = pmod(g.label(RotationGraph::partner(s)) - g.label(s), t);
    if (h == -1) h = d;
    else if (h != d) throw GraphError("family labels are not a shift permutation");
  }
  return shift_permutation(h, t);
}

// ---- parallelism caps ----------------------------------------------------

enum class CapContext { GS, GT_allSameSign, GP };

inline CapContext parse_cap_context(const std::string& s) {
  if (s == "GS") return CapContext::GS;
  if (s == "GT_allSameSign") return CapContext::GT_allSameSign;
  if (s == "GP") return CapContext::GP;
  throw std::invalid_argument("unknown parallelism context '" + s + "'");
}

inline std::string family_subject(const RotationGraph& g, const ParallelFamily& f) {
  std::string s = "{";
  for (std::size_t k = 0; k < f.edges.size(); ++k) s += (k ? "," : "") + edge_label(g, f.edges[k]);
  return s + "}";
}

// partner_same_sign: whether every vertex of the partner graph has one sign, when known.
inline std::vector<Violation> check_parallelism_bounds(const RotationGraph& g, CapContext ctx,
                                                       std::optional<bool> partner_same_sign = std::nullopt) {
  const int t = g.t();
  std::vector<Violation> out;
  const auto fams = parallel_families(g);
  bool any_positive = false;
  for (int e = 0; e < g.num_edges(); ++e) any_positive |= edge_sign(g, e) == EdgeSign::Positive;
  auto add = [&](const ParallelFamily& f, const char* tag, std::string detail) {
    out.push_back({"parallelism", tag, family_subject(g, f), std::move(detail)});
  };
  for (const auto& f : fams) {
    const int n = f.size();
    const bool pos = f.sign == EdgeSign::Positive;
    const std::string sz = "size " + std::to_string(n) + ", t=" + std::to_string(t);
    switch (ctx) {
      case CapContext::GS:
        if (t >= 3 && pos && 2 * n > t + 2) add(f, "cap.positive.gs", sz + " exceeds t/2+1");
        if (t >= 4 && n > 2 * t) add(f, "cap.family.2t", sz + " exceeds 2t");
        if (t >= 3 && !pos && n > t) {
          if (partner_same_sign && !*partner_same_sign)
            add(f, "cap.negative.gs", sz + " exceeds t but partner vertices differ in sign");
          try {
            if (!associated_permutation(g, f).single_orbit)
              add(f, "cap.negative.gs", sz + " exceeds t but the associated permutation has several orbits");
          } catch (const GraphError& e) {
            add(f, "cap.negative.gs", sz + " exceeds t; " + e.what());
          }
        }
        break;
      case CapContext::GT_allSameSign:
        if (n > 3) add(f, "cap.gt.three", sz + " exceeds 3");
        break;
      case CapContext::GP:
        if (t >= 4 && n > 2 * t) add(f, "cap.family.2t", sz + " exceeds 2t");
        if (t >= 3 && pos) {
          if (2 * n > t + 4) add(f, "cap.positive.gp", sz + " exceeds t/2+2");
          else if (2 * n == t + 4) {
            add(f, "branch.klein_beta", sz + " attains t/2+2");
            if (t % 4 != 0) add(f, "cap.positive.gp", sz + " attains t/2+2 with t not divisible by 4");
          }
        }
        if (t >= 2 && any_positive && !pos && n > t) add(f, "cap.negative.gp", sz + " exceeds t with a positive edge present");
        break;
    }
  }
  return out;
}

// ---- epsilon rule --------------------------------------------------------

using EpsilonVector = std::array<int, 4>;

// Class sizes alpha_1..alpha_4 (q[1..4]); eps_i = 0 when the class becomes loops in the partner.
inline bool epsilon_feasible(const Quintuple& q, const EpsilonVector& eps) {
  for (int i = 0; i < 4; ++i) {
    if (eps[i] != 0 && eps[i] != 1) return false;
    if (q[i + 1] > (eps[i] == 0 ? 2 : 4)) return false;
  }
  for (int i = 1; i < 4; ++i)
    if ((q[i + 1] + eps[i]) % 2 != (q[1] + eps[0]) % 2) return false;
  return true;
}

inline std::vector<EpsilonVector> feasible_epsilons(const Quintuple& q) {
  std::vector<EpsilonVector> out;
  for (int m = 0; m < 16; ++m) {
    EpsilonVector e{m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1};
    if (epsilon_feasible(q, e)) out.push_back(e);
  }
  return out;
}

// The epsilon vector a correspondence actually realizes.
inline EpsilonVector epsilon_of(const RotationGraph& gs, const RotationGraph& gt, const std::vector<int>& map) {
  EpsilonVector eps{-1, -1, -1, -1};
  for (int e = 0; e < gs.num_edges(); ++e) {
    const auto& c = gs.edge(e).cls;
    if (!c || *c == EdgeClass::Loop) continue;
    int i = static_cast<int>(*c);
    int v = gt.is_loop(map[e]) ? 0 : 1;
    if (eps[i] == -1) eps[i] = v;
    else if (eps[i] != v) throw PairError("edge class splits between loops and non-loops");
  }
  for (int& x : eps)
    if (x == -1) x = 1;
  return eps;
}

// ---- face census ---------------------------------------------------------

struct CensusFace {
  int degree = 0;
  std::optional<Color> color;
  std::vector<EdgeClass> labels;  // edge class labels in boundary order
};

struct FaceCensus {
  int t = 0;
  int D = 0, D2 = 0, D3 = 0;
  std::vector<CensusFace> faces;
};

inline FaceCensus census_from_faces(int t, std::vector<CensusFace> faces) {
  FaceCensus c;
  c.t = t;
  c.D = static_cast<int>(faces.size());
  for (const auto& f : faces) {
    c.D2 += f.degree == 2;
    c.D3 += f.degree == 3;
  }
  c.faces = std::move(faces);
  return c;
}

// Census of G_T's faces, labelled by the classes of the matching G_S edges. Colours are
// read off the realized labels when G_S has two vertices.
inline FaceCensus face_census(const RotationGraph& gs, const RotationGraph& gt, const EdgeCorrespondence& c) {
  auto rp = realize(gs, gt, c);
  auto inv = c.inverse();
  if (!is_cellular(rp.gt)) throw GraphError("face census needs a graph with only disk faces");
  std::vector<CensusFace> faces;
  for (const auto& fw : trace_faces(rp.gt)) {
    CensusFace cf;
    cf.degree = fw.degree();
    if (rp.gt.t() == 2) cf.color = face_color(rp.gt, fw);
    for (const auto& tr : fw.edges) {
      const auto& cls = gs.edge(inv[tr.edge]).cls;
      if (!cls) throw GraphError("G_S edges carry no class labels");
      cf.labels.push_back(*cls);
    }
    faces.push_back(std::move(cf));
  }
  return census_from_faces(gt.num_vertices(), std::move(faces));
}

inline std::vector<Violation> face_census_feasible(const FaceCensus& c) {
  std::vector<Violation> out;
  const int t = c.t;
  auto add = [&](const char* tag, std::string detail) {
    out.push_back({"census", tag, "t=" + std::to_string(t), std::move(detail)});
  };
  if (c.D != 4 * t) add("census.D", "D=" + std::to_string(c.D) + ", expected 4t=" + std::to_string(4 * t));
  if (c.D2 < 2 * t) add("census.D2", "D2=" + std::to_string(c.D2) + " < 2t");
  if (2 * c.D2 + c.D3 < 6 * t) add("census.2D2+D3", "2D2+D3=" + std::to_string(2 * c.D2 + c.D3) + " < 6t");
  if (c.D2 == 2 * t && (c.D3 != 2 * t || c.D2 + c.D3 != c.D))
    add("census.D2_equality", "D2=2t needs D3=2t and no larger faces");
  return out;
}

// ---- edge class adjacency and colour clauses -----------------------------

struct ClassAdjacency {
  std::array<bool, 4> present{};

  bool adjacent(EdgeClass a, EdgeClass b) const {
    if (a == EdgeClass::Loop || b == EdgeClass::Loop || a == b) return false;
    std::vector<int> order;
    for (int i = 0; i < 4; ++i)
      if (present[i]) order.push_back(i);
    const int n = static_cast<int>(order.size());
    for (int k = 0; k < n; ++k) {
      int x = order[k], y = order[(k + 1) % n];
      int ia = static_cast<int>(a), ib = static_cast<int>(b);
      if ((x == ia && y == ib) || (x == ib && y == ia)) return n > 1;
    }
    return false;
  }
};

// Classes are adjacent when their ends are successive around u_1 once empty classes are dropped.
inline ClassAdjacency class_adjacency(const Quintuple& q) {
  ClassAdjacency a;
  for (int i = 0; i < 4; ++i) a.present[i] = q[i + 1] > 0;
  return a;
}

namespace detail {

using ClassPair = std::array<EdgeClass, 2>;

inline ClassPair pair_of(const CensusFace& f) {
  ClassPair p{f.labels[0], f.labels[1]};
  if (p[1] < p[0]) std::swap(p[0], p[1]);
  return p;
}

inline std::string pair_name(const ClassPair& p) {
  return std::string("{") + to_string(p[0]) + "," + to_string(p[1]) + "}";
}

inline bool disjoint(const ClassPair& a, const ClassPair& b) {
  for (auto x : a)
    for (auto y : b)
      if (x == y) return false;
  return true;
}

inline std::set<EdgeClass> label_set(const CensusFace& f) { return {f.labels.begin(), f.labels.end()}; }

// One of the two labels never occurs twice in a row around the boundary.
inline bool good_face(const CensusFace& f, EdgeClass a, EdgeClass b) {
  auto isolated = [&](EdgeClass x) {
    const int n = static_cast<int>(f.labels.size());
    for (int k = 0; k < n; ++k)
      if (f.labels[k] == x && f.labels[(k + 1) % n] == x) return false;
    return true;
  };
  return isolated(a) || isolated(b);
}

}  // namespace detail

inline std::vector<Violation> bigon_color_constraints(const FaceCensus& c, const ClassAdjacency& adj) {
  using detail::ClassPair;
  std::set<Violation> out;
  auto add = [&](const char* tag, std::string subject, std::string detail) {
    out.insert({"bigon_color", tag, std::move(subject), std::move(detail)});
  };
  std::vector<std::pair<Color, ClassPair>> bigon_pairs;
  std::vector<std::pair<Color, const CensusFace*>> trigons;
  for (const auto& f : c.faces) {
    if (!f.color) continue;
    if (f.degree == 2) bigon_pairs.push_back({*f.color, detail::pair_of(f)});
    if (f.degree == 3) trigons.push_back({*f.color, &f});
  }
  // (1)
  for (Color col : {Color::Black, Color::White}) {
    std::set<ClassPair> ps;
    for (const auto& [cc, p] : bigon_pairs)
      if (cc == col) ps.insert(p);
    if (ps.size() > 1) {
      std::string d;
      for (const auto& p : ps) d += detail::pair_name(p);
      add("bigon.same_color_pair", std::string(to_string(col)) + " bigons", d + " differ");
    }
  }
  // (3)
  for (const auto& [cb, pb] : bigon_pairs) {
    if (cb != Color::Black) continue;
    for (const auto& [cw, pw] : bigon_pairs) {
      if (cw != Color::White) continue;
      if (pb == pw) add("bigon.black_white_same_pair", detail::pair_name(pb), "black and white bigons share the pair");
      if (detail::disjoint(pb, pw) && (adj.adjacent(pb[0], pb[1]) || adj.adjacent(pw[0], pw[1])))
        add("bigon.disjoint_adjacent", detail::pair_name(pb) + detail::pair_name(pw),
            "disjoint black/white pairs must both be non-adjacent");
    }
  }
  // (4)
  for (const auto& [cb, pb] : bigon_pairs) {
    const bool adjacent = adj.adjacent(pb[0], pb[1]);
    std::set<EdgeClass> complement;
    for (auto x : {EdgeClass::Lambda, EdgeClass::Mu, EdgeClass::Nu, EdgeClass::Pi})
      if (x != pb[0] && x != pb[1]) complement.insert(x);
    for (const auto& [ct, f] : trigons) {
      if (ct != cb) continue;
      if (!adjacent)
        add("trigon.nonadjacent_bigon", std::string(to_string(cb)) + " " + detail::pair_name(pb),
            "same-colour trigon beside a non-adjacent bigon");
      else if (detail::label_set(*f) != complement)
        add("trigon.adjacent_bigon", std::string(to_string(cb)) + " " + detail::pair_name(pb),
            "same-colour trigon must carry the two other classes");
    }
  }
  // (5)
  if (!trigons.empty())
    for (const auto& [cb, pb] : bigon_pairs)
      for (const auto& [cw, pw] : bigon_pairs)
        if (cb == Color::Black && cw == Color::White && detail::disjoint(pb, pw))
          add("trigon.disjoint_bigons", detail::pair_name(pb) + detail::pair_name(pw),
              "trigon present beside disjoint black/white bigons");
  // (6)
  const EdgeClass cls4[] = {EdgeClass::Lambda, EdgeClass::Mu, EdgeClass::Nu, EdgeClass::Pi};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::set<EdgeClass> want{cls4[a], cls4[b]};
      bool good[2] = {false, false};
      for (const auto& f : c.faces)
        if (f.color && detail::label_set(f) == want && detail::good_face(f, cls4[a], cls4[b]))
          good[*f.color == Color::Black ? 0 : 1] = true;
      if (good[0] && good[1])
        add("face.good_both_colors", detail::pair_name({cls4[a], cls4[b]}), "good faces of both colours");
    }
  return {out.begin(), out.end()};
}

// ---- Scharlemann cycles --------------------------------------------------

struct ScharlemannCycle {
  int face = 0;
  std::vector<int> edges;
  std::array<int, 2> label_pair{};
  int length = 0;
  std::optional<bool> essential;  // known only when checked in a torus partner
};

// Disk faces bounded by positive edges that all carry one label pair {i,i+1}. When a
// realized partner (vertex index = label - 1) and the edge map are given, cycles of even
// length are tested for a nonzero homology class there.
inline std::vector<ScharlemannCycle> scharlemann_cycles(const RotationGraph& g, const RotationGraph* partner = nullptr,
                                                        const std::vector<int>* map = nullptr) {
  std::vector<ScharlemannCycle> out;
  const int t = g.t();
  if (t < 2 || !is_cellular(g)) return out;
  std::optional<TorusHomology> hom;
  if (partner && map && partner->surface() == SurfaceKind::TorusOrientable && is_cellular(*partner))
    hom.emplace(*partner);
  const auto faces = trace_faces(g);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::optional<std::array<int, 2>> pair;
    bool ok = true;
    for (const auto& tr : faces[f].edges) {
      int e = tr.edge;
      if (edge_sign(g, e) != EdgeSign::Positive) {
        ok = false;
        break;
      }
      int a = g.label(2 * e), b = g.label(2 * e + 1);
      if (a > b) std::swap(a, b);
      bool consecutive = (b == a + 1) || (a == 1 && b == t);
      if (!consecutive || (pair && *pair != std::array<int, 2>{a, b})) {
        ok = false;
        break;
      }
      pair = std::array<int, 2>{a, b};
    }
    if (!ok || !pair) continue;
    ScharlemannCycle sc;
    sc.face = static_cast<int>(f);
    for (const auto& tr : faces[f].edges) sc.edges.push_back(tr.edge);
    sc.label_pair = *pair;
    sc.length = static_cast<int>(sc.edges.size());
    if (hom && sc.length % 2 == 0) {
      const int va = (*pair)[0] - 1;
      std::vector<DirectedEdge> walk;
      for (int k = 0; k < sc.length; ++k) {
        int pe = (*map)[sc.edges[k]];
        int from = k % 2 == 0 ? va : (*pair)[1] - 1;
        walk.push_back({pe, partner->edge(pe).ends[0].vertex == from});
      }
      try {
        auto cls = hom->cls(walk);
        sc.essential = cls != std::pair<long, long>{0, 0};
      } catch (const GraphError&) {
        sc.essential.reset();
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace dgk

#endif  // DGK_CONSTRAINTS_HPP
