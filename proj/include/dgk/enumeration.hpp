#ifndef DGK_ENUMERATION_HPP
#define DGK_ENUMERATION_HPP

#include "dgk/constraints.hpp"
#include "dgk/graph.hpp"
#include "dgk/pair.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dgk {

// ---- canonical quintuples ------------------------------------------------

inline std::string to_string(const Quintuple& q) {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return s + ")";
}

// Orbit under relabelings of the layout: the Klein four-group on (a1,a2,a3,a4); with no
// loops also the cyclic shift, and with no loops and an empty class every permutation,
// since the three remaining classes then sit in either cyclic order.
inline std::vector<Quintuple> quintuple_orbit(const Quintuple& q) {
  std::set<Quintuple> orbit;
  auto apply = [](const Quintuple& x, std::array<int, 4> p) {
    return Quintuple{x[0], x[p[0] + 1], x[p[1] + 1], x[p[2] + 1], x[p[3] + 1]};
  };
  const bool free_loops = q[0] == 0;
  const bool has_empty = std::count(q.begin() + 1, q.end(), 0) > 0;
  if (free_loops && has_empty) {
    std::array<int, 4> p{0, 1, 2, 3};
    do orbit.insert(apply(q, p));
    while (std::next_permutation(p.begin(), p.end()));
    return {orbit.begin(), orbit.end()};
  }
  std::vector<std::array<int, 4>> gens = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  if (free_loops) gens.push_back({1, 2, 3, 0});
  std::vector<Quintuple> frontier{q};
  orbit.insert(q);
  while (!frontier.empty()) {
    Quintuple x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Quintuple y = apply(x, g);
      if (orbit.insert(y).second) frontier.push_back(y);
    }
  }
  return {orbit.begin(), orbit.end()};
}

inline Quintuple canonical_quintuple(const Quintuple& q) { return quintuple_orbit(q).front(); }

enum class Rule { Epsilon, Caps };

inline std::vector<Rule> parse_rules(const std::string& text) {
  std::vector<Rule> out;
  std::stringstream ss(text);
  std::string r;
  while (std::getline(ss, r, ',')) {
    if (r.empty() || r == "none") continue;
    if (r == "epsilon") out.push_back(Rule::Epsilon);
    else if (r == "caps") out.push_back(Rule::Caps);
    else throw std::invalid_argument("unknown rule '" + r + "'");
  }
  return out;
}

// epsilon: no loops and some epsilon vector satisfies the class caps and parity;
// caps: every class has at most 2t edges once t >= 4.
inline bool satisfies(const Quintuple& q, int t, Rule r) {
  switch (r) {
    case Rule::Epsilon:
      return q[0] == 0 && !feasible_epsilons(q).empty();
    case Rule::Caps:
      if (t < 4) return true;
      for (int i = 1; i < 5; ++i)
        if (q[i] > 2 * t) return false;
      return true;
  }
  return false;
}

// Canonical representatives with 2*a0 + a1 + ... + a4 = 5t, in lexicographic order.
inline std::vector<Quintuple> enumerate_quintuples(int t, const std::vector<Rule>& rules) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  const int budget = 5 * t;
  std::set<Quintuple> out;
  for (int a0 = 0; 2 * a0 <= budget; ++a0)
    for (int a1 = 0; a1 <= budget - 2 * a0; ++a1)
      for (int a2 = 0; a1 + a2 <= budget - 2 * a0; ++a2)
        for (int a3 = 0; a1 + a2 + a3 <= budget - 2 * a0; ++a3) {
          Quintuple q{a0, a1, a2, a3, budget - 2 * a0 - a1 - a2 - a3};
          if (canonical_quintuple(q) != q) continue;
          bool ok = true;
          for (Rule r : rules) ok = ok && satisfies(q, t, r);
          if (ok) out.insert(q);
        }
  return {out.begin(), out.end()};
}

// Class sizes of a graph whose edges carry class labels.
inline std::optional<Quintuple> quintuple_of(const RotationGraph& g) {
  Quintuple q{0, 0, 0, 0, 0};
  for (const Edge& e : g.edges()) {
    if (!e.cls) return std::nullopt;
    if (*e.cls == EdgeClass::Loop) ++q[0];
    else ++q[1 + static_cast<int>(*e.cls)];
  }
  if (q[0] % 2 != 0) return std::nullopt;
  q[0] /= 2;
  return q;
}

// ---- correspondence search -----------------------------------------------

struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(long cap) : std::runtime_error("search budget of " + std::to_string(cap) + " nodes exhausted") {}
};

inline long default_node_cap() {
  if (const char* env = std::getenv("DGK_NODE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
    throw std::invalid_argument("DGK_NODE_CAP must be a positive integer");
  }
  return 10'000'000;
}

struct SearchResult {
  std::vector<EdgeCorrespondence> correspondences;  // sorted by edge map, one per map
  long nodes = 0;
};

namespace detail {

class PairSearch {
public:
  PairSearch(const RotationGraph& gs, const RotationGraph& gt, int d, long cap)
      : gs_(gs), gt_(gt), d_(d), cap_(cap), frame_{gs.num_vertices(), gt.num_vertices(), d} {
    check_pair_parameters(gs, gt);
    jump_inverse(d);
    auto fs = parallel_families(gs), ft = parallel_families(gt);
    fam_s_ = family_index(gs, fs);
    fam_t_ = family_index(gt, ft);
    nft_ = static_cast<int>(ft.size());
    pair_count_.assign(fs.size() * ft.size(), 0);
    for (int e = 0; e < gs.num_edges(); ++e) sign_s_.push_back(edge_sign(gs, e));
    for (int e = 0; e < gt.num_edges(); ++e) sign_t_.push_back(edge_sign(gt, e));
  }

  SearchResult run() {
    const int s = gs_.num_vertices();
    std::vector<int> rest;
    for (int i = 1; i < s; ++i) rest.push_back(i);
    // u_0 and its slot 0 are fixed by the symmetries shifting the i, j and n indices.
    do {
      pl_.perm_s = {0};
      pl_.perm_s.insert(pl_.perm_s.end(), rest.begin(), rest.end());
      pl_.off_s.assign(s, 0);
      for (;;) {
        stage_s();
        int k = s - 1;
        while (k >= 1 && ++pl_.off_s[k] == gs_.degree()) pl_.off_s[k--] = 0;
        if (k < 1) break;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
    SearchResult r;
    r.nodes = nodes_;
    for (auto& [m, c] : found_) r.correspondences.push_back(std::move(c));
    return r;
  }

private:
  void tick() {
    if (++nodes_ > cap_) throw BudgetExhausted(cap_);
  }

  void stage_s() {
    tick();
    s_end_at_.assign(frame_.num_points(), -1);
    for (int h = 0; h < gs_.num_ends(); ++h) s_end_at_[frame_.index(s_end_point(gs_, frame_, pl_, h))] = h;
    map_s_.assign(gs_.num_edges(), -1);
    map_t_.assign(gt_.num_edges(), -1);
    const int t = gt_.num_vertices();
    for (int flip = 0; flip < 2; ++flip) {
      pl_.tflip = flip == 1;
      pl_.perm_t.assign(t, -1);
      pl_.off_t.assign(t, 0);
      used_j_.assign(t, 0);
      assign_t(0);
    }
  }

  // Places G_T vertex b on an unused v_j with every rotation offset.
  void assign_t(int b) {
    const int t = gt_.num_vertices();
    if (b == t) {
      record();
      return;
    }
    const int deg = gt_.degree();
    const int sg = sign_value(gt_.sign(b)) * (pl_.tflip ? -1 : 1);
    for (int j = 0; j < t; ++j) {
      if (used_j_[j]) continue;
      for (int off = 0; off < deg; ++off) {
        tick();
        std::vector<std::pair<int, int>> added;
        bool ok = true;
        for (int r = 0; r < deg && ok; ++r) {
          int h = gt_.end_at(b, r);
          auto p = frame_.v_point(j, pmod(off + sg * r, deg));
          int es = RotationGraph::edge_of(s_end_at_[frame_.index(p)]);
          int et = RotationGraph::edge_of(h);
          if (map_s_[es] == et) continue;
          if (map_s_[es] != -1 || map_t_[et] != -1 || sign_s_[es] == sign_t_[et] ||
              pair_count_[fam_s_[es] * nft_ + fam_t_[et]] > 0) {
            ok = false;
            break;
          }
          map_s_[es] = et;
          map_t_[et] = es;
          ++pair_count_[fam_s_[es] * nft_ + fam_t_[et]];
          added.push_back({es, et});
        }
        if (ok) {
          used_j_[j] = 1;
          pl_.perm_t[b] = j;
          pl_.off_t[b] = off;
          assign_t(b + 1);
          used_j_[j] = 0;
          pl_.perm_t[b] = -1;
          pl_.off_t[b] = 0;
        }
        for (auto [es, et] : added) {
          map_s_[es] = -1;
          map_t_[et] = -1;
          --pair_count_[fam_s_[es] * nft_ + fam_t_[et]];
        }
      }
    }
  }

  void record() {
    if (found_.count(map_s_)) return;
    auto c = correspondence_from_placement(gs_, gt_, d_, pl_);
    if (!c || c->map != map_s_) throw std::logic_error("search placement does not reproduce its edge map");
    found_.emplace(map_s_, std::move(*c));
  }

  const RotationGraph& gs_;
  const RotationGraph& gt_;
  int d_;
  long cap_;
  PointFrame frame_;
  std::vector<int> fam_s_, fam_t_;
  int nft_ = 0;
  std::vector<int> pair_count_;
  std::vector<EdgeSign> sign_s_, sign_t_;
  Placement pl_;
  std::vector<int> s_end_at_, map_s_, map_t_;
  std::vector<char> used_j_;
  long nodes_ = 0;
  std::map<std::vector<int>, EdgeCorrespondence> found_;
};

}  // namespace detail

// Every edge correspondence realizable by a placement of both graphs on the point
// pattern of jumping number d that obeys the parity rule and never makes two edges
// parallel in both graphs. An empty result is only returned for a completed search.
inline SearchResult search_pairs(const RotationGraph& gs, const RotationGraph& gt, int d, long node_cap = 0) {
  if (node_cap <= 0) node_cap = default_node_cap();
  return detail::PairSearch(gs, gt, d, node_cap).run();
}

// ---- forced partners -----------------------------------------------------

struct DerivedPartner {
  RotationGraph graph;  // vertex i is u_i; edge e matches edge e of the known graph
  int d = 1;
  Placement placement;  // of the known graph
};

// Every placement of the known graph g (as the graph whose vertices are the v_j) forces
// a partner on s vertices u_i: its rotations are the physical point orders, its edges
// pair the points joined by edges of g, and an edge is positive exactly when the
// matching edge of g is negative. Frames are normalized; labels are unchanged by that.
inline std::vector<DerivedPartner> derive_partners(const RotationGraph& g, int s, int d, long node_cap = 0) {
  if (node_cap <= 0) node_cap = default_node_cap();
  if (s < 1) throw std::invalid_argument("partner vertex count must be positive");
  if (g.t() != s) throw PairError("label range of the known graph must equal the partner vertex count");
  jump_inverse(d);
  const int t = g.num_vertices();
  PointFrame f{s, t, d};
  std::vector<DerivedPartner> out;
  long nodes = 0;
  Placement pl;
  pl.perm_s = identity_map(s);
  pl.off_s.assign(s, 0);
  std::vector<int> rest;
  for (int j = 1; j < t; ++j) rest.push_back(j);
  // v_0 and its slot 0 are fixed by the symmetries shifting the i and j indices.
  for (int flip = 0; flip < 2; ++flip) {
    pl.tflip = flip == 1;
    std::vector<int> perm_rest = rest;
    do {
      pl.perm_t = {0};
      pl.perm_t.insert(pl.perm_t.end(), perm_rest.begin(), perm_rest.end());
      pl.off_t.assign(t, 0);
      for (;;) {
        if (++nodes > node_cap) throw BudgetExhausted(node_cap);
        std::vector<Edge> edges(g.num_edges());
        for (int e = 0; e < g.num_edges(); ++e) {
          edges[e].twist = edge_sign(g, e) == EdgeSign::Negative ? 0 : 1;
          edges[e].name = g.edge(e).name;
          for (int side = 0; side < 2; ++side) {
            auto p = t_end_point(g, f, pl, 2 * e + side);
            edges[e].ends[side] = {p.i, f.u_slot(p)};
          }
        }
        RotationGraph partner = normalize_frames(
            RotationGraph(SurfaceKind::KleinBottle, t, std::vector<Sign>(s, Sign::Plus), std::move(edges)));
        if (is_orientable(partner)) {
          std::vector<Edge> es = partner.edges();
          partner = RotationGraph(SurfaceKind::TorusOrientable, t, partner.signs(), std::move(es));
        }
        out.push_back({std::move(partner), d, pl});
        int k = t - 1;
        while (k >= 1 && ++pl.off_t[k] == g.degree()) pl.off_t[k--] = 0;
        if (k < 1) break;
      }
    } while (std::next_permutation(perm_rest.begin(), perm_rest.end()));
  }
  return out;
}

// A forced partner is admissible when it is a cellular torus graph without monogon
// faces that shares no pair of parallel edges with the known graph.
inline bool admissible_partner(const RotationGraph& known, const DerivedPartner& p) {
  if (p.graph.surface() != SurfaceKind::TorusOrientable || !is_cellular(p.graph)) return false;
  for (const auto& f : trace_faces(p.graph))
    if (f.degree() < 2) return false;
  return check_double_parallel(p.graph, known, identity_map(known.num_edges())).empty();
}

}  // namespace dgk

#endif  // DGK_ENUMERATION_HPP
