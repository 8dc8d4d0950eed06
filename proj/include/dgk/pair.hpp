#ifndef DGK_PAIR_HPP
#define DGK_PAIR_HPP

#include "dgk/graph.hpp"
#include "dgk/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgk {

// The n-th of the five points of u_i ∩ v_j, numbered in the order met along ∂v_j.
struct IntersectionPoint {
  int i = 0, j = 0, n = 0;
  bool operator==(const IntersectionPoint&) const = default;
  auto operator<=>(const IntersectionPoint&) const = default;
};

inline int jump_inverse(int d) {
  if (d != 1 && d != 2) throw std::invalid_argument("jumping number must be 1 or 2");
  return d == 1 ? 1 : 3;
}

// Cyclic order of points on the fat vertices. Around v_j the points run
// (0,j,0),(1,j,0),...,(s-1,j,0),(0,j,1),...; around u_i the labels 1..t repeat five
// times and the n-index advances by d per pass.
struct PointFrame {
  int s, t, d;

  int u_slot(const IntersectionPoint& p) const { return t * ((d * p.n) % 5) + p.j; }
  int v_slot(const IntersectionPoint& p) const { return s * p.n + p.i; }
  IntersectionPoint u_point(int i, int q) const {
    return {i, q % t, ((q / t) * jump_inverse(d)) % 5};
  }
  IntersectionPoint v_point(int j, int q) const { return {q % s, j, q / s}; }
  int index(const IntersectionPoint& p) const { return (p.i * t + p.j) * 5 + p.n; }
  int num_points() const { return 5 * s * t; }
};

// Where each graph sits relative to the point pattern: vertex a of G_S is u_{perm_s[a]}
// with rotation slot r at physical slot off_s[a] + sign(a)*r; likewise for G_T, whose
// orientation is reversed when tflip is set.
struct Placement {
  std::vector<int> perm_s, off_s;
  bool tflip = false;
  std::vector<int> perm_t, off_t;
  bool operator==(const Placement&) const = default;
};

struct EndpointData {
  int s_edge = 0, t_edge = 0;
  std::array<IntersectionPoint, 2> points;  // indexed by the G_S end
  std::array<int, 2> s_labels{};            // label of each G_S end = j+1
  std::array<int, 2> t_labels{};            // label of the G_T end on the same point = i+1
};

struct EdgeCorrespondence {
  std::vector<int> map;  // G_S edge -> G_T edge
  int d = 1;
  Placement placement;
  std::vector<EndpointData> endpoint_data;

  std::vector<int> inverse() const {
    std::vector<int> inv(map.size(), -1);
    for (std::size_t e = 0; e < map.size(); ++e) inv[map[e]] = static_cast<int>(e);
    return inv;
  }
};

struct PairError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_pair_parameters(const RotationGraph& gs, const RotationGraph& gt) {
  if (gs.delta() != gt.delta()) throw PairError("graphs disagree on delta");
  if (gs.t() != gt.num_vertices() || gt.t() != gs.num_vertices())
    throw PairError("label range of each graph must equal the vertex count of the other");
  if (gs.num_edges() != gt.num_edges()) throw PairError("graphs have different edge counts");
}

inline int physical_s_slot(const RotationGraph& gs, const Placement& pl, int h) {
  int v = gs.vertex_of(h);
  return pmod(pl.off_s[v] + sign_value(gs.sign(v)) * gs.slot_of(h), gs.degree());
}

inline int physical_t_slot(const RotationGraph& gt, const Placement& pl, int h) {
  int v = gt.vertex_of(h);
  int sg = sign_value(gt.sign(v)) * (pl.tflip ? -1 : 1);
  return pmod(pl.off_t[v] + sg * gt.slot_of(h), gt.degree());
}

inline IntersectionPoint s_end_point(const RotationGraph& gs, const PointFrame& f, const Placement& pl, int h) {
  return f.u_point(pl.perm_s[gs.vertex_of(h)], physical_s_slot(gs, pl, h));
}

inline IntersectionPoint t_end_point(const RotationGraph& gt, const PointFrame& f, const Placement& pl, int h) {
  return f.v_point(pl.perm_t[gt.vertex_of(h)], physical_t_slot(gt, pl, h));
}

inline bool is_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// The correspondence a placement induces, or nullopt when the matched points do not
// pair up the ends of single edges.
inline std::optional<EdgeCorrespondence> correspondence_from_placement(const RotationGraph& gs,
                                                                       const RotationGraph& gt, int d,
                                                                       const Placement& pl) {
  check_pair_parameters(gs, gt);
  const int s = gs.num_vertices(), t = gt.num_vertices();
  if (!is_permutation(pl.perm_s, s) || !is_permutation(pl.perm_t, t)) throw PairError("placement is not a bijection");
  if (static_cast<int>(pl.off_s.size()) != s || static_cast<int>(pl.off_t.size()) != t)
    throw PairError("placement offsets have the wrong length");
  PointFrame f{s, t, d};
  std::vector<int> t_end_at(f.num_points(), -1);
  for (int h = 0; h < gt.num_ends(); ++h) t_end_at[f.index(t_end_point(gt, f, pl, h))] = h;
  EdgeCorrespondence c;
  c.d = d;
  c.placement = pl;
  c.map.assign(gs.num_edges(), -1);
  std::vector<int> inv(gt.num_edges(), -1);
  for (int e = 0; e < gs.num_edges(); ++e) {
    EndpointData ed;
    ed.s_edge = e;
    for (int side = 0; side < 2; ++side) {
      auto p = s_end_point(gs, f, pl, 2 * e + side);
      int ht = t_end_at[f.index(p)];
      int et = RotationGraph::edge_of(ht);
      if (side == 0) ed.t_edge = et;
      else if (ed.t_edge != et) return std::nullopt;
      ed.points[side] = p;
      ed.s_labels[side] = p.j + 1;
      ed.t_labels[side] = p.i + 1;
    }
    if (inv[ed.t_edge] != -1) return std::nullopt;
    inv[ed.t_edge] = e;
    c.map[e] = ed.t_edge;
    c.endpoint_data.push_back(ed);
  }
  return c;
}

struct RealizedPair {
  RotationGraph gs, gt;
  std::vector<int> map;
};

// Relabels both graphs so that stored labels are the physical ones: vertex indices
// become u_i / v_j indices and the placement becomes the identity.
inline RealizedPair realize(const RotationGraph& gs, const RotationGraph& gt, const EdgeCorrespondence& c) {
  const Placement& pl = c.placement;
  const int ds = gs.degree(), dt = gt.degree();
  RotationGraph rs = remap(
      gs, pl.perm_s, gs.signs(),
      [&](int v, int r) { return pmod(r + sign_value(gs.sign(v)) * pl.off_s[v], ds); }, twists_of(gs));
  const int f = pl.tflip ? -1 : 1;
  RotationGraph rt = remap(
      gt, pl.perm_t, gt.signs(),
      [&](int v, int r) { return pmod(f * r + sign_value(gt.sign(v)) * pl.off_t[v], dt); }, twists_of(gt));
  return {std::move(rs), std::move(rt), c.map};
}

inline Placement identity_placement(int s, int t) {
  return {identity_map(s), std::vector<int>(s, 0), false, identity_map(t), std::vector<int>(t, 0)};
}

inline std::string edge_label(const RotationGraph& g, int e) {
  return g.edge(e).name.empty() ? "e" + std::to_string(e) : g.edge(e).name;
}

// Integer chain complex of the filled manifold cut along the torus: generators are the
// edges of G_S plus one arc h_i per vertex u_i; relators are the face boundaries of G_S,
// the face boundaries of G_T read through the correspondence, and a spanning tree of arcs.
inline Presentation pair_presentation(const RotationGraph& gs, const RotationGraph& gt, const EdgeCorrespondence& c) {
  check_pair_parameters(gs, gt);
  const int s = gs.num_vertices(), t = gt.num_vertices(), E = gs.num_edges();
  PointFrame f{s, t, c.d};
  const Placement& pl = c.placement;
  std::vector<int> s_end_at(f.num_points(), -1);
  for (int h = 0; h < gs.num_ends(); ++h) s_end_at[f.index(s_end_point(gs, f, pl, h))] = h;

  Presentation p;
  for (int e = 0; e < E; ++e) p.generators.push_back(edge_label(gs, e));
  for (int i = 0; i < s; ++i) {
    std::string h = "h" + std::to_string(i);
    while (p.index_of(h) >= 0) h = "_" + h;
    p.generators.push_back(h);
  }
  for (const auto& fw : trace_faces(gs)) {
    std::vector<BigInt> row(E + s, 0);
    for (const auto& tr : fw.edges) row[tr.edge] += tr.orientation();
    p.relators.push_back(std::move(row));
  }
  const int deg = gt.degree();
  for (const auto& fw : trace_faces(gt)) {
    std::vector<BigInt> row(E + s, 0);
    for (const auto& k : fw.corners) {
      int qi = physical_t_slot(gt, pl, k.in_end), qo = physical_t_slot(gt, pl, k.out_end);
      auto pi = t_end_point(gt, f, pl, k.in_end), po = t_end_point(gt, f, pl, k.out_end);
      if (pmod(qo - qi, deg) == 1) row[E + pi.i] += 1;
      else if (pmod(qi - qo, deg) == 1) row[E + po.i] -= 1;
      else throw PairError("face corner does not join adjacent points");
      int hs = s_end_at[f.index(po)];
      row[RotationGraph::edge_of(hs)] += hs % 2 == 0 ? 1 : -1;
    }
    p.relators.push_back(std::move(row));
  }
  for (int i = 0; i + 1 < s; ++i) {
    std::vector<BigInt> row(E + s, 0);
    row[E + i] = 1;
    p.relators.push_back(std::move(row));
  }
  return p;
}

// Boundary map of the 1-cells used by pair_presentation (rows: u_i, cols: generators).
inline BigMatrix pair_boundary(const RotationGraph& gs, const RotationGraph& gt, const EdgeCorrespondence& c) {
  const int s = gs.num_vertices(), E = gs.num_edges();
  PointFrame f{s, gt.num_vertices(), c.d};
  BigMatrix d1(s, E + s);
  for (int e = 0; e < E; ++e) {
    int a = s_end_point(gs, f, c.placement, 2 * e).i, b = s_end_point(gs, f, c.placement, 2 * e + 1).i;
    d1(b, e) += 1;
    d1(a, e) -= 1;
  }
  for (int i = 0; i < s; ++i) {
    d1((i + 1) % s, E + i) += 1;
    d1(i, E + i) -= 1;
  }
  return d1;
}

}  // namespace dgk

#endif  // DGK_PAIR_HPP
