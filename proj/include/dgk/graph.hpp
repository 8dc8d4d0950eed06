#ifndef DGK_GRAPH_HPP
#define DGK_GRAPH_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgk {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SurfaceKind { TorusOrientable, KleinBottle };
enum class Sign { Plus = 1, Minus = -1 };
enum class EdgeSign { Positive, Negative };
enum class EdgeClass { Lambda, Mu, Nu, Pi, Loop };
enum class Color { Black, White };

inline int pmod(long a, long m) {
  long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline Sign flipped(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

inline const char* to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Lambda: return "lambda";
    case EdgeClass::Mu: return "mu";
    case EdgeClass::Nu: return "nu";
    case EdgeClass::Pi: return "pi";
    case EdgeClass::Loop: return "loop";
  }
  return "?";
}

inline EdgeClass edge_class_from_string(const std::string& s) {
  for (auto c : {EdgeClass::Lambda, EdgeClass::Mu, EdgeClass::Nu, EdgeClass::Pi, EdgeClass::Loop})
    if (s == to_string(c)) return c;
  throw GraphError("unknown edge class '" + s + "'");
}

inline const char* to_string(Color c) { return c == Color::Black ? "black" : "white"; }
inline const char* to_string(EdgeSign s) { return s == EdgeSign::Positive ? "positive" : "negative"; }

struct EdgeEnd {
  int vertex = 0;
  int slot = 0;
  bool operator==(const EdgeEnd&) const = default;
};

struct Edge {
  std::array<EdgeEnd, 2> ends;
  int twist = 0;
  std::string name;
  std::optional<EdgeClass> cls;
};

// Ribbon graph. End h of edge e is h = 2e + side; rotation slots run counterclockwise
// in the vertex's frame. Slot 0 of every vertex carries label 1.
class RotationGraph {
public:
  RotationGraph() = default;
  RotationGraph(SurfaceKind surface, int t, std::vector<Sign> signs, std::vector<Edge> edges,
                std::string figure_ref = {}, int delta = 5)
      : surface_(surface), t_(t), delta_(delta), signs_(std::move(signs)), edges_(std::move(edges)),
        figure_ref_(std::move(figure_ref)) {
    index();
  }

  SurfaceKind surface() const { return surface_; }
  int t() const { return t_; }
  int delta() const { return delta_; }
  int num_vertices() const { return static_cast<int>(signs_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_ends() const { return 2 * num_edges(); }
  int degree() const { return delta_ * t_; }
  Sign sign(int v) const { return signs_[v]; }
  const std::vector<Sign>& signs() const { return signs_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::string& figure_ref() const { return figure_ref_; }

  static int edge_of(int h) { return h / 2; }
  static int partner(int h) { return h ^ 1; }
  const EdgeEnd& end(int h) const { return edges_[h / 2].ends[h % 2]; }
  int vertex_of(int h) const { return end(h).vertex; }
  int slot_of(int h) const { return end(h).slot; }
  int end_at(int v, int slot) const { return rot_[v][pmod(slot, degree())]; }
  const std::vector<int>& rotation(int v) const { return rot_[v]; }
  bool is_loop(int e) const { return edges_[e].ends[0].vertex == edges_[e].ends[1].vertex; }

  // Labels ascend in the vertex's positive direction.
  int label(int h) const { return pmod(static_cast<long>(sign_value(sign(vertex_of(h)))) * slot_of(h), t_) + 1; }

private:
  void index() {
    if (t_ < 1) throw GraphError("label modulus t must be positive");
    if (delta_ < 1) throw GraphError("delta must be positive");
    if (signs_.empty()) throw GraphError("graph has no vertices");
    const int deg = degree();
    rot_.assign(signs_.size(), std::vector<int>(deg, -1));
    for (int e = 0; e < num_edges(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.twist != 0 && ed.twist != 1) throw GraphError("twist must be 0 or 1");
      if (surface_ == SurfaceKind::TorusOrientable && ed.twist != 0)
        throw GraphError("torus graphs carry no twisted edges");
      for (int side = 0; side < 2; ++side) {
        const EdgeEnd& x = ed.ends[side];
        if (x.vertex < 0 || x.vertex >= num_vertices()) throw GraphError("edge end on unknown vertex");
        if (x.slot < 0 || x.slot >= deg) throw GraphError("slot out of range");
        int& cell = rot_[x.vertex][x.slot];
        if (cell != -1) throw GraphError("slot used twice");
        cell = 2 * e + side;
      }
    }
    for (const auto& r : rot_)
      for (int h : r)
        if (h == -1) throw GraphError("vertex degree differs from delta*t");
  }

  SurfaceKind surface_ = SurfaceKind::TorusOrientable;
  int t_ = 1;
  int delta_ = 5;
  std::vector<Sign> signs_;
  std::vector<Edge> edges_;
  std::string figure_ref_;
  std::vector<std::vector<int>> rot_;
};

struct Corner {
  int vertex;
  int in_end;   // end through which the walk arrives
  int out_end;  // rotation neighbour through which it leaves
  int dir;      // +1: out_end follows in_end counterclockwise
};

struct Traversal {
  int edge;
  int from_end;
  int orientation() const { return from_end % 2 == 0 ? 1 : -1; }
};

struct FaceWalk {
  std::vector<Corner> corners;
  std::vector<Traversal> edges;
  int degree() const { return static_cast<int>(edges.size()); }
};

// One walk per boundary component of the ribbon surface. Twisted edges switch the
// walking direction; the reverse of every walk is suppressed.
inline std::vector<FaceWalk> trace_faces(const RotationGraph& g) {
  const int n = g.num_ends();
  auto state = [](int h, int dir) { return 2 * h + (dir > 0 ? 0 : 1); };
  std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
  std::vector<FaceWalk> faces;
  for (int pass = 0; pass < 2; ++pass) {
    const int dir0 = pass == 0 ? 1 : -1;
    for (int h0 = 0; h0 < n; ++h0) {
      if (seen[state(h0, dir0)]) continue;
      FaceWalk f;
      int h = h0, dir = dir0;
      while (!seen[state(h, dir)]) {
        const int v = g.vertex_of(h);
        const int out = g.end_at(v, g.slot_of(h) + dir);
        seen[state(h, dir)] = 1;
        seen[state(out, -dir)] = 1;
        f.corners.push_back({v, h, out, dir});
        f.edges.push_back({RotationGraph::edge_of(out), out});
        if (g.edge(RotationGraph::edge_of(out)).twist) dir = -dir;
        h = RotationGraph::partner(out);
      }
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

inline int euler_characteristic(const RotationGraph& g) {
  return g.num_vertices() - g.num_edges() + static_cast<int>(trace_faces(g).size());
}

inline EdgeSign edge_sign(const RotationGraph& g, int e) {
  const Edge& ed = g.edge(e);
  int s = sign_value(g.sign(ed.ends[0].vertex)) * sign_value(g.sign(ed.ends[1].vertex)) * (ed.twist ? -1 : 1);
  return s > 0 ? EdgeSign::Positive : EdgeSign::Negative;
}

// Orientable iff the vertex frames can be chosen with every twist 0.
inline bool is_orientable(const RotationGraph& g) {
  std::vector<int> col(g.num_vertices(), -1);
  for (int root = 0; root < g.num_vertices(); ++root) {
    if (col[root] != -1) continue;
    col[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Edge& e : g.edges()) {
        int a = e.ends[0].vertex, b = e.ends[1].vertex;
        if (a == b) {
          if (a == v && e.twist) return false;
          continue;
        }
        if (a != v && b != v) continue;
        int w = a == v ? b : a;
        int c = col[v] ^ e.twist;
        if (col[w] == -1) {
          col[w] = c;
          stack.push_back(w);
        } else if (col[w] != c) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool is_connected(const RotationGraph& g) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) parent[find(e.ends[0].vertex)] = find(e.ends[1].vertex);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// Every face a disk on a closed surface of Euler characteristic 0.
inline bool is_cellular(const RotationGraph& g) { return is_connected(g) && euler_characteristic(g) == 0; }

// Rebuilds g with each end moved to slot_map(vertex, slot) on vertex vertex_map(vertex).
template <typename SlotFn>
RotationGraph remap(const RotationGraph& g, const std::vector<int>& vertex_map, const std::vector<Sign>& signs,
                    SlotFn slot_map, const std::vector<int>& twists) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (auto& x : edges[e].ends) {
      int s = slot_map(x.vertex, x.slot);
      x.vertex = vertex_map[x.vertex];
      x.slot = s;
    }
    edges[e].twist = twists[e];
  }
  std::vector<Sign> new_signs(signs.size());
  for (std::size_t v = 0; v < signs.size(); ++v) new_signs[vertex_map[v]] = signs[v];
  SurfaceKind kind = g.surface();
  return RotationGraph(kind, g.t(), std::move(new_signs), std::move(edges), g.figure_ref(), g.delta());
}

inline std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

inline std::vector<int> twists_of(const RotationGraph& g) {
  std::vector<int> tw;
  for (const Edge& e : g.edges()) tw.push_back(e.twist);
  return tw;
}

// Reverses the local frame at v: slot r becomes -r, the sign flips, and every
// non-loop edge at v toggles its twist. Labels are unchanged.
inline RotationGraph flip_frame(const RotationGraph& g, int v) {
  auto signs = g.signs();
  signs[v] = flipped(signs[v]);
  auto tw = twists_of(g);
  for (int e = 0; e < g.num_edges(); ++e)
    if (!g.is_loop(e) && (g.edge(e).ends[0].vertex == v || g.edge(e).ends[1].vertex == v)) tw[e] ^= 1;
  const int deg = g.degree();
  return remap(g, identity_map(g.num_vertices()), signs,
               [&](int w, int s) { return w == v ? pmod(-s, deg) : s; }, tw);
}

// Canonical frames: a breadth-first spanning forest from vertex 0 carries twist 0.
inline RotationGraph normalize_frames(const RotationGraph& g) {
  RotationGraph cur = g;
  std::vector<char> seen(g.num_vertices(), 0);
  for (int root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int e = 0; e < cur.num_edges(); ++e) {
        const Edge& ed = cur.edge(e);
        int a = ed.ends[0].vertex, b = ed.ends[1].vertex;
        if (a == b || (a != v && b != v)) continue;
        int w = a == v ? b : a;
        if (seen[w]) continue;
        if (cur.edge(e).twist) cur = flip_frame(cur, w);
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return cur;
}

// Same graph seen from the other side of the surface.
inline RotationGraph mirror(const RotationGraph& g) {
  const int deg = g.degree();
  return remap(g, identity_map(g.num_vertices()), g.signs(), [&](int, int s) { return pmod(-s, deg); },
               twists_of(g));
}

// Adds shift[v] to every slot at v (a relabeling; the embedding is unchanged).
inline RotationGraph rotate_slots(const RotationGraph& g, const std::vector<int>& shift) {
  const int deg = g.degree();
  return remap(g, identity_map(g.num_vertices()), g.signs(), [&](int v, int s) { return pmod(s + shift[v], deg); },
               twists_of(g));
}

inline RotationGraph permute_vertices(const RotationGraph& g, const std::vector<int>& perm) {
  return remap(g, perm, g.signs(), [](int, int s) { return s; }, twists_of(g));
}

// Corner colour for graphs whose partner has two vertices: reading the corner in the
// vertex's positive direction, 1 -> 2 is Black and 2 -> 1 is White.
inline Color corner_color(const RotationGraph& g, const Corner& c) {
  if (g.t() != 2) throw GraphError("face colours need a two-vertex partner (t = 2)");
  const int lo = c.dir > 0 ? g.slot_of(c.in_end) : g.slot_of(c.out_end);
  const int lo_end = g.end_at(c.vertex, lo), hi_end = g.end_at(c.vertex, lo + 1);
  const int from = g.sign(c.vertex) == Sign::Plus ? g.label(lo_end) : g.label(hi_end);
  return from == 1 ? Color::Black : Color::White;
}

struct ColorError : GraphError {
  using GraphError::GraphError;
};

inline Color face_color(const RotationGraph& g, const FaceWalk& f) {
  if (f.corners.empty()) throw GraphError("empty face walk");
  Color c = corner_color(g, f.corners[0]);
  for (const Corner& k : f.corners)
    if (corner_color(g, k) != c) throw ColorError("face corners disagree on colour");
  return c;
}

struct DirectedEdge {
  int edge;
  bool forward;  // end 0 -> end 1
};

// Coordinates of a closed walk in H1 of a cellular torus graph, in the basis of the
// fundamental cycles of the two edges left over by a tree-cotree decomposition.
class TorusHomology {
public:
  explicit TorusHomology(const RotationGraph& g) : g_(g) {
    if (g.surface() != SurfaceKind::TorusOrientable) throw GraphError("homology classes need a torus graph");
    if (!is_cellular(g)) throw GraphError("not a cellular torus embedding");
    const auto faces = trace_faces(g);
    const int E = g.num_edges(), F = static_cast<int>(faces.size()), V = g.num_vertices();

    std::vector<int> kind(E, 0);  // 0 leftover, 1 tree, 2 cotree
    std::vector<char> reached(V, 0);
    reached[0] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (int e = 0; e < E; ++e) {
        int a = g.edge(e).ends[0].vertex, b = g.edge(e).ends[1].vertex;
        if (reached[a] != reached[b]) {
          reached[a] = reached[b] = 1;
          kind[e] = 1;
          grew = true;
        }
      }
    }
    std::vector<std::array<int, 2>> side_face(E, {-1, -1});
    for (int f = 0; f < F; ++f)
      for (const auto& tr : faces[f].edges) side_face[tr.edge][tr.from_end % 2] = f;
    std::vector<int> parent(F);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e = 0; e < E; ++e) {
      if (kind[e]) continue;
      int a = find(side_face[e][0]), b = find(side_face[e][1]);
      if (a != b) {
        parent[a] = b;
        kind[e] = 2;
      }
    }
    for (int e = 0; e < E; ++e)
      if (kind[e] == 0) generators_.push_back(e);
    if (generators_.size() != 2) throw GraphError("torus graph without two homology generators");

    for (int k = 0; k < 2; ++k) {
      std::vector<long> phi(E, 0);
      std::vector<char> known(E, 1);
      for (int e = 0; e < E; ++e) known[e] = kind[e] != 2;
      phi[generators_[k]] = 1;
      // Peel cotree leaves: a face with one unknown edge fixes it.
      for (bool progress = true; progress;) {
        progress = false;
        for (int f = 0; f < F; ++f) {
          long sum = 0;
          int unknown = -1, count = 0;
          std::vector<std::pair<int, int>> coef;
          for (const auto& tr : faces[f].edges) coef.push_back({tr.edge, tr.orientation()});
          std::sort(coef.begin(), coef.end());
          std::vector<std::pair<int, int>> merged;
          for (auto& c : coef) {
            if (!merged.empty() && merged.back().first == c.first) merged.back().second += c.second;
            else merged.push_back(c);
          }
          int ucoef = 0;
          for (auto& [e, c] : merged) {
            if (c == 0) continue;
            if (known[e]) sum += c * phi[e];
            else {
              ++count;
              unknown = e;
              ucoef = c;
            }
          }
          if (count == 1) {
            if (sum % ucoef != 0) throw GraphError("cocycle construction failed");
            phi[unknown] = -sum / ucoef;
            known[unknown] = 1;
            progress = true;
          }
        }
      }
      for (int e = 0; e < E; ++e)
        if (!known[e]) throw GraphError("cocycle construction failed");
      for (int f = 0; f < F; ++f) {
        long sum = 0;
        for (const auto& tr : faces[f].edges) sum += tr.orientation() * phi[tr.edge];
        if (sum != 0) throw GraphError("cocycle does not vanish on a face");
      }
      cocycles_[k] = std::move(phi);
    }
  }

  // The two edges whose fundamental cycles form the basis.
  const std::vector<int>& generators() const { return generators_; }

  std::pair<long, long> cls(const std::vector<DirectedEdge>& walk) const {
    if (walk.empty()) return {0, 0};
    auto tail = [&](const DirectedEdge& d) { return g_.edge(d.edge).ends[d.forward ? 0 : 1].vertex; };
    auto head = [&](const DirectedEdge& d) { return g_.edge(d.edge).ends[d.forward ? 1 : 0].vertex; };
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (walk[i].edge < 0 || walk[i].edge >= g_.num_edges()) throw GraphError("walk uses unknown edge");
      if (head(walk[i]) != tail(walk[(i + 1) % walk.size()])) throw GraphError("walk is not closed");
    }
    std::pair<long, long> c{0, 0};
    for (const auto& d : walk) {
      int s = d.forward ? 1 : -1;
      c.first += s * cocycles_[0][d.edge];
      c.second += s * cocycles_[1][d.edge];
    }
    return c;
  }

private:
  const RotationGraph& g_;
  std::vector<int> generators_;
  std::array<std::vector<long>, 2> cocycles_;
};

inline std::pair<long, long> cycle_homology_class(const RotationGraph& g, const std::vector<DirectedEdge>& walk) {
  return TorusHomology(g).cls(walk);
}

inline std::vector<DirectedEdge> boundary_walk(const FaceWalk& f) {
  std::vector<DirectedEdge> w;
  for (const auto& tr : f.edges) w.push_back({tr.edge, tr.from_end % 2 == 0});
  return w;
}

using Quintuple = std::array<int, 5>;

namespace detail {

struct Block {
  int family;
  int side;
};

// Places parallel families block by block. The second block of a family is reversed
// unless the family is twisted, in which case the order is repeated.
inline RotationGraph assemble(SurfaceKind kind, int t, std::vector<Sign> signs,
                              const std::vector<std::vector<Block>>& layout, const std::vector<int>& size,
                              const std::vector<int>& twist, const std::vector<std::optional<EdgeClass>>& cls,
                              std::string ref) {
  std::vector<std::vector<int>> ids(size.size());
  std::vector<Edge> edges;
  for (std::size_t f = 0; f < size.size(); ++f)
    for (int k = 0; k < size[f]; ++k) {
      ids[f].push_back(static_cast<int>(edges.size()));
      Edge e;
      e.twist = twist[f];
      e.cls = cls[f];
      edges.push_back(e);
    }
  for (std::size_t v = 0; v < layout.size(); ++v) {
    int slot = 0;
    for (const Block& b : layout[v]) {
      std::vector<int> order = ids[b.family];
      if (b.side == 1 && !twist[b.family]) std::reverse(order.begin(), order.end());
      for (int e : order) edges[e].ends[b.side] = {static_cast<int>(v), slot++};
    }
  }
  return RotationGraph(kind, t, std::move(signs), std::move(edges), std::move(ref));
}

}  // namespace detail

// Two-vertex torus graph G(a0,a1,a2,a3,a4). Counterclockwise at u1: a0 loop ends,
// lambda, mu, the other a0 loop ends, nu, pi; at u2: loops, nu, pi, loops, lambda, mu.
inline RotationGraph build_quintuple_graph(const Quintuple& a, int t,
                                           std::array<Sign, 2> signs = {Sign::Plus, Sign::Minus}) {
  for (int x : a)
    if (x < 0) throw GraphError("negative class size");
  if (t < 1) throw GraphError("t must be positive");
  if (2 * a[0] + a[1] + a[2] + a[3] + a[4] != 5 * t) throw GraphError("degree budget 2*a0+a1+a2+a3+a4 != 5t");
  using detail::Block;
  enum { A, B, L, M, N, P };
  std::vector<std::vector<Block>> layout = {
      {{A, 0}, {L, 0}, {M, 0}, {A, 1}, {N, 0}, {P, 0}},
      {{B, 0}, {N, 1}, {P, 1}, {B, 1}, {L, 1}, {M, 1}},
  };
  std::vector<int> size = {a[0], a[0], a[1], a[2], a[3], a[4]};
  std::vector<std::optional<EdgeClass>> cls = {EdgeClass::Loop, EdgeClass::Loop, EdgeClass::Lambda,
                                               EdgeClass::Mu,   EdgeClass::Nu,   EdgeClass::Pi};
  std::string ref = "G(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
                    std::to_string(a[3]) + "," + std::to_string(a[4]) + ")";
  return detail::assemble(SurfaceKind::TorusOrientable, t, {signs[0], signs[1]}, layout, size,
                          std::vector<int>(6, 0), cls, ref);
}

enum class KleinForm { H, HPrime };

// One-vertex Klein bottle graph: p0 untwisted (positive) loops and two twisted
// (negative) loop families of sizes p1, p2. Reduced rotation: H is P A B P B A,
// H' is P A A P B B. With an empty family some faces are not disks, so the ribbon
// surface of the result is no longer a Klein bottle.
inline RotationGraph build_klein_graph(KleinForm form, int p0, int p1, int p2, int t) {
  if (p0 < 0 || p1 < 0 || p2 < 0) throw GraphError("negative family size");
  if (t < 1) throw GraphError("t must be positive");
  if ((5 * t) % 2 != 0) throw GraphError("5t/2 is not an integer");
  if (2 * (p0 + p1 + p2) != 5 * t) throw GraphError("budget p0+p1+p2 != 5t/2");
  using detail::Block;
  enum { P, A, B };
  std::vector<std::vector<Block>> layout;
  if (form == KleinForm::H) layout = {{{P, 0}, {A, 0}, {B, 0}, {P, 1}, {B, 1}, {A, 1}}};
  else layout = {{{P, 0}, {A, 0}, {A, 1}, {P, 1}, {B, 0}, {B, 1}}};
  std::string ref = std::string(form == KleinForm::H ? "H(" : "H'(") + std::to_string(p0) + "," +
                    std::to_string(p1) + "," + std::to_string(p2) + ")";
  return detail::assemble(SurfaceKind::KleinBottle, t, {Sign::Plus}, layout, {p0, p1, p2}, {0, 1, 1},
                          {std::nullopt, std::nullopt, std::nullopt}, ref);
}

}  // namespace dgk

#endif  // DGK_GRAPH_HPP
