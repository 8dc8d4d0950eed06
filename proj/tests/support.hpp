#ifndef DGK_TEST_SUPPORT_HPP
#define DGK_TEST_SUPPORT_HPP

// Independent oracles and generators shared by the test binaries.

#include "dgk/dgk.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace dgk::testing {

inline std::filesystem::path source_dir() { return DGK_SOURCE_DIR; }

// ---- determinantal divisors ----------------------------------------------

inline long long det_small(const std::vector<std::vector<long long>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  long long sum = 0;
  for (int c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<long long>> m;
    for (int r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      m.push_back(std::move(row));
    }
    sum += (c % 2 ? -1 : 1) * a[0][c] * det_small(m);
  }
  return sum;
}

inline void subsets(int n, int k, std::vector<std::vector<int>>& out, std::vector<int> cur = {}, int from = 0) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

// Invariant factors s_k = d_k / d_{k-1}, d_k the gcd of all k x k minors.
inline std::vector<long long> invariant_factors_by_minors(const std::vector<std::vector<long long>>& a) {
  const int m = static_cast<int>(a.size()), n = m ? static_cast<int>(a[0].size()) : 0;
  std::vector<long long> out;
  long long prev = 1;
  for (int k = 1; k <= std::min(m, n); ++k) {
    std::vector<std::vector<int>> rs, cs;
    subsets(m, k, rs);
    subsets(n, k, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[i][j] = a[r[i]][c[j]];
        g = std::gcd(g, std::llabs(det_small(sub)));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline std::vector<std::vector<long long>> random_matrix(std::mt19937_64& rng, int m, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::vector<long long>> a(m, std::vector<long long>(n));
  for (auto& row : a)
    for (auto& x : row) x = d(rng);
  return a;
}

inline IntMatrix to_matrix(const std::vector<std::vector<long long>>& a) {
  IntMatrix m(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = a[i][j];
  return m;
}

// Product of random elementary operations; determinant +-1 by construction.
inline BigMatrix random_unimodular(std::mt19937_64& rng, int n, int steps = 12) {
  BigMatrix u = BigMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3), kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    switch (kind(rng)) {
      case 0: {
        const int q = coef(rng);
        for (int c = 0; c < n; ++c) u(i, c) += q * u(j, c);
        break;
      }
      case 1:
        for (int c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
        break;
      default:
        for (int c = 0; c < n; ++c) u(i, c) = -u(i, c);
    }
  }
  return u;
}

// ---- face count from flag involutions ------------------------------------

// Flags are (end, side). Corner moves pair the counterclockwise side of an end with the
// clockwise side of its successor; edge moves cross to the partner end, keeping the
// side on twisted edges. Faces are the orbits of the two moves.
struct FlagSurface {
  int vertices = 0, edges = 0, faces = 0;
  std::vector<int> face_sizes;
};

inline FlagSurface flag_surface(const std::vector<std::vector<int>>& rot, const std::vector<int>& twist) {
  const int E = static_cast<int>(twist.size());
  std::vector<std::pair<int, int>> where(2 * E);
  for (int v = 0; v < static_cast<int>(rot.size()); ++v)
    for (int k = 0; k < static_cast<int>(rot[v].size()); ++k) where[rot[v][k]] = {v, k};
  auto flag = [](int h, int side) { return 2 * h + side; };
  const int n = 4 * E;
  std::vector<int> corner(n), cross(n);
  for (int h = 0; h < 2 * E; ++h) {
    auto [v, k] = where[h];
    int next = rot[v][(k + 1) % rot[v].size()];
    corner[flag(h, 1)] = flag(next, 0);
    corner[flag(next, 0)] = flag(h, 1);
    for (int s = 0; s < 2; ++s) cross[flag(h, s)] = flag(h ^ 1, twist[h / 2] ? s : 1 - s);
  }
  std::vector<char> seen(n, 0);
  FlagSurface fs;
  fs.vertices = static_cast<int>(rot.size());
  fs.edges = E;
  for (int f0 = 0; f0 < n; ++f0) {
    if (seen[f0]) continue;
    int size = 0;
    std::vector<int> stack{f0};
    seen[f0] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++size;
      for (int y : {corner[x], cross[x]})
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    ++fs.faces;
    fs.face_sizes.push_back(size / 2);
  }
  return fs;
}

inline FlagSurface flag_surface(const RotationGraph& g) {
  std::vector<std::vector<int>> rot;
  for (int v = 0; v < g.num_vertices(); ++v) rot.push_back(g.rotation(v));
  return flag_surface(rot, twists_of(g));
}

// ---- random cellular graphs ----------------------------------------------

// Grows a cellular graph from a one-vertex torus or Klein bottle by pendant edges
// and face-splitting chords until every vertex has degree 5t.
inline std::optional<RotationGraph> try_random_cellular(std::mt19937_64& rng, SurfaceKind kind, int V, int t) {
  const int deg = 5 * t;
  std::vector<std::vector<int>> rot{{0, 2, 1, 3}};
  std::vector<int> twist{0, 0};
  if (kind == SurfaceKind::KleinBottle) {
    rot = {{0, 1, 2, 3}};
    twist = {1, 1};
  }
  if (deg < 4) return std::nullopt;
  auto faces_now = [&] { return flag_surface(rot, twist).faces; };
  auto corners_of_faces = [&] {
    // corner (v,k): between rot[v][k] and rot[v][k+1]; grouped by face via the flag orbit
    const int E = static_cast<int>(twist.size());
    std::vector<std::pair<int, int>> where(2 * E);
    for (int v = 0; v < static_cast<int>(rot.size()); ++v)
      for (int k = 0; k < static_cast<int>(rot[v].size()); ++k) where[rot[v][k]] = {v, k};
    const int n = 4 * E;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int h = 0; h < 2 * E; ++h) {
      auto [v, k] = where[h];
      int next = rot[v][(k + 1) % rot[v].size()];
      unite(2 * h + 1, 2 * next);
      for (int s = 0; s < 2; ++s) unite(2 * h + s, 2 * (h ^ 1) + (twist[h / 2] ? s : 1 - s));
    }
    std::map<int, std::vector<std::pair<int, int>>> by_face;
    for (int v = 0; v < static_cast<int>(rot.size()); ++v)
      for (int k = 0; k < static_cast<int>(rot[v].size()); ++k) by_face[find(2 * rot[v][k] + 1)].push_back({v, k});
    std::vector<std::vector<std::pair<int, int>>> out;
    for (auto& [f, cs] : by_face) out.push_back(cs);
    return out;
  };
  auto insert_end = [&](int v, int k, int h) { rot[v].insert(rot[v].begin() + k + 1, h); };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  for (int w = 1; w < V; ++w) {
    std::vector<std::pair<int, int>> open;
    for (int v = 0; v < w; ++v)
      if (static_cast<int>(rot[v].size()) < deg)
        for (int k = 0; k < static_cast<int>(rot[v].size()); ++k) open.push_back({v, k});
    if (open.empty()) return std::nullopt;
    auto [v, k] = open[pick(static_cast<int>(open.size()))];
    const int e = static_cast<int>(twist.size());
    twist.push_back(0);
    insert_end(v, k, 2 * e);
    rot.push_back({2 * e + 1});
  }
  for (int guard = 0; guard < 10000; ++guard) {
    bool full = true;
    for (const auto& r : rot) full &= static_cast<int>(r.size()) == deg;
    if (full) break;
    auto faces = corners_of_faces();
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> moves;
    for (const auto& cs : faces)
      for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a; b < cs.size(); ++b) {
          int va = cs[a].first, vb = cs[b].first;
          int need_a = deg - static_cast<int>(rot[va].size()), need_b = deg - static_cast<int>(rot[vb].size());
          if (va == vb ? need_a >= 2 : (need_a >= 1 && need_b >= 1)) moves.push_back({cs[a], cs[b]});
        }
    if (moves.empty()) return std::nullopt;
    auto [c1, c2] = moves[pick(static_cast<int>(moves.size()))];
    const int F = faces_now();
    const int e = static_cast<int>(twist.size());
    auto saved_rot = rot;
    for (int tw = 0; tw < 2; ++tw) {
      rot = saved_rot;
      twist.resize(e);
      twist.push_back(tw);
      if (c1 == c2) {
        insert_end(c1.first, c1.second, 2 * e + 1);
        insert_end(c1.first, c1.second, 2 * e);
      } else if (c1.first == c2.first) {
        // insert at the later position first so the earlier index stays valid
        auto [lo, hi] = std::minmax(c1.second, c2.second);
        insert_end(c1.first, hi, 2 * e + 1);
        insert_end(c1.first, lo, 2 * e);
      } else {
        insert_end(c1.first, c1.second, 2 * e);
        insert_end(c2.first, c2.second, 2 * e + 1);
      }
      if (faces_now() == F + 1) break;
      if (tw == 1 || kind == SurfaceKind::TorusOrientable) return std::nullopt;
    }
  }
  for (const auto& r : rot)
    if (static_cast<int>(r.size()) != deg) return std::nullopt;

  std::vector<Edge> edges(twist.size());
  for (int v = 0; v < static_cast<int>(rot.size()); ++v)
    for (int k = 0; k < deg; ++k) edges[rot[v][k] / 2].ends[rot[v][k] % 2] = {v, k};
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].twist = twist[e];
  std::vector<Sign> signs(V);
  for (auto& s : signs) s = pick(2) ? Sign::Plus : Sign::Minus;
  return RotationGraph(kind, t, std::move(signs), std::move(edges));
}

inline RotationGraph random_cellular(std::mt19937_64& rng, SurfaceKind kind, int V, int t) {
  if ((V * 5 * t) % 2 != 0) throw std::invalid_argument("total degree 5tV must be even");
  for (;;)
    if (auto g = try_random_cellular(rng, kind, V, t)) return *g;
}

// ---- exhaustive placement enumeration ------------------------------------

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p = identity_map(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline void all_offsets(int n, int mod, std::vector<std::vector<int>>& out) {
  std::vector<int> o(n, 0);
  for (;;) {
    out.push_back(o);
    int k = n - 1;
    while (k >= 0 && ++o[k] == mod) o[k--] = 0;
    if (k < 0) return;
  }
}

// Every placement without symmetry reduction, filtered by parity and the
// no-double-parallel rule. Returns the distinct edge maps.
inline std::set<std::vector<int>> brute_force_maps(const RotationGraph& gs, const RotationGraph& gt, int d) {
  const int s = gs.num_vertices(), t = gt.num_vertices();
  std::vector<std::vector<int>> os, ot;
  all_offsets(s, gs.degree(), os);
  all_offsets(t, gt.degree(), ot);
  std::set<std::vector<int>> maps;
  for (const auto& ps : all_permutations(s))
    for (const auto& a : os)
      for (int flip = 0; flip < 2; ++flip)
        for (const auto& pt : all_permutations(t))
          for (const auto& b : ot) {
            Placement pl{ps, a, flip == 1, pt, b};
            auto c = correspondence_from_placement(gs, gt, d, pl);
            if (!c) continue;
            if (!check_parity_rule(gs, gt, c->map).empty()) continue;
            if (!check_double_parallel(gs, gt, c->map).empty()) continue;
            maps.insert(c->map);
          }
  return maps;
}

inline std::set<std::vector<int>> search_maps(const RotationGraph& gs, const RotationGraph& gt, int d) {
  std::set<std::vector<int>> maps;
  for (const auto& c : search_pairs(gs, gt, d).correspondences) maps.insert(c.map);
  return maps;
}

inline std::vector<std::filesystem::path> graph_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(source_dir() / "graphs"))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dgk::testing

#endif  // DGK_TEST_SUPPORT_HPP
