// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace dgk;
using namespace dgk::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, name.c_str(), secs,
              o.note.empty() ? "" : " -- ", o.note.c_str());
  std::fflush(stdout);
}

RotationGraph graph(const std::string& name) { return load_graph((source_dir() / "graphs" / name).string()); }

bool has(const std::vector<Violation>& vs, const std::string& tag) {
  for (const auto& v : vs)
    if (v.lemma_tag == tag) return true;
  return false;
}

CensusFace face(Color c, std::vector<EdgeClass> labels) {
  CensusFace f;
  f.degree = static_cast<int>(labels.size());
  f.color = c;
  f.labels = std::move(labels);
  return f;
}

FaceCensus degrees(int t, std::vector<int> ds) {
  std::vector<CensusFace> fs;
  for (int d : ds) {
    CensusFace f;
    f.degree = d;
    fs.push_back(f);
  }
  return census_from_faces(t, fs);
}

}  // namespace

int main() {
  criterion(1, "homology of transcribed presentations", 1.0, [](Outcome& o) {
    const std::pair<const char*, const char*> cases[] = {
        {"prop41.txt", "Z/35"},     {"3331.txt", "Z/2 + Z/30"}, {"klein_t1.txt", "Z/20"},
        {"z4.txt", "Z/4"},          {"klein_22121.txt", "Z/16"}, {"z4z4.txt", "Z/4 + Z/4"},
    };
    for (const auto& [file, want] : cases) {
      auto got = group_of(load_presentation((source_dir() / "presentations" / file).string())).to_string();
      if (got != want) o.fail(std::string(file) + ": " + got + " != " + want);
    }
    // second route: the same groups from the graph pairs through the pair complex
    struct Pair {
      const char *gs, *gt;
      int d;
      const char* want;
    } pairs[] = {
        {"t1_gs_jump2.json", "t1_gt.json", 2, "Z/35"},     {"gs_3331.json", "gt_03331.json", 2, "Z/2 + Z/30"},
        {"kb_t1_gp.json", "kb_t1_gt.json", 1, "Z/20"},     {"kb_t2p1_gp.json", "kb_t2p1_gt.json", 1, "Z/4"},
        {"kb_t2p2_gp.json", "kb_t2p2_gt.json", 2, "Z/16"}, {"kb_244_gp.json", "kb_244_gt.json", 1, "Z/4 + Z/4"},
    };
    for (const auto& p : pairs) {
      auto gs = graph(p.gs), gt = graph(p.gt);
      auto res = search_pairs(gs, gt, p.d);
      if (res.correspondences.empty()) o.fail(std::string(p.gs) + ": no correspondence");
      for (const auto& c : res.correspondences) {
        auto got = group_of(pair_presentation(gs, gt, c)).to_string();
        if (got != p.want) o.fail(std::string(p.gs) + ": pair complex gives " + got);
      }
    }
  });

  criterion(2, "parametric families agree with full presentations", 5.0, [](Outcome& o) {
    for (auto fam : {ParametricFamily::ElevenPMinusTwoQ, ParametricFamily::ElevenRPlusTwoS})
      for (long a = -20; a <= 20; ++a)
        for (long b = -20; b <= 20; ++b) {
          AbelianGroup full = group_of(parametric_presentation(fam, a, b));
          long n = parametric_order(fam, a, b);
          AbelianGroup reduced = cyclic_group(n);
          if (full != reduced) o.fail("mismatch at (" + std::to_string(a) + "," + std::to_string(b) + ")");
          if ((full.free_rank > 0) != (n == 0)) o.fail("finiteness disagrees with the order");
        }
    auto inf = [](ParametricFamily f, long a, long b) { return group_of(parametric_presentation(f, a, b)).free_rank > 0; };
    if (!inf(ParametricFamily::ElevenPMinusTwoQ, 2, 11) || !inf(ParametricFamily::ElevenPMinusTwoQ, -2, -11))
      o.fail("11p-2q not infinite on its zero locus");
    if (!inf(ParametricFamily::ElevenRPlusTwoS, 2, -11) || !inf(ParametricFamily::ElevenRPlusTwoS, -2, 11))
      o.fail("11r+2s not infinite on its zero locus");
  });

  criterion(3, "quintuple enumeration at t=2", 0, [](Outcome& o) {
    const Quintuple listed[] = {{0, 4, 4, 2, 0}, {0, 4, 4, 1, 1}, {0, 4, 1, 4, 1}, {0, 4, 2, 2, 2},
                                {0, 3, 3, 3, 1}, {0, 3, 3, 2, 2}, {0, 3, 2, 3, 2}};
    std::set<Quintuple> want;
    for (const auto& q : listed) want.insert(canonical_quintuple(q));
    auto got = enumerate_quintuples(2, {Rule::Epsilon});
    if (got != std::vector<Quintuple>(want.begin(), want.end())) {
      std::string s;
      for (const auto& q : got) s += to_string(q);
      o.fail("got " + s);
    }
  });

  for (const char* gt_name : {"gt_03322.json", "gt_03232.json"})
    for (int d : {1, 2})
      criterion(4, std::string("G(4,4,2,0) against ") + gt_name + " d=" + std::to_string(d) + " has no correspondence",
                60.0, [&](Outcome& o) {
                  auto res = search_pairs(graph("gs_4420.json"), graph(gt_name), d, default_node_cap());
                  if (!res.correspondences.empty())
                    o.fail(std::to_string(res.correspondences.size()) + " correspondences");
                  o.note = std::to_string(res.nodes) + " nodes";
                });

  criterion(5, "Smith normal form property suite", 30.0, [](Outcome& o) {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int k = 0; k < 10000; ++k) {
      int m = dim(rng), n = dim(rng);
      auto raw = random_matrix(rng, m, n, -50, 50);
      BigMatrix a = to_big(to_matrix(raw));
      auto r = smith_normal_form(to_matrix(raw));
      if (multiply(multiply(r.U, a), r.V) != r.D) o.fail("UAV != D at #" + std::to_string(k));
      BigInt prev = 1;
      bool zero = false;
      for (std::size_t i = 0; i < r.D.rows(); ++i)
        for (std::size_t j = 0; j < r.D.cols(); ++j) {
          const BigInt& x = r.D(i, j);
          if (i != j) {
            if (x != 0) o.fail("off-diagonal entry at #" + std::to_string(k));
            continue;
          }
          if (x < 0) o.fail("negative diagonal at #" + std::to_string(k));
          if (x == 0) zero = true;
          else if (zero || x % prev != 0) o.fail("divisibility chain broken at #" + std::to_string(k));
          else prev = x;
        }
      if (abs(determinant(r.U)) != 1 || abs(determinant(r.V)) != 1) o.fail("U or V not unimodular at #" + std::to_string(k));
      auto left = random_unimodular(rng, m);
      auto right = random_unimodular(rng, n);
      auto b = multiply(multiply(left, a), right);
      if (smith_normal_form(b).D != r.D) o.fail("D changed under unimodular moves at #" + std::to_string(k));
      if (m <= 4 && n <= 4) {
        std::vector<BigInt> want;
        for (long long x : invariant_factors_by_minors(raw)) want.push_back(x);
        if (invariant_factors(r.D) != want) o.fail("differs from gcd of minors at #" + std::to_string(k));
      }
    }
  });

  criterion(6, "surface invariants of graph files and random graphs", 0, [](Outcome& o) {
    auto check = [&](const RotationGraph& g, const std::string& what) {
      int F = 0, degsum = 0;
      for (const auto& f : trace_faces(g)) {
        ++F;
        degsum += f.degree();
      }
      if (g.num_vertices() - g.num_edges() + F != 0) o.fail(what + ": V-E+F != 0");
      if (degsum != 2 * g.num_edges()) o.fail(what + ": face degrees do not sum to 2E");
      if (flag_surface(g).faces != F) o.fail(what + ": face count differs from flag orbits");
      for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> count(g.t() + 1, 0);
        for (int k = 0; k < g.degree(); ++k) {
          int a = g.label(g.end_at(v, k)), b = g.label(g.end_at(v, k + 1));
          ++count[a];
          if (pmod(b - a, g.t()) != pmod(sign_value(g.sign(v)), g.t())) o.fail(what + ": label sequence");
        }
        for (int l = 1; l <= g.t(); ++l)
          if (count[l] != g.delta()) o.fail(what + ": label multiplicity");
      }
    };
    std::size_t files = 0;
    for (const auto& f : graph_files()) {
      check(load_graph(f.string()), f.filename().string());
      ++files;
    }
    std::mt19937_64 rng(6);
    for (int k = 0; k < 1000; ++k) {
      auto kind = k % 2 ? SurfaceKind::KleinBottle : SurfaceKind::TorusOrientable;
      int V = 1 + k % 4, t = 1 + k % 3;
      if (V * t % 2) ++V;
      check(random_cellular(rng, kind, V, t), "random #" + std::to_string(k));
    }
    o.note = std::to_string(files) + " files, 1000 random graphs";
  });

  criterion(7, "checker accept/violate cases", 0, [](Outcome& o) {
    auto expect = [&](bool cond, const std::string& what) {
      if (!cond) o.fail(what);
    };
    constexpr EdgeClass L = EdgeClass::Lambda, M = EdgeClass::Mu, N = EdgeClass::Nu, P = EdgeClass::Pi;
    const auto B = Color::Black, W = Color::White;

    auto gs = graph("t1_gs_jump2.json"), gt = graph("t1_gt.json");
    auto res = search_pairs(gs, gt, 2);
    expect(!res.correspondences.empty() && check_parity_rule(gs, gt, res.correspondences[0].map).empty(),
           "parity accepts the surviving t=1 pair");
    auto same = graph("gt_03331.json");
    expect(has(check_parity_rule(same, same, identity_map(same.num_edges())), "parity"), "parity flags positive/positive");

    expect(has(check_parallelism_bounds(build_quintuple_graph({0, 3, 4, 4, 4}, 3, {Sign::Plus, Sign::Plus}), CapContext::GS),
               "cap.positive.gs"),
           "GS positive cap");
    expect(has(check_parallelism_bounds(build_quintuple_graph({0, 4, 4, 4, 3}, 3, {Sign::Plus, Sign::Minus}), CapContext::GS),
               "cap.negative.gs"),
           "GS negative cap");
    expect(check_parallelism_bounds(build_quintuple_graph({0, 5, 4, 3, 3}, 3, {Sign::Plus, Sign::Minus}), CapContext::GS).empty(),
           "GS accepts single-orbit long family");
    expect(has(check_parallelism_bounds(graph("gs_4420.json"), CapContext::GT_allSameSign), "cap.gt.three"), "GT cap of 3");
    expect(check_parallelism_bounds(same, CapContext::GT_allSameSign).empty(), "GT accepts families of 3");
    auto beta = check_parallelism_bounds(build_klein_graph(KleinForm::HPrime, 4, 2, 4, 4), CapContext::GP);
    expect(has(beta, "branch.klein_beta") && contradictions(beta).empty(), "GP branch at t/2+2 with 4 | t");
    expect(has(check_parallelism_bounds(build_klein_graph(KleinForm::H, 5, 5, 5, 6), CapContext::GP), "cap.positive.gp"),
           "GP cap at t/2+2 with t = 6");
    expect(check_parallelism_bounds(build_klein_graph(KleinForm::H, 2, 4, 4, 4), CapContext::GP).empty(), "GP accepts H(2,4,4)");

    expect(epsilon_feasible({0, 4, 4, 2, 0}, {1, 1, 1, 1}), "epsilon accepts (4,4,2,0)");
    expect(!epsilon_feasible({0, 3, 4, 2, 1}, {0, 1, 1, 1}), "epsilon cap 2");
    expect(feasible_epsilons({0, 4, 4, 1, 1}) == std::vector<EpsilonVector>{{1, 1, 0, 0}}, "epsilon forced by parity");

    expect(face_census_feasible(degrees(3, {2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3})).empty(), "census equality case");
    expect(has(face_census_feasible(degrees(4, std::vector<int>(15, 2))), "census.D"), "census D = 4t");
    expect(has(face_census_feasible(degrees(3, {2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3})), "census.D2"), "census D2 >= 2t");
    expect(has(face_census_feasible(degrees(3, {2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 4, 4})), "census.2D2+D3"), "census 2D2+D3 >= 6t");

    auto adj = class_adjacency({0, 2, 2, 3, 3});
    auto colour = [&](std::vector<CensusFace> fs) { return bigon_color_constraints(census_from_faces(2, fs), adj); };
    expect(has(colour({face(B, {L, M}), face(B, {L, N})}), "bigon.same_color_pair"), "clause (1) violation");
    expect(colour({face(B, {L, M}), face(B, {M, L})}).empty(), "clause (1) accept");
    expect(has(colour({face(B, {L, N}), face(W, {L, N})}), "bigon.black_white_same_pair"), "clause (3) violation");
    expect(colour({face(B, {L, N}), face(W, {M, P})}).empty(), "clause (3) accept");
    expect(has(colour({face(B, {L, N}), face(B, {M, P, M})}), "trigon.nonadjacent_bigon"), "clause (4) violation");
    expect(colour({face(B, {L, M}), face(B, {N, P, N})}).empty(), "clause (4) accept");
    expect(has(colour({face(B, {L, N}), face(W, {M, P}), face(W, {L, M, N})}), "trigon.disjoint_bigons"),
           "clause (5) violation");
    expect(colour({face(B, {L, N}), face(W, {M, P})}).empty(), "clause (5) accept");
    expect(has(colour({face(B, {L, M, L, M}), face(W, {L, M, M, L, M})}), "face.good_both_colors"), "clause (6) violation");
    expect(colour({face(B, {L, M, L, M}), face(W, {L, L, M, M})}).empty(), "clause (6) accept");

    using V = std::vector<std::string>;
    expect(jumping_order(1, true) == V{"a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4", "a5", "b5"}, "jumping order d=1");
    expect(jumping_order(2, true) == V{"a1", "b1", "a3", "b3", "a5", "b5", "a2", "b2", "a4", "b4"}, "jumping order d=2");
  });

  return failures == 0 ? 0 : 1;
}
