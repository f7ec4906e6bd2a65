#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "zonomorse/zonotope.hpp"

using namespace zm;

namespace {

GeneratorSet direct(std::vector<Vec> vs) {
  GeneratorSet d;
  d.vectors = std::move(vs);
  return d;
}

std::set<Vec> vset(const std::vector<Vec>& vs) { return {vs.begin(), vs.end()}; }

// Variational characterization: p is the closest point iff p lies in Z and
// x - p pairs nonpositively with q - p for every vertex q.
bool is_projection(const Zonotope& z, const Vec& x, const ProjResult& pr) {
  if (!z.contains(pr.point)) return false;
  if (norm2(x - pr.point) != pr.dist2) return false;
  for (const auto& q : z.vertices)
    if (dot(x - pr.point, q - pr.point) > 0) return false;
  return true;
}

// First-order optimality over the simplex plus carrier consistency.
bool simplex_min_certified(const Zonotope& z, const std::vector<Vec>& pts,
                           const MinSimplexResult& r) {
  ProjResult pr = project(z, r.argmin);
  if (pr.dist2 != r.dist2) return false;
  if (pr.point != r.closest) return false;
  for (const auto& v : pts)
    if (dot(r.argmin - r.closest, v - r.argmin) < 0) return false;
  // argmin must be a positive convex combination of the witness vertices
  if (r.witness.empty()) return false;
  const int k = (int)r.witness.size();
  const int n = r.argmin.dim();
  std::vector<Vec> rows(n + 1, Vec(k));
  Vec rhs(n + 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < k; ++i) rows[j][i] = pts[r.witness[i]][j];
    rhs[j] = r.argmin[j];
  }
  for (int i = 0; i < k; ++i) rows[n][i] = 1;
  rhs[n] = 1;
  auto sol = solve_linear(rows, rhs);
  if (sol.kind != LinearSolution::Unique) return false;
  for (int i = 0; i < k; ++i)
    if (sol.x[i] <= 0) return false;
  return true;
}

}  // namespace

TEST_CASE("richness names round-trip") {
  for (Richness r : {Richness::OrbitClosure, Richness::AlmostRich, Richness::Rich})
    CHECK(richness_from_name(richness_name(r)) == r);
  CHECK(!richness_from_name("bogus").has_value());
}

TEST_CASE("segment zonotope") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}}));
  CHECK(z.deff == 1);
  CHECK(vset(z.vertices) == vset({Vec{0, 0}, Vec{1, 0}}));
  CHECK(z.facets.size() == 2);
  CHECK(z.contains(Vec{Q(1, 2), 0}));
  CHECK(!z.contains(Vec{Q(1, 2), Q(1, 10)}));
  CHECK(z.center() == Vec{Q(1, 2), 0});
  // proper faces: the two endpoints; improper face last
  CHECK(z.faces.size() == 3);
  CHECK(z.faces.back().dim == 1);
  CHECK(z.faces.back().active_facets.empty());

  ProjResult p = project(z, Vec{3, 0});
  CHECK(p.point == Vec{1, 0});
  CHECK(p.dist2 == 4);
  p = project(z, Vec{Q(1, 2), 2});
  CHECK(p.point == Vec{Q(1, 2), 0});
  CHECK(p.dist2 == 4);
}

TEST_CASE("opposite generators merge into one line") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{-1, 0}}));
  CHECK(z.merged.size() == 1);
  CHECK(z.t0 == Vec{-1, 0});
  CHECK(vset(z.vertices) == vset({Vec{-1, 0}, Vec{1, 0}}));
}

TEST_CASE("unit square: faces and cones") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}}));
  CHECK(z.deff == 2);
  CHECK(vset(z.vertices) == vset({Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}));
  CHECK(z.facets.size() == 4);
  CHECK(z.faces.size() == 4 + 4 + 1);

  auto [edge, cone] = face_and_cone(z, Vec{1, 0});
  CHECK(edge.translation == Vec{1, 0});
  CHECK(edge.residual == std::vector<Vec>{Vec{0, 1}});
  CHECK(vset(edge.vertices) == vset({Vec{1, 0}, Vec{1, 1}}));
  CHECK(edge.dim == 1);
  CHECK(cone.rays == std::vector<Vec>{Vec{1, 0}});
  CHECK(cone.contains(Vec{2, 0}));
  CHECK(!cone.contains(Vec{2, 1}));

  auto [vtx, vcone] = face_and_cone(z, Vec{1, 1});
  CHECK(vtx.vertices == std::vector<Vec>{Vec{1, 1}});
  CHECK(vtx.dim == 0);
  CHECK(vset(vcone.rays) == vset({Vec{1, 0}, Vec{0, 1}}));
  CHECK(vcone.contains(Vec{1, 3}));
  CHECK(!vcone.contains(Vec{-1, 3}));
}

TEST_CASE("hexagon from three generators") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}));
  CHECK(z.vertices.size() == 6);
  CHECK(vset(z.vertices) ==
        vset({Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{2, 1}, Vec{1, 2}, Vec{2, 2}}));
  CHECK(z.facets.size() == 6);
  CHECK(z.contains(Vec{1, 1}));  // interior, not a vertex

  auto [f, cone] = face_and_cone(z, Vec{1, 1});
  CHECK(f.vertices == std::vector<Vec>{Vec{2, 2}});
  CHECK(f.translation == Vec{2, 2});
  CHECK(f.dim == 0);

  ProjResult p = project(z, Vec{3, 3});
  CHECK(p.point == Vec{2, 2});
  CHECK(p.dist2 == 2);
}

TEST_CASE("projection certificates on sampled points") {
  std::vector<Zonotope> zs;
  zs.push_back(zonotope_of(direct({Vec{1, 0}, Vec{0, 1}})));
  zs.push_back(zonotope_of(direct({Vec{1, 0}, Vec{0, 1}, Vec{1, 1}})));
  zs.push_back(zonotope_of(direct({Vec{2, 0, 0}, Vec{0, 1, 0}, Vec{1, 1, 1}})));
  Rng rng(7);
  for (const auto& z : zs) {
    for (int s = 0; s < 40; ++s) {
      Vec x(z.ambient);
      for (int i = 0; i < z.ambient; ++i) x[i] = rng.rational(6, 4);
      ProjResult pr = project(z, x);
      CHECK(is_projection(z, x, pr));
      // idempotent
      ProjResult again = project(z, pr.point);
      CHECK(again.dist2 == 0);
      CHECK(again.point == pr.point);
    }
    for (const auto& v : z.vertices) CHECK(project(z, v).dist2 == 0);
  }
}

TEST_CASE("projection handles the off-span component") {
  // segment in 3d: distance accumulates the orthogonal part exactly
  Zonotope z = zonotope_of(direct({Vec{1, 1, 0}}));
  ProjResult p = project(z, Vec{2, 2, 3});
  CHECK(p.point == Vec{1, 1, 0});
  CHECK(p.dist2 == 11);
  p = project(z, Vec{Q(1, 2), Q(1, 2), 1});
  CHECK(p.point == Vec{Q(1, 2), Q(1, 2), 0});
  CHECK(p.dist2 == 1);
}

TEST_CASE("min over a simplex: vertex-certified case") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}}));
  std::vector<Vec> tri = {Vec{2, 0}, Vec{3, 1}, Vec{2, 2}};
  MinSimplexResult r = min_on_simplex(z, tri);
  CHECK(r.vertex_certified);
  CHECK(r.dist2 == 1);
  CHECK(r.argmin == Vec{2, 0});
  CHECK(r.closest == Vec{1, 0});
  CHECK(r.witness == std::vector<int>{0});
  CHECK(simplex_min_certified(z, tri, r));
}

TEST_CASE("min over a simplex: interior-of-edge minimizer") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}}));
  std::vector<Vec> tri = {Vec{2, -1}, Vec{2, 3}, Vec{5, 1}};
  MinSimplexResult r = min_on_simplex(z, tri);
  CHECK(!r.vertex_certified);
  CHECK(r.dist2 == 1);
  CHECK(r.witness == std::vector<int>{0, 1});
  CHECK(norm2(r.argmin - r.closest) == 1);
  CHECK(simplex_min_certified(z, tri, r));
}

TEST_CASE("min over a simplex touching the zonotope") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}}));
  std::vector<Vec> tri = {Vec{Q(1, 2), Q(1, 2)}, Vec{4, 0}, Vec{0, 4}};
  MinSimplexResult r = min_on_simplex(z, tri);
  CHECK(r.dist2 == 0);
  CHECK(r.argmin == Vec{Q(1, 2), Q(1, 2)});
  CHECK(r.closest == r.argmin);
  CHECK(simplex_min_certified(z, tri, r));
}

TEST_CASE("generator sets on the affine line") {
  Patch p1 = generate_patch("a1t", 1);
  CHECK_THROWS_WITH_AS(build_generators(p1, Richness::Rich), doctest::Contains("radius"),
                       Error);

  Patch p = generate_patch("a1t", 2);
  GeneratorSet almost = build_generators(p, Richness::AlmostRich);
  CHECK(vset(almost.vectors) == vset({Vec{-1}, Vec{1}}));
  CHECK(almost.invariance_verified);

  GeneratorSet rich = build_generators(p, Richness::Rich);
  CHECK(vset(rich.vectors) == vset({Vec{-2}, Vec{-1}, Vec{1}, Vec{2}}));

  GeneratorSet orbit = build_generators(p, Richness::OrbitClosure);
  CHECK(vset(orbit.vectors) == vset({Vec{-1}, Vec{1}}));
}

TEST_CASE("generator sets in the plane") {
  Patch p = generate_patch("c2t", 1);
  GeneratorSet d = build_generators(p, Richness::AlmostRich);
  Q h(1, 2);
  CHECK(vset(d.vectors) == vset({Vec{h, 0}, Vec{-h, 0}, Vec{0, h}, Vec{0, -h},
                                 Vec{h, h}, Vec{h, -h}, Vec{-h, h}, Vec{-h, -h}}));

  Zonotope z = zonotope_of(d);
  CHECK(z.vertices.size() == 8);  // octagon
  CHECK(z.facets.size() == 8);
  CHECK(zonotope_invariant_under(z, p.weyl));
  Vec far{Q(3, 2), Q(1, 2)};
  CHECK(z.contains(far));

  Patch pa = generate_patch("a2t", 1);
  GeneratorSet da = build_generators(pa, Richness::AlmostRich);
  // every adjacent difference is a signed permutation of (2,-1,-1)/3
  CHECK(da.vectors.size() == 6);
  for (const auto& v : da.vectors) {
    std::multiset<Q> entries(v.c.begin(), v.c.end());
    bool plus = entries == std::multiset<Q>{Q(2, 3), Q(-1, 3), Q(-1, 3)};
    bool minus = entries == std::multiset<Q>{Q(-2, 3), Q(1, 3), Q(1, 3)};
    CHECK((plus || minus));
  }
  Zonotope za = zonotope_of(da);
  CHECK(za.deff == 2);
  CHECK(zonotope_invariant_under(za, pa.weyl));

  GeneratorSet orb = build_generators(pa, Richness::OrbitClosure);
  CHECK(orb.vectors.size() == 6);  // full root orbit of the simple seeds

  std::vector<Vec> seed = {Vec{1, 0, 0, -1}};
  Patch pb = generate_patch("a3t", 1);
  GeneratorSet ds = build_generators(pb, Richness::OrbitClosure, &seed);
  CHECK(ds.vectors.size() == 12);  // orbit of one top root under W(A3)
}

TEST_CASE("minimum over patch simplices lands on a vertex for adjacent differences") {
  for (const char* tag : {"a1t", "a2t", "c2t"}) {
    Patch p = generate_patch(tag, tag == std::string("a1t") ? 2 : 1);
    Zonotope z = zonotope_of(build_generators(p, Richness::AlmostRich));
    for (const auto& s : p.complex.cells) {
      std::vector<Vec> pts;
      for (int v : s) pts.push_back(p.coords[v]);
      MinSimplexResult r = min_on_simplex(z, pts);
      CHECK(simplex_min_certified(z, pts, r));
      Q vmin = project(z, pts[0]).dist2;
      for (size_t i = 1; i < pts.size(); ++i)
        vmin = std::min(vmin, project(z, pts[i]).dist2);
      CHECK(r.dist2 == vmin);
    }
  }
}

TEST_CASE("chamber compatibility of faces and their normal cones") {
  Patch pb = generate_patch("c2t", 1);
  GeneratorSet square = direct({Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}, Vec{0, -1}});
  Zonotope z = zonotope_of(square);
  for (const Vec& n : {Vec{1, 0}, Vec{1, 1}, Vec{2, 1}, Vec{0, -1}}) {
    auto [f, cone] = face_and_cone(z, n);
    CHECK(weyl_chamber_check(z, pb.weyl, f, 8, 1));
  }

  Patch pa = generate_patch("a2t", 1);
  auto [rs, w] = build_system("a2");
  GeneratorSet roots;
  roots.vectors = rs.roots;
  Zonotope zh = zonotope_of(roots);
  CHECK(zh.vertices.size() == 6);
  for (const Vec& n : {Vec{1, 0, -1}, Vec{1, -2, 1}, Vec{2, -1, -1}}) {
    auto [f, cone] = face_and_cone(zh, n);
    CHECK(weyl_chamber_check(zh, w, f, 8, 1));
  }

  // a zonotope that breaks the symmetry is rejected up front
  Zonotope skew = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}}));
  auto [f, cone] = face_and_cone(skew, Vec{1, 0});
  CHECK_THROWS_AS(weyl_chamber_check(skew, pb.weyl, f, 4, 1), Error);
}

TEST_CASE("generator segments slide through the zonotope") {
  Patch p = generate_patch("c2t", 1);
  Zonotope z = zonotope_of(build_generators(p, Richness::AlmostRich));
  std::vector<Vec> probes = z.vertices;
  probes.push_back(z.center());
  probes.push_back(Vec{Q(1, 4), Q(-1, 8)});
  for (const auto& zp : probes)
    for (const auto& v : z.gens.vectors) CHECK(segment_through(z, zp, v));

  CHECK_THROWS_AS(segment_through(z, Vec{5, 5}, z.gens.vectors[0]), Error);
  CHECK_THROWS_AS(segment_through(z, z.center(), Vec{3, 3}), Error);
}

TEST_CASE("support function matches the vertex maximum") {
  Zonotope z = zonotope_of(direct({Vec{1, 0}, Vec{0, 1}, Vec{1, 1}, Vec{1, -1}}));
  Rng rng(3);
  for (int s = 0; s < 25; ++s) {
    Vec n{Q((long)rng.uniform(-5, 5)), Q((long)rng.uniform(-5, 5))};
    if (n.is_zero()) continue;
    Q best = dot(n, z.vertices[0]);
    for (const auto& v : z.vertices) best = std::max(best, Q(dot(n, v)));
    CHECK(z.support(n) == best);
  }
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(zonotope_of(direct({Vec{1, 0, 0, 0, 0}})), Error);
  std::vector<Vec> many;
  for (long k = 0; k < 16; ++k) many.push_back(Vec{1, Q(k)});
  many.push_back(Vec{0, 1});
  CHECK_THROWS_AS(zonotope_of(direct(many)), Error);
}
