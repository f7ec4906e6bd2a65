#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zonomorse/homology.hpp"
#include "zonomorse/morse.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

using namespace zm;

namespace {

Vec v1(Q x) {
  Vec v(1);
  v[0] = x;
  return v;
}

Vec v3(Q a, Q b, Q c) {
  Vec v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return v;
}

int vid_at(const Patch& p, const Vec& x) {
  int id = p.id_of(x);
  REQUIRE(id >= 0);
  return id;
}

Simplex simplex_at(const Patch& p, const std::vector<Vec>& pts) {
  Simplex s;
  for (const auto& x : pts) s.push_back(vid_at(p, x));
  return sorted_simplex(s);
}

// Key a simplex by its vertex coordinates so it can be matched across
// patches of different radii.
std::vector<Vec> coord_key(const Patch& p, const Simplex& s) {
  std::vector<Vec> k;
  for (int v : s) k.push_back(p.coords[v]);
  std::sort(k.begin(), k.end());
  return k;
}

Vec barycenter(const Patch& p, const Simplex& s) {
  Vec b(p.rs.ambient);
  for (int v : s) b += p.coords[v];
  return Q(1, (int)s.size()) * b;
}

// Exact check of 2 d(m) <= d(x) + d(y) given the squared distances.
bool midpoint_convex(const Q& d2m, const Q& d2x, const Q& d2y) {
  Q a = 4 * d2m, b = d2x, c = d2y;
  if (a <= b + c) return true;
  Q lhs = a - b - c;
  return lhs * lhs <= 4 * b * c;
}

struct LineSetup {
  Patch patch;
  Zonotope zono;
  HorizontalRegistry reg;
};

LineSetup line_setup(int radius) {
  LineSetup s{generate_patch("a1t", radius), {}, {}};
  s.zono = zonotope_of(build_generators(s.patch, Richness::AlmostRich));
  s.reg = build_registry(s.patch, s.zono);
  return s;
}

struct HexSetup {
  Patch patch;
  Zonotope zono;
  HorizontalRegistry reg;
};

HexSetup hex_setup(int radius, Richness level) {
  HexSetup s{generate_patch("a2t", radius), {}, {}};
  s.zono = zonotope_of(build_generators(s.patch, level));
  s.reg = build_registry(s.patch, s.zono);
  return s;
}

}  // namespace

TEST_CASE("height and gradient on the line") {
  auto s = line_setup(4);
  REQUIRE(s.zono.vertices.size() == 2);  // Z = [-1, 1]
  auto table = build_height_table(s.patch, s.zono);

  // squared heights (|k| - 1)^2 for |k| >= 1, zero inside Z
  for (int k = -4; k <= 4; ++k) {
    Q want = std::abs(k) <= 1 ? Q(0) : Q((std::abs(k) - 1) * (std::abs(k) - 1));
    CHECK(table.h2[vid_at(s.patch, v1(k))] == want);
  }

  auto [h2, grad] = height_and_gradient(table, v1(3));
  CHECK(h2 == 4);
  REQUIRE(grad.has_value());
  CHECK(*grad == v1(2));            // x - proj(x) = 3 - 1
  CHECK(primitive(*grad) == v1(1)); // pointing up the line

  auto [h0, g0] = height_and_gradient(table, v1(Q(1, 2)));
  CHECK(h0 == 0);
  CHECK(!g0.has_value());

  CHECK_THROWS_WITH_AS(height_and_gradient(table, v1(9)), doctest::Contains("outside"), Error);
}

TEST_CASE("codistance is the degenerate point-zonotope height") {
  Patch p = generate_patch("a1t", 3);
  Zonotope z = point_zonotope(1);
  auto table = build_height_table(p, z);
  TwinApartmentModel m{generate_patch("a1t", 3)};
  for (int k = -3; k <= 3; ++k) {
    int id = vid_at(p, v1(k));
    CHECK(table.h2[id] == k * k);
    auto cd = codistance_and_coray(m, v1(k), v1(0));
    CHECK(cd.dist2 == table.h2[id]);
  }
}

TEST_CASE("classification of horizontal simplices on the line") {
  auto s = line_setup(4);
  const auto& table = s.reg.table;

  auto e01 = simplex_at(s.patch, {v1(0), v1(1)});
  auto c01 = classify_horizontal(table, e01);
  CHECK(c01.horizontal);
  CHECK(c01.classes.size() == 1);

  auto e12 = simplex_at(s.patch, {v1(1), v1(2)});
  auto c12 = classify_horizontal(table, e12);
  CHECK(!c12.horizontal);
  CHECK(c12.classes.size() == 2);
  CHECK(c12.classes[0] == Simplex{vid_at(s.patch, v1(1))});  // classes sorted by height

  // every single vertex is trivially horizontal; registry holds all of them
  for (size_t v = 0; v < s.patch.coords.size(); ++v)
    CHECK(s.reg.registered({(int)v}));
  // exactly the two edges inside Z are horizontal
  int horizontal_edges = 0;
  for (const auto& info : s.reg.infos) horizontal_edges += info.simplex.size() == 2;
  CHECK(horizontal_edges == 2);
}

TEST_CASE("edge reports on the line") {
  auto s = line_setup(4);
  const auto& table = s.reg.table;

  auto e12 = simplex_at(s.patch, {v1(1), v1(2)});
  auto r = edge_check(table, e12);
  CHECK(r.monotone);
  CHECK(r.consistent);
  // endpoint order inside the sorted simplex
  int pos2 = e12[0] == vid_at(s.patch, v1(2)) ? 0 : 1;
  CHECK(!r.angle_sign[1 - pos2].has_value());  // no gradient at height zero
  REQUIRE(r.angle_sign[pos2].has_value());
  CHECK(*r.angle_sign[pos2] == -1);  // obtuse: h decreases toward 1

  auto e01 = simplex_at(s.patch, {v1(0), v1(1)});
  auto r0 = edge_check(table, e01);
  CHECK(r0.monotone);
  CHECK(r0.consistent);
  CHECK(!r0.angle_sign[0].has_value());
  CHECK(!r0.angle_sign[1].has_value());

  // exhaustive consistency across the patch
  for (const auto& e : s.patch.complex.cells_of_dim(1)) {
    auto re = edge_check(table, e);
    CHECK(re.monotone);
    CHECK(re.consistent);
  }
}

TEST_CASE("registry, moves, and subdivision on the line") {
  auto s = line_setup(4);
  const auto& g = moves_and_depth(s.reg);

  // nodes are the six positive-height vertices; no moves anywhere
  CHECK(g.nodes.size() == 6);
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(g.up[i].empty());
    CHECK(g.down[i].empty());
    CHECK(g.dp[i] == 0);
  }
  for (int k : {-3, -2, 2, 3}) {
    const auto& info = s.reg.info({vid_at(s.patch, v1(k))});
    CHECK(info.dp == 0);
    CHECK(info.dp_certified);
    REQUIRE(info.sigma_min.has_value());
    CHECK(*info.sigma_min == info.simplex);  // a vertex is its own minimum face
  }
  for (int k : {-4, 4})
    CHECK(!s.reg.info({vid_at(s.patch, v1(k))}).dp_certified);  // star cut off

  auto sub = subdivide(s.patch, s.reg);
  CHECK(sub.carriers.size() == s.patch.coords.size() + 2);  // two new barycenters
  CHECK(sub.complex.dim() == 1);
  CHECK(sub.complex.cells_of_dim(1).size() == 10);

  // barycenter coordinates are kept for reporting
  auto e01 = simplex_at(s.patch, {v1(0), v1(1)});
  CHECK(sub.barycenters[sub.vid.at(e01)] == v1(Q(1, 2)));

  // lexicographic values
  auto f2 = sub_morse(sub, sub.vid.at({vid_at(s.patch, v1(2))}));
  CHECK(f2.h2 == 1);
  CHECK(f2.dp == 0);
  CHECK(f2.dim == 0);
  SubMorseValue a{1, 0, 1}, b{1, 0, 0}, c{0, 5, 9};
  CHECK(b < a);   // dimension breaks the tie
  CHECK(c < b);   // height dominates
  CHECK(a.str() == "(1, 0, 1)");
}

TEST_CASE("descending links on the line") {
  auto s = line_setup(4);
  moves_and_depth(s.reg);
  auto sub = subdivide(s.patch, s.reg);

  // positive-height vertex 2: descending link = the single vertex 1
  int v2 = sub.vid.at({vid_at(s.patch, v1(2))});
  auto d2 = descending_link(sub, v2);
  Complex point;
  point.add_closed({sub.vid.at({vid_at(s.patch, v1(1))})});
  CHECK(d2.direct == point);
  CHECK(d2.predicted == d2.direct);
  CHECK(d2.lemma_checked);  // vertex is self-minimal
  CHECK(d2.ver_part == point);
  CHECK(d2.face_part.empty());
  CHECK(d2.hor_part.empty());

  // barycenter of the horizontal edge [0,1]: boundary sphere S^0
  auto e01 = simplex_at(s.patch, {v1(0), v1(1)});
  auto db = descending_link(sub, sub.vid.at(e01));
  CHECK(db.direct == db.predicted);
  CHECK(db.direct.vertex_set().size() == 2);
  CHECK(db.direct.cells_of_dim(1).empty());
  auto betti = betti_numbers(db.direct);
  CHECK(betti.btilde(0) == 1);  // two points: one reduced class

  // a ground vertex has an empty descending link
  auto d0 = descending_link(sub, sub.vid.at({vid_at(s.patch, v1(0))}));
  CHECK(d0.direct.empty());
  CHECK(d0.predicted.empty());

  // the boundary vertex has an incomplete star
  CHECK_THROWS_WITH_AS(descending_link(sub, sub.vid.at({vid_at(s.patch, v1(4))})),
                       doctest::Contains("star"), Error);
}

TEST_CASE("down and up sets on the line") {
  // hand-declared rich set realizing Z = [-1, 1]
  Patch p = generate_patch("a1t", 4);
  GeneratorSet d;
  d.vectors = {v1(1), v1(-1)};
  d.level = Richness::Rich;
  d.invariance_verified = true;
  Zonotope z = zonotope_of(d);
  auto reg = build_registry(p, z);
  auto du = down_up_sets(reg, {vid_at(p, v1(2))});
  CHECK(du.down == std::vector<int>{vid_at(p, v1(1))});
  CHECK(du.up == std::vector<int>{vid_at(p, v1(3))});
  REQUIRE(du.up_hull_min.has_value());
  CHECK(*du.up_hull_min == 4);
  CHECK(du.up_witness == vid_at(p, v1(3)));
  CHECK(du.separated);
  REQUIRE(du.witness.has_value());
  CHECK(separates(*du.witness, v1(2), v1(3)));

  // the built rich set on the line is {±1, ±2}, so Z = [-3, 3]
  Patch p5 = generate_patch("a1t", 5);
  auto rich = build_generators(p5, Richness::Rich);
  CHECK(rich.vectors.size() == 4);
  std::multiset<Q> firsts;
  for (const auto& v : rich.vectors) firsts.insert(v[0]);
  CHECK(firsts == std::multiset<Q>{-2, -1, 1, 2});
  Zonotope z3 = zonotope_of(rich);
  auto reg3 = build_registry(p5, z3);
  CHECK(reg3.table.h2[vid_at(p5, v1(4))] == 1);
  auto du4 = down_up_sets(reg3, {vid_at(p5, v1(4))});
  CHECK(du4.down == std::vector<int>{vid_at(p5, v1(3))});
  CHECK(du4.up == std::vector<int>{vid_at(p5, v1(5))});
  REQUIRE(du4.up_hull_min.has_value());
  CHECK(*du4.up_hull_min == 4);
  CHECK(du4.separated);

  CHECK_THROWS_WITH_AS(down_up_sets(reg3, {vid_at(p5, v1(1))}), doctest::Contains("positive"),
                       Error);
  auto almost = build_generators(p, Richness::AlmostRich);
  Zonotope za = zonotope_of(almost);
  auto rega = build_registry(p, za);
  CHECK_THROWS_WITH_AS(down_up_sets(rega, {vid_at(p, v1(3))}), doctest::Contains("rich"), Error);
}

TEST_CASE("hexagon patch: gradient criterion and classification oracle") {
  auto s = hex_setup(9, Richness::AlmostRich);
  const auto& table = s.reg.table;

  // exhaustive: h is monotone on every edge and angle signs match the
  // strict height comparisons
  for (const auto& e : s.patch.complex.cells_of_dim(1)) {
    auto r = edge_check(table, e);
    CHECK(r.monotone);
    CHECK(r.consistent);
  }

  // classification agrees with the direct minimum oracle on every simplex
  for (const auto& cell : s.patch.complex.cells) {
    bool constant = true;
    for (int v : cell) constant = constant && table.h2[v] == table.h2[cell[0]];
    std::vector<Vec> pts;
    for (int v : cell) pts.push_back(s.patch.coords[v]);
    bool oracle = constant && min_on_simplex(s.zono, pts).dist2 == table.h2[cell[0]];
    CHECK(classify_horizontal(table, cell).horizontal == oracle);
  }

  // gradient at 3*omega_1 lies in the normal cone of its projection face
  Vec x = v3(2, -1, -1);
  auto [h2, grad] = height_and_gradient(table, x);
  REQUIRE(h2 > 0);
  REQUIRE(grad.has_value());
  auto pr = project(s.zono, x);
  CHECK(*grad == x - pr.point);
  auto [face, cone] = face_and_cone(s.zono, *grad);
  CHECK(cone.contains(*grad));
  CHECK(dot(*grad, pr.point) == s.zono.support(*grad));
}

TEST_CASE("hexagon patch: flow on horizontal simplices and convexity") {
  auto s = hex_setup(7, Richness::AlmostRich);
  const auto& table = s.reg.table;

  int positive_horizontals = 0;
  for (const auto& info : s.reg.infos) {
    if (info.h2 == 0) continue;
    ++positive_horizontals;
    // independent barycenter evaluation: same height, same gradient vector
    Vec bc = barycenter(s.patch, info.simplex);
    auto [h2, grad] = height_and_gradient(table, bc);
    CHECK(h2 == info.h2);
    REQUIRE(grad.has_value());
    CHECK(*grad == info.gradient);
    // gradient orthogonal to the simplex pins the minimum at the barycenter
    std::vector<Vec> pts;
    for (int v : info.simplex) pts.push_back(s.patch.coords[v]);
    CHECK(min_on_simplex(s.zono, pts).dist2 == h2);
  }
  CHECK(positive_horizontals > 0);

  // exact convexity of d(Z,.) on sampled in-alcove triples
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& a = s.patch.alcoves[rng.uniform(0, (int)s.patch.alcoves.size() - 1)];
    auto sample = [&]() {
      Vec x(s.patch.rs.ambient);
      Q total = 0;
      for (int v : a) {
        Q w = rng.uniform(0, 5);
        x += w * s.patch.coords[v];
        total += w;
      }
      if (total == 0) return s.patch.coords[a[0]];
      return Q(1) / total * x;
    };
    Vec x = sample(), y = sample();
    Vec m = Q(1, 2) * (x + y);
    Q dx = project(s.zono, x).dist2;
    Q dy = project(s.zono, y).dist2;
    Q dm = project(s.zono, m).dist2;
    CHECK(midpoint_convex(dm, dx, dy));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("hexagon patch: sigma_min, wedging, and depth stability") {
  auto s3 = hex_setup(7, Richness::AlmostRich);
  const auto& g3 = moves_and_depth(s3.reg);

  // vertices are their own minimum face
  for (const auto& info : s3.reg.infos)
    if (info.h2 > 0 && info.simplex.size() == 1 && info.sigma_min)
      CHECK(*info.sigma_min == info.simplex);

  // wedging: sigma_min is constant between sigma_min and sigma
  int wedged = 0;
  for (const auto& info : s3.reg.infos) {
    if (info.h2 == 0 || !info.sigma_min) continue;
    for (const auto& tau : nonempty_faces(info.simplex)) {
      if (!std::includes(tau.begin(), tau.end(), info.sigma_min->begin(),
                         info.sigma_min->end()))
        continue;
      CHECK(sigma_min(s3.reg, tau) == *info.sigma_min);
      ++wedged;
    }
  }
  CHECK(wedged > 0);

  // moves connect faces and cofaces only, and depths are finite
  for (size_t i = 0; i < g3.nodes.size(); ++i) {
    for (int j : g3.up[i])
      CHECK(std::includes(g3.nodes[j].begin(), g3.nodes[j].end(), g3.nodes[i].begin(),
                          g3.nodes[i].end()));
    for (int j : g3.down[i])
      CHECK(std::includes(g3.nodes[i].begin(), g3.nodes[i].end(), g3.nodes[j].begin(),
                          g3.nodes[j].end()));
    CHECK(g3.dp[i] >= 0);
  }

  // certified depths survive a radius increase
  auto s4 = hex_setup(8, Richness::AlmostRich);
  moves_and_depth(s4.reg);
  std::map<std::vector<Vec>, int> dp4;
  for (const auto& info : s4.reg.infos)
    if (info.h2 > 0) dp4[coord_key(s4.patch, info.simplex)] = info.dp;
  int compared = 0;
  for (const auto& info : s3.reg.infos) {
    if (info.h2 == 0 || !info.dp_certified) continue;
    auto it = dp4.find(coord_key(s3.patch, info.simplex));
    REQUIRE(it != dp4.end());
    CHECK(it->second == info.dp);
    ++compared;
  }
  CHECK(compared > 0);
}

TEST_CASE("hexagon patch: subdivision structure") {
  auto s = hex_setup(9, Richness::AlmostRich);
  moves_and_depth(s.reg);
  auto sub = subdivide(s.patch, s.reg);

  // adjacent subdivision vertices always have distinct values
  for (const auto& e : sub.complex.cells_of_dim(1))
    CHECK(sub_morse(sub, e[0]) != sub_morse(sub, e[1]));

  // the subdivision is a flag complex: cliques of the edge graph are cells
  std::set<Simplex> edges;
  for (const auto& e : sub.complex.cells_of_dim(1)) edges.insert(e);
  auto adjacent = [&](int a, int b) {
    Simplex e{std::min(a, b), std::max(a, b)};
    return edges.count(e) > 0;
  };
  std::vector<int> verts(sub.carriers.size());
  for (size_t i = 0; i < verts.size(); ++i) verts[i] = (int)i;
  long cliques = 0;
  std::vector<int> cur;
  std::function<void(size_t)> grow = [&](size_t start) {
    for (size_t i = start; i < verts.size(); ++i) {
      bool ok = true;
      for (int m : cur)
        if (!adjacent(m, verts[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(verts[i]);
      ++cliques;
      CHECK(sub.complex.contains(Simplex(cur.begin(), cur.end())));
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(0);
  CHECK(cliques == (long)sub.complex.cells.size());

  // local patterns: all-distinct alcoves keep their combinatorics, alcoves
  // with one horizontal edge split in two, fully horizontal alcoves turn
  // into their full barycentric subdivision (6 triangles)
  int plain = 0, split2 = 0, full6 = 0;
  for (const auto& a : s.patch.alcoves) {
    auto cls = classify_horizontal(s.reg.table, a);
    std::vector<int> local;
    for (int i = 0; i < (int)sub.carriers.size(); ++i)
      if (std::includes(a.begin(), a.end(), sub.carriers[i].begin(), sub.carriers[i].end()))
        local.push_back(i);
    std::set<int> keep(local.begin(), local.end());
    auto piece = sub.complex.full_subcomplex(keep);
    size_t top = piece.cells_of_dim(2).size();
    std::multiset<size_t> sizes;
    for (const auto& c : cls.classes) sizes.insert(c.size());
    if (sizes == std::multiset<size_t>{1, 1, 1}) {
      CHECK(top == 1);
      ++plain;
    } else if (sizes == std::multiset<size_t>{1, 2}) {
      CHECK(top == 2);
      ++split2;
    } else if (sizes == std::multiset<size_t>{3}) {
      CHECK(top == 6);
      ++full6;
    }
  }
  CHECK(plain > 0);
  CHECK(split2 > 0);
  CHECK(full6 > 0);
}

TEST_CASE("hexagon patch: descending links, direct vs predicted") {
  auto s = hex_setup(9, Richness::AlmostRich);
  moves_and_depth(s.reg);
  auto sub = subdivide(s.patch, s.reg);

  int computed = 0, self_min = 0, not_min = 0;
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    DescendingLink d;
    try {
      d = descending_link(sub, v);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    ++computed;
    CHECK(d.direct == d.predicted);
    const auto& info = s.reg.infos[v];
    if (info.h2 == 0) {
      if (info.simplex.size() > 1) {
        // ground barycenter: descending link is the subdivided boundary sphere
        auto betti = betti_numbers(d.direct);
        CHECK(betti.spherical((int)info.simplex.size() - 2));
        CHECK(betti.btilde((int)info.simplex.size() - 2) == 1);
      } else {
        CHECK(d.direct.empty());
      }
      continue;
    }
    REQUIRE(info.sigma_min.has_value());
    if (*info.sigma_min == info.simplex) {
      ++self_min;
      CHECK(d.lemma_checked);
    } else {
      ++not_min;
      CHECK(!d.lemma_checked);
      // a simplex that is not its own minimum has a contractible descending
      // link: the minimum face moved up, so its barycenter is missing, while
      // every face avoiding the minimum moved down and is present
      CHECK(is_acyclic(d.direct));
      auto vs = d.direct.vertex_set();
      CHECK(vs.count(sub.vid.at(*info.sigma_min)) == 0);
      for (const auto& tau : proper_faces(info.simplex))
        if (!std::includes(tau.begin(), tau.end(), info.sigma_min->begin(),
                           info.sigma_min->end()))
          CHECK(vs.count(sub.vid.at(tau)) == 1);
    }
  }
  CHECK(computed > 0);
  CHECK(self_min > 0);
}

TEST_CASE("hexagon patch: filtration stages") {
  auto s = hex_setup(9, Richness::AlmostRich);
  moves_and_depth(s.reg);
  auto sub = subdivide(s.patch, s.reg);

  auto vals = filtration_values(sub);
  REQUIRE(!vals.empty());
  for (size_t i = 0; i + 1 < vals.size(); ++i) CHECK(vals[i] < vals[i + 1]);
  CHECK(vals[0] == SubMorseValue{0, 0, 0});

  auto rank_of_value = [&](const SubMorseValue& f) {
    return (int)(std::lower_bound(vals.begin(), vals.end(), f) - vals.begin());
  };

  // ground stage: exactly the zero-height patch vertices
  auto stage0 = filtration_stage(sub, 0);
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    bool in = stage0.vertex_set().count(v) > 0;
    CHECK(in == (sub_morse(sub, v) == vals[0]));
  }

  // stages grow and exhaust the complex
  Complex prev;
  for (int j = 0; j < (int)vals.size(); ++j) {
    auto st = filtration_stage(sub, j);
    for (const auto& cell : prev.cells) CHECK(st.contains(cell));
    // new vertices never span edges with each other
    std::vector<int> fresh;
    for (int v : st.vertex_set())
      if (rank_of_value(sub_morse(sub, v)) == j) fresh.push_back(v);
    for (size_t a = 0; a < fresh.size(); ++a)
      for (size_t b = a + 1; b < fresh.size(); ++b)
        CHECK(!st.contains({std::min(fresh[a], fresh[b]), std::max(fresh[a], fresh[b])}));
    // relative link of each new vertex = its descending link
    for (int v : fresh) {
      DescendingLink d;
      try {
        d = descending_link(sub, v);
      } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::InsufficientRadius);
        continue;
      }
      CHECK(st.link({v}) == d.direct);
    }
    prev = st;
  }
  CHECK(prev == sub.complex);
  CHECK(filtration_stage(sub, (int)vals.size() + 5) == sub.complex);
}

TEST_CASE("rich hexagon: down and up sets across the registry") {
  // the rich zonotope swallows origin-centered patches, so work on a patch
  // based at a far lattice point along the omega_1 axis
  Patch seed = generate_patch("a2t", 4);
  Zonotope z = zonotope_of(build_generators(seed, Richness::Rich));
  Patch p = generate_patch("a2t", 5, v3(Q(20, 3), Q(-10, 3), Q(-10, 3)));
  auto reg = build_registry(p, z);
  moves_and_depth(reg);

  int examined = 0, with_up = 0;
  for (const auto& info : reg.infos) {
    if (info.h2 == 0 || !info.sigma_min || *info.sigma_min != info.simplex) continue;
    DownUp du;
    try {
      du = down_up_sets(reg, info.simplex);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    ++examined;
    CHECK(du.separated);
    if (!du.up.empty()) {
      ++with_up;
      REQUIRE(du.up_hull_min.has_value());
      CHECK(*du.up_hull_min > info.h2);
      REQUIRE(du.witness.has_value());
    }
    // equatorial directions are exactly the equal-height neighbors
    const auto& sl = split_link(reg, info.simplex);
    for (int u : sl.equatorial) CHECK(reg.table.h2[u] == info.h2);
  }
  CHECK(examined > 0);
  CHECK(with_up > 0);
}

TEST_CASE("corridor patch: horizontal edges at positive height") {
  // level-set corridors of the rich octagonal zonotope run along walls;
  // the patch sits at its right facet
  Patch seed = generate_patch("c2t", 4);
  Zonotope z = zonotope_of(build_generators(seed, Richness::Rich));
  Vec base(2);
  base[0] = 8;
  Patch p = generate_patch("c2t", 6, base);
  auto reg = build_registry(p, z);
  moves_and_depth(reg);

  std::vector<const HorizontalInfo*> pos_edges;
  for (const auto& info : reg.infos)
    if (info.h2 > 0 && info.simplex.size() == 2) pos_edges.push_back(&info);
  REQUIRE(!pos_edges.empty());

  int resolved_edges = 0;
  for (const auto* info : pos_edges) {
    // gradient is orthogonal to the edge by construction; the link S^0 of
    // the edge pairs nontrivially with the gradient, hence is vertical
    const SplitLink* sl = nullptr;
    try {
      sl = &split_link(reg, info->simplex);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    CHECK(sl->link.verts.size() == 2);
    for (bool hor : sl->factor_horizontal) CHECK(!hor);

    // every corridor edge drains to its non-special endpoint: only there
    // does the link split off a horizontal rank-one factor holding the
    // opposite endpoint
    Simplex mn;
    try {
      mn = sigma_min(reg, info->simplex);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    ++resolved_edges;
    REQUIRE(mn.size() == 1);
    CHECK(!p.special[mn[0]]);
    int other = info->simplex[0] == mn[0] ? info->simplex[1] : info->simplex[0];
    const auto& vl = split_link(reg, mn);
    CHECK(vl.factor_horizontal[vl.link.factor_of.at(other)]);
    CHECK(std::count(vl.equatorial.begin(), vl.equatorial.end(), other) == 1);
  }
  CHECK(resolved_edges > 0);

  // down and up sets at self-minimal vertices, including equatorial ones
  int examined = 0, nonzero_depth = 0;
  for (const auto& info : reg.infos) {
    if (info.h2 == 0) continue;
    if (info.dp_certified && info.dp > 0) ++nonzero_depth;
    if (info.simplex.size() != 1 || !info.dp_certified) continue;
    DownUp du;
    try {
      du = down_up_sets(reg, info.simplex);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    ++examined;
    CHECK(du.separated);
    if (!du.up.empty()) {
      REQUIRE(du.up_hull_min.has_value());
      CHECK(*du.up_hull_min > info.h2);
    }
  }
  CHECK(examined > 0);
  CHECK(nonzero_depth > 0);  // corridor vertices sit above the plateau edges

  // a simplex that is not its own minimum has a contractible descending link:
  // the minimum face moved up, so its barycenter is missing from the link,
  // while every face avoiding the minimum moved down and is present
  auto sub = subdivide(p, reg);
  int punctured = 0;
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    const auto& info = reg.infos[v];
    if (info.h2 == 0 || !info.sigma_min || *info.sigma_min == info.simplex) continue;
    DescendingLink d;
    try {
      d = descending_link(sub, v);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::InsufficientRadius);
      continue;
    }
    ++punctured;
    CHECK(d.direct == d.predicted);
    CHECK(is_acyclic(d.direct));
    auto vs = d.direct.vertex_set();
    CHECK(vs.count(sub.vid.at(*info.sigma_min)) == 0);
    for (const auto& tau : proper_faces(info.simplex))
      if (!std::includes(tau.begin(), tau.end(), info.sigma_min->begin(),
                         info.sigma_min->end()))
        CHECK(vs.count(sub.vid.at(tau)) == 1);
  }
  CHECK(punctured > 0);
}

TEST_CASE("cube-lattice patch: minimum faces and the move graph") {
  // three-dimensional patch at the facet plateau of the zonotope; here the
  // plateau is wide enough to carry horizontal triangles
  Patch seed = generate_patch("b3t", 4);
  Zonotope z = zonotope_of(build_generators(seed, Richness::AlmostRich));
  Vec base(3);
  base[0] = 6;
  Patch p = generate_patch("b3t", 6, base);
  auto reg = build_registry(p, z);
  const auto& g = moves_and_depth(reg);

  auto len2 = [&](const Simplex& e) { return norm2(p.coords[e[0]] - p.coords[e[1]]); };

  // triangles whose minimum face is a single vertex, with real wedging
  // content: the minimum is constant on the edges between
  int triangles_to_vertex = 0, wedged = 0, self_min_edges = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (!g.resolved[i]) continue;
    const Simplex& s = g.nodes[i];
    Simplex mn = sigma_min(reg, s);
    if (s.size() == 3 && mn.size() == 1) {
      ++triangles_to_vertex;
      for (const auto& tau : proper_faces(s)) {
        if (tau.size() != 2 ||
            !std::includes(tau.begin(), tau.end(), mn.begin(), mn.end()))
          continue;
        try {
          CHECK(sigma_min(reg, tau) == mn);
          ++wedged;
        } catch (const Error& e) {
          REQUIRE(e.kind == ErrorKind::InsufficientRadius);
        }
      }
    }
    if (s.size() == 2 && mn == s) ++self_min_edges;
  }
  CHECK(triangles_to_vertex > 0);
  CHECK(wedged > 0);
  CHECK(self_min_edges > 0);

  // short edges exist as nodes, yet moves never join a triangle with a
  // short edge: every triangle-edge move involves a unit edge
  std::set<Q> node_edge_lengths;
  for (const auto& n : g.nodes)
    if (n.size() == 2) node_edge_lengths.insert(len2(n));
  CHECK(node_edge_lengths.count(Q(1, 4)) == 1);
  CHECK(node_edge_lengths.count(Q(1, 2)) == 1);
  CHECK(node_edge_lengths.count(Q(1)) == 1);
  int triangle_edge_moves = 0;
  auto scan = [&](int a, int b) {
    const Simplex &sa = g.nodes[a], &sb = g.nodes[b];
    if (sa.size() + sb.size() != 5) return;  // triangle with edge
    const Simplex& e = sa.size() == 2 ? sa : sb;
    ++triangle_edge_moves;
    CHECK(len2(e) == 1);
  };
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    for (int j : g.up[i]) scan((int)i, j);
    for (int j : g.down[i]) scan((int)i, j);
  }
  CHECK(triangle_edge_moves > 0);
}
