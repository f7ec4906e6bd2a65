#include "zonomorse/zonotope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zm {

std::string richness_name(Richness r) {
  switch (r) {
    case Richness::OrbitClosure: return "orbit-closure";
    case Richness::AlmostRich: return "almost-rich";
    case Richness::Rich: return "rich";
  }
  return "?";
}

std::optional<Richness> richness_from_name(const std::string& s) {
  if (s == "orbit-closure") return Richness::OrbitClosure;
  if (s == "almost-rich") return Richness::AlmostRich;
  if (s == "rich") return Richness::Rich;
  return std::nullopt;
}

bool GeneratorSet::contains(const Vec& v) const {
  return std::find(vectors.begin(), vectors.end(), v) != vectors.end();
}

namespace {

std::set<Vec> weyl_orbit(const WeylGroup& w, const std::set<Vec>& seeds) {
  std::set<Vec> out;
  for (const auto& v : seeds)
    for (const auto& m : w.elements) out.insert(m.apply(v));
  return out;
}

bool weyl_closed(const WeylGroup& w, const std::set<Vec>& s) {
  for (const auto& v : s)
    for (const auto& g : w.generators)
      if (!s.count(g.apply(v))) return false;
  return true;
}

// Closed-star intersection of two distinct vertices: some alcove at u and
// some alcove at v share a vertex, i.e. their closed vertex neighborhoods
// (within alcoves, which is all of them in a pure complex) meet.
std::set<int> closed_neighborhood(const Patch& p, int u) {
  std::set<int> nb = {u};
  for (const auto& a : p.alcoves_containing({u}))
    for (int x : a) nb.insert(x);
  return nb;
}

}  // namespace

GeneratorSet build_generators(const Patch& patch, Richness level,
                              const std::vector<Vec>* orbit_seed) {
  GeneratorSet d;
  d.level = level;
  std::set<Vec> vecs;

  if (level == Richness::OrbitClosure) {
    std::set<Vec> seeds;
    if (orbit_seed) {
      for (const auto& v : *orbit_seed) seeds.insert(v);
    } else {
      for (const auto& v : patch.rs.simple) seeds.insert(v);
    }
    require(!seeds.empty(), ErrorKind::Precondition, "orbit closure needs seed vectors");
    vecs = weyl_orbit(patch.weyl, seeds);
  } else if (level == Richness::AlmostRich) {
    for (const auto& e : patch.complex.cells_of_dim(1)) {
      vecs.insert(patch.coords[e[0]] - patch.coords[e[1]]);
      vecs.insert(patch.coords[e[1]] - patch.coords[e[0]]);
    }
  } else {
    // pairs whose closed stars are entirely visible decide the set ...
    std::vector<std::set<int>> nb(patch.coords.size());
    for (size_t u = 0; u < patch.coords.size(); ++u)
      nb[u] = closed_neighborhood(patch, (int)u);
    for (size_t u = 0; u < patch.coords.size(); ++u)
      for (size_t v = u + 1; v < patch.coords.size(); ++v) {
        if (!patch.star_complete({(int)u}) || !patch.star_complete({(int)v})) continue;
        std::vector<int> common;
        std::set_intersection(nb[u].begin(), nb[u].end(), nb[v].begin(), nb[v].end(),
                              std::back_inserter(common));
        if (common.empty()) continue;
        vecs.insert(patch.coords[u] - patch.coords[v]);
        vecs.insert(patch.coords[v] - patch.coords[u]);
      }
    vecs = weyl_orbit(patch.weyl, vecs);
    // ... and every visibly star-intersecting pair must then be covered
    for (size_t u = 0; u < patch.coords.size(); ++u)
      for (size_t v = u + 1; v < patch.coords.size(); ++v) {
        std::vector<int> common;
        std::set_intersection(nb[u].begin(), nb[u].end(), nb[v].begin(), nb[v].end(),
                              std::back_inserter(common));
        if (common.empty()) continue;
        require(vecs.count(patch.coords[u] - patch.coords[v]) > 0,
                ErrorKind::InsufficientRadius,
                "rich generator set incomplete at this radius");
      }
  }

  for (const auto& v : vecs)
    require(!v.is_zero(), ErrorKind::Precondition, "zero generator");
  require(weyl_closed(patch.weyl, vecs), ErrorKind::InsufficientRadius,
          "generator set is not Weyl-invariant; patch radius too small");
  d.vectors.assign(vecs.begin(), vecs.end());
  d.invariance_verified = true;

  if (level == Richness::AlmostRich || level == Richness::Rich) {
    for (const auto& e : patch.complex.cells_of_dim(1))
      require(d.contains(patch.coords[e[0]] - patch.coords[e[1]]),
              ErrorKind::InsufficientRadius, "adjacent-vertex difference missing");
  }
  return d;
}

bool Zonotope::in_span(const Vec& x) const {
  for (const auto& k : span_complement)
    if (dot(k, x) != 0) return false;
  return true;
}

bool Zonotope::contains(const Vec& x) const {
  if (x.dim() != ambient) return false;
  if (!in_span(x)) return false;
  for (const auto& f : facets)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

Q Zonotope::support(const Vec& n) const {
  Q s = 0;
  for (const auto& v : gens.vectors) {
    Q p = dot(n, v);
    if (p > 0) s += p;
  }
  return s;
}

Vec Zonotope::center() const {
  Vec c(ambient);
  for (const auto& v : gens.vectors) c += v;
  return Q(1, 2) * c;
}

Zonotope zonotope_of(const GeneratorSet& d) {
  require(!d.vectors.empty(), ErrorKind::Precondition, "empty generator set");
  Zonotope z;
  z.gens = d;
  z.ambient = d.vectors[0].dim();
  require(z.ambient <= 4, ErrorKind::Capacity, "ambient dimension above 4");

  // merge parallel generators: being segments, they sum to one segment per line
  std::map<Vec, std::pair<Q, Q>> lines;  // primitive -> (lo, hi) multiples
  for (const auto& v : d.vectors) {
    require(v.dim() == z.ambient, ErrorKind::Precondition, "mixed dimensions");
    require(!v.is_zero(), ErrorKind::Precondition, "zero generator");
    Vec w = primitive(v);
    int lead = 0;
    while (w[lead] == 0) ++lead;
    Q c = v[lead] / w[lead];
    auto& [lo, hi] = lines[w];
    if (c < 0) lo += c;
    else hi += c;
  }
  require((int)lines.size() <= 16, ErrorKind::Capacity,
          "more than 16 generator lines");

  z.t0 = Vec(z.ambient);
  for (const auto& [w, range] : lines) {
    z.t0 += range.first * w;
    Q len = range.second - range.first;
    if (len > 0) z.merged.push_back(len * w);
  }
  for (const auto& u : z.merged) {
    std::vector<Vec> probe = z.span_basis;
    probe.push_back(u);
    if (rank_of(probe) > (int)z.span_basis.size()) z.span_basis.push_back(u);
  }
  z.deff = (int)z.span_basis.size();
  {
    std::vector<Vec> rows = z.merged;
    auto sol = solve_linear(rows, Vec((int)rows.size()));
    z.span_complement = sol.kernel;
  }

  // H-representation: candidate normals orthogonal to deff-1 generator lines
  std::set<Vec> candidates;
  const int L = (int)z.merged.size();
  const int pick = z.deff - 1;
  std::vector<int> idx(pick);
  auto try_subset = [&](const std::vector<int>& sub) {
    std::vector<Vec> rows = {Vec(z.ambient)};  // fixes the column count
    for (int i : sub) rows.push_back(z.merged[i]);
    for (const auto& k : z.span_complement) rows.push_back(k);
    auto sol = solve_linear(rows, Vec((int)rows.size()));
    if ((int)sol.kernel.size() != 1) return;
    Vec n = primitive(sol.kernel[0]);
    candidates.insert(n);
    candidates.insert(-n);
  };
  if (pick == 0) {
    try_subset({});
  } else if (pick > 0) {
    std::vector<int> sub(pick);
    auto rec = [&](auto&& self, int from, int k) -> void {
      if (k == pick) {
        try_subset(sub);
        return;
      }
      for (int i = from; i < L; ++i) {
        sub[k] = i;
        self(self, i + 1, k + 1);
      }
    };
    rec(rec, 0, 0);
  }
  for (const auto& n : candidates) {
    std::vector<Vec> ortho;
    for (const auto& u : z.merged)
      if (dot(n, u) == 0) ortho.push_back(u);
    if (rank_of(ortho) != z.deff - 1) continue;
    z.facets.push_back({n, z.support(n)});
  }

  // V-representation: subset sums of the merged segments, kept when the
  // active facet normals span the full effective dimension
  std::set<Vec> sums;
  require(L <= 16, ErrorKind::Capacity, "sign enumeration too large");
  for (unsigned mask = 0; mask < (1u << L); ++mask) {
    Vec p = z.t0;
    for (int i = 0; i < L; ++i)
      if (mask & (1u << i)) p += z.merged[i];
    sums.insert(p);
  }
  for (const auto& p : sums) {
    std::vector<Vec> active;
    for (const auto& f : z.facets) {
      Q v = dot(f.normal, p);
      require(v <= f.offset, ErrorKind::PaperContradiction,
              "generated point violates a facet");
      if (v == f.offset) active.push_back(f.normal);
    }
    if ((int)active.size() >= z.deff && rank_of(active) == z.deff)
      z.vertices.push_back(p);
    if (z.deff == 0) z.vertices.push_back(p);
  }

  // cross-validation of the two representations
  require(!z.vertices.empty(), ErrorKind::PaperContradiction, "no vertices");
  for (const auto& f : z.facets) {
    Q best = dot(f.normal, z.vertices[0]);
    std::vector<Vec> attain;
    for (const auto& p : z.vertices) {
      Q v = dot(f.normal, p);
      if (v > best) best = v;
    }
    require(best == f.offset, ErrorKind::PaperContradiction,
            "facet offset differs from the vertex maximum");
    for (const auto& p : z.vertices)
      if (dot(f.normal, p) == f.offset) attain.push_back(p - z.vertices[0]);
    std::vector<Vec> diffs;
    for (size_t i = 1; i < attain.size(); ++i) diffs.push_back(attain[i] - attain[0]);
    require(!attain.empty() && rank_of(diffs) == z.deff - 1,
            ErrorKind::PaperContradiction, "facet not spanned by its vertices");
  }
  {
    require(z.contains(Vec(z.ambient)), ErrorKind::PaperContradiction,
            "zonotope lost the origin");
    Vec full(z.ambient);
    for (const auto& v : d.vectors) full += v;
    std::set<Vec> vs(z.vertices.begin(), z.vertices.end());
    for (const auto& p : vs)
      require(vs.count(full - p) > 0, ErrorKind::PaperContradiction,
              "vertex set is not centrally symmetric");
  }

  // face lattice: facet vertex sets closed under intersection
  std::map<Vec, int> vix;
  for (size_t i = 0; i < z.vertices.size(); ++i) vix[z.vertices[i]] = (int)i;
  std::set<std::vector<int>> sets;
  for (const auto& f : z.facets) {
    std::vector<int> on;
    for (size_t i = 0; i < z.vertices.size(); ++i)
      if (dot(f.normal, z.vertices[i]) == f.offset) on.push_back((int)i);
    sets.insert(on);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> snap(sets.begin(), sets.end());
    for (size_t i = 0; i < snap.size(); ++i)
      for (size_t j = i + 1; j < snap.size(); ++j) {
        std::vector<int> inter;
        std::set_intersection(snap[i].begin(), snap[i].end(), snap[j].begin(),
                              snap[j].end(), std::back_inserter(inter));
        if (!inter.empty() && sets.insert(inter).second) grew = true;
      }
  }
  auto make_face = [&](const std::vector<int>& ids, bool improper) {
    Zonotope::Face f;
    f.vertex_ids = ids;
    if (!improper)
      for (size_t i = 0; i < z.facets.size(); ++i) {
        bool on = true;
        for (int v : ids)
          if (dot(z.facets[i].normal, z.vertices[v]) != z.facets[i].offset) {
            on = false;
            break;
          }
        if (on) f.active_facets.push_back((int)i);
      }
    for (size_t i = 1; i < ids.size(); ++i) {
      Vec dvec = z.vertices[ids[i]] - z.vertices[ids[0]];
      std::vector<Vec> probe = f.basis;
      probe.push_back(dvec);
      if (rank_of(probe) > (int)f.basis.size()) f.basis.push_back(dvec);
    }
    f.dim = (int)f.basis.size();
    return f;
  };
  std::vector<std::vector<int>> ordered(sets.begin(), sets.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (const auto& ids : ordered) z.faces.push_back(make_face(ids, false));
  std::vector<int> all(z.vertices.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
  Zonotope::Face improper = make_face(all, true);
  improper.basis = z.span_basis;
  improper.dim = z.deff;
  z.faces.push_back(improper);
  return z;
}

Zonotope point_zonotope(int ambient) {
  require(ambient >= 1 && ambient <= 4, ErrorKind::Capacity, "bad ambient dimension");
  Zonotope z;
  z.ambient = ambient;
  z.deff = 0;
  z.t0 = Vec(ambient);
  for (int i = 0; i < ambient; ++i) {
    Vec e(ambient);
    e[i] = 1;
    z.span_complement.push_back(e);
  }
  z.vertices = {Vec(ambient)};
  Zonotope::Face improper;
  improper.vertex_ids = {0};
  z.faces.push_back(improper);
  return z;
}

bool zonotope_invariant_under(const Zonotope& z, const WeylGroup& w) {
  std::set<Vec> vs(z.vertices.begin(), z.vertices.end());
  for (const auto& m : w.elements) {
    for (const auto& p : z.vertices)
      if (!vs.count(m.apply(p))) return false;
  }
  return true;
}

bool NormalConeDesc::contains(const Vec& y) const {
  for (const auto& v : nonneg)
    if (dot(y, v) < 0) return false;
  for (const auto& v : zero)
    if (dot(y, v) != 0) return false;
  for (const auto& v : nonpos)
    if (dot(y, v) > 0) return false;
  return true;
}

std::pair<ZFace, NormalConeDesc> face_and_cone(const Zonotope& z, const Vec& n) {
  require(!n.is_zero(), ErrorKind::Precondition, "zero direction");
  require(n.dim() == z.ambient, ErrorKind::Precondition, "direction dimension mismatch");

  ZFace f;
  f.n = n;
  f.translation = Vec(z.ambient);
  NormalConeDesc cone;
  for (const auto& v : z.gens.vectors) {
    Q p = dot(n, v);
    if (p > 0) {
      f.translation += v;
      cone.nonneg.push_back(v);
    } else if (p < 0) {
      cone.nonpos.push_back(v);
    } else {
      f.residual.push_back(v);
      cone.zero.push_back(v);
    }
  }
  if (f.residual.empty()) {
    f.vertices = {f.translation};
    f.dim = 0;
  } else {
    GeneratorSet sub;
    sub.vectors = f.residual;
    Zonotope zr = zonotope_of(sub);
    for (const auto& p : zr.vertices) f.vertices.push_back(f.translation + p);
    f.dim = zr.deff;
  }

  // the translation + sub-zonotope formula must match the brute-force argmax
  {
    Q best = dot(n, z.vertices[0]);
    for (const auto& p : z.vertices) best = std::max(best, Q(dot(n, p)));
    std::set<Vec> argmax;
    for (const auto& p : z.vertices)
      if (dot(n, p) == best) argmax.insert(p);
    std::set<Vec> formula(f.vertices.begin(), f.vertices.end());
    require(formula == argmax, ErrorKind::PaperContradiction,
            "face formula disagrees with the vertex argmax");
  }

  // extreme rays: rays of the arrangement fan lying inside the cone
  if (z.deff > 0) {
    std::vector<Vec> plines;
    for (const auto& u : z.merged) plines.push_back(primitive(u));
    const int L = (int)plines.size();
    const int pick = z.deff - 1;
    std::set<Vec> rays;
    auto try_subset = [&](const std::vector<int>& sub) {
      std::vector<Vec> rows = {Vec(z.ambient)};  // fixes the column count
      for (int i : sub) rows.push_back(plines[i]);
      for (const auto& k : z.span_complement) rows.push_back(k);
      auto sol = solve_linear(rows, Vec((int)rows.size()));
      if ((int)sol.kernel.size() != 1) return;
      Vec r = primitive(sol.kernel[0]);
      if (cone.contains(r)) rays.insert(r);
      if (cone.contains(-r)) rays.insert(-r);
    };
    if (pick == 0) {
      try_subset({});
    } else {
      std::vector<int> sub(pick);
      auto rec = [&](auto&& self, int from, int k) -> void {
        if (k == pick) {
          try_subset(sub);
          return;
        }
        for (int i = from; i < L; ++i) {
          sub[k] = i;
          self(self, i + 1, k + 1);
        }
      };
      rec(rec, 0, 0);
    }
    cone.rays.assign(rays.begin(), rays.end());
  }
  return {f, cone};
}

namespace {

Vec affine_project(const Zonotope& z, const Zonotope::Face& f, const Vec& x) {
  const Vec& q0 = z.vertices[f.vertex_ids[0]];
  return q0 + project_span(f.basis, x - q0);
}

bool point_in_face(const Zonotope& z, const Zonotope::Face& f, const Vec& p) {
  if (!z.contains(p)) return false;
  for (int i : f.active_facets)
    if (dot(z.facets[i].normal, p) != z.facets[i].offset) return false;
  return true;
}

}  // namespace

ProjResult project(const Zonotope& z, const Vec& x) {
  require(x.dim() == z.ambient, ErrorKind::Precondition, "point dimension mismatch");
  Vec xs = project_span(z.span_basis, x);
  Q perp2 = norm2(x - xs);
  if (z.contains(xs)) return {xs, perp2};

  std::optional<ProjResult> best;
  for (size_t fi = 0; fi + 1 < z.faces.size(); ++fi) {  // skip the improper face
    const auto& f = z.faces[fi];
    Vec p = affine_project(z, f, xs);
    if (!point_in_face(z, f, p)) continue;
    Q d2 = norm2(xs - p) + perp2;
    if (!best || d2 < best->dist2) best = ProjResult{p, d2};
  }
  require(best.has_value(), ErrorKind::PaperContradiction,
          "no feasible face projection found");
  return *best;
}

MinSimplexResult min_on_simplex(const Zonotope& z, const std::vector<Vec>& pts) {
  require(!pts.empty(), ErrorKind::Precondition, "empty simplex");
  const int k = (int)pts.size();
  {
    std::vector<Vec> diffs;
    for (int i = 1; i < k; ++i) diffs.push_back(pts[i] - pts[0]);
    require(rank_of(diffs) == k - 1, ErrorKind::Precondition,
            "simplex vertices must be affinely independent");
  }

  std::optional<MinSimplexResult> best;
  auto consider = [&](Q d2, std::vector<int> witness, Vec y, Vec zc, bool cert) {
    if (!best || d2 < best->dist2)
      best = MinSimplexResult{d2, std::move(witness), std::move(y), std::move(zc), cert};
  };

  // vertex optimality certificate: v minimizes over the simplex as soon as
  // the outward derivative toward every other vertex is nonnegative
  for (int i = 0; i < k; ++i) {
    ProjResult pr = project(z, pts[i]);
    bool cert = true;
    for (int j = 0; j < k && cert; ++j)
      if (dot(pts[i] - pr.point, pts[j] - pts[i]) < 0) cert = false;
    if (cert) return {pr.dist2, {i}, pts[i], pr.point, true};
    consider(pr.dist2, {i}, pts[i], pr.point, false);
  }

  // stationary pairs over (face of simplex) x (face of Z); every extreme
  // minimizing pair is the unique solution for its pair of carrier faces
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> tau;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) tau.push_back(i);
    const Vec& tau0 = pts[tau[0]];
    std::vector<Vec> tb;
    for (size_t i = 1; i < tau.size(); ++i) tb.push_back(pts[tau[i]] - tau0);

    for (const auto& face : z.faces) {
      const Vec& q0 = z.vertices[face.vertex_ids[0]];
      const auto& fb = face.basis;
      const int ns = (int)tb.size(), nt = (int)fb.size();
      const int nu = ns + nt;
      // unknowns (s, t): y = tau0 + s.tb, zc = q0 + t.fb, y - zc orthogonal
      // to every direction of both carriers
      std::vector<Vec> rows;
      Vec rhs;
      Vec d0 = tau0 - q0;
      auto add_row = [&](const Vec& dir) {
        Vec row(nu);
        for (int a = 0; a < ns; ++a) row[a] = dot(tb[a], dir);
        for (int b = 0; b < nt; ++b) row[ns + b] = -dot(fb[b], dir);
        rows.push_back(row);
        rhs.c.push_back(-dot(d0, dir));
      };
      for (const auto& dir : tb) add_row(dir);
      for (const auto& dir : fb) add_row(dir);
      if (nu > 0) {
        auto sol = solve_linear(rows, rhs);
        if (sol.kind != LinearSolution::Unique) continue;
        Vec y = tau0, zc = q0;
        for (int a = 0; a < ns; ++a) y += sol.x[a] * tb[a];
        for (int b = 0; b < nt; ++b) zc += sol.x[ns + b] * fb[b];
        // feasibility in the simplex face: barycentric nonnegative
        Q ssum = 0;
        bool ok = true;
        for (int a = 0; a < ns && ok; ++a) {
          if (sol.x[a] < 0) ok = false;
          ssum += sol.x[a];
        }
        if (!ok || ssum > 1) continue;
        if (!point_in_face(z, face, zc)) continue;
        std::vector<int> witness;
        if (ssum < 1) witness.push_back(tau[0]);
        for (int a = 0; a < ns; ++a)
          if (sol.x[a] > 0) witness.push_back(tau[a + 1]);
        std::sort(witness.begin(), witness.end());
        consider(norm2(y - zc), witness, y, zc, false);
      } else {
        if (!point_in_face(z, face, q0)) continue;
        consider(norm2(tau0 - q0), {tau[0]}, tau0, q0, false);
      }
    }
  }
  return *best;
}

bool weyl_chamber_check(const Zonotope& z, const WeylGroup& w, const ZFace& f,
                        int samples, uint64_t seed) {
  require(zonotope_invariant_under(z, w), ErrorKind::Precondition,
          "zonotope is not invariant under the group");
  auto [face, cone] = face_and_cone(z, f.n);
  require(std::set<Vec>(face.vertices.begin(), face.vertices.end()) ==
              std::set<Vec>(f.vertices.begin(), f.vertices.end()),
          ErrorKind::Precondition, "face does not belong to this zonotope");

  // reflection walls of W: elements fixing a hyperplane
  std::vector<Wall> walls;
  const int n = z.ambient;
  for (const auto& m : w.elements) {
    Mat diff = Mat::identity(n);
    bool is_id = true;
    for (int i = 0; i < n; ++i) {
      diff.rows[i] -= m.rows[i];
      if (!diff.rows[i].is_zero()) is_id = false;
    }
    if (is_id) continue;
    if (rank_of(diff.rows) != 1) continue;
    Vec normal;
    for (const auto& r : diff.rows)
      if (!r.is_zero()) {
        normal = primitive(r);
        break;
      }
    walls.push_back(Wall{normal, Q(0)});
  }

  std::vector<Vec> face_pts = f.vertices;
  std::vector<Vec> cone_pts = cone.rays;
  for (size_t i = 0; i < cone.rays.size(); ++i)
    for (size_t j = i + 1; j < cone.rays.size(); ++j)
      cone_pts.push_back(cone.rays[i] + cone.rays[j]);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Vec fp(z.ambient);
    Q wsum = 0;
    for (const auto& v : f.vertices) {
      Q c((long)rng.uniform(0, 9));
      fp += c * v;
      wsum += c;
    }
    if (wsum == 0) continue;
    face_pts.push_back(Q(1) / wsum * fp);
    if (!cone.rays.empty()) {
      Vec cp(z.ambient);
      for (const auto& r : cone.rays) cp += Q((long)rng.uniform(0, 6)) * r;
      cone_pts.push_back(cp);
    }
  }

  for (const auto& vf : face_pts)
    for (const auto& vn : cone_pts) {
      Vec sum = vf + vn;
      for (const auto& wall : walls)
        if (separates(wall, vf, vn) || separates(wall, vf, sum) ||
            separates(wall, vn, sum))
          return false;
    }
  return true;
}

bool segment_through(const Zonotope& zon, const Vec& z, const Vec& v) {
  require(zon.contains(z), ErrorKind::Precondition, "point not in the zonotope");
  require(zon.gens.contains(v), ErrorKind::Precondition, "not a generator");
  Q lo = 0, hi = 1;
  for (const auto& f : zon.facets) {
    Q a = dot(f.normal, v);
    Q zc = dot(f.normal, z);
    // z - t v stays inside: zc - t a <= offset
    if (a > 0) lo = std::max(lo, Q((zc - f.offset) / a));
    if (a < 0) hi = std::min(hi, Q((zc - f.offset) / a));
    // z + (1-t) v stays inside: zc + (1-t) a <= offset
    if (a > 0) lo = std::max(lo, Q(1 - (f.offset - zc) / a));
    if (a < 0) hi = std::min(hi, Q(1 - (f.offset - zc) / a));
  }
  return lo <= hi;
}

}  // namespace zm
