#include "zonomorse/coxeter.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace zm {

Vec reflect(const Wall& w, const Vec& v) {
  Q nn = norm2(w.normal);
  require(nn != 0, ErrorKind::Precondition, "wall normal must be nonzero");
  Q t = Q(2) * (dot(w.normal, v) - w.offset) / nn;
  return v - t * w.normal;
}

int side_of(const Wall& w, const Vec& v) {
  Q s = dot(w.normal, v) - w.offset;
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

bool separates(const Wall& w, const Vec& u, const Vec& v) {
  return side_of(w, u) * side_of(w, v) < 0;
}

Mat Mat::identity(int n) {
  Mat m;
  m.rows.assign(n, Vec(n));
  for (int i = 0; i < n; ++i) m.rows[i][i] = 1;
  return m;
}

Vec Mat::apply(const Vec& v) const {
  Vec out((int)rows.size());
  for (size_t i = 0; i < rows.size(); ++i) out[(int)i] = dot(rows[i], v);
  return out;
}

Mat Mat::mul(const Mat& o) const {
  const int n = dim();
  Mat out;
  out.rows.assign(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Q s = 0;
      for (int k = 0; k < n; ++k) s += rows[i][k] * o.rows[k][j];
      out.rows[i][j] = s;
    }
  return out;
}

Mat reflection_matrix(const Vec& normal, int ambient) {
  require(!normal.is_zero(), ErrorKind::Precondition, "reflection needs a nonzero normal");
  Mat m = Mat::identity(ambient);
  Q nn = norm2(normal);
  for (int i = 0; i < ambient; ++i)
    for (int j = 0; j < ambient; ++j) m.rows[i][j] -= Q(2) * normal[i] * normal[j] / nn;
  return m;
}

std::vector<Vec> RootSystem::positive_roots() const {
  std::vector<Vec> out;
  for (const auto& r : roots) {
    for (const auto& x : r.c) {
      if (x > 0) out.push_back(r);
      if (x != 0) break;
    }
  }
  return out;
}

namespace {

Vec make_vec(std::vector<long> xs) {
  Vec v((int)xs.size());
  for (size_t i = 0; i < xs.size(); ++i) v[(int)i] = Q(xs[i]);
  return v;
}

struct TypeTable {
  int ambient;
  std::vector<std::vector<long>> simple;
  std::vector<long> highest;
};

const std::map<std::string, TypeTable>& type_tables() {
  static const std::map<std::string, TypeTable> t = {
      {"a1", {1, {{1}}, {1}}},
      {"a2", {3, {{1, -1, 0}, {0, 1, -1}}, {1, 0, -1}}},
      {"b2", {2, {{1, -1}, {0, 1}}, {1, 1}}},
      {"c2", {2, {{1, -1}, {0, 2}}, {2, 0}}},
      {"g2", {3, {{1, -1, 0}, {-1, 2, -1}}, {1, 1, -2}}},
      {"a3", {4, {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}}, {1, 0, 0, -1}}},
      {"b3", {3, {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}}, {1, 1, 0}}},
      {"c3", {3, {{1, -1, 0}, {0, 1, -1}, {0, 0, 2}}, {2, 0, 0}}},
  };
  return t;
}

Vec reflect_linear(const Vec& normal, const Vec& v) {
  return reflect(Wall{normal, Q(0)}, v);
}

}  // namespace

std::pair<RootSystem, WeylGroup> build_system(const std::string& type) {
  auto it = type_tables().find(type);
  require(it != type_tables().end(), ErrorKind::Unsupported, "unsupported type: " + type);
  const TypeTable& tt = it->second;

  RootSystem rs;
  rs.name = type;
  rs.ambient = tt.ambient;
  rs.rank = (int)tt.simple.size();
  for (const auto& s : tt.simple) rs.simple.push_back(make_vec(s));
  rs.highest = make_vec(tt.highest);

  // roots: closure of +-simple under simple reflections
  std::set<Vec> roots;
  for (const auto& s : rs.simple) {
    roots.insert(s);
    roots.insert(-s);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Vec> snapshot(roots.begin(), roots.end());
    for (const auto& r : snapshot)
      for (const auto& s : rs.simple)
        if (roots.insert(reflect_linear(s, r)).second) grew = true;
  }
  rs.roots.assign(roots.begin(), roots.end());

  {
    std::vector<Vec> rows = rs.roots;
    Vec rhs((int)rows.size());
    auto sol = solve_linear(rows, rhs);
    rs.span_complement = sol.kernel;
  }

  WeylGroup w;
  for (const auto& s : rs.simple) w.generators.push_back(reflection_matrix(s, rs.ambient));
  std::set<Mat> elems;
  elems.insert(Mat::identity(rs.ambient));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mat> snapshot(elems.begin(), elems.end());
    for (const auto& m : snapshot)
      for (const auto& g : w.generators)
        if (elems.insert(g.mul(m)).second) grew = true;
  }
  w.elements.assign(elems.begin(), elems.end());
  return {rs, w};
}

bool is_affine_tag(const std::string& tag) {
  static const std::set<std::string> affine = {"a1t", "a2t", "c2t", "g2t",
                                               "a3t", "b3t", "c3t"};
  return affine.count(tag) > 0;
}

std::string finite_part(const std::string& affine_tag) {
  require(is_affine_tag(affine_tag), ErrorKind::Unsupported,
          "unsupported affine type: " + affine_tag);
  return affine_tag.substr(0, affine_tag.size() - 1);
}

std::vector<Vec> fundamental_alcove(const RootSystem& rs) {
  std::vector<Vec> verts;
  verts.push_back(Vec(rs.ambient));
  for (int i = 0; i < rs.rank; ++i) {
    // vertex off wall i: on every other simple wall and on <highest, x> = 1
    std::vector<Vec> rows;
    Vec rhs;
    for (int j = 0; j < rs.rank; ++j)
      if (j != i) {
        rows.push_back(rs.simple[j]);
        rhs.c.push_back(Q(0));
      }
    rows.push_back(rs.highest);
    rhs.c.push_back(Q(1));
    for (const auto& k : rs.span_complement) {
      rows.push_back(k);
      rhs.c.push_back(Q(0));
    }
    auto sol = solve_linear(rows, rhs);
    require(sol.kind == LinearSolution::Unique, ErrorKind::Precondition,
            "alcove vertex not uniquely determined");
    verts.push_back(sol.x);
  }
  return verts;
}

std::vector<Wall> walls_through(const RootSystem& rs, const std::vector<Vec>& pts) {
  require(!pts.empty(), ErrorKind::Precondition, "walls_through needs points");
  std::vector<Wall> out;
  for (const auto& a : rs.positive_roots()) {
    Q c = dot(a, pts[0]);
    bool constant = true;
    for (const auto& p : pts)
      if (dot(a, p) != c) {
        constant = false;
        break;
      }
    if (!constant) continue;
    if (c.get_den() != 1) continue;  // not an affine wall of the system
    out.push_back(Wall{a, c});
  }
  return out;
}

namespace {

using AlcoveSlots = std::vector<Vec>;  // slot (= diagram node) -> vertex coords

AlcoveSlots sorted_key(AlcoveSlots a) {
  std::sort(a.begin(), a.end());
  return a;
}

// Neighbor across the facet omitting slot i; null when that panel's wall is
// not determined (cannot happen for genuine alcoves).
AlcoveSlots reflect_slot(const RootSystem& rs, const AlcoveSlots& a, int i) {
  std::vector<Vec> facet;
  for (int j = 0; j < (int)a.size(); ++j)
    if (j != i) facet.push_back(a[j]);
  auto walls = walls_through(rs, facet);
  require(walls.size() == 1, ErrorKind::Precondition, "alcove panel has no unique wall");
  AlcoveSlots out = a;
  out[i] = reflect(walls[0], a[i]);
  return out;
}

}  // namespace

int Patch::id_of(const Vec& p) const {
  auto it = vid.find(p);
  return it == vid.end() ? -1 : it->second;
}

std::vector<Simplex> Patch::alcoves_containing(const Simplex& s) const {
  std::vector<Simplex> out;
  for (const auto& a : alcoves)
    if (std::includes(a.begin(), a.end(), s.begin(), s.end())) out.push_back(a);
  return out;
}

bool Patch::star_complete(const Simplex& s) const {
  if (!complex.contains(s)) return false;
  for (const auto& a : alcoves_containing(s)) {
    for (int v : a) {
      Simplex facet;
      for (int u : a)
        if (u != v) facet.push_back(u);
      if (!std::includes(facet.begin(), facet.end(), s.begin(), s.end())) continue;
      Wall w = panel_wall(facet);
      int nid = id_of(reflect(w, coords[v]));
      if (nid < 0) return false;
      Simplex nb = facet;
      nb.push_back(nid);
      std::sort(nb.begin(), nb.end());
      if (!alcove_set.count(nb)) return false;
    }
  }
  return true;
}

Wall Patch::panel_wall(const Simplex& panel) const {
  require((int)panel.size() == dim(), ErrorKind::Precondition,
          "panel must have codimension 1");
  std::vector<Vec> pts;
  for (int v : panel) pts.push_back(coords[v]);
  auto walls = walls_through(rs, pts);
  require(walls.size() == 1, ErrorKind::Precondition, "panel wall not unique");
  return walls[0];
}

Patch generate_patch(const std::string& affine_tag, int radius, std::optional<Vec> base) {
  require(radius >= 1, ErrorKind::InsufficientRadius, "radius must be at least 1");
  auto [rs, weyl] = build_system(finite_part(affine_tag));

  Patch p;
  p.type = affine_tag;
  p.radius = radius;
  p.rs = rs;
  p.weyl = weyl;
  p.base = base.value_or(Vec(rs.ambient));
  require((int)p.base.dim() == rs.ambient, ErrorKind::Precondition, "base dimension mismatch");
  for (const auto& a : rs.roots) {
    Q v = dot(a, p.base);
    require(v.get_den() == 1, ErrorKind::Precondition, "base must be a special vertex");
  }

  AlcoveSlots a0;
  for (const auto& v : fundamental_alcove(rs)) a0.push_back(v + p.base);

  const int nslots = rs.rank + 1;
  std::map<AlcoveSlots, AlcoveSlots> seen;  // sorted key -> slots
  auto visit = [&](const AlcoveSlots& a) -> bool {  // true if new
    auto key = sorted_key(a);
    auto [it, fresh] = seen.emplace(key, a);
    require(fresh || it->second == a, ErrorKind::PaperContradiction,
            "inconsistent vertex types for one alcove");
    return fresh;
  };

  // closed star of the base vertex: panel moves keeping slot 0 (= base) fixed
  std::vector<AlcoveSlots> frontier = {a0};
  visit(a0);
  std::vector<AlcoveSlots> all = {a0};
  while (!frontier.empty()) {
    std::vector<AlcoveSlots> next;
    for (const auto& a : frontier)
      for (int i = 1; i < nslots; ++i) {
        AlcoveSlots nb = reflect_slot(rs, a, i);
        if (visit(nb)) {
          next.push_back(nb);
          all.push_back(nb);
        }
      }
    frontier = std::move(next);
  }

  // gallery-distance layers from the whole star
  frontier = all;
  for (int layer = 1; layer < radius; ++layer) {
    std::vector<AlcoveSlots> next;
    for (const auto& a : frontier)
      for (int i = 0; i < nslots; ++i) {
        AlcoveSlots nb = reflect_slot(rs, a, i);
        if (visit(nb)) {
          next.push_back(nb);
          all.push_back(nb);
        }
      }
    frontier = std::move(next);
  }

  // deterministic vertex ids: sorted coordinate order
  std::map<Vec, int> slot_of;
  for (const auto& a : all)
    for (int i = 0; i < nslots; ++i) {
      auto [it, fresh] = slot_of.emplace(a[i], i);
      require(fresh || it->second == i, ErrorKind::PaperContradiction,
              "vertex carries two distinct types");
    }
  for (const auto& [coord, slot] : slot_of) {
    int id = (int)p.coords.size();
    p.coords.push_back(coord);
    p.vid[coord] = id;
    p.vtype.push_back(slot);
  }
  p.special.resize(p.coords.size());
  for (size_t i = 0; i < p.coords.size(); ++i) {
    bool sp = true;
    for (const auto& a : rs.roots)
      if (Q(dot(a, p.coords[i])).get_den() != 1) {
        sp = false;
        break;
      }
    p.special[i] = sp;
  }
  for (const auto& a : all) {
    Simplex s;
    for (const auto& v : a) s.push_back(p.vid.at(v));
    std::sort(s.begin(), s.end());
    p.alcoves.push_back(s);
    p.alcove_set.insert(s);
    p.complex.add_closed(s);
  }
  std::sort(p.alcoves.begin(), p.alcoves.end());
  return p;
}

std::string coxeter_factor_name(int rank, long order) {
  if (rank == 1 && order == 2) return "a1";
  if (rank == 2 && order == 6) return "a2";
  if (rank == 2 && order == 8) return "b2";
  if (rank == 2 && order == 12) return "g2";
  if (rank == 3 && order == 24) return "a3";
  if (rank == 3 && order == 48) return "b3";
  fail(ErrorKind::Unsupported, "unrecognized reflection group: rank " +
                                   std::to_string(rank) + ", order " + std::to_string(order));
}

std::string LinkComplex::type() const {
  std::vector<std::string> tags = factor_type;
  std::sort(tags.begin(), tags.end());
  std::string out;
  for (const auto& t : tags) {
    if (!out.empty()) out += " x ";
    out += t;
  }
  return out;
}

long LinkComplex::chamber_group_order() const {
  long o = 1;
  for (long f : factor_order) o *= f;
  return o;
}

LinkComplex link_of(const Patch& patch, const Simplex& sigma) {
  require(patch.complex.contains(sigma), ErrorKind::Precondition,
          "simplex not in the patch");
  require(patch.star_complete(sigma), ErrorKind::InsufficientRadius,
          "closed star leaves the patch; increase the radius");

  LinkComplex lk;
  lk.carrier = sigma;
  lk.complex = patch.complex.link(sigma);
  for (int v : lk.complex.vertex_set()) lk.verts.push_back(v);

  const Vec p0 = patch.coords[sigma[0]];
  std::vector<Vec> span_dirs;
  for (size_t k = 1; k < sigma.size(); ++k)
    span_dirs.push_back(patch.coords[sigma[k]] - p0);
  for (int v : lk.verts) {
    Vec d = patch.coords[v] - p0;
    lk.direction[v] = d - project_span(span_dirs, d);
    require(!lk.direction[v].is_zero(), ErrorKind::PaperContradiction,
            "link vertex direction degenerate");
  }

  std::vector<Vec> pts;
  for (int v : sigma) pts.push_back(patch.coords[v]);
  std::vector<Vec> normals;
  for (const auto& w : walls_through(patch.rs, pts)) normals.push_back(w.normal);
  require(rank_of(normals) == patch.rs.rank - (int)sigma.size() + 1,
          ErrorKind::PaperContradiction, "wall normals have unexpected rank");

  // irreducible components: connectivity under non-orthogonality
  const int nn = (int)normals.size();
  std::vector<int> comp(nn, -1);
  int ncomp = 0;
  for (int i = 0; i < nn; ++i) {
    if (comp[i] >= 0) continue;
    std::deque<int> bfs = {i};
    comp[i] = ncomp;
    while (!bfs.empty()) {
      int a = bfs.front();
      bfs.pop_front();
      for (int b = 0; b < nn; ++b)
        if (comp[b] < 0 && dot(normals[a], normals[b]) != 0) {
          comp[b] = ncomp;
          bfs.push_back(b);
        }
    }
    ++ncomp;
  }
  lk.factor_normals.assign(ncomp, {});
  for (int i = 0; i < nn; ++i) lk.factor_normals[comp[i]].push_back(normals[i]);

  for (const auto& group : lk.factor_normals) {
    int rank = rank_of(group);
    std::set<Mat> elems;
    elems.insert(Mat::identity(patch.rs.ambient));
    std::vector<Mat> gens;
    for (const auto& n : group) gens.push_back(reflection_matrix(n, patch.rs.ambient));
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Mat> snapshot(elems.begin(), elems.end());
      for (const auto& m : snapshot)
        for (const auto& g : gens)
          if (elems.insert(g.mul(m)).second) grew = true;
    }
    lk.factor_order.push_back((long)elems.size());
    lk.factor_type.push_back(coxeter_factor_name(rank, (long)elems.size()));
  }

  for (int v : lk.verts) {
    int assigned = -1;
    for (int f = 0; f < ncomp; ++f) {
      if (project_span(lk.factor_normals[f], lk.direction[v]) == lk.direction[v]) {
        require(assigned < 0, ErrorKind::PaperContradiction,
                "link vertex lies in two factors");
        assigned = f;
      }
    }
    require(assigned >= 0, ErrorKind::PaperContradiction,
            "link vertex direction lies in no factor");
    lk.factor_of[v] = assigned;
  }

  // the link must be the join of its factor subcomplexes
  std::vector<std::set<int>> fverts(ncomp);
  for (auto [v, f] : lk.factor_of) fverts[f].insert(v);
  Complex rebuilt;
  bool first = true;
  for (int f = 0; f < ncomp; ++f) {
    Complex part = lk.complex.full_subcomplex(fverts[f]);
    rebuilt = first ? part : join(rebuilt, part);
    first = false;
  }
  require(rebuilt == lk.complex, ErrorKind::PaperContradiction,
          "link is not the join of its factors");
  return lk;
}

CodistanceResult codistance_and_coray(const TwinApartmentModel& m, const Vec& x, const Vec& y) {
  auto contains_point = [&](const Vec& pt) {
    for (const auto& a : m.patch.alcoves) {
      std::vector<Vec> rows;
      Vec rhs;
      for (int c = 0; c < m.patch.rs.ambient; ++c) {
        Vec row((int)a.size());
        for (size_t i = 0; i < a.size(); ++i) row[(int)i] = m.patch.coords[a[i]][c];
        rows.push_back(row);
        rhs.c.push_back(pt[c]);
      }
      Vec ones((int)a.size());
      for (size_t i = 0; i < a.size(); ++i) ones[(int)i] = 1;
      rows.push_back(ones);
      rhs.c.push_back(Q(1));
      auto sol = solve_linear(rows, rhs);
      if (sol.kind != LinearSolution::Unique) continue;
      bool inside = true;
      for (const auto& l : sol.x.c)
        if (l < 0) {
          inside = false;
          break;
        }
      if (inside) return true;
    }
    return false;
  };
  require(contains_point(x) && contains_point(y), ErrorKind::Precondition,
          "codistance arguments must lie in the model");
  CodistanceResult out;
  out.dist2 = norm2(x - y);
  if (x != y) out.coray = primitive(x - y);
  return out;
}

}  // namespace zm
