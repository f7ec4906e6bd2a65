#include "zonomorse/morse.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace zm {

namespace {

std::vector<Vec> points_of(const Patch& p, const Simplex& s) {
  std::vector<Vec> pts;
  pts.reserve(s.size());
  for (int v : s) pts.push_back(p.coords[v]);
  return pts;
}

Vec barycenter_of(const Patch& p, const Simplex& s) {
  Vec b(p.rs.ambient);
  for (int v : s) b += p.coords[v];
  return Q(1, (int)s.size()) * b;
}

bool is_face(const Simplex& a, const Simplex& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Simplex union_of(const Simplex& a, const Simplex& b) {
  Simplex r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::string simplex_str(const Simplex& s) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  os << "}";
  return os.str();
}

// First-order certificate: with p the closest point of Z to pts[k], the
// squared distance to Z is smooth with gradient 2(x - p), so
// <pts[k] - p, pts[i] - pts[k]> >= 0 for every i certifies that pts[k]
// attains the minimum of d(Z,.)^2 over the simplex. Conversely, when all
// vertices share the same height, min == shared value forces the certificate
// to hold at every vertex, so its failure everywhere proves min < value.
bool vertex_certifies_min(const std::vector<Vec>& pts, const std::vector<Vec>& closest, size_t k) {
  Vec g = pts[k] - closest[k];
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i == k) continue;
    if (dot(g, pts[i] - pts[k]) < 0) return false;
  }
  return true;
}

// Chains of elems under strict containment, with vertex k renamed to
// vid[elems[k]].
Complex chains_on(const std::vector<Simplex>& elems, const std::map<Simplex, int>& vid) {
  Complex cc = chain_complex_of_subsets(elems);
  Complex out;
  for (const auto& cell : cc.cells) {
    Simplex m;
    for (int k : cell) m.push_back(vid.at(elems[k]));
    out.cells.insert(sorted_simplex(m));
  }
  return out;
}

}  // namespace

HeightTable build_height_table(const Patch& p, const Zonotope& z) {
  require(z.ambient == p.rs.ambient, ErrorKind::Precondition,
          "patch and zonotope live in different ambient spaces");
  HeightTable t;
  t.patch = &p;
  t.zono = &z;
  t.h2.reserve(p.coords.size());
  t.closest.reserve(p.coords.size());
  for (const auto& x : p.coords) {
    auto pr = project(z, x);
    t.h2.push_back(pr.dist2);
    t.closest.push_back(pr.point);
  }
  return t;
}

std::pair<Q, std::optional<Vec>> height_and_gradient(const HeightTable& t, const Vec& x) {
  const Patch& p = *t.patch;
  bool inside = false;
  for (const auto& a : p.alcoves) {
    const int k = (int)a.size();
    std::vector<Vec> rows;
    for (int j = 0; j < p.rs.ambient; ++j) {
      Vec row(k);
      for (int i = 0; i < k; ++i) row[i] = p.coords[a[i]][j];
      rows.push_back(row);
    }
    Vec ones(k);
    for (int i = 0; i < k; ++i) ones[i] = 1;
    rows.push_back(ones);
    Vec rhs(p.rs.ambient + 1);
    for (int j = 0; j < p.rs.ambient; ++j) rhs[j] = x[j];
    rhs[p.rs.ambient] = 1;
    auto sol = solve_linear(rows, rhs);
    if (sol.kind != LinearSolution::Unique) continue;
    bool ok = true;
    for (int i = 0; i < k; ++i)
      if (sol.x[i] < 0) { ok = false; break; }
    if (ok) { inside = true; break; }
  }
  require(inside, ErrorKind::Precondition, "point outside the patch");
  auto pr = project(*t.zono, x);
  if (pr.dist2 == 0) return {pr.dist2, std::nullopt};
  return {pr.dist2, x - pr.point};
}

ClassifyResult classify_horizontal(const HeightTable& t, const Simplex& s) {
  const Patch& p = *t.patch;
  require(t.patch->complex.contains(s), ErrorKind::Precondition, "simplex not in the patch");
  std::map<Q, Simplex> by_value;
  for (int v : s) by_value[t.h2[v]].push_back(v);
  ClassifyResult out;
  for (auto& [value, cls] : by_value) {
    if (cls.size() > 1) {
      // the exact minimum over the class face must equal the shared vertex
      // value; via the certificate this also covers every sub-face, which
      // makes "joined by a horizontal edge" an equivalence on s
      std::vector<Vec> pts = points_of(p, cls);
      std::vector<Vec> cl;
      for (int v : cls) cl.push_back(t.closest[v]);
      bool certified = false;
      for (size_t k = 0; k < pts.size() && !certified; ++k)
        certified = vertex_certifies_min(pts, cl, k);
      require(certified, ErrorKind::PaperContradiction,
              "equal-height class " + simplex_str(cls) + " does not span a horizontal face");
    }
    out.classes.push_back(cls);
  }
  out.horizontal = out.classes.size() == 1;
  return out;
}

EdgeReport edge_check(const HeightTable& t, const Simplex& e) {
  require(e.size() == 2, ErrorKind::Precondition, "not an edge");
  require(t.patch->complex.contains(e), ErrorKind::Precondition, "edge not in the patch");
  const Patch& p = *t.patch;
  auto m = min_on_simplex(*t.zono, points_of(p, e));
  EdgeReport r;
  r.monotone = m.dist2 == std::min(t.h2[e[0]], t.h2[e[1]]);
  r.consistent = true;
  for (int i = 0; i < 2; ++i) {
    const int v = e[i], u = e[1 - i];
    if (t.h2[v] == 0) continue;
    Vec g = p.coords[v] - t.closest[v];
    Q d = dot(g, p.coords[u] - p.coords[v]);
    const int sign = d < 0 ? -1 : (d > 0 ? 1 : 0);
    r.angle_sign[i] = sign;
    const bool obtuse = sign < 0;
    const bool strictly_descending = t.h2[v] > t.h2[u];
    if (obtuse != strictly_descending) r.consistent = false;
    // a right angle pins the minimum over the edge at this endpoint
    if (sign == 0 && m.dist2 != t.h2[v]) r.consistent = false;
  }
  return r;
}

const HorizontalInfo& HorizontalRegistry::info(const Simplex& s) const {
  auto it = index.find(s);
  require(it != index.end(), ErrorKind::Precondition,
          "simplex " + simplex_str(s) + " is not registered as horizontal");
  return infos[it->second];
}

HorizontalInfo& HorizontalRegistry::info(const Simplex& s) {
  auto it = index.find(s);
  require(it != index.end(), ErrorKind::Precondition,
          "simplex " + simplex_str(s) + " is not registered as horizontal");
  return infos[it->second];
}

HorizontalRegistry build_registry(const Patch& p, const Zonotope& z) {
  HorizontalRegistry r;
  r.patch = &p;
  r.zono = &z;
  r.table = build_height_table(p, z);
  for (const auto& s : p.complex.cells) {
    auto c = classify_horizontal(r.table, s);
    if (!c.horizontal) continue;
    HorizontalInfo info;
    info.simplex = s;
    info.h2 = r.table.h2[s[0]];
    info.gradient = Vec(p.rs.ambient);
    if (info.h2 > 0) {
      // one shared gradient across the simplex, orthogonal to it
      info.gradient = p.coords[s[0]] - r.table.closest[s[0]];
      for (size_t i = 1; i < s.size(); ++i) {
        require(p.coords[s[i]] - r.table.closest[s[i]] == info.gradient,
                ErrorKind::PaperContradiction,
                "vertex gradients differ across horizontal simplex " + simplex_str(s));
        require(dot(info.gradient, p.coords[s[i]] - p.coords[s[0]]) == 0,
                ErrorKind::PaperContradiction,
                "gradient not orthogonal to horizontal simplex " + simplex_str(s));
      }
    }
    r.index[s] = (int)r.infos.size();
    r.infos.push_back(std::move(info));
  }
  return r;
}

const SplitLink& split_link(HorizontalRegistry& r, const Simplex& s) {
  auto hit = r.link_cache.find(s);
  if (hit != r.link_cache.end()) return hit->second;
  const HorizontalInfo& info = r.info(s);
  require(info.h2 > 0, ErrorKind::Precondition, "no gradient at zero height");
  SplitLink sl;
  sl.link = link_of(*r.patch, s);
  sl.gradient = info.gradient;
  sl.factor_horizontal.assign(sl.link.factor_normals.size(), true);
  for (int u : sl.link.verts) {
    Q pr = dot(sl.link.direction.at(u), sl.gradient);
    if (pr == 0)
      sl.equatorial.push_back(u);
    else
      sl.factor_horizontal[sl.link.factor_of.at(u)] = false;
  }
  return r.link_cache.emplace(s, std::move(sl)).first->second;
}

Simplex sigma_min(HorizontalRegistry& r, const Simplex& s) {
  HorizontalInfo& info = r.info(s);
  require(info.h2 > 0, ErrorKind::Precondition, "no minimum face at zero height");
  if (info.sigma_min) return *info.sigma_min;
  if (s.size() == 1) {
    info.sigma_min = s;
    return s;
  }
  auto props = proper_faces(s);
  std::vector<char> rest_horizontal(props.size());
  for (size_t i = 0; i < props.size(); ++i) {
    const SplitLink& sl = split_link(r, props[i]);
    bool all_hor = true;
    for (int u : s) {
      if (std::binary_search(props[i].begin(), props[i].end(), u)) continue;
      if (!sl.factor_horizontal[sl.link.factor_of.at(u)]) {
        all_hor = false;
        break;
      }
    }
    rest_horizontal[i] = all_hor;
  }
  std::vector<Simplex> matches;
  for (const auto& c : nonempty_faces(s)) {
    bool ok = true;
    for (size_t i = 0; i < props.size() && ok; ++i)
      ok = (rest_horizontal[i] != 0) == is_face(c, props[i]);
    if (ok) matches.push_back(c);
  }
  require(matches.size() == 1, ErrorKind::PaperContradiction,
          "minimum face of " + simplex_str(s) + " is not unique (" +
              std::to_string(matches.size()) + " candidates)");
  info.sigma_min = matches[0];
  return matches[0];
}

const MoveGraph& moves_and_depth(HorizontalRegistry& r) {
  if (r.moves_ready) return *r.moves;
  MoveGraph g;
  for (const auto& info : r.infos)
    if (info.h2 > 0) {
      g.node_id[info.simplex] = (int)g.nodes.size();
      g.nodes.push_back(info.simplex);
    }
  const int n = (int)g.nodes.size();
  g.up.assign(n, {});
  g.down.assign(n, {});
  g.resolved.assign(n, false);
  std::vector<std::optional<Simplex>> mins(n);
  for (int i = 0; i < n; ++i) {
    try {
      mins[i] = sigma_min(r, g.nodes[i]);
      g.resolved[i] = true;
    } catch (const Error& e) {
      if (e.kind != ErrorKind::InsufficientRadius) throw;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!g.resolved[i]) continue;
    const Simplex& s = g.nodes[i];
    const Simplex& mn = *mins[i];
    for (const auto& tau : proper_faces(s))
      if (!is_face(mn, tau)) g.down[i].push_back(g.node_id.at(tau));
    if (mn != s) g.up[g.node_id.at(mn)].push_back(i);
  }
  // longest move sequence; a cycle would make depth undefined
  std::vector<int> color(n, 0);
  g.dp.assign(n, 0);
  std::function<int(int)> longest = [&](int i) -> int {
    if (color[i] == 2) return g.dp[i];
    require(color[i] != 1, ErrorKind::PaperContradiction, "move graph has a cycle");
    color[i] = 1;
    int best = 0;
    for (auto adj : {&g.up[i], &g.down[i]})
      for (int j : *adj) best = std::max(best, 1 + longest(j));
    color[i] = 2;
    return g.dp[i] = best;
  };
  for (int i = 0; i < n; ++i) longest(i);
  // dp is authoritative once the outgoing edges are provably complete: the
  // node is resolved, its full star is present, and every equal-height
  // horizontal coface is resolved (so no up move is missing), recursively
  // through all successors
  std::vector<char> base(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!g.resolved[i] || !r.patch->star_complete(g.nodes[i])) continue;
    const Q& h2 = r.info(g.nodes[i]).h2;
    bool ok = true;
    for (const auto& t : r.patch->complex.link(g.nodes[i]).cells) {
      Simplex k = union_of(g.nodes[i], t);
      auto it = r.index.find(k);
      if (it == r.index.end()) continue;
      if (r.infos[it->second].h2 != h2) continue;
      if (!g.resolved[g.node_id.at(k)]) {
        ok = false;
        break;
      }
    }
    base[i] = ok;
  }
  g.certified.assign(base.begin(), base.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!g.certified[i]) continue;
      for (auto adj : {&g.up[i], &g.down[i]})
        for (int j : *adj)
          if (!g.certified[j]) {
            g.certified[i] = false;
            changed = true;
          }
    }
  }
  for (int i = 0; i < n; ++i) {
    auto& info = r.info(g.nodes[i]);
    info.dp = g.dp[i];
    info.dp_certified = g.certified[i];
    if (mins[i]) info.sigma_min = mins[i];
  }
  r.moves = std::move(g);
  r.moves_ready = true;
  return *r.moves;
}

SubdividedComplex subdivide(const Patch& p, HorizontalRegistry& r) {
  require(r.patch == &p, ErrorKind::Precondition, "registry was built for a different patch");
  require(r.zono->gens.level != Richness::OrbitClosure, ErrorKind::Precondition,
          "subdivision needs at least almost-rich generators");
  SubdividedComplex sub;
  sub.patch = &p;
  sub.reg = &r;
  for (const auto& info : r.infos) {
    sub.vid[info.simplex] = (int)sub.carriers.size();
    sub.carriers.push_back(info.simplex);
    sub.barycenters.push_back(barycenter_of(p, info.simplex));
  }
  for (const auto& alcove : p.alcoves) {
    // the preimage of one patch simplex is the join of the barycentric
    // subdivisions of its maximal horizontal faces (= equal-height classes)
    auto cls = classify_horizontal(r.table, alcove);
    Complex acx;
    bool first = true;
    for (const auto& c : cls.classes) {
      std::vector<Simplex> elems = nonempty_faces(c);
      for (const auto& el : elems)
        require(sub.vid.count(el), ErrorKind::PaperContradiction,
                "face " + simplex_str(el) + " of an equal-height class is not horizontal");
      Complex mapped = chains_on(elems, sub.vid);
      acx = first ? mapped : join(acx, mapped);
      first = false;
    }
    // the flag/nestedness rule must produce the same complex
    std::vector<int> local;
    for (int i = 0; i < (int)sub.carriers.size(); ++i)
      if (is_face(sub.carriers[i], alcove)) local.push_back(i);
    auto compatible = [&](int a, int b) {
      if (r.infos[a].h2 != r.infos[b].h2) return true;
      return is_face(sub.carriers[a], sub.carriers[b]) ||
             is_face(sub.carriers[b], sub.carriers[a]);
    };
    Complex flag;
    std::vector<int> cur;
    std::function<void(size_t)> grow = [&](size_t start) {
      for (size_t idx = start; idx < local.size(); ++idx) {
        bool ok = true;
        for (int m : cur)
          if (!compatible(m, local[idx])) {
            ok = false;
            break;
          }
        if (!ok) continue;
        cur.push_back(local[idx]);
        flag.cells.insert(Simplex(cur.begin(), cur.end()));
        grow(idx + 1);
        cur.pop_back();
      }
    };
    grow(0);
    require(acx == flag, ErrorKind::PaperContradiction,
            "join-of-subdivisions and nestedness rule disagree on alcove " + simplex_str(alcove));
    sub.complex.cells.insert(acx.cells.begin(), acx.cells.end());
  }
  return sub;
}

std::string SubMorseValue::str() const {
  std::ostringstream os;
  os << "(" << h2 << ", " << dp << ", " << dim << ")";
  return os.str();
}

SubMorseValue sub_morse(const SubdividedComplex& sub, int v) {
  require(v >= 0 && v < (int)sub.carriers.size(), ErrorKind::Precondition,
          "not a subdivision vertex");
  const HorizontalInfo& info = sub.reg->infos[v];
  SubMorseValue f;
  f.h2 = info.h2;
  f.dim = (int)info.simplex.size() - 1;
  f.dp = 0;
  if (info.h2 > 0) {
    require(sub.reg->moves_ready, ErrorKind::Precondition,
            "depths are not computed yet; run moves_and_depth first");
    f.dp = info.dp;
  }
  return f;
}

DescendingLink descending_link(SubdividedComplex& sub, int v) {
  HorizontalRegistry& r = *sub.reg;
  const Patch& p = *sub.patch;
  require(v >= 0 && v < (int)sub.carriers.size(), ErrorKind::Precondition,
          "not a subdivision vertex");
  const Simplex sigma = sub.carriers[v];
  require(p.star_complete(sigma), ErrorKind::InsufficientRadius,
          "star of the carrier is incomplete");
  const HorizontalInfo& info = r.infos[v];
  if (info.h2 > 0)
    require(info.dp_certified, ErrorKind::InsufficientRadius, "carrier depth is not certified");
  const SubMorseValue F = sub_morse(sub, v);

  DescendingLink out;
  out.vertex = v;
  Complex lk = sub.complex.link({v});
  std::set<int> lower;
  for (int u : lk.vertex_set()) {
    const HorizontalInfo& ui = r.infos[u];
    if (ui.h2 > 0)
      require(ui.dp_certified, ErrorKind::InsufficientRadius, "neighbor depth is not certified");
    if (sub_morse(sub, u) < F) lower.insert(u);
  }
  out.direct = lk.full_subcomplex(lower);

  // face part: descending proper faces, as chains
  std::vector<Simplex> faces = proper_faces(sigma);
  std::vector<Simplex> desc_faces;
  for (const auto& tau : faces)
    if (info.h2 == 0 || r.info(tau).dp <= info.dp) desc_faces.push_back(tau);
  out.face_part = chains_on(desc_faces, sub.vid);

  // horizontal part: equal-height descending cofaces, as chains
  std::vector<Simplex> cofaces, desc_cofaces;
  if (info.h2 > 0) {
    for (const auto& t : p.complex.link(sigma).cells) {
      Simplex k = union_of(sigma, t);
      auto it = r.index.find(k);
      if (it == r.index.end()) continue;
      const HorizontalInfo& ki = r.infos[it->second];
      if (ki.h2 != info.h2) continue;
      cofaces.push_back(k);
      if (ki.dp < info.dp) desc_cofaces.push_back(k);
    }
  }
  out.hor_part = chains_on(desc_cofaces, sub.vid);

  // vertical part: strictly lower neighbors
  std::set<int> strictly_lower;
  for (int u : lk.vertex_set())
    if (r.infos[u].h2 < info.h2) strictly_lower.insert(u);
  out.ver_part = lk.full_subcomplex(strictly_lower);

  out.predicted = join(out.face_part, join(out.hor_part, out.ver_part));

  out.lemma_checked = false;
  if (info.h2 > 0 && info.sigma_min && *info.sigma_min == sigma) {
    // depth lemmas at a self-minimal carrier: every proper face descends,
    // and a coface descends exactly when its extra vertices sit in
    // horizontal link factors
    for (const auto& tau : faces)
      require(r.info(tau).dp <= info.dp, ErrorKind::PaperContradiction,
              "face of a self-minimal simplex fails to descend");
    const SplitLink& sl = split_link(r, sigma);
    for (const auto& k : cofaces) {
      bool rest_horizontal = true;
      for (int u : k) {
        if (std::binary_search(sigma.begin(), sigma.end(), u)) continue;
        if (!sl.factor_horizontal[sl.link.factor_of.at(u)]) {
          rest_horizontal = false;
          break;
        }
      }
      const int kdp = r.info(k).dp;
      if (rest_horizontal)
        require(kdp < info.dp, ErrorKind::PaperContradiction,
                "horizontally attached coface fails to drop in depth");
      else
        require(kdp > info.dp, ErrorKind::PaperContradiction,
                "vertically attached coface fails to rise in depth");
    }
    out.lemma_checked = true;
  }
  return out;
}

namespace {

bool affinely_independent(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return true;
  std::vector<Vec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return rank_of(diffs) == (int)diffs.size();
}

struct ClosestPair {
  Vec a, b;
  Q d2;
};

// Closest pair of points between conv(A) and conv(B), by stationarity over
// pairs of affinely independent subsets plus vertex-pair seeds.
ClosestPair closest_between(const std::vector<Vec>& A, const std::vector<Vec>& B, int ambient) {
  ClosestPair best;
  bool have = false;
  auto offer = [&](const Vec& a, const Vec& b) {
    Q d2 = norm2(a - b);
    if (!have || d2 < best.d2) {
      best = {a, b, d2};
      have = true;
    }
  };
  for (const auto& a : A)
    for (const auto& b : B) offer(a, b);

  std::vector<std::vector<int>> asubs, bsubs;
  auto collect = [&](const std::vector<Vec>& pts, std::vector<std::vector<int>>& out) {
    const int n = (int)pts.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      if ((int)idx.size() > ambient + 1) continue;
      std::vector<Vec> sel;
      for (int i : idx) sel.push_back(pts[i]);
      if (affinely_independent(sel)) out.push_back(idx);
    }
  };
  collect(A, asubs);
  collect(B, bsubs);

  for (const auto& S : asubs)
    for (const auto& T : bsubs) {
      const int k = (int)S.size() - 1, l = (int)T.size() - 1;
      if (k + l == 0) continue;  // vertex pairs already seeded
      const Vec& s0 = A[S[0]];
      const Vec& t0 = B[T[0]];
      std::vector<Vec> sd, td;
      for (int i = 1; i <= k; ++i) sd.push_back(A[S[i]] - s0);
      for (int j = 1; j <= l; ++j) td.push_back(B[T[j]] - t0);
      // unknowns: barycentric weights on sd then td; equations demand the
      // difference vector be orthogonal to both affine spans
      std::vector<Vec> rows;
      Vec rhs(k + l);
      int rw = 0;
      auto push_row = [&](const Vec& dir) {
        Vec row(k + l);
        for (int i = 0; i < k; ++i) row[i] = dot(dir, sd[i]);
        for (int j = 0; j < l; ++j) row[k + j] = -dot(dir, td[j]);
        rows.push_back(row);
        rhs[rw++] = -dot(dir, s0 - t0);
      };
      for (const auto& d : sd) push_row(d);
      for (const auto& d : td) push_row(d);
      auto sol = solve_linear(rows, rhs);
      if (sol.kind != LinearSolution::Unique) continue;
      Q ssum = 0, tsum = 0;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (sol.x[i] < 0) ok = false;
        ssum += sol.x[i];
      }
      for (int j = 0; j < l && ok; ++j) {
        if (sol.x[k + j] < 0) ok = false;
        tsum += sol.x[k + j];
      }
      if (!ok || ssum > 1 || tsum > 1) continue;
      Vec a = s0, b = t0;
      for (int i = 0; i < k; ++i) a += sol.x[i] * sd[i];
      for (int j = 0; j < l; ++j) b += sol.x[k + j] * td[j];
      offer(a, b);
    }
  return best;
}

}  // namespace

DownUp down_up_sets(HorizontalRegistry& r, const Simplex& s) {
  require(r.zono->gens.level == Richness::Rich, ErrorKind::Precondition,
          "rich generators required");
  const HorizontalInfo& info = r.info(s);
  require(info.h2 > 0, ErrorKind::Precondition, "positive height required");
  const SplitLink& sl = split_link(r, s);
  const Patch& p = *r.patch;

  DownUp du;
  for (int u : sl.link.verts) {
    const bool low = r.table.h2[u] < info.h2;
    const Q pr = dot(sl.link.direction.at(u), info.gradient);
    // the strictly lower vertices are exactly the strict-obtuse ones; the
    // converse inclusion can fail upward (orthogonal steps off a corner of
    // the zonotope still gain height), so the up set is defined by heights
    require(low == (pr < 0), ErrorKind::PaperContradiction,
            "down set differs from the strict-obtuse directions");
    if (low) du.down.push_back(u);
    if (r.table.h2[u] > info.h2) du.up.push_back(u);
  }
  if (du.up.empty()) {
    du.separated = true;
    return du;
  }

  Q vmin = r.table.h2[du.up[0]];
  du.up_witness = du.up[0];
  for (int u : du.up)
    if (r.table.h2[u] < vmin) {
      vmin = r.table.h2[u];
      du.up_witness = u;
    }
  // exact minimum over conv(up) by enumerating affinely independent subsets
  Q hull_min = vmin;
  const int n = (int)du.up.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) pts.push_back(p.coords[du.up[i]]);
    if ((int)pts.size() < 2 || (int)pts.size() > p.rs.ambient + 1) continue;
    if (!affinely_independent(pts)) continue;
    Q m = min_on_simplex(*r.zono, pts).dist2;
    if (m < hull_min) hull_min = m;
  }
  du.up_hull_min = hull_min;
  require(hull_min == vmin, ErrorKind::PaperContradiction,
          "minimum over the up hull is not attained at a member vertex");
  require(hull_min > info.h2, ErrorKind::PaperContradiction,
          "up hull does not stay strictly above the simplex height");

  auto cp = closest_between(points_of(p, s), points_of(p, du.up), p.rs.ambient);
  require(cp.d2 > 0, ErrorKind::PaperContradiction,
          "simplex touches the convex hull of its up set");
  Wall w;
  w.normal = cp.b - cp.a;
  w.offset = dot(w.normal, Q(1, 2) * (cp.a + cp.b));
  for (int sv : s)
    for (int u : du.up)
      require(separates(w, p.coords[sv], p.coords[u]), ErrorKind::PaperContradiction,
              "bisector fails to separate the simplex from its up set");
  du.separated = true;
  du.witness = w;
  return du;
}

std::vector<SubMorseValue> filtration_values(const SubdividedComplex& sub) {
  std::set<SubMorseValue> vals;
  for (int v = 0; v < (int)sub.carriers.size(); ++v) vals.insert(sub_morse(sub, v));
  return {vals.begin(), vals.end()};
}

Complex filtration_stage(const SubdividedComplex& sub, int j) {
  require(j >= 0, ErrorKind::Precondition, "stage index must be nonnegative");
  auto vals = filtration_values(sub);
  std::set<int> keep;
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    auto f = sub_morse(sub, v);
    int rank = (int)(std::lower_bound(vals.begin(), vals.end(), f) - vals.begin());
    if (rank <= j) keep.insert(v);
  }
  return sub.complex.full_subcomplex(keep);
}

}  // namespace zm
