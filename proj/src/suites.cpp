#include "zonomorse/homology.hpp"
#include "zonomorse/morse.hpp"
#include "zonomorse/report.hpp"
#include "zonomorse/spherical.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace zm {

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string simplex_str(const Patch& p, const Simplex& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + vec_str(p.coords[s[i]]);
  return out + "}";
}

std::string betti_str(const Complex& c) {
  if (c.cells.empty()) return "(empty)";
  auto b = betti_numbers(c);
  std::string s = "(";
  for (size_t i = 0; i < b.reduced.size(); ++i)
    s += (i ? "," : "") + std::to_string(b.reduced[i]);
  return s + ")";
}

std::vector<Vec> coord_key(const Patch& p, const Simplex& s) {
  std::vector<Vec> k;
  for (int v : s) k.push_back(p.coords[v]);
  std::sort(k.begin(), k.end());
  return k;
}

// --- 1: support faces against brute force ------------------------------

SuiteResult suite_zonotope_faces(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "zonotope-faces";
  std::mt19937_64 rng(cfg.seed);
  const int n_sets = 50, n_dirs = 20;
  long mismatches = 0, directions = 0;
  for (int trial = 0; trial < n_sets; ++trial) {
    int dim = 2 + (int)(rng() % 2);
    int m = 3 + (int)(rng() % 6);
    GeneratorSet d;
    for (int i = 0; i < m; ++i) {
      Vec v(dim);
      bool nz = false;
      for (int k = 0; k < dim; ++k) {
        long a = (long)(rng() % 9) - 4;
        v[k] = Q(a);
        nz |= a != 0;
      }
      if (!nz) v[0] = Q(1);
      if (!d.contains(v)) d.vectors.push_back(v);
    }
    auto z = zonotope_of(d);
    for (int j = 0; j < n_dirs; ++j) {
      Vec n(dim);
      bool nz = false;
      for (int k = 0; k < dim; ++k) {
        long a = (long)(rng() % 21) - 10;
        n[k] = Q(a);
        nz |= a != 0;
      }
      if (!nz) n[0] = Q(1);
      auto [zf, cone] = face_and_cone(z, n);
      Q best;
      bool first = true;
      for (const auto& v : z.vertices) {
        Q s = dot(n, v);
        if (first || s > best) { best = s; first = false; }
      }
      std::set<std::string> bf, ff;
      for (const auto& v : z.vertices)
        if (dot(n, v) == best) bf.insert(vec_str(v));
      for (const auto& v : zf.vertices) ff.insert(vec_str(v));
      ++directions;
      if (bf != ff) {
        ++mismatches;
        std::string gens;
        for (const auto& g : d.vectors) gens += vec_str(g) + " ";
        r.witnesses.push_back("direction " + vec_str(n) + " over D = " + gens +
                              ": face has " + std::to_string(ff.size()) +
                              " vertices, argmax has " + std::to_string(bf.size()));
      }
    }
  }
  r.counters["generator_sets"] = n_sets;
  r.counters["directions"] = directions;
  r.counters["mismatches"] = mismatches;
  r.seed = cfg.seed;
  r.samples = directions;
  r.passed = mismatches == 0;
  return r;
}

// --- 2: no reflection wall separates a face from its normal cone --------

SuiteResult suite_no_wall(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "no-wall";
  long walls = 0, faces_checked = 0, improper = 0, separations = 0, repro_fail = 0;
  for (std::string ft : {"a2", "b2", "g2", "a3", "b3"}) {
    auto [rs, weyl] = build_system(ft);
    GeneratorSet d;
    d.vectors = rs.roots;
    d.level = Richness::OrbitClosure;
    auto z = zonotope_of(d);
    if (!zonotope_invariant_under(z, weyl)) {
      r.witnesses.push_back(ft + ": root zonotope is not invariant under its own group");
      ++repro_fail;
      continue;
    }
    walls += (long)rs.roots.size() / 2;
    for (const auto& face : z.faces) {
      if (face.active_facets.empty()) {
        // improper face: its normal cone is the lineality alone, so there
        // is no pair of test vectors a wall could separate
        ++improper;
        continue;
      }
      Vec n(z.ambient);
      for (int fi : face.active_facets) n = n + z.facets[fi].normal;
      auto [zf, cone] = face_and_cone(z, n);
      std::set<std::string> want, got;
      for (int vi : face.vertex_ids) want.insert(vec_str(z.vertices[vi]));
      for (const auto& v : zf.vertices) got.insert(vec_str(v));
      if (want != got || zf.dim != face.dim) {
        ++repro_fail;
        r.witnesses.push_back(ft + ": face with normal " + vec_str(n) +
                              " was not reproduced by its own supporting direction");
        continue;
      }
      ++faces_checked;
      if (!weyl_chamber_check(z, weyl, zf, 8, cfg.seed)) {
        ++separations;
        r.witnesses.push_back(ft + ": a wall separates the face supported by " + vec_str(n) +
                              " from its normal cone");
      }
    }
  }
  r.counters["group_types"] = 5;
  r.counters["walls"] = walls;
  r.counters["faces_checked"] = faces_checked;
  r.counters["improper_faces"] = improper;
  r.counters["separations"] = separations;
  r.counters["reproduction_failures"] = repro_fail;
  r.seed = cfg.seed;
  r.samples = 8;
  r.passed = separations == 0 && repro_fail == 0;
  return r;
}

// --- 3: the minimum set over any simplex contains a vertex --------------

SuiteResult suite_contains_vertex(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "contains-vertex";
  auto s = setup_patch(cfg);
  long n = 0, failures = 0, certified = 0;
  for (const auto& cell : s.patch.complex.cells) {
    std::vector<Vec> pts;
    for (int v : cell) pts.push_back(s.patch.coords[v]);
    auto m = min_on_simplex(s.zono, pts);
    if (m.vertex_certified) ++certified;
    bool hit = false;
    for (const auto& pt : pts)
      if (project(s.zono, pt).dist2 == m.dist2) { hit = true; break; }
    ++n;
    if (!hit) {
      ++failures;
      r.witnesses.push_back("simplex " + simplex_str(s.patch, cell) + ": min h2 = " +
                            m.dist2.get_str() + " at " + vec_str(m.argmin) +
                            " is not attained at any vertex");
    }
  }
  r.counters["simplices"] = n;
  r.counters["vertex_certified"] = certified;
  r.counters["failures"] = failures;
  r.passed = failures == 0 && n > 0;
  return r;
}

// --- 4: monotone edges and the obtuse / strictly-lower equivalence ------

SuiteResult suite_gradient_criterion(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "gradient-criterion";
  auto s = setup_patch(cfg);
  auto table = build_height_table(s.patch, s.zono);
  long edges = 0, not_monotone = 0, inconsistent = 0, positive_endpoints = 0;
  for (const auto& cell : s.patch.complex.cells) {
    if (cell.size() != 2) continue;
    auto e = edge_check(table, cell);
    ++edges;
    for (const auto& sign : e.angle_sign)
      if (sign) ++positive_endpoints;
    if (!e.monotone) {
      ++not_monotone;
      r.witnesses.push_back("edge " + simplex_str(s.patch, cell) + " is not height-monotone");
    }
    if (!e.consistent) {
      ++inconsistent;
      r.witnesses.push_back("edge " + simplex_str(s.patch, cell) +
                            ": obtuse pairing does not match the strictly lower endpoint");
    }
  }
  SuiteTable heights{"heights", {"vertex", "h2"}, {}};
  for (size_t v = 0; v < s.patch.coords.size(); ++v)
    heights.rows.push_back({vec_str(s.patch.coords[v]), table.h2[v].get_str()});
  r.tables.push_back(std::move(heights));
  r.counters["edges"] = edges;
  r.counters["positive_endpoints"] = positive_endpoints;
  r.counters["not_monotone"] = not_monotone;
  r.counters["inconsistent"] = inconsistent;
  r.passed = edges > 0 && not_monotone == 0 && inconsistent == 0;
  return r;
}

// --- 5: unique minimum faces, wedging, move graph, depth stability ------

SuiteResult suite_minimum_face_moves(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "minimum-face-moves";
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  const auto& g = moves_and_depth(reg);

  long positive = 0, with_min = 0, wedged = 0, vertex_self = 0, vertex_bad = 0,
       wedge_bad = 0, move_bad = 0, certified = 0;
  int maxdp = 0;
  for (const auto& info : reg.infos) {
    if (info.h2 == 0) continue;
    ++positive;
    if (!info.sigma_min) continue;
    ++with_min;
    if (info.simplex.size() == 1) {
      ++vertex_self;
      if (*info.sigma_min != info.simplex) {
        ++vertex_bad;
        r.witnesses.push_back("vertex " + simplex_str(s.patch, info.simplex) +
                              " is not its own minimum face");
      }
    }
    for (const auto& tau : nonempty_faces(info.simplex)) {
      if (!std::includes(tau.begin(), tau.end(), info.sigma_min->begin(),
                         info.sigma_min->end()))
        continue;
      Simplex mn;
      try {
        mn = sigma_min(reg, tau);
      } catch (const Error& e) {
        if (e.kind == ErrorKind::InsufficientRadius) continue;
        throw;
      }
      ++wedged;
      if (mn != *info.sigma_min) {
        ++wedge_bad;
        r.witnesses.push_back("face " + simplex_str(s.patch, tau) + " of " +
                              simplex_str(s.patch, info.simplex) +
                              " changed its minimum face inside the wedge");
      }
    }
    if (info.dp_certified) {
      ++certified;
      maxdp = std::max(maxdp, info.dp);
    }
  }

  // moves connect faces to cofaces only, and resolved depths are finite
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    for (int j : g.up[i])
      if (!std::includes(g.nodes[j].begin(), g.nodes[j].end(), g.nodes[i].begin(),
                         g.nodes[i].end()))
        ++move_bad;
    for (int j : g.down[i])
      if (!std::includes(g.nodes[i].begin(), g.nodes[i].end(), g.nodes[j].begin(),
                         g.nodes[j].end()))
        ++move_bad;
    if (g.dp[i] < 0) ++move_bad;
  }

  // certified depths must survive growing the patch
  auto s2 = setup_patch(cfg, cfg.radius + 1);
  auto reg2 = build_registry(s2.patch, s2.zono);
  moves_and_depth(reg2);
  std::map<std::vector<Vec>, int> dp2;
  int maxdp2 = 0;
  for (const auto& info : reg2.infos) {
    if (info.h2 == 0) continue;
    dp2[coord_key(s2.patch, info.simplex)] = info.dp;
    if (info.dp_certified) maxdp2 = std::max(maxdp2, info.dp);
  }
  long matched = 0, depth_bad = 0;
  for (const auto& info : reg.infos) {
    if (info.h2 == 0 || !info.dp_certified) continue;
    auto it = dp2.find(coord_key(s.patch, info.simplex));
    if (it == dp2.end() || it->second != info.dp) {
      ++depth_bad;
      r.witnesses.push_back("simplex " + simplex_str(s.patch, info.simplex) +
                            ": certified depth " + std::to_string(info.dp) +
                            " changed after growing the patch radius by one");
      continue;
    }
    ++matched;
  }
  if (maxdp != maxdp2) {
    ++depth_bad;
    r.witnesses.push_back("observed max depth moved from " + std::to_string(maxdp) + " to " +
                          std::to_string(maxdp2) + " when the radius grew by one");
  }

  r.counters["positive_horizontal"] = positive;
  r.counters["with_minimum_face"] = with_min;
  r.counters["vertices_self_minimal"] = vertex_self;
  r.counters["wedge_checks"] = wedged;
  r.counters["move_nodes"] = (long)g.nodes.size();
  r.counters["certified_depths"] = certified;
  r.counters["max_depth"] = maxdp;
  r.counters["max_depth_next_radius"] = maxdp2;
  r.counters["depth_matched"] = matched;
  r.passed = vertex_bad == 0 && wedge_bad == 0 && move_bad == 0 && depth_bad == 0;
  return r;
}

// --- 6: adjacent subdivision vertices never share a value ---------------

SuiteResult suite_no_critical_edges(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "no-critical-edges";
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  moves_and_depth(reg);
  auto sub = subdivide(s.patch, reg);
  long edges = 0, equal_values = 0;
  for (const auto& cell : sub.complex.cells) {
    if (cell.size() != 2) continue;
    ++edges;
    if (sub_morse(sub, cell[0]) == sub_morse(sub, cell[1])) {
      ++equal_values;
      r.witnesses.push_back("carriers " + simplex_str(s.patch, sub.carriers[cell[0]]) +
                            " and " + simplex_str(s.patch, sub.carriers[cell[1]]) +
                            " are adjacent with equal value " +
                            sub_morse(sub, cell[0]).str());
    }
  }
  r.counters["subdivision_edges"] = edges;
  r.counters["equal_adjacent_values"] = equal_values;
  r.passed = edges > 0 && equal_values == 0;
  return r;
}

// --- 7: descending links match the predicted join -----------------------

SuiteResult suite_descending_link_join(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "descending-link-join";
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  moves_and_depth(reg);
  auto sub = subdivide(s.patch, reg);
  long computed = 0, skipped = 0, punctured = 0, join_bad = 0, acyclic_bad = 0;
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    DescendingLink d;
    try {
      d = descending_link(sub, v);
    } catch (const Error& e) {
      if (e.kind == ErrorKind::InsufficientRadius) { ++skipped; continue; }
      throw;
    }
    ++computed;
    if (!(d.direct == d.predicted)) {
      ++join_bad;
      r.witnesses.push_back("carrier " + simplex_str(s.patch, sub.carriers[v]) +
                            ": direct descending link differs from the predicted join");
    }
    const auto& info = reg.infos[v];
    if (info.h2 > 0 && info.sigma_min && *info.sigma_min != info.simplex) {
      ++punctured;
      if (!is_acyclic(d.direct)) {
        ++acyclic_bad;
        r.witnesses.push_back("carrier " + simplex_str(s.patch, sub.carriers[v]) +
                              " is not its own minimum yet its descending link " +
                              betti_str(d.direct) + " is not acyclic");
      }
    }
  }
  r.counters["links_computed"] = computed;
  r.counters["skipped_incomplete_star"] = skipped;
  r.counters["punctured_cases"] = punctured;
  r.counters["join_mismatches"] = join_bad;
  r.counters["non_acyclic_punctures"] = acyclic_bad;
  r.passed = computed > 0 && join_bad == 0 && acyclic_bad == 0;
  return r;
}

// --- 8: classical wedge-of-spheres counts for the small buildings -------

SuiteResult suite_solomon_tits(const ScenarioConfig& cfg) {
  (void)cfg;
  SuiteResult r;
  r.name = "solomon-tits";
  SuiteTable table{"betti", {"building", "chambers", "vertices", "b0", "b1", "edge_count_check"},
                   {}};
  struct Want {
    const char* spec;
    long b1;
  };
  bool ok = true;
  for (Want w : {Want{"a2(2)", 8}, Want{"c2(2)", 16}}) {
    auto b = build_building(parse_building_spec(w.spec));
    auto bt = betti_numbers(b.complex);
    long verts = (long)b.complex.vertex_set().size();
    long edges = 0;
    for (const auto& cell : b.complex.cells)
      if (cell.size() == 2) ++edges;
    // one-dimensional wedge: b1 equals the cycle rank edges - vertices + 1
    long cycle_rank = edges - verts + 1;
    bool good = bt.btilde(0) == 0 && bt.btilde(1) == w.b1 && cycle_rank == w.b1 &&
                bt.spherical(1);
    if (!good) {
      ok = false;
      r.witnesses.push_back(std::string(w.spec) + ": homology " + betti_str(b.complex) +
                            " does not match the expected wedge of " + std::to_string(w.b1) +
                            " circles");
    }
    table.rows.push_back({w.spec, std::to_string(b.chambers), std::to_string(verts),
                          std::to_string(bt.btilde(0)), std::to_string(bt.btilde(1)),
                          std::to_string(cycle_rank)});
    r.counters[std::string(w.spec) + "_chambers"] = b.chambers;
  }
  r.tables.push_back(std::move(table));
  r.passed = ok;
  return r;
}

// --- 9: hemisphere complexes over the small thick buildings -------------

SuiteResult suite_hemisphere_complexes(const ScenarioConfig& cfg) {
  (void)cfg;
  SuiteResult r;
  r.name = "hemisphere-complexes";
  SuiteTable table{"hemispheres",
                   {"building", "pole", "acute", "equatorial", "obtuse", "closed", "open",
                    "hor_dim", "ver_dim"},
                   {}};
  long combos = 0, failures = 0;
  for (std::string spec : {"a2(2)", "a2(3)", "c2(2)", "a1(2)*a1(2)"}) {
    auto b = build_building(parse_building_spec(spec));
    auto rb = realize(b);
    const auto& cv = b.cverts[b.base_chamber];
    std::vector<std::pair<std::string, Vec>> poles;
    poles.push_back({"vertex", rb.direction[cv[0]]});
    Vec bary = rb.direction[cv[0]];
    for (size_t t = 1; t < cv.size(); ++t) bary = bary + rb.direction[cv[t]];
    poles.push_back({"barycenter", bary});
    Q coef[] = {Q(5), Q(3), Q(2)};
    Vec gen(rb.direction[cv[0]].dim());
    for (size_t t = 0; t < cv.size(); ++t) gen = gen + coef[t] * rb.direction[cv[t]];
    poles.push_back({"generic", gen});

    for (auto& [pname, pole] : poles) {
      ++combos;
      auto pd = angle_classify(rb, pole);
      auto hc = hemisphere_complexes(rb, pd);
      long na = 0, ne = 0, no = 0;
      for (auto k : pd.cls)
        k == AngleClass::Acute ? ++na : k == AngleClass::Equatorial ? ++ne : ++no;

      int top = b.complex.dim();
      auto bc = betti_numbers(hc.closed);
      bool closed_ok = !hc.closed.cells.empty() && hc.closed.dim() == top &&
                       bc.spherical(top) && bc.btilde(top) > 0;
      bool open_ok = false;
      int ver_dim = hc.ver.cells.empty() ? -1 : hc.ver.dim();
      if (!hc.open.cells.empty() && ver_dim >= 0) {
        auto bo = betti_numbers(hc.open);
        open_ok = hc.open.dim() == ver_dim && bo.spherical(ver_dim) && bo.btilde(ver_dim) > 0;
      }
      bool join_ok = join(hc.hor, hc.ver) == b.complex;
      if (!closed_ok || !open_ok || !join_ok) {
        ++failures;
        r.witnesses.push_back(spec + " with " + pname + " pole " + vec_str(pole) +
                              ": closed " + betti_str(hc.closed) + " open " +
                              betti_str(hc.open) + " (closed_ok=" + std::to_string(closed_ok) +
                              " open_ok=" + std::to_string(open_ok) +
                              " join_ok=" + std::to_string(join_ok) + ")");
      }
      table.rows.push_back({spec, pname, std::to_string(na), std::to_string(ne),
                            std::to_string(no), betti_str(hc.closed), betti_str(hc.open),
                            std::to_string(hc.hor.cells.empty() ? -1 : hc.hor.dim()),
                            std::to_string(ver_dim)});
    }
  }
  r.tables.push_back(std::move(table));
  r.counters["combinations"] = combos;
  r.counters["failures"] = failures;
  r.passed = failures == 0 && combos == 12;
  return r;
}

// --- 10: thick descending links over the line and the plane -------------

SuiteResult suite_thick_links(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "thick-links";
  int q = cfg.q.value_or(2);
  std::map<std::string, SphericalBuildingCx> models;
  auto model_for = [&](HorizontalRegistry& reg, const Simplex& sigma)
      -> const SphericalBuildingCx& {
    auto spec = thick_spec_for_link(split_link(reg, sigma).link, q);
    std::string key = spec.str();
    auto it = models.find(key);
    if (it == models.end()) it = models.emplace(key, build_building(spec)).first;
    return it->second;
  };
  SuiteTable table{"betti", {"patch", "carrier", "h2", "assembled", "parts"}, {}};
  long failures = 0;

  // line at thickness q: every resolvable positive vertex is q points
  {
    ScenarioConfig line;
    line.type = "a1t";
    line.radius = 6;
    line.richness = Richness::AlmostRich;
    auto s = setup_patch(line);
    auto reg = build_registry(s.patch, s.zono);
    moves_and_depth(reg);
    long ok = 0, skipped = 0;
    for (const auto& info : reg.infos) {
      if (info.h2 == 0 || info.simplex.size() != 1) continue;
      ThickDescendingLink td;
      try {
        td = thick_descending_link(reg, info.simplex, model_for(reg, info.simplex));
      } catch (const Error& e) {
        if (e.kind == ErrorKind::InsufficientRadius ||
            e.kind == ErrorKind::Precondition) {
          ++skipped;
          continue;
        }
        throw;
      }
      ++ok;
      auto bt = betti_numbers(td.assembled);
      bool good = td.face_part.cells.empty() && td.hor_part.cells.empty() &&
                  (long)td.ver_verts.size() == q && bt.spherical(0) &&
                  bt.btilde(0) == q - 1;
      if (!good) {
        ++failures;
        r.witnesses.push_back("line vertex " + simplex_str(s.patch, info.simplex) +
                              ": assembled link " + betti_str(td.assembled) +
                              " is not the " + std::to_string(q) + "-point sphere");
      }
      table.rows.push_back({"a1t", simplex_str(s.patch, info.simplex), info.h2.get_str(),
                            betti_str(td.assembled),
                            "ver=" + std::to_string(td.ver_verts.size())});
    }
    r.counters["line_vertices"] = ok;
    r.counters["line_skipped"] = skipped;
    if (ok == 0) {
      ++failures;
      r.witnesses.push_back("no positive-height line vertex was resolvable");
    }
  }

  // plane at thickness q: self-minimal vertices and horizontal edges give
  // one-spheres in homology
  {
    ScenarioConfig plane;
    plane.type = "a2t";
    plane.radius = 9;
    plane.richness = Richness::AlmostRich;
    auto s = setup_patch(plane);
    auto reg = build_registry(s.patch, s.zono);
    moves_and_depth(reg);
    long verts = 0, edges = 0, skipped = 0, nonzero_top = 0;
    for (const auto& info : reg.infos) {
      if (info.h2 == 0 || !info.sigma_min || *info.sigma_min != info.simplex) continue;
      ThickDescendingLink td;
      try {
        td = thick_descending_link(reg, info.simplex, model_for(reg, info.simplex));
      } catch (const Error& e) {
        if (e.kind == ErrorKind::InsufficientRadius ||
            e.kind == ErrorKind::Precondition) {
          ++skipped;
          continue;
        }
        throw;
      }
      info.simplex.size() == 1 ? ++verts : ++edges;
      auto bt = betti_numbers(td.assembled);
      if (bt.btilde(1) > 0) ++nonzero_top;
      bool good = td.assembled.dim() == 1 && bt.spherical(1);
      if (!good) {
        ++failures;
        r.witnesses.push_back("plane carrier " + simplex_str(s.patch, info.simplex) +
                              ": assembled link " + betti_str(td.assembled) +
                              " is not spherical of dimension 1");
      }
      table.rows.push_back(
          {"a2t", simplex_str(s.patch, info.simplex), info.h2.get_str(),
           betti_str(td.assembled),
           "face=" + std::to_string(td.face_elems.size()) +
               " hor=" + std::to_string(td.hor_elems.size()) +
               " ver=" + std::to_string(td.ver_verts.size())});
    }
    r.counters["plane_vertices"] = verts;
    r.counters["plane_edges"] = edges;
    r.counters["plane_skipped"] = skipped;
    r.counters["plane_nonzero_top"] = nonzero_top;
    if (verts < 5 || edges < 2 || nonzero_top == 0) {
      ++failures;
      r.witnesses.push_back("plane coverage too thin: " + std::to_string(verts) +
                            " vertices, " + std::to_string(edges) + " edges, " +
                            std::to_string(nonzero_top) + " nonzero top classes");
    }
    r.seed = cfg.seed;
    r.samples = verts + edges;
  }

  r.tables.push_back(std::move(table));
  r.counters["failures"] = failures;
  r.passed = failures == 0;
  return r;
}

// --- 11: filtration stages enter by descending links --------------------

SuiteResult suite_filtration_identity(const ScenarioConfig& cfg) {
  SuiteResult r;
  r.name = "filtration-identity";
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  moves_and_depth(reg);
  auto sub = subdivide(s.patch, reg);

  auto vals = filtration_values(sub);
  auto rank_of = [&](const SubMorseValue& f) {
    return (int)(std::lower_bound(vals.begin(), vals.end(), f) - vals.begin());
  };
  long entering = 0, adjacency_bad = 0, relative_bad = 0, growth_bad = 0, skipped = 0;
  Complex prev;
  for (int j = 0; j < (int)vals.size(); ++j) {
    auto st = filtration_stage(sub, j);
    for (const auto& cell : prev.cells)
      if (!st.contains(cell)) ++growth_bad;
    std::vector<int> fresh;
    for (int v : st.vertex_set())
      if (rank_of(sub_morse(sub, v)) == j) fresh.push_back(v);
    entering += (long)fresh.size();
    for (size_t a = 0; a < fresh.size(); ++a)
      for (size_t b = a + 1; b < fresh.size(); ++b)
        if (st.contains({std::min(fresh[a], fresh[b]), std::max(fresh[a], fresh[b])})) {
          ++adjacency_bad;
          r.witnesses.push_back("entering carriers " +
                                simplex_str(s.patch, sub.carriers[fresh[a]]) + " and " +
                                simplex_str(s.patch, sub.carriers[fresh[b]]) +
                                " are adjacent at stage " + std::to_string(j));
        }
    for (int v : fresh) {
      DescendingLink d;
      try {
        d = descending_link(sub, v);
      } catch (const Error& e) {
        if (e.kind == ErrorKind::InsufficientRadius) { ++skipped; continue; }
        throw;
      }
      if (!(st.link({v}) == d.direct)) {
        ++relative_bad;
        r.witnesses.push_back("carrier " + simplex_str(s.patch, sub.carriers[v]) +
                              ": relative link at stage " + std::to_string(j) +
                              " differs from the descending link");
      }
    }
    prev = st;
  }
  bool exhausts = prev == sub.complex;
  if (!exhausts) r.witnesses.push_back("the final stage does not exhaust the subdivision");

  r.counters["stages"] = (long)vals.size();
  r.counters["entering_vertices"] = entering;
  r.counters["adjacency_violations"] = adjacency_bad;
  r.counters["relative_link_mismatches"] = relative_bad;
  r.counters["growth_violations"] = growth_bad;
  r.counters["skipped_incomplete_star"] = skipped;
  r.passed = exhausts && adjacency_bad == 0 && relative_bad == 0 && growth_bad == 0 &&
             entering > 0;
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& registered_suites() {
  static const std::vector<SuiteInfo> suites = {
      {"zonotope-faces",
       "support faces agree with brute-force maximization over the vertex list",
       &suite_zonotope_faces},
      {"no-wall",
       "no reflection wall separates a face of an invariant root zonotope from its normal cone",
       &suite_no_wall},
      {"contains-vertex",
       "the exact minimum of the height over every patch simplex is attained at a vertex",
       &suite_contains_vertex},
      {"gradient-criterion",
       "every edge is height-monotone and obtuse pairing matches the strictly lower endpoint",
       &suite_gradient_criterion},
      {"minimum-face-moves",
       "minimum faces exist uniquely, wedge, and certified depths survive a radius increase",
       &suite_minimum_face_moves},
      {"no-critical-edges",
       "adjacent subdivision vertices never share their lexicographic value",
       &suite_no_critical_edges},
      {"descending-link-join",
       "descending links equal the predicted join and puncture to acyclic complexes",
       &suite_descending_link_join},
      {"solomon-tits",
       "the small thick buildings are wedges of circles with the classical counts",
       &suite_solomon_tits},
      {"hemisphere-complexes",
       "closed and open hemisphere complexes are spherical and the building splits as hor * ver",
       &suite_hemisphere_complexes},
      {"thick-links",
       "thick descending links assemble to homology spheres of top dimension",
       &suite_thick_links},
      {"filtration-identity",
       "stage-entering vertices are non-adjacent and enter along their descending links",
       &suite_filtration_identity},
  };
  return suites;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : registered_suites())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace zm
