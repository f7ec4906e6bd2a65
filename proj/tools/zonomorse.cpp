#include "zonomorse/homology.hpp"
#include "zonomorse/morse.hpp"
#include "zonomorse/report.hpp"
#include "zonomorse/spherical.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace zm;

namespace {

// flag bundle shared by the patch-facing subcommands
struct Flags {
  std::string type = "a2t";
  int radius = 4;
  std::string richness = "almost-rich";
  int q = 0;
  uint64_t seed = 1;
  std::string out;
  std::string csv_out;
  std::string format = "structured";
  std::string base;
  int seed_radius = 0;
  int vertex = -1;
  std::string config_path;
  std::string suites;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--type", f.type, "affine patch tag or building factor tag");
  cmd->add_option("--radius", f.radius, "patch radius");
  cmd->add_option("--richness", f.richness, "orbit | almost-rich | rich");
  cmd->add_option("--q", f.q, "residue thickness");
  cmd->add_option("--seed", f.seed, "seed for sampled checks");
  cmd->add_option("--out", f.out, "write the structured report here");
  cmd->add_option("--csv-out", f.csv_out, "also write the tabular CSV export here");
  cmd->add_option("--format", f.format, "structured | csv (stdout format)");
}

void add_patch_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--base", f.base, "patch center as comma-separated rationals");
  cmd->add_option("--seed-radius", f.seed_radius,
                  "seed patch radius for generators when --base is offset");
}

Richness parse_richness(const std::string& s) {
  if (s == "orbit") return Richness::OrbitClosure;
  auto r = richness_from_name(s);
  require(r.has_value(), ErrorKind::Config, "unknown richness '" + s + "'");
  return *r;
}

ScenarioConfig config_from(const Flags& f) {
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    require(in.good(), ErrorKind::Config, "cannot read config '" + f.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    ScenarioConfig c = parse_config(text.str());
    // output destinations given on the command line win over the file
    if (!f.out.empty()) c.out = f.out;
    if (!f.csv_out.empty()) c.csv_out = f.csv_out;
    if (!f.suites.empty()) {
      c.suites.clear();
      std::stringstream ss(f.suites);
      std::string part;
      while (std::getline(ss, part, ',')) c.suites.push_back(part);
    }
    return c;
  }
  ScenarioConfig c;
  c.type = f.type;
  require(f.radius >= 0, ErrorKind::Config, "radius must be nonnegative");
  c.radius = f.radius;
  c.richness = parse_richness(f.richness);
  if (f.q) {
    require(f.q >= 2, ErrorKind::Config, "q must be at least 2");
    c.q = f.q;
  }
  if (!f.base.empty()) {
    std::stringstream ss(f.base);
    std::string part;
    while (std::getline(ss, part, ',')) {
      require(!part.empty(), ErrorKind::Config, "empty coordinate in --base");
      c.base.push_back(Q(part));
    }
  }
  if (f.seed_radius) {
    require(f.seed_radius >= 1, ErrorKind::Config, "seed radius must be positive");
    c.seed_radius = f.seed_radius;
  }
  if (!f.suites.empty()) {
    std::stringstream ss(f.suites);
    std::string part;
    while (std::getline(ss, part, ',')) c.suites.push_back(part);
  }
  c.out = f.out;
  c.csv_out = f.csv_out;
  c.seed = f.seed;
  return c;
}

// every subcommand speaks the same versioned document
void emit(const VerificationReport& doc, const Flags& f) {
  if (!f.out.empty()) {
    std::ofstream fo(f.out);
    require(fo.good(), ErrorKind::Config, "cannot open report path '" + f.out + "'");
    fo << report_json(doc);
  }
  if (!f.csv_out.empty()) {
    std::ofstream fo(f.csv_out);
    require(fo.good(), ErrorKind::Config, "cannot open csv path '" + f.csv_out + "'");
    fo << report_csv(doc);
  }
  if (f.out.empty()) std::cout << (f.format == "csv" ? report_csv(doc) : report_json(doc));
}

VerificationReport wrap(const ScenarioConfig& cfg, SuiteResult r) {
  VerificationReport doc;
  doc.config = cfg;
  r.passed = true;
  doc.suites.push_back(std::move(r));
  return doc;
}

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

int cmd_patch(const Flags& f) {
  auto cfg = config_from(f);
  auto p = setup_patch(cfg).patch;
  SuiteResult r;
  r.name = "patch";
  r.counters["vertices"] = (long)p.coords.size();
  r.counters["alcoves"] = (long)p.alcoves.size();
  r.counters["cells"] = (long)p.complex.cells.size();
  r.counters["dim"] = p.dim();
  long special = 0;
  for (bool s : p.special) special += s;
  r.counters["special_vertices"] = special;
  SuiteTable t{"vertices", {"id", "coords", "type", "special"}, {}};
  for (size_t v = 0; v < p.coords.size(); ++v)
    t.rows.push_back({std::to_string(v), vec_str(p.coords[v]), std::to_string(p.vtype[v]),
                      p.special[v] ? "1" : "0"});
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_zonotope(const Flags& f) {
  auto cfg = config_from(f);
  auto s = setup_patch(cfg);
  SuiteResult r;
  r.name = "zonotope";
  r.counters["generators"] = (long)s.zono.gens.vectors.size();
  r.counters["invariance_verified"] = s.zono.gens.invariance_verified ? 1 : 0;
  r.counters["vertices"] = (long)s.zono.vertices.size();
  r.counters["facets"] = (long)s.zono.facets.size();
  r.counters["faces"] = (long)s.zono.faces.size();
  r.counters["span_dim"] = s.zono.deff;
  SuiteTable t{"vertices", {"coords"}, {}};
  for (const auto& v : s.zono.vertices) t.rows.push_back({vec_str(v)});
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_morse(const Flags& f) {
  auto cfg = config_from(f);
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  const auto& g = moves_and_depth(reg);
  SuiteResult r;
  r.name = "morse";
  long positive = 0, certified = 0;
  int maxdp = 0;
  for (const auto& info : reg.infos) {
    if (info.h2 == 0) continue;
    ++positive;
    if (info.dp_certified) { ++certified; maxdp = std::max(maxdp, info.dp); }
  }
  r.counters["horizontal_simplices"] = (long)reg.infos.size();
  r.counters["positive_height"] = positive;
  r.counters["move_nodes"] = (long)g.nodes.size();
  r.counters["certified_depths"] = certified;
  r.counters["max_depth"] = maxdp;
  SuiteTable heights{"heights", {"vertex", "h2"}, {}};
  for (size_t v = 0; v < s.patch.coords.size(); ++v)
    heights.rows.push_back({vec_str(s.patch.coords[v]), reg.table.h2[v].get_str()});
  r.tables.push_back(std::move(heights));
  SuiteTable hor{"horizontal", {"carrier", "h2", "depth", "certified"}, {}};
  for (const auto& info : reg.infos)
    hor.rows.push_back({simplex_str(s.patch, info.simplex), info.h2.get_str(),
                        std::to_string(info.dp), info.dp_certified ? "1" : "0"});
  r.tables.push_back(std::move(hor));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_subdivide(const Flags& f) {
  auto cfg = config_from(f);
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  moves_and_depth(reg);
  auto sub = subdivide(s.patch, reg);
  SuiteResult r;
  r.name = "subdivide";
  r.counters["subdivision_vertices"] = (long)sub.carriers.size();
  r.counters["cells"] = (long)sub.complex.cells.size();
  r.counters["stages"] = (long)filtration_values(sub).size();
  SuiteTable t{"values", {"vertex", "carrier", "value"}, {}};
  for (int v = 0; v < (int)sub.carriers.size(); ++v)
    t.rows.push_back({std::to_string(v), simplex_str(s.patch, sub.carriers[v]),
                      sub_morse(sub, v).str()});
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_desclinks(const Flags& f) {
  auto cfg = config_from(f);
  auto s = setup_patch(cfg);
  auto reg = build_registry(s.patch, s.zono);
  moves_and_depth(reg);
  auto sub = subdivide(s.patch, reg);
  SuiteResult r;
  r.name = "desclinks";
  long computed = 0, skipped = 0;
  SuiteTable t{"links", {"vertex", "carrier", "value", "betti", "join_matches"}, {}};
  for (int v = 0; v < (int)sub.carriers.size(); ++v) {
    if (f.vertex >= 0 && v != f.vertex) continue;
    DescendingLink d;
    try {
      d = descending_link(sub, v);
    } catch (const Error& e) {
      if (e.kind == ErrorKind::InsufficientRadius) { ++skipped; continue; }
      throw;
    }
    ++computed;
    t.rows.push_back({std::to_string(v), simplex_str(s.patch, sub.carriers[v]),
                      sub_morse(sub, v).str(), betti_str(d.direct),
                      d.direct == d.predicted ? "1" : "0"});
  }
  require(f.vertex < 0 || computed + skipped > 0, ErrorKind::Config,
          "no such subdivision vertex");
  r.counters["links_computed"] = computed;
  r.counters["skipped_incomplete_star"] = skipped;
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

std::string building_spec_text(const Flags& f) {
  if (f.type.find('(') != std::string::npos) return f.type;
  if (!f.q) return f.type;
  std::string out, part;
  std::stringstream ss(f.type);
  while (std::getline(ss, part, '*')) {
    if (!out.empty()) out += "*";
    out += part + "(" + std::to_string(f.q) + ")";
  }
  return out;
}

int cmd_spherical(const Flags& f) {
  auto cfg = config_from(f);
  auto b = build_building(parse_building_spec(building_spec_text(f)));
  SuiteResult r;
  r.name = "spherical";
  r.counters["chambers"] = b.chambers;
  r.counters["vertices"] = b.nverts;
  r.counters["rank"] = b.rank;
  r.counters["weyl_order"] = b.worder;
  r.counters["apartment_chambers"] = (long)b.apartment.size();
  r.counters["thick"] = b.thick() ? 1 : 0;
  r.counters["opposite_of_base"] = (long)opposite_chambers(b, b.base_chamber).size();
  SuiteTable t{"betti", {"complex", "betti"}, {}};
  t.rows.push_back({b.spec.str(), betti_str(b.complex)});
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_homology(const Flags& f) {
  auto cfg = config_from(f);
  auto b = build_building(parse_building_spec(building_spec_text(f)));
  auto bt = betti_numbers(b.complex, true);
  SuiteResult r;
  r.name = "homology";
  r.counters["dim"] = bt.dim;
  r.counters["acyclic"] = bt.acyclic() ? 1 : 0;
  SuiteTable t{"betti", {"degree", "btilde", "torsion"}, {}};
  for (int i = 0; i <= bt.dim; ++i) {
    std::string tor;
    if (i < (int)bt.torsion.size())
      for (const auto& z : bt.torsion[i]) tor += (tor.empty() ? "" : " ") + z.get_str();
    t.rows.push_back({std::to_string(i), std::to_string(bt.btilde(i)), tor});
  }
  r.tables.push_back(std::move(t));
  emit(wrap(cfg, std::move(r)), f);
  return exit_ok;
}

int cmd_run(const Flags& f) {
  auto cfg = config_from(f);
  auto rep = run_scenario(cfg);
  for (const auto& s : rep.suites) {
    std::cerr << (s.contradiction ? "CONTRADICTION " : s.passed ? "PASS " : "FAIL ")
              << s.name;
    for (const auto& [k, v] : s.counters) std::cerr << " " << k << "=" << v;
    std::cerr << "\n";
  }
  if (cfg.out.empty()) std::cout << (f.format == "csv" ? report_csv(rep) : report_json(rep));
  else std::cerr << "report: " << cfg.out << "\n";
  return exit_code_for(rep);
}

int cmd_verify(const Flags& f, const std::string& suite) {
  require(find_suite(suite) != nullptr, ErrorKind::Config, "unknown suite '" + suite + "'");
  auto cfg = config_from(f);
  cfg.suites = {suite};
  if (cfg.out.empty()) cfg.out = "zonomorse-report.json";
  auto rep = run_scenario(cfg);
  const auto& s = rep.suites.at(0);
  std::cout << (s.contradiction ? "CONTRADICTION " : s.passed ? "PASS " : "FAIL ") << suite
            << ":";
  for (const auto& [k, v] : s.counters) std::cout << " " << k << "=" << v;
  std::cout << " -> " << cfg.out << "\n";
  return exit_code_for(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for zonotopal heights on affine patches"};
  app.require_subcommand(1);

  Flags f;
  std::string suite;

  auto* patch = app.add_subcommand("patch", "build a patch and list its vertices");
  add_common(patch, f);
  add_patch_flags(patch, f);
  auto* zono = app.add_subcommand("zonotope", "build the invariant zonotope of a patch");
  add_common(zono, f);
  add_patch_flags(zono, f);
  auto* morse = app.add_subcommand("morse", "heights, horizontal simplices, moves, depths");
  add_common(morse, f);
  add_patch_flags(morse, f);
  auto* subdiv = app.add_subcommand("subdivide", "subdivision with lexicographic values");
  add_common(subdiv, f);
  add_patch_flags(subdiv, f);
  auto* desc = app.add_subcommand("desclinks", "descending links of subdivision vertices");
  add_common(desc, f);
  add_patch_flags(desc, f);
  desc->add_option("--vertex", f.vertex, "restrict to one subdivision vertex");
  auto* sph = app.add_subcommand("spherical", "build a spherical building model");
  add_common(sph, f);
  auto* hom = app.add_subcommand("homology", "reduced homology of a building model");
  add_common(hom, f);
  auto* run = app.add_subcommand("run", "run verification suites from flags or a config");
  add_common(run, f);
  add_patch_flags(run, f);
  run->add_option("--config", f.config_path, "JSON scenario config (overrides other flags)");
  run->add_option("--suites", f.suites, "comma-separated suite names (default: all)");
  auto* verify = app.add_subcommand("verify", "run one registered suite");
  add_common(verify, f);
  add_patch_flags(verify, f);
  verify->add_option("suite", suite, "registered suite name")->required();

  try {
    app.parse(argc, argv);
    if (*patch) return cmd_patch(f);
    if (*zono) return cmd_zonotope(f);
    if (*morse) return cmd_morse(f);
    if (*subdiv) return cmd_subdivide(f);
    if (*desc) return cmd_desclinks(f);
    if (*sph) return cmd_spherical(f);
    if (*hom) return cmd_homology(f);
    if (*run) return cmd_run(f);
    if (*verify) return cmd_verify(f, suite);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == ErrorKind::PaperContradiction ? exit_contradiction : exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
