#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zonomorse/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace zm;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string drop_timing(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"seconds\":") == std::string::npos) out << line << "\n";
  return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "zonomorse-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct CliRun {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliRun run_cli(const std::string& args) {
  const char* bin = std::getenv("ZM_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "ZM_CLI_BIN must point at the built binary");
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int st = pclose(pipe);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("configs parse strictly") {
  auto c = parse_config(R"({
    "type": "c2t", "radius": 6, "richness": "rich", "q": 3,
    "pole_vertex": 2, "base": [8, "0"], "seed_radius": 4,
    "suites": ["no-wall"], "out": "r.json", "csv_out": "r.csv", "seed": 42
  })");
  CHECK(c.type == "c2t");
  CHECK(c.radius == 6);
  CHECK(c.richness == Richness::Rich);
  CHECK(*c.q == 3);
  CHECK(*c.pole_vertex == 2);
  REQUIRE(c.base.size() == 2);
  CHECK(c.base[0] == Q(8));
  CHECK(c.base[1] == Q(0));
  CHECK(*c.seed_radius == 4);
  CHECK(c.suites == std::vector<std::string>{"no-wall"});
  CHECK(c.out == "r.json");
  CHECK(c.csv_out == "r.csv");
  CHECK(c.seed == 42);

  auto d = parse_config("{}");
  CHECK(d.type == "a2t");
  CHECK(d.radius == 4);
  CHECK(d.richness == Richness::AlmostRich);
  CHECK(!d.q);
  CHECK(d.suites.empty());
  CHECK(d.seed == 1);

  CHECK_THROWS_WITH_AS(parse_config(R"({"bogus": 1})"), doctest::Contains("unknown config"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"radius": -1})"), doctest::Contains("nonnegative"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"richness": "huge"})"),
                       doctest::Contains("unknown richness"), Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"q": 1})"), doctest::Contains("at least 2"), Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"suites": ["nope"]})"),
                       doctest::Contains("unknown suite"), Error);
  CHECK_THROWS_WITH_AS(parse_config("not json"), doctest::Contains("not valid JSON"), Error);
  for (const auto& bad : {R"({"type": 3})", R"({"suites": "no-wall"})", R"({"base": 8})"}) {
    CHECK_THROWS_AS(parse_config(bad), Error);
  }
}

TEST_CASE("one registered suite per verified property") {
  const auto& suites = registered_suites();
  CHECK(suites.size() == 11);
  std::set<std::string> names;
  for (const auto& s : suites) {
    CHECK(!s.summary.empty());
    CHECK(s.run != nullptr);
    names.insert(s.name);
    CHECK(find_suite(s.name) == &s);
  }
  CHECK(names.size() == suites.size());
  CHECK(find_suite("nope") == nullptr);
  CHECK_THROWS_WITH_AS([] {
    ScenarioConfig c;
    c.suites = {"nope"};
    run_scenario(c);
  }(), doctest::Contains("unknown suite"), Error);
}

TEST_CASE("scenario reports are deterministic and carry the schema") {
  ScenarioConfig c;
  c.suites = {"solomon-tits", "zonotope-faces"};
  c.seed = 5;
  auto r1 = run_scenario(c);
  auto r2 = run_scenario(c);
  CHECK(r1.all_passed());
  CHECK(!r1.any_contradiction());
  CHECK(exit_code_for(r1) == exit_ok);
  CHECK(report_json(r1, false) == report_json(r2, false));
  REQUIRE(r1.suites.size() == 2);
  CHECK(r1.suites[0].name == "solomon-tits");
  CHECK(r1.suites[1].name == "zonotope-faces");
  REQUIRE(r1.suites[1].seed.has_value());
  CHECK(*r1.suites[1].seed == 5);
  REQUIRE(r1.suites[1].samples.has_value());
  CHECK(*r1.suites[1].samples == 1000);

  auto text = report_json(r1);
  CHECK(text.find("\"schema_version\": \"1\"") != std::string::npos);
  CHECK(text.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(text.find("\"seconds\":") != std::string::npos);
  CHECK(report_json(r1, false).find("\"seconds\":") == std::string::npos);

  // a different seed changes only the sampled suite's provenance fields
  ScenarioConfig c2 = c;
  c2.seed = 6;
  auto r3 = run_scenario(c2);
  CHECK(r3.all_passed());
  CHECK(*r3.suites[1].seed == 6);
}

TEST_CASE("failed suites drive the exit codes and keep witnesses") {
  VerificationReport rep;
  rep.config = default_config();
  SuiteResult good;
  good.name = "good";
  good.passed = true;
  rep.suites.push_back(good);
  CHECK(exit_code_for(rep) == exit_ok);

  SuiteResult bad;
  bad.name = "bad";
  bad.passed = false;
  bad.witnesses.push_back("edge {(0),(1)} went, \"wrong\"");
  rep.suites.push_back(bad);
  CHECK(exit_code_for(rep) == exit_verification);
  auto text = report_json(rep);
  CHECK(text.find("\"status\": \"fail\"") != std::string::npos);
  CHECK(text.find("went, \\\"wrong\\\"") != std::string::npos);

  SuiteResult contra;
  contra.name = "contra";
  contra.passed = false;
  contra.contradiction = true;
  rep.suites.push_back(contra);
  CHECK(exit_code_for(rep) == exit_contradiction);
  CHECK(report_json(rep).find("\"status\": \"contradiction\"") != std::string::npos);

  // csv escapes the comma-bearing witness and keeps every section
  auto csv = report_csv(rep);
  CHECK(csv.find("status,good,status,pass") != std::string::npos);
  CHECK(csv.find("status,bad,status,fail") != std::string::npos);
  CHECK(csv.find("\"edge {(0),(1)} went, \"\"wrong\"\"\"") != std::string::npos);
}

TEST_CASE("csv export flattens counters and tables") {
  ScenarioConfig c;
  c.suites = {"solomon-tits"};
  auto rep = run_scenario(c);
  auto csv = report_csv(rep);
  CHECK(csv.rfind("section,suite,key,value", 0) == 0);
  CHECK(csv.find("counter,solomon-tits,a2(2)_chambers,21") != std::string::npos);
  CHECK(csv.find("table,solomon-tits,betti") != std::string::npos);
  CHECK(csv.find("building,chambers,vertices,b0,b1,edge_count_check") != std::string::npos);
  CHECK(csv.find("a2(2),21,14,0,8,8") != std::string::npos);
  CHECK(csv.find("c2(2),45,30,0,16,16") != std::string::npos);
}

TEST_CASE("scenario output paths are written") {
  auto out = temp_file("lib-report.json");
  auto csv = temp_file("lib-report.csv");
  std::filesystem::remove(out);
  std::filesystem::remove(csv);
  ScenarioConfig c;
  c.suites = {"solomon-tits"};
  c.out = out.string();
  c.csv_out = csv.string();
  auto rep = run_scenario(c);
  CHECK(rep.all_passed());
  CHECK(slurp(out).find("\"schema_version\": \"1\"") != std::string::npos);
  CHECK(slurp(csv).rfind("section,suite,key,value", 0) == 0);
}

TEST_CASE("patch setups honor offsets and seed radii") {
  ScenarioConfig c;
  c.type = "c2t";
  c.radius = 6;
  c.richness = Richness::Rich;
  c.base = {Q(8), Q(0)};
  c.seed_radius = 4;
  auto s = setup_patch(c);
  CHECK(s.patch.radius == 6);
  CHECK(s.patch.base == Vec{Q(8), Q(0)});
  CHECK(s.zono.gens.level == Richness::Rich);
  CHECK(s.zono.gens.invariance_verified);

  // radius override drives the stability comparisons
  auto s2 = setup_patch(c, 7);
  CHECK(s2.patch.radius == 7);
  // the zonotope must not move when only the patch radius grows
  CHECK(s2.zono.vertices == s.zono.vertices);
}

TEST_CASE("cli verify prints a verdict and writes the report") {
  auto out = temp_file("verify.json");
  std::filesystem::remove(out);
  auto r = run_cli("verify solomon-tits --out " + out.string());
  CHECK(r.exit_code == exit_ok);
  CHECK(r.output.rfind("PASS solomon-tits:", 0) == 0);
  CHECK(r.output.find(out.string()) != std::string::npos);
  auto text = slurp(out);
  CHECK(text.find("\"schema_version\": \"1\"") != std::string::npos);
  CHECK(text.find("\"name\": \"solomon-tits\"") != std::string::npos);

  CHECK(run_cli("verify bogus").exit_code == exit_usage);
  CHECK(run_cli("verify").exit_code == exit_usage);
}

TEST_CASE("cli run matches the documented edge count on the line") {
  auto out = temp_file("line.json");
  std::filesystem::remove(out);
  auto r = run_cli("run --type a1t --radius 5 --suites gradient-criterion --out " +
                   out.string());
  CHECK(r.exit_code == exit_ok);
  auto text = slurp(out);
  CHECK(text.find("\"edges\": 10") != std::string::npos);
  CHECK(text.find("\"not_monotone\": 0") != std::string::npos);
}

TEST_CASE("cli rejects bad usage distinctly") {
  CHECK(run_cli("run --nonsense").exit_code == exit_usage);
  CHECK(run_cli("patch --type zzz").exit_code == exit_usage);
  CHECK(run_cli("spherical --type a2 --q 4").exit_code == exit_usage);
  CHECK(run_cli("").exit_code == exit_usage);
  auto bad = temp_file("bad.json");
  std::ofstream(bad) << R"({"type": "a2t", "bogus": 1})";
  CHECK(run_cli("run --config " + bad.string()).exit_code == exit_usage);
}

TEST_CASE("cli reports are byte-identical modulo timing") {
  auto out = temp_file("det.json");
  auto cfg = temp_file("det-config.json");
  std::ofstream(cfg) << R"({"type": "a1t", "radius": 5,
    "suites": ["gradient-criterion", "zonotope-faces"], "seed": 9,
    "out": ")" << out.string() << R"("})";
  REQUIRE(run_cli("run --config " + cfg.string()).exit_code == exit_ok);
  auto first = slurp(out);
  REQUIRE(run_cli("run --config " + cfg.string()).exit_code == exit_ok);
  auto second = slurp(out);
  CHECK(drop_timing(first) == drop_timing(second));
  CHECK(first.find("\"seed\": 9") != std::string::npos);
}

TEST_CASE("cli subcommands emit the shared document shape") {
  auto r = run_cli("patch --type a2t --radius 2 --format csv");
  CHECK(r.exit_code == exit_ok);
  CHECK(r.output.find("status,patch,status,pass") != std::string::npos);
  CHECK(r.output.find("table,patch,vertices") != std::string::npos);

  auto z = run_cli("zonotope --type a1t --radius 3");
  CHECK(z.exit_code == exit_ok);
  CHECK(z.output.find("\"invariance_verified\": 1") != std::string::npos);

  auto m = run_cli("morse --type a2t --radius 4 --format csv");
  CHECK(m.exit_code == exit_ok);
  CHECK(m.output.find("table,morse,heights") != std::string::npos);

  auto sub = run_cli("subdivide --type a2t --radius 4");
  CHECK(sub.exit_code == exit_ok);
  CHECK(sub.output.find("\"subdivision_vertices\": 97") != std::string::npos);

  auto d = run_cli("desclinks --type a2t --radius 4 --vertex 0");
  CHECK(d.exit_code == exit_ok);
  CHECK(d.output.find("\"name\": \"desclinks\"") != std::string::npos);

  auto sph = run_cli("spherical --type a2 --q 2");
  CHECK(sph.exit_code == exit_ok);
  CHECK(sph.output.find("\"chambers\": 21") != std::string::npos);
  CHECK(sph.output.find("(0,8)") != std::string::npos);

  auto hom = run_cli("homology --type c2 --q 2");
  CHECK(hom.exit_code == exit_ok);
  CHECK(hom.output.find("\"16\"") != std::string::npos);

  // thick links surface the transport assumption in the report body
  auto th = run_cli("run --suites thick-links --format csv");
  CHECK(th.exit_code == exit_ok);
  CHECK(th.output.find("assumption") != std::string::npos);
  CHECK(th.output.find("retraction") != std::string::npos);
}
