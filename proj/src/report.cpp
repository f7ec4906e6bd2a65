#include "zonomorse/report.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace zm {

using ordered_json = nlohmann::ordered_json;

ScenarioConfig default_config() { return ScenarioConfig{}; }

namespace {

Q parse_q_field(const ordered_json& j, const std::string& key) {
  if (j.is_number_integer()) return Q((long)j.get<long long>());
  require(j.is_string(), ErrorKind::Config, key + " must be an integer or a rational string");
  return Q(j.get<std::string>());
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), ErrorKind::Config, "config must be a JSON object");

  ScenarioConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const ordered_json& v = it.value();
    if (key == "type") {
      require(v.is_string(), ErrorKind::Config, "type must be a string");
      c.type = v.get<std::string>();
    } else if (key == "radius") {
      require(v.is_number_integer(), ErrorKind::Config, "radius must be an integer");
      c.radius = v.get<int>();
      require(c.radius >= 0, ErrorKind::Config, "radius must be nonnegative");
    } else if (key == "richness") {
      require(v.is_string(), ErrorKind::Config, "richness must be a string");
      auto r = richness_from_name(v.get<std::string>());
      require(r.has_value(), ErrorKind::Config,
              "unknown richness '" + v.get<std::string>() + "'");
      c.richness = *r;
    } else if (key == "q") {
      require(v.is_number_integer(), ErrorKind::Config, "q must be an integer");
      c.q = v.get<int>();
      require(*c.q >= 2, ErrorKind::Config, "q must be at least 2");
    } else if (key == "pole_vertex") {
      require(v.is_number_integer(), ErrorKind::Config, "pole_vertex must be an integer");
      c.pole_vertex = v.get<int>();
    } else if (key == "base") {
      require(v.is_array(), ErrorKind::Config, "base must be an array");
      for (const auto& x : v) c.base.push_back(parse_q_field(x, "base entry"));
    } else if (key == "seed_radius") {
      require(v.is_number_integer(), ErrorKind::Config, "seed_radius must be an integer");
      c.seed_radius = v.get<int>();
      require(*c.seed_radius >= 1, ErrorKind::Config, "seed_radius must be positive");
    } else if (key == "suites") {
      require(v.is_array(), ErrorKind::Config, "suites must be an array of names");
      for (const auto& s : v) {
        require(s.is_string(), ErrorKind::Config, "suite names must be strings");
        c.suites.push_back(s.get<std::string>());
      }
    } else if (key == "out") {
      require(v.is_string(), ErrorKind::Config, "out must be a string");
      c.out = v.get<std::string>();
    } else if (key == "csv_out") {
      require(v.is_string(), ErrorKind::Config, "csv_out must be a string");
      c.csv_out = v.get<std::string>();
    } else if (key == "seed") {
      require(v.is_number_unsigned() || v.is_number_integer(), ErrorKind::Config,
              "seed must be an integer");
      c.seed = v.get<uint64_t>();
    } else {
      fail(ErrorKind::Config, "unknown config field '" + key + "'");
    }
  }
  for (const auto& name : c.suites)
    require(find_suite(name) != nullptr, ErrorKind::Config, "unknown suite '" + name + "'");
  return c;
}

bool VerificationReport::all_passed() const {
  for (const auto& s : suites)
    if (!s.passed) return false;
  return true;
}

bool VerificationReport::any_contradiction() const {
  for (const auto& s : suites)
    if (s.contradiction) return true;
  return false;
}

int exit_code_for(const VerificationReport& rep) {
  if (rep.any_contradiction()) return exit_contradiction;
  if (!rep.all_passed()) return exit_verification;
  return exit_ok;
}

namespace {

ordered_json config_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["type"] = c.type;
  j["radius"] = c.radius;
  j["richness"] = richness_name(c.richness);
  if (c.q) j["q"] = *c.q;
  if (c.pole_vertex) j["pole_vertex"] = *c.pole_vertex;
  if (!c.base.empty()) {
    ordered_json b = ordered_json::array();
    for (const auto& x : c.base) b.push_back(x.get_str());
    j["base"] = b;
  }
  if (c.seed_radius) j["seed_radius"] = *c.seed_radius;
  if (!c.suites.empty()) j["suites"] = c.suites;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.csv_out.empty()) j["csv_out"] = c.csv_out;
  j["seed"] = c.seed;
  return j;
}

}  // namespace

std::string report_json(const VerificationReport& rep, bool with_timing) {
  ordered_json j;
  j["schema_version"] = rep.schema_version;
  j["config"] = config_to_json(rep.config);
  ordered_json suites = ordered_json::array();
  for (const auto& s : rep.suites) {
    ordered_json js;
    js["name"] = s.name;
    js["status"] = s.contradiction ? "contradiction" : s.passed ? "pass" : "fail";
    ordered_json counters;
    for (const auto& [k, v] : s.counters) counters[k] = v;
    js["counters"] = counters;
    js["witnesses"] = s.witnesses;
    if (s.seed) js["seed"] = *s.seed;
    if (s.samples) js["samples"] = *s.samples;
    if (!s.tables.empty()) {
      ordered_json tables = ordered_json::array();
      for (const auto& t : s.tables) {
        ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = t.rows;
        tables.push_back(jt);
      }
      js["tables"] = tables;
    }
    if (with_timing) js["seconds"] = s.seconds;
    suites.push_back(js);
  }
  j["suites"] = suites;
  j["assumptions"] = rep.assumptions;
  if (with_timing) j["seconds"] = rep.seconds;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream out;
  out << "section,suite,key,value\n";
  out << "meta,,schema_version," << rep.schema_version << "\n";
  for (const auto& s : rep.suites) {
    out << "status," << s.name << ",status,"
        << (s.contradiction ? "contradiction" : s.passed ? "pass" : "fail") << "\n";
    for (const auto& [k, v] : s.counters)
      out << "counter," << s.name << "," << k << "," << v << "\n";
    if (s.seed) out << "counter," << s.name << ",seed," << *s.seed << "\n";
    if (s.samples) out << "counter," << s.name << ",samples," << *s.samples << "\n";
    for (const auto& w : s.witnesses)
      out << "witness," << s.name << ",," << csv_escape(w) << "\n";
  }
  for (const auto& s : rep.suites) {
    for (const auto& t : s.tables) {
      out << "\ntable," << s.name << "," << t.name << "\n";
      for (size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(t.columns[i]);
      out << "\n";
      for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
      }
    }
  }
  for (const auto& a : rep.assumptions) out << "assumption,,," << csv_escape(a) << "\n";
  return out.str();
}

PatchSetup setup_patch(const ScenarioConfig& config, int radius_override) {
  int radius = radius_override >= 0 ? radius_override : config.radius;
  PatchSetup s;
  if (config.base.empty()) {
    s.patch = generate_patch(config.type, radius);
    s.zono = zonotope_of(build_generators(s.patch, config.richness));
  } else {
    Patch seed = generate_patch(config.type, config.seed_radius.value_or(4));
    s.zono = zonotope_of(build_generators(seed, config.richness));
    Vec base((int)config.base.size());
    for (size_t i = 0; i < config.base.size(); ++i) base[(int)i] = config.base[i];
    s.patch = generate_patch(config.type, radius, base);
  }
  return s;
}

VerificationReport run_scenario(const ScenarioConfig& config) {
  VerificationReport rep;
  rep.config = config;
  std::vector<const SuiteInfo*> todo;
  if (config.suites.empty()) {
    for (const auto& s : registered_suites()) todo.push_back(&s);
  } else {
    for (const auto& name : config.suites) {
      const SuiteInfo* s = find_suite(name);
      require(s != nullptr, ErrorKind::Config, "unknown suite '" + name + "'");
      todo.push_back(s);
    }
  }

  auto wall0 = std::chrono::steady_clock::now();
  for (const SuiteInfo* info : todo) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = info->run(config);
    } catch (const Error& e) {
      r.name = info->name;
      r.passed = false;
      r.contradiction = e.kind == ErrorKind::PaperContradiction;
      r.witnesses.push_back(std::string(r.contradiction ? "contradiction: " : "error: ") +
                            e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.suites.push_back(std::move(r));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

  // modeling assumptions surfaced by the suites, deduplicated, stable order
  for (const auto& s : rep.suites) {
    if (s.name == "thick-links") {
      std::string a =
          "thick-links: heights on thick links are transported along the retraction "
          "onto the base apartment (modeling assumption, flagged per run)";
      bool dup = false;
      for (const auto& x : rep.assumptions) dup |= x == a;
      if (!dup) rep.assumptions.push_back(a);
    }
  }

  if (!config.out.empty()) {
    std::ofstream f(config.out);
    require(f.good(), ErrorKind::Config, "cannot open report path '" + config.out + "'");
    f << report_json(rep);
  }
  if (!config.csv_out.empty()) {
    std::ofstream f(config.csv_out);
    require(f.good(), ErrorKind::Config, "cannot open csv path '" + config.csv_out + "'");
    f << report_csv(rep);
  }
  return rep;
}

}  // namespace zm
