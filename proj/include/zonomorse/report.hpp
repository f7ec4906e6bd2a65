#pragma once

#include "zonomorse/rational.hpp"
#include "zonomorse/zonotope.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zm {

// One run of the verification machinery: which patch to build, which
// suites to run, where the report goes. Parsed from JSON with strict keys.
struct ScenarioConfig {
  std::string type = "a2t";
  int radius = 4;
  Richness richness = Richness::AlmostRich;
  std::optional<int> q;            // residue thickness for building suites
  std::optional<int> pole_vertex;  // pole choice for hemisphere tools
  std::vector<Q> base;             // patch center; empty = origin
  std::optional<int> seed_radius;  // seed patch radius when base is offset
  std::vector<std::string> suites;  // empty = every registered suite
  std::string out;                  // report path; empty = stdout only
  std::string csv_out;              // optional tabular export path
  uint64_t seed = 1;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig default_config();

// A named column table carried by a suite result (heights, Betti numbers);
// these are the sections the CSV export flattens.
struct SuiteTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  bool contradiction = false;  // a structural identity the library enforces broke
  std::map<std::string, long> counters;
  std::vector<std::string> witnesses;  // minimal reproducible counterexamples
  std::vector<SuiteTable> tables;
  std::optional<uint64_t> seed;   // logged whenever the suite samples
  std::optional<long> samples;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string schema_version = "1";
  ScenarioConfig config;
  std::vector<SuiteResult> suites;
  std::vector<std::string> assumptions;
  double seconds = 0.0;

  bool all_passed() const;
  bool any_contradiction() const;
};

// Structured text form (JSON). with_timing=false drops the wall-clock
// fields so that equal configs produce byte-identical text.
std::string report_json(const VerificationReport& rep, bool with_timing = true);

// Flat CSV of the tabular sections plus one status row per suite.
std::string report_csv(const VerificationReport& rep);

// 0 when everything passed; see exit_* below for the failure codes.
int exit_code_for(const VerificationReport& rep);

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_contradiction = 3;

// Registered verification suites, one per acceptance property.
struct SuiteInfo {
  std::string name;
  std::string summary;
  SuiteResult (*run)(const ScenarioConfig&);
};

const std::vector<SuiteInfo>& registered_suites();
const SuiteInfo* find_suite(const std::string& name);

// Run the configured suites (all when the list is empty), collect the
// report, and write it to config.out / config.csv_out when set.
VerificationReport run_scenario(const ScenarioConfig& config);

// Patch + zonotope described by a config: generators come from the patch
// itself at the origin, or from an origin seed patch when base is offset.
struct PatchSetup {
  Patch patch;
  Zonotope zono;
};
PatchSetup setup_patch(const ScenarioConfig& config, int radius_override = -1);

}  // namespace zm
