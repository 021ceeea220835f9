#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "vwb/akfilt.hpp"
#include "vwb/errors.hpp"

namespace vwb {

using json = nlohmann::json;

struct JobSpec {
  std::string command;
  std::string type = "A1";
  int p = 3;
  std::vector<int> levi;  // 0-based
  std::vector<int> lambda, nu;
  int box = -1;  // -1: p
  unsigned seed = 1;
  bool seed_given = false;
  std::size_t dim_cap = 4096;
  bool unsafe_cap = false;
  int trunc_M = 16;
  std::string format = "json";
  std::string module = "verma";  // verma | twisted | torus | cover | head
  int trials = 32;
};

struct RunResult {
  int exit_code = 0;
  json report;
};

// Validates the job (good prime, Levi indices, caps, seed) and runs it.
// vwb::Error escapes; map it with exit_code_for / error_json.
RunResult run(const JobSpec& job);
int exit_code_for(const Error& e);
json error_json(const Error& e);
std::string render_table(const json& j);

SettingPtr make_setting(const std::string& type, int p, const std::vector<int>& levi, std::size_t dim_cap = 4096);
std::vector<Weight> weight_box(const RootSystem& R, int radius);
std::vector<std::vector<int>> all_levis(int rank);
json to_json(const Weight& w);

// one identity checked over a sweep; failures carry the offending data
struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}
  std::string name;
  int checked = 0;
  std::vector<json> failures;
  bool ok() const { return failures.empty(); }
  void fail(json j) { failures.push_back(std::move(j)); }
  json to_json(std::size_t max_failures = 20) const;
};

CheckResult composite_law(const SettingPtr& S, int box);
CheckResult chain_dichotomy(const SettingPtr& S, int box);
CheckResult jantzen_identities(const SettingPtr& S, int box);
CheckResult verma_audit(const SettingPtr& S, int box);
CheckResult hom_rank_law(const SettingPtr& S, int box);
CheckResult tau_duality(const SettingPtr& S, int box);
CheckResult sumfor1_sweep(AKCache& cache, int box);
// over torus-induced projectives and extracted covers
CheckResult sumfor2_sweep(AKCache& cache, int box);
CheckResult ak_invariants(AKCache& cache, int box);
// probe vs double extraction vs the exact test
CheckResult projectivity_zoo(const SettingPtr& S, int box, unsigned seed, int n_random);
CheckResult reciprocity(const SettingPtr& S, int box, unsigned seed);

json report_json(const AKReport& r);

}  // namespace vwb
