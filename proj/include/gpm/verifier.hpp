#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpm/multipliers.hpp"
#include "gpm/wordcraft.hpp"

namespace gpm {

struct HaagerupParams {
  int K = 4;
  double epsilon = 0.0625;
  int L = 6;
  /// Per-vertex finite sets; default {s : ‖h_{v,s}‖ ≥ ε} ∪ {e}.
  std::optional<std::vector<std::vector<int>>> F;
};

struct VerifyParams {
  int lemma_radius = 3;
  int main_radius = 4;
  int max_set_size = 60;
  int max_flat_dim = 1500;
  int complete_sets = 4;
  double psd_tol = 1e-8;
  double identity_tol = 1e-10;
  int tuples = 60;
  int tuple_attempts = 5000;
  int nd_trials = 500;
  std::vector<double> t_grid = {10.0, 1.0, 0.1};
  HaagerupParams haagerup;
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 42;
  int threads = 1;
  bool timing = false;
};

struct Scenario {
  std::string name;
  GPMultiplierCtx ctx;
  /// Seeds for the first complete set of the main-theorem check.
  std::vector<GPElement> seeds;
  VerifyParams params;
};

enum class Status { Pass, Fail, Skipped };
std::string_view to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Skipped;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();
  double seconds = 0.0;
};

struct VerdictReport {
  std::vector<CheckResult> checks;

  bool pass() const;
  const CheckResult* find(std::string_view name) const;
  nlohmann::json to_json(bool timing = false) const;
};

enum class Suite { Main, Lemmas, Haagerup, Cocycles, All };
/// Throws ConfigSchema for an unknown name.
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite s);

// Individual checks. Each returns a finished result; hypotheses that do not
// hold make the check "skipped" rather than failed. BudgetExceeded escapes.
CheckResult check_setup_actions(const Scenario& sc);
CheckResult check_multipliers_commute(const Scenario& sc);
CheckResult check_well_defined(const Scenario& sc);
CheckResult check_vertex_pd(const Scenario& sc);
CheckResult check_star_symmetry(const Scenario& sc);
CheckResult check_factorization_peel(const Scenario& sc);
CheckResult check_factorization_kernel(const Scenario& sc);
CheckResult verify_cross_terms(const Scenario& sc, std::optional<int> v0 = std::nullopt);
CheckResult verify_schwarz(const Scenario& sc);
CheckResult verify_y1_square(const Scenario& sc, std::optional<int> v0 = std::nullopt);
CheckResult verify_main_theorem(const Scenario& sc);
CheckResult check_stinespring(const Scenario& sc);
CheckResult check_haagerup(const Scenario& sc);
CheckResult check_cocycles(const Scenario& sc);

/// Complete sets used by the main-theorem and Stinespring checks, in a
/// deterministic order.
std::vector<ElementSet> main_complete_sets(const Scenario& sc);

/// Setup checks always run; the rest depend on the suite.
VerdictReport run_all(const Scenario& sc, Suite suite = Suite::All);

}  // namespace gpm
