// gpmult: scenario-driven front end for the graph-product multiplier library.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpm/config.hpp"
#include "gpm/error.hpp"
#include "gpm/verifier.hpp"

using namespace gpm;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kBudget = 3 };

struct Options {
  std::string config;
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
  bool timing = false;
  std::string words_file;
  std::vector<std::string> words;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<LetterSeq> collect_words(const Options& o, const GraphProduct& gp) {
  std::vector<LetterSeq> out;
  if (!o.words_file.empty()) {
    const json j = read_json_file(o.words_file);
    if (!j.is_array()) throw Error(ErrorCode::ConfigSchema, "words file must hold an array of words", "/");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_word(j[i], gp, "/" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < o.words.size(); ++i) {
    json j;
    try {
      j = json::parse(o.words[i]);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ConfigParse, "word argument " + std::to_string(i + 1) + ": " + e.what());
    }
    out.push_back(parse_word(j, gp, "/words/" + std::to_string(i)));
  }
  return out;
}

int cmd_normalize(const Options& o, const ScenarioConfig& cfg) {
  const auto& gp = cfg.scenario.ctx.product();
  for (const LetterSeq& w : collect_words(o, gp)) {
    const GPElement x = normalize(w, gp);
    std::cout << format_element(x, gp) << " (length " << x.length() << ")\n";
  }
  return kPass;
}

int cmd_eval(const Options& o, const ScenarioConfig& cfg) {
  const auto& ctx = cfg.scenario.ctx;
  ctx.require_valid();
  for (const LetterSeq& w : collect_words(o, ctx.product())) {
    const CentralElement h = gp_multiplier(normalize(w, ctx.product()), ctx);
    json row = json::array();
    for (Complex z : h.scalars()) row.push_back(complex_json(z));
    std::cout << row.dump() << "\n";
  }
  return kPass;
}

int cmd_check_setup(const ScenarioConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  bool ok = true;
  for (const CheckResult& r : {check_setup_actions(sc), check_multipliers_commute(sc), check_well_defined(sc),
                               check_vertex_pd(sc)}) {
    std::cout << r.name << ": " << to_string(r.status);
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    ok = ok && r.status != Status::Fail;
  }
  for (const auto& p : sc.ctx.problems()) std::cerr << p << "\n";
  return ok ? kPass : kFail;
}

int cmd_verify(const Options& o, const ScenarioConfig& cfg) {
  const Suite suite = parse_suite(o.suite);
  const VerdictReport report = run_all(cfg.scenario, suite);
  json out{{"scenario", cfg.scenario.name},
           {"suite", std::string(to_string(suite))},
           {"seed", cfg.scenario.params.seed},
           {"threads", cfg.scenario.params.threads},
           {"config", cfg.expanded}};
  json body = report.to_json(o.timing);
  out["checks"] = std::move(body["checks"]);
  out["pass"] = body["pass"];
  out["generated_at"] = utc_now();
  const std::string text = out.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigParse, "cannot write " + o.out);
    f << text;
    for (const auto& c : report.checks) std::cout << c.name << ": " << to_string(c.status) << "\n";
  }
  return report.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive definite multipliers on graph products: checks and evaluation"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "scenario JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "overrides verify.seed");
    sub->add_option("--threads", o.threads, "worker cap")->check(CLI::PositiveNumber);
  };
  auto* normalize_cmd = app.add_subcommand("normalize", "print canonical forms of words");
  auto* setup_cmd = app.add_subcommand("check-setup", "validate actions and multipliers");
  auto* eval_cmd = app.add_subcommand("eval", "evaluate the product multiplier on words");
  auto* verify_cmd = app.add_subcommand("verify", "run the check suites and emit a JSON report");
  for (auto* sub : {normalize_cmd, setup_cmd, eval_cmd, verify_cmd}) add_common(sub);
  for (auto* sub : {normalize_cmd, eval_cmd}) {
    sub->add_option("--words", o.words_file, "JSON file holding an array of words")->check(CLI::ExistingFile);
    // Words are taken from the leftovers: CLI11 would split "[[0,1],[1,2]]"
    // at its commas if it were a declared positional.
    sub->allow_extras();
    sub->footer("Words are JSON arrays of [vertex, element] pairs, e.g. '[[0,1],[1,2]]'.");
  }
  verify_cmd->add_option("--suite", o.suite, "main|lemmas|haagerup|cocycles|all");
  verify_cmd->add_option("--out", o.out, "write the report here instead of stdout");
  verify_cmd->add_flag("--timing", o.timing, "include wall time per check");

  CLI11_PARSE(app, argc, argv);
  for (auto* sub : {normalize_cmd, eval_cmd})
    if (*sub) o.words = sub->remaining();
  for (const auto& w : o.words)
    if (w.starts_with("-")) {
      std::cerr << "unknown option " << w << "\n";
      return kConfig;
    }

  try {
    ScenarioConfig cfg = load_scenario(o.config);
    if (o.seed) {
      cfg.scenario.params.seed = *o.seed;
      cfg.expanded["verify"]["seed"] = *o.seed;
    }
    if (o.threads) {
      cfg.scenario.params.threads = *o.threads;
      cfg.expanded["verify"]["threads"] = *o.threads;
    }
    if (*normalize_cmd) return cmd_normalize(o, cfg);
    if (*setup_cmd) return cmd_check_setup(cfg);
    if (*eval_cmd) return cmd_eval(o, cfg);
    return cmd_verify(o, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code());
    if (!e.path().empty()) std::cerr << " at " << e.path();
    std::cerr << ": " << e.what() << "\n";
    if (e.code() == ErrorCode::BudgetExceeded) return kBudget;
    if (e.code() == ErrorCode::SetupInvalid) return kFail;
    return kConfig;
  }
}
