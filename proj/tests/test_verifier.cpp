#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "gpm/verifier.hpp"
#include "support.hpp"

using namespace gpm;
using gpm::testing::code_of;
using gpm::testing::load;
using gpm::testing::scenario_path;
using nlohmann::json;

namespace {

const std::vector<std::string> kScenarios{"a_edgeless_z2_z2",     "b_tensor_z2_z3",     "c_triangle_z2_space",
                                          "d_path_mixed",         "e_star_k12",         "f_block_permutations",
                                          "g_edgeless_three",     "sabotage_i_noninvariant", "sabotage_ii_not_pd"};

void close_json(const json& a, const json& b, const std::string& where) {
  INFO(where);
  REQUIRE(a.type() == b.type());
  if (a.is_number_float() || b.is_number_float()) {
    CHECK(std::abs(a.get<double>() - b.get<double>()) <= 1e-10);
  } else if (a.is_object()) {
    REQUIRE(a.size() == b.size());
    for (auto it = a.begin(); it != a.end(); ++it) close_json(it.value(), b.at(it.key()), where + "/" + it.key());
  } else if (a.is_array()) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) close_json(a[i], b[i], where + "/" + std::to_string(i));
  } else {
    CHECK(a == b);
  }
}

json minimal_config() {
  return json::parse(R"({
    "name": "tiny",
    "graph": {"vertices": [0], "edges": []},
    "groups": [{"preset": "cyclic", "n": 3}],
    "algebra": {"blocks": [1]},
    "actions": [{"preset": "trivial"}],
    "multipliers": [{"values": [1, 0.3, 0.3]}]
  })");
}

}  // namespace

TEST_CASE("check statuses match the committed snapshots") {
  for (const auto& name : kScenarios) {
    INFO(name);
    const Scenario sc = load(name);
    const json snap = gpm::read_json_file(scenario_path("snapshots/" + name + ".json"));
    const VerdictReport r = run_all(sc);
    REQUIRE(r.checks.size() == snap.at("statuses").size());
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(std::string(to_string(c.status)) == snap.at("statuses").at(c.name).get<std::string>());
    }
  }
}

TEST_CASE("sabotaged scenarios fail the intended checks and nothing else") {
  const auto i = run_all(load("sabotage_i_noninvariant"));
  CHECK_FALSE(i.pass());
  for (const auto& c : i.checks) {
    INFO(c.name);
    if (c.name == "multipliers_commute" || c.name == "well_defined") CHECK(c.status == Status::Fail);
    else CHECK(c.status != Status::Fail);
  }
  CHECK(i.find("well_defined")->metrics.at("max_deviation").get<double>() == doctest::Approx(0.2));

  const auto ii = run_all(load("sabotage_ii_not_pd"));
  CHECK_FALSE(ii.pass());
  for (const auto& c : ii.checks) {
    INFO(c.name);
    if (c.name == "vertex_pd" || c.name == "main_theorem") CHECK(c.status == Status::Fail);
    else CHECK(c.status != Status::Fail);
  }
  // Identities that do not depend on positivity still hold.
  CHECK(ii.find("factorization_kernel")->status == Status::Pass);
  CHECK(ii.find("cross_terms")->status == Status::Pass);
  CHECK(ii.find("main_theorem")->metrics.at("min_eigenvalue").get<double>() < -1.0);
}

TEST_CASE("Schwarz matrix for the smallest tuple") {
  // c = (e, e), cb = (e, s): the matrix is diag(0, 1 − h_s²).
  const Scenario sc = load("a_edgeless_z2_z2");
  const auto& gp = sc.ctx.product();
  const GPElement e, s = gp.letter(0, 1);
  const std::vector<GPElement> c{e, e}, cb{e, s};
  CMatrix m(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m(i, j) = (kernel(cb[i], cb[j], sc.ctx) -
                 kernel(cb[i], c[i], sc.ctx) * kernel(c[i], c[j], sc.ctx) * kernel(c[j], cb[j], sc.ctx))[0];
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(1, 1) = 0.75;
  CHECK((m - expect).norm() < 1e-15);
  const auto r = verify_schwarz(sc);
  CHECK(r.status == Status::Pass);
  CHECK(r.metrics.at("tuples").get<int>() == sc.params.tuples);
}

TEST_CASE("cross-term identity holds under its hypotheses but not in general") {
  const Scenario sc = load("a_edgeless_z2_z2");
  const auto& gp = sc.ctx.product();
  // x = z = s ∈ G_0: y = c = e, equal non-commutative lengths and equal y.
  // K(x, x) = 1 but K(x, e)K(e, x) = h_s² = 1/4.
  const GPElement x = gp.letter(0, 1);
  CHECK(kernel(x, x, sc.ctx)[0] == Complex(1.0));
  CHECK((kernel(x, GPElement{}, sc.ctx) * kernel(GPElement{}, x, sc.ctx))[0] == Complex(0.25));
  CHECK(verify_cross_terms(sc).status == Status::Pass);

  // Condition (2) is only exercised once two elements share a length but
  // differ in y; the three-vertex edgeless scenario has such pairs.
  const auto g = verify_cross_terms(load("g_edgeless_three"));
  CHECK(g.status == Status::Pass);
  for (const auto& pv : g.metrics.at("per_vertex")) CHECK(pv.at("condition2_pairs").get<int>() > 0);
  const auto one = verify_cross_terms(load("g_edgeless_three"), 1);
  CHECK(one.metrics.at("per_vertex").size() == 1);
}

TEST_CASE("y1 square is skipped for non-positive values") {
  json j = minimal_config();
  j["multipliers"][0]["values"] = json::parse("[1, [[0.2, 0.1]], [[0.2, -0.1]]]");
  const Scenario sc = parse_scenario(j).scenario;
  REQUIRE(sc.ctx.valid());
  CHECK(verify_y1_square(sc).status == Status::Skipped);
  CHECK(verify_main_theorem(sc).status == Status::Pass);
  j["multipliers"][0]["values"] = json::parse("[1, 0.2, 0.2]");
  CHECK(verify_y1_square(parse_scenario(j).scenario).status == Status::Pass);
}

TEST_CASE("config errors carry a JSON pointer") {
  json j = minimal_config();
  j["verify"] = {{"tuplez", 3}};
  try {
    parse_scenario(j);
    FAIL("accepted an unknown key");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigSchema);
    CHECK(e.path() == "/verify/tuplez");
  }
  j = minimal_config();
  j["graph"]["edges"] = json::parse("[[0, 0]]");
  try {
    parse_scenario(j);
    FAIL("accepted a loop");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoopEdge);
    CHECK(e.path().starts_with("/graph"));
  }
  j = minimal_config();
  j["multipliers"][0]["values"] = json::parse("[1, 0.3]");
  CHECK(code_of([&] { parse_scenario(j); }) == ErrorCode::ConfigSchema);
  CHECK(code_of([] { load_scenario(scenario_path("does_not_exist.json")); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { parse_suite("everything"); }) == ErrorCode::ConfigSchema);
}

TEST_CASE("expanded config round-trips") {
  for (const auto& name : kScenarios) {
    INFO(name);
    const auto first = load_scenario(scenario_path(name + ".json"));
    const auto second = parse_scenario(first.expanded);
    CHECK(second.expanded == first.expanded);
    const auto& gp = first.scenario.ctx.product();
    for (const GPElement& x : ball(gp, 2))
      CHECK(evaluate_product_formula(x.letters(), first.scenario.ctx)
                .distance(evaluate_product_formula(x.letters(), second.scenario.ctx)) == 0.0);
  }
}

TEST_CASE("thread count does not change the report") {
  for (const auto& name : {"f_block_permutations", "g_edgeless_three"}) {
    Scenario sc = load(name);
    sc.params.threads = 1;
    const json one = run_all(sc).to_json();
    sc.params.threads = 4;
    const json four = run_all(sc).to_json();
    close_json(one, four, name);
  }
}

TEST_CASE("budget overruns propagate") {
  Scenario sc = load("g_edgeless_three");
  sc.params.budget = 50;
  CHECK(code_of([&] { run_all(sc); }) == ErrorCode::BudgetExceeded);
}
