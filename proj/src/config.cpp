#include "gpm/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <string_view>

#include "gpm/error.hpp"

namespace gpm {

using nlohmann::json;

namespace {

std::string child(const std::string& path, std::string_view key) {
  std::string out = path + "/";
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigSchema, msg, path.empty() ? "/" : path);
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (auto allowed : keys) known = known || k == allowed;
    if (!known) schema(child(path, k), "unknown key '" + k + "'");
  }
}

const json& required(const json& j, std::string_view key, const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end()) schema(child(path, key), "missing key '" + std::string(key) + "'");
  return *it;
}

const json& array_of(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  schema(path, "expected a number or [re, im]");
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array_of(j, path).size(); ++i) out.push_back(as_int(j[i], child(path, i)));
  return out;
}

/// Runs f, attaching `path` to any library error that lacks one.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw e.with_path(path);
  }
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix parse_matrix(const json& j, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) schema(path, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const std::string rp = child(path, static_cast<std::size_t>(r));
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d) schema(rp, "row of length " + std::to_string(d) + " expected");
    for (int c = 0; c < d; ++c) m(r, c) = as_complex(j[r][c], child(rp, static_cast<std::size_t>(c)));
  }
  return m;
}

FiniteGroup parse_group(const json& j, const std::string& path) {
  if (j.contains("preset")) {
    allow_keys(j, path, {"preset", "n"});
    const std::string kind = as_string(j["preset"], child(path, "preset"));
    const int n = as_int(required(j, "n", path), child(path, "n"));
    GroupPreset p;
    if (kind == "cyclic") p = GroupPreset::Cyclic;
    else if (kind == "symmetric") p = GroupPreset::Symmetric;
    else if (kind == "dihedral") p = GroupPreset::Dihedral;
    else schema(child(path, "preset"), "unknown group preset '" + kind + "'");
    return at_path(path, [&] { return preset_group(p, n); });
  }
  allow_keys(j, path, {"table", "name"});
  const std::string tp = child(path, "table");
  const json& t = array_of(required(j, "table", path), tp);
  std::vector<std::vector<int>> mult;
  for (std::size_t i = 0; i < t.size(); ++i) mult.push_back(int_list(t[i], child(tp, i)));
  if (mult.size() > static_cast<std::size_t>(FiniteGroup::kMaxOrder)) {
    throw Error(ErrorCode::TooLarge, "group order exceeds " + std::to_string(FiniteGroup::kMaxOrder), tp);
  }
  const std::string name = j.contains("name") ? as_string(j["name"], child(path, "name")) : std::string();
  return at_path(tp, [&] { return FiniteGroup(derive_structure(std::move(mult)), name); });
}

json group_json(const FiniteGroup& g) {
  json j{{"table", g.table()}};
  if (!g.name().empty()) j["name"] = g.name();
  return j;
}

ActionTable parse_action(const json& j, const FiniteGroup& g, const BlockStructure& s, const std::string& path) {
  const int n = g.order();
  auto per_element = [&](const json& arr, const std::string& p) -> const json& {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
      schema(p, "expected one entry per group element (" + std::to_string(n) + ")");
    }
    return arr;
  };
  if (j.contains("preset")) {
    const std::string kind = as_string(j["preset"], child(path, "preset"));
    if (kind == "trivial") {
      allow_keys(j, path, {"preset"});
      return trivial_action(g, s);
    }
    if (kind == "diagonal-phases") {
      allow_keys(j, path, {"preset", "phases", "turns"});
      const bool turns = j.contains("turns");
      if (turns == j.contains("phases")) schema(path, "give exactly one of 'phases' (radians) or 'turns'");
      const std::string key = turns ? "turns" : "phases";
      const std::string pp = child(path, key);
      const json& arr = per_element(j[key], pp);
      const double unit = turns ? 2.0 * std::numbers::pi : 1.0;
      std::vector<std::vector<std::vector<double>>> phases(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) {
        const std::string xp = child(pp, static_cast<std::size_t>(x));
        const json& blocks = array_of(arr[x], xp);
        if (static_cast<int>(blocks.size()) != s.block_count()) schema(xp, "expected one phase list per block");
        for (int k = 0; k < s.block_count(); ++k) {
          const std::string kp = child(xp, static_cast<std::size_t>(k));
          const json& ph = array_of(blocks[k], kp);
          if (static_cast<int>(ph.size()) != s.dim(k)) schema(kp, "expected " + std::to_string(s.dim(k)) + " phases");
          std::vector<double> row;
          for (int i = 0; i < s.dim(k); ++i) row.push_back(unit * as_double(ph[i], child(kp, static_cast<std::size_t>(i))));
          phases[static_cast<std::size_t>(x)].push_back(std::move(row));
        }
      }
      return at_path(pp, [&] { return diagonal_phase_action(g, s, phases); });
    }
    if (kind == "permutation-of-points") {
      allow_keys(j, path, {"preset", "points"});
      const std::string pp = child(path, "points");
      const json& arr = per_element(required(j, "points", path), pp);
      for (int k = 0; k < s.block_count(); ++k)
        if (s.dim(k) != 1) schema(path, "permutation-of-points needs a commutative algebra (all blocks 1)");
      std::vector<std::vector<int>> points;
      for (int x = 0; x < n; ++x) points.push_back(int_list(arr[x], child(pp, static_cast<std::size_t>(x))));
      return at_path(pp, [&] { return point_permutation_action(g, s.block_count(), points); });
    }
    schema(child(path, "preset"), "unknown action preset '" + kind + "'");
  }
  allow_keys(j, path, {"perm", "unitaries"});
  const std::string pp = child(path, "perm");
  const json& perms = per_element(required(j, "perm", path), pp);
  const json* us = nullptr;
  const std::string up = child(path, "unitaries");
  if (j.contains("unitaries")) us = &per_element(j["unitaries"], up);
  ActionTable t{g, s, {}};
  for (int x = 0; x < n; ++x) {
    std::vector<int> perm = int_list(perms[x], child(pp, static_cast<std::size_t>(x)));
    if (static_cast<int>(perm.size()) != s.block_count()) schema(child(pp, static_cast<std::size_t>(x)), "expected one target per block");
    std::vector<CMatrix> u;
    for (int k = 0; k < s.block_count(); ++k) {
      if (us) {
        const std::string xp = child(up, static_cast<std::size_t>(x));
        if (!(*us)[x].is_array() || static_cast<int>((*us)[x].size()) != s.block_count()) schema(xp, "expected one unitary per block");
        u.push_back(parse_matrix((*us)[x][k], s.dim(k), child(xp, static_cast<std::size_t>(k))));
      } else {
        u.push_back(CMatrix::Identity(s.dim(k), s.dim(k)));
      }
    }
    Automorphism a(std::move(perm), std::move(u));
    at_path(child(path, x), [&] { a.validate(s); });
    t.autos.push_back(std::move(a));
  }
  return t;
}

json action_json(const ActionTable& t) {
  json perms = json::array(), us = json::array();
  for (const auto& a : t.autos) {
    perms.push_back(a.perm());
    json row = json::array();
    for (const auto& u : a.unitaries()) row.push_back(matrix_json(u));
    us.push_back(std::move(row));
  }
  return json{{"perm", perms}, {"unitaries", us}};
}

Multiplier parse_multiplier(const json& j, const FiniteGroup& g, int blocks, const std::string& path) {
  if (j.contains("preset")) {
    const std::string kind = as_string(j["preset"], child(path, "preset"));
    if (kind == "delta") {
      allow_keys(j, path, {"preset"});
      return delta_multiplier(g, blocks);
    }
    if (kind == "geometric") {
      allow_keys(j, path, {"preset", "c"});
      return geometric_multiplier(g, blocks, as_complex(required(j, "c", path), child(path, "c")));
    }
    schema(child(path, "preset"), "unknown multiplier preset '" + kind + "'");
  }
  allow_keys(j, path, {"values"});
  const std::string vp = child(path, "values");
  const json& vals = array_of(required(j, "values", path), vp);
  if (static_cast<int>(vals.size()) != g.order()) schema(vp, "expected one value per group element");
  Multiplier h{g, {}};
  for (int x = 0; x < g.order(); ++x) {
    const std::string xp = child(vp, static_cast<std::size_t>(x));
    const json& v = vals[x];
    // A bare number is the same scalar in every block.
    if (v.is_number()) {
      h.values.push_back(CentralElement::constant(blocks, as_complex(v, xp)));
      continue;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != blocks) schema(xp, "expected one scalar per block");
    std::vector<Complex> c;
    for (int k = 0; k < blocks; ++k) c.push_back(as_complex(v[k], child(xp, static_cast<std::size_t>(k))));
    h.values.emplace_back(std::move(c));
  }
  return h;
}

json multiplier_json(const Multiplier& h) {
  json vals = json::array();
  for (const auto& v : h.values) {
    json row = json::array();
    for (Complex z : v.scalars()) row.push_back(complex_json(z));
    vals.push_back(std::move(row));
  }
  return json{{"values", vals}};
}

VerifyParams parse_verify(const json& j, const std::string& path) {
  VerifyParams p;
  allow_keys(j, path, {"lemma_radius", "main_radius", "max_set_size", "max_flat_dim", "complete_sets", "psd_tol",
                       "identity_tol", "tuples", "tuple_attempts", "nd_trials", "t_grid", "haagerup", "budget", "seed",
                       "threads"});
  auto get_int = [&](const char* key, int& out, int lo) {
    if (!j.contains(key)) return;
    out = as_int(j[key], child(path, key));
    if (out < lo) schema(child(path, key), std::string(key) + " must be at least " + std::to_string(lo));
  };
  auto get_pos = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    out = as_double(j[key], child(path, key));
    if (!(out > 0.0)) schema(child(path, key), std::string(key) + " must be positive");
  };
  get_int("lemma_radius", p.lemma_radius, 0);
  get_int("main_radius", p.main_radius, 0);
  get_int("max_set_size", p.max_set_size, 1);
  get_int("max_flat_dim", p.max_flat_dim, 1);
  get_int("complete_sets", p.complete_sets, 0);
  get_pos("psd_tol", p.psd_tol);
  get_pos("identity_tol", p.identity_tol);
  get_int("tuples", p.tuples, 0);
  get_int("tuple_attempts", p.tuple_attempts, 0);
  get_int("nd_trials", p.nd_trials, 0);
  get_int("threads", p.threads, 1);
  if (j.contains("t_grid")) {
    const std::string tp = child(path, "t_grid");
    p.t_grid.clear();
    for (std::size_t i = 0; i < array_of(j["t_grid"], tp).size(); ++i) {
      const double t = as_double(j["t_grid"][i], child(tp, i));
      if (!(t > 0.0)) schema(child(tp, i), "t must be positive");
      p.t_grid.push_back(t);
    }
  }
  if (j.contains("budget")) {
    const std::string bp = child(path, "budget");
    if (!j["budget"].is_number_unsigned() || j["budget"].get<std::size_t>() == 0) schema(bp, "expected a positive integer");
    p.budget = j["budget"].get<std::size_t>();
  }
  if (j.contains("seed")) {
    const std::string sp = child(path, "seed");
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      schema(sp, "expected a nonnegative integer");
    }
    p.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("haagerup")) {
    const std::string hp = child(path, "haagerup");
    const json& h = j["haagerup"];
    allow_keys(h, hp, {"K", "epsilon", "L", "F"});
    if (h.contains("K")) p.haagerup.K = as_int(h["K"], child(hp, "K"));
    if (h.contains("L")) p.haagerup.L = as_int(h["L"], child(hp, "L"));
    if (h.contains("epsilon")) p.haagerup.epsilon = as_double(h["epsilon"], child(hp, "epsilon"));
    if (h.contains("F")) {
      const std::string fp = child(hp, "F");
      std::vector<std::vector<int>> F;
      for (std::size_t v = 0; v < array_of(h["F"], fp).size(); ++v) F.push_back(int_list(h["F"][v], child(fp, v)));
      p.haagerup.F = std::move(F);
    }
  }
  return p;
}

json verify_json(const VerifyParams& p) {
  json h{{"K", p.haagerup.K}, {"epsilon", p.haagerup.epsilon}, {"L", p.haagerup.L}};
  if (p.haagerup.F) h["F"] = *p.haagerup.F;
  return json{{"lemma_radius", p.lemma_radius}, {"main_radius", p.main_radius}, {"max_set_size", p.max_set_size},
              {"max_flat_dim", p.max_flat_dim}, {"complete_sets", p.complete_sets}, {"psd_tol", p.psd_tol},
              {"identity_tol", p.identity_tol}, {"tuples", p.tuples}, {"tuple_attempts", p.tuple_attempts},
              {"nd_trials", p.nd_trials}, {"t_grid", p.t_grid}, {"haagerup", h}, {"budget", p.budget},
              {"seed", p.seed}, {"threads", p.threads}};
}

}  // namespace

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

LetterSeq parse_word(const json& j, const GraphProduct& gp, const std::string& path) {
  LetterSeq w;
  for (std::size_t i = 0; i < array_of(j, path).size(); ++i) {
    const std::string lp = child(path, i);
    if (!j[i].is_array() || j[i].size() != 2) schema(lp, "letter must be [vertex label, group element]");
    const int label = as_int(j[i][0], child(lp, 0));
    const int v = at_path(child(lp, 0), [&] { return gp.graph().index_of(label); });
    const int g = as_int(j[i][1], child(lp, 1));
    if (!gp.group(v).contains(g)) throw Error(ErrorCode::ElementOutOfRange, "group element out of range", child(lp, 1));
    if (g != gp.group(v).identity()) w.push_back({v, g});
  }
  return w;
}

json word_json(std::span<const Letter> w, const GraphProduct& gp) {
  json out = json::array();
  for (const Letter& l : w) out.push_back(json::array({gp.graph().label(l.vertex), l.elem}));
  return out;
}

ScenarioConfig parse_scenario(const json& j) {
  allow_keys(j, "", {"name", "graph", "groups", "algebra", "actions", "multipliers", "seeds", "verify"});
  const std::string name = j.contains("name") ? as_string(j["name"], "/name") : std::string("scenario");

  const json& gj = required(j, "graph", "");
  allow_keys(gj, "/graph", {"vertices", "edges"});
  GraphData gd;
  gd.vertices = int_list(required(gj, "vertices", "/graph"), "/graph/vertices");
  if (gd.vertices.empty()) schema("/graph/vertices", "at least one vertex is needed");
  if (gj.contains("edges")) {
    const json& ej = array_of(gj["edges"], "/graph/edges");
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const auto e = int_list(ej[i], child("/graph/edges", i));
      if (e.size() != 2) schema(child("/graph/edges", i), "edge must be [u, v]");
      gd.edges.emplace_back(e[0], e[1]);
    }
  }
  SimplicialGraph graph = at_path("/graph", [&] { return SimplicialGraph(gd); });
  const auto n = static_cast<std::size_t>(graph.size());

  auto per_vertex = [&](const char* key) -> const json& {
    const json& arr = array_of(required(j, key, ""), std::string("/") + key);
    if (arr.size() != n) schema(std::string("/") + key, "expected one entry per vertex");
    return arr;
  };

  std::vector<FiniteGroup> groups;
  const json& grj = per_vertex("groups");
  for (std::size_t v = 0; v < n; ++v) groups.push_back(parse_group(grj[v], child("/groups", v)));

  const json& aj = required(j, "algebra", "");
  allow_keys(aj, "/algebra", {"blocks"});
  const auto dims = int_list(required(aj, "blocks", "/algebra"), "/algebra/blocks");
  BlockStructure s = at_path("/algebra/blocks", [&] { return BlockStructure(dims); });

  std::vector<ActionTable> actions;
  const json& acj = per_vertex("actions");
  for (std::size_t v = 0; v < n; ++v) actions.push_back(parse_action(acj[v], groups[v], s, child("/actions", v)));

  std::vector<Multiplier> mults;
  const json& mj = per_vertex("multipliers");
  for (std::size_t v = 0; v < n; ++v) mults.push_back(parse_multiplier(mj[v], groups[v], s.block_count(), child("/multipliers", v)));

  GraphProduct gp = at_path("/groups", [&] { return GraphProduct(graph, groups); });
  VerifyParams params = j.contains("verify") ? parse_verify(j["verify"], "/verify") : VerifyParams{};
  if (params.haagerup.F && params.haagerup.F->size() != n) schema("/verify/haagerup/F", "expected one set per vertex");

  std::vector<GPElement> seeds;
  json seeds_json = json::array();
  if (j.contains("seeds")) {
    const json& sj = array_of(j["seeds"], "/seeds");
    for (std::size_t i = 0; i < sj.size(); ++i) {
      const LetterSeq w = parse_word(sj[i], gp, child("/seeds", i));
      seeds.push_back(normalize(w, gp));
      seeds_json.push_back(word_json(seeds.back().letters(), gp));
    }
  }

  GPMultiplierCtx ctx = at_path("", [&] { return GPMultiplierCtx(gp, s, actions, mults, params.identity_tol); });

  json edges = json::array();
  for (const auto& [u, v] : graph.edges()) edges.push_back(json::array({graph.label(u), graph.label(v)}));
  json expanded{{"name", name},
                {"graph", {{"vertices", graph.labels()}, {"edges", edges}}},
                {"groups", json::array()},
                {"algebra", {{"blocks", dims}}},
                {"actions", json::array()},
                {"multipliers", json::array()},
                {"seeds", seeds_json},
                {"verify", verify_json(params)}};
  for (std::size_t v = 0; v < n; ++v) {
    expanded["groups"].push_back(group_json(groups[v]));
    expanded["actions"].push_back(action_json(actions[v]));
    expanded["multipliers"].push_back(multiplier_json(mults[v]));
  }
  return ScenarioConfig{Scenario{name, std::move(ctx), std::move(seeds), params}, std::move(expanded)};
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigParse, file.string() + ": " + e.what());
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& file) { return parse_scenario(read_json_file(file)); }

}  // namespace gpm
