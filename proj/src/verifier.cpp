#include "gpm/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "gpm/cocycles.hpp"
#include "gpm/error.hpp"

namespace gpm {

using nlohmann::json;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

bool VerdictReport::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

const CheckResult* VerdictReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json VerdictReport::to_json(bool timing) const {
  json arr = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}, {"metrics", c.metrics}};
    if (timing) j["seconds"] = c.seconds;
    arr.push_back(std::move(j));
  }
  return json{{"pass", pass()}, {"checks", std::move(arr)}};
}

Suite parse_suite(std::string_view name) {
  if (name == "main") return Suite::Main;
  if (name == "lemmas") return Suite::Lemmas;
  if (name == "haagerup") return Suite::Haagerup;
  if (name == "cocycles") return Suite::Cocycles;
  if (name == "all") return Suite::All;
  throw Error(ErrorCode::ConfigSchema, "unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Main: return "main";
    case Suite::Lemmas: return "lemmas";
    case Suite::Haagerup: return "haagerup";
    case Suite::Cocycles: return "cocycles";
    case Suite::All: return "all";
  }
  return "?";
}

namespace {

template <typename F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::mt19937_64 check_rng(const Scenario& sc, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(sc.params.seed), static_cast<std::uint32_t>(sc.params.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

CheckResult skipped(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.status = Status::Skipped;
  r.detail = std::move(why);
  return r;
}

bool vertex_multipliers_pd(const GPMultiplierCtx& ctx, double tol) {
  for (int v = 0; v < ctx.product().vertex_count(); ++v) {
    if (!ctx.multiplier(v).is_unital()) return false;
    try {
      if (!is_positive_definite(ctx.multiplier(v), ctx.action(v), {}, tol).positive) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

/// Runs `body` unless the standing hypotheses fail. Hypothesis errors turn
/// into "skipped", other library errors into "fail"; BudgetExceeded escapes.
CheckResult guarded(const Scenario& sc, std::string name, bool need_pd,
                    const std::function<void(CheckResult&)>& body) {
  if (!sc.ctx.valid()) return skipped(std::move(name), "setup hypotheses not met");
  if (need_pd && !vertex_multipliers_pd(sc.ctx, sc.params.psd_tol)) {
    return skipped(std::move(name), "vertex multipliers are not unital positive definite");
  }
  CheckResult r;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BudgetExceeded) throw;
    if (e.code() == ErrorCode::HypothesisViolated || e.code() == ErrorCode::SetupInvalid) {
      r.status = Status::Skipped;
    } else {
      r.status = Status::Fail;
    }
    r.detail = std::string(to_string(e.code())) + ": " + e.what();
  }
  return r;
}

GPElement drop_position(const GPElement& x, std::size_t p, const GraphProduct& gp) {
  LetterSeq w = x.letters();
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(p));
  return normalize(w, gp);
}

bool has_vertex(const GPElement& x, int v) {
  return std::any_of(x.letters().begin(), x.letters().end(), [&](const Letter& l) { return l.vertex == v; });
}

std::vector<int> vertex_list(const Scenario& sc, std::optional<int> v0) {
  if (v0) return {*v0};
  std::vector<int> all;
  for (int v = 0; v < sc.ctx.product().vertex_count(); ++v) all.push_back(v);
  return all;
}

/// λ_min check of a central operator matrix given entry-wise.
PositivityResult central_psd(int n, const BlockStructure& s, const std::function<CentralElement(int, int)>& entry,
                             double tol) {
  OperatorMatrix m(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set_central(i, j, entry(i, j));
  return is_positive(m, tol);
}

}  // namespace

// -- setup -----------------------------------------------------------------------

CheckResult check_setup_actions(const Scenario& sc) {
  const auto& ctx = sc.ctx;
  CheckResult r;
  r.name = "setup_actions";
  double worst = 0.0;
  for (const auto& [v, w] : ctx.graph().edges())
    for (const auto& a : ctx.action(v).autos)
      for (const auto& b : ctx.action(w).autos) worst = std::max(worst, commutator_defect(a, b, ctx.structure()));
  r.metrics = {{"vertices", ctx.graph().size()},
               {"edges", ctx.graph().edge_count()},
               {"block_dims", ctx.structure().dims()},
               {"actions_are_homomorphisms", ctx.actions_are_homomorphisms()},
               {"actions_commute", ctx.actions_commute()},
               {"max_edge_commutator_defect", worst}};
  const bool ok = ctx.actions_are_homomorphisms() && ctx.actions_commute();
  r.status = ok ? Status::Pass : Status::Fail;
  if (!ok) {
    for (const auto& p : ctx.problems())
      if (p.find("multiplier at") == std::string::npos) r.detail += (r.detail.empty() ? "" : "; ") + p;
  }
  return r;
}

CheckResult check_multipliers_commute(const Scenario& sc) {
  const auto& ctx = sc.ctx;
  CheckResult r;
  r.name = "multipliers_commute";
  const double d = multiplier_commutation_defect(ctx.graph(), ctx.actions(), ctx.multipliers());
  r.metrics = {{"max_invariance_defect", d}};
  r.status = ctx.multipliers_commute() ? Status::Pass : Status::Fail;
  if (!ctx.multipliers_commute()) {
    for (const auto& p : ctx.problems())
      if (p.find("multiplier at") != std::string::npos) r.detail = p;
  }
  return r;
}

CheckResult check_well_defined(const Scenario& sc) {
  CheckResult r;
  r.name = "well_defined";
  const auto w = gp_well_defined(sc.ctx, sc.params.lemma_radius, sc.params.identity_tol, sc.params.budget);
  r.metrics = {{"radius", sc.params.lemma_radius},
               {"elements", w.elements},
               {"rearrangements", w.rearrangements},
               {"max_deviation", w.max_deviation}};
  if (w.worst) r.metrics["worst_element"] = format_element(*w.worst, sc.ctx.product());
  r.status = w.ok ? Status::Pass : Status::Fail;
  if (!w.ok) r.detail = "product formula depends on the chosen rearrangement";
  return r;
}

CheckResult check_vertex_pd(const Scenario& sc) {
  const auto& ctx = sc.ctx;
  CheckResult r;
  r.name = "vertex_pd";
  json per = json::array();
  bool ok = true;
  for (int v = 0; v < ctx.product().vertex_count(); ++v) {
    const Multiplier& h = ctx.multiplier(v);
    json j{{"vertex", ctx.graph().label(v)}, {"group_order", h.group.order()}, {"unital", h.is_unital()}};
    try {
      const auto p = is_positive_definite(h, ctx.action(v), {}, sc.params.psd_tol);
      j["min_eigenvalue"] = p.min_eigenvalue;
      j["positive"] = p.positive;
      j["hermitian_identity_defect"] = hermitian_identity_defect(h, ctx.action(v));
      ok = ok && p.positive && h.is_unital();
    } catch (const Error& e) {
      j["error"] = e.what();
      ok = false;
    }
    per.push_back(std::move(j));
  }
  r.metrics = {{"vertices", std::move(per)}};
  r.status = ok ? Status::Pass : Status::Fail;
  if (!ok) r.detail = "some vertex multiplier is not unital positive definite";
  return r;
}

// -- kernel identities ---------------------------------------------------------------

CheckResult check_star_symmetry(const Scenario& sc) {
  return guarded(sc, "kernel_star_symmetry", false, [&](CheckResult& r) {
    const auto B = ball(sc.ctx.product(), sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(sc.ctx);
    std::vector<double> row_max(B.size(), 0.0);
    parallel_for(B.size(), sc.params.threads, [&](std::size_t i) {
      for (std::size_t j = i; j < B.size(); ++j)
        row_max[i] = std::max(row_max[i], kt(B[i], B[j]).distance(kt(B[j], B[i]).adjoint()));
    });
    const double worst = *std::max_element(row_max.begin(), row_max.end());
    r.metrics = {{"radius", sc.params.lemma_radius}, {"pairs", B.size() * (B.size() + 1) / 2}, {"max_residual", worst}};
    r.status = worst <= sc.params.identity_tol ? Status::Pass : Status::Fail;
  });
}

CheckResult check_factorization_peel(const Scenario& sc) {
  return guarded(sc, "factorization_peel", false, [&](CheckResult& r) {
    const auto& gp = sc.ctx.product();
    const auto B = ball(gp, sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(sc.ctx);
    std::vector<double> worst(B.size(), 0.0);
    std::vector<std::size_t> count(B.size(), 0);
    parallel_for(B.size(), sc.params.threads, [&](std::size_t i) {
      const GPElement& x = B[i];
      if (x.is_identity()) return;
      const CentralElement hx = kt.multiplier(x);
      for (const LetterSeq& w : rearrangements(x, gp, sc.params.budget)) {
        const GPElement rest = normalize(std::span<const Letter>(w).subspan(1), gp);
        const CentralElement first = sc.ctx.multiplier(w[0].vertex).at(w[0].elem);
        const CentralElement rhs = apply_perm(kt.perm(inverse(rest, gp)), first) * kt.multiplier(rest);
        worst[i] = std::max(worst[i], hx.distance(rhs));
        ++count[i];
      }
    });
    std::size_t total = 0;
    for (auto c : count) total += c;
    const double w = *std::max_element(worst.begin(), worst.end());
    r.metrics = {{"radius", sc.params.lemma_radius}, {"expressions", total}, {"max_residual", w}};
    r.status = w <= sc.params.identity_tol ? Status::Pass : Status::Fail;
  });
}

CheckResult check_factorization_kernel(const Scenario& sc) {
  return guarded(sc, "factorization_kernel", false, [&](CheckResult& r) {
    const auto& gp = sc.ctx.product();
    const auto B = ball(gp, sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(sc.ctx);
    std::vector<double> worst(B.size(), 0.0);
    std::vector<std::size_t> count(B.size(), 0);
    parallel_for(B.size(), sc.params.threads, [&](std::size_t i) {
      const GPElement& x = B[i];
      if (x.is_identity()) return;
      LetterSeq xinv = inverse(x, gp).letters();
      std::vector<GPElement> drops;
      for (std::size_t p : trailing_positions(x.letters(), gp)) drops.push_back(drop_position(x, p, gp));
      for (const GPElement& y : B) {
        LetterSeq w = xinv;
        w.insert(w.end(), y.letters().begin(), y.letters().end());
        if (!is_reduced(w, gp)) continue;
        const CentralElement lhs = kt(x, y);
        for (const GPElement& xd : drops) {
          worst[i] = std::max(worst[i], lhs.distance(kt(x, xd) * kt(xd, y)));
          ++count[i];
        }
      }
    });
    std::size_t total = 0;
    for (auto c : count) total += c;
    const double w = *std::max_element(worst.begin(), worst.end());
    r.metrics = {{"radius", sc.params.lemma_radius}, {"instances", total}, {"max_residual", w}};
    r.status = w <= sc.params.identity_tol ? Status::Pass : Status::Fail;
  });
}

CheckResult verify_cross_terms(const Scenario& sc, std::optional<int> v0) {
  return guarded(sc, "cross_terms", false, [&](CheckResult& r) {
    const auto& gp = sc.ctx.product();
    const auto B = ball(gp, sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(sc.ctx);
    json per = json::array();
    double worst_all = 0.0;
    for (int v : vertex_list(sc, v0)) {
      std::vector<int> N(B.size());
      std::vector<std::optional<StandardForm>> sf(B.size());
      parallel_for(B.size(), sc.params.threads, [&](std::size_t i) {
        N[i] = nc_length_down(B[i], v, gp);
        if (has_vertex(B[i], v)) sf[i] = standard_form(B[i], v, gp, sc.params.budget);
      });
      std::vector<double> worst(B.size(), 0.0);
      std::vector<std::size_t> c1(B.size(), 0), c2(B.size(), 0);
      parallel_for(B.size(), sc.params.threads, [&](std::size_t i) {
        if (!sf[i]) return;
        const GPElement yc = multiply(sf[i]->y, sf[i]->c, gp);
        const CentralElement k1 = kt(B[i], yc);
        const VertexWord vy = sf[i]->y.vertices();
        for (std::size_t j = 0; j < B.size(); ++j) {
          const bool cond1 = N[j] < N[i];
          const bool cond2 = !cond1 && N[j] == N[i] && sf[j] && sf[j]->y.vertices() != vy;
          if (!cond1 && !cond2) continue;
          (cond1 ? c1 : c2)[i]++;
          worst[i] = std::max(worst[i], kt(B[i], B[j]).distance(k1 * kt(yc, B[j])));
        }
      });
      std::size_t n1 = 0, n2 = 0;
      for (std::size_t i = 0; i < B.size(); ++i) {
        n1 += c1[i];
        n2 += c2[i];
      }
      const double w = *std::max_element(worst.begin(), worst.end());
      worst_all = std::max(worst_all, w);
      per.push_back({{"v0", sc.ctx.graph().label(v)}, {"condition1_pairs", n1}, {"condition2_pairs", n2},
                     {"max_residual", w}});
    }
    r.metrics = {{"radius", sc.params.lemma_radius}, {"per_vertex", std::move(per)}, {"max_residual", worst_all}};
    r.status = worst_all <= sc.params.identity_tol ? Status::Pass : Status::Fail;
  });
}

// -- inequalities -------------------------------------------------------------------

CheckResult verify_schwarz(const Scenario& sc) {
  return guarded(sc, "schwarz", true, [&](CheckResult& r) {
    const auto& gp = sc.ctx.product();
    const auto B = ball(gp, sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(sc.ctx);
    // (c, b) with c·b reduced inside the ball, grouped by c.
    std::vector<std::pair<GPElement, GPElement>> pairs;
    std::map<GPElement, std::vector<std::size_t>> by_c;
    for (const GPElement& c : B)
      for (const GPElement& b : B) {
        if (c.length() + b.length() > static_cast<std::size_t>(sc.params.lemma_radius)) continue;
        if (multiply(c, b, gp).length() != c.length() + b.length()) continue;
        by_c[c].push_back(pairs.size());
        pairs.emplace_back(c, b);
      }
    auto rng = check_rng(sc, 1);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::uniform_int_distribution<int> size(2, 5);
    std::bernoulli_distribution shared(0.5);
    int valid = 0, attempts = 0, rejected = 0;
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
    while (valid < sc.params.tuples && attempts < sc.params.tuple_attempts) {
      ++attempts;
      const int n = size(rng);
      std::vector<std::size_t> idx{pick(rng)};
      const bool same_c = shared(rng);
      const auto& siblings = by_c[pairs[idx[0]].first];
      std::uniform_int_distribution<std::size_t> sib(0, siblings.size() - 1);
      while (static_cast<int>(idx.size()) < n) idx.push_back(same_c ? siblings[sib(rng)] : pick(rng));
      std::vector<GPElement> c, cb;
      for (auto k : idx) {
        c.push_back(pairs[k].first);
        cb.push_back(multiply(pairs[k].first, pairs[k].second, gp));
      }
      bool hyp = true;
      for (int i = 0; i < n && hyp; ++i)
        for (int j = 0; j < n && hyp; ++j)
          hyp = kt(cb[i], c[j]).distance(kt(cb[i], c[i]) * kt(c[i], c[j])) <= sc.params.identity_tol;
      if (!hyp) {
        ++rejected;
        continue;
      }
      ++valid;
      const auto p = central_psd(
          n, sc.ctx.structure(),
          [&](int i, int j) { return kt(cb[i], cb[j]) - kt(cb[i], c[i]) * kt(c[i], c[j]) * kt(c[j], cb[j]); },
          sc.params.psd_tol);
      worst = std::min(worst, p.min_eigenvalue);
      ok = ok && p.positive;
    }
    r.metrics = {{"tuples", valid}, {"attempts", attempts}, {"hypothesis_rejected", rejected},
                 {"min_eigenvalue", valid ? worst : 0.0}};
    if (valid == 0) {
      r.status = Status::Skipped;
      r.detail = "no tuple satisfied the factorization hypothesis";
    } else {
      r.status = ok ? Status::Pass : Status::Fail;
    }
  });
}

CheckResult verify_y1_square(const Scenario& sc, std::optional<int> v0) {
  return guarded(sc, "y1_square", true, [&](CheckResult& r) {
    const auto& ctx = sc.ctx;
    for (int v = 0; v < ctx.product().vertex_count(); ++v)
      for (const auto& val : ctx.multiplier(v).values)
        for (Complex z : val.scalars())
          if (std::abs(z.imag()) > 1e-12 || z.real() < -1e-12) {
            throw Error(ErrorCode::HypothesisViolated, "multiplier values must be positive central elements");
          }
    const auto& gp = ctx.product();
    const auto B = ball(gp, sc.params.lemma_radius, sc.params.budget);
    KernelTable kt(ctx);
    struct Member {
      GPElement x;
      GPElement yc;
    };
    // Families keyed by (v0, vertex word of y).
    std::vector<std::vector<Member>> families;
    std::vector<int> family_vertex;
    for (int v : vertex_list(sc, v0)) {
      std::map<VertexWord, std::vector<Member>> classes;
      for (const GPElement& x : B) {
        if (!has_vertex(x, v)) continue;
        const StandardForm f = standard_form(x, v, gp, sc.params.budget);
        classes[f.y.vertices()].push_back({x, multiply(f.y, f.c, gp)});
      }
      for (auto& [_, m] : classes) {
        families.push_back(std::move(m));
        family_vertex.push_back(v);
      }
    }
    if (families.empty()) throw Error(ErrorCode::HypothesisViolated, "no element contains the distinguished vertex");
    auto rng = check_rng(sc, 2);
    std::uniform_int_distribution<std::size_t> fam(0, families.size() - 1);
    std::uniform_int_distribution<int> size(2, 5);
    int valid = 0;
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;
    std::map<int, int> per_vertex;
    for (int t = 0; t < sc.params.tuples; ++t) {
      const std::size_t f = fam(rng);
      const auto& members = families[f];
      std::vector<std::size_t> order(members.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(size(rng)), members.size());
      std::vector<const Member*> fam_members;
      for (std::size_t k = 0; k < n; ++k) fam_members.push_back(&members[order[k]]);
      const auto p = central_psd(
          static_cast<int>(n), ctx.structure(),
          [&](int i, int j) {
            const Member& a = *fam_members[static_cast<std::size_t>(i)];
            const Member& b = *fam_members[static_cast<std::size_t>(j)];
            return kt(a.x, b.x) - kt(a.x, a.yc) * kt(a.yc, b.yc) * kt(b.yc, b.x);
          },
          sc.params.psd_tol);
      ++valid;
      ++per_vertex[ctx.graph().label(family_vertex[f])];
      worst = std::min(worst, p.min_eigenvalue);
      ok = ok && p.positive;
    }
    json pv = json::object();
    for (const auto& [label, n] : per_vertex) pv[std::to_string(label)] = n;
    r.metrics = {{"tuples", valid}, {"families", families.size()}, {"tuples_per_v0", pv},
                 {"min_eigenvalue", valid ? worst : 0.0}};
    r.status = ok ? Status::Pass : Status::Fail;
  });
}

// -- main theorem ---------------------------------------------------------------------

std::vector<ElementSet> main_complete_sets(const Scenario& sc) {
  const auto& gp = sc.ctx.product();
  const auto& p = sc.params;
  const std::size_t cap = static_cast<std::size_t>(
      std::max(1, std::min(p.max_set_size, p.max_flat_dim / sc.ctx.structure().total_dim())));
  std::vector<ElementSet> sets;
  if (!sc.seeds.empty()) {
    ElementSet seeds(sc.seeds.begin(), sc.seeds.end());
    ElementSet X = complete_closure(seeds, gp, p.budget);
    if (X.size() > cap) throw Error(ErrorCode::BudgetExceeded, "closure of the seed set exceeds the size cap");
    sets.push_back(std::move(X));
  }
  const auto B = ball(gp, p.main_radius, p.budget);
  if (B.size() <= cap) {
    sets.emplace_back(B.begin(), B.end());
    return sets;
  }
  auto rng = check_rng(sc, 3);
  std::vector<GPElement> candidates(B.begin() + 1, B.end());
  for (int k = 0; k < p.complete_sets; ++k) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    ElementSet X{GPElement{}};
    std::size_t tried = 0;
    for (const GPElement& x : candidates) {
      if (X.size() >= cap || tried++ > 8 * cap) break;
      if (X.count(x)) continue;
      ElementSet D = down_set(x, gp, p.budget);
      ElementSet U = X;
      U.insert(D.begin(), D.end());
      if (U.size() <= cap) X = std::move(U);
    }
    sets.push_back(std::move(X));
  }
  return sets;
}

namespace {

struct KernelMatrix {
  CMatrix flat;
  double diag_defect = 0.0;
};

KernelMatrix assemble(const ElementSet& X, KernelTable& kt, const Scenario& sc) {
  const std::vector<GPElement> xs(X.begin(), X.end());
  const int n = static_cast<int>(xs.size());
  std::vector<CentralElement> entries(static_cast<std::size_t>(n * n));
  parallel_for(xs.size(), sc.params.threads, [&](std::size_t i) {
    for (int j = 0; j < n; ++j) entries[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = kt(xs[i], xs[static_cast<std::size_t>(j)]);
  });
  OperatorMatrix m(n, sc.ctx.structure());
  KernelMatrix out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.set_central(i, j, entries[static_cast<std::size_t>(i * n + j)]);
    out.diag_defect = std::max(out.diag_defect,
                               entries[static_cast<std::size_t>(i * n + i)].distance(CentralElement::one(sc.ctx.structure().block_count())));
  }
  out.flat = m.flatten();
  return out;
}

}  // namespace

CheckResult verify_main_theorem(const Scenario& sc) {
  return guarded(sc, "main_theorem", false, [&](CheckResult& r) {
    KernelTable kt(sc.ctx);
    json sets = json::array();
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const ElementSet& X : main_complete_sets(sc)) {
      const KernelMatrix km = assemble(X, kt, sc);
      const PositivityResult p = is_positive(km.flat, sc.params.psd_tol);
      sets.push_back({{"size", X.size()}, {"dim", p.dim}, {"min_eigenvalue", p.min_eigenvalue}, {"norm", p.norm}});
      worst = std::min(worst, p.min_eigenvalue);
      ok = ok && p.positive;
    }
    r.metrics = {{"radius", sc.params.main_radius}, {"sets", std::move(sets)}, {"min_eigenvalue", worst}};
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) r.detail = "kernel matrix over a complete set is not positive";
  });
}

CheckResult check_stinespring(const Scenario& sc) {
  return guarded(sc, "stinespring_consistency", false, [&](CheckResult& r) {
    KernelTable kt(sc.ctx);
    bool ok = true;
    double herm = 0.0, diag = 0.0;
    std::size_t n_sets = 0;
    for (const ElementSet& X : main_complete_sets(sc)) {
      ++n_sets;
      ok = ok && is_complete(X, sc.ctx.product(), sc.params.budget);
      const KernelMatrix km = assemble(X, kt, sc);
      herm = std::max(herm, (km.flat - km.flat.adjoint()).cwiseAbs().maxCoeff());
      diag = std::max(diag, km.diag_defect);
    }
    r.metrics = {{"sets", n_sets}, {"all_complete", ok}, {"max_hermitian_deviation", herm},
                 {"max_isometry_defect", diag}};
    ok = ok && herm <= 1e-12 && diag <= sc.params.identity_tol;
    r.status = ok ? Status::Pass : Status::Fail;
  });
}

// -- Haagerup and cocycles -----------------------------------------------------------

CheckResult check_haagerup(const Scenario& sc) {
  return guarded(sc, "haagerup_witness", false, [&](CheckResult& r) {
    const auto& hp = sc.params.haagerup;
    const auto F = hp.F ? *hp.F : default_witness_sets(sc.ctx, hp.epsilon);
    const HaagerupReport w = haagerup_witness_ball(sc.ctx, F, hp.K, hp.L, hp.epsilon, sc.params.budget);
    r.metrics = {{"K", hp.K}, {"L", hp.L}, {"epsilon", hp.epsilon}, {"F_size", w.f_size}, {"ball_size", w.ball_size},
                 {"off_F", w.off_f}, {"max_off_F_norm", w.max_off_f_norm}, {"certified_on", "radius-L ball only"}};
    if (w.worst) r.metrics["worst_element"] = format_element(*w.worst, sc.ctx.product());
    r.status = w.pass ? Status::Pass : Status::Fail;
  });
}

CheckResult check_cocycles(const Scenario& sc) {
  return guarded(sc, "cocycles", true, [&](CheckResult& r) {
    const auto& ctx = sc.ctx;
    const double tol = sc.params.identity_tol;
    auto rng = check_rng(sc, 4);
    std::vector<double> grid = sc.params.t_grid;
    std::sort(grid.begin(), grid.end(), std::greater<>());
    json per = json::array();
    bool ok = true;
    for (int v = 0; v < ctx.product().vertex_count(); ++v) {
      const ActionTable& a = ctx.action(v);
      const Multiplier& h = ctx.multiplier(v);
      const Multiplier h_ad = convention_flip(h);
      const GNSModule m = gns_build(h_ad, a);
      const Cocycle c = cocycle_build(m);
      const FiniteGroup& g = a.group;
      const int K = a.structure.block_count();

      const double gram_vs_pd = (m.gram.flatten() - multiplier_gram(h, a).flatten()).cwiseAbs().maxCoeff();
      const double residual = cocycle_identity_residual(c, m);
      const auto norms = cocycle_norms(c, m);
      double bb = 0.0, reproduce = 0.0;
      std::vector<CentralElement> q;
      for (int s = 0; s < g.order(); ++s) {
        const CentralElement hs = h_ad.at(s);
        const CentralElement expect = CentralElement::constant(K, 2.0) - hs - hs.adjoint();
        bb = std::max(bb, norms[static_cast<std::size_t>(s)].distance(embed_central(expect, a.structure)));
        reproduce = std::max(reproduce, inner(m, u_action(s, c.xi, m), c.xi).distance(embed_central(hs, a.structure)));
        q.push_back(extract_central(norms[static_cast<std::size_t>(s)], 1e-9));
      }
      double equivariance = 0.0;
      for (int k = 0; k < 3; ++k) {
        const ModuleVector f = random_vector(m, rng);
        const ModuleVector e = random_vector(m, rng);
        const AlgebraElement x = AlgebraElement::random(a.structure, rng);
        const AlgebraElement fe = inner(m, f, e);
        for (int s = 0; s < g.order(); ++s) {
          const double scale = 1.0 + fe.max_abs();
          equivariance = std::max(equivariance,
                                  inner(m, u_action(s, f, m), u_action(s, e, m)).distance(a.at(s).apply(fe)) / scale);
          equivariance = std::max(equivariance,
                                  (u_action(s, f * x, m) - u_action(s, f, m) * a.at(s).apply(x)).max_abs() / scale);
        }
      }
      const NegativeDefiniteReport nd = negative_definite_check(norms, a, sc.params.nd_trials, rng, 1e-8);

      json sch = json::array();
      bool sch_ok = true;
      double prev_gap = -1.0;
      for (double t : grid) {
        const Multiplier ht = schoenberg_multiplier(c, m, t);
        const auto p = is_positive_definite(ht, a, {}, sc.params.psd_tol);
        double gap = 0.0;
        for (const auto& val : ht.values) gap = std::max(gap, val.distance(CentralElement::one(K)));
        const bool monotone = prev_gap < 0.0 || gap <= prev_gap + 1e-15;
        prev_gap = gap;
        sch_ok = sch_ok && p.positive && monotone && ht.is_unital();
        sch.push_back({{"t", t}, {"min_eigenvalue", p.min_eigenvalue}, {"max_distance_to_one", gap}});
      }
      const auto gaps = spectral_gap(q);

      const bool v_ok = gram_vs_pd <= tol && residual <= tol && bb <= 1e-12 && reproduce <= 1e-12 &&
                        equivariance <= tol && nd.pass && sch_ok;
      ok = ok && v_ok;
      per.push_back({{"vertex", ctx.graph().label(v)},
                     {"gram_matches_pd_matrix", gram_vs_pd},
                     {"cocycle_identity_residual", residual},
                     {"norm_identity_residual", bb},
                     {"reproduces_multiplier", reproduce},
                     {"equivariance_defect", equivariance},
                     {"negative_definite", {{"pass", nd.pass}, {"symmetry_defect", nd.symmetry_defect},
                                            {"worst_margin", nd.worst_margin}, {"trials", nd.trials}}},
                     {"schoenberg", std::move(sch)},
                     {"spectral_gaps", gaps},
                     {"pass", v_ok}});
    }
    r.metrics = {{"vertices", std::move(per)}, {"schoenberg_exponent", "linear"}};
    r.status = ok ? Status::Pass : Status::Fail;
  });
}

// -- driver ---------------------------------------------------------------------------------

VerdictReport run_all(const Scenario& sc, Suite suite) {
  using Fn = std::function<CheckResult()>;
  std::vector<Fn> plan{
      [&] { return check_setup_actions(sc); },
      [&] { return check_multipliers_commute(sc); },
      [&] { return check_well_defined(sc); },
      [&] { return check_vertex_pd(sc); },
  };
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Lemmas) {
    plan.emplace_back([&] { return check_star_symmetry(sc); });
    plan.emplace_back([&] { return check_factorization_peel(sc); });
    plan.emplace_back([&] { return check_factorization_kernel(sc); });
    plan.emplace_back([&] { return verify_cross_terms(sc); });
    plan.emplace_back([&] { return verify_schwarz(sc); });
    plan.emplace_back([&] { return verify_y1_square(sc); });
  }
  if (all || suite == Suite::Main) {
    plan.emplace_back([&] { return verify_main_theorem(sc); });
    plan.emplace_back([&] { return check_stinespring(sc); });
  }
  if (all || suite == Suite::Haagerup) plan.emplace_back([&] { return check_haagerup(sc); });
  if (all || suite == Suite::Cocycles) plan.emplace_back([&] { return check_cocycles(sc); });

  VerdictReport report;
  for (const auto& fn : plan) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace gpm
