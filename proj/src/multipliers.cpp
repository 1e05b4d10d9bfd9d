#include "gpm/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "gpm/error.hpp"

namespace gpm {

bool Multiplier::is_unital(double tol) const {
  const CentralElement& he = at(group.identity());
  return he.distance(CentralElement::one(he.size())) <= tol;
}

double Multiplier::sup_norm() const {
  double n = 0.0;
  for (const auto& v : values) n = std::max(n, v.norm());
  return n;
}

Multiplier delta_multiplier(const FiniteGroup& g, int blocks) {
  Multiplier h{g, std::vector<CentralElement>(static_cast<std::size_t>(g.order()), CentralElement::zero(blocks))};
  h.values[static_cast<std::size_t>(g.identity())] = CentralElement::one(blocks);
  return h;
}

Multiplier geometric_multiplier(const FiniteGroup& g, int blocks, Complex c) {
  Multiplier h{g, std::vector<CentralElement>(static_cast<std::size_t>(g.order()), CentralElement::constant(blocks, c))};
  h.values[static_cast<std::size_t>(g.identity())] = CentralElement::one(blocks);
  return h;
}

Multiplier scaled(const Multiplier& h, Complex factor) {
  Multiplier out = h;
  for (auto& v : out.values) v *= factor;
  return out;
}

namespace {

std::vector<int> full_or(const FiniteGroup& g, const std::vector<int>& S) {
  if (!S.empty()) return S;
  std::vector<int> all(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return all;
}

void check_shapes(const Multiplier& h, const ActionTable& a) {
  if (!(h.group == a.group)) throw Error(ErrorCode::StructureMismatch, "multiplier and action use different groups");
  if (static_cast<int>(h.values.size()) != a.group.order()) {
    throw Error(ErrorCode::StructureMismatch, "multiplier needs one value per group element");
  }
  for (const auto& v : h.values)
    if (v.size() != a.structure.block_count()) throw Error(ErrorCode::StructureMismatch, "multiplier value has wrong length");
}

}  // namespace

OperatorMatrix multiplier_gram(const Multiplier& h, const ActionTable& a, const std::vector<int>& S) {
  check_shapes(h, a);
  const auto xs = full_or(a.group, S);
  const int n = static_cast<int>(xs.size());
  OperatorMatrix m(n, a.structure);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int s = a.group.mul(a.group.inv(xs[i]), xs[j]);
      m.set_central(i, j, a.at(xs[j]).apply(h.at(s)));
    }
  return m;
}

OperatorMatrix multiplier_gram_ad(const Multiplier& h, const ActionTable& a, const std::vector<int>& S) {
  check_shapes(h, a);
  const auto xs = full_or(a.group, S);
  const int n = static_cast<int>(xs.size());
  OperatorMatrix m(n, a.structure);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int s = a.group.mul(a.group.inv(xs[i]), xs[j]);
      m.set_central(i, j, a.at(xs[i]).apply(h.at(s)));
    }
  return m;
}

PositivityResult is_positive_definite(const Multiplier& h, const ActionTable& a, const std::vector<int>& S,
                                      double tol) {
  return is_positive(multiplier_gram(h, a, S), tol);
}

PositivityResult is_positive_definite_ad(const Multiplier& h, const ActionTable& a, const std::vector<int>& S,
                                         double tol) {
  return is_positive(multiplier_gram_ad(h, a, S), tol);
}

Multiplier convention_flip(const Multiplier& h) {
  Multiplier out = h;
  for (int s = 0; s < h.group.order(); ++s) out.values[static_cast<std::size_t>(s)] = h.at(h.group.inv(s)).adjoint();
  return out;
}

double hermitian_identity_defect(const Multiplier& h, const ActionTable& a) {
  check_shapes(h, a);
  double worst = 0.0;
  for (int s = 0; s < h.group.order(); ++s) {
    worst = std::max(worst, h.at(h.group.inv(s)).adjoint().distance(a.at(s).apply(h.at(s))));
  }
  return worst;
}

bool hermitian_identity_check(const Multiplier& h, const ActionTable& a, double tol) {
  return hermitian_identity_defect(h, a) <= tol;
}

Multiplier unitalize(const Multiplier& h) {
  constexpr double slack = 1e-12;
  const int e = h.group.identity();
  for (int s = 0; s < h.group.order(); ++s) {
    if (s != e && h.at(s).norm() > 0.5 + slack) {
      throw Error(ErrorCode::NormTooLarge, "|h_" + std::to_string(s) + "| = " + std::to_string(h.at(s).norm()) +
                                               " exceeds 1/2");
    }
  }
  for (Complex z : h.at(e).scalars()) {
    if (std::abs(z.imag()) > slack || z.real() < -slack || z.real() > 1.0 + slack) {
      throw Error(ErrorCode::BadIdentityValue, "h_e must satisfy 0 <= h_e <= 1");
    }
  }
  Multiplier out = h;
  out.values[static_cast<std::size_t>(e)] = CentralElement::one(h.blocks());
  return out;
}

Multiplier gram_construction_multiplier(const ActionTable& a, std::mt19937_64& rng, bool real) {
  const FiniteGroup& g = a.group;
  const int K = a.structure.block_count();
  std::normal_distribution<double> n01;
  std::vector<CentralElement> eta;
  for (int w = 0; w < g.order(); ++w) {
    std::vector<Complex> z;
    for (int k = 0; k < K; ++k) z.emplace_back(n01(rng), real ? 0.0 : n01(rng));
    eta.emplace_back(std::move(z));
  }
  Multiplier h{g, {}};
  for (int s = 0; s < g.order(); ++s) {
    CentralElement acc = CentralElement::zero(K);
    for (int w = 0; w < g.order(); ++w) {
      const CentralElement term = eta[static_cast<std::size_t>(g.mul(w, g.inv(s)))].adjoint() * eta[static_cast<std::size_t>(w)];
      acc += a.at(g.inv(w)).apply(term);
    }
    h.values.push_back(std::move(acc));
  }
  return h;
}

Multiplier random_unital_pd_multiplier(const ActionTable& a, std::mt19937_64& rng, bool real) {
  Multiplier h = gram_construction_multiplier(a, rng, real);
  h = scaled(h, 0.5 / h.sup_norm());
  // h_e is positive by construction; only rounding can push it past the bounds.
  CentralElement& he = h.values[static_cast<std::size_t>(h.group.identity())];
  for (int k = 0; k < he.size(); ++k) he[k] = Complex(std::clamp(he[k].real(), 0.0, 1.0), 0.0);
  return unitalize(h);
}

// -- context -------------------------------------------------------------------

double multiplier_commutation_defect(const SimplicialGraph& graph, const std::vector<ActionTable>& actions,
                                     const std::vector<Multiplier>& mults) {
  double worst = 0.0;
  for (const auto& [v, w] : graph.edges()) {
    for (const auto& [x, y] : {std::pair{v, w}, std::pair{w, v}}) {
      const ActionTable& ax = actions[static_cast<std::size_t>(x)];
      const Multiplier& hy = mults[static_cast<std::size_t>(y)];
      for (const auto& alpha : ax.autos)
        for (const auto& val : hy.values) worst = std::max(worst, alpha.apply(val).distance(val));
    }
  }
  return worst;
}

void multipliers_commute(const SimplicialGraph& graph, const std::vector<ActionTable>& actions,
                         const std::vector<Multiplier>& mults, double tol) {
  for (const auto& [v, w] : graph.edges()) {
    for (const auto& [x, y] : {std::pair{v, w}, std::pair{w, v}}) {
      const ActionTable& ax = actions[static_cast<std::size_t>(x)];
      const Multiplier& hy = mults[static_cast<std::size_t>(y)];
      for (int a = 0; a < ax.group.order(); ++a)
        for (int b = 0; b < hy.group.order(); ++b)
          if (ax.at(a).apply(hy.at(b)).distance(hy.at(b)) > tol) {
            throw Error(ErrorCode::EdgeViolation,
                        "multiplier at vertex " + std::to_string(graph.label(y)) + " is not invariant under vertex " +
                            std::to_string(graph.label(x)) + ": alpha_{" + std::to_string(graph.label(x)) + "," +
                            std::to_string(a) + "}(h_{" + std::to_string(graph.label(y)) + "," + std::to_string(b) +
                            "}) != h_{" + std::to_string(graph.label(y)) + "," + std::to_string(b) + "}");
          }
    }
  }
}

GPMultiplierCtx::GPMultiplierCtx(GraphProduct gp, BlockStructure s, std::vector<ActionTable> actions,
                                 std::vector<Multiplier> multipliers, double tol)
    : gp_(std::move(gp)), s_(std::move(s)), actions_(std::move(actions)), mults_(std::move(multipliers)) {
  const int n = gp_.vertex_count();
  if (static_cast<int>(actions_.size()) != n || static_cast<int>(mults_.size()) != n) {
    throw Error(ErrorCode::StructureMismatch, "need one action and one multiplier per vertex");
  }
  for (int v = 0; v < n; ++v) {
    const auto& a = actions_[static_cast<std::size_t>(v)];
    if (!(a.group == gp_.group(v))) throw Error(ErrorCode::StructureMismatch, "action group differs from vertex group");
    if (!(a.structure == s_)) throw Error(ErrorCode::StructureMismatch, "action acts on a different algebra");
    check_shapes(mults_[static_cast<std::size_t>(v)], a);
  }

  actions_ok_ = true;
  for (int v = 0; v < n && actions_ok_; ++v) {
    try {
      validate_action(actions_[static_cast<std::size_t>(v)], tol);
    } catch (const Error& e) {
      actions_ok_ = false;
      problems_.push_back(std::string(to_string(e.code())) + ": vertex " + std::to_string(gp_.graph().label(v)) + ": " + e.what());
    }
  }
  try {
    setup_commutes_per_graph(gp_.graph(), actions_, tol);
    actions_commute_ = true;
  } catch (const Error& e) {
    problems_.push_back(std::string(to_string(e.code())) + ": " + e.what());
  }
  try {
    gpm::multipliers_commute(gp_.graph(), actions_, mults_, 1e-12);
    multipliers_commute_ = true;
  } catch (const Error& e) {
    problems_.push_back(std::string(to_string(e.code())) + ": " + e.what());
  }
}

void GPMultiplierCtx::require_valid() const {
  if (!valid()) {
    throw Error(ErrorCode::SetupInvalid,
                problems_.empty() ? std::string("setup hypotheses not met") : "setup invalid: " + problems_.front());
  }
}

std::vector<int> element_perm(const GPElement& s, const GPMultiplierCtx& ctx) {
  ctx.require_valid();
  return act_word_perm(s.letters(), ctx.actions());
}

Automorphism act_word(const GPElement& s, const GPMultiplierCtx& ctx) {
  ctx.require_valid();
  return act_letters(s.letters(), ctx.actions());
}

CentralElement evaluate_product_formula(std::span<const Letter> letters, const GPMultiplierCtx& ctx) {
  const int K = ctx.structure().block_count();
  if (letters.empty()) return CentralElement::one(K);
  std::vector<int> q(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) q[k] = k;
  const std::size_t n = letters.size();
  CentralElement out = ctx.multiplier(letters[n - 1].vertex).at(letters[n - 1].elem);
  for (std::size_t j = n - 1; j-- > 0;) {
    // α_{p_j}⁻¹ = α_{p_{j+1}}⁻¹ ∘ α_{s_{j+1}⁻¹}
    const Letter& next = letters[j + 1];
    const ActionTable& t = ctx.action(next.vertex);
    const auto& p = t.at(t.group.inv(next.elem)).perm();
    std::vector<int> nq(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) nq[k] = q[static_cast<std::size_t>(p[k])];
    q = std::move(nq);
    out *= apply_perm(q, ctx.multiplier(letters[j].vertex).at(letters[j].elem));
  }
  return out;
}

CentralElement gp_multiplier(const GPElement& s, const GPMultiplierCtx& ctx) {
  ctx.require_valid();
  return evaluate_product_formula(s.letters(), ctx);
}

WellDefinedReport gp_well_defined(const GPMultiplierCtx& ctx, int radius, double tol, std::size_t budget) {
  WellDefinedReport r;
  for (const GPElement& x : ball(ctx.product(), radius, budget)) {
    ++r.elements;
    const auto reps = rearrangements(x, ctx.product(), budget);
    r.rearrangements += reps.size();
    std::vector<CentralElement> vals;
    for (const auto& w : reps) vals.push_back(evaluate_product_formula(w, ctx));
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j) {
        const double d = vals[i].distance(vals[j]);
        if (d > r.max_deviation) {
          r.max_deviation = d;
          r.worst = x;
        }
      }
  }
  r.ok = r.max_deviation <= tol;
  return r;
}

CentralElement kernel(const GPElement& x, const GPElement& y, const GPMultiplierCtx& ctx) {
  ctx.require_valid();
  const GPElement s = multiply(inverse(x, ctx.product()), y, ctx.product());
  return apply_perm(act_word_perm(y.letters(), ctx.actions()), evaluate_product_formula(s.letters(), ctx));
}

KernelTable::KernelTable(const GPMultiplierCtx& ctx) : ctx_(ctx) { ctx_.require_valid(); }

CentralElement KernelTable::multiplier(const GPElement& s) {
  {
    std::lock_guard lock(mu_);
    if (auto it = h_.find(s); it != h_.end()) return it->second;
  }
  CentralElement v = evaluate_product_formula(s.letters(), ctx_);
  std::lock_guard lock(mu_);
  return h_.emplace(s, std::move(v)).first->second;
}

const std::vector<int>& KernelTable::perm(const GPElement& s) {
  {
    std::lock_guard lock(mu_);
    if (auto it = perms_.find(s); it != perms_.end()) return it->second;
  }
  std::vector<int> p = act_word_perm(s.letters(), ctx_.actions());
  std::lock_guard lock(mu_);
  return perms_.emplace(s, std::move(p)).first->second;
}

CentralElement KernelTable::operator()(const GPElement& x, const GPElement& y) {
  const GPElement s = multiply(inverse(x, ctx_.product()), y, ctx_.product());
  const CentralElement hs = multiplier(s);
  return apply_perm(perm(y), hs);
}

// -- Haagerup witness ------------------------------------------------------------

std::vector<std::vector<int>> default_witness_sets(const GPMultiplierCtx& ctx, double eps) {
  std::vector<std::vector<int>> F;
  for (int v = 0; v < ctx.product().vertex_count(); ++v) {
    const Multiplier& h = ctx.multiplier(v);
    std::vector<int> fv;
    for (int s = 0; s < h.group.order(); ++s)
      if (s == h.group.identity() || h.at(s).norm() >= eps) fv.push_back(s);
    F.push_back(std::move(fv));
  }
  return F;
}

HaagerupReport haagerup_witness_ball(const GPMultiplierCtx& ctx, const std::vector<std::vector<int>>& F, int K,
                                     int L, double eps, std::size_t budget) {
  ctx.require_valid();
  if (L <= K) throw Error(ErrorCode::HypothesisViolated, "witness needs L > K");
  if (std::ldexp(1.0, -K) > eps) throw Error(ErrorCode::HypothesisViolated, "witness needs 2^-K <= epsilon");
  if (static_cast<int>(F.size()) != ctx.product().vertex_count()) {
    throw Error(ErrorCode::HypothesisViolated, "need one finite set per vertex");
  }
  for (int v = 0; v < ctx.product().vertex_count(); ++v) {
    const Multiplier& h = ctx.multiplier(v);
    if (!h.is_unital()) throw Error(ErrorCode::HypothesisViolated, "vertex multipliers must be unital");
    for (int s = 0; s < h.group.order(); ++s)
      if (s != h.group.identity() && h.at(s).norm() > 0.5 + 1e-12) {
        throw Error(ErrorCode::HypothesisViolated, "vertex multiplier exceeds 1/2 off the identity");
      }
  }
  std::vector<std::vector<char>> in_f;
  for (int v = 0; v < ctx.product().vertex_count(); ++v) {
    std::vector<char> mark(static_cast<std::size_t>(ctx.product().group(v).order()), 0);
    for (int s : F[static_cast<std::size_t>(v)]) mark.at(static_cast<std::size_t>(s)) = 1;
    in_f.push_back(std::move(mark));
  }

  HaagerupReport r;
  r.epsilon = eps;
  for (const GPElement& s : ball(ctx.product(), L, budget)) {
    ++r.ball_size;
    bool member = s.length() <= static_cast<std::size_t>(K);
    for (const Letter& l : s.letters()) member = member && in_f[static_cast<std::size_t>(l.vertex)][static_cast<std::size_t>(l.elem)];
    if (member) {
      ++r.f_size;
      continue;
    }
    ++r.off_f;
    const double n = evaluate_product_formula(s.letters(), ctx).norm();
    if (!r.worst || n > r.max_off_f_norm) {
      r.max_off_f_norm = n;
      r.worst = s;
    }
  }
  r.pass = r.max_off_f_norm < eps;
  return r;
}

// -- fixtures ----------------------------------------------------------------------

Automorphism tensor_left(const Automorphism& a, const TensorAlgebra& t) {
  const int K1 = t.left.block_count();
  const int K2 = t.right.block_count();
  std::vector<int> perm(static_cast<std::size_t>(K1 * K2));
  std::vector<CMatrix> us(static_cast<std::size_t>(K1 * K2));
  for (int i = 0; i < K1; ++i)
    for (int j = 0; j < K2; ++j) {
      perm[static_cast<std::size_t>(i * K2 + j)] = a.perm()[static_cast<std::size_t>(i)] * K2 + j;
      us[static_cast<std::size_t>(i * K2 + j)] =
          kron(a.unitaries()[static_cast<std::size_t>(i)], CMatrix::Identity(t.right.dim(j), t.right.dim(j)));
    }
  return Automorphism(std::move(perm), std::move(us));
}

Automorphism tensor_right(const Automorphism& b, const TensorAlgebra& t) {
  const int K1 = t.left.block_count();
  const int K2 = t.right.block_count();
  std::vector<int> perm(static_cast<std::size_t>(K1 * K2));
  std::vector<CMatrix> us(static_cast<std::size_t>(K1 * K2));
  for (int i = 0; i < K1; ++i)
    for (int j = 0; j < K2; ++j) {
      perm[static_cast<std::size_t>(i * K2 + j)] = i * K2 + b.perm()[static_cast<std::size_t>(j)];
      us[static_cast<std::size_t>(i * K2 + j)] =
          kron(CMatrix::Identity(t.left.dim(i), t.left.dim(i)), b.unitaries()[static_cast<std::size_t>(j)]);
    }
  return Automorphism(std::move(perm), std::move(us));
}

GPMultiplierCtx tensor_fixture(const ActionTable& a1, const Multiplier& h1, const ActionTable& a2,
                               const Multiplier& h2) {
  const TensorAlgebra t = tensor_algebra(a1.structure, a2.structure);
  ActionTable b1{a1.group, t.product, {}};
  ActionTable b2{a2.group, t.product, {}};
  for (const auto& a : a1.autos) b1.autos.push_back(tensor_left(a, t));
  for (const auto& a : a2.autos) b2.autos.push_back(tensor_right(a, t));
  Multiplier k1{h1.group, {}};
  Multiplier k2{h2.group, {}};
  for (const auto& v : h1.values) k1.values.push_back(t.embed_left(v));
  for (const auto& v : h2.values) k2.values.push_back(t.embed_right(v));
  GraphProduct gp(SimplicialGraph::path(2), {a1.group, a2.group});
  return GPMultiplierCtx(std::move(gp), t.product, {std::move(b1), std::move(b2)}, {std::move(k1), std::move(k2)});
}

GPMultiplierCtx groupoid_from_space(const GraphProduct& gp, int n_points,
                                    const std::vector<std::vector<std::vector<int>>>& points,
                                    const std::vector<std::vector<std::vector<Complex>>>& htilde) {
  const int n = gp.vertex_count();
  if (static_cast<int>(points.size()) != n || static_cast<int>(htilde.size()) != n) {
    throw Error(ErrorCode::StructureMismatch, "need point actions and functions for every vertex");
  }
  std::vector<ActionTable> actions;
  std::vector<Multiplier> mults;
  for (int v = 0; v < n; ++v) {
    actions.push_back(point_permutation_action(gp.group(v), n_points, points[static_cast<std::size_t>(v)]));
    Multiplier h{gp.group(v), {}};
    for (const auto& row : htilde[static_cast<std::size_t>(v)]) {
      if (static_cast<int>(row.size()) != n_points) throw Error(ErrorCode::StructureMismatch, "function row has wrong length");
      h.values.emplace_back(row);
    }
    mults.push_back(std::move(h));
  }
  return GPMultiplierCtx(gp, BlockStructure::diagonal(n_points), std::move(actions), std::move(mults));
}

Complex groupoid_value(const GPElement& s, int x, const GPMultiplierCtx& ctx) { return gp_multiplier(s, ctx)[x]; }

}  // namespace gpm
