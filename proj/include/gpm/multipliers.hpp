#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpm/dynamics.hpp"
#include "gpm/matalg.hpp"
#include "gpm/wordcraft.hpp"

namespace gpm {

/// h: G → Z(A), one central value per group element.
struct Multiplier {
  FiniteGroup group;
  std::vector<CentralElement> values;

  const CentralElement& at(int g) const { return values.at(static_cast<std::size_t>(g)); }
  int blocks() const { return values.empty() ? 0 : values.front().size(); }
  bool is_unital(double tol = 1e-12) const;
  /// max_s ‖h_s‖.
  double sup_norm() const;
};

/// 1 at e, 0 elsewhere.
Multiplier delta_multiplier(const FiniteGroup& g, int blocks);
/// 1 at e, c elsewhere: c^{|s|} on a single vertex group.
Multiplier geometric_multiplier(const FiniteGroup& g, int blocks, Complex c);
Multiplier scaled(const Multiplier& h, Complex factor);

/// [α_{x_j}(h_{x_i⁻¹x_j})]_{ij} over S (all of G when S is empty).
OperatorMatrix multiplier_gram(const Multiplier& h, const ActionTable& a, const std::vector<int>& S = {});
/// [α_{x_i}(h_{x_i⁻¹x_j})]_{ij}, the other sign convention.
OperatorMatrix multiplier_gram_ad(const Multiplier& h, const ActionTable& a, const std::vector<int>& S = {});

PositivityResult is_positive_definite(const Multiplier& h, const ActionTable& a, const std::vector<int>& S = {},
                                      double tol = kDefaultPsdTol);
PositivityResult is_positive_definite_ad(const Multiplier& h, const ActionTable& a, const std::vector<int>& S = {},
                                         double tol = kDefaultPsdTol);

/// s ↦ h_{s⁻¹}*.
Multiplier convention_flip(const Multiplier& h);

/// Largest ‖h_{a⁻¹}* − α_a(h_a)‖ over a ∈ G.
double hermitian_identity_defect(const Multiplier& h, const ActionTable& a);
bool hermitian_identity_check(const Multiplier& h, const ActionTable& a, double tol = 1e-10);

/// Sets h_e = 1. Throws NormTooLarge when ‖h_s‖ > 1/2 for some s ≠ e and
/// BadIdentityValue unless 0 ≤ h_e ≤ 1.
Multiplier unitalize(const Multiplier& h);

/// h_s = Σ_w α_{w⁻¹}(η(ws⁻¹)* η(w)) for a random central η, which is positive
/// definite for any action. Real η gives real values.
Multiplier gram_construction_multiplier(const ActionTable& a, std::mt19937_64& rng, bool real = false);
/// gram_construction_multiplier scaled to sup norm 1/2 and unitalized.
Multiplier random_unital_pd_multiplier(const ActionTable& a, std::mt19937_64& rng, bool real = false);

// -- graph products of multipliers -------------------------------------------

/// Graph, vertex groups, actions and multipliers together with the outcome of
/// the standing-hypothesis checks. Construction never throws for a failed
/// hypothesis; it records it. Shape errors throw StructureMismatch.
class GPMultiplierCtx {
 public:
  GPMultiplierCtx() = default;
  GPMultiplierCtx(GraphProduct gp, BlockStructure s, std::vector<ActionTable> actions,
                  std::vector<Multiplier> multipliers, double tol = 1e-10);

  const GraphProduct& product() const { return gp_; }
  const SimplicialGraph& graph() const { return gp_.graph(); }
  const BlockStructure& structure() const { return s_; }
  const std::vector<ActionTable>& actions() const { return actions_; }
  const ActionTable& action(int v) const { return actions_.at(static_cast<std::size_t>(v)); }
  const std::vector<Multiplier>& multipliers() const { return mults_; }
  const Multiplier& multiplier(int v) const { return mults_.at(static_cast<std::size_t>(v)); }

  bool actions_are_homomorphisms() const { return actions_ok_; }
  bool actions_commute() const { return actions_commute_; }
  bool multipliers_commute() const { return multipliers_commute_; }
  bool valid() const { return actions_ok_ && actions_commute_ && multipliers_commute_; }
  /// First failure message for each failed hypothesis.
  const std::vector<std::string>& problems() const { return problems_; }

  /// Throws SetupInvalid unless valid().
  void require_valid() const;

 private:
  GraphProduct gp_;
  BlockStructure s_;
  std::vector<ActionTable> actions_;
  std::vector<Multiplier> mults_;
  bool actions_ok_ = false;
  bool actions_commute_ = false;
  bool multipliers_commute_ = false;
  std::vector<std::string> problems_;
};

/// Largest ‖α_{v,a}(h_{w,b}) − h_{w,b}‖ over edges (both directions).
double multiplier_commutation_defect(const SimplicialGraph& graph, const std::vector<ActionTable>& actions,
                                     const std::vector<Multiplier>& mults);
/// Throws EdgeViolation naming the first offending edge.
void multipliers_commute(const SimplicialGraph& graph, const std::vector<ActionTable>& actions,
                         const std::vector<Multiplier>& mults, double tol = 1e-12);

/// Throws SetupInvalid.
Automorphism act_word(const GPElement& s, const GPMultiplierCtx& ctx);
std::vector<int> element_perm(const GPElement& s, const GPMultiplierCtx& ctx);

/// The product formula evaluated along exactly this letter sequence, without
/// checking any hypothesis.
CentralElement evaluate_product_formula(std::span<const Letter> letters, const GPMultiplierCtx& ctx);

/// (★h)_s. Throws SetupInvalid.
CentralElement gp_multiplier(const GPElement& s, const GPMultiplierCtx& ctx);

struct WellDefinedReport {
  bool ok = true;
  double max_deviation = 0.0;
  std::optional<GPElement> worst;
  std::size_t elements = 0;
  std::size_t rearrangements = 0;
};

/// Evaluates the product formula along every rearrangement of every element
/// of the ball. Runs on invalid contexts too. Throws BudgetExceeded.
WellDefinedReport gp_well_defined(const GPMultiplierCtx& ctx, int radius, double tol = 1e-10,
                                  std::size_t budget = kDefaultBudget);

/// K(x, y) = α_y(h_{x⁻¹y}). Throws SetupInvalid.
CentralElement kernel(const GPElement& x, const GPElement& y, const GPMultiplierCtx& ctx);

/// Memoized kernel. Safe to query from several threads.
class KernelTable {
 public:
  explicit KernelTable(const GPMultiplierCtx& ctx);

  CentralElement operator()(const GPElement& x, const GPElement& y);
  CentralElement multiplier(const GPElement& s);
  const std::vector<int>& perm(const GPElement& s);

 private:
  const GPMultiplierCtx& ctx_;
  std::mutex mu_;
  std::unordered_map<GPElement, CentralElement> h_;
  std::unordered_map<GPElement, std::vector<int>> perms_;
};

struct HaagerupReport {
  std::size_t f_size = 0;
  std::size_t ball_size = 0;
  std::size_t off_f = 0;
  double max_off_f_norm = 0.0;
  std::optional<GPElement> worst;
  double epsilon = 0.0;
  bool pass = false;
};

/// F = {s₁⋯s_m reduced : m ≤ K, s_j ∈ F_{v_j}} ∪ {e}; checks ‖(★h)_s‖ < ε on
/// the radius-L ball outside F. Only the enumerated ball is certified.
/// `F[v]` lists group elements of vertex v. Throws HypothesisViolated.
HaagerupReport haagerup_witness_ball(const GPMultiplierCtx& ctx, const std::vector<std::vector<int>>& F, int K,
                                     int L, double eps, std::size_t budget = kDefaultBudget);
/// F_v = {s : ‖h_{v,s}‖ ≥ ε} ∪ {e}.
std::vector<std::vector<int>> default_witness_sets(const GPMultiplierCtx& ctx, double eps);

/// Single-edge context on A₁ ⊗ A₂ with actions α₁ ⊗ id, id ⊗ α₂ and
/// multipliers h₁ ⊗ 1, 1 ⊗ h₂.
GPMultiplierCtx tensor_fixture(const ActionTable& a1, const Multiplier& h1, const ActionTable& a2,
                               const Multiplier& h2);
Automorphism tensor_left(const Automorphism& a, const TensorAlgebra& t);
Automorphism tensor_right(const Automorphism& b, const TensorAlgebra& t);

/// Context over C(X). points[v][g] is the permutation of X for g ∈ G_v and
/// htilde[v][g][x] the function value at (g, x).
GPMultiplierCtx groupoid_from_space(const GraphProduct& gp, int n_points,
                                    const std::vector<std::vector<std::vector<int>>>& points,
                                    const std::vector<std::vector<std::vector<Complex>>>& htilde);
/// (★h̃)(s, x), read off the diagonal.
Complex groupoid_value(const GPElement& s, int x, const GPMultiplierCtx& ctx);

}  // namespace gpm
