#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gpm/graphgroup.hpp"
#include "gpm/matalg.hpp"
#include "gpm/wordcraft.hpp"

namespace gpm {

/// a ↦ (U_k · a_{π⁻¹(k)} · U_k*)_k : a block permutation π followed by
/// blockwise unitary conjugation. `perm[j]` is the output block that input
/// block j lands in.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(std::vector<int> perm, std::vector<CMatrix> unitaries)
      : perm_(std::move(perm)), unitaries_(std::move(unitaries)) {}

  static Automorphism identity(const BlockStructure& s);
  /// Pure block permutation (unitaries are identities).
  static Automorphism permutation(const BlockStructure& s, std::vector<int> perm);
  /// Inner automorphism Ad(U) with U block-diagonal.
  static Automorphism inner(std::vector<CMatrix> unitaries);

  const std::vector<int>& perm() const { return perm_; }
  const std::vector<CMatrix>& unitaries() const { return unitaries_; }

  /// Throws StructureMismatch when the shapes do not fit `s`, the permutation
  /// maps a block to one of different size, or a unitary is not unitary.
  void validate(const BlockStructure& s, double tol = 1e-10) const;

  /// Throws StructureMismatch.
  AlgebraElement apply(const AlgebraElement& a) const;
  /// Inner parts act trivially on the centre; only the permutation remains.
  CentralElement apply(const CentralElement& c) const;

  /// (*this) ∘ other.
  Automorphism compose(const Automorphism& other) const;
  Automorphism inverse() const;

 private:
  std::vector<int> perm_;
  std::vector<CMatrix> unitaries_;
};

/// Equality as maps on A, decided on every matrix unit.
bool maps_equal(const Automorphism& a, const Automorphism& b, const BlockStructure& s, double tol = 1e-12);

/// Largest deviation of α ∘ β from β ∘ α over all matrix units.
double commutator_defect(const Automorphism& a, const Automorphism& b, const BlockStructure& s);

/// One automorphism per group element.
struct ActionTable {
  FiniteGroup group;
  BlockStructure structure;
  std::vector<Automorphism> autos;

  const Automorphism& at(int g) const { return autos.at(static_cast<std::size_t>(g)); }
};

ActionTable trivial_action(const FiniteGroup& g, const BlockStructure& s);
/// phases[g][k] lists the d_k diagonal phases (radians) of the unitary on
/// block k for element g.
ActionTable diagonal_phase_action(const FiniteGroup& g, const BlockStructure& s,
                                  const std::vector<std::vector<std::vector<double>>>& phases);
/// For C(X): points[g] is the permutation of X induced by g (block j ↦ points[g][j]).
ActionTable point_permutation_action(const FiniteGroup& g, int n_points, const std::vector<std::vector<int>>& points);

/// Exhaustive homomorphism check on matrix units. Throws NotHomomorphism
/// (naming the offending pair) or StructureMismatch.
void validate_action(const ActionTable& t, double tol = 1e-10);

/// Map-level commutation of every pair (α_g, β_h).
bool actions_commute(const ActionTable& t1, const ActionTable& t2, double tol = 1e-10);

/// Throws EdgeViolation naming (v, w, g, h) for the first edge whose actions
/// fail to commute.
void setup_commutes_per_graph(const SimplicialGraph& graph, std::span<const ActionTable> actions,
                              double tol = 1e-10);

/// α_{s_1} ∘ … ∘ α_{s_n} along the given letter sequence.
Automorphism act_letters(std::span<const Letter> w, std::span<const ActionTable> actions);
Automorphism act_word(const GPElement& s, std::span<const ActionTable> actions);

/// Just the block permutation of act_word; all that matters on the centre.
std::vector<int> act_word_perm(std::span<const Letter> w, std::span<const ActionTable> actions);
CentralElement apply_perm(const std::vector<int>& perm, const CentralElement& c);

}  // namespace gpm
