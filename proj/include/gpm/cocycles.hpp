#pragma once

#include <random>
#include <vector>

#include "gpm/dynamics.hpp"
#include "gpm/matalg.hpp"
#include "gpm/multipliers.hpp"

namespace gpm {

/// Element of C(G, A) for a finite G: one coefficient per group element.
struct ModuleVector {
  std::vector<AlgebraElement> coeffs;

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  /// (f·a)(t) = f(t)a.
  ModuleVector operator*(const AlgebraElement& a) const;
  double max_abs() const;
};

/// The Hilbert A-module induced by h, kept as its Gram matrix. Here h is in
/// the convention where [α_{x_i}(h_{x_i⁻¹x_j})] is positive.
struct GNSModule {
  ActionTable action;
  Multiplier h;
  /// Entry (s, t) = α_s(h_{s⁻¹t}).
  OperatorMatrix gram;
  double min_eigenvalue = 0.0;

  const FiniteGroup& group() const { return action.group; }
  const BlockStructure& structure() const { return action.structure; }
};

/// Throws NotPositive, or SupportEscape when S is neither empty nor all of G.
GNSModule gns_build(const Multiplier& h_ad, const ActionTable& a, const std::vector<int>& S = {},
                    double tol = kDefaultPsdTol);

/// ⟨f|g⟩ = Σ_{s,t} g(s)* α_s(h_{s⁻¹t}) f(t).
AlgebraElement inner(const GNSModule& m, const ModuleVector& f, const ModuleVector& g);

/// (u_s f)(t) = α_s(f(s⁻¹t)).
ModuleVector u_action(int s, const ModuleVector& f, const GNSModule& m);

ModuleVector zero_vector(const GNSModule& m);
ModuleVector random_vector(const GNSModule& m, std::mt19937_64& rng);
/// δ_e ⊗ 1.
ModuleVector base_vector(const GNSModule& m);

struct Cocycle {
  ModuleVector xi;
  /// b(s) = ξ − u_s ξ, indexed by group element.
  std::vector<ModuleVector> b;
};

/// Throws NotUnital.
Cocycle cocycle_build(const GNSModule& m);

/// max over s, t of the coefficient-wise size of b(st) − b(s) − u_s b(t).
double cocycle_identity_residual(const Cocycle& c, const GNSModule& m);

/// ⟨b(s)|b(s)⟩ for each s.
std::vector<AlgebraElement> cocycle_norms(const Cocycle& c, const GNSModule& m);

struct NegativeDefiniteReport {
  bool pass = false;
  /// max_s ‖α_s(ψ(s⁻¹)) − ψ(s)*‖.
  double symmetry_defect = 0.0;
  /// Largest eigenvalue of the Hermitian part of any sampled quadratic form.
  double worst_margin = 0.0;
  int trials = 0;
};

/// Symmetry checked for every s; the quadratic form sampled on `trials`
/// random tuples with Σ b_i = 0 (the last b_i absorbs the sum).
NegativeDefiniteReport negative_definite_check(const std::vector<AlgebraElement>& psi, const ActionTable& a,
                                               int trials, std::mt19937_64& rng, double tol = 1e-8);

enum class SchoenbergExponent {
  /// exp(−t·Q(s)), positive definite for every t > 0.
  Linear,
  /// exp(−t·Q(s)²); not positive definite in general.
  Squared,
};

/// s ↦ exp(−t·Q(s)) (or Q(s)² ) with Q(s) = ⟨b(s)|b(s)⟩, converted to the
/// [α_{x_j}(h_{x_i⁻¹x_j})] convention. Throws NotCentral.
Multiplier schoenberg_multiplier(const Cocycle& c, const GNSModule& m, double t,
                                 SchoenbergExponent e = SchoenbergExponent::Linear);

/// Smallest real part of each value. Throws NotPositiveValue when a value
/// has a negative or non-real spectrum beyond `tol`.
std::vector<double> spectral_gap(const std::vector<CentralElement>& c, double tol = 1e-10);
/// Indices with gap ≤ R.
std::vector<int> gap_sublevel(const std::vector<double>& gaps, double R);

}  // namespace gpm
