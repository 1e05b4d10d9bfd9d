#include "gpm/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpm/error.hpp"

namespace gpm {

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

ModuleVector ModuleVector::operator*(const AlgebraElement& a) const {
  ModuleVector out = *this;
  for (auto& c : out.coeffs) c = c * a;
  return out;
}

double ModuleVector::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, c.max_abs());
  return m;
}

GNSModule gns_build(const Multiplier& h_ad, const ActionTable& a, const std::vector<int>& S, double tol) {
  if (!S.empty()) {
    std::vector<int> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (static_cast<int>(sorted.size()) != a.group.order()) {
      throw Error(ErrorCode::SupportEscape, "translations leave a proper support set; use the whole group");
    }
  }
  GNSModule m{a, h_ad, multiplier_gram_ad(h_ad, a), 0.0};
  const PositivityResult p = is_positive(m.gram, tol);
  m.min_eigenvalue = p.min_eigenvalue;
  if (!p.positive) {
    throw Error(ErrorCode::NotPositive, "GNS form is not positive: min eigenvalue " + std::to_string(p.min_eigenvalue));
  }
  return m;
}

AlgebraElement inner(const GNSModule& m, const ModuleVector& f, const ModuleVector& g) {
  const int n = m.group().order();
  AlgebraElement acc = AlgebraElement::zero(m.structure());
  for (int s = 0; s < n; ++s) {
    const AlgebraElement gs = g.coeffs[static_cast<std::size_t>(s)].adjoint();
    for (int t = 0; t < n; ++t) acc += gs * m.gram.at(s, t) * f.coeffs[static_cast<std::size_t>(t)];
  }
  return acc;
}

ModuleVector u_action(int s, const ModuleVector& f, const GNSModule& m) {
  const FiniteGroup& g = m.group();
  if (!g.contains(s)) throw Error(ErrorCode::ElementOutOfRange, "group element out of range");
  ModuleVector out = f;
  const Automorphism& alpha = m.action.at(s);
  for (int t = 0; t < g.order(); ++t) {
    out.coeffs[static_cast<std::size_t>(t)] = alpha.apply(f.coeffs[static_cast<std::size_t>(g.mul(g.inv(s), t))]);
  }
  return out;
}

ModuleVector zero_vector(const GNSModule& m) {
  return ModuleVector{std::vector<AlgebraElement>(static_cast<std::size_t>(m.group().order()),
                                                  AlgebraElement::zero(m.structure()))};
}

ModuleVector random_vector(const GNSModule& m, std::mt19937_64& rng) {
  ModuleVector v;
  for (int t = 0; t < m.group().order(); ++t) v.coeffs.push_back(AlgebraElement::random(m.structure(), rng));
  return v;
}

ModuleVector base_vector(const GNSModule& m) {
  ModuleVector v = zero_vector(m);
  v.coeffs[static_cast<std::size_t>(m.group().identity())] = AlgebraElement::identity(m.structure());
  return v;
}

Cocycle cocycle_build(const GNSModule& m) {
  if (!m.h.is_unital()) throw Error(ErrorCode::NotUnital, "cocycle needs a unital multiplier");
  Cocycle c{base_vector(m), {}};
  for (int s = 0; s < m.group().order(); ++s) c.b.push_back(c.xi - u_action(s, c.xi, m));
  return c;
}

double cocycle_identity_residual(const Cocycle& c, const GNSModule& m) {
  const FiniteGroup& g = m.group();
  double worst = 0.0;
  for (int s = 0; s < g.order(); ++s)
    for (int t = 0; t < g.order(); ++t) {
      const ModuleVector d = c.b[static_cast<std::size_t>(g.mul(s, t))] - c.b[static_cast<std::size_t>(s)] -
                             u_action(s, c.b[static_cast<std::size_t>(t)], m);
      worst = std::max(worst, d.max_abs());
    }
  return worst;
}

std::vector<AlgebraElement> cocycle_norms(const Cocycle& c, const GNSModule& m) {
  std::vector<AlgebraElement> out;
  for (const auto& b : c.b) out.push_back(inner(m, b, b));
  return out;
}

NegativeDefiniteReport negative_definite_check(const std::vector<AlgebraElement>& psi, const ActionTable& a,
                                               int trials, std::mt19937_64& rng, double tol) {
  const FiniteGroup& g = a.group;
  NegativeDefiniteReport r;
  r.trials = trials;
  for (int s = 0; s < g.order(); ++s) {
    const AlgebraElement lhs = a.at(s).apply(psi[static_cast<std::size_t>(g.inv(s))]);
    r.symmetry_defect = std::max(r.symmetry_defect, lhs.distance(psi[static_cast<std::size_t>(s)].adjoint()));
  }
  std::uniform_int_distribution<int> len(2, 6);
  std::uniform_int_distribution<int> elem(0, g.order() - 1);
  r.worst_margin = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (int k = 0; k < trials; ++k) {
    const int n = len(rng);
    std::vector<int> xs;
    std::vector<AlgebraElement> bs;
    AlgebraElement sum = AlgebraElement::zero(a.structure);
    for (int i = 0; i < n; ++i) {
      xs.push_back(elem(rng));
      if (i + 1 < n) {
        bs.push_back(AlgebraElement::random(a.structure, rng));
        sum += bs.back();
      } else {
        bs.push_back(sum * Complex(-1.0));
      }
    }
    AlgebraElement q = AlgebraElement::zero(a.structure);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int s = g.mul(g.inv(xs[i]), xs[j]);
        q += bs[i].adjoint() * a.at(xs[i]).apply(psi[static_cast<std::size_t>(s)]) * bs[j];
      }
    const CMatrix dense = q.dense(a.structure);
    const double lmax = max_eigenvalue_hermitian_part(dense);
    const double scale = 1.0 + dense.norm();
    r.worst_margin = std::max(r.worst_margin, lmax);
    if (lmax > tol * scale) ok = false;
  }
  if (trials == 0) r.worst_margin = 0.0;
  r.pass = ok && r.symmetry_defect <= tol;
  return r;
}

Multiplier schoenberg_multiplier(const Cocycle& c, const GNSModule& m, double t, SchoenbergExponent e) {
  const auto norms = cocycle_norms(c, m);
  Multiplier h_ad{m.group(), {}};
  for (const auto& q : norms) {
    CentralElement z = extract_central(q, 1e-9);
    if (e == SchoenbergExponent::Squared) z = z * z;
    h_ad.values.push_back(central_exp(z * Complex(-t)));
  }
  return convention_flip(h_ad);
}

std::vector<double> spectral_gap(const std::vector<CentralElement>& c, double tol) {
  std::vector<double> out;
  for (std::size_t s = 0; s < c.size(); ++s) {
    double lo = std::numeric_limits<double>::infinity();
    for (Complex z : c[s].scalars()) {
      if (std::abs(z.imag()) > tol || z.real() < -tol) {
        throw Error(ErrorCode::NotPositiveValue, "value at " + std::to_string(s) + " is not positive");
      }
      lo = std::min(lo, z.real());
    }
    out.push_back(lo);
  }
  return out;
}

std::vector<int> gap_sublevel(const std::vector<double>& gaps, double R) {
  std::vector<int> out;
  for (std::size_t s = 0; s < gaps.size(); ++s)
    if (gaps[s] <= R) out.push_back(static_cast<int>(s));
  return out;
}

}  // namespace gpm
