#include "gpm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gpm/error.hpp"

namespace gpm {

Automorphism Automorphism::identity(const BlockStructure& s) {
  std::vector<int> perm(static_cast<std::size_t>(s.block_count()));
  std::vector<CMatrix> us;
  for (int k = 0; k < s.block_count(); ++k) {
    perm[k] = k;
    us.push_back(CMatrix::Identity(s.dim(k), s.dim(k)));
  }
  return Automorphism(std::move(perm), std::move(us));
}

Automorphism Automorphism::permutation(const BlockStructure& s, std::vector<int> perm) {
  std::vector<CMatrix> us;
  for (int k = 0; k < s.block_count(); ++k) us.push_back(CMatrix::Identity(s.dim(k), s.dim(k)));
  return Automorphism(std::move(perm), std::move(us));
}

Automorphism Automorphism::inner(std::vector<CMatrix> unitaries) {
  std::vector<int> perm(unitaries.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  return Automorphism(std::move(perm), std::move(unitaries));
}

void Automorphism::validate(const BlockStructure& s, double tol) const {
  const int K = s.block_count();
  if (static_cast<int>(perm_.size()) != K || static_cast<int>(unitaries_.size()) != K) {
    throw Error(ErrorCode::StructureMismatch, "automorphism has the wrong number of blocks");
  }
  std::vector<char> hit(static_cast<std::size_t>(K), 0);
  for (int j = 0; j < K; ++j) {
    int k = perm_[j];
    if (k < 0 || k >= K || hit[k]++) throw Error(ErrorCode::StructureMismatch, "block map is not a permutation");
    if (s.dim(j) != s.dim(k)) throw Error(ErrorCode::StructureMismatch, "block permutation changes a block dimension");
  }
  for (int k = 0; k < K; ++k) {
    const CMatrix& u = unitaries_[k];
    if (u.rows() != s.dim(k) || u.cols() != s.dim(k)) throw Error(ErrorCode::StructureMismatch, "unitary has wrong shape");
    if ((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() > tol) {
      throw Error(ErrorCode::StructureMismatch, "block " + std::to_string(k) + " matrix is not unitary");
    }
  }
}

AlgebraElement Automorphism::apply(const AlgebraElement& a) const {
  if (a.block_count() != static_cast<int>(perm_.size())) {
    throw Error(ErrorCode::StructureMismatch, "element and automorphism disagree on block count");
  }
  std::vector<CMatrix> out(perm_.size());
  for (std::size_t j = 0; j < perm_.size(); ++j) {
    const int k = perm_[j];
    const CMatrix& u = unitaries_[static_cast<std::size_t>(k)];
    if (a.block(static_cast<int>(j)).rows() != u.rows()) {
      throw Error(ErrorCode::StructureMismatch, "element block shape does not match automorphism");
    }
    out[static_cast<std::size_t>(k)] = u * a.block(static_cast<int>(j)) * u.adjoint();
  }
  return AlgebraElement(std::move(out));
}

CentralElement Automorphism::apply(const CentralElement& c) const { return apply_perm(perm_, c); }

Automorphism Automorphism::compose(const Automorphism& other) const {
  const std::size_t K = perm_.size();
  std::vector<int> perm(K);
  std::vector<int> inv(K);
  for (std::size_t j = 0; j < K; ++j) inv[static_cast<std::size_t>(perm_[j])] = static_cast<int>(j);
  for (std::size_t j = 0; j < K; ++j) perm[j] = perm_[static_cast<std::size_t>(other.perm_[j])];
  std::vector<CMatrix> us(K);
  for (std::size_t m = 0; m < K; ++m) us[m] = unitaries_[m] * other.unitaries_[static_cast<std::size_t>(inv[m])];
  return Automorphism(std::move(perm), std::move(us));
}

Automorphism Automorphism::inverse() const {
  const std::size_t K = perm_.size();
  std::vector<int> perm(K);
  std::vector<CMatrix> us(K);
  for (std::size_t j = 0; j < K; ++j) {
    const auto k = static_cast<std::size_t>(perm_[j]);
    perm[k] = static_cast<int>(j);
    us[j] = unitaries_[k].adjoint();
  }
  return Automorphism(std::move(perm), std::move(us));
}

namespace {

template <typename F>
void for_each_unit(const BlockStructure& s, F&& f) {
  for (int k = 0; k < s.block_count(); ++k)
    for (int r = 0; r < s.dim(k); ++r)
      for (int c = 0; c < s.dim(k); ++c) f(AlgebraElement::matrix_unit(s, k, r, c));
}

}  // namespace

bool maps_equal(const Automorphism& a, const Automorphism& b, const BlockStructure& s, double tol) {
  bool eq = true;
  for_each_unit(s, [&](const AlgebraElement& e) {
    if (eq && a.apply(e).distance(b.apply(e)) > tol) eq = false;
  });
  return eq;
}

double commutator_defect(const Automorphism& a, const Automorphism& b, const BlockStructure& s) {
  double worst = 0.0;
  for_each_unit(s, [&](const AlgebraElement& e) {
    worst = std::max(worst, a.apply(b.apply(e)).distance(b.apply(a.apply(e))));
  });
  return worst;
}

ActionTable trivial_action(const FiniteGroup& g, const BlockStructure& s) {
  return ActionTable{g, s, std::vector<Automorphism>(static_cast<std::size_t>(g.order()), Automorphism::identity(s))};
}

ActionTable diagonal_phase_action(const FiniteGroup& g, const BlockStructure& s,
                                  const std::vector<std::vector<std::vector<double>>>& phases) {
  if (static_cast<int>(phases.size()) != g.order()) {
    throw Error(ErrorCode::StructureMismatch, "diagonal-phases needs one entry per group element");
  }
  ActionTable t{g, s, {}};
  for (const auto& per_block : phases) {
    if (static_cast<int>(per_block.size()) != s.block_count()) {
      throw Error(ErrorCode::StructureMismatch, "diagonal-phases needs one phase list per block");
    }
    std::vector<CMatrix> us;
    for (int k = 0; k < s.block_count(); ++k) {
      if (static_cast<int>(per_block[k].size()) != s.dim(k)) {
        throw Error(ErrorCode::StructureMismatch, "diagonal-phases block " + std::to_string(k) + " has wrong length");
      }
      CMatrix u = CMatrix::Zero(s.dim(k), s.dim(k));
      for (int i = 0; i < s.dim(k); ++i) u(i, i) = std::polar(1.0, per_block[k][i]);
      us.push_back(std::move(u));
    }
    t.autos.push_back(Automorphism::inner(std::move(us)));
  }
  return t;
}

ActionTable point_permutation_action(const FiniteGroup& g, int n_points, const std::vector<std::vector<int>>& points) {
  if (static_cast<int>(points.size()) != g.order()) {
    throw Error(ErrorCode::StructureMismatch, "permutation-of-points needs one permutation per group element");
  }
  BlockStructure s = BlockStructure::diagonal(n_points);
  ActionTable t{g, s, {}};
  for (const auto& p : points) {
    Automorphism a = Automorphism::permutation(s, p);
    a.validate(s);
    t.autos.push_back(std::move(a));
  }
  return t;
}

void validate_action(const ActionTable& t, double tol) {
  const FiniteGroup& g = t.group;
  if (static_cast<int>(t.autos.size()) != g.order()) {
    throw Error(ErrorCode::StructureMismatch, "action table needs one automorphism per group element");
  }
  for (const auto& a : t.autos) a.validate(t.structure, tol);
  if (!maps_equal(t.at(g.identity()), Automorphism::identity(t.structure), t.structure, tol)) {
    throw Error(ErrorCode::NotHomomorphism, "identity element does not act trivially");
  }
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      const Automorphism composed = t.at(x).compose(t.at(y));
      if (!maps_equal(t.at(g.mul(x, y)), composed, t.structure, tol)) {
        throw Error(ErrorCode::NotHomomorphism,
                    "alpha(" + std::to_string(x) + "*" + std::to_string(y) + ") != alpha(" + std::to_string(x) +
                        ") o alpha(" + std::to_string(y) + ")");
      }
    }
}

bool actions_commute(const ActionTable& t1, const ActionTable& t2, double tol) {
  if (!(t1.structure == t2.structure)) throw Error(ErrorCode::StructureMismatch, "actions on different algebras");
  for (const auto& a : t1.autos)
    for (const auto& b : t2.autos)
      if (commutator_defect(a, b, t1.structure) > tol) return false;
  return true;
}

void setup_commutes_per_graph(const SimplicialGraph& graph, std::span<const ActionTable> actions, double tol) {
  if (static_cast<int>(actions.size()) != graph.size()) {
    throw Error(ErrorCode::StructureMismatch, "need one action per vertex");
  }
  for (const auto& [v, w] : graph.edges()) {
    const ActionTable& tv = actions[static_cast<std::size_t>(v)];
    const ActionTable& tw = actions[static_cast<std::size_t>(w)];
    for (int g = 0; g < tv.group.order(); ++g)
      for (int h = 0; h < tw.group.order(); ++h)
        if (commutator_defect(tv.at(g), tw.at(h), tv.structure) > tol) {
          throw Error(ErrorCode::EdgeViolation, "actions at vertices " + std::to_string(graph.label(v)) + " and " +
                                                    std::to_string(graph.label(w)) + " do not commute for (g,h)=(" +
                                                    std::to_string(g) + "," + std::to_string(h) + ")");
        }
  }
}

Automorphism act_letters(std::span<const Letter> w, std::span<const ActionTable> actions) {
  if (actions.empty()) throw Error(ErrorCode::StructureMismatch, "no actions");
  Automorphism out = Automorphism::identity(actions.front().structure);
  for (const Letter& l : w) out = out.compose(actions[static_cast<std::size_t>(l.vertex)].at(l.elem));
  return out;
}

Automorphism act_word(const GPElement& s, std::span<const ActionTable> actions) {
  return act_letters(s.letters(), actions);
}

std::vector<int> act_word_perm(std::span<const Letter> w, std::span<const ActionTable> actions) {
  const int K = actions.front().structure.block_count();
  std::vector<int> perm(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) perm[k] = k;
  // Composition α_{s1} ∘ … ∘ α_{sn}: apply the rightmost letter first.
  for (const Letter& l : w) {
    const auto& p = actions[static_cast<std::size_t>(l.vertex)].at(l.elem).perm();
    std::vector<int> next(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j) next[j] = perm[static_cast<std::size_t>(p[j])];
    perm = std::move(next);
  }
  return perm;
}

CentralElement apply_perm(const std::vector<int>& perm, const CentralElement& c) {
  CentralElement out = c;
  for (std::size_t j = 0; j < perm.size(); ++j) out[perm[j]] = c[static_cast<int>(j)];
  return out;
}

}  // namespace gpm
