#include <doctest.h>

#include <numbers>
#include <random>

#include "gpm/dynamics.hpp"
#include "support.hpp"

using namespace gpm;
using gpm::testing::code_of;

namespace {

CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CMatrix swap2() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Automorphism random_auto(const BlockStructure& s, std::mt19937_64& rng) {
  // Swap the two blocks of equal size, then conjugate.
  std::vector<CMatrix> u;
  for (int k = 0; k < s.block_count(); ++k) u.push_back(random_unitary(s.dim(k), rng));
  std::bernoulli_distribution coin(0.5);
  return Automorphism(coin(rng) ? std::vector<int>{1, 0, 2} : std::vector<int>{0, 1, 2}, u);
}

}  // namespace

TEST_CASE("apply follows the defining formula") {
  const BlockStructure s({2, 2, 1});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Automorphism al = random_auto(s, rng);
    al.validate(s);
    const auto a = AlgebraElement::random(s, rng);
    const auto out = al.apply(a);
    for (int j = 0; j < 3; ++j) {
      const int k = al.perm()[j];
      const CMatrix& U = al.unitaries()[k];
      CHECK((out.block(k) - U * a.block(j) * U.adjoint()).norm() < 1e-12);
    }
    // Multiplicative and *-preserving.
    const auto b = AlgebraElement::random(s, rng);
    CHECK(al.apply(a * b).distance(al.apply(a) * al.apply(b)) < 1e-12);
    CHECK(al.apply(a.adjoint()).distance(al.apply(a).adjoint()) < 1e-12);
    // On the centre only the permutation is visible.
    const CentralElement c(std::vector<Complex>{1.0, 2.0, 3.0});
    CHECK(al.apply(c).distance(extract_central(al.apply(embed_central(c, s)), 1e-10)) < 1e-12);
  }
}

TEST_CASE("compose and inverse match sequential application") {
  const BlockStructure s({2, 2, 1});
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Automorphism f = random_auto(s, rng), g = random_auto(s, rng);
    const auto a = AlgebraElement::random(s, rng);
    CHECK(f.compose(g).apply(a).distance(f.apply(g.apply(a))) < 1e-12);
    CHECK(f.inverse().apply(f.apply(a)).distance(a) < 1e-12);
    CHECK(maps_equal(f.compose(f.inverse()), Automorphism::identity(s), s));
  }
  CHECK(maps_equal(Automorphism::inner({diag2(1, -1)}), Automorphism::inner({diag2(-1, 1)}), BlockStructure({2})));
}

TEST_CASE("validation of automorphisms") {
  const BlockStructure s({2, 1});
  CHECK(code_of([&] { Automorphism({1, 0}, {CMatrix::Identity(2, 2), CMatrix::Identity(1, 1)}).validate(s); }) ==
        ErrorCode::StructureMismatch);
  CHECK(code_of([&] { Automorphism({0, 1}, {diag2(1, 2), CMatrix::Identity(1, 1)}).validate(s); }) ==
        ErrorCode::StructureMismatch);
  CHECK(code_of([&] { Automorphism({0, 0}, {CMatrix::Identity(2, 2), CMatrix::Identity(1, 1)}).validate(s); }) ==
        ErrorCode::StructureMismatch);
  CHECK(code_of([&] { Automorphism::identity(s).apply(AlgebraElement::zero(BlockStructure({2}))); }) ==
        ErrorCode::StructureMismatch);
}

TEST_CASE("actions: homomorphism and commutation checks") {
  const BlockStructure m2({2});
  const auto z4 = FiniteGroup::cyclic(4), z2 = FiniteGroup::cyclic(2);
  // g -> Ad(diag(1, i)) has order 4 as a map.
  std::vector<std::vector<std::vector<double>>> quarter;
  for (int k = 0; k < 4; ++k) quarter.push_back({{0.0, k * std::numbers::pi / 2}});
  const ActionTable rot = diagonal_phase_action(z4, m2, quarter);
  validate_action(rot);

  ActionTable bad{z2, m2, {Automorphism::identity(m2), Automorphism::inner({diag2(1, Complex(0, 1))})}};
  CHECK(code_of([&] { validate_action(bad); }) == ErrorCode::NotHomomorphism);

  const ActionTable flip{z2, m2, {Automorphism::identity(m2), Automorphism::inner({swap2()})}};
  validate_action(flip);
  const ActionTable sign{z2, m2, {Automorphism::identity(m2), Automorphism::inner({diag2(1, -1)})}};
  // Ad(X) and Ad(diag(1,-1)) commute as maps although the matrices anticommute.
  CHECK(actions_commute(flip, sign));
  CHECK(commutator_defect(flip.at(1), sign.at(1), m2) < 1e-12);
  CHECK_FALSE(actions_commute(flip, rot));
  CHECK(commutator_defect(flip.at(1), rot.at(1), m2) > 0.5);

  const SimplicialGraph g(GraphData{{0, 1, 2}, {{0, 1}}});
  const std::vector<ActionTable> ok{flip, sign, rot};
  setup_commutes_per_graph(g, ok);
  const std::vector<ActionTable> broken{flip, rot, sign};
  CHECK(code_of([&] { setup_commutes_per_graph(g, broken); }) == ErrorCode::EdgeViolation);
}

TEST_CASE("point permutation actions") {
  const auto z2 = FiniteGroup::cyclic(2);
  const ActionTable t = point_permutation_action(z2, 3, {{0, 1, 2}, {1, 0, 2}});
  validate_action(t);
  const CentralElement f(std::vector<Complex>{1.0, 2.0, 3.0});
  CHECK(t.at(1).apply(f) == CentralElement(std::vector<Complex>{2.0, 1.0, 3.0}));
  CHECK(code_of([&] { validate_action(point_permutation_action(FiniteGroup::cyclic(3), 3, {{0, 1, 2}, {1, 0, 2}, {1, 0, 2}})); }) ==
        ErrorCode::NotHomomorphism);
}

TEST_CASE("word actions") {
  const BlockStructure s({1, 1, 1});
  const auto z3 = FiniteGroup::cyclic(3), z2 = FiniteGroup::cyclic(2);
  const std::vector<ActionTable> acts{point_permutation_action(z3, 3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}),
                                      point_permutation_action(z2, 3, {{0, 1, 2}, {1, 0, 2}})};
  const LetterSeq w{{0, 1}, {1, 1}, {0, 2}};
  const Automorphism a = act_letters(w, acts);
  const Automorphism manual = acts[0].at(1).compose(acts[1].at(1)).compose(acts[0].at(2));
  CHECK(maps_equal(a, manual, s));
  CHECK(act_word_perm(w, acts) == a.perm());
  const CentralElement c(std::vector<Complex>{1.0, 2.0, 3.0});
  CHECK(apply_perm(a.perm(), c) == a.apply(c));
  CHECK(act_word_perm({}, acts) == std::vector<int>{0, 1, 2});
}
