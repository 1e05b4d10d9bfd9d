#include <doctest.h>

#include <cmath>
#include <random>

#include "gpm/matalg.hpp"
#include "support.hpp"

using namespace gpm;
using gpm::testing::code_of;

TEST_CASE("block structure") {
  BlockStructure s({2, 3, 1});
  CHECK(s.block_count() == 3);
  CHECK(s.total_dim() == 6);
  CHECK(s.offset(2) == 5);
  CHECK(s.unit_count() == 14);
  CHECK(code_of([] { BlockStructure(std::vector<int>{}); }) == ErrorCode::StructureMismatch);
  CHECK(code_of([] { BlockStructure({2, 0}); }) == ErrorCode::StructureMismatch);
}

TEST_CASE("algebra operations agree with dense block-diagonal matrices") {
  BlockStructure s({2, 1, 3});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = AlgebraElement::random(s, rng);
    const auto b = AlgebraElement::random(s, rng);
    const CMatrix da = a.dense(s), db = b.dense(s);
    CHECK(((a * b).dense(s) - da * db).norm() < 1e-12);
    CHECK(((a + b).dense(s) - (da + db)).norm() < 1e-12);
    CHECK((a.adjoint().dense(s) - da.adjoint()).norm() < 1e-12);
    CHECK(((a * Complex(0, 2)).dense(s) - da * Complex(0, 2)).norm() < 1e-12);
  }
  const auto e = AlgebraElement::matrix_unit(s, 2, 0, 1);
  CHECK(e.dense(s)(3, 4) == Complex(1.0));
  CHECK(e.dense(s).cwiseAbs().sum() == doctest::Approx(1.0));
  CHECK((AlgebraElement::identity(s).dense(s) - CMatrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("centre") {
  BlockStructure s({2, 1});
  CentralElement c(std::vector<Complex>{Complex(1, 1), 3.0});
  const auto a = embed_central(c, s);
  CHECK(is_central(a));
  CHECK(extract_central(a) == c);
  CHECK_FALSE(is_central(AlgebraElement::matrix_unit(s, 0, 0, 1)));
  CHECK(code_of([&] { extract_central(AlgebraElement::matrix_unit(s, 0, 1, 1)); }) == ErrorCode::NotCentral);
  CHECK(c.norm() == doctest::Approx(3.0));
  CHECK(c.adjoint()[0] == Complex(1, -1));
  const auto ex = central_exp(c);
  CHECK(std::abs(ex[0] - std::exp(Complex(1, 1))) < 1e-12);
  CHECK(std::abs(ex[1] - std::exp(3.0)) < 1e-9);
}

TEST_CASE("positivity: eigenvalue oracle") {
  CMatrix m(2, 2);
  m << 2, 1, 1, 2;
  auto r = is_positive(m);
  CHECK(r.positive);
  CHECK(r.min_eigenvalue == doctest::Approx(1.0));
  CHECK(r.norm == doctest::Approx(3.0));
  m << 1, 2, 2, 1;
  r = is_positive(m);
  CHECK_FALSE(r.positive);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));

  // Gram matrices of random vectors are PSD and rank-deficient.
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  CMatrix v(6, 3);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j) v(i, j) = Complex(n01(rng), n01(rng));
  r = is_positive(v * v.adjoint(), 1e-8);
  CHECK(r.positive);
  CHECK(std::abs(r.min_eigenvalue) < 1e-10);

  CMatrix nh(2, 2);
  nh << 1, 1, 0, 1;
  CHECK(code_of([&] { is_positive(nh); }) == ErrorCode::NotHermitian);
  CHECK(max_eigenvalue_hermitian_part(nh) == doctest::Approx(1.5));

  // The tolerance scales with the norm.
  CMatrix big(2, 2);
  big << 1e6, 0, 0, -1e-4;
  CHECK(is_positive(big, 1e-9).positive);
  CHECK_FALSE(is_positive(big, 1e-12).positive);
}

TEST_CASE("operator matrix flattening layout") {
  BlockStructure s({1, 2});
  OperatorMatrix m(2, s);
  m.at(0, 1) = AlgebraElement::matrix_unit(s, 1, 0, 1);
  m.set_central(1, 0, CentralElement(std::vector<Complex>{5.0, 7.0}));
  const CMatrix f = m.flatten();
  CHECK(f.rows() == 6);
  CHECK(f(1, 3 + 2) == Complex(1.0));
  CHECK(f(3, 0) == Complex(5.0));
  CHECK(f(4, 1) == Complex(7.0));
  CHECK(f(5, 2) == Complex(7.0));
  CHECK(f.cwiseAbs().sum() == doctest::Approx(20.0));
}

TEST_CASE("tensor products") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const CMatrix k = kron(a, b);
  CMatrix expect(4, 4);
  expect << 0, 1, 0, 2,
            1, 0, 2, 0,
            0, 3, 0, 4,
            3, 0, 4, 0;
  CHECK((k - expect).norm() == 0.0);

  const auto t = tensor_algebra(BlockStructure({2, 1}), BlockStructure({1, 3}));
  CHECK(t.product.dims() == std::vector<int>{2, 6, 1, 3});
  std::mt19937_64 rng(4);
  const auto x = AlgebraElement::random(t.left, rng), x2 = AlgebraElement::random(t.left, rng);
  const auto y = AlgebraElement::random(t.right, rng), y2 = AlgebraElement::random(t.right, rng);
  // (x ⊗ y)(x2 ⊗ y2) = x x2 ⊗ y y2, and a ⊗ 1 commutes with 1 ⊗ b.
  CHECK((t.tensor(x, y) * t.tensor(x2, y2)).distance(t.tensor(x * x2, y * y2)) < 1e-12);
  CHECK((t.embed_left(x) * t.embed_right(y)).distance(t.embed_right(y) * t.embed_left(x)) < 1e-12);
  CHECK((t.embed_left(x) * t.embed_right(y)).distance(t.tensor(x, y)) < 1e-12);
  const CentralElement c(std::vector<Complex>{2.0, 3.0});
  CHECK(t.embed_left(c) == CentralElement(std::vector<Complex>{2.0, 2.0, 3.0, 3.0}));
  CHECK(t.embed_right(c) == CentralElement(std::vector<Complex>{2.0, 3.0, 2.0, 3.0}));
}

TEST_CASE("random unitaries are unitary") {
  std::mt19937_64 rng(6);
  for (int d = 1; d <= 4; ++d) {
    const CMatrix u = random_unitary(d, rng);
    CHECK((u * u.adjoint() - CMatrix::Identity(d, d)).norm() < 1e-12);
  }
}
