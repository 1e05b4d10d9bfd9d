#include "gpm/matalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpm/error.hpp"

namespace gpm {

BlockStructure::BlockStructure(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::StructureMismatch, "block structure needs at least one block");
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorCode::StructureMismatch, "block dimensions must be positive");
    offsets_.push_back(total_);
    total_ += d;
  }
}

int BlockStructure::unit_count() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0, [](int acc, int d) { return acc + d * d; });
}

// -- AlgebraElement ------------------------------------------------------------

AlgebraElement AlgebraElement::zero(const BlockStructure& s) {
  std::vector<CMatrix> b;
  for (int d : s.dims()) b.push_back(CMatrix::Zero(d, d));
  return AlgebraElement(std::move(b));
}

AlgebraElement AlgebraElement::identity(const BlockStructure& s) {
  std::vector<CMatrix> b;
  for (int d : s.dims()) b.push_back(CMatrix::Identity(d, d));
  return AlgebraElement(std::move(b));
}

AlgebraElement AlgebraElement::matrix_unit(const BlockStructure& s, int k, int r, int c) {
  AlgebraElement e = zero(s);
  e.block(k)(r, c) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::random(const BlockStructure& s, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  std::vector<CMatrix> b;
  for (int d : s.dims()) {
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = Complex(n01(rng), n01(rng));
    b.push_back(std::move(m));
  }
  return AlgebraElement(std::move(b));
}

bool AlgebraElement::matches(const BlockStructure& s) const {
  if (block_count() != s.block_count()) return false;
  for (int k = 0; k < block_count(); ++k)
    if (block(k).rows() != s.dim(k) || block(k).cols() != s.dim(k)) return false;
  return true;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return AlgebraElement(std::move(b));
}

CMatrix AlgebraElement::dense(const BlockStructure& s) const {
  CMatrix m = CMatrix::Zero(s.total_dim(), s.total_dim());
  for (int k = 0; k < s.block_count(); ++k) m.block(s.offset(k), s.offset(k), s.dim(k), s.dim(k)) = block(k);
  return m;
}

double AlgebraElement::distance(const AlgebraElement& other) const {
  if (block_count() != other.block_count()) throw Error(ErrorCode::StructureMismatch, "block count mismatch");
  double d = 0.0;
  for (int k = 0; k < block_count(); ++k) d = std::max(d, (block(k) - other.block(k)).norm());
  return d;
}

double AlgebraElement::max_abs() const {
  double d = 0.0;
  for (const auto& m : blocks_)
    if (m.size() > 0) d = std::max(d, m.cwiseAbs().maxCoeff());
  return d;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (int k = 0; k < block_count(); ++k) block(k) += o.block(k);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (int k = 0; k < block_count(); ++k) block(k) -= o.block(k);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.block_count() != b.block_count()) throw Error(ErrorCode::StructureMismatch, "block count mismatch");
  std::vector<CMatrix> out;
  for (int k = 0; k < a.block_count(); ++k) out.push_back(a.block(k) * b.block(k));
  return AlgebraElement(std::move(out));
}

// -- CentralElement ------------------------------------------------------------

CentralElement CentralElement::adjoint() const {
  CentralElement c = *this;
  for (auto& z : c.s_) z = std::conj(z);
  return c;
}

double CentralElement::norm() const {
  double n = 0.0;
  for (auto z : s_) n = std::max(n, std::abs(z));
  return n;
}

CentralElement& CentralElement::operator+=(const CentralElement& o) {
  for (std::size_t k = 0; k < s_.size(); ++k) s_[k] += o.s_[k];
  return *this;
}

CentralElement& CentralElement::operator-=(const CentralElement& o) {
  for (std::size_t k = 0; k < s_.size(); ++k) s_[k] -= o.s_[k];
  return *this;
}

CentralElement& CentralElement::operator*=(const CentralElement& o) {
  for (std::size_t k = 0; k < s_.size(); ++k) s_[k] *= o.s_[k];
  return *this;
}

CentralElement& CentralElement::operator*=(Complex c) {
  for (auto& z : s_) z *= c;
  return *this;
}

CentralElement central_exp(const CentralElement& c) {
  CentralElement out = c;
  for (int k = 0; k < out.size(); ++k) out[k] = std::exp(c[k]);
  return out;
}

bool is_central(const AlgebraElement& a, double tol) {
  for (int k = 0; k < a.block_count(); ++k) {
    const CMatrix& m = a.block(k);
    const auto d = m.rows();
    Complex mean = m.trace() / static_cast<double>(d);
    if ((m - mean * CMatrix::Identity(d, d)).norm() > tol) return false;
  }
  return true;
}

AlgebraElement embed_central(const CentralElement& c, const BlockStructure& s) {
  if (c.size() != s.block_count()) throw Error(ErrorCode::StructureMismatch, "central element has wrong length");
  std::vector<CMatrix> b;
  for (int k = 0; k < s.block_count(); ++k) b.push_back(c[k] * CMatrix::Identity(s.dim(k), s.dim(k)));
  return AlgebraElement(std::move(b));
}

CentralElement extract_central(const AlgebraElement& a, double tol) {
  if (!is_central(a, tol)) throw Error(ErrorCode::NotCentral, "element is not block-scalar");
  std::vector<Complex> s;
  for (int k = 0; k < a.block_count(); ++k) s.push_back(a.block(k).trace() / static_cast<double>(a.block(k).rows()));
  return CentralElement(std::move(s));
}

// -- OperatorMatrix --------------------------------------------------------------

OperatorMatrix::OperatorMatrix(int n, const BlockStructure& s)
    : n_(n), s_(s), entries_(static_cast<std::size_t>(n * n), AlgebraElement::zero(s)) {}

CMatrix OperatorMatrix::flatten() const {
  const int d = s_.total_dim();
  CMatrix m = CMatrix::Zero(n_ * d, n_ * d);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const AlgebraElement& a = at(i, j);
      for (int k = 0; k < s_.block_count(); ++k)
        m.block(i * d + s_.offset(k), j * d + s_.offset(k), s_.dim(k), s_.dim(k)) = a.block(k);
    }
  return m;
}

PositivityResult is_positive(const CMatrix& m, double tol) {
  PositivityResult r;
  r.dim = static_cast<int>(m.rows());
  if (m.rows() == 0) {
    r.positive = true;
    return r;
  }
  CMatrix h = 0.5 * (m + m.adjoint());
  r.hermitian_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  r.min_eigenvalue = ev(0);
  r.norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (r.hermitian_deviation > tol * (1.0 + r.norm)) {
    throw Error(ErrorCode::NotHermitian,
                "operator matrix deviates from Hermitian by " + std::to_string(r.hermitian_deviation));
  }
  r.positive = r.min_eigenvalue >= -tol * (1.0 + r.norm);
  return r;
}

PositivityResult is_positive(const OperatorMatrix& m, double tol) { return is_positive(m.flatten(), tol); }

double max_eigenvalue_hermitian_part(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// -- tensor products ---------------------------------------------------------------

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

TensorAlgebra tensor_algebra(const BlockStructure& s1, const BlockStructure& s2) {
  std::vector<int> dims;
  for (int d : s1.dims())
    for (int e : s2.dims()) dims.push_back(d * e);
  return TensorAlgebra{s1, s2, BlockStructure(std::move(dims))};
}

AlgebraElement TensorAlgebra::tensor(const AlgebraElement& a, const AlgebraElement& b) const {
  std::vector<CMatrix> out;
  for (int i = 0; i < left.block_count(); ++i)
    for (int j = 0; j < right.block_count(); ++j) out.push_back(kron(a.block(i), b.block(j)));
  return AlgebraElement(std::move(out));
}

AlgebraElement TensorAlgebra::embed_left(const AlgebraElement& a) const {
  return tensor(a, AlgebraElement::identity(right));
}

AlgebraElement TensorAlgebra::embed_right(const AlgebraElement& b) const {
  return tensor(AlgebraElement::identity(left), b);
}

CentralElement TensorAlgebra::embed_left(const CentralElement& a) const {
  std::vector<Complex> s;
  for (int i = 0; i < left.block_count(); ++i)
    for (int j = 0; j < right.block_count(); ++j) s.push_back(a[i]);
  return CentralElement(std::move(s));
}

CentralElement TensorAlgebra::embed_right(const CentralElement& b) const {
  std::vector<Complex> s;
  for (int i = 0; i < left.block_count(); ++i)
    for (int j = 0; j < right.block_count(); ++j) s.push_back(b[j]);
  return CentralElement(std::move(s));
}

CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n01(rng), n01(rng));
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  return q;
}

}  // namespace gpm
