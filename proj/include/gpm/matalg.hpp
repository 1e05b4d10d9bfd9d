#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gpm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultPsdTol = 1e-9;

/// ⊕ₖ M_{d_k}. Block order is the declared order.
class BlockStructure {
 public:
  BlockStructure() = default;
  /// Throws StructureMismatch for an empty list or a nonpositive dimension.
  explicit BlockStructure(std::vector<int> dims);

  static BlockStructure scalars() { return BlockStructure({1}); }
  /// C(X) with |X| = n.
  static BlockStructure diagonal(int n) { return BlockStructure(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  int block_count() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  int offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  int total_dim() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }
  /// Σ d_k², the number of matrix units.
  int unit_count() const;

  bool operator==(const BlockStructure& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<CMatrix> blocks) : blocks_(std::move(blocks)) {}

  static AlgebraElement zero(const BlockStructure& s);
  static AlgebraElement identity(const BlockStructure& s);
  /// E_{rc} inside block k.
  static AlgebraElement matrix_unit(const BlockStructure& s, int k, int r, int c);
  static AlgebraElement random(const BlockStructure& s, std::mt19937_64& rng);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const CMatrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }
  CMatrix& block(int k) { return blocks_[static_cast<std::size_t>(k)]; }
  bool matches(const BlockStructure& s) const;

  AlgebraElement adjoint() const;
  /// Block-diagonal (total_dim × total_dim) matrix.
  CMatrix dense(const BlockStructure& s) const;
  /// max over blocks of the Frobenius norm of the difference.
  double distance(const AlgebraElement& other) const;
  double max_abs() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(Complex s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  std::vector<CMatrix> blocks_;
};

/// Block-scalar element: the centre of ⊕ₖ M_{d_k} is ℂ^K.
class CentralElement {
 public:
  CentralElement() = default;
  explicit CentralElement(std::vector<Complex> scalars) : s_(std::move(scalars)) {}

  static CentralElement one(int k) { return CentralElement(std::vector<Complex>(static_cast<std::size_t>(k), 1.0)); }
  static CentralElement zero(int k) { return CentralElement(std::vector<Complex>(static_cast<std::size_t>(k), 0.0)); }
  static CentralElement constant(int k, Complex c) { return CentralElement(std::vector<Complex>(static_cast<std::size_t>(k), c)); }

  int size() const { return static_cast<int>(s_.size()); }
  Complex operator[](int k) const { return s_[static_cast<std::size_t>(k)]; }
  Complex& operator[](int k) { return s_[static_cast<std::size_t>(k)]; }
  const std::vector<Complex>& scalars() const { return s_; }

  CentralElement adjoint() const;
  /// max |scalar|, the C*-norm of a central element.
  double norm() const;
  double distance(const CentralElement& other) const { return (*this - other).norm(); }

  CentralElement& operator+=(const CentralElement& o);
  CentralElement& operator-=(const CentralElement& o);
  CentralElement& operator*=(const CentralElement& o);
  CentralElement& operator*=(Complex c);
  friend CentralElement operator+(CentralElement a, const CentralElement& b) { return a += b; }
  friend CentralElement operator-(CentralElement a, const CentralElement& b) { return a -= b; }
  friend CentralElement operator*(CentralElement a, const CentralElement& b) { return a *= b; }
  friend CentralElement operator*(CentralElement a, Complex c) { return a *= c; }
  bool operator==(const CentralElement&) const = default;

 private:
  std::vector<Complex> s_;
};

CentralElement central_exp(const CentralElement& c);

bool is_central(const AlgebraElement& a, double tol = 1e-12);
AlgebraElement embed_central(const CentralElement& c, const BlockStructure& s);
/// Throws NotCentral.
CentralElement extract_central(const AlgebraElement& a, double tol = 1e-12);

/// n×n grid of algebra elements over one block structure: an element of M_n(A).
class OperatorMatrix {
 public:
  OperatorMatrix(int n, const BlockStructure& s);

  int size() const { return n_; }
  const BlockStructure& structure() const { return s_; }
  AlgebraElement& at(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  const AlgebraElement& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  void set_central(int i, int j, const CentralElement& c) { at(i, j) = embed_central(c, s_); }

  /// (n·D)×(n·D) complex matrix, D = total_dim; entry (i,j) occupies the
  /// D×D tile at (i·D, j·D).
  CMatrix flatten() const;

 private:
  int n_;
  BlockStructure s_;
  std::vector<AlgebraElement> entries_;
};

struct PositivityResult {
  bool positive = false;
  double min_eigenvalue = 0.0;
  /// Spectral norm of the symmetrized matrix.
  double norm = 0.0;
  double hermitian_deviation = 0.0;
  int dim = 0;
};

/// Symmetrizes when max|M - M*| ≤ tol·(1+‖M‖), else throws NotHermitian.
/// Positive iff λ_min ≥ -tol·(1+‖M‖).
PositivityResult is_positive(const CMatrix& m, double tol = kDefaultPsdTol);
PositivityResult is_positive(const OperatorMatrix& m, double tol = kDefaultPsdTol);

/// Largest eigenvalue of the Hermitian part (M + M*)/2.
double max_eigenvalue_hermitian_part(const CMatrix& m);

/// A₁ ⊗ A₂ with blocks (i, j) ↦ index i·K₂ + j of dimension d_i·e_j.
struct TensorAlgebra {
  BlockStructure left;
  BlockStructure right;
  BlockStructure product;

  AlgebraElement embed_left(const AlgebraElement& a) const;   // a ⊗ 1
  AlgebraElement embed_right(const AlgebraElement& b) const;  // 1 ⊗ b
  AlgebraElement tensor(const AlgebraElement& a, const AlgebraElement& b) const;
  CentralElement embed_left(const CentralElement& a) const;
  CentralElement embed_right(const CentralElement& b) const;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
TensorAlgebra tensor_algebra(const BlockStructure& s1, const BlockStructure& s2);

/// Haar-ish random unitary of size d (QR of a complex Gaussian matrix).
CMatrix random_unitary(int d, std::mt19937_64& rng);

}  // namespace gpm
