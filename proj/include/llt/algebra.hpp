#pragma once

#include <string>
#include <vector>

#include "llt/linalg.hpp"
#include "llt/report.hpp"

namespace llt {

inline constexpr double kDefaultTolerance = 1e-9;

/// A real Lie algebra given by structure constants in a fixed basis:
/// [e_i, e_j] = sum_k C[i][j][k] e_k. Stored dense.
class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  /// `constants` is the flattened n*n*n tensor, index (i*n + j)*n + k.
  /// Empty `labels` get the defaults e0, e1, ...
  LieAlgebraData(int dim, std::vector<std::string> labels, std::vector<double> constants);

  static LieAlgebraData abelian(int dim);
  /// Structure constants of span(basis) under the matrix commutator. Throws
  /// StructuralError if the span is not closed or the basis is dependent.
  static LieAlgebraData from_matrix_basis(const std::vector<Mat>& basis,
                                          std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& constants() const { return constants_; }

  double c(int i, int j, int k) const { return constants_[(i * dim_ + j) * dim_ + k]; }

  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad_x : y -> [x, y].
  Mat ad(const Vec& x) const;
  Mat ad_basis(int i) const;
  Vec basis_vector(int i) const { return Vec::Unit(dim_, i); }

  LieAlgebraData scaled(double factor) const;
  /// Change of basis e'_i = sum_j q(j, i) e_j. q must be invertible.
  LieAlgebraData change_basis(const Mat& q) const;

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> constants_;
};

/// A representation of a Lie algebra on R^d: e_i . v = A_i v.
class ModuleAction {
 public:
  ModuleAction() = default;
  ModuleAction(LieAlgebraData algebra, int dim_v, std::vector<Mat> matrices);

  static ModuleAction adjoint(const LieAlgebraData& algebra);
  static ModuleAction trivial(const LieAlgebraData& algebra, int dim_v);

  const LieAlgebraData& algebra() const { return algebra_; }
  int dim_v() const { return dim_v_; }
  const std::vector<Mat>& matrices() const { return matrices_; }
  const Mat& matrix(int i) const { return matrices_[i]; }

  /// sum_i x_i A_i
  Mat act(const Vec& x) const;

 private:
  LieAlgebraData algebra_;
  int dim_v_ = 0;
  std::vector<Mat> matrices_;
};

/// A bilinear bracket on R^d: [e_i, e_j] = sum_k B[i][j][k] e_k.
class LeibnizAlgebraData {
 public:
  LeibnizAlgebraData() = default;
  LeibnizAlgebraData(int dim, std::vector<double> tensor);
  static LeibnizAlgebraData from_lie(const LieAlgebraData& lie);

  int dim() const { return dim_; }
  const std::vector<double>& tensor() const { return tensor_; }
  double b(int i, int j, int k) const { return tensor_[(i * dim_ + j) * dim_ + k]; }
  Vec bracket(const Vec& u, const Vec& v) const;

 private:
  int dim_ = 0;
  std::vector<double> tensor_;
};

/// Linearly independent vectors spanning a subspace of R^ambient_dim.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  SubspaceBasis(int ambient_dim, std::vector<Vec> vectors, double tol = kDefaultTolerance);
  static SubspaceBasis full(int ambient_dim);
  static SubspaceBasis from_columns(const Mat& cols, double tol = kDefaultTolerance);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(vectors_.size()); }
  bool empty() const { return vectors_.empty(); }
  const std::vector<Vec>& vectors() const { return vectors_; }
  /// ambient_dim x dim matrix with the basis vectors as columns.
  Mat matrix() const;

  double membership_residual(const Vec& x) const;
  bool contains(const Vec& x, double tol = kDefaultTolerance) const;

 private:
  int ambient_dim_ = 0;
  std::vector<Vec> vectors_;
};

ValidityReport check_lie_algebra(const LieAlgebraData& alg, double tol = kDefaultTolerance);
ValidityReport check_module(const ModuleAction& act, double tol = kDefaultTolerance);
/// Also sets the informational flag "antisymmetric".
ValidityReport check_leibniz(const LeibnizAlgebraData& leib, double tol = kDefaultTolerance);

/// Max projection residual of [x, y] onto span(sub) over basis pairs.
double bracket_closure_residual(const LieAlgebraData& alg, const SubspaceBasis& sub);
bool bracket_closure_check(const LieAlgebraData& alg, const SubspaceBasis& sub,
                           double tol = kDefaultTolerance);

/// Basis of the center {x : ad_x = 0}.
SubspaceBasis center(const LieAlgebraData& alg, double tol = kDefaultTolerance);

}  // namespace llt
