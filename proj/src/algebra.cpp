#include "llt/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace llt {

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return labels;
}

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace

// ---------------------------------------------------------------------------
// LieAlgebraData

LieAlgebraData::LieAlgebraData(int dim, std::vector<std::string> labels,
                               std::vector<double> constants)
    : dim_(dim), labels_(std::move(labels)), constants_(std::move(constants)) {
  if (dim <= 0) throw StructuralError("Lie algebra dimension must be positive");
  if (labels_.empty()) labels_ = default_labels(dim);
  if (static_cast<int>(labels_.size()) != dim) {
    throw StructuralError("Lie algebra: expected " + std::to_string(dim) +
                          " basis labels, got " + std::to_string(labels_.size()));
  }
  const std::size_t expected = static_cast<std::size_t>(dim) * dim * dim;
  if (constants_.size() != expected) {
    throw StructuralError("Lie algebra: structure constant tensor has " +
                          std::to_string(constants_.size()) + " entries, expected " +
                          std::to_string(expected));
  }
}

LieAlgebraData LieAlgebraData::abelian(int dim) {
  return {dim, {}, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0)};
}

LieAlgebraData LieAlgebraData::from_matrix_basis(const std::vector<Mat>& basis,
                                                 std::vector<std::string> labels) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw StructuralError("from_matrix_basis: empty basis");
  const auto rows = basis[0].rows();
  Mat flat(basis[0].size(), n);
  for (int i = 0; i < n; ++i) {
    if (basis[i].rows() != rows || basis[i].cols() != rows) {
      throw StructuralError("from_matrix_basis: matrices must be square of equal size");
    }
    flat.col(i) = flatten(basis[i]);
  }
  if (numerical_rank(flat, 1e-12) != n) {
    throw StructuralError("from_matrix_basis: basis matrices are linearly dependent");
  }
  const auto solver = flat.colPivHouseholderQr();
  std::vector<double> constants(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Mat comm = basis[i] * basis[j] - basis[j] * basis[i];
      const Vec target = flatten(comm);
      const Vec coeffs = solver.solve(target);
      if (max_abs(Vec(flat * coeffs - target)) > 1e-10 * std::max(1.0, max_abs(target))) {
        throw StructuralError("from_matrix_basis: span is not closed under commutators");
      }
      for (int k = 0; k < n; ++k) constants[(i * n + j) * n + k] = coeffs(k);
    }
  }
  return {n, std::move(labels), std::move(constants)};
}

Vec LieAlgebraData::bracket(const Vec& x, const Vec& y) const { return ad(x) * y; }

Mat LieAlgebraData::ad(const Vec& x) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) out(k, j) += x(i) * c(i, j, k);
    }
  }
  return out;
}

Mat LieAlgebraData::ad_basis(int i) const { return ad(basis_vector(i)); }

LieAlgebraData LieAlgebraData::scaled(double factor) const {
  auto constants = constants_;
  for (auto& c : constants) c *= factor;
  return {dim_, labels_, std::move(constants)};
}

LieAlgebraData LieAlgebraData::change_basis(const Mat& q) const {
  if (q.rows() != dim_ || q.cols() != dim_) {
    throw StructuralError("change_basis: matrix shape does not match algebra");
  }
  const Mat q_inv = q.inverse();
  std::vector<double> constants(constants_.size(), 0.0);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      const Vec image = q_inv * bracket(q.col(i), q.col(j));
      for (int k = 0; k < dim_; ++k) constants[(i * dim_ + j) * dim_ + k] = image(k);
    }
  }
  return {dim_, labels_, std::move(constants)};
}

// ---------------------------------------------------------------------------
// ModuleAction

ModuleAction::ModuleAction(LieAlgebraData algebra, int dim_v, std::vector<Mat> matrices)
    : algebra_(std::move(algebra)), dim_v_(dim_v), matrices_(std::move(matrices)) {
  if (dim_v < 0) throw StructuralError("module dimension must be non-negative");
  if (static_cast<int>(matrices_.size()) != algebra_.dim()) {
    throw StructuralError("module: expected " + std::to_string(algebra_.dim()) +
                          " action matrices, got " + std::to_string(matrices_.size()));
  }
  for (const auto& m : matrices_) {
    if (m.rows() != dim_v || m.cols() != dim_v) {
      throw StructuralError("module: action matrix is not " + std::to_string(dim_v) + "x" +
                            std::to_string(dim_v));
    }
  }
}

ModuleAction ModuleAction::adjoint(const LieAlgebraData& algebra) {
  std::vector<Mat> mats;
  for (int i = 0; i < algebra.dim(); ++i) mats.push_back(algebra.ad_basis(i));
  return {algebra, algebra.dim(), std::move(mats)};
}

ModuleAction ModuleAction::trivial(const LieAlgebraData& algebra, int dim_v) {
  return {algebra, dim_v, std::vector<Mat>(algebra.dim(), Mat::Zero(dim_v, dim_v))};
}

Mat ModuleAction::act(const Vec& x) const {
  Mat out = Mat::Zero(dim_v_, dim_v_);
  for (int i = 0; i < algebra_.dim(); ++i) {
    if (x(i) != 0.0) out += x(i) * matrices_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// LeibnizAlgebraData

LeibnizAlgebraData::LeibnizAlgebraData(int dim, std::vector<double> tensor)
    : dim_(dim), tensor_(std::move(tensor)) {
  if (dim < 0) throw StructuralError("Leibniz algebra dimension must be non-negative");
  if (tensor_.size() != static_cast<std::size_t>(dim) * dim * dim) {
    throw StructuralError("Leibniz algebra: bracket tensor has wrong size");
  }
}

LeibnizAlgebraData LeibnizAlgebraData::from_lie(const LieAlgebraData& lie) {
  return {lie.dim(), lie.constants()};
}

Vec LeibnizAlgebraData::bracket(const Vec& u, const Vec& v) const {
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v(j) == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out(k) += u(i) * v(j) * b(i, j, k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis::SubspaceBasis(int ambient_dim, std::vector<Vec> vectors, double tol)
    : ambient_dim_(ambient_dim), vectors_(std::move(vectors)) {
  for (const auto& v : vectors_) {
    if (v.size() != ambient_dim) {
      throw StructuralError("subspace basis vector has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(ambient_dim));
    }
  }
  if (!vectors_.empty() && numerical_rank(matrix(), tol) != dim()) {
    throw StructuralError("subspace basis vectors are linearly dependent");
  }
}

SubspaceBasis SubspaceBasis::full(int ambient_dim) {
  std::vector<Vec> vecs;
  for (int i = 0; i < ambient_dim; ++i) vecs.push_back(Vec::Unit(ambient_dim, i));
  return {ambient_dim, std::move(vecs)};
}

SubspaceBasis SubspaceBasis::from_columns(const Mat& cols, double tol) {
  std::vector<Vec> vecs;
  for (int j = 0; j < cols.cols(); ++j) vecs.emplace_back(cols.col(j));
  return {static_cast<int>(cols.rows()), std::move(vecs), tol};
}

Mat SubspaceBasis::matrix() const {
  Mat m(ambient_dim_, dim());
  for (int j = 0; j < dim(); ++j) m.col(j) = vectors_[j];
  return m;
}

double SubspaceBasis::membership_residual(const Vec& x) const {
  if (x.size() != ambient_dim_) throw StructuralError("membership test: length mismatch");
  return projection_residual(matrix(), x);
}

bool SubspaceBasis::contains(const Vec& x, double tol) const {
  return membership_residual(x) <= tol;
}

// ---------------------------------------------------------------------------
// Checkers

ValidityReport check_lie_algebra(const LieAlgebraData& alg, double tol) {
  ValidityReport report;
  const int n = alg.dim();
  report.touch("antisymmetry");
  report.touch("jacobi");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        report.record("antisymmetry", {i, j, k}, std::abs(alg.c(i, j, k) + alg.c(j, i, k)), tol);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double worst = 0.0;
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += alg.c(i, j, m) * alg.c(m, k, l) + alg.c(j, k, m) * alg.c(m, i, l) +
                   alg.c(k, i, m) * alg.c(m, j, l);
          }
          worst = std::max(worst, std::abs(sum));
        }
        report.record("jacobi", {i, j, k}, worst, tol);
      }
    }
  }
  return report;
}

ValidityReport check_module(const ModuleAction& act, double tol) {
  ValidityReport report;
  report.touch("homomorphism");
  const auto& alg = act.algebra();
  const int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Mat lhs = act.act(alg.bracket(alg.basis_vector(i), alg.basis_vector(j)));
      const Mat rhs = act.matrix(i) * act.matrix(j) - act.matrix(j) * act.matrix(i);
      report.record("homomorphism", {i, j}, max_abs(Mat(lhs - rhs)), tol);
    }
  }
  return report;
}

ValidityReport check_leibniz(const LeibnizAlgebraData& leib, double tol) {
  ValidityReport report;
  report.touch("leibniz");
  const int d = leib.dim();
  bool antisymmetric = true;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        if (std::abs(leib.b(i, j, k) + leib.b(j, i, k)) > tol) antisymmetric = false;
      }
    }
  }
  report.flags["antisymmetric"] = antisymmetric;
  for (int i = 0; i < d; ++i) {
    const Vec u = Vec::Unit(d, i);
    for (int j = 0; j < d; ++j) {
      const Vec v = Vec::Unit(d, j);
      const Vec uv = leib.bracket(u, v);
      for (int k = 0; k < d; ++k) {
        const Vec w = Vec::Unit(d, k);
        const Vec lhs = leib.bracket(u, leib.bracket(v, w));
        const Vec rhs = leib.bracket(uv, w) + leib.bracket(v, leib.bracket(u, w));
        report.record("leibniz", {i, j, k}, max_abs(Vec(lhs - rhs)), tol);
      }
    }
  }
  return report;
}

double bracket_closure_residual(const LieAlgebraData& alg, const SubspaceBasis& sub) {
  if (sub.ambient_dim() != alg.dim()) {
    throw StructuralError("bracket_closure_check: subspace ambient dimension mismatch");
  }
  double worst = 0.0;
  const Mat basis = sub.matrix();
  for (int a = 0; a < sub.dim(); ++a) {
    for (int b = 0; b < sub.dim(); ++b) {
      const Vec br = alg.bracket(sub.vectors()[a], sub.vectors()[b]);
      worst = std::max(worst, projection_residual(basis, br));
    }
  }
  return worst;
}

bool bracket_closure_check(const LieAlgebraData& alg, const SubspaceBasis& sub, double tol) {
  return bracket_closure_residual(alg, sub) <= tol;
}

SubspaceBasis center(const LieAlgebraData& alg, double tol) {
  const int n = alg.dim();
  Mat map(n * n, n);
  double scale = 0.0;
  for (double c : alg.constants()) scale = std::max(scale, std::abs(c));
  for (int i = 0; i < n; ++i) map.col(i) = flatten(alg.ad_basis(i));
  return SubspaceBasis::from_columns(kernel_basis(map, tol, scale));
}

}  // namespace llt
