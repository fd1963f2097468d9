#include "llt/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "llt/report.hpp"

namespace llt {

namespace {

constexpr int kQuadratureNodes = 8;

struct GaussLegendre {
  std::array<double, kQuadratureNodes> nodes{};    // on [0, 1]
  std::array<double, kQuadratureNodes> weights{};  // sum to 1
};

// Newton iteration on P_m, mapped from [-1, 1] to [0, 1].
GaussLegendre make_gauss_legendre() {
  GaussLegendre gl;
  constexpr int m = kQuadratureNodes;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = 0.5 * (x + 1.0);
    gl.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre gl = make_gauss_legendre();
  return gl;
}

double norm1(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

void require_square(const Mat& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw StructuralError(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Mat expm(const Mat& a) {
  require_square(a, "expm");
  const auto n = a.rows();
  if (n == 0) return a;
  const double norm = norm1(a);
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Mat scaled = a / std::ldexp(1.0, squarings);

  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (norm1(term) <= 1e-18 * norm1(result)) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Mat sqrtm(const Mat& a) {
  require_square(a, "sqrtm");
  const auto n = a.rows();
  Mat y = a;
  Mat z = Mat::Identity(n, n);
  for (int iter = 0; iter < 100; ++iter) {
    const Mat y_inv = y.partialPivLu().inverse();
    const Mat z_inv = z.partialPivLu().inverse();
    const Mat y_next = 0.5 * (y + z_inv);
    z = 0.5 * (z + y_inv);
    const double change = norm1(y_next - y);
    y = y_next;
    if (!y.allFinite()) break;
    if (change <= 1e-15 * std::max(1.0, norm1(y))) return y;
  }
  throw ChartError("matrix square root iteration did not converge");
}

Mat logm(const Mat& a) {
  require_square(a, "logm");
  const auto n = a.rows();
  if (n == 0) return a;
  if (!a.allFinite()) throw ChartError("logm: non-finite matrix");

  // The principal logarithm exists only away from the closed negative axis.
  const Eigen::EigenSolver<Mat> eig(a, /*computeEigenvectors=*/false);
  const double scale = std::max(1.0, norm1(a));
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    const auto lambda = eig.eigenvalues()[i];
    if (std::abs(lambda.imag()) <= 1e-12 * scale && lambda.real() <= 1e-12 * scale) {
      throw ChartError("logm: eigenvalue on the closed negative real axis");
    }
  }

  const Mat identity = Mat::Identity(n, n);
  Mat x = a;
  int roots = 0;
  while (norm1(x - identity) > 0.25 && roots < 60) {
    x = sqrtm(x);
    ++roots;
  }
  const Mat y = x - identity;
  if (norm1(y) >= 0.9) {
    throw ChartError("logm: matrix too far from identity after square roots");
  }

  // log(I + Y) = int_0^1 Y (I + tY)^{-1} dt
  const auto& gl = gauss_legendre();
  Mat log_x = Mat::Zero(n, n);
  for (int j = 0; j < kQuadratureNodes; ++j) {
    const Mat shifted = identity + gl.nodes[j] * y;
    log_x += gl.weights[j] * shifted.partialPivLu().solve(y);
  }
  return std::ldexp(1.0, roots) * log_x;
}

Mat kernel_basis(const Mat& l, double rel_tol, double scale) {
  const auto cols = l.cols();
  if (cols == 0) return Mat(0, 0);
  if (l.rows() == 0 || max_abs(l) == 0.0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(l, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double threshold = rel_tol * std::max(sigma(0), scale);
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

int numerical_rank(const Mat& m, double rel_tol, double scale) {
  if (m.size() == 0 || max_abs(m) == 0.0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sigma = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rel_tol * std::max(sigma(0), scale)) ++rank;
  }
  return rank;
}

double projection_residual(const Mat& cols, const Vec& b) {
  if (cols.cols() == 0) return max_abs(b);
  const Vec coeffs = cols.completeOrthogonalDecomposition().solve(b);
  return max_abs(Vec(cols * coeffs - b));
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace llt
