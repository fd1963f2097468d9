#pragma once

#include <Eigen/Dense>
#include <vector>

namespace llt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Largest absolute entry; 0 for empty objects.
double max_abs(const Mat& m);
double max_abs(const Vec& v);

/// exp(A) by scaling and squaring with a truncated Taylor series.
Mat expm(const Mat& a);

/// Principal square root by the Denman-Beavers iteration. Throws ChartError
/// if the iteration does not converge.
Mat sqrtm(const Mat& a);

/// Principal logarithm by inverse scaling and squaring (repeated square roots
/// followed by a Gauss-Legendre quadrature of log(I + Y)). Throws ChartError
/// if A has an eigenvalue on the closed negative real axis or is too far from
/// the identity after the square roots.
Mat logm(const Mat& a);

/// Orthonormal basis of ker(L) (columns), using singular values below
/// rel_tol * max(sigma_max, scale) as zero. Pass the magnitude of the data L
/// was built from as scale so that a map which is zero up to roundoff has a
/// full kernel. A zero matrix has the whole space as kernel.
Mat kernel_basis(const Mat& l, double rel_tol, double scale = 0.0);

/// Numerical rank with the same relative threshold as kernel_basis.
int numerical_rank(const Mat& m, double rel_tol, double scale = 0.0);

/// Max-norm residual of the least-squares projection of b onto span(cols).
double projection_residual(const Mat& cols, const Vec& b);

/// Block-diagonal assembly.
Mat block_diag(const Mat& a, const Mat& b);

}  // namespace llt
