#pragma once

#include <functional>
#include <string>
#include <vector>

#include "llt/algebra.hpp"
#include "llt/linalg.hpp"
#include "llt/report.hpp"

namespace llt {

inline constexpr double kDefaultChartRadius = 0.5;

/// Linear representation of a Lie algebra, rep(e_i) = R_i.
class MatrixRep {
 public:
  /// Throws StructuralError on shape mismatch and ConstraintError
  /// ("representation" or "faithful") when the matrices fail the
  /// homomorphism law or are linearly dependent.
  MatrixRep(LieAlgebraData algebra, std::vector<Mat> matrices, double tol = kDefaultTolerance,
            double chart_radius = kDefaultChartRadius);

  /// Adjoint representation; CapabilityError if the center is nontrivial.
  static MatrixRep adjoint(const LieAlgebraData& algebra);
  /// Block-diagonal R (+) A of a faithful rep and a module action.
  static MatrixRep working(const MatrixRep& faithful, const ModuleAction& action);

  const LieAlgebraData& algebra() const { return algebra_; }
  const std::vector<Mat>& matrices() const { return matrices_; }
  int matrix_dim() const { return m_; }
  double chart_radius() const { return chart_radius_; }

  /// sum_i xi_i R_i
  Mat image(const Vec& xi) const;
  /// Least-squares coordinates of a matrix in span{R_i}; residual is the
  /// max-norm of what is left over.
  Vec preimage(const Mat& m, double* residual = nullptr) const;

 private:
  LieAlgebraData algebra_;
  std::vector<Mat> matrices_;
  int m_;
  double chart_radius_;
  Mat flat_;  // m^2 x n, column i is vec(R_i)
  Eigen::CompleteOrthogonalDecomposition<Mat> solver_;
};

/// Laws "homomorphism" and "faithful" (rank deficit of the stacked matrices).
ValidityReport check_matrix_rep(const LieAlgebraData& algebra, const std::vector<Mat>& matrices,
                                double tol = kDefaultTolerance);

/// exp(xi) in canonical coordinates of the first kind, with its matrix in a
/// fixed representation.
struct GroupElement {
  Vec coords;
  Mat matrix;
};

/// ChartError if |xi| >= chart radius.
GroupElement exp_element(const MatrixRep& rep, const Vec& xi);
GroupElement identity_element(const MatrixRep& rep);
GroupElement inverse(const MatrixRep& rep, const GroupElement& g);
/// Coordinates of log(M1 M2). ChartError when the product leaves the chart or
/// the logarithm is not in the span of the representation.
GroupElement group_mul(const MatrixRep& rep, const GroupElement& g1, const GroupElement& g2);
/// g h g^-1
GroupElement conjugate(const MatrixRep& rep, const GroupElement& g, const GroupElement& h);

/// Ad_g xi = exp(ad_{coords(g)}) xi from the structure constants.
Vec adjoint(const LieAlgebraData& algebra, const GroupElement& g, const Vec& xi);
/// rep^-1(M_g R(xi) M_g^-1), the cross-check route for adjoint.
Vec adjoint_via_rep(const MatrixRep& rep, const GroupElement& g, const Vec& xi);

/// The section s : G' -> g' realized as the identity on canonical
/// coordinates. DomainError if coords(g) is not in the subspace g'.
Vec s_map(const SubspaceBasis& g_prime, const GroupElement& g, double tol = kDefaultTolerance);

enum class DiffScheme { central, richardson };

struct DiffConfig {
  double step = 1e-4;
  DiffScheme scheme = DiffScheme::central;
  double tolerance = 1e-5;
};

/// Throws StructuralError if step <= 0.
void validate(const DiffConfig& cfg);
std::string to_string(DiffScheme scheme);
/// "central" or "richardson"; StructuralError otherwise.
DiffScheme diff_scheme_from_string(const std::string& name);

/// f'(0) by (f(h) - f(-h)) / 2h, or (4 D(h) - D(2h)) / 3 for Richardson.
/// Exceptions thrown by f inside the stencil propagate.
Vec derivative_at_identity(const std::function<Vec(double)>& f, const DiffConfig& cfg = {});
/// d^2 f / dt1 dt2 at 0 by the four-point stencil
/// (f(h,h) - f(h,-h) - f(-h,h) + f(-h,-h)) / 4h^2, with the same Richardson
/// option.
Vec mixed_second_derivative(const std::function<Vec(double, double)>& f,
                            const DiffConfig& cfg = {});

}  // namespace llt
