#include "llt/local_lie.hpp"

#include <cmath>

namespace llt {

namespace {

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace

ValidityReport check_matrix_rep(const LieAlgebraData& algebra, const std::vector<Mat>& matrices,
                                double tol) {
  if (matrices.empty() && algebra.dim() > 0) {
    throw StructuralError("representation: no matrices supplied");
  }
  const int m = matrices.empty() ? 0 : static_cast<int>(matrices[0].rows());
  auto report = check_module(ModuleAction(algebra, m, matrices), tol);
  const int n = algebra.dim();
  report.touch("faithful");
  if (n > 0) {
    Mat flat(static_cast<Eigen::Index>(m) * m, n);
    for (int i = 0; i < n; ++i) flat.col(i) = flatten(matrices[i]);
    const int rank = numerical_rank(flat, 1e-10);
    if (rank < n) report.fail("faithful", {rank}, n - rank);
  }
  return report;
}

MatrixRep::MatrixRep(LieAlgebraData algebra, std::vector<Mat> matrices, double tol,
                     double chart_radius)
    : algebra_(std::move(algebra)), matrices_(std::move(matrices)), chart_radius_(chart_radius) {
  if (!(chart_radius_ > 0.0)) throw StructuralError("representation: chart radius must be positive");
  auto report = check_matrix_rep(algebra_, matrices_, tol);
  if (!report.law_passed("faithful")) {
    const double r = report.residual("faithful");
    throw ConstraintError("faithful", r, std::move(report));
  }
  if (!report.passed) {
    const double r = report.max_residual;
    throw ConstraintError("representation", r, std::move(report));
  }
  m_ = matrices_.empty() ? 0 : static_cast<int>(matrices_[0].rows());
  const int n = algebra_.dim();
  flat_.resize(static_cast<Eigen::Index>(m_) * m_, n);
  for (int i = 0; i < n; ++i) flat_.col(i) = flatten(matrices_[i]);
  solver_.compute(flat_);
}

MatrixRep MatrixRep::adjoint(const LieAlgebraData& algebra) {
  const auto z = center(algebra);
  if (z.dim() > 0) {
    throw CapabilityError("the algebra has a " + std::to_string(z.dim()) +
                          "-dimensional center, so its adjoint representation is not faithful; "
                          "supply a faithful representation (\"faithful_rep\")");
  }
  return {algebra, ModuleAction::adjoint(algebra).matrices()};
}

MatrixRep MatrixRep::working(const MatrixRep& faithful, const ModuleAction& action) {
  if (action.algebra().constants() != faithful.algebra().constants()) {
    throw StructuralError("working representation: module is over a different algebra");
  }
  std::vector<Mat> blocks;
  for (int i = 0; i < faithful.algebra().dim(); ++i) {
    blocks.push_back(block_diag(faithful.matrices()[i], action.matrix(i)));
  }
  return {faithful.algebra(), std::move(blocks), kDefaultTolerance, faithful.chart_radius()};
}

Mat MatrixRep::image(const Vec& xi) const {
  if (xi.size() != algebra_.dim()) throw StructuralError("representation: coordinate length");
  Mat out = Mat::Zero(m_, m_);
  for (int i = 0; i < algebra_.dim(); ++i) out += xi(i) * matrices_[i];
  return out;
}

Vec MatrixRep::preimage(const Mat& m, double* residual) const {
  const Vec b = flatten(m);
  const Vec xi = solver_.solve(b);
  if (residual) *residual = max_abs(Vec(flat_ * xi - b));
  return xi;
}

GroupElement exp_element(const MatrixRep& rep, const Vec& xi) {
  if (xi.size() != rep.algebra().dim()) throw StructuralError("exp_element: coordinate length");
  if (xi.norm() >= rep.chart_radius()) {
    throw ChartError("coordinates of norm " + std::to_string(xi.norm()) +
                     " lie outside the chart of radius " + std::to_string(rep.chart_radius()));
  }
  return {xi, expm(rep.image(xi))};
}

GroupElement identity_element(const MatrixRep& rep) {
  return {Vec::Zero(rep.algebra().dim()), Mat::Identity(rep.matrix_dim(), rep.matrix_dim())};
}

GroupElement inverse(const MatrixRep& rep, const GroupElement& g) {
  return exp_element(rep, Vec(-g.coords));
}

GroupElement group_mul(const MatrixRep& rep, const GroupElement& g1, const GroupElement& g2) {
  const Mat product = g1.matrix * g2.matrix;
  const Mat log = logm(product);
  double residual = 0.0;
  Vec xi = rep.preimage(log, &residual);
  if (residual > 1e-8 * std::max(1.0, max_abs(log))) {
    throw ChartError("group_mul: logarithm of the product is not in the representation's span");
  }
  if (xi.norm() >= rep.chart_radius()) {
    throw ChartError("group_mul: product of norm " + std::to_string(xi.norm()) +
                     " leaves the chart of radius " + std::to_string(rep.chart_radius()));
  }
  return {std::move(xi), product};
}

GroupElement conjugate(const MatrixRep& rep, const GroupElement& g, const GroupElement& h) {
  return group_mul(rep, group_mul(rep, g, h), inverse(rep, g));
}

Vec adjoint(const LieAlgebraData& algebra, const GroupElement& g, const Vec& xi) {
  return expm(algebra.ad(g.coords)) * xi;
}

Vec adjoint_via_rep(const MatrixRep& rep, const GroupElement& g, const Vec& xi) {
  const Mat inv = expm(Mat(-rep.image(g.coords)));
  return rep.preimage(g.matrix * rep.image(xi) * inv);
}

Vec s_map(const SubspaceBasis& g_prime, const GroupElement& g, double tol) {
  if (g_prime.ambient_dim() != g.coords.size()) throw StructuralError("s_map: dimension mismatch");
  const double r = g_prime.empty() ? max_abs(g.coords) : g_prime.membership_residual(g.coords);
  if (r > tol) {
    throw DomainError("s_map: coordinates are outside the subalgebra (residual " +
                      std::to_string(r) + ")");
  }
  return g.coords;
}

void validate(const DiffConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) {
    throw StructuralError("finite-difference step must be positive");
  }
}

std::string to_string(DiffScheme scheme) {
  return scheme == DiffScheme::central ? "central" : "richardson";
}

DiffScheme diff_scheme_from_string(const std::string& name) {
  if (name == "central") return DiffScheme::central;
  if (name == "richardson") return DiffScheme::richardson;
  throw StructuralError("unknown finite-difference scheme '" + name + "'");
}

Vec derivative_at_identity(const std::function<Vec(double)>& f, const DiffConfig& cfg) {
  validate(cfg);
  auto central = [&](double h) -> Vec { return (f(h) - f(-h)) / (2.0 * h); };
  const Vec d1 = central(cfg.step);
  if (cfg.scheme == DiffScheme::central) return d1;
  return (4.0 * d1 - central(2.0 * cfg.step)) / 3.0;
}

Vec mixed_second_derivative(const std::function<Vec(double, double)>& f, const DiffConfig& cfg) {
  validate(cfg);
  auto stencil = [&](double h) -> Vec {
    return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  };
  const Vec d1 = stencil(cfg.step);
  if (cfg.scheme == DiffScheme::central) return d1;
  return (4.0 * d1 - stencil(2.0 * cfg.step)) / 3.0;
}

}  // namespace llt
