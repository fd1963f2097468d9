#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "llt/local_lie.hpp"
#include "llt/triples.hpp"

namespace llt {

struct ModelOptions {
  std::vector<Mat> faithful_rep;         // empty: adjoint rep when the center is trivial
  std::optional<SubspaceBasis> h_basis;  // default: max_strictness_subalgebra
  std::optional<double> radius;          // default: min(0.3, 0.6 * chart radius)
  DiffConfig diff;
  double tolerance = kDefaultTolerance;
};

/// The local rack M_U = {(v, u) : u = theta(v), |theta(v)| < r_U} with the
/// partial G-action q(g, (v, u)) = (rho_g v, theta(rho_g v)) and
/// Phi(v, u) = exp(u).
class LocalRackModel {
 public:
  const LieLeibnizTriple& triple() const { return augmentation_.triple(); }
  const SubspaceBasis& h_basis() const { return augmentation_.h_basis(); }
  const MatrixRep& rep() const { return rep_; }
  double radius() const { return radius_; }
  const DiffConfig& diff() const { return diff_; }
  double tolerance() const { return tol_; }
  bool strict() const { return strict_; }
  /// Offset of the V block inside the working representation.
  int v_offset() const { return rep_.matrix_dim() - triple().dim_v(); }

 private:
  friend LocalRackModel build_model(const LieLeibnizTriple&, const ModelOptions&);
  LocalRackModel(RelaxedAugmentation aug, MatrixRep rep, double radius, DiffConfig diff,
                 double tol, bool strict)
      : augmentation_(std::move(aug)), rep_(std::move(rep)), radius_(radius),
        diff_(diff), tol_(tol), strict_(strict) {}

  RelaxedAugmentation augmentation_;
  MatrixRep rep_;
  double radius_;
  DiffConfig diff_;
  double tol_;
  bool strict_;
};

/// Throws CapabilityError when no faithful rep is given and the center is
/// nontrivial, ConstraintError for an invalid h_basis or rep, and
/// StructuralError for a radius outside (0, chart radius].
LocalRackModel build_model(const LieLeibnizTriple& triple, const ModelOptions& options = {});

struct MPoint {
  Vec v;
  Vec u;
};

/// (v, theta(v)); DomainError if |theta(v)| >= r_U.
MPoint make_point(const LocalRackModel& model, const Vec& v);
MPoint distinguished_point(const LocalRackModel& model);
/// max |u - theta(v)|; DomainError unless |theta(v)| < r_U.
double validate_point(const LocalRackModel& model, const MPoint& p);

/// rho_g: the V block of g's matrix.
Mat rho(const LocalRackModel& model, const GroupElement& g);
bool in_omega(const LocalRackModel& model, const GroupElement& g, const MPoint& p);
/// DomainError outside Omega.
MPoint q_action(const LocalRackModel& model, const GroupElement& g, const MPoint& p);
GroupElement phi_map(const LocalRackModel& model, const MPoint& p);
/// q(Phi(p1), p2); DomainError when (Phi(p1), p2) is not in Omega.
MPoint rack_product(const LocalRackModel& model, const MPoint& p1, const MPoint& p2);

struct SampleOptions {
  int samples = 200;
  std::uint64_t seed = 0;
  double group_scale = 0.1;  // max |xi| for sampled group elements
};

/// Phi(q(h, p)) = h Phi(p) h^-1 for h = exp(xi), xi sampled in h_basis (or
/// all of g when full is set). Law "equivariance". Pairs outside Omega are
/// skipped; the number actually evaluated goes to *evaluated.
ValidityReport check_equivariance(const LocalRackModel& model, const SampleOptions& options,
                                  bool full = false, double tol = 1e-8, int* evaluated = nullptr);
/// The same check on explicit (xi, p) pairs.
ValidityReport check_equivariance(const LocalRackModel& model,
                                  const std::vector<std::pair<Vec, MPoint>>& samples,
                                  double tol = 1e-8, int* evaluated = nullptr);

struct TangentTriple {
  Mat theta;                    // n x d
  std::vector<Mat> action;      // n matrices d x d
  std::vector<double> bracket;  // d x d x d, flat (i * d + j) * d + k
  double step_used = 0.0;
};

/// Differentiates Phi, q and the rack product at the distinguished point.
/// Shrinks the step 10x once if a stencil leaves Omega or the chart.
TangentTriple recover_tangent_triple(const LocalRackModel& model);

struct RoundtripResiduals {
  double theta = 0.0;
  double action = 0.0;
  double bracket = 0.0;
  double max() const { return std::max({theta, action, bracket}); }
};
RoundtripResiduals roundtrip_residuals(const LieLeibnizTriple& triple, const TangentTriple& t);

/// Mixed derivative of (t1, t2) -> coords of the group defect
/// (g Phi(p) g^-1) Phi(q(g, p))^-1 with g = exp(t1 a), p = (t2 v, theta(t2 v)).
Vec recover_a_theta(const LocalRackModel& model, const Vec& a, const Vec& v);

struct SuiteOptions {
  SampleOptions sampling;
  double roundtrip_tolerance = 1e-4;
};

struct IntegrationReport {
  ValidityReport laws;  // one law per suite, see run_integration_suite
  TangentTriple recovered;
  RoundtripResiduals roundtrip;
  /// a_theta on basis pairs, n x (n * d); column i * d + j is a = e_i, v = e_j.
  Mat a_theta_recovered;
  Mat a_theta_expected;
  std::map<std::string, int> sample_counts;
  bool strict = false;
  int h_dim = 0;
};

/// Laws: "point_invariant", "gset_identity", "gset_composition" (1e-9),
/// "fixed_point" (exact), "self_distributivity" (1e-8), "left_injectivity"
/// (1e-9), "equivariance" (1e-8, on h), "equivariance_full" (strict only),
/// "roundtrip" (options.roundtrip_tolerance), "a_theta" (1e-4).
IntegrationReport run_integration_suite(const LocalRackModel& model,
                                        const SuiteOptions& options = {});

}  // namespace llt
