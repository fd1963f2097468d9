#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "llt/algebra.hpp"
#include "llt/catalog.hpp"

namespace llt {

/// theta : V -> g as an n x d matrix (columns are theta(e_j)).
struct EmbeddingTensor {
  Mat matrix;
};

/// (g, V, theta) with the derived Leibniz bracket [u, v] = theta(u) . v.
/// Only build_triple creates these, so every instance satisfies the quadratic
/// constraint and the Leibniz identity at the tolerance it was built with.
class LieLeibnizTriple {
 public:
  const LieAlgebraData& algebra() const { return algebra_; }
  const ModuleAction& action() const { return action_; }
  const Mat& theta() const { return theta_.matrix; }
  const LeibnizAlgebraData& bracket() const { return bracket_; }
  int dim_g() const { return algebra_.dim(); }
  int dim_v() const { return action_.dim_v(); }
  double tolerance() const { return tol_; }

  Vec apply_theta(const Vec& v) const { return theta_.matrix * v; }

 private:
  friend LieLeibnizTriple build_triple(LieAlgebraData, ModuleAction, EmbeddingTensor, double);
  LieLeibnizTriple(LieAlgebraData a, ModuleAction m, EmbeddingTensor t, LeibnizAlgebraData b,
                   double tol)
      : algebra_(std::move(a)), action_(std::move(m)), theta_(std::move(t)),
        bracket_(std::move(b)), tol_(tol) {}

  LieAlgebraData algebra_;
  ModuleAction action_;
  EmbeddingTensor theta_;
  LeibnizAlgebraData bracket_;
  double tol_ = kDefaultTolerance;
};

/// [u, v] := theta(u) . v as a d x d x d tensor.
LeibnizAlgebraData derived_bracket(const ModuleAction& action, const Mat& theta);

/// Runs every check build_triple would, without throwing on axiom failures.
/// Laws: "lie_algebra.*", "module.*", "linear_constraint", "quadratic_constraint",
/// "derived_leibniz.leibniz". Throws StructuralError on shape mismatch.
ValidityReport evaluate_triple(const LieAlgebraData& alg, const ModuleAction& action,
                               const Mat& theta, double tol = kDefaultTolerance);

/// Throws ConstraintError naming the first violated constraint
/// ("lie_algebra", "module", "quadratic_constraint" or "leibniz").
LieLeibnizTriple build_triple(LieAlgebraData alg, ModuleAction action, EmbeddingTensor theta,
                              double tol = kDefaultTolerance);

/// The map v -> [a, theta(v)] - theta(a . v) as an n x d matrix.
Mat a_theta(const LieLeibnizTriple& triple, const Vec& a);

bool is_strict(const LieLeibnizTriple& triple, double tol = kDefaultTolerance);

/// Orthonormal bases of Im(theta) in g and Ker(theta) in V.
SubspaceBasis theta_image(const LieLeibnizTriple& triple, double tol = kDefaultTolerance);
SubspaceBasis theta_kernel(const LieLeibnizTriple& triple, double tol = kDefaultTolerance);

/// { a in g : a_theta(a) = 0 } via singular values with a relative threshold.
SubspaceBasis max_strictness_subalgebra(const LieLeibnizTriple& triple,
                                        double tol = kDefaultTolerance);

/// Laws: "subalgebra", "contains_image", "equivariance".
ValidityReport check_relaxed_augmentation(const LieLeibnizTriple& triple,
                                          const SubspaceBasis& h_basis,
                                          double tol = kDefaultTolerance);

/// A triple together with a validated subalgebra h on which theta is
/// equivariant.
class RelaxedAugmentation {
 public:
  /// Throws ConstraintError("relaxed_augmentation", ...) when invalid.
  RelaxedAugmentation(LieLeibnizTriple triple, SubspaceBasis h_basis,
                      double tol = kDefaultTolerance);

  const LieLeibnizTriple& triple() const { return triple_; }
  const SubspaceBasis& h_basis() const { return h_basis_; }

 private:
  LieLeibnizTriple triple_;
  SubspaceBasis h_basis_;
};

struct TripleMorphism {
  Mat phi;  // n' x n
  Mat psi;  // d' x d
};

/// Laws: "phi_homomorphism", "theta_compatibility", "action_compatibility",
/// and the consequence "psi_leibniz_morphism".
ValidityReport check_morphism(const LieLeibnizTriple& source, const LieLeibnizTriple& target,
                              const TripleMorphism& m, double tol = kDefaultTolerance);

/// second o first
TripleMorphism compose(const TripleMorphism& second, const TripleMorphism& first);

/// Lie algebra crossed module (m, n, mu, eta); relaxed when n_prime is set.
struct LieAlgCrossedModule {
  LieAlgebraData m;
  LieAlgebraData n;
  Mat mu;            // dim(n) x dim(m)
  ModuleAction eta;  // n acting on the underlying space of m
  std::optional<SubspaceBasis> n_prime;
};

/// Laws: "condition1" (on n or n'), "condition2", "mu_homomorphism",
/// "eta_derivation" (on n or n'), and for relaxed modules "n_prime_subalgebra",
/// "n_prime_contains_image".
ValidityReport check_crossed_module(const LieAlgCrossedModule& cm,
                                    double tol = kDefaultTolerance);

struct CrossedModuleTriple {
  LieLeibnizTriple triple;
  std::optional<SubspaceBasis> h_basis;  // n' for relaxed crossed modules
  ValidityReport report;
};

/// (n, m, mu) as a Lie-Leibniz triple. Throws ConstraintError if cm is invalid.
CrossedModuleTriple triple_from_crossed_module(const LieAlgCrossedModule& cm,
                                               double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Named examples and seeded generators

/// Raw triple data, possibly invalid, with an optional faithful representation
/// of the algebra (needed for integration when the center is nontrivial).
struct TripleComponents {
  std::string name;
  LieAlgebraData algebra;
  ModuleAction action;
  Mat theta;
  std::vector<Mat> faithful_rep;

  LieLeibnizTriple build(double tol = kDefaultTolerance) const;
};

/// g = sl2, V = sl2 with the adjoint action, theta = id.
TripleComponents sl2_adjoint_components();
/// F(lambda): g = aff1 = span{a, b}, [a, b] = b; V = span{v}; theta(v) = b;
/// a . v = lambda v, b . v = 0.
TripleComponents scaling_family_components(double lambda);
/// Heisenberg algebra acting on its center, theta = inclusion, with the 3x3 rep.
TripleComponents heisenberg_ideal_components();
/// (g, ideal with restricted adjoint action, inclusion).
TripleComponents ideal_inclusion_components(CatalogAlgebra which, const std::string& ideal);

/// Applies the changes of basis e'_i = sum_j q(j, i) e_j on g and
/// v'_i = sum_j p(j, i) v_j on V.
TripleComponents change_basis(const TripleComponents& c, const Mat& q, const Mat& p);

enum class TripleFamily { strict_from_ideal, scaling_family, perturbed_invalid };

struct RandomTripleParams {
  std::optional<CatalogAlgebra> algebra;  // strict_from_ideal; seeded choice if unset
  std::optional<std::string> ideal;       // strict_from_ideal; seeded choice if unset
  std::optional<double> lambda;           // scaling_family; seeded choice if unset
  double epsilon = 0.1;                   // perturbed_invalid
  bool randomize_basis = true;            // strict_from_ideal
};

/// Deterministic in (seed, family, params).
///   strict_from_ideal: catalog inclusion triple in seeded random bases.
///   scaling_family: F(lambda).
///   perturbed_invalid: sl2 adjoint with theta = id +- epsilon E_kk, which
///     violates the quadratic constraint with residual >= epsilon / 2.
TripleComponents random_triple(std::uint64_t seed, TripleFamily family,
                               const RandomTripleParams& params = {});

std::string to_string(TripleFamily family);

}  // namespace llt
