#include "llt/triples.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace llt {

namespace {

void require_same_algebra(const LieAlgebraData& a, const LieAlgebraData& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw StructuralError(std::string(what) + ": algebra dimension mismatch");
  }
  for (std::size_t i = 0; i < a.constants().size(); ++i) {
    if (std::abs(a.constants()[i] - b.constants()[i]) > 1e-12) {
      throw StructuralError(std::string(what) + ": module is defined over a different algebra");
    }
  }
}

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat random_well_conditioned(std::mt19937_64& rng, int n, double spread) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (;;) {
    Mat q = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) q(i, j) += spread * unif(rng);
    }
    Eigen::JacobiSVD<Mat> svd(q);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) < 10.0) return q;
  }
}

}  // namespace

LeibnizAlgebraData derived_bracket(const ModuleAction& action, const Mat& theta) {
  const int d = action.dim_v();
  std::vector<double> tensor(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    const Mat left = action.act(theta.col(i));
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) tensor[(i * d + j) * d + k] = left(k, j);
    }
  }
  return {d, std::move(tensor)};
}

ValidityReport evaluate_triple(const LieAlgebraData& alg, const ModuleAction& action,
                               const Mat& theta, double tol) {
  require_same_algebra(alg, action.algebra(), "triple");
  const int n = alg.dim();
  const int d = action.dim_v();
  if (theta.rows() != n || theta.cols() != d) {
    throw StructuralError("embedding tensor must be " + std::to_string(n) + "x" +
                          std::to_string(d) + ", got " + std::to_string(theta.rows()) + "x" +
                          std::to_string(theta.cols()));
  }
  ValidityReport report;
  report.merge(check_lie_algebra(alg, tol), "lie_algebra.");
  report.merge(check_module(action, tol), "module.");

  const auto bracket = derived_bracket(action, theta);
  report.touch("linear_constraint");
  report.touch("quadratic_constraint");
  for (int i = 0; i < d; ++i) {
    const Vec u = Vec::Unit(d, i);
    const Vec theta_u = theta * u;
    for (int j = 0; j < d; ++j) {
      const Vec v = Vec::Unit(d, j);
      const Vec uv = bracket.bracket(u, v);
      report.record("linear_constraint", {i, j}, max_abs(Vec(uv - action.act(theta_u) * v)), tol);
      const Vec lhs = theta * uv;
      const Vec rhs = alg.bracket(theta_u, theta * v);
      report.record("quadratic_constraint", {i, j}, max_abs(Vec(lhs - rhs)), tol);
    }
  }
  report.merge(check_leibniz(bracket, tol), "derived_leibniz.");
  return report;
}

LieLeibnizTriple build_triple(LieAlgebraData alg, ModuleAction action, EmbeddingTensor theta,
                              double tol) {
  const auto report = evaluate_triple(alg, action, theta.matrix, tol);
  auto group_residual = [&](const std::string& prefix) {
    double worst = 0.0;
    bool failed = false;
    for (const auto& [law, r] : report.residuals) {
      if (law.rfind(prefix, 0) == 0) {
        worst = std::max(worst, r);
        failed = failed || r > tol;
      }
    }
    return std::pair{failed, worst};
  };
  const std::pair<const char*, const char*> order[] = {
      {"lie_algebra", "lie_algebra."},
      {"module", "module."},
      {"quadratic_constraint", "quadratic_constraint"},
      {"leibniz", "derived_leibniz."},
  };
  for (const auto& [name, prefix] : order) {
    if (auto [failed, worst] = group_residual(prefix); failed) {
      throw ConstraintError(name, worst, report);
    }
  }
  auto bracket = derived_bracket(action, theta.matrix);
  return {std::move(alg), std::move(action), std::move(theta), std::move(bracket), tol};
}

Mat a_theta(const LieLeibnizTriple& triple, const Vec& a) {
  if (a.size() != triple.dim_g()) throw StructuralError("a_theta: vector length mismatch");
  return triple.algebra().ad(a) * triple.theta() - triple.theta() * triple.action().act(a);
}

bool is_strict(const LieLeibnizTriple& triple, double tol) {
  for (int i = 0; i < triple.dim_g(); ++i) {
    if (max_abs(a_theta(triple, triple.algebra().basis_vector(i))) > tol) return false;
  }
  return true;
}

SubspaceBasis theta_image(const LieLeibnizTriple& triple, double tol) {
  const Mat& theta = triple.theta();
  if (theta.size() == 0 || max_abs(theta) == 0.0) return {triple.dim_g(), {}};
  Eigen::JacobiSVD<Mat> svd(theta, Eigen::ComputeThinU);
  const int rank = numerical_rank(theta, tol, 1.0);
  return SubspaceBasis::from_columns(svd.matrixU().leftCols(rank));
}

SubspaceBasis theta_kernel(const LieLeibnizTriple& triple, double tol) {
  if (triple.dim_v() == 0) return {0, {}};
  return SubspaceBasis::from_columns(kernel_basis(triple.theta(), tol, 1.0));
}

SubspaceBasis max_strictness_subalgebra(const LieLeibnizTriple& triple, double tol) {
  const int n = triple.dim_g();
  const int d = triple.dim_v();
  Mat defect_map(static_cast<Eigen::Index>(n) * d, n);
  for (int i = 0; i < n; ++i) {
    defect_map.col(i) = flatten(a_theta(triple, triple.algebra().basis_vector(i)));
  }
  double coeff_scale = 0.0;
  for (double c : triple.algebra().constants()) coeff_scale = std::max(coeff_scale, std::abs(c));
  for (const auto& m : triple.action().matrices()) coeff_scale = std::max(coeff_scale, max_abs(m));
  const double scale = coeff_scale * max_abs(triple.theta());
  auto result = SubspaceBasis::from_columns(kernel_basis(defect_map, tol, scale));
  // Kernel vectors carry defects up to tol * sigma_max.
  const double check_tol = 1e3 * tol * std::max({1.0, max_abs(defect_map), scale});
  if (!check_relaxed_augmentation(triple, result, check_tol).passed) {
    throw std::logic_error("max_strictness_subalgebra: kernel failed its own validation");
  }
  return result;
}

ValidityReport check_relaxed_augmentation(const LieLeibnizTriple& triple,
                                          const SubspaceBasis& h_basis, double tol) {
  if (h_basis.ambient_dim() != triple.dim_g()) {
    throw StructuralError("relaxed augmentation: subspace ambient dimension mismatch");
  }
  ValidityReport report;
  report.touch("subalgebra");
  report.touch("contains_image");
  report.touch("equivariance");
  report.record("subalgebra", {}, bracket_closure_residual(triple.algebra(), h_basis), tol);
  for (int j = 0; j < triple.dim_v(); ++j) {
    const Vec image = triple.theta().col(j);
    const double r = h_basis.empty() ? max_abs(image) : h_basis.membership_residual(image);
    report.record("contains_image", {j}, r, tol);
  }
  for (int a = 0; a < h_basis.dim(); ++a) {
    report.record("equivariance", {a}, max_abs(a_theta(triple, h_basis.vectors()[a])), tol);
  }
  return report;
}

RelaxedAugmentation::RelaxedAugmentation(LieLeibnizTriple triple, SubspaceBasis h_basis,
                                         double tol)
    : triple_(std::move(triple)), h_basis_(std::move(h_basis)) {
  auto report = check_relaxed_augmentation(triple_, h_basis_, tol);
  if (!report.passed) {
    const double r = report.max_residual;
    throw ConstraintError("relaxed_augmentation", r, std::move(report));
  }
}

ValidityReport check_morphism(const LieLeibnizTriple& source, const LieLeibnizTriple& target,
                              const TripleMorphism& m, double tol) {
  const int n = source.dim_g(), d = source.dim_v();
  const int n2 = target.dim_g(), d2 = target.dim_v();
  if (m.phi.rows() != n2 || m.phi.cols() != n || m.psi.rows() != d2 || m.psi.cols() != d) {
    throw StructuralError("morphism: phi must be " + std::to_string(n2) + "x" +
                          std::to_string(n) + " and psi " + std::to_string(d2) + "x" +
                          std::to_string(d));
  }
  const auto& g = source.algebra();
  const auto& g2 = target.algebra();
  ValidityReport report;
  for (const char* law : {"phi_homomorphism", "theta_compatibility", "action_compatibility",
                          "psi_leibniz_morphism"}) {
    report.touch(law);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec lhs = m.phi * g.bracket(g.basis_vector(i), g.basis_vector(j));
      const Vec rhs = g2.bracket(m.phi.col(i), m.phi.col(j));
      report.record("phi_homomorphism", {i, j}, max_abs(Vec(lhs - rhs)), tol);
    }
  }
  for (int j = 0; j < d; ++j) {
    const Vec lhs = target.theta() * m.psi.col(j);
    const Vec rhs = m.phi * source.theta().col(j);
    report.record("theta_compatibility", {j}, max_abs(Vec(lhs - rhs)), tol);
  }
  for (int i = 0; i < n; ++i) {
    const Mat lhs = m.psi * source.action().matrix(i);
    const Mat rhs = target.action().act(m.phi.col(i)) * m.psi;
    report.record("action_compatibility", {i}, max_abs(Mat(lhs - rhs)), tol);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Vec lhs = m.psi * source.bracket().bracket(Vec::Unit(d, i), Vec::Unit(d, j));
      const Vec rhs = target.bracket().bracket(m.psi.col(i), m.psi.col(j));
      report.record("psi_leibniz_morphism", {i, j}, max_abs(Vec(lhs - rhs)), tol);
    }
  }
  return report;
}

TripleMorphism compose(const TripleMorphism& second, const TripleMorphism& first) {
  return {second.phi * first.phi, second.psi * first.psi};
}

ValidityReport check_crossed_module(const LieAlgCrossedModule& cm, double tol) {
  const int dm = cm.m.dim();
  const int dn = cm.n.dim();
  if (cm.mu.rows() != dn || cm.mu.cols() != dm) {
    throw StructuralError("crossed module: mu must be dim(n) x dim(m)");
  }
  require_same_algebra(cm.n, cm.eta.algebra(), "crossed module");
  if (cm.eta.dim_v() != dm) throw StructuralError("crossed module: eta must act on dim(m)");
  if (cm.n_prime && cm.n_prime->ambient_dim() != dn) {
    throw StructuralError("crossed module: n' ambient dimension mismatch");
  }

  ValidityReport report;
  report.merge(check_lie_algebra(cm.m, tol), "m.");
  report.merge(check_lie_algebra(cm.n, tol), "n.");
  report.merge(check_module(cm.eta, tol), "eta.");

  std::vector<Vec> acting;
  if (cm.n_prime) {
    acting = cm.n_prime->vectors();
  } else {
    for (int i = 0; i < dn; ++i) acting.push_back(cm.n.basis_vector(i));
  }
  for (const char* law : {"condition1", "condition2", "mu_homomorphism", "eta_derivation"}) {
    report.touch(law);
  }
  for (int x = 0; x < static_cast<int>(acting.size()); ++x) {
    const Mat eta_x = cm.eta.act(acting[x]);
    for (int j = 0; j < dm; ++j) {
      const Vec mj = Vec::Unit(dm, j);
      const Vec lhs = cm.mu * (eta_x * mj);
      const Vec rhs = cm.n.bracket(acting[x], cm.mu * mj);
      report.record("condition1", {x, j}, max_abs(Vec(lhs - rhs)), tol);
      for (int k = 0; k < dm; ++k) {
        const Vec mk = Vec::Unit(dm, k);
        const Vec der = cm.m.bracket(eta_x * mj, mk) + cm.m.bracket(mj, eta_x * mk) -
                        eta_x * cm.m.bracket(mj, mk);
        report.record("eta_derivation", {x, j, k}, max_abs(der), tol);
      }
    }
  }
  for (int i = 0; i < dm; ++i) {
    const Vec mi = Vec::Unit(dm, i);
    const Mat eta_mu = cm.eta.act(cm.mu * mi);
    for (int j = 0; j < dm; ++j) {
      const Vec mj = Vec::Unit(dm, j);
      const Vec bracket_m = cm.m.bracket(mi, mj);
      report.record("condition2", {i, j}, max_abs(Vec(eta_mu * mj - bracket_m)), tol);
      const Vec hom = cm.mu * bracket_m - cm.n.bracket(cm.mu * mi, cm.mu * mj);
      report.record("mu_homomorphism", {i, j}, max_abs(hom), tol);
    }
  }
  if (cm.n_prime) {
    report.touch("n_prime_contains_image");
    report.record("n_prime_subalgebra", {}, bracket_closure_residual(cm.n, *cm.n_prime), tol);
    for (int i = 0; i < dm; ++i) {
      const Vec image = cm.mu.col(i);
      const double r = cm.n_prime->empty() ? max_abs(image)
                                           : cm.n_prime->membership_residual(image);
      report.record("n_prime_contains_image", {i}, r, tol);
    }
  }
  report.flags["relaxed"] = cm.n_prime.has_value();
  return report;
}

CrossedModuleTriple triple_from_crossed_module(const LieAlgCrossedModule& cm, double tol) {
  auto report = check_crossed_module(cm, tol);
  if (!report.passed) {
    const double r = report.max_residual;
    throw ConstraintError("crossed_module", r, std::move(report));
  }
  auto triple = build_triple(cm.n, cm.eta, EmbeddingTensor{cm.mu}, tol);
  if (cm.n_prime) {
    report.merge(check_relaxed_augmentation(triple, *cm.n_prime, tol), "relaxed_augmentation.");
  }
  return {std::move(triple), cm.n_prime, std::move(report)};
}

// ---------------------------------------------------------------------------
// Named examples and generators

LieLeibnizTriple TripleComponents::build(double tol) const {
  return build_triple(algebra, action, EmbeddingTensor{theta}, tol);
}

TripleComponents sl2_adjoint_components() {
  auto alg = sl2_algebra();
  return {"sl2-adjoint", alg, ModuleAction::adjoint(alg), Mat::Identity(3, 3), {}};
}

TripleComponents scaling_family_components(double lambda) {
  auto alg = aff1_algebra();
  Mat act_a(1, 1), act_b(1, 1);
  act_a << lambda;
  act_b << 0.0;
  Mat theta(2, 1);
  theta << 0.0, 1.0;
  std::ostringstream name;
  name << "scaling:" << lambda;
  return {name.str(), alg, ModuleAction(alg, 1, {act_a, act_b}), theta, {}};
}

TripleComponents heisenberg_ideal_components() {
  auto c = ideal_inclusion_components(CatalogAlgebra::heisenberg, "center");
  c.name = "heisenberg-ideal";
  return c;
}

TripleComponents ideal_inclusion_components(CatalogAlgebra which, const std::string& ideal) {
  auto entry = catalog_entry(which);
  const auto& basis_vectors = entry.ideal(ideal).basis;
  const int n = entry.algebra.dim();
  const int d = static_cast<int>(basis_vectors.size());
  Mat basis(n, d);
  for (int j = 0; j < d; ++j) basis.col(j) = basis_vectors[j];
  const auto solver = basis.colPivHouseholderQr();
  std::vector<Mat> action;
  for (int i = 0; i < n; ++i) {
    const Mat image = entry.algebra.ad_basis(i) * basis;
    Mat restricted = solver.solve(image);
    if (max_abs(Mat(basis * restricted - image)) > 1e-12) {
      throw StructuralError("'" + ideal + "' is not an ideal of " + entry.name);
    }
    action.push_back(std::move(restricted));
  }
  return {entry.name + "/" + ideal, entry.algebra, ModuleAction(entry.algebra, d, action), basis,
          entry.faithful_rep};
}

TripleComponents change_basis(const TripleComponents& c, const Mat& q, const Mat& p) {
  const int n = c.algebra.dim();
  const int d = c.action.dim_v();
  if (q.rows() != n || q.cols() != n || p.rows() != d || p.cols() != d) {
    throw StructuralError("change_basis: matrix shapes do not match the triple");
  }
  const Mat q_inv = q.inverse();
  const Mat p_inv = p.inverse();
  auto algebra = c.algebra.change_basis(q);
  std::vector<Mat> action;
  std::vector<Mat> rep;
  for (int i = 0; i < n; ++i) {
    action.push_back(p_inv * c.action.act(q.col(i)) * p);
    if (!c.faithful_rep.empty()) {
      Mat r = Mat::Zero(c.faithful_rep[0].rows(), c.faithful_rep[0].cols());
      for (int j = 0; j < n; ++j) r += q(j, i) * c.faithful_rep[j];
      rep.push_back(std::move(r));
    }
  }
  return {c.name, algebra, ModuleAction(algebra, d, std::move(action)), q_inv * c.theta * p,
          std::move(rep)};
}

TripleComponents random_triple(std::uint64_t seed, TripleFamily family,
                               const RandomTripleParams& params) {
  std::mt19937_64 rng(seed);
  switch (family) {
    case TripleFamily::strict_from_ideal: {
      const auto algebras = all_catalog_algebras();
      const auto which = params.algebra.value_or(
          algebras[std::uniform_int_distribution<std::size_t>(0, algebras.size() - 1)(rng)]);
      const auto entry = catalog_entry(which);
      const auto ideal = params.ideal.value_or(
          entry.ideals[std::uniform_int_distribution<std::size_t>(0, entry.ideals.size() - 1)(rng)]
              .name);
      auto c = ideal_inclusion_components(which, ideal);
      if (params.randomize_basis) {
        const Mat q = random_well_conditioned(rng, c.algebra.dim(), 0.4);
        const Mat p = random_well_conditioned(rng, c.action.dim_v(), 0.4);
        c = change_basis(c, q, p);
      }
      c.name = "strict_from_ideal/" + c.name + "/seed=" + std::to_string(seed);
      return c;
    }
    case TripleFamily::scaling_family: {
      const double lambda =
          params.lambda.value_or(std::uniform_real_distribution<double>(-2.0, 3.0)(rng));
      return scaling_family_components(lambda);
    }
    case TripleFamily::perturbed_invalid: {
      if (!(params.epsilon > 0.0 && params.epsilon <= 0.5)) {
        throw StructuralError("perturbed_invalid: epsilon must lie in (0, 0.5]");
      }
      auto c = sl2_adjoint_components();
      const int k = static_cast<int>(seed % 3);
      const double sign = (seed / 3) % 2 == 0 ? 1.0 : -1.0;
      c.theta(k, k) += sign * params.epsilon;
      std::ostringstream name;
      name << "perturbed_invalid/eps=" << params.epsilon << "/seed=" << seed;
      c.name = name.str();
      return c;
    }
  }
  throw StructuralError("unknown triple family");
}

std::string to_string(TripleFamily family) {
  switch (family) {
    case TripleFamily::strict_from_ideal: return "strict_from_ideal";
    case TripleFamily::scaling_family: return "scaling_family";
    case TripleFamily::perturbed_invalid: return "perturbed_invalid";
  }
  return "unknown";
}

}  // namespace llt
