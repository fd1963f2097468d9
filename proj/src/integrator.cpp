#include "llt/integrator.hpp"

#include <cmath>
#include <random>

namespace llt {

LocalRackModel build_model(const LieLeibnizTriple& triple, const ModelOptions& options) {
  validate(options.diff);
  const auto& alg = triple.algebra();
  const MatrixRep faithful = options.faithful_rep.empty()
                                 ? MatrixRep::adjoint(alg)
                                 : MatrixRep(alg, options.faithful_rep, options.tolerance);
  MatrixRep working = MatrixRep::working(faithful, triple.action());
  const double chart = working.chart_radius();
  const double radius = options.radius.value_or(std::min(0.3, 0.6 * chart));
  if (!(radius > 0.0) || radius > chart) {
    throw StructuralError("radius must lie in (0, " + std::to_string(chart) + "]");
  }
  SubspaceBasis h = options.h_basis ? *options.h_basis
                                    : max_strictness_subalgebra(triple, options.tolerance);
  // h_max is computed with a relative kernel threshold, so validate it with
  // a tolerance that scales with the data.
  const double aug_tol =
      options.h_basis ? options.tolerance : 1e3 * options.tolerance * std::max(1.0, max_abs(triple.theta()));
  RelaxedAugmentation aug(triple, std::move(h), aug_tol);
  const bool strict = is_strict(triple, options.tolerance);
  return {std::move(aug), std::move(working), radius, options.diff, options.tolerance, strict};
}

MPoint make_point(const LocalRackModel& model, const Vec& v) {
  if (v.size() != model.triple().dim_v()) throw StructuralError("point: wrong fiber dimension");
  Vec u = model.triple().apply_theta(v);
  if (u.norm() >= model.radius()) {
    throw DomainError("point outside M_U: |theta(v)| = " + std::to_string(u.norm()) +
                      " >= r_U = " + std::to_string(model.radius()));
  }
  return {v, std::move(u)};
}

MPoint distinguished_point(const LocalRackModel& model) {
  return {Vec::Zero(model.triple().dim_v()), Vec::Zero(model.triple().dim_g())};
}

double validate_point(const LocalRackModel& model, const MPoint& p) {
  const Vec theta_v = model.triple().apply_theta(p.v);
  if (theta_v.norm() >= model.radius()) throw DomainError("point outside M_U");
  return max_abs(Vec(p.u - theta_v));
}

Mat rho(const LocalRackModel& model, const GroupElement& g) {
  const int d = model.triple().dim_v();
  const int off = model.v_offset();
  return g.matrix.block(off, off, d, d);
}

bool in_omega(const LocalRackModel& model, const GroupElement& g, const MPoint& p) {
  return model.triple().apply_theta(rho(model, g) * p.v).norm() < model.radius();
}

MPoint q_action(const LocalRackModel& model, const GroupElement& g, const MPoint& p) {
  Vec v = rho(model, g) * p.v;
  Vec u = model.triple().apply_theta(v);
  if (u.norm() >= model.radius()) {
    throw DomainError("(g, p) outside Omega: |theta(rho_g v)| = " + std::to_string(u.norm()));
  }
  return {std::move(v), std::move(u)};
}

GroupElement phi_map(const LocalRackModel& model, const MPoint& p) {
  return exp_element(model.rep(), p.u);
}

MPoint rack_product(const LocalRackModel& model, const MPoint& p1, const MPoint& p2) {
  return q_action(model, phi_map(model, p1), p2);
}

namespace {

class Sampler {
 public:
  Sampler(const LocalRackModel& model, std::uint64_t seed) : model_(model), rng_(seed) {
    const Mat& theta = model.triple().theta();
    const double op = theta.size() == 0 ? 0.0 : Eigen::JacobiSVD<Mat>(theta).singularValues()(0);
    v_max_ = op > 0.0 ? std::min(1.0, 0.9 * model.radius() / op) : 1.0;
  }

  Vec unit(int dim) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x(i) = normal_(rng_);
    const double n = x.norm();
    return n > 0.0 ? Vec(x / n) : x;
  }

  /// Point with |theta(v)| <= 0.9 * scale * r_U.
  MPoint point(double scale = 1.0) {
    const int d = model_.triple().dim_v();
    if (d == 0) return distinguished_point(model_);
    return make_point(model_, Vec(unit(d) * (uniform_(rng_) * scale * v_max_)));
  }

  /// Group element exp(xi) with |xi| <= max_norm, xi in the span of basis
  /// (all of g when basis is null).
  GroupElement element(const SubspaceBasis* basis, double max_norm) {
    const int n = model_.triple().dim_g();
    Vec xi = Vec::Zero(n);
    if (basis == nullptr) {
      xi = unit(n);
    } else if (!basis->empty()) {
      const Vec c = unit(basis->dim());
      xi = basis->matrix() * c;
      if (xi.norm() > 0.0) xi /= xi.norm();
    }
    return exp_element(model_.rep(), Vec(xi * (uniform_(rng_) * max_norm)));
  }

 private:
  const LocalRackModel& model_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  double v_max_;
};

double point_distance(const MPoint& a, const MPoint& b) {
  return std::max(max_abs(Vec(a.v - b.v)), max_abs(Vec(a.u - b.u)));
}

double equivariance_residual(const LocalRackModel& model, const GroupElement& h, const MPoint& p) {
  const Vec lhs = phi_map(model, q_action(model, h, p)).coords;
  const Vec rhs = conjugate(model.rep(), h, phi_map(model, p)).coords;
  return max_abs(Vec(lhs - rhs));
}

}  // namespace

ValidityReport check_equivariance(const LocalRackModel& model, const SampleOptions& options,
                                  bool full, double tol, int* evaluated) {
  Sampler sampler(model, options.seed);
  ValidityReport report;
  report.touch("equivariance");
  int count = 0;
  for (int attempt = 0; attempt < 10 * options.samples && count < options.samples; ++attempt) {
    const GroupElement h = sampler.element(full ? nullptr : &model.h_basis(), options.group_scale);
    const MPoint p = sampler.point();
    try {
      report.record("equivariance", {attempt}, equivariance_residual(model, h, p), tol);
      ++count;
    } catch (const DomainError&) {
    } catch (const ChartError&) {
    }
  }
  if (evaluated) *evaluated = count;
  return report;
}

ValidityReport check_equivariance(const LocalRackModel& model,
                                  const std::vector<std::pair<Vec, MPoint>>& samples, double tol,
                                  int* evaluated) {
  ValidityReport report;
  report.touch("equivariance");
  int count = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const GroupElement h = exp_element(model.rep(), samples[i].first);
    try {
      report.record("equivariance", {static_cast<int>(i)},
                    equivariance_residual(model, h, samples[i].second), tol);
      ++count;
    } catch (const DomainError&) {
    } catch (const ChartError&) {
    }
  }
  if (evaluated) *evaluated = count;
  return report;
}

namespace {

TangentTriple recover_with(const LocalRackModel& model, const DiffConfig& cfg) {
  const auto& t = model.triple();
  const int n = t.dim_g(), d = t.dim_v();
  TangentTriple out;
  out.step_used = cfg.step;
  out.theta = Mat::Zero(n, d);
  for (int j = 0; j < d; ++j) {
    const Vec e = Vec::Unit(d, j);
    out.theta.col(j) = derivative_at_identity(
        [&](double s) { return phi_map(model, make_point(model, Vec(s * e))).coords; }, cfg);
  }
  out.action.assign(n, Mat::Zero(d, d));
  for (int i = 0; i < n; ++i) {
    const Vec a = Vec::Unit(n, i);
    for (int j = 0; j < d; ++j) {
      const Vec e = Vec::Unit(d, j);
      out.action[i].col(j) = mixed_second_derivative(
          [&](double t1, double t2) {
            return q_action(model, exp_element(model.rep(), Vec(t2 * a)),
                            make_point(model, Vec(t1 * e)))
                .v;
          },
          cfg);
    }
  }
  out.bracket.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    const Vec u = Vec::Unit(d, i);
    for (int j = 0; j < d; ++j) {
      const Vec v = Vec::Unit(d, j);
      const Vec b = mixed_second_derivative(
          [&](double t1, double t2) {
            return rack_product(model, make_point(model, Vec(t1 * u)), make_point(model, Vec(t2 * v)))
                .v;
          },
          cfg);
      for (int k = 0; k < d; ++k) out.bracket[(i * d + j) * d + k] = b(k);
    }
  }
  return out;
}

template <typename F>
auto with_shrink(const DiffConfig& cfg, F&& f) {
  try {
    return f(cfg);
  } catch (const DomainError&) {
  } catch (const ChartError&) {
  }
  DiffConfig smaller = cfg;
  smaller.step /= 10.0;
  return f(smaller);
}

}  // namespace

TangentTriple recover_tangent_triple(const LocalRackModel& model) {
  return with_shrink(model.diff(), [&](const DiffConfig& cfg) { return recover_with(model, cfg); });
}

RoundtripResiduals roundtrip_residuals(const LieLeibnizTriple& triple, const TangentTriple& t) {
  RoundtripResiduals r;
  r.theta = max_abs(Mat(t.theta - triple.theta()));
  for (int i = 0; i < triple.dim_g(); ++i) {
    r.action = std::max(r.action, max_abs(Mat(t.action[i] - triple.action().matrix(i))));
  }
  const auto& expected = triple.bracket().tensor();
  for (std::size_t k = 0; k < expected.size(); ++k) {
    r.bracket = std::max(r.bracket, std::abs(t.bracket[k] - expected[k]));
  }
  return r;
}

Vec recover_a_theta(const LocalRackModel& model, const Vec& a, const Vec& v) {
  const auto& rep = model.rep();
  auto defect = [&](double t1, double t2) -> Vec {
    const GroupElement g = exp_element(rep, Vec(t1 * a));
    const MPoint p = make_point(model, Vec(t2 * v));
    const GroupElement lhs = conjugate(rep, g, phi_map(model, p));
    const GroupElement rhs = phi_map(model, q_action(model, g, p));
    return group_mul(rep, lhs, inverse(rep, rhs)).coords;
  };
  return with_shrink(model.diff(),
                     [&](const DiffConfig& cfg) { return mixed_second_derivative(defect, cfg); });
}

IntegrationReport run_integration_suite(const LocalRackModel& model, const SuiteOptions& options) {
  const auto& t = model.triple();
  const int n = t.dim_g(), d = t.dim_v();
  const auto& rep = model.rep();
  const int target = options.sampling.samples;
  const double scale = options.sampling.group_scale;
  IntegrationReport out;
  out.strict = model.strict();
  out.h_dim = model.h_basis().dim();
  auto& laws = out.laws;
  for (const char* law : {"point_invariant", "gset_identity", "gset_composition", "fixed_point",
                          "self_distributivity", "left_injectivity", "equivariance", "roundtrip",
                          "a_theta"}) {
    laws.touch(law);
  }

  Sampler sampler(model, options.sampling.seed);
  const MPoint origin = distinguished_point(model);
  const GroupElement e = identity_element(rep);

  // Local G-set laws and the fixed point.
  int composition = 0, identity = 0;
  for (int attempt = 0; attempt < 10 * target && composition < target; ++attempt) {
    try {
      const GroupElement g1 = sampler.element(nullptr, scale);
      const GroupElement g2 = sampler.element(nullptr, scale);
      const MPoint p = sampler.point();
      laws.record("point_invariant", {attempt}, validate_point(model, p), model.tolerance());
      laws.record("gset_identity", {attempt}, point_distance(q_action(model, e, p), p), 1e-9);
      ++identity;
      const MPoint fixed = q_action(model, g1, origin);
      laws.record("fixed_point", {attempt}, point_distance(fixed, origin), 0.0);
      if (!in_omega(model, g2, p)) continue;
      const MPoint inner = q_action(model, g2, p);
      if (!in_omega(model, g1, inner)) continue;
      const GroupElement g12 = group_mul(rep, g1, g2);
      if (!in_omega(model, g12, p)) continue;
      const MPoint lhs = q_action(model, g1, inner);
      const MPoint rhs = q_action(model, g12, p);
      laws.record("gset_composition", {attempt}, point_distance(lhs, rhs), 1e-9);
      laws.record("point_invariant", {attempt}, validate_point(model, lhs), model.tolerance());
      ++composition;
    } catch (const DomainError&) {
    } catch (const ChartError&) {
    }
  }
  out.sample_counts["gset_composition"] = composition;
  out.sample_counts["gset_identity"] = identity;

  // Local rack laws on points well inside M_U.
  int distributive = 0, injective = 0;
  for (int attempt = 0; attempt < 10 * target && distributive < target; ++attempt) {
    try {
      const MPoint x = sampler.point(0.5), y = sampler.point(0.5), z = sampler.point(0.5);
      const MPoint xy = rack_product(model, x, y);
      const GroupElement phi_x_inv = inverse(rep, phi_map(model, x));
      const MPoint back = q_action(model, phi_x_inv, xy);
      laws.record("left_injectivity", {attempt}, point_distance(back, y), 1e-9);
      ++injective;
      const MPoint lhs = rack_product(model, x, rack_product(model, y, z));
      const MPoint rhs = rack_product(model, xy, rack_product(model, x, z));
      laws.record("self_distributivity", {attempt}, point_distance(lhs, rhs), 1e-8);
      ++distributive;
    } catch (const DomainError&) {
    } catch (const ChartError&) {
    }
  }
  out.sample_counts["self_distributivity"] = distributive;
  out.sample_counts["left_injectivity"] = injective;

  // Equivariance on exp(h), and on exp(g) for strict triples.
  SampleOptions eq = options.sampling;
  eq.seed = options.sampling.seed + 1;
  int evaluated = 0;
  laws.merge(check_equivariance(model, eq, false, 1e-8, &evaluated));
  out.sample_counts["equivariance"] = evaluated;
  if (model.strict()) {
    eq.seed = options.sampling.seed + 2;
    const auto full = check_equivariance(model, eq, true, 1e-8, &evaluated);
    laws.record("equivariance_full", {}, full.residual("equivariance"), 1e-8);
    out.sample_counts["equivariance_full"] = evaluated;
  }

  // Tangent structure.
  out.recovered = recover_tangent_triple(model);
  out.roundtrip = roundtrip_residuals(t, out.recovered);
  laws.record("roundtrip", {}, out.roundtrip.max(), options.roundtrip_tolerance);

  out.a_theta_recovered = Mat::Zero(n, static_cast<Eigen::Index>(n) * d);
  out.a_theta_expected = Mat::Zero(n, static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i) {
    const Mat expected = a_theta(t, Vec::Unit(n, i));
    for (int j = 0; j < d; ++j) {
      const Vec r = recover_a_theta(model, Vec::Unit(n, i), Vec::Unit(d, j));
      out.a_theta_recovered.col(i * d + j) = r;
      out.a_theta_expected.col(i * d + j) = expected.col(j);
      laws.record("a_theta", {i, j}, max_abs(Vec(r - expected.col(j))), 1e-4);
    }
  }
  return out;
}

}  // namespace llt
