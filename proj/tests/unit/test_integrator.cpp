#include <cmath>

#include "doctest.h"
#include "llt/integrator.hpp"

using namespace llt;

namespace {

const Vec kA = Vec::Unit(2, 0);
const Vec kB = Vec::Unit(2, 1);

LocalRackModel model_of(const TripleComponents& c, DiffConfig diff = {}) {
  ModelOptions options;
  options.faithful_rep = c.faithful_rep;
  options.diff = diff;
  return build_model(c.build(), options);
}

LocalRackModel scaling_model(double lambda) { return model_of(scaling_family_components(lambda)); }

LieLeibnizTriple zero_theta_triple() {
  const auto sl2 = sl2_algebra();
  return build_triple(sl2, ModuleAction::trivial(sl2, 2), EmbeddingTensor{Mat::Zero(3, 2)});
}

Vec scalar(double x) { return Vec::Constant(1, x); }

std::vector<TripleComponents> roundtrip_corpus() {
  std::vector<TripleComponents> out;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    out.push_back(random_triple(seed, TripleFamily::strict_from_ideal));
  }
  for (double lambda : {-1.0, 0.0, 0.5, 1.0, 2.0}) out.push_back(scaling_family_components(lambda));
  out.push_back(sl2_adjoint_components());
  out.push_back(heisenberg_ideal_components());
  return out;
}

}  // namespace

TEST_CASE("build_model") {
  SUBCASE("adjoint sl2 with r_U = 0.3") {
    ModelOptions options;
    options.radius = 0.3;
    const auto m = build_model(sl2_adjoint_components().build(), options);
    CHECK(m.h_basis().dim() == 3);
    CHECK(m.strict());
    CHECK(m.radius() == 0.3);
  }
  SUBCASE("F(2) gets h = span{b}") {
    const auto m = scaling_model(2.0);
    REQUIRE(m.h_basis().dim() == 1);
    CHECK(m.h_basis().contains(kB));
    CHECK_FALSE(m.strict());
    CHECK(m.radius() == doctest::Approx(0.3));
  }
  SUBCASE("Heisenberg needs a faithful rep") {
    auto c = heisenberg_ideal_components();
    CHECK_THROWS_AS(build_model(c.build()), CapabilityError);
    CHECK_NOTHROW(model_of(c));
  }
  SUBCASE("invalid h") {
    ModelOptions options;
    options.h_basis = SubspaceBasis::full(2);
    CHECK_THROWS_AS(build_model(scaling_family_components(2.0).build(), options), ConstraintError);
  }
  SUBCASE("radius beyond the chart") {
    ModelOptions options;
    options.radius = 0.8;
    CHECK_THROWS_AS(build_model(scaling_family_components(2.0).build(), options), StructuralError);
  }
  SUBCASE("theta = 0: q never moves the u component") {
    const auto m = build_model(zero_theta_triple());
    Vec v(2);
    v << 3.0, -1.0;
    const auto p = make_point(m, v);
    const auto g = exp_element(m.rep(), Vec(0.2 * Vec::Unit(3, 1)));
    CHECK(in_omega(m, g, p));
    CHECK(q_action(m, g, p).u == Vec::Zero(3));
  }
}

TEST_CASE("in_omega and q_action on F(2)") {
  const auto m = scaling_model(2.0);
  const auto p = make_point(m, scalar(0.9 * m.radius()));
  CHECK(in_omega(m, identity_element(m.rep()), p));
  // rho_{exp(t a)} v = e^{2t} v; e^{0.2} * 0.9 > 1 leaves U.
  const auto g = exp_element(m.rep(), Vec(0.1 * kA));
  CHECK(rho(m, g)(0, 0) == doctest::Approx(std::exp(0.2)).epsilon(1e-14));
  CHECK_FALSE(in_omega(m, g, p));
  CHECK_THROWS_AS(q_action(m, g, p), DomainError);
  // Shrinking the group element brings it back.
  const auto small = exp_element(m.rep(), Vec(0.01 * kA));
  CHECK(in_omega(m, small, p));
  CHECK_THROWS_AS(make_point(m, scalar(1.0)), DomainError);
}

TEST_CASE("local G-set and rack laws on explicit points") {
  const auto m = model_of(sl2_adjoint_components());
  const auto& rep = m.rep();
  Vec v(3);
  v << 0.05, -0.1, 0.08;
  const auto p = make_point(m, v);
  const auto o = distinguished_point(m);
  SUBCASE("q(e, p) = p and the fixed point") {
    const auto q = q_action(m, identity_element(rep), p);
    CHECK(q.v == p.v);
    const auto g = exp_element(rep, Vec(0.2 * Vec::Unit(3, 0)));
    const auto fixed = q_action(m, g, o);
    CHECK(fixed.v == o.v);
    CHECK(fixed.u == o.u);
  }
  SUBCASE("composition") {
    const auto g1 = exp_element(rep, Vec(0.1 * Vec::Unit(3, 1)));
    const auto g2 = exp_element(rep, Vec(-0.07 * Vec::Unit(3, 0) + 0.05 * Vec::Unit(3, 2)));
    const auto lhs = q_action(m, g1, q_action(m, g2, p));
    const auto rhs = q_action(m, group_mul(rep, g1, g2), p);
    CHECK(max_abs(Vec(lhs.v - rhs.v)) <= 1e-9);
  }
  SUBCASE("Phi") {
    CHECK(phi_map(m, o).coords == Vec::Zero(3));
    CHECK(max_abs(Mat(phi_map(m, o).matrix - Mat::Identity(6, 6))) == 0.0);
    CHECK(phi_map(m, p).coords == v);
    const auto f2 = scaling_model(2.0);
    CHECK(phi_map(f2, make_point(f2, scalar(0.2))).coords == Vec(0.2 * kB));
  }
  SUBCASE("rack product with the distinguished point") {
    const auto ep = rack_product(m, o, p);
    CHECK(ep.v == p.v);
    const auto pe = rack_product(m, p, o);
    CHECK(pe.v == o.v);
  }
}

TEST_CASE("check_equivariance") {
  SUBCASE("strict sl2: full g, 200 samples") {
    const auto m = model_of(sl2_adjoint_components());
    int evaluated = 0;
    const auto report = check_equivariance(m, SampleOptions{200, 9, 0.1}, true, 1e-8, &evaluated);
    CHECK(report.passed);
    CHECK(evaluated == 200);
  }
  SUBCASE("F(2): holds on span{b}, fails along a with the a_theta leading term") {
    const auto m = scaling_model(2.0);
    CHECK(check_equivariance(m, SampleOptions{200, 4, 0.1}, false).passed);
    const double t = 1e-3, c = 0.1;
    const auto h = exp_element(m.rep(), Vec(t * kA));
    const auto p = make_point(m, scalar(c));
    const Vec lhs = phi_map(m, q_action(m, h, p)).coords;
    const Vec rhs = conjugate(m.rep(), h, phi_map(m, p)).coords;
    // lhs - rhs = -t a_theta(a)(v) + O(t^2) = t c b + O(t^2).
    const Vec leading = -a_theta(m.triple(), kA) * scalar(c);
    CHECK(max_abs(Vec((lhs - rhs) / t - leading)) < 10 * t);
    CHECK(max_abs(leading) > 0.05);
    const auto report = check_equivariance(m, {{Vec(t * kA), p}});
    CHECK_FALSE(report.passed);
  }
  SUBCASE("theta = 0") {
    const auto m = build_model(zero_theta_triple());
    CHECK(check_equivariance(m, SampleOptions{50, 1, 0.1}, true).passed);
  }
}

TEST_CASE("recover_tangent_triple") {
  SUBCASE("adjoint sl2") {
    const auto m = model_of(sl2_adjoint_components());
    const auto r = recover_tangent_triple(m);
    const auto& c = m.triple().algebra().constants();
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(r.bracket[k] - c[k]) <= 1e-5);
  }
  SUBCASE("F(2)") {
    const auto m = scaling_model(2.0);
    const auto r = recover_tangent_triple(m);
    CHECK(std::abs(r.action[0](0, 0) - 2.0) <= 1e-5);
    CHECK(max_abs(Mat(r.theta - m.triple().theta())) <= 1e-6);
  }
  SUBCASE("theta = 0") {
    const auto m = build_model(zero_theta_triple());
    const auto r = recover_tangent_triple(m);
    CHECK(max_abs(r.theta) == 0.0);
    for (double x : r.bracket) CHECK(x == 0.0);
  }
}

TEST_CASE("recover_a_theta") {
  SUBCASE("strict triple") {
    const auto m = model_of(sl2_adjoint_components());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(max_abs(recover_a_theta(m, Vec::Unit(3, i), Vec::Unit(3, j))) <= 1e-5);
      }
  }
  SUBCASE("F(2): a, v0 -> -b") {
    const auto m = scaling_model(2.0);
    CHECK(max_abs(Vec(recover_a_theta(m, kA, scalar(1.0)) + kB)) <= 1e-4);
    // a in Im(theta)
    CHECK(max_abs(recover_a_theta(m, kB, scalar(1.0))) <= 1e-5);
  }
}

TEST_CASE("round trip over the corpus") {
  for (const auto& c : roundtrip_corpus()) {
    CAPTURE(c.name);
    const auto central = model_of(c);
    CHECK(roundtrip_residuals(central.triple(), recover_tangent_triple(central)).max() <= 1e-4);
    const auto richardson = model_of(c, DiffConfig{1e-4, DiffScheme::richardson});
    CHECK(roundtrip_residuals(richardson.triple(), recover_tangent_triple(richardson)).max() <=
          1e-7);
  }
}

TEST_CASE("integration suite") {
  for (const auto& c : roundtrip_corpus()) {
    CAPTURE(c.name);
    const auto m = model_of(c);
    SuiteOptions options;
    options.sampling.samples = 100;
    const auto report = run_integration_suite(m, options);
    CHECK(report.laws.passed);
    for (const auto& v : report.laws.violations) {
      CAPTURE(v.law);
      CAPTURE(v.residual);
      CHECK(false);
    }
    CHECK(report.sample_counts.at("gset_composition") == 100);
    CHECK(report.sample_counts.at("self_distributivity") == 100);
    CHECK(report.sample_counts.at("equivariance") == 100);
    CHECK(report.strict == m.strict());
    CHECK(report.laws.residuals.count("equivariance_full") == (m.strict() ? 1u : 0u));
  }
}
