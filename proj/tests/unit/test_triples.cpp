#include "doctest.h"
#include "llt/triples.hpp"

using namespace llt;

namespace {

const Vec kA = Vec::Unit(2, 0);
const Vec kB = Vec::Unit(2, 1);

LieLeibnizTriple scaling(double lambda) { return scaling_family_components(lambda).build(); }

// theta = 0 with the trivial action of sl2 on R^2.
LieLeibnizTriple zero_theta_triple() {
  const auto sl2 = sl2_algebra();
  return build_triple(sl2, ModuleAction::trivial(sl2, 2), EmbeddingTensor{Mat::Zero(3, 2)});
}

std::vector<TripleComponents> corpus() {
  std::vector<TripleComponents> out;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    out.push_back(random_triple(seed, TripleFamily::strict_from_ideal));
  }
  for (double lambda : {-1.0, 0.0, 0.5, 1.0, 2.0}) out.push_back(scaling_family_components(lambda));
  out.push_back(sl2_adjoint_components());
  out.push_back(heisenberg_ideal_components());
  return out;
}

}  // namespace

TEST_CASE("build_triple examples") {
  SUBCASE("adjoint sl2: derived bracket is the sl2 bracket") {
    const auto t = sl2_adjoint_components().build();
    const auto& sl2 = t.algebra();
    for (std::size_t i = 0; i < sl2.constants().size(); ++i) {
      CHECK(t.bracket().tensor()[i] == doctest::Approx(sl2.constants()[i]));
    }
  }
  SUBCASE("scaling family is valid with zero bracket for every lambda") {
    for (double lambda : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 7.5}) {
      const auto t = scaling(lambda);
      CHECK(t.bracket().tensor() == std::vector<double>{0.0});
    }
  }
  SUBCASE("scaling family with b.v = v") {
    // b.v = v makes [v, v] = v, so theta[v, v] = b while [b, b] = 0: the
    // quadratic residual is 1. It also breaks the module law, since
    // A_[a,b] = A_b = 1 but [A_a, A_b] = 0 in dimension one, and
    // build_triple reports the module failure first.
    auto c = scaling_family_components(2.0);
    auto mats = c.action.matrices();
    mats[1](0, 0) = 1.0;
    const ModuleAction action(c.algebra, 1, mats);
    const auto report = evaluate_triple(c.algebra, action, c.theta);
    CHECK(report.residual("quadratic_constraint") == 1.0);
    CHECK(report.residual("module.homomorphism") == 1.0);
    try {
      build_triple(c.algebra, action, EmbeddingTensor{c.theta});
      FAIL("expected ConstraintError");
    } catch (const ConstraintError& e) {
      CHECK(e.constraint() == "module");
    }
  }
  SUBCASE("shape mismatch is structural") {
    auto c = scaling_family_components(1.0);
    CHECK_THROWS_AS(build_triple(c.algebra, c.action, EmbeddingTensor{Mat::Zero(2, 2)}),
                    StructuralError);
  }
}

TEST_CASE("a_theta") {
  SUBCASE("F(2): a_theta(a) sends v to -b") {
    const Mat m = a_theta(scaling(2.0), kA);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 1);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(1, 0) == -1.0);
  }
  SUBCASE("F(1): zero") { CHECK(max_abs(a_theta(scaling(1.0), kA)) == 0.0); }
  SUBCASE("F(lambda): a_theta(a)(v) = (1 - lambda) b, a_theta(b) = 0") {
    for (double lambda : {-1.0, 0.0, 0.5, 3.0}) {
      const auto t = scaling(lambda);
      CHECK(a_theta(t, kA)(1, 0) == doctest::Approx(1.0 - lambda));
      CHECK(max_abs(a_theta(t, kB)) == 0.0);
    }
  }
}

TEST_CASE("is_strict and max_strictness_subalgebra") {
  const auto adj = sl2_adjoint_components().build();
  CHECK(is_strict(adj));
  CHECK(max_strictness_subalgebra(adj).dim() == 3);

  CHECK_FALSE(is_strict(scaling(2.0)));
  CHECK(is_strict(scaling(1.0)));

  const auto h = max_strictness_subalgebra(scaling(2.0));
  REQUIRE(h.dim() == 1);
  CHECK(h.contains(kB));
  CHECK_FALSE(h.contains(kA));

  const auto zero = zero_theta_triple();
  CHECK(is_strict(zero));
  CHECK(max_strictness_subalgebra(zero).dim() == 3);
}

TEST_CASE("relaxed augmentation") {
  const auto t = scaling(2.0);
  CHECK(check_relaxed_augmentation(t, SubspaceBasis(2, {kB})).passed);
  // span{a} misses Im(theta) and a is not equivariant.
  const auto bad = check_relaxed_augmentation(t, SubspaceBasis(2, {kA}));
  CHECK_FALSE(bad.law_passed("contains_image"));
  CHECK_FALSE(bad.law_passed("equivariance"));
  CHECK_THROWS_AS(RelaxedAugmentation(t, SubspaceBasis::full(2)), ConstraintError);
  CHECK_NOTHROW(RelaxedAugmentation(t, SubspaceBasis(2, {kB})));
}

TEST_CASE("check_morphism") {
  const auto f1 = scaling(1.0);
  SUBCASE("identity") {
    CHECK(check_morphism(f1, f1, {Mat::Identity(2, 2), Mat::Identity(1, 1)}).passed);
  }
  // F(1) (+) a trivial summand: V' = span{v1, v2}, a acts as diag(1, 0),
  // theta'(v1) = b, theta'(v2) = 0.
  const auto alg = aff1_algebra();
  Mat act_a = Mat::Zero(2, 2);
  act_a(0, 0) = 1.0;
  Mat theta2 = Mat::Zero(2, 2);
  theta2(1, 0) = 1.0;
  const auto target =
      build_triple(alg, ModuleAction(alg, 2, {act_a, Mat::Zero(2, 2)}), EmbeddingTensor{theta2});
  Mat inclusion = Mat::Zero(2, 1);
  inclusion(0, 0) = 1.0;
  SUBCASE("inclusion into F(1) + trivial summand") {
    const auto report = check_morphism(f1, target, {Mat::Identity(2, 2), inclusion});
    CHECK(report.passed);
    CHECK(report.law_passed("psi_leibniz_morphism"));
  }
  SUBCASE("psi = 0 breaks theta compatibility") {
    const auto report = check_morphism(f1, target, {Mat::Identity(2, 2), Mat::Zero(2, 1)});
    CHECK_FALSE(report.passed);
    CHECK_FALSE(report.law_passed("theta_compatibility"));
    CHECK(report.residual("theta_compatibility") == 1.0);
  }
  SUBCASE("composition with the projection back is the identity") {
    Mat projection = Mat::Zero(1, 2);
    projection(0, 0) = 1.0;
    const TripleMorphism in{Mat::Identity(2, 2), inclusion};
    const TripleMorphism out{Mat::Identity(2, 2), projection};
    CHECK(check_morphism(target, f1, out).passed);
    CHECK(check_morphism(f1, f1, compose(out, in)).passed);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(check_morphism(f1, target, {Mat::Identity(2, 2), Mat::Zero(1, 1)}),
                    StructuralError);
  }
}

TEST_CASE("Lie algebra crossed modules") {
  const auto aff = aff1_algebra();
  SUBCASE("ideal inclusion gives a strict triple") {
    const auto m = LieAlgebraData::abelian(1);
    Mat mu(2, 1);
    mu << 0, 1;
    Mat eta_a(1, 1), eta_b(1, 1);
    eta_a << 1;  // [a, b] = b
    eta_b << 0;
    const LieAlgCrossedModule cm{m, aff, mu, ModuleAction(aff, 1, {eta_a, eta_b}), std::nullopt};
    const auto out = triple_from_crossed_module(cm);
    CHECK(out.report.passed);
    CHECK(is_strict(out.triple));
    CHECK(out.report.law_passed("mu_homomorphism"));
    CHECK(out.report.law_passed("eta_derivation"));
  }
  SUBCASE("identity crossed module is the adjoint triple") {
    const auto sl2 = sl2_algebra();
    const LieAlgCrossedModule cm{sl2, sl2, Mat::Identity(3, 3), ModuleAction::adjoint(sl2),
                                 std::nullopt};
    const auto out = triple_from_crossed_module(cm);
    CHECK(is_strict(out.triple));
    CHECK(out.triple.bracket().tensor() == sl2.constants());
  }
  SUBCASE("relaxed: eta(a) = 2 on n' = span{b} yields F(2)") {
    const auto m = LieAlgebraData::abelian(1);
    Mat mu(2, 1);
    mu << 0, 1;
    Mat eta_a(1, 1), eta_b(1, 1);
    eta_a << 2;
    eta_b << 0;
    LieAlgCrossedModule cm{m, aff, mu, ModuleAction(aff, 1, {eta_a, eta_b}),
                           SubspaceBasis(2, {kB})};
    const auto out = triple_from_crossed_module(cm);
    CHECK(out.report.passed);
    REQUIRE(out.h_basis.has_value());
    CHECK(out.h_basis->dim() == 1);
    CHECK_FALSE(is_strict(out.triple));
    CHECK(a_theta(out.triple, kA)(1, 0) == -1.0);
    // The same data is not a plain crossed module: condition 1 fails for a.
    cm.n_prime.reset();
    const auto full = check_crossed_module(cm);
    CHECK_FALSE(full.law_passed("condition1"));
    CHECK_THROWS_AS(triple_from_crossed_module(cm), ConstraintError);
  }
}

TEST_CASE("random_triple families") {
  SUBCASE("strict_from_ideal(heisenberg, center), seed 1") {
    RandomTripleParams p;
    p.algebra = CatalogAlgebra::heisenberg;
    p.ideal = "center";
    const auto t = random_triple(1, TripleFamily::strict_from_ideal, p).build();
    CHECK(is_strict(t));
  }
  SUBCASE("deterministic in seed") {
    const auto a = random_triple(42, TripleFamily::strict_from_ideal);
    const auto b = random_triple(42, TripleFamily::strict_from_ideal);
    CHECK(a.name == b.name);
    CHECK(a.theta == b.theta);
    CHECK(a.algebra.constants() == b.algebra.constants());
  }
  SUBCASE("scaling_family(1) is strict") {
    RandomTripleParams p;
    p.lambda = 1.0;
    CHECK(is_strict(random_triple(3, TripleFamily::scaling_family, p).build()));
  }
  SUBCASE("perturbed_invalid is caught at the quadratic constraint") {
    for (double eps : {1e-3, 1e-1}) {
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        RandomTripleParams p;
        p.epsilon = eps;
        const auto c = random_triple(seed, TripleFamily::perturbed_invalid, p);
        try {
          c.build();
          FAIL("perturbed triple was accepted");
        } catch (const ConstraintError& e) {
          CHECK(e.constraint() == "quadratic_constraint");
          CHECK(e.residual() >= eps / 2);
        }
      }
    }
  }
}

TEST_CASE("properties over the corpus") {
  for (const auto& c : corpus()) {
    CAPTURE(c.name);
    const auto t = c.build();
    // Derived bracket is Leibniz.
    CHECK(check_leibniz(t.bracket()).passed);
    // a_theta vanishes on Im(theta).
    for (int j = 0; j < t.dim_v(); ++j) {
      CHECK(max_abs(a_theta(t, t.theta().col(j))) < 1e-9);
    }
    // Im(theta) is a subalgebra.
    CHECK(bracket_closure_check(t.algebra(), theta_image(t)));
    // h_max contains Im(theta), is closed, and is a valid relaxed augmentation.
    const auto h = max_strictness_subalgebra(t);
    const auto relaxed = check_relaxed_augmentation(t, h, 1e-8);
    CHECK(relaxed.law_passed("contains_image"));
    CHECK(relaxed.law_passed("subalgebra"));
    CHECK(relaxed.passed);
    // Strict iff h_max = g.
    CHECK(is_strict(t, 1e-8) == (h.dim() == t.dim_g()));
  }
}
