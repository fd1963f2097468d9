#include <cmath>
#include <random>

#include "doctest.h"
#include "llt/catalog.hpp"
#include "llt/local_lie.hpp"

using namespace llt;

namespace {

MatrixRep catalog_rep(CatalogAlgebra which) {
  const auto entry = catalog_entry(which);
  return {entry.algebra, entry.faithful_rep};
}

Vec random_coords(std::mt19937_64& rng, int n, double max_norm) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = normal(rng);
  return x / x.norm() * (unif(rng) * max_norm);
}

const Vec kH = Vec::Unit(3, 0);
const Vec kE = Vec::Unit(3, 1);
const Vec kF = Vec::Unit(3, 2);

}  // namespace

TEST_CASE("MatrixRep") {
  SUBCASE("catalog reps are faithful representations") {
    for (auto which : all_catalog_algebras()) {
      CAPTURE(to_string(which));
      CHECK_NOTHROW(catalog_rep(which));
    }
  }
  SUBCASE("adjoint needs a trivial center") {
    CHECK_NOTHROW(MatrixRep::adjoint(sl2_algebra()));
    CHECK_NOTHROW(MatrixRep::adjoint(aff1_algebra()));
    CHECK_THROWS_AS(MatrixRep::adjoint(heisenberg_algebra()), CapabilityError);
  }
  SUBCASE("dependent matrices are not faithful") {
    const auto alg = LieAlgebraData::abelian(2);
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    try {
      MatrixRep(alg, {m, Mat(2.0 * m)});
      FAIL("expected ConstraintError");
    } catch (const ConstraintError& e) {
      CHECK(e.constraint() == "faithful");
    }
  }
  SUBCASE("non-homomorphism is rejected") {
    auto mats = catalog_entry(CatalogAlgebra::sl2).faithful_rep;
    mats[0] = -mats[0];
    try {
      MatrixRep(sl2_algebra(), mats);
      FAIL("expected ConstraintError");
    } catch (const ConstraintError& e) {
      CHECK(e.constraint() == "representation");
    }
  }
  SUBCASE("preimage inverts image") {
    const auto rep = catalog_rep(CatalogAlgebra::upper_triangular3);
    Vec xi(6);
    xi << 0.1, -0.2, 0.3, 0.4, -0.5, 0.6;
    double residual = 1.0;
    CHECK(max_abs(Vec(rep.preimage(rep.image(xi), &residual) - xi)) < 1e-14);
    CHECK(residual < 1e-14);
  }
}

TEST_CASE("group_mul") {
  const auto rep = catalog_rep(CatalogAlgebra::sl2);
  const auto e = identity_element(rep);
  const auto g = exp_element(rep, Vec(0.1 * kH + 0.2 * kE - 0.05 * kF));
  SUBCASE("identity") {
    CHECK(max_abs(Vec(group_mul(rep, g, e).coords - g.coords)) < 1e-14);
    CHECK(max_abs(Vec(group_mul(rep, e, g).coords - g.coords)) < 1e-14);
  }
  SUBCASE("nilpotent one-parameter subgroup is additive") {
    const auto a = exp_element(rep, Vec(0.15 * kE));
    const auto b = exp_element(rep, Vec(0.25 * kE));
    CHECK(max_abs(Vec(group_mul(rep, a, b).coords - 0.4 * kE)) < 1e-14);
  }
  SUBCASE("inverse") {
    CHECK(max_abs(group_mul(rep, g, inverse(rep, g)).coords) < 1e-12);
  }
  SUBCASE("chart exits") {
    CHECK_THROWS_AS(exp_element(rep, Vec(0.6 * kH)), ChartError);
    const auto a = exp_element(rep, Vec(0.3 * kE));
    CHECK_THROWS_AS(group_mul(rep, a, a), ChartError);
  }
  SUBCASE("associativity on every catalog algebra") {
    for (auto which : all_catalog_algebras()) {
      CAPTURE(to_string(which));
      const auto r = catalog_rep(which);
      const int n = r.algebra().dim();
      std::mt19937_64 rng(17);
      double worst = 0.0;
      for (int s = 0; s < 100; ++s) {
        const auto a = exp_element(r, random_coords(rng, n, 0.1));
        const auto b = exp_element(r, random_coords(rng, n, 0.1));
        const auto c = exp_element(r, random_coords(rng, n, 0.1));
        const Vec left = group_mul(r, group_mul(r, a, b), c).coords;
        const Vec right = group_mul(r, a, group_mul(r, b, c)).coords;
        worst = std::max(worst, max_abs(Vec(left - right)));
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("adjoint") {
  const auto sl2 = sl2_algebra();
  const auto rep = catalog_rep(CatalogAlgebra::sl2);
  SUBCASE("Ad_e is the identity") {
    const Vec xi = 0.3 * kH - 0.7 * kF;
    CHECK(max_abs(Vec(adjoint(sl2, identity_element(rep), xi) - xi)) == 0.0);
  }
  SUBCASE("Ad_exp(t h) e = e^{2t} e") {
    for (double t : {-0.3, 0.1, 0.4}) {
      const Vec out = adjoint(sl2, exp_element(rep, Vec(t * kH)), kE);
      CHECK(max_abs(Vec(out - std::exp(2.0 * t) * kE)) < 1e-14);
    }
  }
  SUBCASE("Ad_g is a Lie algebra automorphism and matches conjugation") {
    for (auto which : all_catalog_algebras()) {
      CAPTURE(to_string(which));
      const auto r = catalog_rep(which);
      const auto& alg = r.algebra();
      const int n = alg.dim();
      std::mt19937_64 rng(5);
      for (int s = 0; s < 20; ++s) {
        const auto g = exp_element(r, random_coords(rng, n, 0.4));
        const Vec x = random_coords(rng, n, 1.0), y = random_coords(rng, n, 1.0);
        const Vec lhs = adjoint(alg, g, alg.bracket(x, y));
        const Vec rhs = alg.bracket(adjoint(alg, g, x), adjoint(alg, g, y));
        CHECK(max_abs(Vec(lhs - rhs)) < 1e-12);
        CHECK(max_abs(Vec(adjoint_via_rep(r, g, x) - adjoint(alg, g, x))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("s_map") {
  // g' = span{b} in aff1, an ideal, so conjugation stays in G'.
  const auto rep = catalog_rep(CatalogAlgebra::aff1);
  const auto& alg = rep.algebra();
  const Vec b = Vec::Unit(2, 1);
  const SubspaceBasis g_prime(2, {b});
  SUBCASE("s(e) = 0") { CHECK(s_map(g_prime, identity_element(rep)) == Vec::Zero(2)); }
  SUBCASE("T_e s is the identity on g'") {
    const Vec d = derivative_at_identity(
        [&](double t) { return s_map(g_prime, exp_element(rep, Vec(t * b))); });
    CHECK(max_abs(Vec(d - b)) <= 1e-6);
  }
  SUBCASE("s(h g' h^-1) = Ad_h s(g')") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-0.2, 0.2);
    for (int k = 0; k < 50; ++k) {
      const auto h = exp_element(rep, random_coords(rng, 2, 0.2));
      const auto gp = exp_element(rep, Vec(unif(rng) * b));
      const Vec lhs = s_map(g_prime, conjugate(rep, h, gp));
      const Vec rhs = adjoint(alg, h, s_map(g_prime, gp));
      CHECK(max_abs(Vec(lhs - rhs)) <= 1e-8);
    }
  }
  SUBCASE("outside g'") {
    CHECK_THROWS_AS(s_map(g_prime, exp_element(rep, Vec(0.1 * Vec::Unit(2, 0)))), DomainError);
  }
}

TEST_CASE("derivative_at_identity") {
  const DiffConfig cfg;
  Vec v(2);
  v << 1.5, -2.0;
  CHECK(max_abs(derivative_at_identity([&](double) { return v; }, cfg)) == 0.0);
  CHECK(max_abs(derivative_at_identity([&](double t) { return Vec(t * t * v); }, cfg)) < 1e-15);
  const auto rep = catalog_rep(CatalogAlgebra::sl2);
  const Vec xi = 0.2 * kH + 0.1 * kE - 0.3 * kF;
  const Vec d = derivative_at_identity(
      [&](double t) { return exp_element(rep, Vec(t * xi)).coords; }, cfg);
  CHECK(max_abs(Vec(d - xi)) <= 10 * cfg.step * cfg.step * xi.norm());
  SUBCASE("Richardson removes the h^2 term") {
    DiffConfig r{1e-2, DiffScheme::richardson};
    DiffConfig c{1e-2, DiffScheme::central};
    auto cubic = [&](double t) { return Vec(t * t * t * v + t * v); };
    // Central error is h^2 v exactly; Richardson is exact for cubics.
    CHECK(max_abs(Vec(derivative_at_identity(cubic, c) - v)) == doctest::Approx(1e-4 * 2.0));
    CHECK(max_abs(Vec(derivative_at_identity(cubic, r) - v)) < 1e-12);
  }
  SUBCASE("invalid step") {
    CHECK_THROWS_AS(derivative_at_identity([&](double) { return v; }, DiffConfig{0.0}),
                    StructuralError);
  }
}

TEST_CASE("mixed_second_derivative") {
  Vec w(3);
  w << 1.0, -2.0, 0.5;
  CHECK(max_abs(Vec(mixed_second_derivative([&](double a, double b) { return Vec(a * b * w); }) -
                    w)) < 1e-12);
  CHECK(max_abs(mixed_second_derivative([&](double a, double b) {
          return Vec::Constant(1, a * a + b * b);
        })) < 1e-12);

  // coords(exp(t1 e_i) exp(t2 e_j) exp(-t1 e_i)) has mixed derivative [e_i, e_j].
  const auto rep = catalog_rep(CatalogAlgebra::sl2);
  const auto& alg = rep.algebra();
  auto surface_error = [&](const DiffConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec a = alg.basis_vector(i), b = alg.basis_vector(j);
        const Vec got = mixed_second_derivative(
            [&](double t1, double t2) {
              return conjugate(rep, exp_element(rep, Vec(t1 * a)), exp_element(rep, Vec(t2 * b)))
                  .coords;
            },
            cfg);
        worst = std::max(worst, max_abs(Vec(got - alg.bracket(a, b))));
      }
    return worst;
  };
  const DiffConfig central;
  CHECK(surface_error(central) <= 100 * central.step * central.step);
  const DiffConfig richardson{1e-2, DiffScheme::richardson};
  const double h4 = std::pow(richardson.step, 4);
  CHECK(surface_error(richardson) <= 100 * h4);
  // Without Richardson the same step is only second order.
  CHECK(surface_error(DiffConfig{1e-2, DiffScheme::central}) > 100 * h4);
}
