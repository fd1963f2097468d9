#include <string>

#include "doctest.h"
#include "llt/spec_io.hpp"

using namespace llt;

namespace {

const std::string kF2 = R"({
  "lie_algebra": {"dim": 2, "labels": ["a", "b"],
                  "structure_constants": [[0, 1, 1, 1.0], [1, 0, 1, -1.0]]},
  "module": {"dim_v": 1, "action_matrices": [[[2.0]], [[0.0]]]},
  "theta": {"matrix": [[0.0], [1.0]]}
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

const TripleSpec& as_triple(const SpecFile& f) {
  REQUIRE(std::holds_alternative<TripleSpec>(f));
  return std::get<TripleSpec>(f);
}

}  // namespace

TEST_CASE("triple spec") {
  const auto spec = parse_spec(kF2);
  const auto& c = as_triple(spec).components;
  const auto ref = scaling_family_components(2.0);
  CHECK(c.algebra.dim() == 2);
  CHECK(c.algebra.labels() == std::vector<std::string>{"a", "b"});
  CHECK(c.algebra.constants() == ref.algebra.constants());
  CHECK(c.action.matrices()[0] == ref.action.matrices()[0]);
  CHECK(c.theta == ref.theta);
  CHECK(c.faithful_rep.empty());
  CHECK_FALSE(as_triple(spec).h_basis);
  CHECK_NOTHROW(c.build());

  SUBCASE("unspecified structure constants are zero") {
    const auto abelian = parse_spec(replace(kF2, "[[0, 1, 1, 1.0], [1, 0, 1, -1.0]]", "[]"));
    for (double x : as_triple(abelian).components.algebra.constants()) CHECK(x == 0.0);
  }
  SUBCASE("optional blocks") {
    const auto text = replace(kF2, R"("theta")", R"("h_basis": {"vectors": [[0, 1]]},
      "faithful_rep": {"matrix_dim": 2, "matrices": [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]},
      "config": {"tolerance": 1e-8, "radius": 0.2, "step": 1e-3, "scheme": "richardson",
                 "samples": 50, "seed": 11},
      "theta")");
    const auto parsed = parse_spec(text);
    const auto& t = as_triple(parsed);
    REQUIRE(t.h_basis);
    CHECK(t.h_basis->dim() == 1);
    CHECK(t.components.faithful_rep.size() == 2);
    CHECK(t.config.tolerance == 1e-8);
    CHECK(t.config.radius == 0.2);
    CHECK(t.config.step == 1e-3);
    CHECK(t.config.scheme == "richardson");
    CHECK(t.config.samples == 50);
    CHECK(t.config.seed == 11u);
  }
  SUBCASE("morphism") {
    const auto text =
        replace(kF2, R"("theta")", R"("morphism": {"target": )" + kF2 +
                                       R"(, "phi": [[1, 0], [0, 1]], "psi": [[1]]}, "theta")");
    const auto parsed = parse_spec(text);
    const auto& t = as_triple(parsed);
    REQUIRE(t.morphism);
    CHECK(t.morphism->phi == Mat::Identity(2, 2));
    CHECK(t.morphism->target->components.algebra.dim() == 2);
  }
}

TEST_CASE("malformed triple specs") {
  SUBCASE("JSON syntax error reports the position") {
    try {
      parse_spec("{\"lie_algebra\": {\"dim\": 2,, }", "x.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("x.json") != std::string::npos);
      CHECK(msg.find("column") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_spec("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_spec("{}"), ParseError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[0, 1, 1, 1.0]", "[0, 2, 1, 1.0]")), StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[1, 0, 1, -1.0]", "[0, 1, 1, -1.0]")),
                  StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[0, 1, 1, 1.0]", "[0, 1, 1]")), ParseError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[0, 1, 1, 1.0]", "[0.5, 1, 1, 1.0]")), ParseError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[[0.0], [1.0]]", "[[0.0, 1.0]]")), StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[[[2.0]], [[0.0]]]", "[[[2.0]]]")), StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, "[[2.0]]", "[[\"2\"]]")), ParseError);
  CHECK_THROWS_AS(parse_spec(replace(kF2, R"("dim_v": 1)", R"("dim_v": -1)")), StructuralError);
  CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("rack spec") {
  const std::string z2 = R"({
    "group": {"size": 2, "mul_table": [[0, 1], [1, 0]]},
    "x_size": 2, "action_table": [[0, 1], [1, 0]], "theta_table": [0, 1], "basepoint": 0
  })";
  const auto spec = parse_spec(z2);
  REQUIRE(std::holds_alternative<RackSpec>(spec));
  const auto& t = std::get<RackSpec>(spec).triple;
  CHECK(t.group.size() == 2);
  CHECK(t.act(1, 0) == 1);
  CHECK(t.theta == std::vector<int>{0, 1});

  SUBCASE("named group") {
    const auto named = parse_spec(replace(z2, R"("size": 2, "mul_table": [[0, 1], [1, 0]])",
                                          R"("name": "Z2")"));
    CHECK(std::get<RackSpec>(named).triple.group.mul_table() == cyclic_group(2).mul_table());
  }
  CHECK_THROWS_AS(parse_spec(replace(z2, R"("theta_table": [0, 1])", R"("theta_table": [0, 2])")),
                  StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(z2, R"("basepoint": 0)", R"("basepoint": 2)")),
                  StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(z2, "[[0, 1], [1, 0]], \"theta", "[[0, 1], [1, 5]], \"theta")),
                  StructuralError);
  CHECK_THROWS_AS(parse_spec(replace(z2, "\"mul_table\": [[0, 1], [1, 0]]", "\"mul_table\": [[0, 1]]")),
                  StructuralError);
}

TEST_CASE("builtin specs") {
  CHECK(as_triple(builtin_spec("sl2-adjoint")).components.algebra.dim() == 3);
  CHECK_FALSE(as_triple(builtin_spec("heisenberg-ideal")).components.faithful_rep.empty());
  CHECK(as_triple(builtin_spec("scaling:0.5")).components.action.matrices()[0](0, 0) == 0.5);
  CHECK(std::holds_alternative<RackSpec>(builtin_spec("s3-conjugation")));
  CHECK_THROWS_AS(builtin_spec("scaling:"), StructuralError);
  CHECK_THROWS_AS(builtin_spec("scaling:2x"), StructuralError);
  CHECK_THROWS_AS(builtin_spec("so3"), StructuralError);
}
