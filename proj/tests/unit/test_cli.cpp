#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "llt/cli.hpp"

using namespace llt;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  CAPTURE(r.err);
  CHECK(r.code == expected_code);
  return json::parse(r.out);
}

std::string data(const std::string& name) { return std::string(LLT_DATA_DIR) + "/" + name; }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("verify") {
  SUBCASE("adjoint sl2") {
    const auto r = run({"verify", data("sl2_adjoint.json")});
    CHECK(r.code == kExitPass);
    CHECK(has_line(r.out, "strict: true"));
    CHECK(has_line(r.out, "h_max_dim: 3"));
  }
  SUBCASE("F(2)") {
    const auto r = run({"verify", data("scaling_2.json")});
    CHECK(r.code == kExitPass);
    CHECK(has_line(r.out, "strict: false"));
    CHECK(has_line(r.out, "h_max_dim: 1"));
  }
  SUBCASE("every residual is reported") {
    const auto j = run_json({"verify", "--builtin", "scaling:2"}, kExitPass);
    for (const char* law : {"lie_algebra.jacobi", "module.homomorphism", "linear_constraint",
                            "quadratic_constraint", "derived_leibniz.leibniz"}) {
      CAPTURE(law);
      CHECK(j["checks"]["residuals"].contains(law));
    }
    CHECK(j["h_max_basis"].size() == 1);
  }
  SUBCASE("b . v = v is rejected") {
    const auto j = run_json({"verify", data("scaling_bad_action.json")}, kExitAxiom);
    CHECK(j["valid"] == false);
    CHECK(j["failed_constraint"] == "module");
  }
  SUBCASE("identity morphism") {
    const auto j = run_json({"verify", data("sl2_identity_morphism.json")}, kExitPass);
    CHECK(j["morphism"]["checks"]["passed"] == true);
  }
  SUBCASE("racks") {
    const auto ok = run_json({"verify", data("s3_conjugation_rack.json")}, kExitPass);
    CHECK(ok["strict"] == true);
    CHECK(ok["rack_orbits"].size() == 3);
    const auto bad = run_json({"verify", data("s3_conjugation_corrupted.json")}, kExitAxiom);
    REQUIRE_FALSE(bad["checks"]["violations"].empty());
    CHECK(bad["checks"]["violations"][0]["index"].size() == 3);
    CHECK(run({"verify", "--builtin", "s3-conjugation"}).code == kExitPass);
  }
  SUBCASE("structural and parse errors") {
    for (const char* f : {"malformed.json", "rack_out_of_range.json",
                          "triple_index_out_of_range.json", "missing.json"}) {
      CAPTURE(f);
      const auto r = run({"verify", data(f)});
      CHECK(r.code == kExitStructural);
      CHECK(r.err.find("error:") != std::string::npos);
    }
    CHECK(run({"verify", data("malformed.json")}).err.find("column") != std::string::npos);
    CHECK(run({"verify"}).code == kExitStructural);
    CHECK(run({"verify", "--builtin", "nope"}).code == kExitStructural);
  }
  SUBCASE("tolerance flag") {
    const auto j = run_json({"verify", "--builtin", "sl2-adjoint", "--tolerance", "1e-6"}, 0);
    CHECK(j["tolerance"] == 1e-6);
  }
}

TEST_CASE("integrate") {
  SUBCASE("adjoint sl2 with defaults") {
    const auto j = run_json({"integrate", "--builtin", "sl2-adjoint"}, kExitPass);
    CHECK(j["max_roundtrip_residual"].get<double>() <= 1e-4);
    CHECK(j["laws_passed"] == true);
    CHECK(j["strict"] == true);
    CHECK(j["samples"] == 200);
  }
  SUBCASE("F(2): a_theta(a)(v) = -b") {
    const auto j = run_json({"integrate", data("scaling_2.json")}, kExitPass);
    CHECK(j["seed"] == 7);
    bool found = false;
    for (const auto& e : j["a_theta_recovered"]) {
      if (e["a"] != "a" || e["v"] != 0) continue;
      found = true;
      CHECK(std::abs(e["recovered"][0].get<double>()) <= 1e-4);
      CHECK(std::abs(e["recovered"][1].get<double>() + 1.0) <= 1e-4);
    }
    CHECK(found);
  }
  SUBCASE("Heisenberg without a rep") {
    const auto r = run({"integrate", data("heisenberg_norep.json")});
    CHECK(r.code == kExitCapability);
    CHECK(r.err.find("faithful_rep") != std::string::npos);
    CHECK(run({"integrate", "--builtin", "heisenberg-ideal"}).code == kExitPass);
  }
  SUBCASE("flags override the file config") {
    const auto j = run_json({"integrate", data("scaling_2.json"), "--seed", "3", "--samples", "20",
                             "--scheme", "richardson", "--step", "1e-3", "--radius", "0.2"},
                            kExitPass);
    CHECK(j["seed"] == 3);
    CHECK(j["samples"] == 20);
    CHECK(j["scheme"] == "richardson");
    CHECK(j["step"] == 1e-3);
    CHECK(j["radius"] == 0.2);
    CHECK(j["sample_counts"]["gset_composition"] == 20);
  }
  SUBCASE("an unreachable round-trip tolerance fails") {
    const auto j = run_json({"integrate", "--builtin", "scaling:2", "--tolerance", "1e-15"},
                            kExitAxiom);
    CHECK(j["status"] == "fail");
  }
  SUBCASE("invalid triple") {
    const auto j = run_json({"integrate", data("scaling_bad_action.json")}, kExitAxiom);
    CHECK(j["failed_constraint"] == "module");
  }
  SUBCASE("usage errors") {
    CHECK(run({"integrate", "--builtin", "s3-conjugation"}).code == kExitStructural);
    CHECK(run({"integrate", "--builtin", "sl2-adjoint", "--radius", "0.9"}).code ==
          kExitStructural);
    CHECK(run({"integrate", "--builtin", "sl2-adjoint", "--scheme", "forward"}).code ==
          kExitStructural);
    CHECK(run({"integrate", "--builtin", "sl2-adjoint", "--samples", "0"}).code ==
          kExitStructural);
    CHECK(run({"frobnicate"}).code == kExitStructural);
    CHECK(run({}).code == kExitStructural);
  }
  SUBCASE("help") { CHECK(run({"--help"}).code == kExitPass); }
}

TEST_CASE("corpus") {
  SUBCASE("scaling: 5/5 valid, strict exactly at lambda = 1") {
    const auto j = run_json({"corpus", "--family", "scaling", "--count", "5"}, kExitPass);
    REQUIRE(j["instances"].size() == 5);
    for (const auto& inst : j["instances"]) {
      CHECK(inst["observed"]["valid"] == true);
      CHECK(inst["observed"]["strict"] == (inst["lambda"].get<double>() == 1.0));
    }
  }
  SUBCASE("perturbed_invalid: none valid, all at the quadratic constraint") {
    const auto j = run_json({"corpus", "--family", "perturbed_invalid", "--count", "4"}, 0);
    CHECK(j["summary"]["perturbed_invalid"]["valid"] == 0);
    for (const auto& inst : j["instances"]) {
      CHECK(inst["observed"]["failed_constraint"] == "quadratic_constraint");
    }
  }
  SUBCASE("racks and crossed modules") {
    CHECK(run({"corpus", "--family", "conjugation_racks", "--count", "16"}).code == kExitPass);
    const auto j = run_json({"corpus", "--family", "crossed_modules", "--count", "3"}, 0);
    CHECK(j["instances"][0]["observed"]["full_equivariance"] == false);
  }
  SUBCASE("text matrix") {
    const auto r = run({"corpus", "--family", "strict_from_ideal", "--count", "3"});
    CHECK(r.code == kExitPass);
    CHECK(has_line(r.out, "strict_from_ideal: 3/3 as expected, 3 valid"));
  }
  CHECK(run({"corpus", "--family", "bogus"}).code == kExitStructural);
}

TEST_CASE("identical invocations give byte-identical JSON") {
  const std::vector<std::vector<std::string>> invocations = {
      {"verify", "--builtin", "scaling:2", "--format", "json"},
      {"integrate", "--builtin", "sl2-adjoint", "--seed", "5", "--format", "json"},
      {"corpus", "--count", "2", "--seed", "9", "--format", "json"},
  };
  for (const auto& args : invocations) {
    CAPTURE(args[0]);
    const auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  const auto s1 = run({"integrate", "--builtin", "sl2-adjoint", "--seed", "1", "--format", "json"});
  const auto s2 = run({"integrate", "--builtin", "sl2-adjoint", "--seed", "2", "--format", "json"});
  CHECK(s1.out != s2.out);
}
