#include "llt/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "llt/integrator.hpp"
#include "llt/racks.hpp"
#include "llt/spec_io.hpp"

namespace llt {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultAxiomTolerance = 1e-9;
constexpr double kDefaultRoundtripTolerance = 1e-4;

struct Outcome {
  Json report;
  int code = kExitPass;
};

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Json to_json(const Mat& m) {
  Json j = Json::array();
  for (int r = 0; r < m.rows(); ++r) j.push_back(to_json(Vec(m.row(r).transpose())));
  return j;
}

Json to_json(const ValidityReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["max_residual"] = r.max_residual;
  Json residuals = Json::object();
  for (const auto& [law, value] : r.residuals) residuals[law] = value;
  j["residuals"] = residuals;
  j["violation_count"] = r.violation_count;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"law", v.law}, {"index", v.index}, {"residual", v.residual}});
  }
  j["violations"] = violations;
  if (!r.flags.empty()) {
    Json flags = Json::object();
    for (const auto& [name, value] : r.flags) flags[name] = value;
    j["flags"] = flags;
  }
  return j;
}

Json basis_json(const SubspaceBasis& b) {
  Json j = Json::array();
  for (const auto& v : b.vectors()) j.push_back(to_json(v));
  return j;
}

bool is_scalar_array(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_object(); });
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    if (j.empty()) out << prefix << ": {}\n";
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array() && !is_scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    flatten(report, "", out);
  }
}

std::string status_of(int code) {
  switch (code) {
    case kExitPass: return "pass";
    case kExitAxiom: return "fail";
    case kExitStructural: return "structural_error";
    case kExitCapability: return "capability_error";
  }
  return "error";
}

// ---------------------------------------------------------------------------
// Input resolution

struct Input {
  std::string source;
  SpecFile spec;
};

Input resolve_input(const std::string& file, const std::string& builtin) {
  if (!file.empty() && !builtin.empty()) {
    throw StructuralError("give either a spec file or --builtin, not both");
  }
  if (!builtin.empty()) return {"builtin:" + builtin, builtin_spec(builtin)};
  if (file.empty()) throw StructuralError("missing input: give a spec file or --builtin <name>");
  return {file, load_spec_file(file)};
}

const SpecConfig& config_of(const SpecFile& spec) {
  return std::visit([](const auto& s) -> const SpecConfig& { return s.config; }, spec);
}

/// First constraint that build_triple rejects, with its residual.
std::pair<std::string, double> first_failure(const TripleComponents& c, double tol,
                                             const ValidityReport& evaluated) {
  try {
    c.build(tol);
  } catch (const ConstraintError& e) {
    return {e.constraint(), e.residual()};
  }
  if (!evaluated.violations.empty()) {
    return {evaluated.violations.front().law, evaluated.violations.front().residual};
  }
  return {"unknown", evaluated.max_residual};
}

// ---------------------------------------------------------------------------
// verify

Json triple_summary(const TripleComponents& c, double tol, bool* valid) {
  Json j;
  j["dim_g"] = c.algebra.dim();
  j["dim_v"] = c.action.dim_v();
  const auto evaluated = evaluate_triple(c.algebra, c.action, c.theta, tol);
  *valid = evaluated.passed;
  j["valid"] = evaluated.passed;
  if (!evaluated.passed) {
    const auto [constraint, residual] = first_failure(c, tol, evaluated);
    j["failed_constraint"] = constraint;
    j["failed_residual"] = residual;
  } else {
    const auto triple = c.build(tol);
    const auto h_max = max_strictness_subalgebra(triple, tol);
    j["strict"] = is_strict(triple, tol);
    j["h_max_dim"] = h_max.dim();
    j["h_max_basis"] = basis_json(h_max);
    j["theta_rank"] = theta_image(triple, tol).dim();
  }
  j["checks"] = to_json(evaluated);
  return j;
}

Outcome verify_triple(const TripleSpec& spec, const std::string& source, double tol) {
  const auto& c = spec.components;
  Outcome o;
  Json& r = o.report;
  r["command"] = "verify";
  r["kind"] = "triple";
  r["source"] = source;
  r["tolerance"] = tol;
  bool valid = false;
  r.update(triple_summary(c, tol, &valid));
  bool ok = valid;

  if (!c.faithful_rep.empty()) {
    const auto rep = check_matrix_rep(c.algebra, c.faithful_rep, tol);
    r["faithful_rep"] = to_json(rep);
    ok = ok && rep.passed;
  }
  if (spec.h_basis) {
    if (valid) {
      const auto aug = check_relaxed_augmentation(c.build(tol), *spec.h_basis, tol);
      r["relaxed_augmentation"] = to_json(aug);
      ok = ok && aug.passed;
    } else {
      r["relaxed_augmentation"] = {{"skipped", "triple is invalid"}};
    }
  }
  if (spec.morphism) {
    const auto& m = *spec.morphism;
    Json mj;
    bool target_valid = false;
    mj["target"] = triple_summary(m.target->components, tol, &target_valid);
    if (valid && target_valid) {
      const auto check = check_morphism(c.build(tol), m.target->components.build(tol),
                                        TripleMorphism{m.phi, m.psi}, tol);
      mj["checks"] = to_json(check);
      ok = ok && check.passed;
    } else {
      mj["skipped"] = "source or target triple is invalid";
      ok = false;
    }
    r["morphism"] = mj;
  }
  o.code = ok ? kExitPass : kExitAxiom;
  r["status"] = status_of(o.code);
  return o;
}

Json rack_summary(const GroupRackTriple& t, bool* valid) {
  Json j;
  j["group"] = t.group.name();
  j["group_size"] = t.group.size();
  j["x_size"] = t.x_size;
  const auto group = check_group(t.group);
  j["group_checks"] = to_json(group);
  if (!group.passed) {
    *valid = false;
    j["valid"] = false;
    return j;
  }
  const auto laws = check_group_rack_triple(t);
  *valid = laws.passed;
  j["valid"] = laws.passed;
  j["strict"] = is_strict(t);
  j["checks"] = to_json(laws);
  if (laws.passed) j["rack_orbits"] = rack_orbits(t.rack());
  return j;
}

Outcome verify_rack(const RackSpec& spec, const std::string& source) {
  Outcome o;
  Json& r = o.report;
  r["command"] = "verify";
  r["kind"] = "rack";
  r["source"] = source;
  bool valid = false;
  r.update(rack_summary(spec.triple, &valid));
  bool ok = valid;
  if (spec.morphism) {
    const auto& m = *spec.morphism;
    Json mj;
    bool target_valid = false;
    mj["target"] = rack_summary(*m.target, &target_valid);
    if (valid && target_valid) {
      try {
        const auto check =
            check_rack_triple_morphism(spec.triple, *m.target, RackTripleMorphism{m.phi, m.psi});
        mj["checks"] = to_json(check);
        ok = ok && check.passed;
      } catch (const PreconditionError& e) {
        mj["precondition_failed"] = e.what();
        ok = false;
      }
    } else {
      mj["skipped"] = "source or target triple is invalid";
      ok = false;
    }
    r["morphism"] = mj;
  }
  o.code = ok ? kExitPass : kExitAxiom;
  r["status"] = status_of(o.code);
  return o;
}

// ---------------------------------------------------------------------------
// integrate

struct IntegrateSettings {
  std::optional<double> radius;
  DiffConfig diff;
  SampleOptions sampling;
  double roundtrip_tolerance = kDefaultRoundtripTolerance;
  double axiom_tolerance = kDefaultAxiomTolerance;
};

LocalRackModel model_for(const LieLeibnizTriple& triple, const TripleComponents& c,
                         const std::optional<SubspaceBasis>& h_basis,
                         const IntegrateSettings& s) {
  ModelOptions options;
  options.faithful_rep = c.faithful_rep;
  options.h_basis = h_basis;
  options.radius = s.radius;
  options.diff = s.diff;
  options.tolerance = s.axiom_tolerance;
  return build_model(triple, options);
}

IntegrationReport integrate_model(const LocalRackModel& model, const IntegrateSettings& s) {
  SuiteOptions options;
  options.sampling = s.sampling;
  options.roundtrip_tolerance = s.roundtrip_tolerance;
  return run_integration_suite(model, options);
}

std::string basis_label(const LieAlgebraData& alg, int i) {
  const auto& labels = alg.labels();
  return i < static_cast<int>(labels.size()) ? labels[i] : "e" + std::to_string(i);
}

Json integration_json(const LocalRackModel& model, const IntegrationReport& rep,
                      const IntegrateSettings& s) {
  const auto& triple = model.triple();
  const int n = triple.dim_g(), d = triple.dim_v();
  Json r;
  r["strict"] = rep.strict;
  r["h_dim"] = rep.h_dim;
  r["radius"] = model.radius();
  r["step"] = model.diff().step;
  r["step_used"] = rep.recovered.step_used;
  r["scheme"] = to_string(model.diff().scheme);
  r["samples"] = s.sampling.samples;
  r["seed"] = s.sampling.seed;
  r["tolerance"] = s.roundtrip_tolerance;
  r["axiom_tolerance"] = s.axiom_tolerance;
  r["max_roundtrip_residual"] = rep.roundtrip.max();
  r["roundtrip"] = {{"theta", rep.roundtrip.theta},
                    {"action", rep.roundtrip.action},
                    {"bracket", rep.roundtrip.bracket}};
  Json laws = Json::object();
  for (const auto& [law, value] : rep.laws.residuals) {
    laws[law] = {{"residual", value}, {"passed", rep.laws.law_passed(law)}};
  }
  r["laws"] = laws;
  r["laws_passed"] = rep.laws.passed;
  Json counts = Json::object();
  for (const auto& [law, count] : rep.sample_counts) counts[law] = count;
  r["sample_counts"] = counts;
  Json actions = Json::array();
  for (const auto& m : rep.recovered.action) actions.push_back(to_json(m));
  r["recovered"] = {{"theta", to_json(rep.recovered.theta)},
                    {"action", actions},
                    {"bracket", rep.recovered.bracket}};
  Json a_theta = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) {
      const int col = i * d + j;
      a_theta.push_back({{"a", basis_label(triple.algebra(), i)},
                         {"v", j},
                         {"recovered", to_json(Vec(rep.a_theta_recovered.col(col)))},
                         {"expected", to_json(Vec(rep.a_theta_expected.col(col)))}});
    }
  r["a_theta_recovered"] = a_theta;
  return r;
}

Outcome integrate_triple(const TripleSpec& spec, const std::string& source,
                         const IntegrateSettings& s, std::ostream& err) {
  const auto& c = spec.components;
  Outcome o;
  Json& r = o.report;
  r["command"] = "integrate";
  r["source"] = source;
  try {
    const auto triple = c.build(s.axiom_tolerance);
    const auto model = model_for(triple, c, spec.h_basis, s);
    const auto rep = integrate_model(model, s);
    r.update(integration_json(model, rep, s));
    o.code = rep.roundtrip.max() <= s.roundtrip_tolerance ? kExitPass : kExitAxiom;
  } catch (const ConstraintError& e) {
    r["failed_constraint"] = e.constraint();
    r["failed_residual"] = e.residual();
    r["message"] = e.what();
    o.code = kExitAxiom;
  } catch (const CapabilityError& e) {
    r["message"] = e.what();
    err << "error: " << e.what() << "\n"
        << "hint: add a \"faithful_rep\" block {\"matrix_dim\", \"matrices\"} to the spec file\n";
    o.code = kExitCapability;
  } catch (const DomainError& e) {
    r["message"] = e.what();
    o.code = kExitAxiom;
  } catch (const ChartError& e) {
    r["message"] = e.what();
    o.code = kExitAxiom;
  }
  r["status"] = status_of(o.code);
  return o;
}

// ---------------------------------------------------------------------------
// corpus

const std::vector<std::string> kFamilies = {"strict_from_ideal", "scaling", "perturbed_invalid",
                                            "conjugation_racks", "crossed_modules"};

struct CorpusSettings {
  int count = 10;
  std::uint64_t seed = 0;
  double tolerance = kDefaultAxiomTolerance;
  IntegrateSettings integrate;
};

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

/// Small counts should still reach the non-abelian examples.
std::vector<FiniteGroup> nonabelian_first(std::vector<FiniteGroup> groups) {
  std::stable_partition(groups.begin(), groups.end(),
                        [](const FiniteGroup& g) { return !is_abelian(g); });
  return groups;
}

/// Verifies c and, when valid, integrates it. Fills observed fields.
void observe_triple(const TripleComponents& c, const CorpusSettings& s, Json& observed) {
  const auto evaluated = evaluate_triple(c.algebra, c.action, c.theta, s.tolerance);
  observed["valid"] = evaluated.passed;
  if (!evaluated.passed) {
    const auto [constraint, residual] = first_failure(c, s.tolerance, evaluated);
    observed["failed_constraint"] = constraint;
    observed["failed_residual"] = residual;
    return;
  }
  const auto triple = c.build(s.tolerance);
  observed["strict"] = is_strict(triple, s.tolerance);
  observed["h_max_dim"] = max_strictness_subalgebra(triple, s.tolerance).dim();
  try {
    const auto model = model_for(triple, c, std::nullopt, s.integrate);
    const auto rep = integrate_model(model, s.integrate);
    observed["integrated"] = true;
    observed["max_roundtrip_residual"] = rep.roundtrip.max();
    observed["laws_passed"] = rep.laws.passed;
  } catch (const CapabilityError&) {
    observed["integrated"] = false;
  }
}

bool integration_ok(const Json& observed, double tol) {
  if (!observed.value("integrated", false)) return true;
  return observed["laws_passed"].get<bool>() &&
         observed["max_roundtrip_residual"].get<double>() <= tol;
}

Json corpus_instance(const std::string& family, int index, const CorpusSettings& s) {
  Json inst;
  inst["family"] = family;
  inst["index"] = index;
  Json expected, observed;
  bool matches = false;
  const std::uint64_t seed = s.seed + static_cast<std::uint64_t>(index);
  const double rt_tol = s.integrate.roundtrip_tolerance;

  if (family == "strict_from_ideal") {
    const auto c = random_triple(seed, TripleFamily::strict_from_ideal);
    inst["name"] = c.name;
    expected = {{"valid", true}, {"strict", true}};
    observe_triple(c, s, observed);
    matches = observed["valid"].get<bool>() && observed["strict"].get<bool>() &&
              integration_ok(observed, rt_tol);
  } else if (family == "scaling") {
    static const std::vector<double> fixed = {-1.0, 0.0, 0.5, 1.0, 2.0};
    double lambda = 0.0;
    if (index < static_cast<int>(fixed.size())) {
      lambda = fixed[index];
    } else {
      std::mt19937_64 rng(seed);
      lambda = std::uniform_real_distribution<double>(-2.0, 3.0)(rng);
    }
    RandomTripleParams params;
    params.lambda = lambda;
    const auto c = random_triple(seed, TripleFamily::scaling_family, params);
    inst["name"] = c.name;
    inst["lambda"] = lambda;
    const bool strict = lambda == 1.0;
    expected = {{"valid", true}, {"strict", strict}, {"h_max_dim", strict ? 2 : 1}};
    observe_triple(c, s, observed);
    matches = observed["valid"].get<bool>() && observed["strict"].get<bool>() == strict &&
              observed["h_max_dim"].get<int>() == (strict ? 2 : 1) &&
              integration_ok(observed, rt_tol);
  } else if (family == "perturbed_invalid") {
    RandomTripleParams params;
    params.epsilon = index % 2 == 0 ? 1e-3 : 1e-1;
    const auto c = random_triple(seed, TripleFamily::perturbed_invalid, params);
    inst["name"] = c.name;
    inst["epsilon"] = params.epsilon;
    expected = {{"valid", false},
                {"failed_constraint", "quadratic_constraint"},
                {"min_residual", params.epsilon / 2}};
    observe_triple(c, s, observed);
    matches = !observed["valid"].get<bool>() &&
              observed["failed_constraint"] == "quadratic_constraint" &&
              observed["failed_residual"].get<double>() >= params.epsilon / 2;
  } else if (family == "conjugation_racks") {
    const auto catalog = nonabelian_first(group_catalog());
    const auto& g = catalog[seed % catalog.size()];
    inst["name"] = "conjugation(" + g.name() + ")";
    expected = {{"valid", true}, {"strict", true}};
    const auto t = conjugation_triple(g);
    const auto laws = check_group_rack_triple(t);
    const auto rack = check_rack(t.rack());
    observed = {{"valid", laws.passed && rack.passed},
                {"strict", is_strict(t)},
                {"triples_checked", g.size() * g.size() * g.size()}};
    matches = laws.passed && rack.passed && is_strict(t);
  } else if (family == "crossed_modules") {
    std::vector<GroupCrossedModule> list{relaxed_s3_a3_crossed_module()};
    for (auto& cm : inclusion_crossed_module_catalog()) {
      if (!is_abelian(cm.n)) list.push_back(std::move(cm));
    }
    for (auto& cm : inclusion_crossed_module_catalog()) {
      if (is_abelian(cm.n)) list.push_back(std::move(cm));
    }
    const auto& cm = list[seed % list.size()];
    const bool relaxed = cm.n_prime.has_value();
    inst["name"] = cm.m.name() + "->" + cm.n.name() + (relaxed ? " (relaxed)" : "");
    expected = {{"valid", true}, {"full_equivariance", !relaxed}};
    const auto check = check_group_crossed_module(cm);
    observed["valid"] = check.passed;
    if (check.passed) {
      const auto out = augmented_rack_from_crossed_module(cm);
      const bool full = relaxed ? out.report.flags.at("full_equivariance") : true;
      observed["valid"] = out.report.passed;
      observed["full_equivariance"] = full;
      matches = out.report.passed && full == !relaxed;
    }
  }
  inst["expected"] = expected;
  inst["observed"] = observed;
  inst["matches"] = matches;
  return inst;
}

Outcome run_corpus(const std::vector<std::string>& families, const CorpusSettings& s) {
  Outcome o;
  Json& r = o.report;
  r["command"] = "corpus";
  r["seed"] = s.seed;
  r["count"] = s.count;
  r["families"] = families;
  Json instances = Json::array();
  Json summary = Json::object();
  bool all = true;
  for (const auto& family : families) {
    int valid = 0, matched = 0;
    for (int i = 0; i < s.count; ++i) {
      auto inst = corpus_instance(family, i, s);
      valid += inst["observed"].value("valid", false) ? 1 : 0;
      matched += inst["matches"].get<bool>() ? 1 : 0;
      instances.push_back(std::move(inst));
    }
    summary[family] = {{"total", s.count}, {"valid", valid}, {"matched", matched}};
    all = all && matched == s.count;
  }
  r["instances"] = instances;
  r["summary"] = summary;
  o.code = all ? kExitPass : kExitAxiom;
  r["status"] = status_of(o.code);
  return o;
}

std::string yes_no(const Json& j, const char* key) {
  if (!j.contains(key)) return "-";
  return j[key].get<bool>() ? "yes" : "no";
}

void emit_corpus_text(const Json& r, std::ostream& out) {
  out << "corpus seed " << r["seed"].dump() << ", count " << r["count"].dump() << "\n";
  out << std::left << std::setw(20) << "family" << std::setw(6) << "index" << std::setw(44)
      << "name" << std::setw(7) << "valid" << std::setw(8) << "strict" << std::setw(11)
      << "integrated" << "match\n";
  for (const auto& inst : r["instances"]) {
    const auto& obs = inst["observed"];
    out << std::left << std::setw(20) << inst["family"].get<std::string>() << std::setw(6)
        << inst["index"].get<int>() << std::setw(44) << inst["name"].get<std::string>()
        << std::setw(7) << yes_no(obs, "valid") << std::setw(8) << yes_no(obs, "strict")
        << std::setw(11) << yes_no(obs, "integrated")
        << (inst["matches"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& [family, s] : r["summary"].items()) {
    out << family << ": " << s["matched"].get<int>() << "/" << s["total"].get<int>()
        << " as expected, " << s["valid"].get<int>() << " valid\n";
  }
  out << "status: " << r["status"].get<std::string>() << "\n";
}

// ---------------------------------------------------------------------------

Json error_report(const std::string& command, int code, const std::string& message) {
  return {{"command", command}, {"status", status_of(code)}, {"message", message}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-Leibniz triples: axiom verification and local integration"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"text", "json"};

  std::string file, builtin, format = "text";
  double tolerance = 0.0;

  auto* verify = app.add_subcommand("verify", "Check every axiom of a triple or rack spec");
  verify->add_option("file", file, "Spec file (JSON)");
  verify->add_option("--builtin", builtin, "Built-in example instead of a file");
  auto* verify_tol = verify->add_option("--tolerance", tolerance, "Checker tolerance (1e-9)");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  IntegrateSettings is;
  double radius = 0.0, step = 0.0, axiom_tol = 0.0, rt_tol = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string scheme;
  auto* integrate = app.add_subcommand("integrate", "Build the local rack and recover the triple");
  integrate->add_option("file", file, "Spec file (JSON)");
  integrate->add_option("--builtin", builtin,
                        "sl2-adjoint, scaling:<lambda>, heisenberg-ideal");
  auto* o_radius = integrate->add_option("--radius", radius, "r_U (default min(0.3, 0.6 chart))");
  auto* o_step = integrate->add_option("--step", step, "Finite-difference step (1e-4)");
  auto* o_samples = integrate->add_option("--samples", samples, "Samples per law (200)");
  auto* o_seed = integrate->add_option("--seed", seed, "Sampling seed (0)");
  auto* o_scheme = integrate->add_option("--scheme", scheme, "central or richardson")
                       ->check(CLI::IsMember({"central", "richardson"}));
  auto* o_rt = integrate->add_option("--tolerance", rt_tol, "Round-trip tolerance (1e-4)");
  auto* o_axiom = integrate->add_option("--axiom-tolerance", axiom_tol,
                                        "Tolerance for the triple axioms (1e-9)");
  integrate->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  CorpusSettings cs;
  std::string family = "all";
  std::vector<std::string> family_names = kFamilies;
  family_names.push_back("all");
  auto* corpus = app.add_subcommand("corpus", "Generate seeded examples and check expectations");
  corpus->add_option("--family", family, "Family to generate (all)")
      ->check(CLI::IsMember(family_names));
  corpus->add_option("--count", cs.count, "Instances per family (10)")
      ->check(CLI::Range(1, 100000));
  corpus->add_option("--seed", cs.seed, "Base seed (0)");
  corpus->add_option("--tolerance", cs.tolerance, "Checker tolerance (1e-9)");
  corpus->add_option("--samples", cs.integrate.sampling.samples,
                     "Integration samples per law (200)");
  corpus->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitStructural;
  }

  std::string command = verify->parsed() ? "verify" : integrate->parsed() ? "integrate" : "corpus";
  Outcome result;
  try {
    if (corpus->parsed()) {
      cs.integrate.axiom_tolerance = cs.tolerance;
      cs.integrate.sampling.seed = cs.seed;
      const std::vector<std::string> families =
          family == "all" ? kFamilies : std::vector<std::string>{family};
      result = run_corpus(families, cs);
      if (format == "text") {
        emit_corpus_text(result.report, out);
        return result.code;
      }
    } else {
      const auto input = resolve_input(file, builtin);
      const auto& cfg = config_of(input.spec);
      if (verify->parsed()) {
        const double tol =
            verify_tol->count() ? tolerance : cfg.tolerance.value_or(kDefaultAxiomTolerance);
        if (const auto* t = std::get_if<TripleSpec>(&input.spec)) {
          result = verify_triple(*t, input.source, tol);
        } else {
          result = verify_rack(std::get<RackSpec>(input.spec), input.source);
        }
      } else {
        const auto* t = std::get_if<TripleSpec>(&input.spec);
        if (!t) throw StructuralError("integrate needs a triple spec, not a rack");
        is.radius = o_radius->count() ? std::optional<double>(radius) : cfg.radius;
        is.diff.step = o_step->count() ? step : cfg.step.value_or(is.diff.step);
        const std::string scheme_name =
            o_scheme->count() ? scheme : cfg.scheme.value_or(to_string(is.diff.scheme));
        is.diff.scheme = diff_scheme_from_string(scheme_name);
        validate(is.diff);
        is.sampling.samples =
            o_samples->count() ? samples : cfg.samples.value_or(is.sampling.samples);
        if (is.sampling.samples < 1) throw StructuralError("--samples must be positive");
        is.sampling.seed = o_seed->count() ? seed : cfg.seed.value_or(0);
        is.roundtrip_tolerance = o_rt->count() ? rt_tol : kDefaultRoundtripTolerance;
        is.axiom_tolerance =
            o_axiom->count() ? axiom_tol : cfg.tolerance.value_or(kDefaultAxiomTolerance);
        result = integrate_triple(*t, input.source, is, err);
      }
    }
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    result = {error_report(command, kExitStructural, e.what()), kExitStructural};
  }
  emit(result.report, format, out);
  return result.code;
}

}  // namespace llt
