#include "llt/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace llt {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key \"" + key + "\"");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

int as_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::floor(x) == x && std::abs(x) < 1e9) return static_cast<int>(x);
  }
  throw ParseError(where + ": expected an integer");
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": non-finite number");
  return x;
}

Mat as_matrix(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw StructuralError(where + ": expected " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw StructuralError(where + ": row " + std::to_string(r) + " must have " +
                            std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = as_double(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

Vec as_vector(const json& j, int size, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    throw StructuralError(where + ": expected " + std::to_string(size) + " entries");
  }
  Vec v(size);
  for (int i = 0; i < size; ++i) v(i) = as_double(j[i], where);
  return v;
}

std::vector<Mat> as_matrix_list(const json& j, int count, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != count) {
    throw StructuralError(where + ": expected " + std::to_string(count) + " matrices");
  }
  std::vector<Mat> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(as_matrix(j[i], dim, dim, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> as_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Rows of equal length flattened row-major.
std::vector<int> as_int_table(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw StructuralError(where + ": expected " + std::to_string(rows) + " rows");
  }
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    const auto row = as_int_list(j[r], where + "[" + std::to_string(r) + "]");
    if (static_cast<int>(row.size()) != cols) {
      throw StructuralError(where + ": row " + std::to_string(r) + " must have " +
                            std::to_string(cols) + " entries");
    }
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

SpecConfig parse_config(const json& root) {
  SpecConfig cfg;
  const json* c = optional_field(root, "config");
  if (!c) return cfg;
  if (!c->is_object()) throw ParseError("config: expected an object");
  if (auto* x = optional_field(*c, "tolerance")) cfg.tolerance = as_double(*x, "config.tolerance");
  if (auto* x = optional_field(*c, "radius")) cfg.radius = as_double(*x, "config.radius");
  if (auto* x = optional_field(*c, "step")) cfg.step = as_double(*x, "config.step");
  if (auto* x = optional_field(*c, "scheme")) {
    if (!x->is_string()) throw ParseError("config.scheme: expected a string");
    cfg.scheme = x->get<std::string>();
  }
  if (auto* x = optional_field(*c, "samples")) cfg.samples = as_int(*x, "config.samples");
  if (auto* x = optional_field(*c, "seed")) {
    const int s = as_int(*x, "config.seed");
    if (s < 0) throw ParseError("config.seed: must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  return cfg;
}

TripleSpec parse_triple(const json& root) {
  const auto& la = field(root, "lie_algebra", "document");
  const int n = as_int(field(la, "dim", "lie_algebra"), "lie_algebra.dim");
  if (n < 0) throw StructuralError("lie_algebra.dim: must be non-negative");
  std::vector<std::string> labels;
  if (const json* l = optional_field(la, "labels")) {
    if (!l->is_array()) throw ParseError("lie_algebra.labels: expected a list");
    for (const auto& s : *l) {
      if (!s.is_string()) throw ParseError("lie_algebra.labels: expected strings");
      labels.push_back(s.get<std::string>());
    }
  }
  std::vector<double> constants(static_cast<std::size_t>(n) * n * n, 0.0);
  const auto& sc = field(la, "structure_constants", "lie_algebra");
  if (!sc.is_array()) throw ParseError("lie_algebra.structure_constants: expected a list");
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t q = 0; q < sc.size(); ++q) {
    const std::string where = "lie_algebra.structure_constants[" + std::to_string(q) + "]";
    const auto& e = sc[q];
    if (!e.is_array() || e.size() != 4) throw ParseError(where + ": expected [i, j, k, value]");
    const int i = as_int(e[0], where), j = as_int(e[1], where), k = as_int(e[2], where);
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n) {
      throw StructuralError(where + ": index out of range for dim " + std::to_string(n));
    }
    if (!seen.insert({i, j, k}).second) throw StructuralError(where + ": duplicate entry");
    constants[(i * n + j) * n + k] = as_double(e[3], where);
  }
  LieAlgebraData alg(n, labels, constants);

  const auto& mod = field(root, "module", "document");
  const int d = as_int(field(mod, "dim_v", "module"), "module.dim_v");
  if (d < 0) throw StructuralError("module.dim_v: must be non-negative");
  auto mats = as_matrix_list(field(mod, "action_matrices", "module"), n, d, "module.action_matrices");
  ModuleAction action(alg, d, std::move(mats));

  const Mat theta = as_matrix(field(field(root, "theta", "document"), "matrix", "theta"), n, d,
                              "theta.matrix");

  TripleSpec spec{{"file", alg, action, theta, {}}, std::nullopt, parse_config(root), std::nullopt};
  if (const json* f = optional_field(root, "faithful_rep")) {
    const int m = as_int(field(*f, "matrix_dim", "faithful_rep"), "faithful_rep.matrix_dim");
    if (m < 1) throw StructuralError("faithful_rep.matrix_dim: must be positive");
    spec.components.faithful_rep =
        as_matrix_list(field(*f, "matrices", "faithful_rep"), n, m, "faithful_rep.matrices");
  }
  if (const json* h = optional_field(root, "h_basis")) {
    const auto& vs = field(*h, "vectors", "h_basis");
    if (!vs.is_array()) throw ParseError("h_basis.vectors: expected a list");
    std::vector<Vec> vectors;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      vectors.push_back(as_vector(vs[i], n, "h_basis.vectors[" + std::to_string(i) + "]"));
    }
    spec.h_basis = SubspaceBasis(n, std::move(vectors));
  }
  if (const json* mo = optional_field(root, "morphism")) {
    auto target = std::make_shared<TripleSpec>(parse_triple(field(*mo, "target", "morphism")));
    const int n2 = target->components.algebra.dim();
    const int d2 = target->components.action.dim_v();
    Mat phi = as_matrix(field(*mo, "phi", "morphism"), n2, n, "morphism.phi");
    Mat psi = as_matrix(field(*mo, "psi", "morphism"), d2, d, "morphism.psi");
    spec.morphism = TripleMorphismSpec{std::move(target), std::move(phi), std::move(psi)};
  }
  return spec;
}

FiniteGroup parse_group(const json& g) {
  if (const json* name = optional_field(g, "name")) {
    if (!optional_field(g, "mul_table")) {
      if (!name->is_string()) throw ParseError("group.name: expected a string");
      return group_by_name(name->get<std::string>());
    }
  }
  const int size = as_int(field(g, "size", "group"), "group.size");
  if (size < 1) throw StructuralError("group.size: must be positive");
  auto table = as_int_table(field(g, "mul_table", "group"), size, size, "group.mul_table");
  std::string name = "group";
  if (const json* nm = optional_field(g, "name"); nm && nm->is_string()) name = nm->get<std::string>();
  return {name, size, std::move(table)};
}

GroupRackTriple parse_rack_triple(const json& root) {
  FiniteGroup group = parse_group(field(root, "group", "document"));
  const int x_size = as_int(field(root, "x_size", "document"), "x_size");
  if (x_size < 1) throw StructuralError("x_size: must be positive");
  auto action = as_int_table(field(root, "action_table", "document"), group.size(), x_size,
                             "action_table");
  auto theta = as_int_list(field(root, "theta_table", "document"), "theta_table");
  const int basepoint = as_int(field(root, "basepoint", "document"), "basepoint");
  GroupRackTriple t{std::move(group), x_size, std::move(action), std::move(theta), basepoint};
  // Range checks happen here so that malformed files are structural errors
  // before any checker runs.
  if (static_cast<int>(t.theta.size()) != x_size) {
    throw StructuralError("theta_table: expected " + std::to_string(x_size) + " entries");
  }
  for (int v : t.action)
    if (v < 0 || v >= x_size) throw StructuralError("action_table: entry out of range");
  for (int v : t.theta)
    if (v < 0 || v >= t.group.size()) throw StructuralError("theta_table: entry out of range");
  if (basepoint < 0 || basepoint >= x_size) throw StructuralError("basepoint: out of range");
  return t;
}

RackSpec parse_rack(const json& root) {
  RackSpec spec{parse_rack_triple(root), std::nullopt, parse_config(root)};
  if (const json* mo = optional_field(root, "morphism")) {
    auto target = std::make_shared<GroupRackTriple>(parse_rack_triple(field(*mo, "target", "morphism")));
    spec.morphism = RackMorphismSpec{std::move(target), as_int_list(field(*mo, "phi", "morphism"), "morphism.phi"),
                                     as_int_list(field(*mo, "psi", "morphism"), "morphism.psi")};
  }
  return spec;
}

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(source + ": top level must be an object");
  try {
    if (root.contains("lie_algebra")) return parse_triple(root);
    if (root.contains("group")) return parse_rack(root);
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  throw ParseError(source + ": expected a \"lie_algebra\" or \"group\" document");
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

SpecFile builtin_spec(const std::string& name) {
  if (name == "sl2-adjoint") return TripleSpec{sl2_adjoint_components(), {}, {}, {}};
  if (name == "heisenberg-ideal") return TripleSpec{heisenberg_ideal_components(), {}, {}, {}};
  if (name == "s3-conjugation") return RackSpec{conjugation_triple(symmetric_group3()), {}, {}};
  const std::string prefix = "scaling:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string value = name.substr(prefix.size());
    std::size_t used = 0;
    double lambda = 0.0;
    try {
      lambda = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(lambda)) {
      throw StructuralError("builtin '" + name + "': lambda must be a number");
    }
    return TripleSpec{scaling_family_components(lambda), {}, {}, {}};
  }
  throw StructuralError("unknown builtin '" + name +
                        "' (expected sl2-adjoint, scaling:<lambda>, heisenberg-ideal, "
                        "s3-conjugation)");
}

}  // namespace llt
