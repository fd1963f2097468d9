#include "llt/racks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace llt {

namespace {

void expect(ValidityReport& report, const std::string& law, std::vector<int> index, bool ok) {
  report.record(law, std::move(index), ok ? 0.0 : 1.0, 0.0);
}

void require_range(const std::vector<int>& table, int bound, const std::string& what) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] < 0 || table[i] >= bound) {
      throw StructuralError(what + ": entry " + std::to_string(i) + " = " +
                            std::to_string(table[i]) + " out of range [0, " +
                            std::to_string(bound) + ")");
    }
  }
}

void require_size(const std::vector<int>& table, std::size_t n, const std::string& what) {
  if (table.size() != n) {
    throw StructuralError(what + ": expected " + std::to_string(n) + " entries, got " +
                          std::to_string(table.size()));
  }
}

std::string cycle_label(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream out;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) continue;
    out << '(';
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = true;
      out << (first ? "" : " ") << i;
      first = false;
      i = static_cast<std::size_t>(p[i]);
    }
    out << ')';
  }
  const std::string s = out.str();
  return s.empty() ? "e" : s;
}

std::vector<int> all_elements(const FiniteGroup& g) {
  std::vector<int> out(g.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, int size, std::vector<int> mul_table,
                         std::vector<std::string> labels)
    : name_(std::move(name)), size_(size), mul_(std::move(mul_table)), labels_(std::move(labels)) {
  if (size_ < 1) throw StructuralError("group '" + name_ + "': size must be positive");
  require_size(mul_, static_cast<std::size_t>(size_) * size_, "group '" + name_ + "' table");
  require_range(mul_, size_, "group '" + name_ + "' table");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != size_) {
    throw StructuralError("group '" + name_ + "': label count mismatch");
  }
  inv_.assign(size_, -1);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
}

std::string FiniteGroup::label(int a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

int FiniteGroup::order(int a) const {
  int x = a, k = 1;
  while (x != 0 && k <= size_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

ValidityReport check_group(const FiniteGroup& g) {
  ValidityReport report;
  const int n = g.size();
  for (const char* law : {"associativity", "unit", "inverse"}) report.touch(law);
  for (int a = 0; a < n; ++a) {
    expect(report, "unit", {a}, g.mul(0, a) == a && g.mul(a, 0) == a);
    expect(report, "inverse", {a}, g.inverse(a) >= 0);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        expect(report, "associativity", {a, b, c},
               g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
      }
  }
  return report;
}

ValidityReport check_group_hom(const FiniteGroup& src, const FiniteGroup& dst,
                               const std::vector<int>& phi) {
  require_size(phi, src.size(), "homomorphism table");
  require_range(phi, dst.size(), "homomorphism table");
  ValidityReport report;
  report.touch("homomorphism");
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < src.size(); ++b) {
      expect(report, "homomorphism", {a, b}, phi[src.mul(a, b)] == dst.mul(phi[a], phi[b]));
    }
  return report;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw StructuralError("cyclic group order must be positive");
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return {"Z" + std::to_string(n), n, std::move(table)};
}

FiniteGroup permutation_group(std::string name, int degree,
                              const std::vector<std::vector<int>>& generators) {
  for (const auto& gen : generators) {
    require_size(gen, degree, "permutation generator");
    require_range(gen, degree, "permutation generator");
    if (std::set<int>(gen.begin(), gen.end()).size() != gen.size()) {
      throw StructuralError("permutation generator is not a bijection");
    }
  }
  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> elements{identity};
  std::map<std::vector<int>, int> index{{identity, 0}};
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = p[q[i]];
    return r;
  };
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& gen : generators) {
      auto next = compose(gen, elements[k]);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(next));
      }
    }
  }
  const int n = static_cast<int>(elements.size());
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elements[a], elements[b]));
  std::vector<std::string> labels;
  for (const auto& p : elements) labels.push_back(cycle_label(p));
  return {std::move(name), n, std::move(table), std::move(labels)};
}

FiniteGroup symmetric_group3() { return permutation_group("S3", 3, {{1, 0, 2}, {1, 2, 0}}); }

FiniteGroup dihedral_group4() { return permutation_group("D4", 4, {{1, 2, 3, 0}, {0, 3, 2, 1}}); }

FiniteGroup alternating_group4() {
  return permutation_group("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
}

FiniteGroup quaternion_group() {
  // Index s * 4 + u is (-1)^s times the unit u in {1, i, j, k}.
  static const int unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a % 4, ub = b % 4;
      const int sign = (a / 4 + b / 4 + unit_sign[ua][ub]) % 2;
      table[a * 8 + b] = sign * 4 + unit_product[ua][ub];
    }
  return {"Q8", 8, std::move(table), {"1", "i", "j", "k", "-1", "-i", "-j", "-k"}};
}

std::vector<FiniteGroup> group_catalog() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 12; ++n) out.push_back(cyclic_group(n));
  out.push_back(symmetric_group3());
  out.push_back(dihedral_group4());
  out.push_back(quaternion_group());
  out.push_back(alternating_group4());
  return out;
}

FiniteGroup group_by_name(const std::string& name) {
  if (name == "S3") return symmetric_group3();
  if (name == "D4") return dihedral_group4();
  if (name == "Q8") return quaternion_group();
  if (name == "A4") return alternating_group4();
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int n = std::stoi(name.substr(1));
    if (n >= 1 && n <= 64) return cyclic_group(n);
  }
  throw StructuralError("unknown group '" + name + "'");
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& subset) {
  std::set<int> s(subset.begin(), subset.end());
  if (s.empty() || !s.count(0)) return false;
  for (int a : s) {
    if (a < 0 || a >= g.size()) return false;
    for (int b : s) {
      if (!s.count(g.mul(a, g.inverse(b)))) return false;
    }
  }
  return true;
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& subset) {
  if (!is_subgroup(g, subset)) return false;
  std::set<int> s(subset.begin(), subset.end());
  for (int x = 0; x < g.size(); ++x)
    for (int a : s) {
      if (!s.count(g.conj(x, a))) return false;
    }
  return true;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> s{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    const int a = frontier.back();
    frontier.pop_back();
    for (int b : gens) {
      const int c = g.mul(a, b);
      if (s.insert(c).second) frontier.push_back(c);
    }
  }
  return {s.begin(), s.end()};
}

Subgroup subgroup(const FiniteGroup& g, const std::vector<int>& subset, std::string name) {
  if (!is_subgroup(g, subset)) throw StructuralError("subset is not a subgroup of " + g.name());
  const std::set<int> members(subset.begin(), subset.end());
  const std::vector<int> elems(members.begin(), members.end());
  std::vector<int> local(g.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<int> table(n * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(g.label(elems[a]));
    for (int b = 0; b < n; ++b) table[a * n + b] = local[g.mul(elems[a], elems[b])];
  }
  return {FiniteGroup(std::move(name), n, std::move(table), std::move(labels)), elems};
}

Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal, std::string name) {
  if (!is_normal_subgroup(g, normal)) {
    throw StructuralError("subset is not a normal subgroup of " + g.name());
  }
  std::vector<int> projection(g.size(), -1);
  std::vector<int> reps;
  for (int a = 0; a < g.size(); ++a) {
    if (projection[a] >= 0) continue;
    const int coset = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int k : normal) projection[g.mul(a, k)] = coset;
  }
  const int n = static_cast<int>(reps.size());
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = projection[g.mul(reps[a], reps[b])];
  return {FiniteGroup(std::move(name), n, std::move(table)), std::move(projection)};
}

ValidityReport check_rack(const FiniteRack& r) {
  const int n = r.size;
  if (n < 0) throw StructuralError("rack: negative size");
  require_size(r.table, static_cast<std::size_t>(n) * n, "rack table");
  require_range(r.table, n, "rack table");
  if (r.basepoint && (*r.basepoint < 0 || *r.basepoint >= n)) {
    throw StructuralError("rack: basepoint out of range");
  }
  ValidityReport report;
  report.touch("self_distributivity");
  report.touch("bijectivity");
  for (int x = 0; x < n; ++x) {
    std::vector<bool> hit(n, false);
    for (int y = 0; y < n; ++y) hit[r.op(x, y)] = true;
    expect(report, "bijectivity", {x}, std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        expect(report, "self_distributivity", {x, y, z},
               r.op(x, r.op(y, z)) == r.op(r.op(x, y), r.op(x, z)));
      }
  }
  if (r.basepoint) {
    const int e = *r.basepoint;
    report.touch("basepoint_left");
    report.touch("basepoint_right");
    for (int x = 0; x < n; ++x) {
      expect(report, "basepoint_left", {x}, r.op(e, x) == x);
      expect(report, "basepoint_right", {x}, r.op(x, e) == e);
    }
  }
  return report;
}

FiniteRack trivial_rack(int size, std::optional<int> basepoint) {
  FiniteRack r{size, std::vector<int>(static_cast<std::size_t>(size) * size), basepoint};
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) r.table[x * size + y] = y;
  return r;
}

FiniteRack conjugation_rack(const FiniteGroup& g) {
  const int n = g.size();
  FiniteRack r{n, std::vector<int>(static_cast<std::size_t>(n) * n), 0};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) r.table[x * n + y] = g.conj(x, y);
  return r;
}

std::vector<std::vector<int>> rack_orbits(const FiniteRack& r) {
  std::vector<int> parent(r.size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < r.size; ++x)
    for (int y = 0; y < r.size; ++y) {
      const int a = find(y), b = find(r.op(x, y));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<int>> groups;
  for (int y = 0; y < r.size; ++y) groups[find(y)].push_back(y);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

FiniteRack GroupRackTriple::rack() const {
  FiniteRack r{x_size, std::vector<int>(static_cast<std::size_t>(x_size) * x_size), basepoint};
  for (int x = 0; x < x_size; ++x)
    for (int y = 0; y < x_size; ++y) r.table[x * x_size + y] = rack_op(x, y);
  return r;
}

GroupRackTriple conjugation_triple(const FiniteGroup& g) {
  const int n = g.size();
  GroupRackTriple t{g, n, std::vector<int>(static_cast<std::size_t>(n) * n), {}, 0};
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) t.action[a * n + x] = g.conj(a, x);
  t.theta.resize(n);
  std::iota(t.theta.begin(), t.theta.end(), 0);
  return t;
}

namespace {

void validate_shape(const GroupRackTriple& t) {
  if (t.x_size < 1) throw StructuralError("group-rack triple: X must be nonempty");
  require_size(t.action, static_cast<std::size_t>(t.group.size()) * t.x_size, "action table");
  require_range(t.action, t.x_size, "action table");
  require_size(t.theta, t.x_size, "theta table");
  require_range(t.theta, t.group.size(), "theta table");
  if (t.basepoint < 0 || t.basepoint >= t.x_size) {
    throw StructuralError("group-rack triple: basepoint out of range");
  }
}

}  // namespace

ValidityReport check_group_rack_triple(const GroupRackTriple& t) {
  validate_shape(t);
  const auto& g = t.group;
  const int nx = t.x_size;
  ValidityReport report;
  for (const char* law : {"gset_composition", "gset_unit", "theta_basepoint",
                          "quadratic_constraint", "derived_self_distributivity"}) {
    report.touch(law);
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      for (int x = 0; x < nx; ++x) {
        expect(report, "gset_composition", {a, b, x}, t.act(g.mul(a, b), x) == t.act(a, t.act(b, x)));
      }
  for (int x = 0; x < nx; ++x) expect(report, "gset_unit", {x}, t.act(0, x) == x);
  expect(report, "theta_basepoint", {t.basepoint}, t.theta[t.basepoint] == 0);
  report.merge(check_rack(t.rack()), "linear_constraint.");
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y) {
      expect(report, "quadratic_constraint", {x, y},
             t.theta[t.rack_op(x, y)] == g.conj(t.theta[x], t.theta[y]));
    }
  // x |> (y |> z) = Theta(x) Theta(y) . z = (Theta(x) Theta(y) Theta(x)^-1) . (Theta(x) . z)
  //              = Theta(x |> y) . (x |> z) = (x |> y) |> (x |> z)
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y)
      for (int z = 0; z < nx; ++z) {
        const int lhs = t.rack_op(x, t.rack_op(y, z));
        const int via_conj = t.act(g.conj(t.theta[x], t.theta[y]), t.rack_op(x, z));
        const int rhs = t.act(t.theta[t.rack_op(x, y)], t.rack_op(x, z));
        expect(report, "derived_self_distributivity", {x, y, z}, lhs == via_conj && via_conj == rhs);
      }
  report.flags["strict"] = is_strict(t);
  return report;
}

std::vector<int> g_theta(const GroupRackTriple& t, int g) {
  validate_shape(t);
  if (g < 0 || g >= t.group.size()) throw StructuralError("g_theta: element out of range");
  std::vector<int> out(t.x_size);
  for (int x = 0; x < t.x_size; ++x) {
    out[x] = t.group.mul(t.group.conj(g, t.theta[x]), t.group.inverse(t.theta[t.act(g, x)]));
  }
  return out;
}

bool is_strict(const GroupRackTriple& t) {
  for (int g = 0; g < t.group.size(); ++g) {
    const auto values = g_theta(t, g);
    if (std::any_of(values.begin(), values.end(), [](int v) { return v != 0; })) return false;
  }
  return true;
}

ValidityReport check_augmentation(const GroupRackTriple& t, const std::vector<int>& subset) {
  validate_shape(t);
  require_range(subset, t.group.size(), "augmentation subset");
  ValidityReport report;
  report.touch("subgroup");
  report.touch("contains_image");
  report.touch("equivariance");
  expect(report, "subgroup", {}, is_subgroup(t.group, subset));
  const std::set<int> s(subset.begin(), subset.end());
  for (int x = 0; x < t.x_size; ++x) expect(report, "contains_image", {x}, s.count(t.theta[x]) > 0);
  for (int g : s) {
    const auto values = g_theta(t, g);
    for (int x = 0; x < t.x_size; ++x) expect(report, "equivariance", {g, x}, values[x] == 0);
  }
  return report;
}

ValidityReport check_group_crossed_module(const GroupCrossedModule& cm) {
  const auto& m = cm.m;
  const auto& n = cm.n;
  require_size(cm.mu, m.size(), "mu table");
  require_range(cm.mu, n.size(), "mu table");
  require_size(cm.eta, static_cast<std::size_t>(n.size()) * m.size(), "eta table");
  require_range(cm.eta, m.size(), "eta table");
  if (cm.n_prime) require_range(*cm.n_prime, n.size(), "n_prime");
  auto eta = [&](int a, int x) { return cm.eta[a * m.size() + x]; };

  ValidityReport report;
  report.merge(check_group(m), "m.");
  report.merge(check_group(n), "n.");
  ValidityReport hom = check_group_hom(m, n, cm.mu);
  report.merge(hom, "mu_");
  for (const char* law : {"eta_action", "eta_automorphism", "condition1", "condition2"}) {
    report.touch(law);
  }
  for (int x = 0; x < m.size(); ++x) expect(report, "eta_action", {0, x}, eta(0, x) == x);
  for (int a = 0; a < n.size(); ++a) {
    for (int b = 0; b < n.size(); ++b)
      for (int x = 0; x < m.size(); ++x) {
        expect(report, "eta_action", {a, b, x}, eta(n.mul(a, b), x) == eta(a, eta(b, x)));
      }
    for (int x = 0; x < m.size(); ++x)
      for (int y = 0; y < m.size(); ++y) {
        expect(report, "eta_automorphism", {a, x, y},
               eta(a, m.mul(x, y)) == m.mul(eta(a, x), eta(a, y)));
      }
  }
  const std::vector<int> acting = cm.n_prime ? *cm.n_prime : all_elements(n);
  for (int a : acting)
    for (int x = 0; x < m.size(); ++x) {
      expect(report, "condition1", {a, x}, cm.mu[eta(a, x)] == n.conj(a, cm.mu[x]));
    }
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < m.size(); ++y) {
      expect(report, "condition2", {x, y}, eta(cm.mu[x], y) == m.conj(x, y));
    }
  if (cm.n_prime) {
    report.touch("n_prime_subgroup");
    report.touch("n_prime_contains_image");
    expect(report, "n_prime_subgroup", {}, is_subgroup(n, *cm.n_prime));
    const std::set<int> s(cm.n_prime->begin(), cm.n_prime->end());
    for (int x = 0; x < m.size(); ++x) {
      expect(report, "n_prime_contains_image", {x}, s.count(cm.mu[x]) > 0);
    }
  }
  report.flags["relaxed"] = cm.n_prime.has_value();
  return report;
}

GroupCrossedModule normal_inclusion_crossed_module(const FiniteGroup& n,
                                                   const std::vector<int>& members) {
  if (!is_normal_subgroup(n, members)) {
    throw StructuralError("normal_inclusion_crossed_module: not a normal subgroup of " + n.name());
  }
  auto sub = subgroup(n, members, n.name() + "_sub" + std::to_string(members.size()));
  const auto& inc = sub.inclusion;
  std::vector<int> local(n.size(), -1);
  for (std::size_t i = 0; i < inc.size(); ++i) local[inc[i]] = static_cast<int>(i);
  std::vector<int> eta;
  for (int a = 0; a < n.size(); ++a)
    for (int m : inc) eta.push_back(local[n.conj(a, m)]);
  return {sub.group, n, inc, std::move(eta), std::nullopt};
}

std::vector<GroupCrossedModule> inclusion_crossed_module_catalog() {
  std::vector<GroupCrossedModule> out;
  for (const auto& g : group_catalog()) {
    std::set<std::vector<int>> seen;
    for (int a = 0; a < g.size(); ++a) {
      const auto h = generated_subgroup(g, {a});
      if (!is_normal_subgroup(g, h) || !seen.insert(h).second) continue;
      out.push_back(normal_inclusion_crossed_module(g, h));
    }
  }
  return out;
}

GroupCrossedModule relaxed_s3_a3_crossed_module() {
  const auto s3 = symmetric_group3();
  int c = -1;
  for (int a = 0; a < s3.size() && c < 0; ++a)
    if (s3.order(a) == 3) c = a;
  std::vector<int> eta;
  for (int n = 0; n < s3.size(); ++n)
    for (int m = 0; m < 3; ++m) eta.push_back(m);
  return {cyclic_group(3), s3, {0, c, s3.mul(c, c)}, std::move(eta), generated_subgroup(s3, {c})};
}

CrossedModuleRack augmented_rack_from_crossed_module(const GroupCrossedModule& cm) {
  auto cm_report = check_group_crossed_module(cm);
  if (!cm_report.passed) {
    const double r = cm_report.max_residual;
    throw ConstraintError("crossed_module", r, std::move(cm_report));
  }
  GroupRackTriple t{cm.n, cm.m.size(), cm.eta, cm.mu, 0};
  auto report = check_group_rack_triple(t);
  const auto everything = all_elements(cm.n);
  report.merge(check_augmentation(t, cm.n_prime ? *cm.n_prime : everything), "augmentation.");
  report.flags["full_equivariance"] = check_augmentation(t, everything).passed;
  report.flags["relaxed"] = cm.n_prime.has_value();
  return {std::move(t), std::move(report)};
}

ValidityReport check_rack_triple_morphism(const GroupRackTriple& src, const GroupRackTriple& dst,
                                          const RackTripleMorphism& m) {
  validate_shape(src);
  validate_shape(dst);
  if (!check_group_hom(src.group, dst.group, m.phi).passed) {
    throw PreconditionError("rack triple morphism: phi is not a group homomorphism");
  }
  require_size(m.psi, src.x_size, "psi table");
  require_range(m.psi, dst.x_size, "psi table");
  ValidityReport report;
  for (const char* law : {"basepoint", "theta_compatibility", "equivariance", "rack_morphism"}) {
    report.touch(law);
  }
  expect(report, "basepoint", {src.basepoint}, m.psi[src.basepoint] == dst.basepoint);
  for (int x = 0; x < src.x_size; ++x) {
    expect(report, "theta_compatibility", {x}, dst.theta[m.psi[x]] == m.phi[src.theta[x]]);
    for (int g = 0; g < src.group.size(); ++g) {
      expect(report, "equivariance", {g, x}, m.psi[src.act(g, x)] == dst.act(m.phi[g], m.psi[x]));
    }
    for (int y = 0; y < src.x_size; ++y) {
      expect(report, "rack_morphism", {x, y},
             m.psi[src.rack_op(x, y)] == dst.rack_op(m.psi[x], m.psi[y]));
    }
  }
  return report;
}

RackTripleMorphism compose(const RackTripleMorphism& second, const RackTripleMorphism& first) {
  RackTripleMorphism out;
  for (int v : first.phi) {
    if (v < 0 || v >= static_cast<int>(second.phi.size())) {
      throw StructuralError("compose: phi tables do not chain");
    }
    out.phi.push_back(second.phi[v]);
  }
  for (int v : first.psi) {
    if (v < 0 || v >= static_cast<int>(second.psi.size())) {
      throw StructuralError("compose: psi tables do not chain");
    }
    out.psi.push_back(second.psi[v]);
  }
  return out;
}

}  // namespace llt
