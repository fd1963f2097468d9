#pragma once

#include <optional>
#include <string>
#include <vector>

#include "llt/report.hpp"

namespace llt {

/// Finite group on elements 0..size-1 with unit 0.
class FiniteGroup {
 public:
  /// mul_table[a * size + b] = ab. Throws StructuralError on a table of the
  /// wrong length or with out-of-range entries. Group laws are not checked
  /// here (see check_group); inverse(a) is -1 when a has no inverse.
  FiniteGroup(std::string name, int size, std::vector<int> mul_table,
              std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  int size() const { return size_; }
  int unit() const { return 0; }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int inverse(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inverse(g)); }
  const std::vector<int>& mul_table() const { return mul_; }
  const std::vector<int>& inverse_table() const { return inv_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int a) const;
  int order(int a) const;

 private:
  std::string name_;
  int size_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

/// Laws: "associativity" (index a, b, c), "unit", "inverse".
ValidityReport check_group(const FiniteGroup& g);

/// Law "homomorphism" over all pairs; phi[a] is the image of a.
ValidityReport check_group_hom(const FiniteGroup& src, const FiniteGroup& dst,
                               const std::vector<int>& phi);

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group3();
FiniteGroup dihedral_group4();
FiniteGroup quaternion_group();
FiniteGroup alternating_group4();
/// Closure of permutation generators on {0..degree-1}; identity first.
FiniteGroup permutation_group(std::string name, int degree,
                              const std::vector<std::vector<int>>& generators);

/// Z1..Z12, S3, D4, Q8, A4.
std::vector<FiniteGroup> group_catalog();
/// "Z<n>", "S3", "D4", "Q8", "A4". Throws StructuralError for unknown names.
FiniteGroup group_by_name(const std::string& name);

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& subset);
bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& subset);
/// Subgroup generated by the given elements, sorted ascending.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);

struct Subgroup {
  FiniteGroup group;
  std::vector<int> inclusion;  // subgroup index -> ambient index
};
/// Throws StructuralError if subset is not a subgroup.
Subgroup subgroup(const FiniteGroup& g, const std::vector<int>& subset, std::string name);

struct Quotient {
  FiniteGroup group;
  std::vector<int> projection;  // ambient index -> coset index
};
/// Throws StructuralError if normal is not a normal subgroup.
Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal,
                        std::string name);

/// Set with a binary operation, table[x * size + y] = x |> y.
struct FiniteRack {
  int size = 0;
  std::vector<int> table;
  std::optional<int> basepoint;

  int op(int x, int y) const { return table[x * size + y]; }
};

/// Laws: "self_distributivity" (index x, y, z), "bijectivity" (index x), and
/// for pointed racks "basepoint_left", "basepoint_right". Left translations
/// are required to be bijective, which on a finite set is the same as
/// surjective. Throws StructuralError on out-of-range entries.
ValidityReport check_rack(const FiniteRack& r);

FiniteRack trivial_rack(int size, std::optional<int> basepoint = 0);
/// x |> y = x y x^-1, pointed at the unit.
FiniteRack conjugation_rack(const FiniteGroup& g);
/// Orbits of the group generated by the left translations, each sorted.
std::vector<std::vector<int>> rack_orbits(const FiniteRack& r);

/// (G, X, Theta) with a G-set X and x |> y = Theta(x) . y.
struct GroupRackTriple {
  FiniteGroup group;
  int x_size = 0;
  std::vector<int> action;  // action[g * x_size + x] = g . x
  std::vector<int> theta;   // length x_size, group indices
  int basepoint = 0;

  int act(int g, int x) const { return action[g * x_size + x]; }
  int rack_op(int x, int y) const { return act(theta[x], y); }
  FiniteRack rack() const;
};

/// X = G with conjugation and Theta = id.
GroupRackTriple conjugation_triple(const FiniteGroup& g);

/// Laws: "gset_composition" (index g, h, x), "gset_unit", "theta_basepoint",
/// "linear_constraint.*" (the rack laws of x |> y = Theta(x) . y),
/// "quadratic_constraint" (index x, y), and "derived_self_distributivity",
/// which follows from the others. Flag "strict" records full equivariance.
/// Throws StructuralError on malformed tables.
ValidityReport check_group_rack_triple(const GroupRackTriple& t);

/// x -> (g Theta(x) g^-1) Theta(g . x)^-1.
std::vector<int> g_theta(const GroupRackTriple& t, int g);
/// g_theta(t, g) is the unit for every g.
bool is_strict(const GroupRackTriple& t);

/// Laws: "subgroup", "contains_image", "equivariance" (index g, x) with g
/// ranging over the given subset.
ValidityReport check_augmentation(const GroupRackTriple& t, const std::vector<int>& subset);

/// (M, N, mu, eta): eta[n * |M| + m] = eta(n)(m). Relaxed when n_prime is set.
struct GroupCrossedModule {
  FiniteGroup m;
  FiniteGroup n;
  std::vector<int> mu;
  std::vector<int> eta;
  std::optional<std::vector<int>> n_prime;
};

/// Laws: "m.*", "n.*" (group laws), "mu_homomorphism", "eta_action",
/// "eta_automorphism", "condition1" (index n, m over N or N'), "condition2"
/// (index m, m'), and for relaxed modules "n_prime_subgroup",
/// "n_prime_contains_image".
ValidityReport check_group_crossed_module(const GroupCrossedModule& cm);

/// M -> N for a normal subgroup M of N (members listed in N) with eta the
/// conjugation action. Throws StructuralError if members is not normal.
GroupCrossedModule normal_inclusion_crossed_module(const FiniteGroup& n,
                                                   const std::vector<int>& members);
/// Inclusions of every cyclically generated normal subgroup of each catalog
/// group.
std::vector<GroupCrossedModule> inclusion_crossed_module_catalog();
/// Z3 -> A3 in S3 with trivial eta: a crossed module relative to N' = A3 but
/// not on all of S3.
GroupCrossedModule relaxed_s3_a3_crossed_module();

struct CrossedModuleRack {
  GroupRackTriple triple;
  ValidityReport report;  // triple laws plus "augmentation.*" on N or N'
};

/// X = M as an N-set via eta, Theta = mu. For relaxed modules equivariance is
/// certified on N' only, and flag "full_equivariance" records whether it
/// happens to hold on all of N. Throws ConstraintError("crossed_module") if
/// cm is invalid.
CrossedModuleRack augmented_rack_from_crossed_module(const GroupCrossedModule& cm);

struct RackTripleMorphism {
  std::vector<int> phi;  // group hom G -> G'
  std::vector<int> psi;  // set map X -> X'
};

/// Laws: "basepoint", "theta_compatibility", "equivariance", and the
/// consequence "rack_morphism". Throws PreconditionError if phi is not a
/// group homomorphism, StructuralError on malformed tables.
ValidityReport check_rack_triple_morphism(const GroupRackTriple& src, const GroupRackTriple& dst,
                                          const RackTripleMorphism& m);

/// second o first
RackTripleMorphism compose(const RackTripleMorphism& second, const RackTripleMorphism& first);

}  // namespace llt
