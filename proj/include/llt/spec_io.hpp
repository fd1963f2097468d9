#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "llt/racks.hpp"
#include "llt/triples.hpp"

namespace llt {

/// Malformed JSON or a document that does not match the expected layout.
class ParseError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// Optional "config" block; unset fields fall back to command defaults.
struct SpecConfig {
  std::optional<double> tolerance;
  std::optional<double> radius;
  std::optional<double> step;
  std::optional<std::string> scheme;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
};

struct TripleSpec;

struct TripleMorphismSpec {
  std::shared_ptr<TripleSpec> target;
  Mat phi;
  Mat psi;
};

/// {"lie_algebra": {"dim", "labels", "structure_constants": [[i, j, k, c], ...]},
///  "module": {"dim_v", "action_matrices"}, "theta": {"matrix"},
///  "faithful_rep"?: {"matrix_dim", "matrices"}, "h_basis"?: {"vectors"},
///  "config"?: {...}, "morphism"?: {"target": {...}, "phi", "psi"}}
/// Matrices are lists of rows. Structure constants not listed are zero.
struct TripleSpec {
  TripleComponents components;
  std::optional<SubspaceBasis> h_basis;
  SpecConfig config;
  std::optional<TripleMorphismSpec> morphism;
};

struct RackMorphismSpec {
  std::shared_ptr<GroupRackTriple> target;
  std::vector<int> phi;
  std::vector<int> psi;
};

/// {"group": {"size", "mul_table"} or {"name"}, "x_size", "action_table",
///  "theta_table", "basepoint", "morphism"?: {"target", "phi", "psi"}}.
/// mul_table and action_table are lists of rows.
struct RackSpec {
  GroupRackTriple triple;
  std::optional<RackMorphismSpec> morphism;
  SpecConfig config;
};

using SpecFile = std::variant<TripleSpec, RackSpec>;

/// Throws ParseError (with the byte position for JSON syntax errors) or
/// StructuralError for inconsistent dimensions and out-of-range indices.
SpecFile parse_spec(const std::string& text, const std::string& source = "<input>");
SpecFile load_spec_file(const std::string& path);

/// "sl2-adjoint", "scaling:<lambda>", "heisenberg-ideal", "s3-conjugation".
/// Throws StructuralError for unknown names.
SpecFile builtin_spec(const std::string& name);

}  // namespace llt
