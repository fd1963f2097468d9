#pragma once

#include <string>
#include <utility>
#include <vector>

#include "llt/algebra.hpp"

namespace llt {

enum class CatalogAlgebra { abelian, aff1, heisenberg, sl2, upper_triangular3 };

struct CatalogIdeal {
  std::string name;
  std::vector<Vec> basis;
};

/// A small Lie algebra with a faithful matrix representation and a list of
/// ideals (each usable as the module V of an inclusion triple).
struct CatalogEntry {
  std::string name;
  LieAlgebraData algebra;
  std::vector<Mat> faithful_rep;
  std::vector<CatalogIdeal> ideals;

  const CatalogIdeal& ideal(const std::string& ideal_name) const;
};

/// Basis orderings:
///   abelian            e0, e1 (dim 2), rep = diagonal 2x2
///   aff1               a, b with [a, b] = b
///   heisenberg         x, y, z with [x, y] = z, rep = strictly upper 3x3
///   sl2                h, e, f with [h, e] = 2e, [h, f] = -2f, [e, f] = h
///   upper_triangular3  E11, E22, E33, E12, E13, E23
CatalogEntry catalog_entry(CatalogAlgebra which);
std::vector<CatalogAlgebra> all_catalog_algebras();
std::string to_string(CatalogAlgebra which);
CatalogAlgebra catalog_algebra_from_string(const std::string& name);

LieAlgebraData sl2_algebra();
LieAlgebraData aff1_algebra();
LieAlgebraData heisenberg_algebra();

}  // namespace llt
