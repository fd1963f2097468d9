#include "llt/catalog.hpp"

namespace llt {

namespace {

Mat unit_matrix(int size, int row, int col) {
  Mat m = Mat::Zero(size, size);
  m(row, col) = 1.0;
  return m;
}

Vec vec_of(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

const CatalogIdeal& CatalogEntry::ideal(const std::string& ideal_name) const {
  for (const auto& i : ideals) {
    if (i.name == ideal_name) return i;
  }
  throw StructuralError("catalog algebra '" + name + "' has no ideal named '" + ideal_name + "'");
}

LieAlgebraData sl2_algebra() {
  // 2x2 defining matrices h, e, f.
  Mat h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  return LieAlgebraData::from_matrix_basis({h, e, f}, {"h", "e", "f"});
}

LieAlgebraData aff1_algebra() {
  return LieAlgebraData::from_matrix_basis({unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)},
                                           {"a", "b"});
}

LieAlgebraData heisenberg_algebra() {
  return LieAlgebraData::from_matrix_basis(
      {unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)}, {"x", "y", "z"});
}

CatalogEntry catalog_entry(CatalogAlgebra which) {
  switch (which) {
    case CatalogAlgebra::abelian: {
      std::vector<Mat> rep = {unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)};
      return {"abelian", LieAlgebraData::abelian(2), rep,
              {{"line", {vec_of({1, 0})}}, {"full", {vec_of({1, 0}), vec_of({0, 1})}}}};
    }
    case CatalogAlgebra::aff1: {
      std::vector<Mat> rep = {unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)};
      return {"aff1", aff1_algebra(), rep,
              {{"derived", {vec_of({0, 1})}}, {"full", {vec_of({1, 0}), vec_of({0, 1})}}}};
    }
    case CatalogAlgebra::heisenberg: {
      std::vector<Mat> rep = {unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)};
      return {"heisenberg",
              heisenberg_algebra(),
              rep,
              {{"center", {vec_of({0, 0, 1})}},
               {"yz", {vec_of({0, 1, 0}), vec_of({0, 0, 1})}},
               {"full", {vec_of({1, 0, 0}), vec_of({0, 1, 0}), vec_of({0, 0, 1})}}}};
    }
    case CatalogAlgebra::sl2: {
      Mat h(2, 2), e(2, 2), f(2, 2);
      h << 1, 0, 0, -1;
      e << 0, 1, 0, 0;
      f << 0, 0, 1, 0;
      return {"sl2",
              sl2_algebra(),
              {h, e, f},
              {{"full", {vec_of({1, 0, 0}), vec_of({0, 1, 0}), vec_of({0, 0, 1})}}}};
    }
    case CatalogAlgebra::upper_triangular3: {
      std::vector<Mat> basis = {unit_matrix(3, 0, 0), unit_matrix(3, 1, 1), unit_matrix(3, 2, 2),
                                unit_matrix(3, 0, 1), unit_matrix(3, 0, 2), unit_matrix(3, 1, 2)};
      auto alg = LieAlgebraData::from_matrix_basis(basis, {"E11", "E22", "E33", "E12", "E13", "E23"});
      auto e = [](int i) { return Vec(Vec::Unit(6, i)); };
      return {"upper_triangular3",
              alg,
              basis,
              {{"strictly_upper", {e(3), e(4), e(5)}},
               {"corner", {e(4)}},
               {"scalars", {vec_of({1, 1, 1, 0, 0, 0})}},
               {"full", {e(0), e(1), e(2), e(3), e(4), e(5)}}}};
    }
  }
  throw StructuralError("unknown catalog algebra");
}

std::vector<CatalogAlgebra> all_catalog_algebras() {
  return {CatalogAlgebra::abelian, CatalogAlgebra::aff1, CatalogAlgebra::heisenberg,
          CatalogAlgebra::sl2, CatalogAlgebra::upper_triangular3};
}

std::string to_string(CatalogAlgebra which) { return catalog_entry(which).name; }

CatalogAlgebra catalog_algebra_from_string(const std::string& name) {
  for (auto which : all_catalog_algebras()) {
    if (to_string(which) == name) return which;
  }
  throw StructuralError("unknown catalog algebra '" + name + "'");
}

}  // namespace llt
