// Symmetric matrix with bivariate-polynomial entries, affine in a vector of
// decision variables:  M(x; z) = M0(x) + sum_v z_v * Mv(x).
#pragma once

#include <vector>

#include "hydrocert/linalg.hpp"
#include "hydrocert/poly.hpp"

namespace hydrocert::polymatrix {

class SymPolyMatrix {
 public:
  SymPolyMatrix(int dim, int nvars);

  int dim() const { return dim_; }
  int nvars() const { return nvars_; }

  // component k = 0 is the constant part, k = 1 + v the coefficient of z_v
  poly::Poly2& entry(int comp, int i, int j);
  const poly::Poly2& entry(int comp, int i, int j) const;

  poly::LinPoly lin_entry(int i, int j) const;

  // substitute decision variables
  SymPolyMatrix at(const std::vector<double>& z) const;  // nvars() == 0 result

  // evaluate a variable-free matrix at a point
  linalg::SymMat eval(double x0, double x1) const;

  // numeric matrix of polynomial coefficients for one component, one monomial
  linalg::SymMat coeff_matrix(int comp, const poly::Monomial& m) const;

  int degree() const;
  bool depends_on_x() const { return degree() > 0; }
  bool depends_on(int which) const;
  double max_abs_coeff() const;

  // congruence by a constant diagonal:  D M D
  void scale_congruence(const std::vector<double>& d);
  // rescale decision variable v by s (z_v -> z_v * s)
  void scale_variable(int v, double s);

  SymPolyMatrix operator-(const SymPolyMatrix& o) const;

 private:
  int idx(int i, int j) const;
  int dim_, nvars_;
  std::vector<std::vector<poly::Poly2>> comps_;  // [comp][packed upper tri]
};

}  // namespace hydrocert::polymatrix
