#include "hydrocert/polymatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace hydrocert::polymatrix {

SymPolyMatrix::SymPolyMatrix(int dim, int nvars) : dim_(dim), nvars_(nvars) {
  if (dim < 0) throw std::invalid_argument("SymPolyMatrix: dim < 0");
  if (nvars < 0) throw std::invalid_argument("SymPolyMatrix: nvars < 0");
  comps_.assign(nvars + 1,
                std::vector<poly::Poly2>(static_cast<size_t>(dim) * (dim + 1) / 2));
}

int SymPolyMatrix::idx(int i, int j) const {
  if (i > j) std::swap(i, j);
  return i * dim_ - i * (i - 1) / 2 + (j - i);
}

poly::Poly2& SymPolyMatrix::entry(int comp, int i, int j) {
  return comps_[comp][idx(i, j)];
}

const poly::Poly2& SymPolyMatrix::entry(int comp, int i, int j) const {
  return comps_[comp][idx(i, j)];
}

poly::LinPoly SymPolyMatrix::lin_entry(int i, int j) const {
  poly::LinPoly p(nvars_);
  for (int k = 0; k <= nvars_; ++k) p.comp(k) = entry(k, i, j);
  return p;
}

SymPolyMatrix SymPolyMatrix::at(const std::vector<double>& z) const {
  if (static_cast<int>(z.size()) != nvars_)
    throw std::invalid_argument("SymPolyMatrix::at: wrong z dimension");
  SymPolyMatrix r(dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      poly::Poly2 p = entry(0, i, j);
      for (int v = 0; v < nvars_; ++v) p += entry(1 + v, i, j).scaled(z[v]);
      r.entry(0, i, j) = p;
    }
  return r;
}

linalg::SymMat SymPolyMatrix::eval(double x0, double x1) const {
  if (nvars_ != 0)
    throw std::invalid_argument(
        "SymPolyMatrix::eval: decision variables still present");
  linalg::SymMat m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) m.at(i, j) = entry(0, i, j).eval(x0, x1);
  return m;
}

linalg::SymMat SymPolyMatrix::coeff_matrix(int comp,
                                           const poly::Monomial& m) const {
  linalg::SymMat r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) r.at(i, j) = entry(comp, i, j).coeff(m);
  return r;
}

int SymPolyMatrix::degree() const {
  int d = -1;
  for (const auto& comp : comps_)
    for (const auto& p : comp) d = std::max(d, p.degree());
  return d;
}

bool SymPolyMatrix::depends_on(int which) const {
  for (const auto& comp : comps_)
    for (const auto& p : comp)
      if (p.depends_on(which)) return true;
  return false;
}

double SymPolyMatrix::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& comp : comps_)
    for (const auto& p : comp) m = std::max(m, p.max_abs_coeff());
  return m;
}

void SymPolyMatrix::scale_congruence(const std::vector<double>& d) {
  if (static_cast<int>(d.size()) != dim_)
    throw std::invalid_argument("scale_congruence: wrong dimension");
  for (auto& comp : comps_)
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        comp[idx(i, j)] = comp[idx(i, j)].scaled(d[i] * d[j]);
}

void SymPolyMatrix::scale_variable(int v, double s) {
  for (auto& p : comps_[1 + v]) p = p.scaled(s);
}

SymPolyMatrix SymPolyMatrix::operator-(const SymPolyMatrix& o) const {
  if (dim_ != o.dim_ || nvars_ != o.nvars_)
    throw std::invalid_argument("SymPolyMatrix::operator-: shape mismatch");
  SymPolyMatrix r = *this;
  for (int k = 0; k <= nvars_; ++k)
    for (size_t t = 0; t < comps_[k].size(); ++t)
      r.comps_[k][t] = comps_[k][t] - o.comps_[k][t];
  return r;
}

}  // namespace hydrocert::polymatrix
