// Dense symmetric linear algebra for small certificate blocks.
#pragma once

#include <cstddef>
#include <vector>

namespace hydrocert::linalg {

// Symmetric matrix, upper triangle stored row-major.
class SymMat {
 public:
  explicit SymMat(int n);
  static SymMat identity(int n);
  static SymMat diag(const std::vector<double>& d);
  static SymMat from_dense(int n, const std::vector<double>& rowmajor);

  int dim() const { return n_; }

  double& at(int i, int j);
  double at(int i, int j) const;

  SymMat& add_scaled(const SymMat& other, double s);
  SymMat& scale(double s);
  SymMat& shift_diag(double s);

  double trace() const;
  double frobenius() const;
  double max_abs() const;
  bool finite() const;

  // Raw packed upper triangle, size n*(n+1)/2.
  const std::vector<double>& packed() const { return a_; }
  std::vector<double>& packed() { return a_; }

  std::vector<double> dense() const;  // n*n row-major

 private:
  int n_;
  std::vector<double> a_;
};

struct EigenResult {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column k is eigenvector of values[k], row-major n*n
};

// Cyclic Jacobi rotations; throws std::invalid_argument on non-finite input.
std::vector<double> eigenvalues_sym(const SymMat& a);
EigenResult eigen_sym(const SymMat& a);

double min_eigenvalue(const SymMat& a);
bool is_psd(const SymMat& a, double tol = 1e-9);

// Cholesky A = L L'. Returns false if A is not positive definite.
// L is lower triangular, row-major packed (same layout as SymMat upper triangle
// of the transpose).
bool cholesky(const SymMat& a, std::vector<double>& lower);

// Solve A x = b given the Cholesky factor of A.
void cholesky_solve(int n, const std::vector<double>& lower,
                    const std::vector<double>& b, std::vector<double>& x);

// Inverse via the Cholesky factor; result symmetric. False if not PD.
bool inverse_spd(const SymMat& a, SymMat& inv);

// Solve the symmetric system H x = b with a diagonal ridge fallback when the
// factorization fails. Returns the ridge that was used (0 if none).
double solve_sym_ridge(const SymMat& h, const std::vector<double>& b,
                       std::vector<double>& x);

// Orthonormal basis of the null space of the m x n matrix E (row-major),
// returned as n x k column-major. Also produces the minimum-norm particular
// solution of E z = g; returns false if the system is inconsistent.
bool nullspace_and_particular(int rows, int cols, const std::vector<double>& e,
                              const std::vector<double>& g,
                              std::vector<std::vector<double>>& null_basis,
                              std::vector<double>& particular,
                              double tol = 1e-11);

}  // namespace hydrocert::linalg
