#include "hydrocert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hydrocert::linalg {

namespace {
inline int tri_index(int n, int i, int j) {
  // upper triangle, row-major; requires i <= j
  return i * n - i * (i - 1) / 2 + (j - i);
}
}  // namespace

SymMat::SymMat(int n) : n_(n), a_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {
  if (n < 1) throw std::invalid_argument("SymMat: dimension must be >= 1");
}

SymMat SymMat::identity(int n) {
  SymMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMat SymMat::diag(const std::vector<double>& d) {
  SymMat m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m.at(i, i) = d[i];
  return m;
}

SymMat SymMat::from_dense(int n, const std::vector<double>& rowmajor) {
  SymMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.at(i, j) = rowmajor[i * n + j];
  return m;
}

double& SymMat::at(int i, int j) {
  if (i > j) std::swap(i, j);
  return a_[tri_index(n_, i, j)];
}

double SymMat::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return a_[tri_index(n_, i, j)];
}

SymMat& SymMat::add_scaled(const SymMat& other, double s) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += s * other.a_[k];
  return *this;
}

SymMat& SymMat::scale(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SymMat& SymMat::shift_diag(double s) {
  for (int i = 0; i < n_; ++i) at(i, i) += s;
  return *this;
}

double SymMat::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

double SymMat::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += at(i, j) * at(i, j);
  return std::sqrt(s);
}

double SymMat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SymMat::finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

std::vector<double> SymMat::dense() const {
  std::vector<double> d(static_cast<size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) d[i * n_ + j] = at(i, j);
  return d;
}

namespace {

// Cyclic Jacobi on a dense copy; rotations accumulated into v when requested.
void jacobi_sweep_all(int n, std::vector<double>& a, std::vector<double>* v) {
  auto off = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return s;
  };
  double scale = 0.0;
  for (int i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
  if (scale == 0.0) return;
  const double stop = 1e-30 * scale * scale * n * n;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off() <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = a[p * n + p], aqq = a[q * n + q];
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double arp = a[r * n + p], arq = a[r * n + q];
            a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
            a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
          }
          if (v) {
            double vrp = (*v)[r * n + p], vrq = (*v)[r * n + q];
            (*v)[r * n + p] = vrp - s * (vrq + tau * vrp);
            (*v)[r * n + q] = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }
}

}  // namespace

EigenResult eigen_sym(const SymMat& a) {
  if (!a.finite()) throw std::invalid_argument("eigen_sym: non-finite input");
  const int n = a.dim();
  std::vector<double> d = a.dense();
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  jacobi_sweep_all(n, d, &v);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return d[x * n + x] < d[y * n + y]; });
  EigenResult r;
  r.values.resize(n);
  r.vectors.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = d[order[k] * n + order[k]];
    for (int i = 0; i < n; ++i) r.vectors[i * n + k] = v[i * n + order[k]];
  }
  return r;
}

std::vector<double> eigenvalues_sym(const SymMat& a) {
  if (!a.finite())
    throw std::invalid_argument("eigenvalues_sym: non-finite input");
  const int n = a.dim();
  std::vector<double> d = a.dense();
  jacobi_sweep_all(n, d, nullptr);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = d[i * n + i];
  std::sort(vals.begin(), vals.end());
  return vals;
}

double min_eigenvalue(const SymMat& a) { return eigenvalues_sym(a).front(); }

bool is_psd(const SymMat& a, double tol) {
  if (tol < 0) throw std::invalid_argument("is_psd: tol must be >= 0");
  return min_eigenvalue(a) >= -tol;
}

bool cholesky(const SymMat& a, std::vector<double>& lower) {
  const int n = a.dim();
  lower.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= lower[i * n + k] * lower[j * n + k];
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        lower[i * n + i] = std::sqrt(s);
      } else {
        lower[i * n + j] = s / lower[j * n + j];
      }
    }
  }
  return true;
}

void cholesky_solve(int n, const std::vector<double>& lower,
                    const std::vector<double>& b, std::vector<double>& x) {
  x = b;
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= lower[i * n + k] * x[k];
    x[i] = s / lower[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= lower[k * n + i] * x[k];
    x[i] = s / lower[i * n + i];
  }
}

bool inverse_spd(const SymMat& a, SymMat& inv) {
  const int n = a.dim();
  std::vector<double> lo;
  if (!cholesky(a, lo)) return false;
  inv = SymMat(n);
  std::vector<double> e(n, 0.0), col;
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    cholesky_solve(n, lo, e, col);
    for (int i = 0; i <= j; ++i) inv.at(i, j) = col[i];
  }
  return true;
}

double solve_sym_ridge(const SymMat& h, const std::vector<double>& b,
                       std::vector<double>& x) {
  const int n = h.dim();
  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(h.at(i, i)));
  if (maxdiag == 0.0) maxdiag = 1.0;
  double ridge = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    SymMat shifted = h;
    shifted.shift_diag(ridge);
    std::vector<double> lo;
    if (cholesky(shifted, lo)) {
      cholesky_solve(n, lo, b, x);
      bool ok = true;
      for (double v : x)
        if (!std::isfinite(v)) ok = false;
      if (ok) return ridge;
    }
    ridge = (ridge == 0.0) ? 1e-13 * maxdiag : ridge * 100.0;
  }
  throw std::runtime_error("solve_sym_ridge: singular system");
}

bool nullspace_and_particular(int rows, int cols, const std::vector<double>& e,
                              const std::vector<double>& g,
                              std::vector<std::vector<double>>& null_basis,
                              std::vector<double>& particular, double tol) {
  // Householder QR with column pivoting of E' (cols x rows).
  const int n = cols, m = rows;
  std::vector<double> a(static_cast<size_t>(n) * m);  // E', row-major n x m
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a[i * m + j] = e[j * cols + i];
  std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[i * n + i] = 1.0;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);

  double norm0 = 0.0;
  for (double v : a) norm0 = std::max(norm0, std::abs(v));
  const int kmax = std::min(n, m);
  int rank = 0;
  for (int k = 0; k < kmax; ++k) {
    // pivot: column with largest remaining norm
    int best = k;
    double bestnorm = -1.0;
    for (int j = k; j < m; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += a[i * m + j] * a[i * m + j];
      if (s > bestnorm) {
        bestnorm = s;
        best = j;
      }
    }
    if (best != k) {
      for (int i = 0; i < n; ++i) std::swap(a[i * m + k], a[i * m + best]);
      std::swap(perm[k], perm[best]);
    }
    double colnorm = std::sqrt(std::max(bestnorm, 0.0));
    if (colnorm <= tol * std::max(1.0, norm0)) break;
    // Householder vector for column k
    std::vector<double> v(n, 0.0);
    double alpha = (a[k * m + k] >= 0 ? -colnorm : colnorm);
    for (int i = k; i < n; ++i) v[i] = a[i * m + k];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0.0) {
      for (int j = k; j < m; ++j) {
        double dot = 0.0;
        for (int i = k; i < n; ++i) dot += v[i] * a[i * m + j];
        double f = 2.0 * dot / vnorm2;
        for (int i = k; i < n; ++i) a[i * m + j] -= f * v[i];
      }
      for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int i = k; i < n; ++i) dot += v[i] * q[i * n + j];
        double f = 2.0 * dot / vnorm2;
        for (int i = k; i < n; ++i) q[i * n + j] -= f * v[i];
      }
    }
    a[k * m + k] = alpha;
    for (int i = k + 1; i < n; ++i) a[i * m + k] = 0.0;
    ++rank;
  }
  // q now holds Q' (accumulated reflections applied to identity rows).
  // Solve R' w = P' g by forward substitution on the leading rank block.
  std::vector<double> pg(m);
  for (int j = 0; j < m; ++j) pg[j] = g[perm[j]];
  std::vector<double> w(n, 0.0);
  for (int i = 0; i < rank; ++i) {
    double s = pg[i];
    for (int k2 = 0; k2 < i; ++k2) s -= a[k2 * m + i] * w[k2];
    w[i] = s / a[i * m + i];
  }
  // consistency of remaining equations
  for (int i = rank; i < m; ++i) {
    double s = pg[i];
    for (int k2 = 0; k2 < rank; ++k2) s -= a[k2 * m + i] * w[k2];
    if (std::abs(s) > 1e-8 * std::max(1.0, norm0)) return false;
  }
  particular.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k2 = 0; k2 < rank; ++k2) particular[i] += q[k2 * n + i] * w[k2];
  null_basis.clear();
  for (int k2 = rank; k2 < n; ++k2) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = q[k2 * n + i];
    null_basis.push_back(std::move(col));
  }
  return true;
}

}  // namespace hydrocert::linalg
