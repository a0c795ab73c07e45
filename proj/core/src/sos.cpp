#include "hydrocert/sos.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hydrocert::sos {

using linalg::SymMat;
using poly::MonoBasis;
using poly::Monomial;
using poly::Poly2;
using polymatrix::SymPolyMatrix;

namespace {

constexpr std::array<const char*, 2> kVarNames = {"x0", "x1"};

Poly2 mono_poly(const Monomial& m) {
  Poly2 p = Poly2::constant(1.0);
  if (m.a > 0) p = p * Poly2::var(0, m.a);
  if (m.b > 0) p = p * Poly2::var(1, m.b);
  return p;
}

// packed upper-triangle index for (a <= b) in an n x n symmetric matrix
int packed_index(int a, int b, int n) { return a * n - a * (a - 1) / 2 + (b - a); }

// S_k entry (i, j) as a polynomial, given the Gram matrix of multiplier k
Poly2 gram_entry_poly(const SymMat& g, const MonoBasis& basis, int dim, int i,
                      int j) {
  const int m = static_cast<int>(basis.monomials.size());
  Poly2 s;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      double v = g.at(p * dim + i, q * dim + j);
      if (v == 0.0) continue;
      s += (mono_poly(basis.monomials[p]) * mono_poly(basis.monomials[q]))
               .scaled(v);
    }
  return s;
}

SymPolyMatrix residual_of(const SymPolyMatrix& m_at_z,
                          const std::vector<Poly2>& weights,
                          const std::vector<MonoBasis>& bases,
                          const std::vector<SymMat>& grams) {
  const int d = m_at_z.dim();
  SymPolyMatrix r(d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Poly2 s = m_at_z.entry(0, i, j);
      for (size_t k = 0; k < grams.size(); ++k)
        s += (weights[k] * gram_entry_poly(grams[k], bases[k], d, i, j))
                 .scaled(-1.0);
      r.entry(0, i, j) = s;
    }
  return r;
}

}  // namespace

SemialgebraicBox SemialgebraicBox::rectangle(double a0, double b0, double a1,
                                             double b1, bool periodic0,
                                             bool periodic1) {
  if (!(a0 < b0) || !(a1 < b1))
    throw std::invalid_argument("SemialgebraicBox: empty rectangle");
  SemialgebraicBox box;
  box.periodic = {periodic0, periodic1};
  box.lo = {a0, a1};
  box.hi = {b0, b1};
  const std::array<double, 2> lo = {a0, a1}, hi = {b0, b1};
  for (int c = 0; c < 2; ++c) {
    if (box.periodic[c]) continue;  // a full period imposes no constraint
    Poly2 x = Poly2::var(c);
    box.constraints.push_back((x - Poly2::constant(lo[c])) *
                              (Poly2::constant(hi[c]) - x));
  }
  return box;
}

bool SemialgebraicBox::contains(double x0, double x1, double tol) const {
  for (const Poly2& g : constraints)
    if (g.eval(x0, x1) < -tol) return false;
  return true;
}

int default_relax_degree(const polymatrix::SymPolyMatrix& m) {
  int deg = std::max(0, m.degree());
  return (deg + 1) / 2 + 1;
}

std::vector<double> SosDecoder::model_z(const std::vector<double>& full_z) const {
  if (static_cast<int>(full_z.size()) < model_vars)
    throw std::invalid_argument("SosDecoder: solution vector too short");
  return std::vector<double>(full_z.begin(), full_z.begin() + model_vars);
}

MatrixSosCertificate SosDecoder::certificate(
    const std::vector<double>& full_z) const {
  MatrixSosCertificate cert;
  cert.dim = dim;
  cert.bases = bases;
  cert.weights = weights;
  SymPolyMatrix mz = matrix.at(model_z(full_z));
  if (gram_offsets.empty()) {
    // identity lift: the matrix itself is the (only) Gram form
    cert.grams.push_back(mz.coeff_matrix(0, {0, 0}));
    cert.residual = residual_of(mz, cert.weights, cert.bases, cert.grams);
    return cert;
  }
  for (size_t k = 0; k < bases.size(); ++k) {
    const int n = static_cast<int>(bases[k].monomials.size()) * dim;
    SymMat g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        g.at(a, b) = full_z[gram_offsets[k] + packed_index(a, b, n)];
    cert.grams.push_back(std::move(g));
  }
  cert.residual = residual_of(mz, cert.weights, cert.bases, cert.grams);
  return cert;
}

std::pair<sdp::SdpProblem, SosDecoder> compile(const SymPolyMatrix& m,
                                               const SemialgebraicBox& box,
                                               int relax_degree) {
  const int d = m.dim();
  const int nz = m.nvars();
  const int deg = m.degree();
  for (const Poly2& g : box.constraints)
    if (g.is_zero())
      throw std::invalid_argument("compile: zero box constraint");

  SosDecoder dec;
  dec.model_vars = nz;
  dec.dim = d;
  dec.matrix = m;

  if (deg <= 0) {
    // constant in x: plain LMI block
    sdp::SdpProblem p;
    p.nvars = nz;
    sdp::Block& b = p.add_block(d);
    b.f0 = m.coeff_matrix(0, {0, 0});
    for (int v = 0; v < nz; ++v) b.f[v] = m.coeff_matrix(1 + v, {0, 0});
    dec.weights = {Poly2::constant(1.0)};
    dec.bases = {MonoBasis::upto(0)};
    return {std::move(p), std::move(dec)};
  }

  const int need = (deg + 1) / 2;
  if (relax_degree < need)
    throw std::invalid_argument("compile: relaxation degree " +
                                std::to_string(relax_degree) +
                                " below required " + std::to_string(need));
  if (box.constraints.empty())
    throw std::invalid_argument(
        "compile: x-dependent matrix needs at least one box constraint");

  bool use0 = m.depends_on(0), use1 = m.depends_on(1);
  for (const Poly2& g : box.constraints) {
    use0 = use0 || g.depends_on(0);
    use1 = use1 || g.depends_on(1);
  }

  dec.weights.push_back(Poly2::constant(1.0));
  for (const Poly2& g : box.constraints) dec.weights.push_back(g);
  const int nmult = static_cast<int>(dec.weights.size());

  sdp::SdpProblem p;
  std::vector<int> gram_dim(nmult);
  int total = nz;
  for (int k = 0; k < nmult; ++k) {
    int bd = relax_degree - (dec.weights[k].degree() + 1) / 2;
    bd = std::max(bd, 0);
    dec.bases.push_back(MonoBasis::upto(bd, use0, use1));
    if (dec.bases.back().monomials.empty())
      throw std::invalid_argument("compile: empty monomial basis");
    gram_dim[k] = static_cast<int>(dec.bases.back().monomials.size()) * d;
    dec.gram_offsets.push_back(total);
    total += gram_dim[k] * (gram_dim[k] + 1) / 2;
  }
  p.nvars = total;

  // one PSD block per Gram matrix
  for (int k = 0; k < nmult; ++k) {
    sdp::Block& b = p.add_block(gram_dim[k]);
    int var = dec.gram_offsets[k];
    for (int a = 0; a < gram_dim[k]; ++a)
      for (int bb = a; bb < gram_dim[k]; ++bb) b.f[var++].at(a, bb) = 1.0;
  }

  // coefficient matching: M_ij(x; z) = sum_k w_k(x) S_k,ij(x; G_k)
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      poly::LinPoly lhs(total), rhs(total);
      lhs.comp(0) = m.entry(0, i, j);
      for (int v = 0; v < nz; ++v) lhs.comp(1 + v) = m.entry(1 + v, i, j);
      for (int k = 0; k < nmult; ++k) {
        const auto& monos = dec.bases[k].monomials;
        const int nb = static_cast<int>(monos.size());
        for (int pp = 0; pp < nb; ++pp)
          for (int qq = 0; qq < nb; ++qq) {
            int r = pp * d + i, c = qq * d + j;
            int a = std::min(r, c), b = std::max(r, c);
            int var = dec.gram_offsets[k] + packed_index(a, b, gram_dim[k]);
            rhs.comp(1 + var) +=
                mono_poly(monos[pp]) * mono_poly(monos[qq]) * dec.weights[k];
          }
      }
      for (poly::LinearEquation& eq : match_coefficients(lhs, rhs))
        p.add_equality(std::move(eq.coeffs), eq.rhs);
    }
  return {std::move(p), std::move(dec)};
}

VerifyReport verify(const MatrixSosCertificate& cert,
                    const SymPolyMatrix& m_at_z) {
  if (m_at_z.nvars() != 0)
    throw std::invalid_argument("verify: matrix must be variable-free");
  if (m_at_z.dim() != cert.dim ||
      cert.grams.size() != cert.bases.size() ||
      cert.grams.size() != cert.weights.size())
    throw std::invalid_argument("verify: shape mismatch");
  for (size_t k = 0; k < cert.grams.size(); ++k)
    if (cert.grams[k].dim() !=
        static_cast<int>(cert.bases[k].monomials.size()) * cert.dim)
      throw std::invalid_argument("verify: Gram dimension mismatch");

  VerifyReport rep;
  rep.min_gram_eig = std::numeric_limits<double>::infinity();
  for (const SymMat& g : cert.grams)
    rep.min_gram_eig = std::min(rep.min_gram_eig, linalg::min_eigenvalue(g));
  SymPolyMatrix r = residual_of(m_at_z, cert.weights, cert.bases, cert.grams);
  rep.max_residual_coeff = r.max_abs_coeff();
  const double res_tol = 1e-6 * (1.0 + m_at_z.max_abs_coeff());
  rep.pass = rep.min_gram_eig >= -1e-8 && rep.max_residual_coeff <= res_tol;
  if (!rep.pass) {
    rep.detail = rep.min_gram_eig < -1e-8 ? "indefinite Gram matrix"
                                          : "residual above tolerance";
  }
  return rep;
}

double sample_check(const SymPolyMatrix& m_at_z, const SemialgebraicBox& box,
                    int n, unsigned seed) {
  if (m_at_z.nvars() != 0)
    throw std::invalid_argument("sample_check: matrix must be variable-free");
  if (n < 1) throw std::invalid_argument("sample_check: n must be >= 1");
  // Halton points (bases 2 and 3), offset by the seed for reproducible
  // alternate draws
  auto halton = [](unsigned index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
      f /= base;
      r += f * (index % base);
      index /= base;
    }
    return r;
  };
  double lo = std::numeric_limits<double>::infinity();
  for (int t = 0; t < n; ++t) {
    unsigned idx = seed + static_cast<unsigned>(t);
    double x0 = box.lo[0] + (box.hi[0] - box.lo[0]) * halton(idx, 2);
    double x1 = box.lo[1] + (box.hi[1] - box.lo[1]) * halton(idx, 3);
    if (!box.contains(x0, x1)) continue;
    lo = std::min(lo, linalg::min_eigenvalue(m_at_z.eval(x0, x1)));
  }
  return lo;
}

std::string MatrixSosCertificate::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["dim"] = dim;
  const std::array<std::string, 2> names = {kVarNames[0], kVarNames[1]};
  for (size_t k = 0; k < grams.size(); ++k) {
    nlohmann::json mk;
    mk["weight"] = weights[k].str(names);
    nlohmann::json basis = nlohmann::json::array();
    for (const Monomial& m : bases[k].monomials)
      basis.push_back({m.a, m.b});
    mk["basis"] = basis;
    nlohmann::json rows = nlohmann::json::array();
    const int gd = grams[k].dim();
    for (int r = 0; r < gd; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < gd; ++c) row.push_back(grams[k].at(r, c));
      rows.push_back(row);
    }
    mk["gram"] = rows;
    j["multipliers"].push_back(mk);
  }
  nlohmann::json res = nlohmann::json::array();
  for (int i = 0; i < dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = i; jj < dim; ++jj)
      row.push_back(residual.entry(0, i, jj).str(names));
    res.push_back(row);
  }
  j["residual_upper"] = res;
  return j.dump(2);
}

MatrixSosCertificate MatrixSosCertificate::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MatrixSosCertificate cert;
  cert.dim = j.at("dim").get<int>();
  const std::array<std::string, 2> names = {kVarNames[0], kVarNames[1]};
  if (j.contains("multipliers")) {
    for (const auto& mk : j.at("multipliers")) {
      cert.weights.push_back(Poly2::parse(mk.at("weight").get<std::string>(), names));
      MonoBasis basis;
      for (const auto& m : mk.at("basis"))
        basis.monomials.push_back({m.at(0).get<int>(), m.at(1).get<int>()});
      cert.bases.push_back(std::move(basis));
      const auto& rows = mk.at("gram");
      const int gd = static_cast<int>(rows.size());
      SymMat g(gd);
      for (int r = 0; r < gd; ++r)
        for (int c = r; c < gd; ++c) g.at(r, c) = rows[r][c].get<double>();
      cert.grams.push_back(std::move(g));
    }
  }
  cert.residual = SymPolyMatrix(cert.dim, 0);
  const auto& res = j.at("residual_upper");
  for (int i = 0; i < cert.dim; ++i)
    for (int jj = i; jj < cert.dim; ++jj)
      cert.residual.entry(0, i, jj) =
          Poly2::parse(res[i][jj - i].get<std::string>(), names);
  return cert;
}

}  // namespace hydrocert::sos
