// Compile "M(x; z) >= 0 on a semialgebraic box" into an LMI problem through a
// Gram-matrix parametrization with multipliers, and audit returned
// certificates.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hydrocert/polymatrix.hpp"
#include "hydrocert/sdp.hpp"

namespace hydrocert::sos {

struct SemialgebraicBox {
  // Omega = { x : g(x) >= 0 for every g in constraints }
  std::vector<poly::Poly2> constraints;
  std::array<bool, 2> periodic = {false, false};
  // sampling rectangle (also the periods for periodic coordinates)
  std::array<double, 2> lo = {0.0, 0.0};
  std::array<double, 2> hi = {0.0, 0.0};

  // Rectangle [a0,b0] x [a1,b1]; bounded coordinates contribute
  // g = (x - a)(b - x), periodic ones contribute nothing.
  static SemialgebraicBox rectangle(double a0, double b0, double a1, double b1,
                                    bool periodic0 = false,
                                    bool periodic1 = false);

  bool contains(double x0, double x1, double tol = 1e-12) const;
};

struct MatrixSosCertificate {
  int dim = 0;
  std::vector<poly::MonoBasis> bases;    // one per multiplier
  std::vector<poly::Poly2> weights;      // weights[0] = 1, then box constraints
  std::vector<linalg::SymMat> grams;     // one PSD Gram per multiplier
  // R(x) = M(x) - sum_k weights[k] * S_k(x); near-zero for a valid certificate
  polymatrix::SymPolyMatrix residual{0, 0};

  std::string to_json() const;
  static MatrixSosCertificate from_json(const std::string& text);
};

struct VerifyReport {
  bool pass = false;
  double min_gram_eig = 0.0;
  double max_residual_coeff = 0.0;
  std::string detail;
};

// Maps an LMI solution for the compiled problem back to the model variables
// and the certificate.
struct SosDecoder {
  int model_vars = 0;
  int dim = 0;
  std::vector<poly::MonoBasis> bases;
  std::vector<poly::Poly2> weights;
  std::vector<int> gram_offsets;  // first variable index of each Gram block
  polymatrix::SymPolyMatrix matrix{0, 0};

  std::vector<double> model_z(const std::vector<double>& full_z) const;
  MatrixSosCertificate certificate(const std::vector<double>& full_z) const;
};

// Degree of the relaxation used when none is requested.
int default_relax_degree(const polymatrix::SymPolyMatrix& m);

// Build the LMI problem whose feasibility certifies M(x; z) >= 0 on the box.
// Constant-in-x matrices degenerate to the identity lift (no multipliers).
std::pair<sdp::SdpProblem, SosDecoder> compile(
    const polymatrix::SymPolyMatrix& m, const SemialgebraicBox& box,
    int relax_degree);

// Recompute the residual and Gram spectra from scratch; m_at_z must be
// variable-free.
VerifyReport verify(const MatrixSosCertificate& cert,
                    const polymatrix::SymPolyMatrix& m_at_z);

// Minimum eigenvalue of m_at_z over n quasi-random points of the box.
double sample_check(const polymatrix::SymPolyMatrix& m_at_z,
                    const SemialgebraicBox& box, int n, unsigned seed = 1);

}  // namespace hydrocert::sos
