// Assemble the certification matrices for a streamwise-invariant flow and
// drive feasibility, gain minimization, and bisection sweeps.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "hydrocert/polymatrix.hpp"
#include "hydrocert/sos.hpp"

namespace hydrocert::certify {

struct Direction {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;  // periodic with period hi - lo; otherwise no-slip
};

// Flow invariant along axis m (1-based), with the two in-plane axes in
// ascending physical order mapped to polynomial variables 0 and 1.
struct FlowProblem {
  std::array<Direction, 2> dir{};
  int m = 1;
  poly::Poly2 profile;  // laminar profile U_m over the in-plane coordinates
  std::array<std::array<double, 3>, 3> F{};
  double Re = 1.0;

  std::array<int, 2> in_plane() const;  // 1-based, ascending
  sos::SemialgebraicBox box() const;
  void validate() const;
};

// pi^2 / D^2 with D^2 the sum of squared side lengths (periods included)
double poincare_constant(const FlowProblem& flow);

enum class CertStatus { Feasible, Infeasible, Marginal, NumericalFailure };
std::string to_string(CertStatus s);

struct StabilityCertificate {
  CertStatus status = CertStatus::Infeasible;
  double margin = 0.0;           // feasibility margin of the scaled LMI
  double k_m = 0.0, k_I = 0.0;   // reported under the normalization below
  std::string normalization = "k_m+2k_I=3";
  int relax_degree = 0;  // 0 when solved as a direct LMI
};

struct GainCertificate {
  CertStatus status = CertStatus::Infeasible;
  double k_m = 0.0, k_j = 0.0, k_i = 0.0;
  std::array<double, 3> eta_sq = {0.0, 0.0, 0.0};  // channels (m, j, i)
  double objective = 0.0;  // eta_m^2 + eta_j^2 + eta_i^2
};

struct IssCertificate {
  CertStatus status = CertStatus::Infeasible;
  double k_m = 0.0, k_I = 0.0;
  std::array<double, 3> psi = {0.0, 0.0, 0.0};
  std::array<double, 3> sigma = {0.0, 0.0, 0.0};
  double margin = 0.0;
  double beta1 = 0.0, beta2 = 0.0;  // min / max velocity weight
};

// 3x3, rows ordered (u_m, u_j, u_i), affine in z = (k_m, k_j, k_i)
polymatrix::SymPolyMatrix build_stability_matrix(const FlowProblem& flow);
// 6x6, affine in z = (k_m, k_j, k_i, eta_m^2, eta_j^2, eta_i^2)
polymatrix::SymPolyMatrix build_gain_matrix(const FlowProblem& flow);
// 6x6, affine in z = (k_m, k_j, k_i, sigma_m, sigma_j, sigma_i); psi fixed
polymatrix::SymPolyMatrix build_iss_matrix(const FlowProblem& flow,
                                           const std::array<double, 3>& psi);

struct CertifyOptions {
  std::optional<double> pin_ratio;  // fix k_I / k_m
  int relax_degree = -1;            // -1: default policy, escalating to cap
  int degree_cap = 4;
};

StabilityCertificate check_stability(const FlowProblem& flow,
                                     const CertifyOptions& opts = {});
GainCertificate minimize_gains(const FlowProblem& flow,
                               const CertifyOptions& opts = {});
IssCertificate check_iss(const FlowProblem& flow,
                         const std::array<double, 3>& psi,
                         const CertifyOptions& opts = {});

using FlowFamily = std::function<FlowProblem(double)>;

// Bisect the stability boundary in Re. Returns +infinity when feasible at
// re_hi. Requires feasibility at re_lo. An 8-point probe checks that
// feasibility is monotone in Re; a 64-point scan locates the boundary if not.
double critical_reynolds(const FlowFamily& family, double re_lo, double re_hi,
                         double rel_tol = 1e-4);
double iss_reynolds(const FlowFamily& family, const std::array<double, 3>& psi,
                    double re_lo, double re_hi, double rel_tol = 1e-4);

}  // namespace hydrocert::certify
