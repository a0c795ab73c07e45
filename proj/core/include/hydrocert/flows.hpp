// Canonical flow constructors and independent analytic oracles used to
// cross-check the certification pipeline.
#pragma once

#include <string>
#include <vector>

#include "hydrocert/certify.hpp"

namespace hydrocert::flows {

struct RotatingCouetteParams {
  double Ro = 0.0;  // rotation number in [0, 1]
  double L = 3.141592653589793;  // spanwise period, gap half-width units
};

certify::FlowProblem rotating_couette(const RotatingCouetteParams& p, double Re);

// U_1 = 1 - x2^2 on the Couette domain; exercises the polynomial path
certify::FlowProblem poiseuille_like(double L, double Re);

// Registry: "couette" (Ro = 0), "rotating-couette", "poiseuille-like"
certify::FlowProblem named_flow(const std::string& name, double Ro, double L,
                                double Re);
std::vector<std::string> flow_names();

// C / sqrt(Ro (1 - Ro)); +infinity at Ro in {0, 1}
double analytic_recrit(const RotatingCouetteParams& p);

// minimal in-plane / streamwise weight ratio for Couette stability
double couette_min_k_ratio(double Re, double C);

// supremum of Re admitting an ISS certificate for Couette: C / psi
// (0 when psi >= C)
double analytic_iss_limit(double psi, double C);

// Dense-grid + Schur-complement oracle for the minimal gain sum of Couette
// (Ro = 0); independent of the LMI stack.
struct CouetteGainOracle {
  double objective = 0.0;
  double k1 = 0.0, k2 = 0.0;
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;  // squared per-channel gains
};
CouetteGainOracle couette_gain_oracle(double Re, double C);

}  // namespace hydrocert::flows
