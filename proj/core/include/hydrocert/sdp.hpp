// Self-contained interior-point solver for small block LMIs with a linear
// objective. Primal log-barrier with damped Newton steps; equalities are
// eliminated through the null space; a phase-I margin maximization supplies
// the interior starting point and the feasibility verdict.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hydrocert/linalg.hpp"

namespace hydrocert::sdp {

struct Block {
  linalg::SymMat f0;
  std::vector<linalg::SymMat> f;  // one per decision variable

  int dim() const { return f0.dim(); }
};

struct SdpProblem {
  int nvars = 0;
  std::vector<double> objective;  // empty: pure feasibility
  std::vector<Block> blocks;
  std::vector<std::vector<double>> eq_rows;  // each of size nvars
  std::vector<double> eq_rhs;
  double var_bound = 1e6;  // |z_i| <= var_bound

  Block& add_block(int dim);
  void add_equality(std::vector<double> row, double rhs);
  void validate() const;  // throws std::invalid_argument
};

enum class SdpStatus {
  Optimal,
  Feasible,
  Marginal,
  Infeasible,
  NumericalFailure,
  IterationLimit,
};

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<double> z;
  double objective = 0.0;
  std::vector<double> block_margins;  // min eigenvalue of each block slack
  double duality_gap = 0.0;
  double dual_bound = 0.0;
  int iterations = 0;
};

struct SolveOptions {
  double gap_tol = 1e-7;         // phase-II duality gap, relative to 1+|obj|
  double margin_gap = 1e-9;      // phase-I accuracy on t*
  int max_iters = 200;           // total Newton steps per phase
  double eps_feas = 1e-8;        // Feasible/Infeasible band around t* = 0
};

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

struct MarginResult {
  double t_star = 0.0;
  std::vector<double> z;
  SdpStatus verdict = SdpStatus::NumericalFailure;
  std::vector<double> block_margins;
  int iterations = 0;
};

MarginResult feasibility_margin(const SdpProblem& p,
                                const SolveOptions& opts = {});

// Text round-trip for external cross-checking.
void dump(const SdpProblem& p, std::ostream& os);
SdpProblem load(std::istream& is);

}  // namespace hydrocert::sdp
