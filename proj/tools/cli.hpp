// Command-line front end: configuration, sweep execution, CSV/JSON/SVG output.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hydrocert/certify.hpp"

namespace hydrocert::cli {

struct RunConfig {
  std::string analysis;  // stability | recrit | gains | iss | iss-recrit | sos-certify
  std::string flow = "couette";
  double ro = 0.0;
  double L = 3.141592653589793;
  double psi = 1e-4;
  std::vector<double> re_grid;  // sweep points for stability/gains/iss/sos-certify
  std::vector<double> ro_grid;  // sweep points for recrit/iss-recrit
  double re_lo = 0.05;          // bisection bracket
  double re_hi = 100.0;
  double rel_tol = 1e-4;
  int relax_degree = -1;
  int degree_cap = 4;
  int workers = 0;  // 0 = hardware concurrency; HYDROCERT_WORKERS overrides
  std::string out_csv;
  std::string out_json;
  std::string plot;  // SVG path; empty disables
  bool log_x = false;
  bool log_y = false;

  nlohmann::json to_json() const;
  // Accepts either a bare config object or a run summary (uses its "config").
  static RunConfig from_json(const nlohmann::json& j);
  void validate() const;
};

// "lo:hi:step" (linear, endpoint included when it lands on the grid),
// "lo:hi:log:n" (n log-spaced points), or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

struct ResultRow {
  double param = 0.0;
  std::string status;
  double margin = 0.0;
  double k_m = 0.0, k_I = 0.0;
  std::array<double, 3> eta_sq = {0.0, 0.0, 0.0};  // sigma for iss rows
  double objective = 0.0;
  double psi = 0.0;
  std::string notes;
};

std::string format_csv(const std::vector<ResultRow>& rows);
nlohmann::json summary_json(const RunConfig& cfg,
                            const std::vector<ResultRow>& rows);
std::string render_svg(const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::string& x_label, const std::string& y_label,
                       bool log_x, bool log_y);

// Executes the analysis and fills rows; does not touch the filesystem.
// Returns 0, 1 (single-point query infeasible), or 2 (numerical failure).
int execute(const RunConfig& cfg, std::vector<ResultRow>& rows);

// Full pipeline: validate, execute, write artifacts. The CSV goes to `out`
// when no out_csv path is configured. Returns the exit code (3 on invalid
// input or I/O failure).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace hydrocert::cli
