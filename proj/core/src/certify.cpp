#include "hydrocert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hydrocert::certify {

using linalg::SymMat;
using poly::Poly2;
using polymatrix::SymPolyMatrix;
using sos::SemialgebraicBox;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightFloor = 1e-9;  // on the scaled weight variables
}  // namespace

std::array<int, 2> FlowProblem::in_plane() const {
  std::array<int, 2> out{};
  int n = 0;
  for (int a = 1; a <= 3; ++a)
    if (a != m) out[n++] = a;
  return out;
}

SemialgebraicBox FlowProblem::box() const {
  return SemialgebraicBox::rectangle(dir[0].lo, dir[0].hi, dir[1].lo, dir[1].hi,
                                     dir[0].periodic, dir[1].periodic);
}

void FlowProblem::validate() const {
  if (!(Re > 0.0) || !std::isfinite(Re))
    throw std::invalid_argument("FlowProblem: Re must be positive and finite");
  if (m < 1 || m > 3)
    throw std::invalid_argument("FlowProblem: invariant axis must be 1, 2, or 3");
  for (const Direction& d : dir)
    if (!(d.hi > d.lo) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
      throw std::invalid_argument("FlowProblem: degenerate domain direction");
  for (const auto& row : F)
    for (double v : row)
      if (!std::isfinite(v))
        throw std::invalid_argument("FlowProblem: non-finite forcing entry");
}

double poincare_constant(const FlowProblem& flow) {
  flow.validate();
  const double s0 = flow.dir[0].hi - flow.dir[0].lo;
  const double s1 = flow.dir[1].hi - flow.dir[1].lo;
  const double pi = 3.14159265358979323846;
  return pi * pi / (s0 * s0 + s1 * s1);
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Feasible: return "feasible";
    case CertStatus::Infeasible: return "infeasible";
    case CertStatus::Marginal: return "marginal";
    case CertStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

SymPolyMatrix build_stability_matrix(const FlowProblem& flow) {
  flow.validate();
  const double C = poincare_constant(flow);
  const auto ip = flow.in_plane();
  const int pm = flow.m - 1, pj = ip[0] - 1, pi = ip[1] - 1;
  const double diff = C / flow.Re;

  SymPolyMatrix M(3, 3);  // z = (k_m, k_j, k_i); rows (u_m, u_j, u_i)
  M.entry(1, 0, 0) = Poly2::constant(diff - flow.F[pm][pm]);
  M.entry(2, 1, 1) = Poly2::constant(diff - flow.F[pj][pj]);
  M.entry(3, 2, 2) = Poly2::constant(diff - flow.F[pi][pi]);
  // (m, j): k_m coefficient from the profile shear along x_j
  M.entry(1, 0, 1) =
      (flow.profile.partial(0) - Poly2::constant(flow.F[pm][pj])).scaled(0.5);
  M.entry(2, 0, 1) = Poly2::constant(-0.5 * flow.F[pj][pm]);
  // (m, i)
  M.entry(1, 0, 2) =
      (flow.profile.partial(1) - Poly2::constant(flow.F[pm][pi])).scaled(0.5);
  M.entry(3, 0, 2) = Poly2::constant(-0.5 * flow.F[pi][pm]);
  // (j, i)
  M.entry(2, 1, 2) = Poly2::constant(-0.5 * flow.F[pj][pi]);
  M.entry(3, 1, 2) = Poly2::constant(-0.5 * flow.F[pi][pj]);
  return M;
}

namespace {

// place the stability block into the top-left of a 6x6 matrix whose velocity
// weight variables stay at indices 0..2
void embed_weight_block(const SymPolyMatrix& m3, SymPolyMatrix& m6) {
  for (int c = 0; c <= 3; ++c)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m6.entry(c, i, j) = m3.entry(c, i, j);
}

}  // namespace

SymPolyMatrix build_gain_matrix(const FlowProblem& flow) {
  SymPolyMatrix m3 = build_stability_matrix(flow);
  SymPolyMatrix n(6, 6);  // z = (k_m, k_j, k_i, g_m, g_j, g_i), g = eta^2
  embed_weight_block(m3, n);
  for (int l = 0; l < 3; ++l) {
    n.entry(0, l, l) = n.entry(0, l, l) - Poly2::constant(1.0);
    n.entry(1 + l, l, 3 + l) = Poly2::constant(-0.5);
    n.entry(4 + l, 3 + l, 3 + l) = Poly2::constant(1.0);
  }
  return n;
}

SymPolyMatrix build_iss_matrix(const FlowProblem& flow,
                               const std::array<double, 3>& psi) {
  for (double p : psi)
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("build_iss_matrix: psi must be positive");
  SymPolyMatrix m3 = build_stability_matrix(flow);
  SymPolyMatrix p6(6, 6);  // z = (k_m, k_j, k_i, sigma_m, sigma_j, sigma_i)
  embed_weight_block(m3, p6);
  for (int l = 0; l < 3; ++l) {
    p6.entry(1 + l, l, l) = p6.entry(1 + l, l, l) - Poly2::constant(psi[l]);
    p6.entry(1 + l, l, 3 + l) = Poly2::constant(-0.5);
    p6.entry(4 + l, 3 + l, 3 + l) = Poly2::constant(1.0);
  }
  return p6;
}

namespace {

double grid_max_abs(const Poly2& p, const SemialgebraicBox& box, int n = 17) {
  double m = 0.0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      double x0 = box.lo[0] + (box.hi[0] - box.lo[0]) * a / n;
      double x1 = box.lo[1] + (box.hi[1] - box.lo[1]) * b / n;
      m = std::max(m, std::abs(p.eval(x0, x1)));
    }
  return m;
}

double grid_min_eig(const SymPolyMatrix& m0, const SemialgebraicBox& box,
                    int n = 17) {
  double lo = kInf;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      double x0 = box.lo[0] + (box.hi[0] - box.lo[0]) * a / n;
      double x1 = box.lo[1] + (box.hi[1] - box.lo[1]) * b / n;
      if (!box.contains(x0, x1)) continue;
      lo = std::min(lo, linalg::min_eigenvalue(m0.eval(x0, x1)));
    }
  return lo;
}

// In-plane weight pre-scale. The streamwise/in-plane 2x2 blocks are PSD
// roughly when k_m d_m k_I d_I >= (w_m k_m + w_I k_I)^2 / 4 with w_m, w_I the
// couplings carried by each weight; mapping k_I = s_I kappa_I with
//   s_I = (d_m d_I + w_m^2) / (d_m d_I + w_I^2)
// centers the feasible kappa ratio near 1 in both coupling regimes.
double inplane_prescale(const SymPolyMatrix& m3, const SemialgebraicBox& box) {
  const double dm = m3.entry(1, 0, 0).constant_term();
  const double dI = std::min(m3.entry(2, 1, 1).constant_term(),
                             m3.entry(3, 2, 2).constant_term());
  if (!(dm > 0.0) || !(dI > 0.0)) return 1.0;
  const double wm = std::max(grid_max_abs(m3.entry(1, 0, 1), box),
                             grid_max_abs(m3.entry(1, 0, 2), box));
  const double wI = std::max(grid_max_abs(m3.entry(2, 0, 1), box),
                             grid_max_abs(m3.entry(3, 0, 2), box));
  return (dm * dI + wm * wm) / (dm * dI + wI * wI);
}

struct LinearConstraint {
  std::vector<double> coeffs;  // over the model variables (scaled space)
  double rhs = 0.0;
};

struct AssembledRun {
  sdp::SdpStatus verdict = sdp::SdpStatus::NumericalFailure;
  double t_star = 0.0;
  double objective = 0.0;
  std::vector<double> z_scaled;  // model variables of the scaled problem
  bool audited = true;
  int relax_degree = 0;
};

// Scale the model variables, equilibrate rows by diagonal coefficient
// magnitude, compile on the box, append floors/equalities/objective, solve.
AssembledRun run_scaled(const SymPolyMatrix& m,
                        const SemialgebraicBox& box,
                        const std::vector<double>& scales,
                        const std::vector<LinearConstraint>& equalities,
                        const std::vector<std::pair<int, double>>& floors,
                        const std::vector<double>& objective,
                        int relax_degree) {
  const int nz = m.nvars();
  SymPolyMatrix ms = m;
  for (int v = 0; v < nz; ++v) ms.scale_variable(v, scales[v]);
  std::vector<double> d(m.dim());
  for (int r = 0; r < m.dim(); ++r) {
    double s = 0.0;
    for (int c = 0; c <= nz; ++c)
      s = std::max(s, ms.entry(c, r, r).max_abs_coeff());
    d[r] = s > 0.0 ? 1.0 / std::sqrt(s) : 1.0;
  }
  ms.scale_congruence(d);

  AssembledRun out;
  out.relax_degree = relax_degree;
  auto [prob, dec] = sos::compile(ms, box, relax_degree);
  for (const auto& [v, floor] : floors) {
    sdp::Block& b = prob.add_block(1);
    b.f0.at(0, 0) = -floor;
    b.f[v].at(0, 0) = 1.0;
  }
  for (const LinearConstraint& eq : equalities) {
    std::vector<double> row(prob.nvars, 0.0);
    for (int v = 0; v < nz; ++v) row[v] = eq.coeffs[v];
    prob.add_equality(std::move(row), eq.rhs);
  }
  if (objective.empty()) {
    sdp::MarginResult r = sdp::feasibility_margin(prob);
    out.verdict = r.verdict;
    out.t_star = r.t_star;
    out.z_scaled = dec.model_z(r.z);
    if (r.verdict == sdp::SdpStatus::Feasible && ms.depends_on_x()) {
      sos::MatrixSosCertificate cert = dec.certificate(r.z);
      sos::VerifyReport rep = sos::verify(cert, ms.at(out.z_scaled));
      double sampled = sos::sample_check(ms.at(out.z_scaled), box, 1000);
      out.audited = rep.max_residual_coeff <=
                        1e-6 * (1.0 + ms.max_abs_coeff()) &&
                    sampled >= -1e-6;
    }
  } else {
    prob.objective.assign(prob.nvars, 0.0);
    double cmax = 0.0;
    for (int v = 0; v < nz; ++v) cmax = std::max(cmax, std::abs(objective[v]));
    for (int v = 0; v < nz; ++v)
      prob.objective[v] = cmax > 0.0 ? objective[v] / cmax : objective[v];
    sdp::SdpSolution s = sdp::solve(prob);
    out.verdict = s.status;
    out.objective = s.objective * (cmax > 0.0 ? cmax : 1.0);
    out.z_scaled = dec.model_z(s.z);
  }
  return out;
}

CertStatus to_cert_status(sdp::SdpStatus s) {
  switch (s) {
    case sdp::SdpStatus::Optimal:
    case sdp::SdpStatus::Feasible: return CertStatus::Feasible;
    case sdp::SdpStatus::Infeasible: return CertStatus::Infeasible;
    case sdp::SdpStatus::Marginal: return CertStatus::Marginal;
    default: return CertStatus::NumericalFailure;
  }
}

// stability-type feasibility on a 3x3 weight matrix (used for both M and the
// ISS-shifted M - Q); returns the scaled solution and the scales used
struct WeightFeasibility {
  CertStatus status = CertStatus::Infeasible;
  double margin = 0.0;
  double k_m = 0.0, k_I = 0.0;  // true (unnormalized-ray representative)
  double s_I = 1.0;
  int relax_degree = 0;
};

WeightFeasibility weight_feasibility(const SymPolyMatrix& m3,
                                     const SemialgebraicBox& box,
                                     const CertifyOptions& opts) {
  WeightFeasibility out;
  const double s_I = inplane_prescale(m3, box);
  out.s_I = s_I;
  std::vector<double> scales = {1.0, s_I, s_I};

  std::vector<LinearConstraint> eqs;
  eqs.push_back({{0.0, 1.0, -1.0}, 0.0});  // k_j = k_i
  eqs.push_back({{1.0, 1.0, 1.0}, 3.0});   // normalization on scaled weights
  if (opts.pin_ratio) {
    // k_I = ratio * k_m in true variables
    eqs.push_back({{-*opts.pin_ratio, s_I, 0.0}, 0.0});
  }
  std::vector<std::pair<int, double>> floors = {
      {0, kWeightFloor}, {1, kWeightFloor}, {2, kWeightFloor}};

  const bool constant = !m3.depends_on_x();
  int deg_lo = opts.relax_degree >= 0 ? opts.relax_degree
                                      : sos::default_relax_degree(m3);
  int deg_hi = opts.relax_degree >= 0 ? opts.relax_degree
                                      : std::max(deg_lo, opts.degree_cap);
  if (constant) deg_hi = deg_lo;

  AssembledRun run;
  for (int deg = deg_lo; deg <= deg_hi; ++deg) {
    run = run_scaled(m3, box, scales, eqs, floors, {}, deg);
    if (run.verdict == sdp::SdpStatus::Feasible) break;
  }
  out.status = to_cert_status(run.verdict);
  if (out.status == CertStatus::Feasible && !run.audited)
    out.status = CertStatus::NumericalFailure;
  out.margin = run.t_star;
  out.relax_degree = constant ? 0 : run.relax_degree;
  if (!run.z_scaled.empty()) {
    out.k_m = run.z_scaled[0];
    out.k_I = s_I * 0.5 * (run.z_scaled[1] + run.z_scaled[2]);
  }
  return out;
}

// sigma (or gain) scale estimate: row sums of (K/2) A(x)^{-1} (K/2) over a
// sample grid, where A is the top-left weight block at candidate weights
bool schur_scale_estimate(const SymPolyMatrix& top_left_at_k,
                          const std::array<double, 3>& k,
                          const SemialgebraicBox& box,
                          std::array<double, 3>& out) {
  out = {0.0, 0.0, 0.0};
  const int n = 9;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      double x0 = box.lo[0] + (box.hi[0] - box.lo[0]) * a / n;
      double x1 = box.lo[1] + (box.hi[1] - box.lo[1]) * b / n;
      SymMat m = top_left_at_k.eval(x0, x1);
      SymMat inv(3);
      if (!linalg::inverse_spd(m, inv)) return false;
      for (int r = 0; r < 3; ++r) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c)
          s += std::abs(0.25 * k[r] * k[c] * inv.at(r, c));
        out[r] = std::max(out[r], s);
      }
    }
  return true;
}

bool is_feasible(const CertStatus s) { return s == CertStatus::Feasible; }

double bisect_boundary(const std::function<bool(double)>& feasible,
                       double re_lo, double re_hi, double rel_tol,
                       const char* what) {
  if (!(re_lo > 0.0) || !(re_hi > re_lo))
    throw std::invalid_argument(std::string(what) + ": need 0 < re_lo < re_hi");
  if (!feasible(re_lo))
    throw std::invalid_argument(std::string(what) +
                                ": infeasible at the lower Reynolds endpoint");
  if (feasible(re_hi)) return kInf;
  // monotonicity probe, log-spaced
  auto grid_point = [&](int idx, int n) {
    return re_lo * std::pow(re_hi / re_lo, static_cast<double>(idx) / n);
  };
  double lo = re_lo, hi = re_hi;
  {
    const int n = 7;
    std::array<bool, 8> feas{};
    for (int i = 0; i <= n; ++i) feas[i] = i == 0 || (i == n ? false : feasible(grid_point(i, n)));
    bool monotone = true;
    for (int i = 1; i <= n; ++i)
      if (feas[i] && !feas[i - 1]) monotone = false;
    if (monotone) {
      for (int i = 1; i <= n; ++i)
        if (!feas[i]) {
          lo = grid_point(i - 1, n);
          hi = grid_point(i, n);
          break;
        }
    } else {
      // fine scan: first transition
      const int nn = 63;
      double prev = re_lo;
      for (int i = 1; i <= nn; ++i) {
        double re = grid_point(i, nn);
        if (!feasible(re)) {
          lo = prev;
          hi = re;
          break;
        }
        prev = re;
      }
    }
  }
  while (hi - lo > rel_tol * lo) {
    double mid = std::sqrt(lo * hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

StabilityCertificate check_stability(const FlowProblem& flow,
                                     const CertifyOptions& opts) {
  flow.validate();
  SymPolyMatrix m3 = build_stability_matrix(flow);
  WeightFeasibility w = weight_feasibility(m3, flow.box(), opts);
  StabilityCertificate cert;
  cert.status = w.status;
  cert.margin = w.margin;
  cert.relax_degree = w.relax_degree;
  // report on the spec ray: k_m + 2 k_I = 3
  double total = w.k_m + 2.0 * w.k_I;
  if (total > 0.0) {
    cert.k_m = 3.0 * w.k_m / total;
    cert.k_I = 3.0 * w.k_I / total;
  }
  return cert;
}

GainCertificate minimize_gains(const FlowProblem& flow,
                               const CertifyOptions& opts) {
  flow.validate();
  GainCertificate cert;
  SymPolyMatrix n6 = build_gain_matrix(flow);
  const SemialgebraicBox box = flow.box();
  SymPolyMatrix m3 = build_stability_matrix(flow);

  // candidate weights with a strict margin come from the stability solve
  // itself (an interior ray representative); magnitude scaling then makes
  // M(k0) - I positive definite since M is linear in the weights
  WeightFeasibility w = weight_feasibility(m3, box, opts);
  if (w.status != CertStatus::Feasible) {
    cert.status = w.status == CertStatus::Marginal ? CertStatus::Infeasible
                                                   : w.status;
    return cert;
  }
  std::array<double, 3> s_k = {std::max(w.k_m, kWeightFloor),
                               std::max(w.k_I, kWeightFloor),
                               std::max(w.k_I, kWeightFloor)};
  SymPolyMatrix shifted = m3;
  for (int l = 0; l < 3; ++l)
    shifted.entry(0, l, l) = shifted.entry(0, l, l) - Poly2::constant(1.0);
  std::array<double, 3> g_scale{};
  bool found = false;
  for (double mult = 2.0; mult <= 1e12 && !found; mult *= 4.0) {
    std::array<double, 3> k0 = {mult * s_k[0], mult * s_k[1], mult * s_k[2]};
    SymPolyMatrix at = shifted.at({k0[0], k0[1], k0[2]});
    if (schur_scale_estimate(at, k0, box, g_scale)) {
      found = true;
      for (int l = 0; l < 3; ++l) s_k[l] *= mult;
    }
  }
  if (!found) return cert;  // no strict stability margin: gains unbounded

  std::vector<double> scales(6);
  for (int l = 0; l < 3; ++l) {
    scales[l] = s_k[l];
    scales[3 + l] = std::max(1.0, 2.0 * g_scale[l]);
  }
  std::vector<LinearConstraint> eqs;
  eqs.push_back({{0.0, 1.0, -1.0, 0.0, 0.0, 0.0}, 0.0});  // k_j = k_i
  std::vector<std::pair<int, double>> floors = {{0, kWeightFloor},
                                                {1, kWeightFloor},
                                                {2, kWeightFloor},
                                                {3, 0.0},
                                                {4, 0.0},
                                                {5, 0.0}};
  const int deg = opts.relax_degree >= 0 ? opts.relax_degree
                                         : sos::default_relax_degree(n6);

  AssembledRun run;
  for (int round = 0; round < 3; ++round) {
    std::vector<double> objective(6, 0.0);
    for (int l = 0; l < 3; ++l) objective[3 + l] = scales[3 + l];
    AssembledRun attempt = run_scaled(n6, box, scales, eqs, floors, objective, deg);
    if (attempt.verdict != sdp::SdpStatus::Optimal) {
      if (round == 0) run = attempt;
      break;
    }
    run = attempt;
    // re-center the scales on the solution for the next round
    bool changed = false;
    for (int v = 0; v < 6; ++v) {
      double mag = std::abs(run.z_scaled[v]);
      if (mag > 10.0 || (mag < 0.1 && mag > 0.0)) {
        scales[v] *= mag;
        changed = true;
      }
    }
    if (!changed) break;
  }
  cert.status = to_cert_status(run.verdict);
  if (cert.status != CertStatus::Feasible) return cert;
  cert.k_m = scales[0] * run.z_scaled[0];
  cert.k_j = scales[1] * run.z_scaled[1];
  cert.k_i = scales[2] * run.z_scaled[2];
  for (int l = 0; l < 3; ++l)
    cert.eta_sq[l] = scales[3 + l] * run.z_scaled[3 + l];
  cert.objective = cert.eta_sq[0] + cert.eta_sq[1] + cert.eta_sq[2];
  // audit: the gain matrix must be PSD on the domain at the decoded point
  SymPolyMatrix at = n6.at({cert.k_m, cert.k_j, cert.k_i, cert.eta_sq[0],
                            cert.eta_sq[1], cert.eta_sq[2]});
  if (grid_min_eig(at, box) < -1e-6 * (1.0 + at.max_abs_coeff()))
    cert.status = CertStatus::NumericalFailure;
  return cert;
}

IssCertificate check_iss(const FlowProblem& flow,
                         const std::array<double, 3>& psi,
                         const CertifyOptions& opts) {
  flow.validate();
  IssCertificate cert;
  cert.psi = psi;
  SymPolyMatrix p6 = build_iss_matrix(flow, psi);  // validates psi
  const SemialgebraicBox box = flow.box();

  // stage 1: feasibility of the decay-shifted weight block M - Q fixes the
  // weight scales and a candidate point
  SymPolyMatrix m3 = build_stability_matrix(flow);
  SymPolyMatrix mq = m3;
  for (int l = 0; l < 3; ++l)
    mq.entry(1 + l, l, l) = mq.entry(1 + l, l, l) - Poly2::constant(psi[l]);
  WeightFeasibility w = weight_feasibility(mq, box, opts);
  if (w.status != CertStatus::Feasible) {
    cert.status = w.status;
    return cert;
  }

  // stage 2: the full supply-rate matrix with free sigma
  std::array<double, 3> k0 = {w.k_m, w.k_I, w.k_I};
  std::array<double, 3> sig_scale{};
  if (!schur_scale_estimate(mq.at({k0[0], k0[1], k0[2]}), k0, box, sig_scale)) {
    cert.status = CertStatus::NumericalFailure;
    return cert;
  }
  std::vector<double> scales = {1.0,
                                w.s_I,
                                w.s_I,
                                std::max(1.0, 2.0 * sig_scale[0]),
                                std::max(1.0, 2.0 * sig_scale[1]),
                                std::max(1.0, 2.0 * sig_scale[2])};
  std::vector<LinearConstraint> eqs;
  eqs.push_back({{0.0, 1.0, -1.0, 0.0, 0.0, 0.0}, 0.0});
  eqs.push_back({{1.0, 1.0, 1.0, 0.0, 0.0, 0.0}, 3.0});
  std::vector<std::pair<int, double>> floors = {{0, kWeightFloor},
                                                {1, kWeightFloor},
                                                {2, kWeightFloor},
                                                {3, 0.0},
                                                {4, 0.0},
                                                {5, 0.0}};
  const int deg = opts.relax_degree >= 0 ? opts.relax_degree
                                         : sos::default_relax_degree(p6);
  AssembledRun run = run_scaled(p6, box, scales, eqs, floors, {}, deg);
  cert.status = to_cert_status(run.verdict);
  if (run.verdict == sdp::SdpStatus::Feasible && !run.audited)
    cert.status = CertStatus::NumericalFailure;
  cert.margin = run.t_star;
  if (cert.status != CertStatus::Feasible) return cert;
  double km = scales[0] * run.z_scaled[0];
  double kI = 0.5 * (scales[1] * run.z_scaled[1] + scales[2] * run.z_scaled[2]);
  double total = km + 2.0 * kI;
  cert.k_m = 3.0 * km / total;
  cert.k_I = 3.0 * kI / total;
  for (int l = 0; l < 3; ++l) cert.sigma[l] = scales[3 + l] * run.z_scaled[3 + l];
  cert.beta1 = std::min(cert.k_m, cert.k_I);
  cert.beta2 = std::max(cert.k_m, cert.k_I);
  return cert;
}

double critical_reynolds(const FlowFamily& family, double re_lo, double re_hi,
                         double rel_tol) {
  return bisect_boundary(
      [&](double re) { return is_feasible(check_stability(family(re)).status); },
      re_lo, re_hi, rel_tol, "critical_reynolds");
}

double iss_reynolds(const FlowFamily& family, const std::array<double, 3>& psi,
                    double re_lo, double re_hi, double rel_tol) {
  return bisect_boundary(
      [&](double re) {
        return is_feasible(check_iss(family(re), psi).status);
      },
      re_lo, re_hi, rel_tol, "iss_reynolds");
}

}  // namespace hydrocert::certify
