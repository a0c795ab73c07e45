#include "hydrocert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hydrocert::sdp {

using linalg::SymMat;

Block& SdpProblem::add_block(int dim) {
  blocks.push_back(Block{SymMat(dim), std::vector<SymMat>(nvars, SymMat(dim))});
  return blocks.back();
}

void SdpProblem::add_equality(std::vector<double> row, double rhs) {
  if (static_cast<int>(row.size()) != nvars)
    throw std::invalid_argument("add_equality: wrong row size");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void SdpProblem::validate() const {
  if (nvars < 0) throw std::invalid_argument("SdpProblem: nvars < 0");
  if (!objective.empty() && static_cast<int>(objective.size()) != nvars)
    throw std::invalid_argument("SdpProblem: objective size mismatch");
  if (!(var_bound > 0.0) || !std::isfinite(var_bound))
    throw std::invalid_argument("SdpProblem: var_bound must be finite and > 0");
  for (const Block& b : blocks) {
    if (static_cast<int>(b.f.size()) != nvars)
      throw std::invalid_argument("SdpProblem: block variable count mismatch");
    if (!b.f0.finite())
      throw std::invalid_argument("SdpProblem: non-finite block data");
    for (const SymMat& m : b.f) {
      if (m.dim() != b.f0.dim())
        throw std::invalid_argument("SdpProblem: block dimension mismatch");
      if (!m.finite())
        throw std::invalid_argument("SdpProblem: non-finite block data");
    }
  }
  for (const auto& r : eq_rows)
    if (static_cast<int>(r.size()) != nvars)
      throw std::invalid_argument("SdpProblem: equality row size mismatch");
  if (eq_rows.size() != eq_rhs.size())
    throw std::invalid_argument("SdpProblem: equality rhs size mismatch");
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Feasible: return "feasible";
    case SdpStatus::Marginal: return "marginal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::NumericalFailure: return "numerical_failure";
    case SdpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

struct RBlock {
  SymMat f0;
  std::vector<SymMat> f;  // per reduced variable
  bool shiftable = true;  // participates in the phase-I margin shift
  int dim() const { return f0.dim(); }
};

struct Reduced {
  int nfree = 0;
  std::vector<RBlock> blocks;
  std::vector<double> c;  // reduced objective, possibly empty
  double c_offset = 0.0;
  std::vector<double> z_particular;
  std::vector<std::vector<double>> null_basis;
  bool consistent = true;
};

SymMat combine(const RBlock& b, const std::vector<double>& w, int nvars_used) {
  SymMat a = b.f0;
  for (int j = 0; j < nvars_used; ++j)
    if (w[j] != 0.0) a.add_scaled(b.f[j], w[j]);
  return a;
}

Reduced reduce(const SdpProblem& p) {
  Reduced r;
  const int n = p.nvars;
  if (p.eq_rows.empty()) {
    r.nfree = n;
    r.z_particular.assign(n, 0.0);
    r.null_basis.resize(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) r.null_basis[i][i] = 1.0;
  } else {
    std::vector<double> e;
    for (const auto& row : p.eq_rows) e.insert(e.end(), row.begin(), row.end());
    if (!linalg::nullspace_and_particular(static_cast<int>(p.eq_rows.size()), n,
                                          e, p.eq_rhs, r.null_basis,
                                          r.z_particular)) {
      r.consistent = false;
      return r;
    }
    r.nfree = static_cast<int>(r.null_basis.size());
  }
  // problem blocks
  for (const Block& b : p.blocks) {
    RBlock rb{SymMat(b.dim()), {}, true};
    rb.f0 = b.f0;
    for (int i = 0; i < n; ++i)
      if (r.z_particular[i] != 0.0) rb.f0.add_scaled(b.f[i], r.z_particular[i]);
    rb.f.reserve(r.nfree);
    for (int j = 0; j < r.nfree; ++j) {
      SymMat fj(b.dim());
      for (int i = 0; i < n; ++i)
        if (r.null_basis[j][i] != 0.0)
          fj.add_scaled(b.f[i], r.null_basis[j][i]);
      rb.f.push_back(std::move(fj));
    }
    r.blocks.push_back(std::move(rb));
  }
  // box rows |z_i| <= var_bound as non-shiftable 1x1 blocks
  for (int i = 0; i < n; ++i) {
    for (int sign = -1; sign <= 1; sign += 2) {
      RBlock rb{SymMat(1), {}, false};
      rb.f0.at(0, 0) = p.var_bound + sign * r.z_particular[i];
      for (int j = 0; j < r.nfree; ++j) {
        SymMat fj(1);
        fj.at(0, 0) = sign * r.null_basis[j][i];
        rb.f.push_back(fj);
      }
      r.blocks.push_back(std::move(rb));
    }
  }
  if (!p.objective.empty()) {
    r.c.resize(r.nfree, 0.0);
    for (int j = 0; j < r.nfree; ++j)
      for (int i = 0; i < n; ++i)
        r.c[j] += p.objective[i] * r.null_basis[j][i];
    for (int i = 0; i < n; ++i)
      r.c_offset += p.objective[i] * r.z_particular[i];
  }
  return r;
}

double min_block_margin(const std::vector<RBlock>& blocks,
                        const std::vector<double>& w, int nv,
                        bool shiftable_only) {
  double m = std::numeric_limits<double>::infinity();
  for (const RBlock& b : blocks) {
    if (shiftable_only && !b.shiftable) continue;
    m = std::min(m, linalg::min_eigenvalue(combine(b, w, nv)));
  }
  return m;
}

struct BarrierState {
  std::vector<double> w;
  double eta = 1.0;
  int iterations = 0;
  bool ok = true;
};

// minimize eta * c.w - sum_b log det A_b(w), following the central path while
// increasing eta until total_dim / eta <= gap_target(w).
template <typename GapTarget, typename EarlyExit>
BarrierState barrier_path(const std::vector<RBlock>& blocks,
                          const std::vector<double>& c,
                          std::vector<double> w0, int max_iters,
                          GapTarget gap_target, EarlyExit early_exit) {
  const int nv = static_cast<int>(w0.size());
  BarrierState st;
  st.w = std::move(w0);
  double total_dim = 0.0;
  for (const RBlock& b : blocks) total_dim += b.dim();

  auto barrier_value = [&](const std::vector<double>& w, double eta,
                           bool& feasible) -> double {
    double val = 0.0;
    for (int j = 0; j < nv; ++j) val += eta * c[j] * w[j];
    for (const RBlock& b : blocks) {
      std::vector<double> lo;
      SymMat a = combine(b, w, nv);
      if (!linalg::cholesky(a, lo)) {
        feasible = false;
        return 0.0;
      }
      for (int i = 0; i < b.dim(); ++i) val -= 2.0 * std::log(lo[i * b.dim() + i]);
    }
    feasible = true;
    return val;
  };

  st.eta = 1.0;
  while (true) {
    // loose centering suffices while following the path; only the final eta
    // needs a tight center
    const bool last = total_dim / st.eta <= gap_target(st.w);
    const double dec_tol = last ? 1e-9 : 1e-4;
    for (int inner = 0; inner < 60; ++inner) {
      if (st.iterations >= max_iters) { st.ok = false; return st; }
      ++st.iterations;
      // gradient and Hessian
      std::vector<double> grad(nv, 0.0);
      for (int j = 0; j < nv; ++j) grad[j] = st.eta * c[j];
      SymMat hess(std::max(nv, 1));
      bool singular = false;
      for (const RBlock& b : blocks) {
        const int n = b.dim();
        SymMat a = combine(b, st.w, nv);
        SymMat ainv(n);
        if (!linalg::inverse_spd(a, ainv)) { singular = true; break; }
        // W_j = Ainv * F_j, dense
        std::vector<std::vector<double>> wj(nv);
        for (int j = 0; j < nv; ++j) {
          wj[j].assign(static_cast<size_t>(n) * n, 0.0);
          double tr = 0.0;
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              double v = 0.0;
              for (int k = 0; k < n; ++k) v += ainv.at(r, k) * b.f[j].at(k, s);
              wj[j][r * n + s] = v;
              if (r == s) tr += v;
            }
          grad[j] -= tr;
        }
        for (int j = 0; j < nv; ++j)
          for (int k = j; k < nv; ++k) {
            double h = 0.0;
            for (int r = 0; r < n; ++r)
              for (int s = 0; s < n; ++s) h += wj[j][r * n + s] * wj[k][s * n + r];
            hess.at(j, k) += h;
          }
      }
      if (singular) { st.ok = false; return st; }
      if (nv == 0) break;
      std::vector<double> neg(grad);
      for (double& v : neg) v = -v;
      std::vector<double> step;
      try {
        linalg::solve_sym_ridge(hess, neg, step);
      } catch (const std::runtime_error&) {
        st.ok = false;
        return st;
      }
      double dec2 = 0.0;
      for (int j = 0; j < nv; ++j) dec2 -= grad[j] * step[j];
      if (dec2 <= dec_tol) break;
      // backtracking line search on the barrier merit
      bool feas = false;
      double f0 = barrier_value(st.w, st.eta, feas);
      double gdotd = -dec2;
      double alpha = 1.0;
      std::vector<double> trial(nv);
      bool accepted = false;
      for (int bt = 0; bt < 70; ++bt) {
        for (int j = 0; j < nv; ++j) trial[j] = st.w[j] + alpha * step[j];
        bool tf = false;
        double fv = barrier_value(trial, st.eta, tf);
        if (tf && fv <= f0 + 1e-4 * alpha * gdotd) {
          st.w = trial;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;  // cannot improve at this eta; move on
      if (early_exit(st.w)) return st;
    }
    if (last) return st;
    if (st.eta > 1e18) return st;
    st.eta *= 10.0;
  }
}

std::vector<double> expand_solution(const Reduced& r,
                                    const std::vector<double>& y) {
  const int n = static_cast<int>(r.z_particular.size());
  std::vector<double> z = r.z_particular;
  for (int j = 0; j < r.nfree; ++j)
    for (int i = 0; i < n; ++i) z[i] += r.null_basis[j][i] * y[j];
  return z;
}

std::vector<double> block_margins_at(const SdpProblem& p,
                                     const std::vector<double>& z) {
  std::vector<double> m;
  for (const Block& b : p.blocks) {
    SymMat a = b.f0;
    for (int i = 0; i < p.nvars; ++i)
      if (z[i] != 0.0) a.add_scaled(b.f[i], z[i]);
    m.push_back(linalg::min_eigenvalue(a));
  }
  return m;
}

struct PhaseOneResult {
  double t_star = 0.0;
  std::vector<double> y;
  int iterations = 0;
  bool ok = true;
};

// maximize t s.t. shiftable blocks >= t I within the box; early_exit_margin,
// when positive, stops as soon as the iterate has at least that much margin.
PhaseOneResult phase_one(const Reduced& r, double margin_gap, int max_iters,
                         double early_exit_margin) {
  PhaseOneResult res;
  const int nf = r.nfree;
  // augmented variable vector (y, t)
  std::vector<RBlock> aug;
  double scale = 1.0;
  for (const RBlock& b : r.blocks) {
    RBlock nb = b;
    SymMat ft(b.dim());
    if (b.shiftable) {
      ft.shift_diag(-1.0);
      scale = std::max(scale, b.f0.max_abs());
    }
    nb.f.push_back(std::move(ft));
    aug.push_back(std::move(nb));
  }
  // cap t itself: without an explicit bound the barrier is nearly flat in the
  // t direction when the margin is limited only by the variable box, and
  // Newton creeps. A saturated margin of 10x the data scale is still a
  // decisive verdict.
  const double t_cap = 10.0 * scale;
  {
    RBlock rb{SymMat(1), std::vector<SymMat>(static_cast<size_t>(nf), SymMat(1)),
              false};
    rb.f0.at(0, 0) = t_cap;
    SymMat ft(1);
    ft.at(0, 0) = -1.0;
    rb.f.push_back(std::move(ft));
    aug.push_back(std::move(rb));
  }
  std::vector<double> w0(nf + 1, 0.0);
  // strict interior start: t below the margin at y = 0; the box must hold at
  // the particular solution
  double m0 = min_block_margin(r.blocks, w0, nf, true);
  double box0 = std::numeric_limits<double>::infinity();
  for (const RBlock& b : r.blocks)
    if (!b.shiftable)
      box0 = std::min(box0, linalg::min_eigenvalue(combine(b, w0, nf)));
  if (!(box0 > 0.0)) { res.ok = false; return res; }
  w0[nf] = m0 - 0.1 * std::max(1.0, std::abs(m0));
  std::vector<double> c(nf + 1, 0.0);
  c[nf] = -1.0;  // maximize t
  BarrierState st = barrier_path(
      aug, c, w0, max_iters,
      [&](const std::vector<double>& w) {
        // relative gap: the margin only needs to be resolved to its own scale
        return margin_gap * std::max(1.0, std::abs(w[nf]));
      },
      [&](const std::vector<double>& w) {
        return early_exit_margin > 0.0 && w[nf] >= early_exit_margin;
      });
  res.iterations = st.iterations;
  res.ok = st.ok;
  res.t_star = st.w[nf];
  res.y.assign(st.w.begin(), st.w.end() - 1);
  return res;
}

}  // namespace

MarginResult feasibility_margin(const SdpProblem& p, const SolveOptions& opts) {
  p.validate();
  MarginResult out;
  Reduced r = reduce(p);
  if (!r.consistent) {
    out.verdict = SdpStatus::Infeasible;
    out.t_star = -std::numeric_limits<double>::infinity();
    return out;
  }
  PhaseOneResult ph = phase_one(r, opts.margin_gap, opts.max_iters, 0.0);
  out.iterations = ph.iterations;
  if (!ph.ok) {
    out.verdict = (ph.iterations >= opts.max_iters) ? SdpStatus::IterationLimit
                                                    : SdpStatus::NumericalFailure;
  }
  out.t_star = ph.t_star;
  out.z = expand_solution(r, ph.y);
  out.block_margins = block_margins_at(p, out.z);
  if (ph.ok) {
    if (ph.t_star > opts.eps_feas)
      out.verdict = SdpStatus::Feasible;
    else if (ph.t_star < -opts.eps_feas)
      out.verdict = SdpStatus::Infeasible;
    else
      out.verdict = SdpStatus::Marginal;
  }
  return out;
}

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts) {
  p.validate();
  SdpSolution sol;
  if (p.objective.empty()) {
    MarginResult m = feasibility_margin(p, opts);
    sol.status = m.verdict;
    sol.z = m.z;
    sol.block_margins = m.block_margins;
    sol.iterations = m.iterations;
    return sol;
  }
  Reduced r = reduce(p);
  if (!r.consistent) {
    sol.status = SdpStatus::Infeasible;
    return sol;
  }
  // phase I: find an interior point (stop early once safely inside)
  double scale = 1.0;
  for (const RBlock& b : r.blocks)
    if (b.shiftable) scale = std::max(scale, b.f0.max_abs());
  PhaseOneResult ph = phase_one(r, opts.margin_gap, opts.max_iters,
                                1e-2 * scale);
  sol.iterations = ph.iterations;
  if (!ph.ok) {
    sol.status = (ph.iterations >= opts.max_iters) ? SdpStatus::IterationLimit
                                                   : SdpStatus::NumericalFailure;
    sol.z = expand_solution(r, ph.y);
    return sol;
  }
  if (ph.t_star <= opts.eps_feas) {
    sol.status = (ph.t_star < -opts.eps_feas) ? SdpStatus::Infeasible
                                              : SdpStatus::Marginal;
    sol.z = expand_solution(r, ph.y);
    sol.block_margins = block_margins_at(p, sol.z);
    return sol;
  }
  // phase II: barrier on the objective from the interior point
  double total_dim = 0.0;
  for (const RBlock& b : r.blocks) total_dim += b.dim();
  BarrierState st = barrier_path(
      r.blocks, r.c, ph.y, opts.max_iters,
      [&](const std::vector<double>& w) {
        double obj = r.c_offset;
        for (int j = 0; j < r.nfree; ++j) obj += r.c[j] * w[j];
        return opts.gap_tol * (1.0 + std::abs(obj));
      },
      [](const std::vector<double>&) { return false; });
  sol.iterations += st.iterations;
  sol.z = expand_solution(r, st.w);
  sol.objective = r.c_offset;
  for (int j = 0; j < r.nfree; ++j) sol.objective += r.c[j] * st.w[j];
  sol.duality_gap = total_dim / st.eta;
  sol.dual_bound = sol.objective - sol.duality_gap;
  sol.block_margins = block_margins_at(p, sol.z);
  if (!st.ok && st.iterations >= opts.max_iters) {
    sol.status = SdpStatus::IterationLimit;
  } else if (!st.ok) {
    sol.status = SdpStatus::NumericalFailure;
  } else {
    sol.status = SdpStatus::Optimal;
  }
  return sol;
}

void dump(const SdpProblem& p, std::ostream& os) {
  os.precision(17);
  os << "hydrocert-sdp 1\n";
  os << "nvars " << p.nvars << "\n";
  os << "var_bound " << p.var_bound << "\n";
  if (p.objective.empty()) {
    os << "objective none\n";
  } else {
    os << "objective";
    for (double v : p.objective) os << " " << v;
    os << "\n";
  }
  os << "equalities " << p.eq_rows.size() << "\n";
  for (size_t i = 0; i < p.eq_rows.size(); ++i) {
    for (double v : p.eq_rows[i]) os << v << " ";
    os << "= " << p.eq_rhs[i] << "\n";
  }
  os << "blocks " << p.blocks.size() << "\n";
  for (const Block& b : p.blocks) {
    os << "block " << b.dim() << "\n";
    auto write_mat = [&](const SymMat& m) {
      for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j)
          os << m.at(i, j) << (j + 1 == m.dim() ? "" : " ");
        os << "\n";
      }
    };
    write_mat(b.f0);
    for (const SymMat& m : b.f) write_mat(m);
  }
}

SdpProblem load(std::istream& is) {
  auto expect = [&](const std::string& tok) {
    std::string s;
    is >> s;
    if (s != tok) throw std::invalid_argument("sdp::load: expected " + tok);
  };
  expect("hydrocert-sdp");
  int version;
  is >> version;
  SdpProblem p;
  expect("nvars");
  is >> p.nvars;
  expect("var_bound");
  is >> p.var_bound;
  expect("objective");
  {
    std::string first;
    is >> first;
    if (first != "none") {
      p.objective.push_back(std::stod(first));
      for (int i = 1; i < p.nvars; ++i) {
        double v;
        is >> v;
        p.objective.push_back(v);
      }
    }
  }
  expect("equalities");
  size_t neq;
  is >> neq;
  for (size_t e = 0; e < neq; ++e) {
    std::vector<double> row(p.nvars);
    for (double& v : row) is >> v;
    expect("=");
    double rhs;
    is >> rhs;
    p.add_equality(std::move(row), rhs);
  }
  expect("blocks");
  size_t nb;
  is >> nb;
  for (size_t bi = 0; bi < nb; ++bi) {
    expect("block");
    int d;
    is >> d;
    Block& b = p.add_block(d);
    auto read_mat = [&](SymMat& m) {
      std::vector<double> dense(static_cast<size_t>(d) * d);
      for (double& v : dense) is >> v;
      m = SymMat::from_dense(d, dense);
    };
    read_mat(b.f0);
    for (int i = 0; i < p.nvars; ++i) read_mat(b.f[i]);
  }
  p.validate();
  return p;
}

}  // namespace hydrocert::sdp
