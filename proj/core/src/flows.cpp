#include "hydrocert/flows.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hydrocert::flows {

using certify::Direction;
using certify::FlowProblem;
using poly::Poly2;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_params(const RotatingCouetteParams& p) {
  if (!(p.Ro >= 0.0 && p.Ro <= 1.0))
    throw std::invalid_argument("rotating_couette: Ro must lie in [0, 1]");
  if (!(p.L > 0.0) || !std::isfinite(p.L))
    throw std::invalid_argument("rotating_couette: L must be positive");
}
}  // namespace

FlowProblem rotating_couette(const RotatingCouetteParams& p, double Re) {
  validate_params(p);
  FlowProblem f;
  f.m = 1;
  f.dir[0] = Direction{-1.0, 1.0, false};  // wall-normal x2
  f.dir[1] = Direction{0.0, p.L, true};    // spanwise x3, periodic
  f.profile = Poly2::var(0);               // U_1 = x2
  f.F = {{{0.0, p.Ro, 0.0}, {-p.Ro, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  f.Re = Re;
  f.validate();
  return f;
}

FlowProblem poiseuille_like(double L, double Re) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("poiseuille_like: L must be positive");
  FlowProblem f;
  f.m = 1;
  f.dir[0] = Direction{-1.0, 1.0, false};
  f.dir[1] = Direction{0.0, L, true};
  f.profile = Poly2::constant(1.0) - Poly2::var(0, 2);
  f.Re = Re;
  f.validate();
  return f;
}

FlowProblem named_flow(const std::string& name, double Ro, double L, double Re) {
  if (name == "couette") return rotating_couette({0.0, L}, Re);
  if (name == "rotating-couette") return rotating_couette({Ro, L}, Re);
  if (name == "poiseuille-like") return poiseuille_like(L, Re);
  throw std::invalid_argument("unknown flow: " + name);
}

std::vector<std::string> flow_names() {
  return {"couette", "rotating-couette", "poiseuille-like"};
}

double analytic_recrit(const RotatingCouetteParams& p) {
  validate_params(p);
  if (p.Ro == 0.0 || p.Ro == 1.0) return kInf;
  const double C = certify::poincare_constant(rotating_couette(p, 1.0));
  return C / std::sqrt(p.Ro * (1.0 - p.Ro));
}

double couette_min_k_ratio(double Re, double C) {
  if (!(Re > 0.0) || !(C > 0.0))
    throw std::invalid_argument("couette_min_k_ratio: Re and C must be > 0");
  const double r = Re / (2.0 * C);
  return r * r;
}

double analytic_iss_limit(double psi, double C) {
  if (!(psi > 0.0) || !(C > 0.0))
    throw std::invalid_argument("analytic_iss_limit: psi and C must be > 0");
  if (psi >= C) return 0.0;
  return C / psi;
}

namespace {

// minimal gain sum at fixed (k1, k2): Schur-complement reduction leaves
//   gamma = k1^2/(4 t1) + k2^2/(4 t2) + k2^2/(4 (B))
// with (A - t1)(B - t2) >= k1^2/4, A = k1 d - 1, B = k2 d - 1, d = C/Re.
double gain_sum_at(double k1, double k2, double d) {
  const double a = k1 * d - 1.0;
  const double b = k2 * d - 1.0;
  const double c = 0.25 * k1 * k1;
  if (!(a > 0.0) || !(b > 0.0) || !(a * b > c)) return kInf;
  const double g3 = 0.25 * k2 * k2 / b;
  // golden-section over t1 in (0, a - c/b), with t2 = b - c/(a - t1)
  auto f = [&](double t1) {
    const double t2 = b - c / (a - t1);
    return 0.25 * k1 * k1 / t1 + 0.25 * k2 * k2 / t2;
  };
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 1e-12 * a, hi = (a - c / b) * (1.0 - 1e-12);
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = f(x2);
    }
  }
  return f(0.5 * (lo + hi)) + g3;
}

}  // namespace

CouetteGainOracle couette_gain_oracle(double Re, double C) {
  if (!(Re > 0.0) || !(C > 0.0))
    throw std::invalid_argument("couette_gain_oracle: Re and C must be > 0");
  const double d = C / Re;
  // nested log-grid over (k1, k2), zooming on the best cell
  double lo1 = std::log((1.0 + 1e-4) / d), hi1 = std::log(1e4 / d);
  double lo2 = std::log((1.0 + 1e-4) / d), hi2 = std::log(1e10 / d);
  const int n = 48;
  double best1 = 0.0, best2 = 0.0, best = kInf;
  for (int level = 0; level < 6; ++level) {
    best = kInf;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double k1 = std::exp(lo1 + (hi1 - lo1) * i / n);
        const double k2 = std::exp(lo2 + (hi2 - lo2) * j / n);
        const double v = gain_sum_at(k1, k2, d);
        if (v < best) {
          best = v;
          best1 = k1;
          best2 = k2;
        }
      }
    const double w1 = 2.0 * (hi1 - lo1) / n, w2 = 2.0 * (hi2 - lo2) / n;
    lo1 = std::log(best1) - w1;
    hi1 = std::log(best1) + w1;
    lo2 = std::log(best2) - w2;
    hi2 = std::log(best2) + w2;
    lo1 = std::max(lo1, std::log((1.0 + 1e-9) / d));
    lo2 = std::max(lo2, std::log((1.0 + 1e-9) / d));
  }
  CouetteGainOracle out;
  out.objective = best;
  out.k1 = best1;
  out.k2 = best2;
  // recover the split for reporting
  const double a = best1 * d - 1.0, b = best2 * d - 1.0, c = 0.25 * best1 * best1;
  out.g3 = 0.25 * best2 * best2 / b;
  double t1_lo = 1e-12 * a, t1_hi = (a - c / b) * (1.0 - 1e-12);
  auto f = [&](double t1) {
    return 0.25 * best1 * best1 / t1 +
           0.25 * best2 * best2 / (b - c / (a - t1));
  };
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = t1_hi - golden * (t1_hi - t1_lo), x2 = t1_lo + golden * (t1_hi - t1_lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      t1_hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = t1_hi - golden * (t1_hi - t1_lo);
      f1 = f(x1);
    } else {
      t1_lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = t1_lo + golden * (t1_hi - t1_lo);
      f2 = f(x2);
    }
  }
  const double t1 = 0.5 * (t1_lo + t1_hi);
  out.g1 = 0.25 * best1 * best1 / t1;
  out.g2 = 0.25 * best2 * best2 / (b - c / (a - t1));
  return out;
}

}  // namespace hydrocert::flows
