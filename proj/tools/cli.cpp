#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "hydrocert/flows.hpp"

namespace hydrocert::cli {

using certify::CertStatus;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kInf = std::numeric_limits<double>::infinity();

const std::set<std::string>& analyses() {
  static const std::set<std::string> a = {"stability", "recrit",     "gains",
                                         "iss",       "iss-recrit", "sos-certify"};
  return a;
}

bool sweeps_re(const std::string& analysis) {
  return analysis != "recrit" && analysis != "iss-recrit";
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double parse_num(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

int resolve_workers(const RunConfig& cfg) {
  if (const char* env = std::getenv("HYDROCERT_WORKERS")) {
    int w = static_cast<int>(parse_num(env));
    if (w < 1) throw std::invalid_argument("HYDROCERT_WORKERS must be >= 1");
    return w;
  }
  if (cfg.workers > 0) return cfg.workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Evaluates f(0..n-1) on `workers` threads; rethrows the first exception.
template <typename F>
void parallel_for(int n, int workers, F&& f) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto loop = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

certify::FlowProblem make_flow(const RunConfig& cfg, double ro, double re) {
  return flows::named_flow(cfg.flow, ro, cfg.L, re);
}

certify::CertifyOptions solver_options(const RunConfig& cfg) {
  certify::CertifyOptions opts;
  opts.relax_degree = cfg.relax_degree;
  opts.degree_cap = cfg.degree_cap;
  return opts;
}

ResultRow stability_row(const RunConfig& cfg, double re, bool force_sos) {
  certify::CertifyOptions opts = solver_options(cfg);
  if (force_sos && opts.relax_degree < 1) opts.relax_degree = -1;
  certify::StabilityCertificate c = check_stability(make_flow(cfg, cfg.ro, re), opts);
  ResultRow row;
  row.param = re;
  row.status = to_string(c.status);
  row.margin = c.margin;
  row.k_m = c.k_m;
  row.k_I = c.k_I;
  row.notes = "relax_degree=" + std::to_string(c.relax_degree);
  return row;
}

ResultRow gains_row(const RunConfig& cfg, double re) {
  certify::GainCertificate c =
      minimize_gains(make_flow(cfg, cfg.ro, re), solver_options(cfg));
  ResultRow row;
  row.param = re;
  row.status = to_string(c.status);
  row.k_m = c.k_m;
  row.k_I = 0.5 * (c.k_j + c.k_i);
  row.eta_sq = c.eta_sq;
  row.objective = c.objective;
  return row;
}

ResultRow iss_row(const RunConfig& cfg, double re) {
  std::array<double, 3> psi = {cfg.psi, cfg.psi, cfg.psi};
  certify::IssCertificate c =
      check_iss(make_flow(cfg, cfg.ro, re), psi, solver_options(cfg));
  ResultRow row;
  row.param = re;
  row.status = to_string(c.status);
  row.margin = c.margin;
  row.k_m = c.k_m;
  row.k_I = c.k_I;
  row.eta_sq = c.sigma;  // sigma occupies the eta columns for iss rows
  row.psi = cfg.psi;
  row.notes = "beta1=" + fmt(c.beta1) + ";beta2=" + fmt(c.beta2);
  return row;
}

ResultRow recrit_row(const RunConfig& cfg, double ro, bool iss) {
  certify::FlowFamily family = [&cfg, ro](double re) {
    return make_flow(cfg, ro, re);
  };
  ResultRow row;
  row.param = ro;
  double rec;
  if (iss) {
    std::array<double, 3> psi = {cfg.psi, cfg.psi, cfg.psi};
    rec = iss_reynolds(family, psi, cfg.re_lo, cfg.re_hi, cfg.rel_tol);
    row.psi = cfg.psi;
  } else {
    rec = critical_reynolds(family, cfg.re_lo, cfg.re_hi, cfg.rel_tol);
  }
  row.status = std::isinf(rec) ? "unbounded" : "ok";
  row.objective = rec;
  return row;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty grid");
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.size() == 1) {
    std::vector<double> out;
    std::stringstream list(text);
    for (std::string tok; std::getline(list, tok, ',');)
      out.push_back(parse_num(tok));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
  }
  const double lo = parse_num(parts[0]);
  const double hi = parse_num(parts[1]);
  if (!(lo <= hi)) throw std::invalid_argument("grid requires lo <= hi");
  if (parts.size() == 3) {  // lo:hi:step
    const double step = parse_num(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    std::vector<double> out;
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi * (1.0 + 1e-12) + 1e-300) break;
      out.push_back(std::min(v, hi));
    }
    return out;
  }
  if (parts.size() == 4 && parts[2] == "log") {  // lo:hi:log:n
    const int n = static_cast<int>(parse_num(parts[3]));
    if (n < 2 || !(lo > 0.0))
      throw std::invalid_argument("log grid requires n >= 2 and lo > 0");
    std::vector<double> out(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
      out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return out;
  }
  throw std::invalid_argument("bad grid syntax: " + text);
}

json RunConfig::to_json() const {
  return json{{"analysis", analysis},
              {"flow", flow},
              {"ro", ro},
              {"L", L},
              {"psi", psi},
              {"re_grid", re_grid},
              {"ro_grid", ro_grid},
              {"re_lo", re_lo},
              {"re_hi", re_hi},
              {"rel_tol", rel_tol},
              {"relax_degree", relax_degree},
              {"degree_cap", degree_cap},
              {"workers", workers},
              {"out_csv", out_csv},
              {"out_json", out_json},
              {"plot", plot},
              {"log_x", log_x},
              {"log_y", log_y}};
}

RunConfig RunConfig::from_json(const json& j) {
  if (j.contains("config")) return from_json(j.at("config"));
  RunConfig cfg;
  cfg.analysis = j.value("analysis", cfg.analysis);
  cfg.flow = j.value("flow", cfg.flow);
  cfg.ro = j.value("ro", cfg.ro);
  cfg.L = j.value("L", cfg.L);
  cfg.psi = j.value("psi", cfg.psi);
  cfg.re_grid = j.value("re_grid", cfg.re_grid);
  cfg.ro_grid = j.value("ro_grid", cfg.ro_grid);
  cfg.re_lo = j.value("re_lo", cfg.re_lo);
  cfg.re_hi = j.value("re_hi", cfg.re_hi);
  cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
  cfg.relax_degree = j.value("relax_degree", cfg.relax_degree);
  cfg.degree_cap = j.value("degree_cap", cfg.degree_cap);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.out_csv = j.value("out_csv", cfg.out_csv);
  cfg.out_json = j.value("out_json", cfg.out_json);
  cfg.plot = j.value("plot", cfg.plot);
  cfg.log_x = j.value("log_x", cfg.log_x);
  cfg.log_y = j.value("log_y", cfg.log_y);
  return cfg;
}

void RunConfig::validate() const {
  if (!analyses().count(analysis))
    throw std::invalid_argument("unknown analysis: " + analysis);
  const std::vector<double>& grid = sweeps_re(analysis) ? re_grid : ro_grid;
  if (grid.empty())
    throw std::invalid_argument(analysis + " requires a nonempty " +
                                (sweeps_re(analysis) ? "Re" : "Ro") + " grid");
  for (double v : grid)
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("L must be positive");
  if (!(psi > 0.0) || !std::isfinite(psi))
    throw std::invalid_argument("psi must be positive");
  if (!(ro >= 0.0 && ro <= 1.0))
    throw std::invalid_argument("ro must lie in [0, 1]");
  if (!(re_lo > 0.0 && re_hi > re_lo))
    throw std::invalid_argument("need 0 < re_lo < re_hi");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("rel_tol must lie in (0, 1)");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "param,status,margin,k_m,k_I,eta1_sq,eta2_sq,eta3_sq,objective,psi,notes\n";
  for (const ResultRow& r : rows) {
    out += fmt(r.param) + ',' + r.status + ',' + fmt(r.margin) + ',' +
           fmt(r.k_m) + ',' + fmt(r.k_I) + ',' + fmt(r.eta_sq[0]) + ',' +
           fmt(r.eta_sq[1]) + ',' + fmt(r.eta_sq[2]) + ',' + fmt(r.objective) +
           ',' + fmt(r.psi) + ',' + r.notes + '\n';
  }
  return out;
}

json summary_json(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
  json results = json::array();
  for (const ResultRow& r : rows) {
    results.push_back(json{{"param", r.param},
                           {"status", r.status},
                           {"margin", r.margin},
                           {"k_m", r.k_m},
                           {"k_I", r.k_I},
                           {"eta1_sq", r.eta_sq[0]},
                           {"eta2_sq", r.eta_sq[1]},
                           {"eta3_sq", r.eta_sq[2]},
                           {"objective", fmt(r.objective)},
                           {"psi", r.psi},
                           {"notes", r.notes}});
  }
  return json{{"schema", 1},
              {"tool", "hydrocert"},
              {"version", kVersion},
              {"config", cfg.to_json()},
              {"results", results}};
}

std::string render_svg(const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::string& x_label, const std::string& y_label,
                       bool log_x, bool log_y) {
  const int w = 640, h = 420, ml = 70, mr = 20, mt = 20, mb = 50;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if ((log_x && xs[i] <= 0.0) || (log_y && ys[i] <= 0.0)) continue;
    pts.emplace_back(tx(xs[i]), ty(ys[i]));
  }
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  if (!pts.empty()) {
    xlo = xhi = pts[0].first;
    ylo = yhi = pts[0].second;
    for (auto& p : pts) {
      xlo = std::min(xlo, p.first);
      xhi = std::max(xhi, p.first);
      ylo = std::min(ylo, p.second);
      yhi = std::max(yhi, p.second);
    }
  }
  if (xhi - xlo < 1e-12) xhi = xlo + 1.0;
  if (yhi - ylo < 1e-12) yhi = ylo + 1.0;
  auto px = [&](double v) {
    return ml + (v - xlo) / (xhi - xlo) * (w - ml - mr);
  };
  auto py = [&](double v) {
    return h - mb - (v - ylo) / (yhi - ylo) * (h - mt - mb);
  };
  auto label = [&](double t, bool log) {
    return fmt(log ? std::pow(10.0, t) : t);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (auto& p : pts) svg << fmt(px(p.first)) << ',' << fmt(py(p.second)) << ' ';
  svg << "\"/>\n";
  for (auto& p : pts)
    svg << "<circle cx=\"" << fmt(px(p.first)) << "\" cy=\"" << fmt(py(p.second))
        << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  svg << "<text x=\"" << ml << "\" y=\"" << h - mb + 18
      << "\" font-size=\"11\">" << label(xlo, log_x) << "</text>\n"
      << "<text x=\"" << w - mr - 40 << "\" y=\"" << h - mb + 18
      << "\" font-size=\"11\">" << label(xhi, log_x) << "</text>\n"
      << "<text x=\"6\" y=\"" << h - mb << "\" font-size=\"11\">"
      << label(ylo, log_y) << "</text>\n"
      << "<text x=\"6\" y=\"" << mt + 10 << "\" font-size=\"11\">"
      << label(yhi, log_y) << "</text>\n"
      << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label
      << (log_x ? " (log)" : "") << "</text>\n"
      << "<text x=\"14\" y=\"" << (mt + h - mb) / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (mt + h - mb) / 2 << ")\">" << y_label << (log_y ? " (log)" : "")
      << "</text>\n</svg>\n";
  return svg.str();
}

int execute(const RunConfig& cfg, std::vector<ResultRow>& rows) {
  cfg.validate();
  std::vector<double> grid = sweeps_re(cfg.analysis) ? cfg.re_grid : cfg.ro_grid;
  std::sort(grid.begin(), grid.end());
  rows.assign(grid.size(), ResultRow{});
  const int workers = resolve_workers(cfg);
  parallel_for(static_cast<int>(grid.size()), workers, [&](int i) {
    const double p = grid[i];
    if (cfg.analysis == "stability")
      rows[i] = stability_row(cfg, p, false);
    else if (cfg.analysis == "sos-certify")
      rows[i] = stability_row(cfg, p, true);
    else if (cfg.analysis == "gains")
      rows[i] = gains_row(cfg, p);
    else if (cfg.analysis == "iss")
      rows[i] = iss_row(cfg, p);
    else
      rows[i] = recrit_row(cfg, p, cfg.analysis == "iss-recrit");
  });
  for (const ResultRow& r : rows)
    if (r.status == "numerical_failure") return 2;
  if (rows.size() == 1 && sweeps_re(cfg.analysis) &&
      rows[0].status == "infeasible")
    return 1;
  return 0;
}

namespace {

double plot_quantity(const std::string& analysis, const ResultRow& r) {
  if (analysis == "stability" || analysis == "sos-certify" || analysis == "iss")
    return r.margin;
  return r.objective;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ResultRow> rows;
  int code;
  try {
    code = execute(cfg, rows);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return 2;
  }
  try {
    if (!cfg.out_csv.empty())
      write_file(cfg.out_csv, format_csv(rows));
    else
      out << format_csv(rows);
    if (!cfg.out_json.empty())
      write_file(cfg.out_json, summary_json(cfg, rows).dump(2) + "\n");
    if (!cfg.plot.empty()) {
      std::vector<double> xs, ys;
      for (const ResultRow& r : rows) {
        xs.push_back(r.param);
        ys.push_back(plot_quantity(cfg.analysis, r));
      }
      const std::string x_label = sweeps_re(cfg.analysis) ? "Re" : "Ro";
      const std::string y_label = cfg.analysis == "gains"        ? "gain sum"
                                  : cfg.analysis == "recrit"     ? "critical Re"
                                  : cfg.analysis == "iss-recrit" ? "ISS-critical Re"
                                                                 : "margin";
      write_file(cfg.plot,
                 render_svg(xs, ys, x_label, y_label, cfg.log_x, cfg.log_y));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"certify hydrodynamic stability, gain, and ISS properties of "
               "streamwise-invariant flows"};
  app.require_subcommand(1);

  struct Raw {
    std::string config, flow, re_grid, ro_grid, out_csv, out_json, plot;
    double ro = 0, L = 0, psi = 0, re = 0, re_lo = 0, re_hi = 0, rel_tol = 0;
    int relax_degree = 0, degree_cap = 0, workers = 0;
    bool log_x = false, log_y = false;
  };
  std::vector<std::pair<CLI::App*, std::shared_ptr<Raw>>> subs;

  for (const std::string& name : analyses()) {
    CLI::App* sub = app.add_subcommand(name);
    auto raw = std::make_shared<Raw>();
    sub->add_option("--config", raw->config, "JSON config file; flags override");
    sub->add_option("--flow", raw->flow,
                    "couette | rotating-couette | poiseuille-like");
    sub->add_option("--ro", raw->ro, "rotation number in [0, 1]");
    sub->add_option("--L", raw->L, "spanwise period");
    sub->add_option("--psi", raw->psi, "uniform decay-rate demand");
    sub->add_option("--re", raw->re, "single Reynolds number");
    sub->add_option("--re-grid", raw->re_grid,
                    "lo:hi:step, lo:hi:log:n, or a,b,c");
    sub->add_option("--ro-grid", raw->ro_grid,
                    "lo:hi:step, lo:hi:log:n, or a,b,c");
    sub->add_option("--re-lo", raw->re_lo, "bisection lower bracket");
    sub->add_option("--re-hi", raw->re_hi, "bisection upper bracket");
    sub->add_option("--rel-tol", raw->rel_tol, "bisection relative tolerance");
    sub->add_option("--relax-degree", raw->relax_degree,
                    "Gram relaxation degree (-1 = automatic)");
    sub->add_option("--degree-cap", raw->degree_cap, "max relaxation degree");
    sub->add_option("--workers", raw->workers,
                    "worker threads (0 = hardware concurrency)");
    sub->add_option("--out-csv", raw->out_csv, "CSV output path");
    sub->add_option("--out-json", raw->out_json, "JSON summary output path");
    sub->add_option("--plot", raw->plot, "SVG chart output path");
    sub->add_flag("--log-x", raw->log_x, "log-scale x axis");
    sub->add_flag("--log-y", raw->log_y, "log-scale y axis");
    subs.emplace_back(sub, raw);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  for (auto& [sub, raw] : subs) {
    if (!sub->parsed()) continue;
    RunConfig cfg;
    try {
      if (sub->count("--config")) {
        std::ifstream in(raw->config);
        if (!in) throw std::invalid_argument("cannot open " + raw->config);
        cfg = RunConfig::from_json(json::parse(in));
      }
      cfg.analysis = sub->get_name();
      if (sub->count("--flow")) cfg.flow = raw->flow;
      if (sub->count("--ro")) cfg.ro = raw->ro;
      if (sub->count("--L")) cfg.L = raw->L;
      if (sub->count("--psi")) cfg.psi = raw->psi;
      if (sub->count("--re")) cfg.re_grid = {raw->re};
      if (sub->count("--re-grid")) cfg.re_grid = parse_grid(raw->re_grid);
      if (sub->count("--ro-grid")) cfg.ro_grid = parse_grid(raw->ro_grid);
      if (sub->count("--re-lo")) cfg.re_lo = raw->re_lo;
      if (sub->count("--re-hi")) cfg.re_hi = raw->re_hi;
      if (sub->count("--rel-tol")) cfg.rel_tol = raw->rel_tol;
      if (sub->count("--relax-degree")) cfg.relax_degree = raw->relax_degree;
      if (sub->count("--degree-cap")) cfg.degree_cap = raw->degree_cap;
      if (sub->count("--workers")) cfg.workers = raw->workers;
      if (sub->count("--out-csv")) cfg.out_csv = raw->out_csv;
      if (sub->count("--out-json")) cfg.out_json = raw->out_json;
      if (sub->count("--plot")) cfg.plot = raw->plot;
      if (sub->count("--log-x")) cfg.log_x = raw->log_x;
      if (sub->count("--log-y")) cfg.log_y = raw->log_y;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 3;
    }
    return run(cfg, std::cout, std::cerr);
  }
  return 3;
}

}  // namespace hydrocert::cli
