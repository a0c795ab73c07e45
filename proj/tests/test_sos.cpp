#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hydrocert/sos.hpp"

using namespace hydrocert;
using namespace hydrocert::sos;
using linalg::SymMat;
using poly::Poly2;
using polymatrix::SymPolyMatrix;

namespace {

// [[1, x1], [x1, 1]] on x1 in [-1, 1]; PSD exactly on the box (eigenvalues
// 1 +- x1), so the certificate is marginal
SymPolyMatrix bounded_coupling() {
  SymPolyMatrix m(2, 0);
  m.entry(0, 0, 0) = Poly2::constant(1.0);
  m.entry(0, 1, 1) = Poly2::constant(1.0);
  m.entry(0, 0, 1) = Poly2::var(1);
  return m;
}

SemialgebraicBox coord1_box() {
  return SemialgebraicBox::rectangle(0.0, 1.0, -1.0, 1.0, true, false);
}

}  // namespace

TEST_CASE("rectangle factory") {
  SemialgebraicBox b = SemialgebraicBox::rectangle(-1.0, 1.0, 0.0, 2.0);
  REQUIRE(b.constraints.size() == 2);
  CHECK(b.constraints[0].eval(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(b.constraints[0].eval(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(b.constraints[1].eval(0.0, -0.5) < 0.0);
  CHECK(b.contains(0.5, 1.0));
  CHECK_FALSE(b.contains(1.5, 1.0));
  // periodic coordinates impose no constraint
  SemialgebraicBox p = SemialgebraicBox::rectangle(-1.0, 1.0, 0.0, 2.0, false, true);
  CHECK(p.constraints.size() == 1);
  CHECK_THROWS_AS(SemialgebraicBox::rectangle(1.0, -1.0, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("matrix PSD exactly on the box certifies at degree 1") {
  SymPolyMatrix m = bounded_coupling();
  auto [prob, dec] = compile(m, coord1_box(), 1);
  sdp::MarginResult r = sdp::feasibility_margin(prob);
  // the certificate is marginal: t* = 0
  CHECK(r.t_star >= -1e-6);
  CHECK(r.t_star <= 1e-6);
  MatrixSosCertificate cert = dec.certificate(r.z);
  CHECK(cert.residual.max_abs_coeff() <= 1e-6);
  for (const SymMat& g : cert.grams)
    CHECK(linalg::min_eigenvalue(g) >= -1e-6);
  CHECK(sample_check(m.at({}), coord1_box(), 1000) >= -1e-9);
}

TEST_CASE("constant identity degenerates to the identity lift") {
  SymPolyMatrix m(3, 0);
  for (int i = 0; i < 3; ++i) m.entry(0, i, i) = Poly2::constant(1.0);
  auto [prob, dec] = compile(m, coord1_box(), 1);
  CHECK(prob.nvars == 0);
  CHECK(prob.blocks.size() == 1);
  CHECK(prob.eq_rows.empty());
  sdp::MarginResult r = sdp::feasibility_margin(prob);
  CHECK(r.verdict == sdp::SdpStatus::Feasible);
  CHECK(r.t_star == doctest::Approx(1.0).epsilon(1e-6));
  MatrixSosCertificate cert = dec.certificate(r.z);
  CHECK(verify(cert, m).pass);
}

TEST_CASE("pointwise violation is infeasible at any degree") {
  SymPolyMatrix m(2, 0);
  m.entry(0, 0, 0) = Poly2::var(1);
  m.entry(0, 1, 1) = Poly2::constant(1.0);
  for (int deg = 1; deg <= 3; ++deg) {
    auto [prob, dec] = compile(m, coord1_box(), deg);
    sdp::MarginResult r = sdp::feasibility_margin(prob);
    CHECK(r.verdict == sdp::SdpStatus::Infeasible);
  }
  CHECK(sample_check(m, coord1_box(), 1000) <= -0.99);
}

TEST_CASE("degree guard names the required degree") {
  SymPolyMatrix m(1, 0);
  m.entry(0, 0, 0) = Poly2::constant(2.0) + Poly2::var(1, 4);
  CHECK_THROWS_WITH_AS(compile(m, coord1_box(), 1),
                       doctest::Contains("below required 2"),
                       std::invalid_argument);
  CHECK(default_relax_degree(m) == 3);
}

TEST_CASE("free decision variable shifts a scalar inequality") {
  // z - x1^2 >= 0 on [-1,1] forces z >= 1; minimizing z gives 1
  SymPolyMatrix m(1, 1);
  m.entry(0, 0, 0) = -Poly2::var(1, 2);
  m.entry(1, 0, 0) = Poly2::constant(1.0);
  auto [prob, dec] = compile(m, coord1_box(), 2);
  prob.objective.assign(prob.nvars, 0.0);
  prob.objective[0] = 1.0;
  sdp::SdpSolution s = sdp::solve(prob);
  REQUIRE(s.status == sdp::SdpStatus::Optimal);
  std::vector<double> z = dec.model_z(s.z);
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("verify audits independently") {
  // strictly PSD variant: [[2, x1], [x1, 2]]
  SymPolyMatrix m = bounded_coupling();
  m.entry(0, 0, 0) = Poly2::constant(2.0);
  m.entry(0, 1, 1) = Poly2::constant(2.0);
  auto [prob, dec] = compile(m, coord1_box(), 1);
  sdp::MarginResult r = sdp::feasibility_margin(prob);
  REQUIRE(r.verdict == sdp::SdpStatus::Feasible);
  MatrixSosCertificate cert = dec.certificate(r.z);
  VerifyReport rep = verify(cert, m);
  CHECK(rep.pass);

  // perturbing one Gram entry blows up the residual
  MatrixSosCertificate bad = cert;
  bad.grams[0].at(0, 0) += 1e-3;
  CHECK_FALSE(verify(bad, m).pass);

  // zero certificate for the zero matrix
  MatrixSosCertificate zero;
  zero.dim = 1;
  SymPolyMatrix zm(1, 0);
  CHECK(verify(zero, zm).pass);
}

TEST_CASE("degree monotonicity") {
  SymPolyMatrix m = bounded_coupling();
  m.entry(0, 0, 0) = Poly2::constant(2.0);
  m.entry(0, 1, 1) = Poly2::constant(2.0);
  for (int deg = 1; deg <= 3; ++deg) {
    auto [prob, dec] = compile(m, coord1_box(), deg);
    CHECK(sdp::feasibility_margin(prob).verdict == sdp::SdpStatus::Feasible);
  }
}

TEST_CASE("constant-matrix equivalence with the direct LMI") {
  SymPolyMatrix m(2, 1);
  m.entry(0, 0, 0) = Poly2::constant(3.0);
  m.entry(0, 1, 1) = Poly2::constant(-1.0);
  m.entry(1, 1, 1) = Poly2::constant(1.0);
  auto [prob, dec] = compile(m, coord1_box(), 1);
  sdp::SdpProblem direct;
  direct.nvars = 1;
  sdp::Block& b = direct.add_block(2);
  b.f0 = m.coeff_matrix(0, {0, 0});
  b.f[0] = m.coeff_matrix(1, {0, 0});
  CHECK(sdp::feasibility_margin(prob).verdict ==
        sdp::feasibility_margin(direct).verdict);
}

TEST_CASE("sample_check on a constant matrix is exact") {
  SymPolyMatrix m(2, 0);
  m.entry(0, 0, 0) = Poly2::constant(2.0);
  m.entry(0, 1, 1) = Poly2::constant(5.0);
  CHECK(sample_check(m, coord1_box(), 10) == doctest::Approx(2.0));
}

TEST_CASE("certificate JSON round-trip") {
  SymPolyMatrix m = bounded_coupling();
  m.entry(0, 0, 0) = Poly2::constant(2.0);
  m.entry(0, 1, 1) = Poly2::constant(2.0);
  auto [prob, dec] = compile(m, coord1_box(), 1);
  sdp::MarginResult r = sdp::feasibility_margin(prob);
  REQUIRE(r.verdict == sdp::SdpStatus::Feasible);
  MatrixSosCertificate cert = dec.certificate(r.z);
  MatrixSosCertificate back = MatrixSosCertificate::from_json(cert.to_json());
  CHECK(back.dim == cert.dim);
  REQUIRE(back.grams.size() == cert.grams.size());
  CHECK(verify(back, m).pass);
}
