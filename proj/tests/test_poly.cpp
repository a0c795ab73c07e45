#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hydrocert/poly.hpp"

using namespace hydrocert::poly;

namespace {

Poly2 random_poly(std::mt19937& rng, int maxdeg, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::uniform_int_distribution<int> nd(1, 6);
  std::uniform_int_distribution<int> d(0, maxdeg);
  Poly2 p;
  int nterms = nd(rng);
  for (int t = 0; t < nterms; ++t) {
    int a = d(rng), b = d(rng);
    p += Poly2::var(0, a) * Poly2::var(1, b).scaled(u(rng));
  }
  return p;
}

// term-by-term summation with explicit repeated multiplication (oracle)
double naive_eval(const Poly2& p, double x0, double x1) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (int k = 0; k < m.a; ++k) t *= x0;
    for (int k = 0; k < m.b; ++k) t *= x1;
    s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  Poly2 xi = Poly2::var(0);
  CHECK((xi * xi) == Poly2::var(0, 2));
  std::mt19937 rng(1);
  Poly2 p = random_poly(rng, 3);
  CHECK((p + p.scaled(-1.0)).is_zero());
  Poly2 a = Poly2::constant(1) - Poly2::var(0, 2);
  Poly2 b = Poly2::constant(1) + Poly2::var(0, 2);
  CHECK((a * b) == (Poly2::constant(1) - Poly2::var(0, 4)));
}

TEST_CASE("partial derivatives") {
  CHECK(Poly2::var(1).partial(1) == Poly2::constant(1));
  Poly2 profile = Poly2::constant(1) - Poly2::var(1, 2);
  CHECK(profile.partial(1) == Poly2::var(1).scaled(-2.0));
  CHECK(Poly2::var(1, 2).partial(0).is_zero());
}

TEST_CASE("degree sentinel and constants") {
  CHECK(Poly2().degree() == -1);
  CHECK(Poly2::constant(2.5).degree() == 0);
  CHECK((Poly2::var(0) * Poly2::var(1, 3)).degree() == 4);
}

TEST_CASE("evaluation") {
  Poly2 s = Poly2::var(0) + Poly2::var(1);
  CHECK(s.eval(1, 2) == doctest::Approx(3.0));
  CHECK(Poly2().eval(4.2, -1.0) == 0.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  Poly2 p = random_poly(rng, 4);
  for (int k = 0; k < 100; ++k) {
    double x0 = u(rng), x1 = u(rng);
    CHECK(p.eval(x0, x1) == doctest::Approx(naive_eval(p, x0, x1)).epsilon(1e-12));
  }
}

TEST_CASE("ring properties on random polynomials") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int rep = 0; rep < 30; ++rep) {
    Poly2 p = random_poly(rng, 3), q = random_poly(rng, 3), r = random_poly(rng, 3);
    CHECK(((p * q) - (q * p)).max_abs_coeff() <= 1e-12);
    Poly2 lhs = p * (q + r);
    Poly2 rhs = p * q + p * r;
    CHECK((lhs - rhs).max_abs_coeff() <= 1e-10 * (1 + lhs.max_abs_coeff()));
    double x0 = u(rng), x1 = u(rng);
    double ev = (p * q).eval(x0, x1);
    CHECK(ev == doctest::Approx(p.eval(x0, x1) * q.eval(x0, x1))
                    .epsilon(1e-10));
    // Leibniz rule
    for (int v = 0; v < 2; ++v) {
      Poly2 left = (p * q).partial(v);
      Poly2 right = p.partial(v) * q + p * q.partial(v);
      CHECK((left - right).max_abs_coeff() <= 1e-10 * (1 + left.max_abs_coeff()));
    }
  }
}

TEST_CASE("render and parse") {
  Poly2 profile = Poly2::constant(1) - Poly2::var(0, 2);
  std::array<std::string, 2> names = {"x2", "x3"};
  CHECK(profile.str(names) == "1 - x2^2");
  CHECK(Poly2::parse("1 - x2^2", names) == profile);
  CHECK(Poly2::parse("x2", names) == Poly2::var(0));
  Poly2 mixed = Poly2::parse("2*x2*x3 + 0.5*x3^2 - 3", names);
  CHECK(mixed.coeff({1, 1}) == doctest::Approx(2.0));
  CHECK(mixed.coeff({0, 2}) == doctest::Approx(0.5));
  CHECK(mixed.coeff({0, 0}) == doctest::Approx(-3.0));
  std::mt19937 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    Poly2 p = random_poly(rng, 3);
    Poly2 back = Poly2::parse(p.str(names), names);
    CHECK((p - back).max_abs_coeff() <= 1e-9 * (1 + p.max_abs_coeff()));
  }
  CHECK_THROWS_AS(Poly2::parse("1 + bogus", names), std::invalid_argument);
}

TEST_CASE("monomial basis") {
  MonoBasis b = MonoBasis::upto(3);
  CHECK(b.monomials.size() == 10);  // (d+1)(d+2)/2
  // graded lex: degree increases, var0 exponent decreases within a degree
  for (size_t k = 1; k < b.monomials.size(); ++k) {
    const auto &x = b.monomials[k - 1], &y = b.monomials[k];
    CHECK((x.total() < y.total() || (x.total() == y.total() && x.a > y.a)));
  }
  MonoBasis b1 = MonoBasis::upto(3, true, false);
  CHECK(b1.monomials.size() == 4);  // 1, x0, x0^2, x0^3
}

TEST_CASE("coefficient matching") {
  // z1 * xi^2 against 4 xi^2
  LinPoly lhs(1), rhs(1);
  lhs.comp(1) = Poly2::var(0, 2);
  rhs.comp(0) = Poly2::var(0, 2).scaled(4.0);
  auto eqs = match_coefficients(lhs, rhs);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].coeffs[0] == doctest::Approx(1.0));
  CHECK(eqs[0].rhs == doctest::Approx(4.0));

  // identical sides: consistent all-zero system
  auto eqs2 = match_coefficients(lhs, lhs);
  for (const auto& e : eqs2) {
    for (double c : e.coeffs) CHECK(c == 0.0);
    CHECK(e.rhs == 0.0);
  }
}

TEST_CASE("Gram form expansion produces one equation per monomial") {
  // v' G v with v = (1, xi, xj) and symbolic symmetric G (6 unknowns) against
  // a fixed quadratic: the hand expansion
  //   g00 + 2 g01 xi + 2 g02 xj + g11 xi^2 + 2 g12 xi xj + g22 xj^2
  // matches 6 monomials, hence 6 equations.
  LinPoly lhs(6);
  Poly2 one = Poly2::constant(1), xi = Poly2::var(0), xj = Poly2::var(1);
  std::array<Poly2, 3> basis = {one, xi, xj};
  int var = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double mult = (i == j) ? 1.0 : 2.0;
      lhs.comp(1 + var) = (basis[i] * basis[j]).scaled(mult);
      ++var;
    }
  LinPoly rhs(6);
  rhs.comp(0) = Poly2::parse("1 + 2*xj + 3*xi^2 + 4*xi*xj", {"xi", "xj"});
  auto eqs = match_coefficients(lhs, rhs);
  CHECK(eqs.size() == 6);
}

TEST_CASE("LinPoly substitution") {
  LinPoly p(2);
  p.comp(0) = Poly2::constant(1);
  p.comp(1) = Poly2::var(0);
  p.comp(2) = Poly2::var(1, 2);
  Poly2 at = p.at({2.0, -1.0});
  CHECK(at.coeff({0, 0}) == doctest::Approx(1.0));
  CHECK(at.coeff({1, 0}) == doctest::Approx(2.0));
  CHECK(at.coeff({0, 2}) == doctest::Approx(-1.0));
}
