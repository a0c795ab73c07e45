// Bivariate polynomials over the two in-plane coordinates.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace hydrocert::poly {

struct Monomial {
  int a = 0;  // exponent of variable 0
  int b = 0;  // exponent of variable 1
  int total() const { return a + b; }
  bool operator==(const Monomial&) const = default;
};

// Graded lexicographic: lower total degree first, then higher exponent of
// variable 0 first within a degree.
struct GradedLex {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.total() != y.total()) return x.total() < y.total();
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

class Poly2 {
 public:
  Poly2() = default;
  static Poly2 constant(double c);
  static Poly2 var(int which, int power = 1);  // which in {0, 1}

  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator-() const;
  Poly2 scaled(double c) const;

  Poly2& operator+=(const Poly2& o);

  Poly2 partial(int which) const;
  double eval(double x0, double x1) const;

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  double constant_term() const;
  double max_abs_coeff() const;
  bool depends_on(int which) const;

  double coeff(const Monomial& m) const;
  void set_coeff(const Monomial& m, double c);

  const std::map<Monomial, double, GradedLex>& terms() const { return terms_; }

  std::string str(const std::array<std::string, 2>& names = {"xj", "xi"}) const;
  static Poly2 parse(const std::string& text,
                     const std::array<std::string, 2>& names = {"xj", "xi"});

  bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

 private:
  void prune();
  std::map<Monomial, double, GradedLex> terms_;
};

struct MonoBasis {
  std::vector<Monomial> monomials;
  // All monomials of total degree <= d in graded-lex order; optionally
  // restricted to a single variable.
  static MonoBasis upto(int d, bool use_var0 = true, bool use_var1 = true);
};

// Polynomial with coefficients affine in an unknown vector z:
//   p(x; z) = comp[0](x) + sum_v z_v * comp[1 + v](x)
class LinPoly {
 public:
  LinPoly() : comps_(1) {}
  explicit LinPoly(int nvars) : comps_(static_cast<size_t>(nvars) + 1) {}
  LinPoly(Poly2 constant_part, int nvars) : comps_(static_cast<size_t>(nvars) + 1) {
    comps_[0] = std::move(constant_part);
  }

  int nvars() const { return static_cast<int>(comps_.size()) - 1; }
  Poly2& comp(int k) { return comps_[k]; }          // k = 0 constant, 1+v for z_v
  const Poly2& comp(int k) const { return comps_[k]; }

  Poly2 at(const std::vector<double>& z) const;

 private:
  std::vector<Poly2> comps_;
};

struct LinearEquation {
  std::vector<double> coeffs;  // one per unknown
  double rhs = 0.0;
};

// Equate coefficients of lhs and rhs monomial by monomial. Both sides must be
// affine in the same unknown vector.
std::vector<LinearEquation> match_coefficients(const LinPoly& lhs,
                                               const LinPoly& rhs);

}  // namespace hydrocert::poly
