#include "hydrocert/poly.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hydrocert::poly {

namespace {
constexpr double kPruneTol = 1e-14;
}

Poly2 Poly2::constant(double c) {
  Poly2 p;
  p.set_coeff({0, 0}, c);
  return p;
}

Poly2 Poly2::var(int which, int power) {
  if (which != 0 && which != 1)
    throw std::invalid_argument("Poly2::var: variable index must be 0 or 1");
  if (power < 0) throw std::invalid_argument("Poly2::var: negative power");
  Poly2 p;
  if (which == 0)
    p.set_coeff({power, 0}, 1.0);
  else
    p.set_coeff({0, power}, 1.0);
  return p;
}

void Poly2::prune() {
  // relative cutoff: uniform rescaling must not change which terms survive
  double top = 0.0;
  for (const auto& [m, c] : terms_) top = std::max(top, std::abs(c));
  const double tol = kPruneTol * top;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r = *this;
  r += o;
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  prune();
  return *this;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + o.scaled(-1.0); }

Poly2 Poly2::operator-() const { return scaled(-1.0); }

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_)
      r.terms_[{m1.a + m2.a, m1.b + m2.b}] += c1 * c2;
  r.prune();
  return r;
}

Poly2 Poly2::scaled(double c) const {
  Poly2 r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  r.prune();
  return r;
}

Poly2 Poly2::partial(int which) const {
  Poly2 r;
  for (const auto& [m, c] : terms_) {
    if (which == 0 && m.a > 0) r.terms_[{m.a - 1, m.b}] += c * m.a;
    if (which == 1 && m.b > 0) r.terms_[{m.a, m.b - 1}] += c * m.b;
  }
  r.prune();
  return r;
}

double Poly2::eval(double x0, double x1) const {
  // terms are graded-lex ordered; plain power accumulation is fine at the
  // degrees that occur here
  double s = 0.0;
  for (const auto& [m, c] : terms_)
    s += c * std::pow(x0, m.a) * std::pow(x1, m.b);
  return s;
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total());
  return d;
}

bool Poly2::is_constant() const { return degree() <= 0; }

double Poly2::constant_term() const { return coeff({0, 0}); }

double Poly2::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool Poly2::depends_on(int which) const {
  for (const auto& [m, c] : terms_) {
    if (which == 0 && m.a > 0) return true;
    if (which == 1 && m.b > 0) return true;
  }
  return false;
}

double Poly2::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Poly2::set_coeff(const Monomial& m, double c) {
  if (std::abs(c) < kPruneTol)
    terms_.erase(m);
  else
    terms_[m] = c;
}

std::string Poly2::str(const std::array<std::string, 2>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(15);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    double v = c;
    if (first) {
      if (v < 0) {
        os << "-";
        v = -v;
      }
    } else {
      os << (v < 0 ? " - " : " + ");
      v = std::abs(v);
    }
    first = false;
    bool has_vars = m.total() > 0;
    if (!has_vars || v != 1.0) {
      os << v;
      if (has_vars) os << "*";
    }
    if (m.a > 0) {
      os << names[0];
      if (m.a > 1) os << "^" << m.a;
      if (m.b > 0) os << "*";
    }
    if (m.b > 0) {
      os << names[1];
      if (m.b > 1) os << "^" << m.b;
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  const std::array<std::string, 2>& names;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("Poly2::parse: " + what + " at position " +
                                std::to_string(pos) + " in \"" + s + "\"");
  }

  // term := factor ('*' factor)*
  // factor := number | varname ['^' int] | '(' expr ')'
  Poly2 parse_factor() {
    skip_ws();
    if (eat('(')) {
      Poly2 inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return parse_power_suffix(inner);
    }
    if (pos < s.size() &&
        (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      size_t end;
      double v = std::stod(s.substr(pos), &end);
      pos += end;
      return Poly2::constant(v);
    }
    for (int w = 0; w < 2; ++w) {
      const std::string& nm = names[w];
      if (!nm.empty() && s.compare(pos, nm.size(), nm) == 0) {
        pos += nm.size();
        return parse_power_suffix(Poly2::var(w));
      }
    }
    fail("expected number, variable, or '('");
  }

  Poly2 parse_power_suffix(Poly2 base) {
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t end;
      int e = std::stoi(s.substr(pos), &end);
      if (e < 0) fail("negative exponent");
      pos += end;
      Poly2 r = Poly2::constant(1.0);
      for (int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Poly2 parse_term() {
    Poly2 r = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        r = r * parse_factor();
        continue;
      }
      // implicit multiplication: next token starts a factor
      if (pos < s.size()) {
        char c = s[pos];
        if (c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
          r = r * parse_factor();
          continue;
        }
      }
      break;
    }
    return r;
  }

  Poly2 parse_expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly2 r = parse_term();
    if (neg) r = -r;
    while (true) {
      skip_ws();
      if (eat('+'))
        r += parse_term();
      else if (eat('-'))
        r += -parse_term();
      else
        break;
    }
    return r;
  }
};

}  // namespace

Poly2 Poly2::parse(const std::string& text,
                   const std::array<std::string, 2>& names) {
  Parser p{text, names};
  Poly2 r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

MonoBasis MonoBasis::upto(int d, bool use_var0, bool use_var1) {
  MonoBasis b;
  std::set<Monomial, GradedLex> set;
  for (int t = 0; t <= d; ++t)
    for (int a = t; a >= 0; --a) {
      int bb = t - a;
      if (a > 0 && !use_var0) continue;
      if (bb > 0 && !use_var1) continue;
      set.insert({a, bb});
    }
  b.monomials.assign(set.begin(), set.end());
  return b;
}

Poly2 LinPoly::at(const std::vector<double>& z) const {
  if (static_cast<int>(z.size()) != nvars())
    throw std::invalid_argument("LinPoly::at: wrong z dimension");
  Poly2 r = comps_[0];
  for (int v = 0; v < nvars(); ++v) r += comps_[1 + v].scaled(z[v]);
  return r;
}

std::vector<LinearEquation> match_coefficients(const LinPoly& lhs,
                                               const LinPoly& rhs) {
  if (lhs.nvars() != rhs.nvars())
    throw std::invalid_argument(
        "match_coefficients: unknown vectors differ in size");
  const int nv = lhs.nvars();
  std::set<Monomial, GradedLex> support;
  for (int k = 0; k <= nv; ++k) {
    for (const auto& [m, c] : lhs.comp(k).terms()) support.insert(m);
    for (const auto& [m, c] : rhs.comp(k).terms()) support.insert(m);
  }
  std::vector<LinearEquation> eqs;
  for (const Monomial& m : support) {
    LinearEquation eq;
    eq.coeffs.resize(nv);
    for (int v = 0; v < nv; ++v)
      eq.coeffs[v] = lhs.comp(1 + v).coeff(m) - rhs.comp(1 + v).coeff(m);
    eq.rhs = rhs.comp(0).coeff(m) - lhs.comp(0).coeff(m);
    eqs.push_back(std::move(eq));
  }
  return eqs;
}

}  // namespace hydrocert::poly
