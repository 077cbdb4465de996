#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gradpde/rational.hpp"

namespace gradpde {

// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients, char var = 'h');
  UniPoly(std::initializer_list<long> coefficients, char var = 'h');

  static UniPoly constant(const Rational& c, char var = 'h');
  static UniPoly monomial(const Rational& c, unsigned k, char var = 'h');
  static UniPoly variable(char var = 'h');

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  char var() const { return var_; }
  UniPoly with_var(char v) const;

  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const;

  UniPoly derivative() const;
  UniPoly compose(const UniPoly& inner) const;
  UniPoly monic() const;
  // p(x) -> p(-x)
  UniPoly reflect() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  friend UniPoly operator-(UniPoly a) { return a *= Rational(-1); }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  // Euclidean division; throws DomainError on zero divisor.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  std::vector<Rational> c_;
  char var_ = 'h';
};

UniPoly pow(const UniPoly& p, unsigned k);
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly squarefree(const UniPoly& p);
// Exact quotient; throws DomainError when the remainder is nonzero.
UniPoly exact_divide(const UniPoly& a, const UniPoly& b);
std::string to_string(const UniPoly& p);

}  // namespace gradpde
