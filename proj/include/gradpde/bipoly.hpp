#pragma once

#include <string>
#include <vector>

#include "gradpde/poly.hpp"
#include "gradpde/surd.hpp"

namespace gradpde {

// Polynomial in p whose coefficients are polynomials in h:
// sum_i coeff(i)(h) p^i.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<UniPoly> coefficients);
  static BiPoly in_h(const UniPoly& c);  // constant in p
  static BiPoly p_power(unsigned k);

  int degree_p() const { return static_cast<int>(c_.size()) - 1; }
  int degree_h() const;
  bool is_zero() const { return c_.empty(); }
  const std::vector<UniPoly>& coefficients() const { return c_; }
  UniPoly coeff(std::size_t i) const;
  // Mutable access for mutation tests.
  UniPoly& coeff_ref(std::size_t i);

  Rational operator()(const Rational& p, const Rational& h) const;
  QuadSurd operator()(const QuadSurd& p, const Rational& h) const;
  UniPoly at_h(const Rational& h) const;             // polynomial in p
  UniPoly substitute_p(const UniPoly& p_of_h) const;  // polynomial in h

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);
  BiPoly& operator*=(const UniPoly& s);
  BiPoly& operator*=(const Rational& s);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
  friend BiPoly operator*(BiPoly a, const UniPoly& b) { return a *= b; }
  friend BiPoly operator*(BiPoly a, const Rational& b) { return a *= b; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<UniPoly> c_;
};

std::string to_string(const BiPoly& b);

}  // namespace gradpde
