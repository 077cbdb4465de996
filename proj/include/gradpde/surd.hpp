#pragma once

#include <string>

#include "gradpde/poly.hpp"
#include "gradpde/rational.hpp"

namespace gradpde {

// a + b*sqrt(d) with rational a, b and rational radicand d >= 0.  Square
// radicands fold into the rational part, so b != 0 implies sqrt(d) irrational.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(const Rational& a) : a_(a) {}  // NOLINT(implicit)
  QuadSurd(const Rational& a, const Rational& b, const Rational& d);

  const Rational& rational_part() const { return a_; }
  const Rational& coefficient() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  double to_double() const;
  QuadSurd conjugate() const;

  QuadSurd& operator+=(const QuadSurd& o);
  QuadSurd& operator-=(const QuadSurd& o);
  QuadSurd& operator*=(const QuadSurd& o);
  QuadSurd& operator/=(const QuadSurd& o);

  friend QuadSurd operator+(QuadSurd x, const QuadSurd& y) { return x += y; }
  friend QuadSurd operator-(QuadSurd x, const QuadSurd& y) { return x -= y; }
  friend QuadSurd operator*(QuadSurd x, const QuadSurd& y) { return x *= y; }
  friend QuadSurd operator/(QuadSurd x, const QuadSurd& y) { return x /= y; }
  friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a_, -x.b_, x.d_); }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() == 0; }

 private:
  void normalize();
  // Radicand shared by a binary operation; throws if both are irrational in
  // different fields.
  static Rational common_radicand(const QuadSurd& x, const QuadSurd& y);
  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

int compare(const QuadSurd& x, const QuadSurd& y);
QuadSurd evaluate(const UniPoly& p, const QuadSurd& x);
std::string to_string(const QuadSurd& x);

}  // namespace gradpde
