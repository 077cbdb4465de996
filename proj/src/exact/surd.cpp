#include "gradpde/surd.hpp"

#include <cmath>

#include "gradpde/errors.hpp"

namespace gradpde {

QuadSurd::QuadSurd(const Rational& a, const Rational& b, const Rational& d) : a_(a), b_(b), d_(d) {
  if (sgn(d_) < 0) throw DomainError("negative radicand");
  normalize();
}

void QuadSurd::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  d_.canonicalize();
  if (sgn(b_) == 0 || sgn(d_) == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  Rational root;
  if (is_square(d_, &root)) {
    a_ += b_ * root;
    b_ = 0;
    d_ = 0;
  }
}

Rational QuadSurd::common_radicand(const QuadSurd& x, const QuadSurd& y) {
  if (x.is_rational()) return y.d_;
  if (y.is_rational()) return x.d_;
  if (x.d_ != y.d_) throw DomainError("surds from different quadratic fields");
  return x.d_;
}

int QuadSurd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 d
  int c = cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

double QuadSurd::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

QuadSurd QuadSurd::conjugate() const { return QuadSurd(a_, -b_, d_); }

QuadSurd& QuadSurd::operator+=(const QuadSurd& o) {
  Rational d = common_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  d_ = d;
  normalize();
  return *this;
}

QuadSurd& QuadSurd::operator-=(const QuadSurd& o) {
  Rational d = common_radicand(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  d_ = d;
  normalize();
  return *this;
}

QuadSurd& QuadSurd::operator*=(const QuadSurd& o) {
  Rational d = common_radicand(*this, o);
  Rational a = a_ * o.a_ + b_ * o.b_ * d;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadSurd& QuadSurd::operator/=(const QuadSurd& o) {
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * o.d_;
  if (sgn(norm) == 0) throw DomainError("division by zero surd");
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  normalize();
  return *this;
}

int compare(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign(); }

QuadSurd evaluate(const UniPoly& p, const QuadSurd& x) {
  QuadSurd acc;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + QuadSurd(*it);
  return acc;
}

std::string to_string(const QuadSurd& x) {
  if (x.is_rational()) return x.rational_part().get_str();
  return x.rational_part().get_str() + " + (" + x.coefficient().get_str() + ")*sqrt(" +
         x.radicand().get_str() + ")";
}

}  // namespace gradpde
