#include "gradpde/errors.hpp"
#include "gradpde/sphere.hpp"

namespace gradpde {

MoserSequence moser_exponent_sequence(int n, const Rational& p, const Rational& q, const Rational& alpha0, int k) {
  if (n <= 2) throw DomainError("exponent recursion needs n >= 3");
  if (k < 0) throw DomainError("negative sequence length");
  Rational Q = p + q - 1;
  if (sgn(Q) <= 0) throw DomainError("exponent recursion needs p + q - 1 > 0");
  if (q >= 2) throw DomainError("exponent recursion needs q < 2");
  MoserSequence s;
  s.growth = make_rational(n, n - 2);
  s.fixed_point = Q * (n - 2) / (2 - q);
  Rational shift = 2 * Q / (2 - q);
  Rational a = alpha0;
  Rational scale = 1;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      a = s.growth * (a + 1) - shift - 1;
      scale *= s.growth;
    }
    s.recursion.push_back(a);
    s.closed_form.push_back(Rational(scale * (alpha0 + 1 - s.fixed_point) + s.fixed_point - 1));
  }
  return s;
}

}  // namespace gradpde
