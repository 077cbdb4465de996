#include "gradpde/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "gradpde/errors.hpp"

namespace gradpde {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be made exact");
  Rational r(x);
  r.canonicalize();
  return r;
}

static bool looks_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

static Integer parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

Rational parse_rational(std::string_view text, bool* decimal) {
  if (decimal) *decimal = false;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty number");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!looks_integer(num) || !looks_integer(den))
      throw DomainError("malformed rational '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
  }
  if (looks_integer(text)) return Rational(parse_integer(text));
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(std::string(text), &used);
  } catch (const std::exception&) {
    throw DomainError("malformed number '" + std::string(text) + "'");
  }
  if (used != text.size()) throw DomainError("malformed number '" + std::string(text) + "'");
  if (decimal) *decimal = true;
  return from_double(x);
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

int sign(const Rational& r) { return sgn(r); }

Rational abs(const Rational& r) { return Rational(::abs(r)); }

Rational pow_int(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

bool is_square(const Rational& r, Rational* root) {
  if (sgn(r) < 0) return false;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(r.get_den_mpz_t()) == 0) return false;
  if (root) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    *root = Rational(n, d);
    root->canonicalize();
  }
  return true;
}

}  // namespace gradpde
