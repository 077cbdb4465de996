#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gradpde {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// Accepts "a", "a/b" (exact) and decimals such as "0.25" or "1e-3".
// Decimals become the exact dyadic value of the nearest double; *decimal is
// set when that conversion happened.
Rational parse_rational(std::string_view text, bool* decimal = nullptr);

std::string to_string(const Rational& r);
double to_double(const Rational& r);
int sign(const Rational& r);
Rational abs(const Rational& r);
Rational pow_int(const Rational& base, unsigned exponent);

// True when r = s^2 for a rational s >= 0; writes s to *root.
bool is_square(const Rational& r, Rational* root = nullptr);

// Exact conversion of a finite double.
Rational from_double(double x);

}  // namespace gradpde
