#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradpde/poly.hpp"
#include "gradpde/sturm.hpp"
#include "gradpde/surd.hpp"

namespace gradpde {

enum class ClaimedSign { positive, negative, nonnegative, nonpositive };
enum class Method { sturm, subdivision };
enum class Verdict { proven, refuted };

const char* to_string(ClaimedSign s);
const char* to_string(Method m);
const char* to_string(Verdict v);
bool sign_satisfies(int s, ClaimedSign claim);

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(const Rational& a, const Rational& b) { return {a, b, false, false}; }
  static Interval left_open(const Rational& a, const Rational& b) { return {a, b, true, false}; }
  static Interval open(const Rational& a, const Rational& b) { return {a, b, true, true}; }
  bool contains(const Rational& x) const;
  std::string str() const;
};

// f(h) = A(h) + B(h) * sqrt(U(h) / V(h)); a plain polynomial has B = 0.
struct RadicalForm {
  UniPoly A;
  UniPoly B;
  UniPoly U = UniPoly::constant(Rational(1));
  UniPoly V = UniPoly::constant(Rational(1));

  static RadicalForm polynomial(const UniPoly& p) { return {p, UniPoly(), UniPoly::constant(Rational(1)), UniPoly::constant(Rational(1))}; }
  bool is_polynomial() const { return B.is_zero(); }
  // Requires V(x) != 0 and U(x)/V(x) >= 0.
  int sign_at(const Rational& x) const;
  double eval(double x) const;
  // A^2 V - B^2 U: every zero of f is a zero of this polynomial.
  UniPoly squared_out() const;
};

// One isolated root of the witness polynomial with the signs of A, B, U there.
struct RootWitness {
  RootInterval where;
  int sign_A = 0;
  int sign_B = 0;
  int sign_U = 0;
  bool expression_vanishes = false;
};

// Sub-interval between consecutive roots of A*B with the fixed sign pattern.
struct Piece {
  Rational sample;
  int sign_A = 0;
  int sign_B = 0;
  bool immediate = false;
};

struct SignCertificate {
  std::string label;
  RadicalForm expr;
  Interval interval;
  ClaimedSign claimed = ClaimedSign::positive;
  Method method = Method::sturm;
  // witness
  UniPoly witness_polynomial;
  int sturm_length = 0;
  std::vector<RootWitness> roots;
  std::vector<Piece> pieces;
  Rational sample;
  int sample_sign = 0;
  std::vector<Rational> equality_points;
  std::vector<std::string> notes;
  std::vector<SignCertificate> steps;
  Verdict verdict = Verdict::refuted;
  std::optional<Rational> counterexample;

  bool proven() const;  // this and every step proven
};

// Certifies the claimed sign of expr on the interval.  Zeros at closed
// endpoints are recorded as equality points when allow_endpoint_equality.
SignCertificate certify(std::string label, const RadicalForm& expr, const Interval& iv, ClaimedSign claim,
                        bool allow_endpoint_equality = false);
SignCertificate certify_polynomial(std::string label, const UniPoly& p, const Interval& iv, ClaimedSign claim,
                                   bool allow_endpoint_equality = false);

// Independent dense re-check at `count` deterministic rational points of the
// interval (equality points excluded).  Returns a violating point if any.
std::optional<Rational> resample(const SignCertificate& cert, int count = 1000);

void write_certificate(std::ostream& os, const SignCertificate& cert, int depth = 0);
std::string serialize(const SignCertificate& cert);

}  // namespace gradpde
