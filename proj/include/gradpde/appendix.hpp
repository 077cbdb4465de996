#pragma once

#include <map>
#include <string>
#include <vector>

#include "gradpde/bipoly.hpp"
#include "gradpde/certificate.hpp"
#include "gradpde/surd.hpp"

namespace gradpde {

// Quotient of two polynomials in h.
struct RationalFunction {
  UniPoly num;
  UniPoly den;
  Rational operator()(const Rational& h) const { return num(h) / den(h); }
};

// The tangency polynomials for one dimension N, h = (N-1)q.
struct AppendixPolynomials {
  int N = 0;
  UniPoly K;
  RationalFunction a;
  RationalFunction b;
  UniPoly M, P1, P2, Q1, Q2, Q3, Q4;
  // G~(p, h); equals G(p, h/(N-1)).
  BiPoly G_tilde;
  // (N-1) G~, the form with integer-like leading coefficient (N-1)((N-1)h+N-2).
  BiPoly G_display;

  std::map<std::string, UniPoly> named() const;
};

AppendixPolynomials build_appendix_polynomials(int N);

// Coefficients of T(m) = E(m, b p - a m) as c2 m^2 + c1 m + c0, each multiplied
// by 4 N L^2 with L = (N+1)h + N + 2 so that they are polynomial in (p, h).
struct TangencyQuadratic {
  BiPoly c2;
  BiPoly c1;
  BiPoly c0;
  UniPoly scale;  // 4 N L^2
};

TangencyQuadratic tangency_quadratic(const AppendixPolynomials& P);

// E(m, y) = K y^2 + 2(h+1)(m-1) y + m(m-1).
QuadSurd ellipse(const AppendixPolynomials& P, const Rational& h, const QuadSurd& m, const QuadSurd& y);

// J = B'^2 - A C of T(m) equals -(b^2/N) G~ as polynomials in (p, h).
bool discriminant_identity(int N);
bool discriminant_identity(const AppendixPolynomials& P);

// 2a(1+h) - 1 = 2bh/(N-1).
bool line_identity(const AppendixPolynomials& P);

struct TangencyData {
  Rational h;
  QuadSurd p0;
  QuadSurd m0;
  QuadSurd y0;
};

// Throws CertificationFailed if any tangency invariant fails exactly.
TangencyData tangency_data(int N, const Rational& h);
TangencyData tangency_data(const AppendixPolynomials& P, const Rational& h);

SignCertificate certify_m0_negative(int N);
SignCertificate certify_m0_negative(const AppendixPolynomials& P);
SignCertificate certify_m0_shift_positive(int N);
SignCertificate certify_m0_shift_positive(const AppendixPolynomials& P);
SignCertificate certify_sigma_condition(int N);
SignCertificate certify_sigma_condition(const AppendixPolynomials& P);

// M P2^2 - (N h + N - 1) Q2^2.
UniPoly m0_shift_reduction(const AppendixPolynomials& P);

// Q5'(0) > 0 reduces to positivity of this polynomial in N (variable 'N').
UniPoly q5_slope_polynomial();

struct InclusionCertificates {
  SignCertificate case_i;   // along p = (N+3-h)/(N-1), h in [0, 2(N-1)]
  SignCertificate case_ii;  // along Q = (p+1)^2/(p(N-1)), p in [0, 1]
};

InclusionCertificates region_inclusion_certificates(int N);
// (N-1) G~_disp((N+3-h)/(N-1), h), expected -(h+2)(h-2)(h-3) - 4N.
UniPoly inclusion_polynomial_i(const AppendixPolynomials& P);
// (N-1) p^2 G~_disp(p, h(p)) / (p+1)^2 in p.
UniPoly inclusion_polynomial_ii(const AppendixPolynomials& P);

// Sign of beta from y0 against 1.
int beta_sign(int N, const Rational& h);

struct AppendixResult {
  int N = 0;
  std::vector<SignCertificate> certificates;
  double seconds = 0.0;
  bool proven() const;
};

// Runs every certificate for each N (in parallel), results in input order.
std::vector<AppendixResult> run_appendix_suite(const std::vector<int>& dims);
// Throws CertificationFailed on the first refuted certificate.
void require_proven(const SignCertificate& cert);

}  // namespace gradpde
