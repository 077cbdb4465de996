#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradpde/rational.hpp"
#include "gradpde/surd.hpp"

namespace gradpde {

// Exponents of -Lap u = u^p |grad u|^q in dimension N, held exactly.
struct ParamPoint {
  int N = 3;
  Rational p;
  Rational q;

  ParamPoint() = default;
  // Throws DomainError when N < 2, p < 0 or q outside [0, 2].
  ParamPoint(int N, Rational p, Rational q);
  static ParamPoint from_doubles(int N, double p, double q);

  Rational Q() const { return p + q - 1; }  // p + q - 1
  double pd() const { return p.get_d(); }
  double qd() const { return q.get_d(); }
  std::string str() const;
};

struct DerivedScalars {
  double gamma = 0;
  double Q = 0;
  std::optional<double> lambda;
  double sep_mu = 0;
  Rational gamma_exact;
  Rational Q_exact;
};

// gamma = (2-q)/(p+q-1), sep_mu = gamma (N - (2p+q)/(p+q-1)).
DerivedScalars derived_exponents(const ParamPoint& pt);
// Amplitude of the singular solution Lambda |x|^-gamma; NotSupercritical
// unless (N-2)p + (N-1)q > N.
double lambda_singular(const ParamPoint& pt);

// G(p, q) = ((N-1)^2 q + N-2) p^2 + b(q) p - N q^2.
Rational G_value(int N, const Rational& p, const Rational& q);
double G_value(int N, double p, double q);
Rational G_linear_coefficient(int N, const Rational& q);

// Positive root of p -> G(p, q).
QuadSurd p_c_exact(int N, const Rational& q);
double p_c(int N, double q);

enum class ThmBCase { none, case_i, case_ii };
const char* to_string(ThmBCase c);

struct RegionReport {
  bool subcritical = false;
  bool supercritical = false;
  ThmBCase thmB_case = ThmBCase::none;
  bool liouville_C = false;
  bool radial_ground_state = false;
  bool thmE_hypothesis = false;
  std::map<std::string, double> evaluated_lhs;
  std::vector<std::string> notes;
};

RegionReport classify(const ParamPoint& pt);

struct BernsteinChoice {
  Rational S;
  Rational ell;
  Rational lambda_b;
  Rational beta;
  Rational a;
  Rational d2_value;
};

// D2(S, l) = (NQ/4 - 1) S^2 + (p - 1 - Q l) S + Q l^2 + p.
Rational d2(const ParamPoint& pt, const Rational& S, const Rational& ell);
// OutsideRegion unless case (i) or (ii) holds.
BernsteinChoice theorem_b_parameters(const ParamPoint& pt);

// c_* as in the rigidity statement and the test c_*^Q <= 2(n+mu)/(q g^-p sqrt(n) + 2(p+q) g^(1-p)),
// with n = N-1.
double rigidity_cstar(double p, double q, double c1, double c2);
bool rigidity_criterion(int N, double p, double q, double gamma, double mu, double c1, double c2);

// Exponent bookkeeping of the integral Bernstein estimate, e = (N-1)q/2.
struct IntegralExponents {
  Rational e;
  Rational kappa;  // = 2 sigma
  Rational sigma;
  Rational Y;
  Rational X;
  Rational inv_t_F, inv_theta_F;  // absorption of the main terms
  Rational inv_t_R, inv_theta_R;  // absorption of R
  Rational inv_t_M, inv_theta_M;  // absorption of M
  bool m_admissible = false;      // -2 - (N-1)q < m < 0
  bool kappa_exceeds_N = false;
  bool condition_kappa = false;   // (2-q)(m+2+(N-1)q) > Q(N-4-(N-1)q)
};

IntegralExponents integral_exponents(const ParamPoint& pt, const Rational& m);

}  // namespace gradpde
