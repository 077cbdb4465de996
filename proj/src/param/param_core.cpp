#include <cmath>
#include <sstream>

#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"

namespace gradpde {

ParamPoint::ParamPoint(int N_, Rational p_, Rational q_) : N(N_), p(std::move(p_)), q(std::move(q_)) {
  if (N < 2) throw DomainError("N must be >= 2");
  if (p < 0) throw DomainError("p must be >= 0");
  if (q < 0 || q > 2) throw DomainError("q must lie in [0, 2]");
}

ParamPoint ParamPoint::from_doubles(int N, double p, double q) { return ParamPoint(N, from_double(p), from_double(q)); }

std::string ParamPoint::str() const {
  std::ostringstream os;
  os << "(N=" << N << ", p=" << p.get_str() << ", q=" << q.get_str() << ")";
  return os.str();
}

DerivedScalars derived_exponents(const ParamPoint& pt) {
  Rational Q = pt.Q();
  if (Q <= 0) throw DomainError("p + q - 1 must be positive");
  if (pt.q >= 2) throw DomainError("q must be < 2");
  DerivedScalars d;
  d.Q_exact = Q;
  d.gamma_exact = (2 - pt.q) / Q;
  d.Q = Q.get_d();
  d.gamma = d.gamma_exact.get_d();
  Rational bracket = pt.N - (2 * pt.p + pt.q) / Q;
  d.sep_mu = Rational(d.gamma_exact * bracket).get_d();
  if ((pt.N - 2) * pt.p + (pt.N - 1) * pt.q > pt.N)
    d.lambda = std::pow(d.gamma, (1 - pt.qd()) / d.Q) * std::pow(bracket.get_d(), 1 / d.Q);
  return d;
}

double lambda_singular(const ParamPoint& pt) {
  DerivedScalars d = derived_exponents(pt);
  if (!d.lambda) throw NotSupercritical("(N-2)p + (N-1)q <= N: no singular solution " + pt.str());
  return *d.lambda;
}

Rational G_linear_coefficient(int N, const Rational& q) {
  return N * (N - 1) * q * q - (N * N + N - 1) * q - N - 2;
}

Rational G_value(int N, const Rational& p, const Rational& q) {
  Rational lead = (N - 1) * (N - 1) * q + N - 2;
  return lead * p * p + G_linear_coefficient(N, q) * p - N * q * q;
}

double G_value(int N, double p, double q) {
  double lead = (N - 1.0) * (N - 1.0) * q + N - 2.0;
  double b = N * (N - 1.0) * q * q - (N * N + N - 1.0) * q - N - 2.0;
  return lead * p * p + b * p - N * q * q;
}

QuadSurd p_c_exact(int N, const Rational& q) {
  if (N < 3) throw DomainError("p_c needs N >= 3");
  if (q < 0 || q > 2) throw DomainError("p_c needs 0 <= q <= 2");
  Rational lead = (N - 1) * (N - 1) * q + N - 2;
  Rational b = G_linear_coefficient(N, q);
  Rational disc = b * b + 4 * lead * N * q * q;
  Rational inv = 1 / (2 * lead);
  return QuadSurd(-b * inv, inv, disc);
}

double p_c(int N, double q) {
  if (N < 3) throw DomainError("p_c needs N >= 3");
  if (q < 0 || q > 2) throw DomainError("p_c needs 0 <= q <= 2");
  double lead = (N - 1.0) * (N - 1.0) * q + N - 2.0;
  double b = N * (N - 1.0) * q * q - (N * N + N - 1.0) * q - N - 2.0;
  double disc = b * b + 4 * lead * N * q * q;
  // stable form of the positive root
  if (b <= 0) return (-b + std::sqrt(disc)) / (2 * lead);
  return 2 * N * q * q / (b + std::sqrt(disc));
}

const char* to_string(ThmBCase c) {
  switch (c) {
    case ThmBCase::none: return "none";
    case ThmBCase::case_i: return "case_i";
    case ThmBCase::case_ii: return "case_ii";
  }
  return "none";
}

RegionReport classify(const ParamPoint& pt) {
  RegionReport r;
  const int N = pt.N;
  const Rational& p = pt.p;
  const Rational& q = pt.q;
  Rational Q = pt.Q();

  Rational crit = (N - 2) * p + (N - 1) * q;
  r.evaluated_lhs["(N-2)p+(N-1)q"] = crit.get_d();
  r.subcritical = crit < N;
  r.supercritical = crit > N;

  Rational G = G_value(N, p, q);
  r.evaluated_lhs["G(p,q)"] = G.get_d();
  r.liouville_C = q < 2 && G < 0;

  r.evaluated_lhs["p+q-1"] = Q.get_d();
  if (Q <= 0) r.notes.push_back("p + q - 1 <= 0: Bernstein and separable conditions not applicable");
  if (Q > 0 && q < 2) {
    if (p >= 1 && Q * (N - 1) < 4) r.thmB_case = ThmBCase::case_i;
    if (p < 1) {
      if (p == 0) {
        r.thmB_case = ThmBCase::case_ii;
      } else {
        Rational bound = (p + 1) * (p + 1) / (p * (N - 1));
        r.evaluated_lhs["(p+1)^2/(p(N-1))"] = bound.get_d();
        if (Q < bound) r.thmB_case = ThmBCase::case_ii;
      }
    }
  }

  if (q < 1) {
    Rational lhs = p * (N - 2) + q * (N - 1) - N - (2 - q) / (1 - q);
    r.evaluated_lhs["p(N-2)+q(N-1)-N-(2-q)/(1-q)"] = lhs.get_d();
    r.radial_ground_state = lhs >= 0;
  } else {
    r.notes.push_back("q >= 1: radial ground states excluded");
  }

  Rational e = p * (N - 3) + q * (N - 2);
  r.evaluated_lhs["p(N-3)+q(N-2)"] = e.get_d();
  r.thmE_hypothesis = Q > 0 && q < 2 && e < N - 1;
  return r;
}

IntegralExponents integral_exponents(const ParamPoint& pt, const Rational& m) {
  const int N = pt.N;
  const Rational& p = pt.p;
  const Rational& q = pt.q;
  Rational Q = pt.Q();
  if (Q <= 0) throw DomainError("p + q - 1 must be positive");
  IntegralExponents x;
  x.e = (N - 1) * q / 2;
  Rational num = (2 - q) * m + 2 * ((2 + x.e) * p + q + x.e);
  x.kappa = num / Q;
  x.sigma = x.kappa / 2;
  x.Y = (2 - q) * m + (N - 1) * p * q + 4 * p + (N + 1) * q;
  x.X = (1 - m) * (q - 1) + (N - 1) * p * q + 3 * p;
  x.inv_t_F = (m + 2 * x.e + 2) / num;
  x.inv_theta_F = ((1 - m) * (q - 1) + (3 + 2 * x.e) * p) / num;
  x.inv_theta_R = (m * (1 - q) + 2 * (x.e + 1) * p) / x.Y;
  x.inv_t_R = (m + p + q + 1 + 2 * x.e) / x.Y;
  x.inv_theta_M = x.inv_theta_R;
  x.inv_t_M = (m + 2 + 2 * x.e) / x.Y;
  x.m_admissible = m > -2 - (N - 1) * q && m < 0;
  x.kappa_exceeds_N = x.kappa > N;
  x.condition_kappa = (2 - q) * (m + 2 + (N - 1) * q) > Q * (N - 4 - (N - 1) * q);
  return x;
}

}  // namespace gradpde
