#include <cmath>

#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"

namespace gradpde {

Rational d2(const ParamPoint& pt, const Rational& S, const Rational& ell) {
  Rational Q = pt.Q();
  return (pt.N * Q / 4 - 1) * S * S + (pt.p - 1 - Q * ell) * S + Q * ell * ell + pt.p;
}

namespace {

// T(S) = D2(S, S/2)
Rational tee(const ParamPoint& pt, const Rational& S) {
  Rational Q = pt.Q();
  return ((pt.N - 1) * Q / 4 - 1) * S * S - (1 - pt.p) * S + pt.p;
}

BernsteinChoice finish(const ParamPoint& pt, const Rational& S, const Rational& ell) {
  Rational Q = pt.Q();
  BernsteinChoice b;
  b.S = S;
  b.ell = ell;
  b.lambda_b = 2 * ell / (1 - ell);
  b.beta = (1 - pt.q - S) * (b.lambda_b + 2) / (2 * Q);
  b.a = Q / (S + pt.q - 1);
  b.d2_value = d2(pt, S, ell);
  if (!(S > 0 && S > 1 - pt.q)) throw Error("Bernstein choice: S <= max(0, 1-q) at " + pt.str());
  if (ell == 1) throw Error("Bernstein choice: l = 1 at " + pt.str());
  if (!(b.a > 0)) throw Error("Bernstein choice: a <= 0 at " + pt.str());
  if (!(b.d2_value < 0)) throw Error("Bernstein choice: D2 >= 0 at " + pt.str());
  return b;
}

}  // namespace

BernsteinChoice theorem_b_parameters(const ParamPoint& pt) {
  RegionReport r = classify(pt);
  if (r.thmB_case == ThmBCase::none) throw OutsideRegion("Bernstein hypotheses (i)/(ii) fail at " + pt.str());
  Rational Q = pt.Q();
  Rational w = (pt.N - 1) * Q - 4;  // sign of Q - 4/(N-1)
  if (w < 0) {
    Rational S(4);
    while (tee(pt, S) >= 0) S *= 2;
    return finish(pt, S, S / 2);
  }
  if (w == 0) {
    Rational base = pt.p / (1 - pt.p);
    Rational S = (base > 2 ? base : Rational(2)) + 1;
    return finish(pt, S, S / 2);
  }
  Rational S = 2 * (1 - pt.p) / w;
  Rational ell = S / 2;
  if (ell == 1) {
    Rational d = (pt.p - 1) * (pt.p - 1) - pt.p * w;
    Rational limit = d / (Q * w);
    Rational eps(1);
    int k = 0;
    while (!(eps * eps < limit)) {
      if (++k > 40) throw Error("Bernstein choice: no dyadic perturbation at " + pt.str());
      eps /= 2;
    }
    ell += eps;
  }
  return finish(pt, S, ell);
}

double rigidity_cstar(double p, double q, double c1, double c2) {
  if (p >= 1) return c1;
  double Q = p + q - 1;
  return std::pow(c2, (p - 1) / Q) * std::pow(c1, q / Q);
}

bool rigidity_criterion(int N, double p, double q, double gamma, double mu, double c1, double c2) {
  double Q = p + q - 1;
  if (!(gamma > 0 && mu > 0)) throw DomainError("rigidity needs gamma, mu > 0");
  if (!(Q > 0)) throw DomainError("rigidity needs p + q - 1 > 0");
  if (!(c1 > 0)) throw DomainError("rigidity needs c1 > 0");
  if (p < 1 && !(c2 > 0 && c1 >= c2)) throw DomainError("rigidity needs c1 >= c2 > 0 when p < 1");
  double n = N - 1.0;
  double cstar = rigidity_cstar(p, q, c1, c2);
  double lhs = std::pow(cstar, Q);
  double rhs = 2 * (n + mu) / (q * std::pow(gamma, -p) * std::sqrt(n) + 2 * (p + q) * std::pow(gamma, 1 - p));
  return lhs <= rhs;
}

}  // namespace gradpde
