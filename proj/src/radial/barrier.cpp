#include <cmath>

#include "gradpde/errors.hpp"
#include "gradpde/radial.hpp"

namespace gradpde {

double keller_osserman_requirement(int N, double alpha, double qbar, double R, double rho) {
  if (N < 1 || !(alpha > 0) || !(qbar > 1) || !(R > 0)) throw DomainError("barrier needs N >= 1, alpha > 0, qbar > 1, R > 0");
  double s = alpha * (qbar - 1);
  double k = 2 / s;
  double logC = std::log(R * R * alpha) / s;  // amplitude at c = 1
  double w = R * R - rho * rho;
  double bracket = 2 * N * w + 4 * (k + 1) * rho * rho;
  if (w <= 0) {
    // limit rho -> R: both sides scale like w^(-k-2)
    return std::pow(alpha * k * bracket * std::exp(-s * logC), 1 / s);
  }
  // -Lap psi_1 = -C k w^(-k-2) bracket, nonlinear term (1/alpha) C^(s+1) w^(-k(s+1))
  double log_lap = logC + std::log(k) + (-k - 2) * std::log(w) + std::log(bracket);
  double log_nl = (s + 1) * (logC - k * std::log(w)) - std::log(alpha);
  return std::exp((log_lap - log_nl) / s);
}

double keller_osserman_barrier(int N, double alpha, double qbar, double R) {
  const int grid = 2000;
  auto req = [&](double rho) { return keller_osserman_requirement(N, alpha, qbar, R, rho); };
  int best = 0;
  double best_v = -1;
  for (int i = 0; i <= grid; ++i) {
    double v = req(R * i / grid);
    if (!std::isfinite(v)) throw SearchFailure("barrier requirement not finite");
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = R * std::max(best - 1, 0) / grid, b = R * std::min(best + 1, grid) / grid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = req(x1), f2 = req(x2);
  for (int it = 0; it < 200 && b - a > 1e-14 * R; ++it) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = req(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = req(x2);
    }
  }
  double c = std::max({best_v, f1, f2});
  if (!(c <= 1e12)) throw SearchFailure("no barrier constant c <= 1e12");
  return c;
}

}  // namespace gradpde
