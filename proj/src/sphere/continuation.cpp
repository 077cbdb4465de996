#include <cmath>
#include <string>

#include "gradpde/errors.hpp"
#include "gradpde/sphere.hpp"

namespace gradpde {

namespace {

struct State {
  Eigen::VectorXd omega;
  double mu = 0;
};

struct Metric {
  Eigen::VectorXd w;  // normalised quadrature weights

  double dot(const State& a, const State& b) const {
    return (w.array() * a.omega.array() * b.omega.array()).sum() + a.mu * b.mu;
  }
  double norm(const State& a) const { return std::sqrt(dot(a, a)); }
};

State diff(const State& a, const State& b) { return {a.omega - b.omega, a.mu - b.mu}; }

State scaled(const State& a, double s) { return {a.omega * s, a.mu * s}; }

SphereProfile as_profile(const SphereProfile& base, const State& x) {
  SphereProfile pr = base;
  pr.omega = x.omega;
  pr.mu = x.mu;
  return pr;
}

// Newton on R(x) = 0 with the arclength row <T, x - x0> = ds.
std::optional<State> correct(const SphereProfile& base, const Metric& g, const State& x0, const State& T, double ds,
                             State x, double tol) {
  int M = static_cast<int>(x.omega.size());
  for (int it = 0; it < 30; ++it) {
    if (x.omega.minCoeff() <= 0) return std::nullopt;
    SphereProfile pr = as_profile(base, x);
    Eigen::VectorXd r = azimuthal_residual(pr);
    double arc = g.dot(T, diff(x, x0)) - ds;
    if (!std::isfinite(r.lpNorm<Eigen::Infinity>())) return std::nullopt;
    if (r.lpNorm<Eigen::Infinity>() <= tol && std::abs(arc) <= tol) return x;
    Eigen::MatrixXd A(M + 1, M + 1);
    A.topLeftCorner(M, M) = azimuthal_jacobian(pr);
    A.topRightCorner(M, 1) = x.omega;
    A.bottomLeftCorner(1, M) = (g.w.array() * T.omega.array()).matrix().transpose();
    A(M, M) = T.mu;
    Eigen::VectorXd rhs(M + 1);
    rhs.head(M) = -r;
    rhs[M] = -arc;
    Eigen::VectorXd d = A.partialPivLu().solve(rhs);
    if (!d.allFinite()) return std::nullopt;
    x.omega += d.head(M);
    x.mu += d[M];
  }
  return std::nullopt;
}

BranchPoint make_point(const SphereProfile& pr) {
  BranchPoint b;
  b.mu = pr.mu;
  b.s = branch_amplitude(pr);
  b.profile = pr;
  b.stability_indicator = linearized_spectrum(pr, 1).values.front();
  b.residual = azimuthal_residual(pr).lpNorm<Eigen::Infinity>();
  return b;
}

}  // namespace

ContinuationTrace continue_branch(int n, double p, double q, double gamma_par, int steps,
                                  const ContinuationOptions& opt) {
  double Q = p + q - 1;
  if (!(Q > 0)) throw DomainError("continuation needs p + q - 1 > 0");
  if (!(gamma_par > 0)) throw DomainError("continuation needs gamma > 0");
  if (steps < 0) throw DomainError("negative step count");
  SphereGrid grid =
      opt.kind == GridKind::uniform ? SphereGrid::uniform(n, opt.M) : SphereGrid::chebyshev(n, opt.M);
  double mu_star = n / Q;
  double w_star = constant_solution(n, p, q, gamma_par, mu_star);
  SphereProfile base = SphereProfile::constant(grid, w_star, mu_star, gamma_par, p, q);

  Metric g{grid.weights()};
  g.w /= g.w.sum();

  ContinuationTrace trace;
  trace.points.push_back(make_point(base));

  State x0{base.omega, mu_star};
  State T{Eigen::VectorXd(grid.size()), 0};
  for (int i = 0; i < grid.size(); ++i) T.omega[i] = std::cos(grid.theta[i]);
  T = scaled(T, (opt.direction < 0 ? -1.0 : 1.0) / g.norm(T));

  double ds0 = opt.ds > 0 ? opt.ds : 1e-2 * w_star;
  double ds = ds0;
  std::optional<double> last_mu_slope;
  for (int k = 0; k < steps; ++k) {
    std::optional<State> x;
    int halvings = 0;
    for (; halvings <= opt.max_halvings; ++halvings, ds /= 2) {
      State pred{x0.omega + ds * T.omega, x0.mu + ds * T.mu};
      x = correct(base, g, x0, T, ds, pred, opt.tol);
      if (x) break;
    }
    if (!x) {
      trace.stop_reason = "NoConvergence: corrector failed after " + std::to_string(opt.max_halvings) +
                          " step halvings at mu = " + std::to_string(x0.mu);
      return trace;
    }
    State secant = diff(*x, x0);
    State Tn = scaled(secant, 1 / g.norm(secant));
    if (last_mu_slope && k >= 2 && (*last_mu_slope) * Tn.mu < 0) {
      trace.points.push_back(make_point(as_profile(base, *x)));
      trace.stop_reason = "FoldDetected: mu turns back near mu = " + std::to_string(x->mu);
      return trace;
    }
    last_mu_slope = Tn.mu;
    trace.points.push_back(make_point(as_profile(base, *x)));
    x0 = *x;
    T = Tn;
    if (halvings == 0) ds = std::min(ds * 1.5, ds0);
  }
  return trace;
}

}  // namespace gradpde
