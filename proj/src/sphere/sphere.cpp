#include "gradpde/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"

namespace gradpde {

namespace {

constexpr double pi = std::numbers::pi;

void check_grid_args(int n, int M) {
  if (n < 1) throw DomainError("sphere dimension n must be >= 1");
  if (M < 5) throw DomainError("sphere grid needs at least 5 nodes");
}

// Three-point stencil weights at interior node i: w' = a w[i-1] + b w[i] + c w[i+1], w'' likewise.
struct Stencil {
  double d1m, d10, d1p;
  double d2m, d20, d2p;
};

Stencil stencil(const SphereGrid& g, int i) {
  double hm = g.theta[i] - g.theta[i - 1];
  double hp = g.theta[i + 1] - g.theta[i];
  double s = hm + hp;
  Stencil st;
  st.d1m = -hp / (hm * s);
  st.d1p = hm / (hp * s);
  st.d10 = (hp - hm) / (hm * hp);
  st.d2m = 2 / (hm * s);
  st.d2p = 2 / (hp * s);
  st.d20 = -2 / (hm * hp);
  return st;
}

struct Nonlinearity {
  double F, dFdw, dFdwp;
};

Nonlinearity nonlinearity(double w, double wp, double gamma, double p, double q) {
  double S = gamma * gamma * w * w + wp * wp;
  double aw = std::abs(w);
  double wpow = aw == 0 ? 0 : std::pow(aw, p - 1) * w;
  double Sq = q == 0 ? 1.0 : std::pow(S, q / 2);
  Nonlinearity out;
  out.F = wpow * Sq;
  double dpow = aw == 0 ? (p == 1 ? 1.0 : 0.0) : p * std::pow(aw, p - 1);
  double dSq = (q == 0 || S == 0) ? 0.0 : (q / 2) * std::pow(S, q / 2 - 1);
  out.dFdw = dpow * Sq + wpow * dSq * 2 * gamma * gamma * w;
  out.dFdwp = wpow * dSq * 2 * wp;
  return out;
}

void check_profile(const SphereProfile& pr) {
  if (pr.omega.size() != pr.grid.size()) throw DomainError("profile size does not match grid");
}

}  // namespace

SphereGrid SphereGrid::uniform(int n, int M) {
  check_grid_args(n, M);
  SphereGrid g;
  g.n = n;
  g.kind = GridKind::uniform;
  g.theta.resize(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) g.theta[i] = pi * i / (M - 1);
  g.theta.back() = pi;
  return g;
}

SphereGrid SphereGrid::chebyshev(int n, int M) {
  check_grid_args(n, M);
  SphereGrid g;
  g.n = n;
  g.kind = GridKind::chebyshev;
  g.theta.resize(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) g.theta[i] = pi * (1 - std::cos(pi * i / (M - 1))) / 2;
  g.theta.front() = 0;
  g.theta.back() = pi;
  return g;
}

Eigen::VectorXd SphereGrid::weights() const {
  int M = size();
  Eigen::VectorXd w(M);
  for (int i = 0; i < M; ++i) {
    double left = i > 0 ? theta[i] - theta[i - 1] : 0.0;
    double right = i + 1 < M ? theta[i + 1] - theta[i] : 0.0;
    w[i] = std::pow(std::sin(theta[i]), n - 1) * (left + right) / 2;
  }
  if (n == 1) return w;
  w[0] = 0;
  w[M - 1] = 0;
  return w;
}

SphereGrid SphereGrid::reflected() const {
  SphereGrid g = *this;
  int M = size();
  for (int i = 0; i < M; ++i) g.theta[i] = pi - theta[M - 1 - i];
  g.theta.front() = 0;
  g.theta.back() = pi;
  return g;
}

SphereProfile SphereProfile::constant(const SphereGrid& g, double value, double mu, double gamma, double p,
                                      double q) {
  SphereProfile pr;
  pr.grid = g;
  pr.omega = Eigen::VectorXd::Constant(g.size(), value);
  pr.mu = mu;
  pr.gamma_par = gamma;
  pr.p = p;
  pr.q = q;
  return pr;
}

SphereProfile SphereProfile::reflected() const {
  SphereProfile pr = *this;
  pr.grid = grid.reflected();
  pr.omega = omega.reverse();
  return pr;
}

double constant_solution(int n, double p, double q, double gamma_par, double mu) {
  if (n < 1) throw DomainError("sphere dimension n must be >= 1");
  if (!(mu > 0) || !(gamma_par > 0)) throw DomainError("constant solution needs mu, gamma > 0");
  if (!(p + q - 1 > 0)) throw DomainError("constant solution needs p + q - 1 > 0");
  return std::pow(mu / std::pow(gamma_par, q), 1 / (p + q - 1));
}

Eigen::VectorXd theta_derivative(const SphereGrid& g, const Eigen::VectorXd& w) {
  int M = g.size();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(M);
  for (int i = 1; i + 1 < M; ++i) {
    Stencil st = stencil(g, i);
    d[i] = st.d1m * w[i - 1] + st.d10 * w[i] + st.d1p * w[i + 1];
  }
  return d;
}

Eigen::VectorXd azimuthal_residual(const SphereProfile& pr) {
  check_profile(pr);
  const SphereGrid& g = pr.grid;
  int M = g.size();
  int n = g.n;
  const Eigen::VectorXd& w = pr.omega;
  Eigen::VectorXd r(M);
  for (int i = 0; i < M; ++i) {
    double lap;
    double wp = 0;
    if (i == 0 || i == M - 1) {
      int j = i == 0 ? 1 : M - 2;
      double h = std::abs(g.theta[j] - g.theta[i]);
      lap = n * 2 * (w[j] - w[i]) / (h * h);
    } else {
      Stencil st = stencil(g, i);
      wp = st.d1m * w[i - 1] + st.d10 * w[i] + st.d1p * w[i + 1];
      double wpp = st.d2m * w[i - 1] + st.d20 * w[i] + st.d2p * w[i + 1];
      lap = wpp + (n - 1) * std::cos(g.theta[i]) / std::sin(g.theta[i]) * wp;
    }
    r[i] = -lap + pr.mu * w[i] - nonlinearity(w[i], wp, pr.gamma_par, pr.p, pr.q).F;
  }
  return r;
}

Eigen::MatrixXd azimuthal_jacobian(const SphereProfile& pr) {
  check_profile(pr);
  const SphereGrid& g = pr.grid;
  int M = g.size();
  int n = g.n;
  const Eigen::VectorXd& w = pr.omega;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    if (i == 0 || i == M - 1) {
      int j = i == 0 ? 1 : M - 2;
      double h = std::abs(g.theta[j] - g.theta[i]);
      double c = 2.0 * n / (h * h);
      Nonlinearity nl = nonlinearity(w[i], 0, pr.gamma_par, pr.p, pr.q);
      J(i, i) = c + pr.mu - nl.dFdw;
      J(i, j) = -c;
      continue;
    }
    Stencil st = stencil(g, i);
    double wp = st.d1m * w[i - 1] + st.d10 * w[i] + st.d1p * w[i + 1];
    double cot = (n - 1) * std::cos(g.theta[i]) / std::sin(g.theta[i]);
    Nonlinearity nl = nonlinearity(w[i], wp, pr.gamma_par, pr.p, pr.q);
    double k1 = -cot - nl.dFdwp;
    J(i, i - 1) = -st.d2m + k1 * st.d1m;
    J(i, i) = -st.d20 + k1 * st.d10 + pr.mu - nl.dFdw;
    J(i, i + 1) = -st.d2p + k1 * st.d1p;
  }
  return J;
}

SphereProfile newton_solve(const SphereProfile& initial, double tol, const NewtonOptions& opt) {
  check_profile(initial);
  if (initial.omega.size() == 0 || initial.omega.minCoeff() <= 0)
    throw DomainError("newton_solve needs a strictly positive initial profile");
  SphereProfile cur = initial;
  Eigen::VectorXd r = azimuthal_residual(cur);
  double norm = r.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (!std::isfinite(norm)) break;
    if (norm <= tol) return cur;
    Eigen::VectorXd delta = azimuthal_jacobian(cur).partialPivLu().solve(-r);
    double alpha = 1;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, alpha /= 2) {
      SphereProfile trial = cur;
      trial.omega += alpha * delta;
      if (trial.omega.minCoeff() <= 0) continue;
      Eigen::VectorXd rt = azimuthal_residual(trial);
      double nt = rt.lpNorm<Eigen::Infinity>();
      if (std::isfinite(nt) && (nt < norm || k == 29)) {
        cur = std::move(trial);
        r = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (norm <= tol) return cur;
  throw NoConvergence("Newton did not reach residual " + std::to_string(tol) + " (last " + std::to_string(norm) +
                      ")");
}

Spectrum linearized_spectrum(const SphereProfile& pr, int k) {
  Eigen::MatrixXd J = azimuthal_jacobian(pr);
  Eigen::EigenSolver<Eigen::MatrixXd> es(J, true);
  if (es.info() != Eigen::Success) throw NoConvergence("eigenvalue solver failed");
  int M = static_cast<int>(J.rows());
  std::vector<int> order(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) order[i] = i;
  const auto& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ev[a].real() < ev[b].real(); });
  Spectrum out;
  int count = std::clamp(k, 0, M);
  for (int j = 0; j < count; ++j) {
    int idx = order[j];
    out.values.push_back(ev[idx].real());
    out.max_imag = std::max(out.max_imag, std::abs(ev[idx].imag()));
    Eigen::VectorXd v = es.eigenvectors().col(idx).real();
    double nv = v.norm();
    if (nv > 0) v /= nv;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

double weighted_mean(const SphereGrid& g, const Eigen::VectorXd& w) {
  Eigen::VectorXd q = g.weights();
  return q.dot(w) / q.sum();
}

static Eigen::VectorXd cos_nodes(const SphereGrid& g) {
  Eigen::VectorXd c(g.size());
  for (int i = 0; i < g.size(); ++i) c[i] = std::cos(g.theta[i]);
  return c;
}

double branch_amplitude(const SphereProfile& pr) {
  const SphereGrid& g = pr.grid;
  Eigen::VectorXd q = g.weights();
  Eigen::VectorXd c = cos_nodes(g);
  double mean = q.dot(pr.omega) / q.sum();
  Eigen::VectorXd d = pr.omega.array() - mean;
  return (q.array() * d.array() * c.array()).sum() / (q.array() * c.array() * c.array()).sum();
}

double cos_correlation(const SphereGrid& g, const Eigen::VectorXd& v) {
  Eigen::VectorXd q = g.weights();
  Eigen::VectorXd c = cos_nodes(g);
  double vc = (q.array() * v.array() * c.array()).sum();
  double vv = (q.array() * v.array() * v.array()).sum();
  double cc = (q.array() * c.array() * c.array()).sum();
  if (vv == 0) return 0;
  return std::abs(vc) / std::sqrt(vv * cc);
}

double bifurcation_mu(int n, double p, double q, double gamma_par, int M) {
  double Q = p + q - 1;
  if (!(Q > 0)) throw DomainError("bifurcation needs p + q - 1 > 0");
  SphereGrid g = SphereGrid::uniform(n, M);
  auto first_nontrivial = [&](double mu) {
    double w = constant_solution(n, p, q, gamma_par, mu);
    return linearized_spectrum(SphereProfile::constant(g, w, mu, gamma_par, p, q), 2).values[1];
  };
  double mu_star = n / Q;
  double a = 0.9 * mu_star, b = 1.1 * mu_star;
  double fa = first_nontrivial(a), fb = first_nontrivial(b);
  for (int it = 0; it < 60; ++it) {
    if (fb == fa) break;
    double c = b - fb * (b - a) / (fb - fa);
    a = b;
    fa = fb;
    b = c;
    fb = first_nontrivial(b);
    if (std::abs(b - a) <= 1e-14 * std::abs(b)) return b;
  }
  if (std::abs(fb) < 1e-10) return b;
  throw NoConvergence("eigenvalue crossing search did not converge");
}

double richardson_extrapolate(const std::vector<double>& h, const std::vector<double>& mu) {
  if (h.size() != 3 || mu.size() != 3) throw DomainError("Richardson fit needs exactly three samples");
  Eigen::Matrix3d A;
  Eigen::Vector3d b;
  for (int i = 0; i < 3; ++i) {
    double h2 = h[i] * h[i];
    A(i, 0) = 1;
    A(i, 1) = h2;
    A(i, 2) = h2 * h2;
    b[i] = mu[i];
  }
  return A.fullPivLu().solve(b)[0];
}

BoundReport bound_checks(const SphereProfile& pr, double rel_tol) {
  check_profile(pr);
  int n = pr.grid.n;
  BoundReport rep;
  rep.min_omega = pr.omega.minCoeff();
  rep.max_omega = pr.omega.maxCoeff();
  rep.omega_mu = constant_solution(n, pr.p, pr.q, pr.gamma_par, pr.mu);
  double e = pr.p + pr.q;
  Eigen::VectorXd wq = pr.grid.weights();
  double integral = (wq.array() * pr.omega.array().abs().pow(e)).sum();
  rep.lpq_norm = std::pow(integral / wq.sum(), 1 / e);
  rep.lpq_bound = rep.omega_mu;
  double slack = rel_tol * rep.omega_mu;
  rep.sandwich = rep.min_omega <= rep.omega_mu + slack && rep.omega_mu <= rep.max_omega + slack;
  rep.integral = rep.lpq_norm <= rep.lpq_bound + slack;
  rep.strict = rep.min_omega < rep.omega_mu - slack && rep.omega_mu < rep.max_omega - slack &&
               rep.lpq_norm < rep.lpq_bound - slack;
  if (!rep.sandwich)
    throw BoundViolation("min/max bound fails: min " + std::to_string(rep.min_omega) + ", max " +
                         std::to_string(rep.max_omega) + ", constant level " + std::to_string(rep.omega_mu));
  if (!rep.integral)
    throw BoundViolation("integral bound fails: norm " + std::to_string(rep.lpq_norm) + " > " +
                         std::to_string(rep.lpq_bound));
  return rep;
}

const char* to_string(RigidityVerdict v) { return v == RigidityVerdict::constant ? "constant" : "not_applicable"; }

RigidityReport rigidity_test(const SphereProfile& pr, double solver_tol) {
  check_profile(pr);
  Eigen::VectorXd d = theta_derivative(pr.grid, pr.omega);
  Eigen::VectorXd mag =
      (pr.gamma_par * pr.gamma_par * pr.omega.array().square() + d.array().square()).sqrt();
  RigidityReport rep;
  rep.c1 = mag.maxCoeff();
  rep.c2 = mag.minCoeff();
  double mean = weighted_mean(pr.grid, pr.omega);
  rep.deviation = (pr.omega.array() - mean).abs().maxCoeff();
  if (!rigidity_criterion(pr.grid.n + 1, pr.p, pr.q, pr.gamma_par, pr.mu, rep.c1, rep.c2)) return rep;
  rep.verdict = RigidityVerdict::constant;
  if (rep.deviation > 10 * solver_tol)
    throw TheoremViolation("rigidity criterion holds but the profile deviates by " +
                           std::to_string(rep.deviation) + " from its mean");
  return rep;
}

void write_profile_csv(std::ostream& os, const SphereProfile& pr) {
  Eigen::VectorXd r = azimuthal_residual(pr);
  os.precision(17);
  os << "theta,omega,residual\n";
  for (int i = 0; i < pr.grid.size(); ++i) os << pr.grid.theta[i] << ',' << pr.omega[i] << ',' << r[i] << '\n';
}

void write_branch_csv(std::ostream& os, const ContinuationTrace& trace) {
  os.precision(17);
  os << "mu,s,min_omega,max_omega,smallest_eig\n";
  for (const auto& b : trace.points)
    os << b.mu << ',' << b.s << ',' << b.profile.omega.minCoeff() << ',' << b.profile.omega.maxCoeff() << ','
       << b.stability_indicator << '\n';
}

}  // namespace gradpde
