#include "gradpde/radial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "gradpde/errors.hpp"

namespace gradpde {

const char* to_string(TerminalEvent e) {
  switch (e) {
    case TerminalEvent::none: return "none";
    case TerminalEvent::crossing: return "crossing";
    case TerminalEvent::reached_rmax: return "reached_rmax";
  }
  return "none";
}

const char* to_string(ShootingClass c) {
  switch (c) {
    case ShootingClass::ground_state: return "ground_state";
    case ShootingClass::crossing: return "crossing";
    case ShootingClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RadialState RadialTrajectory::at(double r) const {
  if (segments.empty() || r < r_begin() || r > r_end()) throw DomainError("radius outside the trajectory");
  auto it = std::lower_bound(segments.begin(), segments.end(), r,
                             [](const RadialSegment& s, double x) { return s.t1() < x; });
  if (it == segments.end()) --it;
  auto y = it->eval(r);
  return {r, y[0], y[1]};
}

static double source(double u, double du, double p, double q) {
  double up = u > 0 ? std::pow(u, p) : 0.0;
  return up * std::pow(std::abs(du), q);
}

double radial_defect(const ParamPoint& pt, double r, double u, double du, double d2u) {
  return d2u + (pt.N - 1) * du / r + source(u, du, pt.pd(), pt.qd());
}

static void require_series(const ParamPoint& pt) {
  if (pt.q >= 1) throw DomainError("radial shooting needs q < 1 (only constants otherwise)");
}

double default_series_eps(const ParamPoint& pt, double a) {
  double Q = pt.Q().get_d();
  return 1e-6 * std::pow(a, -Q / (2 - pt.qd()));
}

RadialState series_start(const ParamPoint& pt, double a, double eps) {
  require_series(pt);
  if (!(a > 0)) throw DomainError("initial value a must be positive");
  if (!(eps > 0)) throw DomainError("series offset must be positive");
  double q = pt.qd(), p = pt.pd();
  double alpha = 1 / (1 - q);
  double A = std::pow(std::pow(a, p) / (alpha + pt.N - 1), 1 / (1 - q));
  return {eps, a - A * std::pow(eps, alpha + 1) / (alpha + 1), -A * std::pow(eps, alpha)};
}

double series_start_residual(const ParamPoint& pt, double a, const RadialState& s) {
  require_series(pt);
  double q = pt.qd(), p = pt.pd();
  double alpha = 1 / (1 - q);
  double A = std::pow(std::pow(a, p) / (alpha + pt.N - 1), 1 / (1 - q));
  double d2u = -A * alpha * std::pow(s.r, alpha - 1);
  return std::abs(radial_defect(pt, s.r, s.u, s.du, d2u));
}

RadialTrajectory integrate_radial(const ParamPoint& pt, const RadialState& start, double r_max, double tol,
                                  const IntegrateOptions& opt) {
  if (!(start.r > 0)) throw DomainError("integration must start at r > 0");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (!(start.u > 0)) throw DomainError("initial value must be positive");
  if (!(r_max > start.r)) throw DomainError("r_max must exceed the start radius");
  const int N = pt.N;
  const double p = pt.pd(), q = pt.qd();
  using DP = DormandPrince<2>;
  DP solver([=](double r, const DP::State& y) -> DP::State {
    return {y[1], -(N - 1) * y[1] / r - source(y[0], y[1], p, q)};
  });

  RadialTrajectory traj;
  traj.params = pt;
  traj.samples.push_back(start);
  traj.residuals.push_back(0.0);

  DP::Options o;
  o.rtol = tol;
  o.atol = tol;
  o.max_steps = opt.max_steps;
  o.hmax_rel = 0.05;
  if (opt.fixed_step) {
    if (!(opt.h > 0)) throw DomainError("fixed step needs h > 0");
    o.fixed = true;
    o.h0 = opt.h;
  }

  auto step_residual = [&](const RadialSegment& s) {
    double worst = 0;
    for (double th : {0.25, 0.5, 0.75}) {
      double r = s.t0 + th * s.h;
      auto y = s.eval(r);
      auto dy = s.deriv(r);
      double scale = std::abs(dy[1]) + std::abs((N - 1) * y[1] / r) + source(y[0], y[1], p, q);
      double d = std::abs(radial_defect(pt, r, y[0], y[1], dy[1]));
      worst = std::max(worst, scale > 0 ? d / scale : d);
    }
    return worst;
  };

  solver.integrate(start.r, {start.u, start.du}, r_max, o, [&](const RadialSegment& s, const DP::State& y) {
    traj.segments.push_back(s);
    double res = step_residual(s);
    traj.max_residual = std::max(traj.max_residual, res);
    if (y[0] <= 0) {
      double lo = s.t0, hi = s.t1();
      while (hi - lo > 1e-12 * hi) {
        double mid = 0.5 * (lo + hi);
        if (s.eval(mid)[0] > 0) lo = mid;
        else hi = mid;
      }
      double rc = 0.5 * (lo + hi);
      auto yc = s.eval(rc);
      traj.samples.push_back({rc, yc[0], yc[1]});
      traj.residuals.push_back(res);
      traj.terminal_event = TerminalEvent::crossing;
      traj.r_cross = rc;
      return false;
    }
    traj.samples.push_back({s.t1(), y[0], y[1]});
    traj.residuals.push_back(res);
    return true;
  });
  if (traj.terminal_event == TerminalEvent::none) traj.terminal_event = TerminalEvent::reached_rmax;
  return traj;
}

double family_K(int N, double q) {
  if (N < 3) throw DomainError("explicit family needs N >= 3");
  if (!(q >= 0 && q < 1)) throw DomainError("explicit family needs 0 <= q < 1");
  if (!(N - (N - 1) * q > 0)) throw DomainError("explicit family needs N - (N-1)q > 0");
  return (1 - q) * std::pow(N - 2.0, q - 1) / (N - (N - 1) * q);
}

double p_crit(int N, double q) {
  if (N < 3) throw DomainError("p_crit needs N >= 3");
  if (!(q >= 0 && q < 1)) throw DomainError("p_crit needs 0 <= q < 1");
  return ((N - (N - 1) * q) * (1 - q) + 2 - q) / ((N - 2) * (1 - q));
}

Rational p_crit_exact(int N, const Rational& q) {
  if (N < 3) throw DomainError("p_crit needs N >= 3");
  if (q < 0 || q >= 1) throw DomainError("p_crit needs 0 <= q < 1");
  return ((N - (N - 1) * q) * (1 - q) + 2 - q) / ((N - 2) * (1 - q));
}

ExplicitFamily explicit_family(int N, double q, double c) {
  if (!(c > 0)) throw DomainError("family parameter c must be positive");
  ExplicitFamily f;
  f.N = N;
  f.q = q;
  f.c = c;
  f.K = family_K(N, q);
  f.p = p_crit(N, q);
  return f;
}

namespace {
struct FamilyShape {
  double beta, delta, w0;
};
FamilyShape shape(const ExplicitFamily& f) {
  double beta = (2 - f.q) / (1 - f.q);
  double delta = (f.N - 2) * (1 - f.q) / (2 - f.q);
  double s = (2 - f.q) * (2 - f.q) / ((f.N - 2) * (1 - f.q));
  return {beta, delta, f.K * std::pow(f.c, s)};
}
}  // namespace

double ExplicitFamily::u(double r) const {
  auto [b, d, w0] = shape(*this);
  return c * std::pow(w0 + std::pow(r, b), -d);
}

double ExplicitFamily::du(double r) const {
  auto [b, d, w0] = shape(*this);
  double w = w0 + std::pow(r, b);
  return -c * d * b * std::pow(w, -d - 1) * std::pow(r, b - 1);
}

double ExplicitFamily::d2u(double r) const {
  auto [b, d, w0] = shape(*this);
  double w = w0 + std::pow(r, b);
  return -c * d * b *
         ((-d - 1) * std::pow(w, -d - 2) * b * std::pow(r, 2 * b - 2) + std::pow(w, -d - 1) * (b - 1) * std::pow(r, b - 2));
}

ParamPoint ExplicitFamily::params() const { return ParamPoint::from_doubles(N, p, q); }

std::array<double, 3> energy_terms(const ParamPoint& pt, const RadialState& s) {
  double q = pt.qd(), p = pt.pd();
  double m = 2 - q, nu = pt.N - (pt.N - 1) * q;
  double rn = std::pow(s.r, nu);
  double a = std::abs(s.du);
  double u = std::max(s.u, 0.0);
  double t1 = rn * std::pow(a, m) * (1 - q) / (2 - q);
  double t2 = rn * (1 - q) * std::pow(u, p + 1) / (p + 1);
  double flux = a > 0 ? std::copysign(std::pow(a, m - 1), s.du) : 0.0;
  double t3 = rn * ((nu - m) / m) * u * flux / s.r;
  return {t1, t2, t3};
}

double energy(const ParamPoint& pt, const RadialState& s) {
  auto t = energy_terms(pt, s);
  return t[0] + t[1] + t[2];
}

int energy_derivative_sign(const ParamPoint& pt) {
  Rational pc = p_crit_exact(pt.N, pt.q);
  return sgn(Rational(pc - pt.p));
}

EnergySamples sample_energy(const ParamPoint& pt, const RadialTrajectory& traj, int count) {
  if (count < 2) throw DomainError("energy sampling needs at least 2 points");
  EnergySamples out;
  double r0 = traj.r_begin();
  double r1 = traj.r_cross ? *traj.r_cross : traj.r_end();
  r1 = r0 + (r1 - r0) * (1 - 1e-9);
  double scale = 0;
  for (int i = 0; i < count; ++i) {
    double r = i + 1 == count ? r1 : r0 * std::pow(r1 / r0, static_cast<double>(i) / (count - 1));
    RadialState s = traj.at(r);
    auto t = energy_terms(pt, s);
    out.r.push_back(r);
    out.F.push_back(t[0] + t[1] + t[2]);
    scale = std::max(scale, std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]));
  }
  double drift = 0;
  bool inc = true, dec = true;
  for (std::size_t i = 0; i < out.F.size(); ++i) {
    drift = std::max(drift, std::abs(out.F[i] - out.F.front()));
    if (i > 0) {
      inc = inc && out.F[i] > out.F[i - 1];
      dec = dec && out.F[i] < out.F[i - 1];
    }
  }
  out.relative_drift = scale > 0 ? drift / scale : 0;
  out.monotonic = inc ? 1 : (dec ? -1 : 0);
  return out;
}

ShootingOutcome classify_shooting(const ParamPoint& pt, double a, double r_max, double tol) {
  require_series(pt);
  ShootingOutcome out;
  RadialState s0 = series_start(pt, a, default_series_eps(pt, a));
  out.trajectory = integrate_radial(pt, s0, r_max, tol);
  const auto& tr = out.trajectory;
  if (tr.terminal_event == TerminalEvent::crossing) {
    out.classification = ShootingClass::crossing;
    out.r_cross = tr.r_cross;
    return out;
  }
  bool decreasing = std::all_of(tr.samples.begin(), tr.samples.end(), [](const RadialState& s) { return s.du < 0; });
  // least-squares slope of log u against log r over the last decade
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : tr.samples) {
    if (s.r < r_max / 10 || s.u <= 0) continue;
    double x = std::log(s.r), y = std::log(s.u);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  // too few nodes in the last decade: use dense output on a log grid
  if (n < 8) {
    sx = sy = sxx = sxy = 0;
    n = 0;
    for (int i = 0; i <= 32; ++i) {
      double r = r_max / 10 * std::pow(10.0, i / 32.0);
      r = std::min(r, tr.r_end());
      RadialState s = tr.at(r);
      if (s.u <= 0) continue;
      double x = std::log(r), y = std::log(s.u);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double u_end = tr.samples.back().u;
  if (decreasing && n >= 2 && slope < 0 && u_end < 0.01 * a) {
    out.classification = ShootingClass::ground_state;
    out.decay_exponent_estimate = -slope;
  } else {
    out.classification = ShootingClass::inconclusive;
    if (n >= 2) out.decay_exponent_estimate = -slope;
  }
  return out;
}

double m_laplacian_residual(const ParamPoint& pt, const RadialTrajectory& traj) {
  require_series(pt);
  double q = pt.qd(), p = pt.pd();
  double nu = pt.N - (pt.N - 1) * q;
  auto flux = [&](double r) {
    RadialState s = traj.at(r);
    double a = std::abs(s.du);
    double f = a > 0 ? std::copysign(std::pow(a, 1 - q), s.du) : 0.0;
    return std::pow(r, nu - 1) * f;
  };
  double worst = 0;
  for (const auto& s : traj.samples) {
    double d = 1e-4 * s.r;
    if (s.r - 2 * d < traj.r_begin() || s.r + 2 * d > traj.r_end()) continue;
    double df = (8 * (flux(s.r + d) - flux(s.r - d)) - (flux(s.r + 2 * d) - flux(s.r - 2 * d))) / (12 * d);
    double u = std::max(s.u, 0.0);
    double v = std::pow(s.r, 1 - nu) * df + (1 - q) * std::pow(u, p);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

void write_trajectory_csv(std::ostream& os, const RadialTrajectory& traj) {
  os << "r,u,du,residual\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    os << s.r << ',' << s.u << ',' << s.du << ',' << traj.residuals[i] << '\n';
  }
}

}  // namespace gradpde
