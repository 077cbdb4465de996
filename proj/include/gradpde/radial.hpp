#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gradpde/ode.hpp"
#include "gradpde/param.hpp"

namespace gradpde {

struct RadialState {
  double r = 0;
  double u = 0;
  double du = 0;
};

enum class TerminalEvent { none, crossing, reached_rmax };
const char* to_string(TerminalEvent e);

using RadialSegment = DormandPrince<2>::Segment;

struct RadialTrajectory {
  ParamPoint params;
  std::vector<RadialState> samples;
  std::vector<double> residuals;  // per sample, from the step ending there
  std::vector<RadialSegment> segments;
  double max_residual = 0;
  TerminalEvent terminal_event = TerminalEvent::none;
  std::optional<double> r_cross;

  double r_begin() const { return samples.front().r; }
  double r_end() const { return samples.back().r; }
  // Dense evaluation for r in [r_begin, r_end].
  RadialState at(double r) const;
};

// u'' + (N-1)u'/r + u_+^p |u'|^q, the defect of the radial equation.
double radial_defect(const ParamPoint& pt, double r, double u, double du, double d2u);

double default_series_eps(const ParamPoint& pt, double a);
// Leading-order start at r = eps for u(0) = a, u'(0) = 0; needs 0 <= q < 1.
RadialState series_start(const ParamPoint& pt, double a, double eps);
// Defect of the truncated series at the returned state.
double series_start_residual(const ParamPoint& pt, double a, const RadialState& s);

struct IntegrateOptions {
  bool fixed_step = false;
  double h = 0;  // fixed step size
  std::size_t max_steps = 5'000'000;
};

RadialTrajectory integrate_radial(const ParamPoint& pt, const RadialState& start, double r_max, double tol,
                                  const IntegrateOptions& opt = {});

// Closed-form ground states at p = p_crit(N, q).
struct ExplicitFamily {
  int N = 3;
  double q = 0;
  double c = 1;
  double K = 0;
  double p = 0;
  double u(double r) const;
  double du(double r) const;
  double d2u(double r) const;
  ParamPoint params() const;
};

double family_K(int N, double q);
ExplicitFamily explicit_family(int N, double q, double c);

double p_crit(int N, double q);
Rational p_crit_exact(int N, const Rational& q);

// F = r^nu (|u'|^m (1-q)/(2-q) + (1-q) u^(p+1)/(p+1) + ((nu-m)/m) u |u'|^(m-2) u'/r), m = 2-q,
// nu = N-(N-1)q; the three terms are returned separately.
std::array<double, 3> energy_terms(const ParamPoint& pt, const RadialState& s);
double energy(const ParamPoint& pt, const RadialState& s);
// Sign of F' along positive solutions: sign(p_crit - p).
int energy_derivative_sign(const ParamPoint& pt);

struct EnergySamples {
  std::vector<double> r;
  std::vector<double> F;
  double relative_drift = 0;  // max |F - F(r0)| over max of the summed absolute terms
  int monotonic = 0;          // +1 strictly increasing, -1 strictly decreasing, 0 otherwise
};

// F on a log-spaced grid over the positive part of the trajectory.
EnergySamples sample_energy(const ParamPoint& pt, const RadialTrajectory& traj, int count = 400);

enum class ShootingClass { ground_state, crossing, inconclusive };
const char* to_string(ShootingClass c);

struct ShootingOutcome {
  ShootingClass classification = ShootingClass::inconclusive;
  std::optional<double> r_cross;
  std::optional<double> decay_exponent_estimate;
  RadialTrajectory trajectory;
};

ShootingOutcome classify_shooting(const ParamPoint& pt, double a, double r_max, double tol = 1e-10);

// max |r^(1-nu) (r^(nu-1) |u'|^-q u')' + (1-q) u^p| over the samples.
double m_laplacian_residual(const ParamPoint& pt, const RadialTrajectory& traj);

// Minimal c making the blow-up barrier a supersolution on B_R.
double keller_osserman_barrier(int N, double alpha, double qbar, double R);
// Pointwise requirement on c at radius rho.
double keller_osserman_requirement(int N, double alpha, double qbar, double R, double rho);

void write_trajectory_csv(std::ostream& os, const RadialTrajectory& traj);

}  // namespace gradpde
