#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradpde/rational.hpp"

namespace gradpde {

enum class GridKind { uniform, chebyshev };

// Azimuthal nodes on [0, pi] for S^n.
struct SphereGrid {
  int n = 2;
  GridKind kind = GridKind::uniform;
  std::vector<double> theta;

  static SphereGrid uniform(int n, int M);
  static SphereGrid chebyshev(int n, int M);
  int size() const { return static_cast<int>(theta.size()); }
  // Quadrature weights of sin^(n-1) theta d theta (trapezoidal).
  Eigen::VectorXd weights() const;
  SphereGrid reflected() const;  // theta -> pi - theta
};

struct SphereProfile {
  SphereGrid grid;
  Eigen::VectorXd omega;
  double mu = 0;
  double gamma_par = 1;
  double p = 1;
  double q = 0;

  static SphereProfile constant(const SphereGrid& g, double value, double mu, double gamma, double p, double q);
  SphereProfile reflected() const;
};

// omega_mu = (mu / gamma^q)^(1/(p+q-1)).
double constant_solution(int n, double p, double q, double gamma_par, double mu);

// -w'' - (n-1) cot(theta) w' + mu w - |w|^(p-1) w (gamma^2 w^2 + w'^2)^(q/2) on the nodes;
// -n w'' at the poles.
Eigen::VectorXd azimuthal_residual(const SphereProfile& profile);
Eigen::MatrixXd azimuthal_jacobian(const SphereProfile& profile);
// Discrete derivative d/d theta (zero at the poles).
Eigen::VectorXd theta_derivative(const SphereGrid& g, const Eigen::VectorXd& w);

struct NewtonOptions {
  int max_iterations = 60;
};

SphereProfile newton_solve(const SphereProfile& initial, double tol, const NewtonOptions& opt = {});

struct Spectrum {
  std::vector<double> values;           // ascending real parts
  std::vector<Eigen::VectorXd> vectors;  // matching real eigenvectors
  double max_imag = 0;
};

Spectrum linearized_spectrum(const SphereProfile& profile, int k);

// Weighted mean and the normalised cos(theta) coefficient of w - mean.
double weighted_mean(const SphereGrid& g, const Eigen::VectorXd& w);
double branch_amplitude(const SphereProfile& profile);
// Weighted correlation of v with cos(theta) (absolute value).
double cos_correlation(const SphereGrid& g, const Eigen::VectorXd& v);

// Zero of the first nontrivial eigenvalue along the constant branch on an M-node uniform grid.
double bifurcation_mu(int n, double p, double q, double gamma_par, int M);
// Fits mu(h) = mu0 + c h^2 + d h^4 through three (h, mu) pairs and returns mu0.
double richardson_extrapolate(const std::vector<double>& h, const std::vector<double>& mu);

struct BranchPoint {
  double mu = 0;
  double s = 0;
  SphereProfile profile;
  double stability_indicator = 0;
  double residual = 0;
};

struct ContinuationOptions {
  int M = 129;
  GridKind kind = GridKind::uniform;
  double tol = 1e-11;
  int direction = 1;
  double ds = 0;  // 0 means 1e-2 * omega_mu*
  int max_halvings = 10;
};

struct ContinuationTrace {
  std::vector<BranchPoint> points;  // points[0] is the bifurcation point
  std::optional<std::string> stop_reason;
};

ContinuationTrace continue_branch(int n, double p, double q, double gamma_par, int steps,
                                  const ContinuationOptions& opt = {});

struct BoundReport {
  double min_omega = 0;
  double max_omega = 0;
  double omega_mu = 0;
  double lpq_norm = 0;   // normalised L^(p+q) norm
  double lpq_bound = 0;  // omega_mu
  bool sandwich = false;
  bool integral = false;
  bool strict = false;
};

// Throws BoundViolation when either bound fails.
BoundReport bound_checks(const SphereProfile& profile, double rel_tol = 1e-9);

enum class RigidityVerdict { constant, not_applicable };
const char* to_string(RigidityVerdict v);

struct RigidityReport {
  RigidityVerdict verdict = RigidityVerdict::not_applicable;
  double c1 = 0;
  double c2 = 0;
  double deviation = 0;
};

// Throws TheoremViolation when the criterion holds but the profile is not constant.
RigidityReport rigidity_test(const SphereProfile& profile, double solver_tol);

struct MoserSequence {
  std::vector<Rational> recursion;
  std::vector<Rational> closed_form;
  Rational fixed_point;  // (p+q-1)(n-2)/(2-q)
  Rational growth;       // n/(n-2)
};

MoserSequence moser_exponent_sequence(int n, const Rational& p, const Rational& q, const Rational& alpha0, int k);

void write_profile_csv(std::ostream& os, const SphereProfile& profile);
void write_branch_csv(std::ostream& os, const ContinuationTrace& trace);

}  // namespace gradpde
