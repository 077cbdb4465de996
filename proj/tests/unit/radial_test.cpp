#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gradpde/errors.hpp"
#include "gradpde/radial.hpp"

using namespace gradpde;

namespace {

double family_residual(const ExplicitFamily& f, double r0, double r1) {
  ParamPoint pt = f.params();
  double w = 0;
  for (int i = 0; i <= 2000; ++i) {
    double r = r0 * std::pow(r1 / r0, i / 2000.0);
    w = std::max(w, std::abs(radial_defect(pt, r, f.u(r), f.du(r), f.d2u(r))));
  }
  return w;
}

double deviation(const ExplicitFamily& f, const RadialTrajectory& t) {
  double d = 0;
  for (const auto& s : t.samples) d = std::max(d, std::abs(s.u - f.u(s.r)));
  return d;
}

}  // namespace

TEST_CASE("critical exponent") {
  for (int N = 3; N <= 12; ++N) {
    CHECK(p_crit(N, 0) == doctest::Approx((N + 2.0) / (N - 2)));
    CHECK(p_crit_exact(N, Rational(0)) == make_rational(N + 2, N - 2));
  }
  CHECK(p_crit(4, 0.5) == doctest::Approx(2.75));
  CHECK(p_crit_exact(4, make_rational(1, 2)) == make_rational(11, 4));
  CHECK(p_crit(4, 0.999999) > 1e5);
  CHECK_THROWS_AS(p_crit(4, 1.0), DomainError);
  ParamPoint eq(4, p_crit_exact(4, make_rational(1, 2)), make_rational(1, 2));
  CHECK(classify(eq).radial_ground_state);
}

TEST_CASE("series start") {
  ParamPoint pt0 = ParamPoint::from_doubles(5, 2, 0);
  double eps = 1e-3;
  auto s0 = series_start(pt0, 1.5, eps);
  CHECK(s0.du == doctest::Approx(-std::pow(1.5, 2) * eps / 5).epsilon(1e-5));
  ParamPoint pt = ParamPoint::from_doubles(4, 3, 0.5);
  auto s = series_start(pt, 1, 1e-4);
  CHECK(series_start_residual(pt, 1, s) <= 1e-6);
  CHECK_THROWS_AS(series_start(pt, 0, 1e-4), DomainError);
  CHECK_THROWS_AS(series_start(ParamPoint::from_doubles(4, 3, 1), 1, 1e-4), DomainError);
}

TEST_CASE("explicit family") {
  auto f = explicit_family(4, 0, 1);
  CHECK(f.K == doctest::Approx(0.125));
  for (double r : {1e-3, 0.5, 3.0}) CHECK(f.u(r) == doctest::Approx(1 / (0.125 + r * r)));
  CHECK(family_residual(f, 1e-3, 10) <= 1e-10);
  CHECK(8 * f.K == doctest::Approx(1));
  CHECK(explicit_family(3, 0, 1).K == doctest::Approx(1.0 / 3));
  for (int N : {3, 4, 5})
    for (double q : {0.0, 0.25, 0.5}) CHECK(family_residual(explicit_family(N, q, 1), 1e-3, 10) <= 1e-8);
  CHECK_THROWS_AS(explicit_family(4, 1, 1), DomainError);
  CHECK_THROWS_AS(explicit_family(4, 0.2, 0), DomainError);
}

TEST_CASE("scaling closure of the family") {
  for (double q : {0.0, 0.25}) {
    auto f = explicit_family(5, q, 1.3);
    double g = (2 - q) / (f.p + q - 1);
    for (double sigma : {0.5, 2.0}) {
      auto T = [&](double r) { return std::pow(sigma, g) * f.u(sigma * r); };
      auto g2 = explicit_family(5, q, 1.3 * std::pow(sigma, g - 3));
      for (double r = 1e-2; r < 100; r *= 1.5) CHECK(std::abs(g2.u(r) - T(r)) <= 1e-10 * T(r));
    }
  }
}

TEST_CASE("integrator follows the family") {
  for (double q : {0.0, 0.25, 0.5}) {
    auto f = explicit_family(4, q, 1);
    RadialState s{1e-3, f.u(1e-3), f.du(1e-3)};
    for (double tol : {1e-8, 1e-10}) {
      auto t = integrate_radial(f.params(), s, 10, tol);
      CHECK(deviation(f, t) <= 10 * tol);
      CHECK(t.terminal_event == TerminalEvent::reached_rmax);
    }
  }
}

TEST_CASE("fixed-step order") {
  auto f = explicit_family(4, 0.25, 1);
  RadialState s{0.1, f.u(0.1), f.du(0.1)};
  IntegrateOptions o1{true, 0.02}, o2{true, 0.01};
  double d1 = deviation(f, integrate_radial(f.params(), s, 5, 1, o1));
  double d2 = deviation(f, integrate_radial(f.params(), s, 5, 1, o2));
  CHECK(d1 / d2 >= 4);
}

TEST_CASE("constant start stays constant") {
  ParamPoint pt = ParamPoint::from_doubles(4, 2, 0.5);
  auto t = integrate_radial(pt, {1e-3, 2, 0}, 10, 1e-10);
  for (const auto& s : t.samples) CHECK(s.u == 2);
  CHECK(t.max_residual == 0);
  CHECK(m_laplacian_residual(pt, t) == doctest::Approx((1 - 0.5) * 4));
}

TEST_CASE("m-Laplacian form") {
  for (double q : {0.25, 0.5}) {
    auto f = explicit_family(4, q, 1);
    RadialState s{1e-3, f.u(1e-3), f.du(1e-3)};
    auto t = integrate_radial(f.params(), s, 10, 1e-12);
    CHECK(m_laplacian_residual(f.params(), t) <= 1e-6);
  }
  auto f = explicit_family(4, 0, 1);
  auto t = integrate_radial(f.params(), {1e-2, f.u(1e-2), f.du(1e-2)}, 10, 1e-12);
  double plain = 0;
  for (const auto& x : t.samples) {
    if (x.r < 1.1e-2 || x.r > 9.9) continue;
    RadialState a = t.at(x.r);
    double h = 1e-4 * x.r;
    double d2u = (t.at(x.r + h).du - t.at(x.r - h).du) / (2 * h);
    plain = std::max(plain, std::abs(radial_defect(f.params(), x.r, a.u, a.du, d2u)));
  }
  CHECK(m_laplacian_residual(f.params(), t) == doctest::Approx(plain).epsilon(0.5));
}

TEST_CASE("crossing for subcritical exponent") {
  double pc = p_crit(4, 0.25);
  auto pt = ParamPoint::from_doubles(4, pc - 0.3, 0.25);
  auto s = series_start(pt, 1, default_series_eps(pt, 1));
  auto t = integrate_radial(pt, s, 1000, 1e-10);
  CHECK(t.terminal_event == TerminalEvent::crossing);
  REQUIRE(t.r_cross);
  CHECK(std::abs(t.at(*t.r_cross).u) <= 1e-9);
}

TEST_CASE("energy") {
  auto f = explicit_family(4, 0.25, 1);
  auto t = integrate_radial(f.params(), {1e-3, f.u(1e-3), f.du(1e-3)}, 100, 1e-12);
  CHECK(sample_energy(f.params(), t).relative_drift <= 1e-8);
  double pc = p_crit(4, 0.25);
  for (double dp : {0.2, -0.2}) {
    auto pt = ParamPoint::from_doubles(4, pc + dp, 0.25);
    auto tr = integrate_radial(pt, series_start(pt, 1, default_series_eps(pt, 1)), 50, 1e-10);
    auto e = sample_energy(pt, tr);
    CHECK(energy_derivative_sign(pt) == (dp > 0 ? -1 : 1));
    CHECK(e.monotonic == energy_derivative_sign(pt));
  }
  CHECK(energy_derivative_sign(ParamPoint(4, p_crit_exact(4, make_rational(1, 4)), make_rational(1, 4))) == 0);
}

TEST_CASE("shooting dichotomy") {
  double pc = p_crit(4, 0.25);
  auto up = classify_shooting(ParamPoint::from_doubles(4, pc + 0.2, 0.25), 1, 1000);
  CHECK(up.classification == ShootingClass::ground_state);
  auto down = classify_shooting(ParamPoint::from_doubles(4, pc - 0.2, 0.25), 1, 1000);
  CHECK(down.classification == ShootingClass::crossing);
  CHECK(down.r_cross.has_value());
  for (double c : {0.5, 1.0, 2.0}) {
    auto f = explicit_family(4, 0.25, c);
    auto pt = ParamPoint(4, p_crit_exact(4, make_rational(1, 4)), make_rational(1, 4));
    auto o = classify_shooting(pt, f.u(0), 1000);
    CHECK(o.classification == ShootingClass::ground_state);
    REQUIRE(o.decay_exponent_estimate);
    CHECK(*o.decay_exponent_estimate == doctest::Approx(2).epsilon(0.05));
  }
  CHECK_THROWS_AS(classify_shooting(ParamPoint::from_doubles(4, 2, 1), 1, 100), DomainError);
}

TEST_CASE("Keller-Osserman barrier") {
  double c1 = keller_osserman_barrier(3, 1, 2, 1);
  CHECK(c1 == doctest::Approx(24).epsilon(1e-6));
  for (double R : {2.0, 5.0}) CHECK(keller_osserman_barrier(3, 1, 2, R) == doctest::Approx(c1).epsilon(1e-6));
  for (int i = 0; i < 10000; ++i) {
    double rho = i / 10000.0;
    CHECK(keller_osserman_requirement(3, 1, 2, 1, rho) <= c1 * (1 + 1e-9));
  }
  CHECK(keller_osserman_barrier(4, 0.5, 3, 1) > 0);
}

TEST_CASE("trajectory csv") {
  auto f = explicit_family(3, 0, 1);
  auto t = integrate_radial(f.params(), {1e-2, f.u(1e-2), f.du(1e-2)}, 1, 1e-8);
  std::ostringstream os;
  write_trajectory_csv(os, t);
  CHECK(os.str().rfind("r,u,du,residual\n", 0) == 0);
}
