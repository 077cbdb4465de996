#include <doctest.h>

#include <cmath>

#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"

using namespace gradpde;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }

// -u'' - (N-1)u'/r - u^p |u'|^q for u = L r^-g.
double singular_residual(int N, double p, double q, double L, double g, double r) {
  double u = L * std::pow(r, -g);
  double du = -g * L * std::pow(r, -g - 1);
  double d2u = g * (g + 1) * L * std::pow(r, -g - 2);
  return -d2u - (N - 1) * du / r - std::pow(u, p) * std::pow(std::abs(du), q);
}

}  // namespace

TEST_CASE("parameter point validation") {
  CHECK_THROWS_AS(ParamPoint(1, R(1), R(0)), DomainError);
  CHECK_THROWS_AS(ParamPoint(3, R(-1), R(0)), DomainError);
  CHECK_THROWS_AS(ParamPoint(3, R(1), R(3)), DomainError);
  CHECK_NOTHROW(ParamPoint(3, R(0), R(2)));
}

TEST_CASE("derived exponents") {
  auto d = derived_exponents(ParamPoint(6, R(3), R(0)));
  CHECK(d.gamma_exact == 1);
  CHECK(d.Q_exact == 2);
  auto e = derived_exponents(ParamPoint(4, R(1), R(1)));
  CHECK(e.gamma == doctest::Approx(1));
  REQUIRE(e.lambda);
  CHECK(*e.lambda == doctest::Approx(1));
  CHECK(e.sep_mu == doctest::Approx(1));
  CHECK_THROWS_AS(derived_exponents(ParamPoint(3, R(1), R(0))), DomainError);
  CHECK_THROWS_AS(derived_exponents(ParamPoint(3, R(1), R(2))), DomainError);
  for (double r = 0.1; r <= 10; r *= 1.1) CHECK(std::abs(singular_residual(4, 1, 1, 1, 1, r)) <= 1e-12 * std::pow(r, -3));
}

TEST_CASE("singular solution") {
  CHECK(lambda_singular(ParamPoint(5, R(3), R(0))) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lambda_singular(ParamPoint(4, R(1), R(1))) == doctest::Approx(1).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_singular(ParamPoint(3, R(3), R(0))), NotSupercritical);
  for (auto [N, p, q] : {std::tuple{5, 3.0, 0.0}, {4, 1.0, 1.0}, {6, 2.0, 0.5}, {8, 1.5, 0.25}}) {
    ParamPoint pt = ParamPoint::from_doubles(N, p, q);
    double L = lambda_singular(pt);
    double g = derived_exponents(pt).gamma;
    for (double r = 0.1; r <= 10; r *= 1.3) {
      double scale = L * g * (g + 1) * std::pow(r, -g - 2);
      CHECK(std::abs(singular_residual(N, p, q, L, g, r)) <= 1e-12 * scale);
    }
  }
  for (int N = 3; N <= 8; ++N)
    for (int i = 1; i < 30; ++i)
      for (int j = 0; j < 20; ++j) {
        ParamPoint pt(N, R(i, 5), R(j, 10));
        if (pt.Q() <= 0) continue;
        auto d = derived_exponents(pt);
        CHECK(d.gamma > 0);
        CHECK(d.lambda.has_value() == ((N - 2) * pt.p + (N - 1) * pt.q > N));
      }
}

TEST_CASE("critical exponent of G") {
  for (int N = 3; N <= 12; ++N) {
    QuadSurd v = p_c_exact(N, R(0));
    CHECK(v.is_rational());
    CHECK(v == QuadSurd(R(N + 2, N - 2)));
  }
  CHECK(p_c_exact(6, R(0)) == QuadSurd(R(2)));
  CHECK(p_c_exact(3, R(2)) == QuadSurd(R(4, 3)));
  CHECK(p_c(6, 0.0) == doctest::Approx(2));
  for (int N : {3, 6, 10})
    for (double q = 0; q < 2; q += 0.07) {
      double pc = p_c(N, q);
      CHECK(G_value(N, pc - 1e-7, q) < 0);
      CHECK(G_value(N, pc + 1e-7, q) > 0);
      CHECK(p_c_exact(N, from_double(q)).to_double() == doctest::Approx(pc).epsilon(1e-12));
    }
  double prev = p_c(5, 0);
  for (int k = 1; k <= 2000; ++k) {
    double cur = p_c(5, 2.0 * k / 2000);
    CHECK(std::abs(cur - prev) < 1e-2);
    prev = cur;
  }
}

TEST_CASE("classify examples") {
  auto a = classify(ParamPoint(6, R(1), R(1, 2)));
  CHECK(a.supercritical);
  CHECK(a.liouville_C);
  CHECK(G_value(6, R(1), R(1, 2)) < 0);
  auto b = classify(ParamPoint(3, R(0), R(6, 5)));
  CHECK(b.subcritical);
  auto c = classify(ParamPoint(6, R(2), R(0)));
  CHECK(c.supercritical);
  CHECK_FALSE(c.liouville_C);
  auto d = classify(ParamPoint(6, R(3, 2), R(0)));
  CHECK_FALSE(d.subcritical);
  CHECK_FALSE(d.supercritical);
  auto e = classify(ParamPoint(3, R(1, 4), R(1, 4)));
  CHECK(e.thmB_case == ThmBCase::none);
  CHECK_FALSE(e.notes.empty());
  CHECK(e.evaluated_lhs.count("G(p,q)") == 1);
}

TEST_CASE("Bernstein regions lie inside the Liouville region") {
  for (int N = 3; N <= 12; ++N)
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        ParamPoint pt(N, R(i, 50), R(j, 100));
        auto r = classify(pt);
        if (r.thmB_case != ThmBCase::none) REQUIRE_MESSAGE(r.liouville_C, pt.str());
        REQUIRE_FALSE((r.subcritical && r.supercritical));
      }
}

TEST_CASE("Bernstein parameter recipe") {
  auto b = theorem_b_parameters(ParamPoint(4, R(1), R(1, 2)));
  CHECK(b.d2_value < 0);
  CHECK(b.S > 2);
  CHECK(b.ell == b.S / 2);
  CHECK(d2(ParamPoint(4, R(1), R(1, 2)), b.S, b.ell) == b.d2_value);
  CHECK_THROWS_AS(theorem_b_parameters(ParamPoint(10, R(1, 2), R(6, 5))), OutsideRegion);
  ParamPoint ii(10, R(1, 2), R(97, 100));
  auto c = theorem_b_parameters(ii);
  CHECK(c.S == 2 * (1 - ii.p) / (9 * ii.Q() - 4));
  CHECK(c.S + ii.q - 1 > 0);
  CHECK(c.d2_value < 0);
  CHECK_THROWS_AS(theorem_b_parameters(ParamPoint(4, R(3), R(0))), OutsideRegion);
  int checked = 0;
  for (int N : {3, 5, 8})
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        ParamPoint pt(N, R(i, 20), R(j, 25));
        if (classify(pt).thmB_case == ThmBCase::none) continue;
        auto x = theorem_b_parameters(pt);
        CHECK(x.S > 0);
        CHECK(x.S > 1 - pt.q);
        CHECK(x.ell != 1);
        CHECK(x.a > 0);
        CHECK(x.d2_value < 0);
        ++checked;
      }
  CHECK(checked > 500);
}

TEST_CASE("rigidity criterion") {
  for (double p : {1.5, 2.0, 3.5})
    for (double c1 : {0.5, 1.0, 2.0}) {
      double n = 3, mu = 1.5, g = 1.3;
      bool expect = std::pow(c1, p - 1) <= 2 * (n + mu) * std::pow(g, p - 1) / (2 * p);
      CHECK(rigidity_criterion(4, p, 0, g, mu, c1, c1) == expect);
    }
  // constant solution: mu = n, gamma = 1, p = 2, q = 0 gives omega = n and c1 = n
  double n = 2, mu = 2;
  double lhs = std::pow(n, 1.0), rhs = 2 * (n + mu) / (2 * 2.0);
  CHECK(lhs <= rhs);
  CHECK(rigidity_criterion(3, 2, 0, 1, mu, n, n));
  CHECK_FALSE(rigidity_criterion(3, 2, 0.5, 1, mu, 1e12, 1));
  CHECK_THROWS_AS(rigidity_criterion(4, 1, 0, 1, mu, 1, 1), DomainError);
  CHECK_THROWS_AS(rigidity_criterion(3, 2, 0, -1, mu, 1, 1), DomainError);
  CHECK_THROWS_AS(rigidity_criterion(3, 0.5, 0.2, 1, mu, 1, 1), DomainError);
  CHECK_THROWS_AS(rigidity_criterion(3, 0.8, 0.5, 1, mu, 1, 0), DomainError);
}

TEST_CASE("integral exponent conditions agree") {
  int checked = 0;
  for (int N = 3; N <= 8; ++N)
    for (int i = 0; i <= 24; ++i)
      for (int j = 0; j < 20; ++j)
        for (int k = 1; k < 12; ++k) {
          ParamPoint pt(N, R(i, 6), R(j, 10));
          if (pt.Q() <= 0) continue;
          Rational m = -R(k, 12) * (2 + (N - 1) * pt.q);
          auto x = integral_exponents(pt, m);
          CHECK(x.m_admissible);
          CHECK(x.kappa == 2 * x.sigma);
          CHECK(x.condition_kappa == x.kappa_exceeds_N);
          ++checked;
        }
  CHECK(checked > 1000);
  CHECK_THROWS_AS(integral_exponents(ParamPoint(3, R(1, 2), R(1, 4)), R(-1)), DomainError);
}
