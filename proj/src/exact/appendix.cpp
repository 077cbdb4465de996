#include "gradpde/appendix.hpp"

#include "gradpde/errors.hpp"

namespace gradpde {

namespace {

UniPoly c(long v) { return UniPoly::constant(Rational(v)); }
const UniPoly H = UniPoly::variable('h');

UniPoly L_of(int N) { return Rational(N + 1) * H + c(N + 2); }

}  // namespace

std::map<std::string, UniPoly> AppendixPolynomials::named() const {
  return {{"K", K},         {"a.num", a.num}, {"a.den", a.den}, {"b.num", b.num}, {"b.den", b.den},
          {"M", M},         {"P1", P1},       {"P2", P2},       {"Q1", Q1},       {"Q2", Q2},
          {"Q3", Q3},       {"Q4", Q4},       {"G.p0", G_tilde.coeff(0)},
          {"G.p1", G_tilde.coeff(1)},         {"G.p2", G_tilde.coeff(2)}};
}

AppendixPolynomials build_appendix_polynomials(int N) {
  if (N < 3) throw DomainError("appendix polynomials need N >= 3");
  const long n = N;
  AppendixPolynomials P;
  P.N = N;
  P.K = (H + c(2)) * (Rational(n) * H + c(n - 1)) * make_rational(1, n);
  UniPoly L = L_of(N);
  P.a = {H + c(n + 2), Rational(2) * L};
  P.b = {Rational(n - 1) * (H + c(2)), Rational(2) * L};

  const UniPoly h2 = H * H, h3 = h2 * H;
  P.M = Rational(n) * h3 - Rational(2 * n * n - n + 1) * h2 + Rational(n * n * n + 2 * n * n - 2 * n - 4) * H +
        c((n - 1) * (n + 2) * (n + 2));
  P.P1 = Rational(n) * h2 + Rational(n + 1) * H + c(2);
  P.P2 = Rational(n - 2) * h2 + Rational(5 * n - 9) * H + c(4 * n - 10);
  P.Q1 = Rational(-2 * n) * H * (Rational(n + 1) * H + c(n + 2));
  P.Q2 = Rational(n) * h3 - Rational(n * n - 3 * n + 1) * h2 - Rational(n * n - n + 4) * H - c(2 * n + 4);
  P.Q3 = Rational(2 * n - 2) * h2 + Rational(n * n * n - 2 * n * n + 10 * n - 6) * H +
         c(n * n * n - 3 * n * n + 6 * n - 4);
  P.Q4 = Rational(n * n * n + 2 * n * n - 6 * n - 2) * h2 -
         Rational(n * n * n * n - n * n * n - 17 * n * n + 12 * n + 8) * H - c((n - 1) * (n * n * n - 8 * n - 8));

  UniPoly g2 = Rational(n - 1) * (Rational(n - 1) * H + c(n - 2));
  UniPoly g1 = Rational(n) * h2 - Rational(n * n + n - 1) * H - c(n * n + n - 2);
  UniPoly g0 = make_rational(-n, n - 1) * h2;
  P.G_display = BiPoly(std::vector<UniPoly>{g0, g1, g2});
  P.G_tilde = P.G_display * make_rational(1, n - 1);
  return P;
}

TangencyQuadratic tangency_quadratic(const AppendixPolynomials& P) {
  const long n = P.N;
  UniPoly L = L_of(P.N);
  UniPoly an = H + c(n + 2);
  UniPoly bn = Rational(n - 1) * (H + c(2));
  UniPoly Kn = (H + c(2)) * (Rational(n) * H + c(n - 1));
  UniPoly hp1 = H + c(1);
  UniPoly fourN = c(4 * n);
  TangencyQuadratic T;
  T.c2 = BiPoly::in_h(Kn * an * an - fourN * hp1 * an * L + fourN * L * L);
  T.c1 = BiPoly::p_power(1) * (Rational(-2) * Kn * an * bn + fourN * hp1 * bn * L) +
         BiPoly::in_h(fourN * hp1 * an * L - fourN * L * L);
  T.c0 = BiPoly::p_power(2) * (Kn * bn * bn) - BiPoly::p_power(1) * (fourN * hp1 * bn * L);
  T.scale = fourN * L * L;
  return T;
}

QuadSurd ellipse(const AppendixPolynomials& P, const Rational& h, const QuadSurd& m, const QuadSurd& y) {
  QuadSurd K(P.K(h));
  QuadSurd one(Rational(1));
  return K * y * y + QuadSurd(2 * (h + 1)) * (m - one) * y + m * (m - one);
}

bool discriminant_identity(const AppendixPolynomials& P) {
  TangencyQuadratic T = tangency_quadratic(P);
  BiPoly J = T.c1 * T.c1 * make_rational(1, 4) - T.c2 * T.c0;
  UniPoly bn = Rational(P.N - 1) * (H + c(2));
  UniPoly L = L_of(P.N);
  BiPoly rhs = P.G_tilde * (Rational(-4 * P.N) * L * L * bn * bn);
  return J == rhs;
}

bool discriminant_identity(int N) { return discriminant_identity(build_appendix_polynomials(N)); }

bool line_identity(const AppendixPolynomials& P) {
  // 2a(1+h) - 1 - 2bh/(N-1) over the common denominator 2L
  UniPoly lhs = Rational(2) * P.a.num * (H + c(1)) - P.a.den;
  UniPoly rhs = make_rational(2, P.N - 1) * P.b.num * H;
  return lhs == rhs && P.a.den == P.b.den;
}

TangencyData tangency_data(const AppendixPolynomials& P, const Rational& h) {
  const int N = P.N;
  if (h < 0 || h > 2 * (N - 1)) throw DomainError("tangency data needs 0 <= h <= 2(N-1)");
  auto fail = [&](const std::string& what) { throw CertificationFailed("tangency: " + what, h.get_str()); };
  Rational alpha = (N - 1) * ((N - 1) * h + N - 2);
  Rational beta = N * h * h - (N * N + N - 1) * h - (N * N + N - 2);
  Rational disc = (N * h + N - 1) * P.M(h);
  if (beta * beta + 4 * alpha * make_rational(N, N - 1) * h * h != disc) fail("discriminant of G~ differs from (Nh+N-1)M");

  TangencyData t;
  t.h = h;
  Rational inv = Rational(1) / (2 * alpha);
  t.p0 = QuadSurd(-beta * inv, inv, disc);
  if (P.G_tilde(t.p0, h).sign() != 0) fail("G~(p0, h) != 0");

  TangencyQuadratic T = tangency_quadratic(P);
  Rational c2 = T.c2.coeff(0)(h);
  if (sgn(c2) == 0) fail("degenerate quadratic T(m)");
  QuadSurd c1 = T.c1(t.p0, h);
  QuadSurd c0 = T.c0(t.p0, h);
  QuadSurd J = c1 * c1 * QuadSurd(make_rational(1, 4)) - QuadSurd(c2) * c0;
  if (J.sign() != 0) fail("discriminant J(p0) != 0");
  t.m0 = -c1 / QuadSurd(2 * c2);

  Rational Mh = P.M(h);
  QuadSurd valm(-P.P1(h), P.Q2(h) / Mh, disc);
  if (QuadSurd(2 * ((N - 1) * h + N - 2)) * t.m0 != valm) fail("m0 differs from the closed form");

  t.y0 = QuadSurd(-P.a(h)) * t.m0 + QuadSurd(P.b(h)) * t.p0;
  if (ellipse(P, h, t.m0, t.y0).sign() != 0) fail("E(m0, y0) != 0");
  return t;
}

TangencyData tangency_data(int N, const Rational& h) { return tangency_data(build_appendix_polynomials(N), h); }

int beta_sign(int N, const Rational& h) {
  TangencyData t = tangency_data(N, h);
  return (t.y0 - QuadSurd(Rational(1))).sign();
}

}  // namespace gradpde
