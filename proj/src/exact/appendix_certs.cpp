#include <algorithm>
#include <chrono>
#include <future>

#include "gradpde/appendix.hpp"
#include "gradpde/errors.hpp"

namespace gradpde {

namespace {

UniPoly c(long v) { return UniPoly::constant(Rational(v)); }
const UniPoly H = UniPoly::variable('h');

UniPoly radicand_num(const AppendixPolynomials& P) { return Rational(P.N) * H + c(P.N - 1); }

const char* sign_word(int s) { return s > 0 ? "positive" : (s < 0 ? "negative" : "zero"); }

SignCertificate trivial_certificate(std::string label, std::string note) {
  SignCertificate cert;
  cert.label = std::move(label);
  cert.expr = RadicalForm::polynomial(UniPoly::constant(Rational(1)));
  cert.interval = Interval::closed(Rational(0), Rational(0));
  cert.claimed = ClaimedSign::positive;
  cert.sample_sign = 1;
  cert.verdict = Verdict::proven;
  cert.notes.push_back(std::move(note));
  return cert;
}

void refute_with(SignCertificate& cert, const Rational& x, std::string why) {
  cert.verdict = Verdict::refuted;
  cert.counterexample = x;
  cert.notes.push_back(std::move(why));
}

}  // namespace

SignCertificate certify_m0_negative(const AppendixPolynomials& P) {
  RadicalForm f{-P.P1, P.Q2, radicand_num(P), P.M};
  return certify("m0_negative", f, Interval::closed(Rational(0), Rational(2 * (P.N - 1))), ClaimedSign::negative);
}

SignCertificate certify_m0_negative(int N) { return certify_m0_negative(build_appendix_polynomials(N)); }

UniPoly m0_shift_reduction(const AppendixPolynomials& P) {
  return P.M * P.P2 * P.P2 - radicand_num(P) * P.Q2 * P.Q2;
}

SignCertificate certify_m0_shift_positive(const AppendixPolynomials& P) {
  const int N = P.N;
  RadicalForm f{P.P2, P.Q2, radicand_num(P), P.M};
  Interval iv = Interval::left_open(Rational(0), Rational(2 * (N - 1)));
  SignCertificate cert = certify("m0_shift_positive", f, iv, ClaimedSign::positive);
  cert.steps.push_back(certify_polynomial("P2", P.P2, iv, ClaimedSign::positive));

  TangencyData t0 = tangency_data(P, Rational(0));
  QuadSurd shift0 = t0.m0 + QuadSurd(Rational(2));
  if (shift0.sign() == 0) {
    if (std::find(cert.equality_points.begin(), cert.equality_points.end(), Rational(0)) == cert.equality_points.end())
      cert.equality_points.push_back(Rational(0));
    cert.notes.push_back("equality at h = 0: m0 = -2 exactly, m0 + 2 + h = 0");
  } else {
    cert.notes.push_back(std::string("at h = 0: m0 + 2 is ") + sign_word(shift0.sign()));
  }
  if (N == 3) {
    UniPoly expected = Rational(4) * H * UniPoly({160, 484, 337, 35, 38, 5, -6});
    bool ok = m0_shift_reduction(P) == expected;
    cert.notes.push_back(std::string("reduction M P2^2 - (3h+2) Q2^2 = 4h(-6h^6+5h^5+38h^4+35h^3+337h^2+484h+160): ") +
                         (ok ? "holds" : "fails"));
    if (!ok) refute_with(cert, Rational(0), "reduction polynomial mismatch");
  }
  return cert;
}

SignCertificate certify_m0_shift_positive(int N) { return certify_m0_shift_positive(build_appendix_polynomials(N)); }

UniPoly q5_slope_polynomial() {
  // Q5'(0) = tau X + Y with X > 0 > Y; the sign is that of N^2 tau^2 X^2 - N^2 Y^2.
  const UniPoly n = UniPoly::variable('N');
  const UniPoly n2 = n * n, n3 = n2 * n, n4 = n3 * n;
  UniPoly X = n4 - Rational(3) * n3 + Rational(13) * n2 - Rational(12) * n + UniPoly::constant(Rational(4), 'N');
  UniPoly Y = -n4 + n3 + Rational(17) * n2 - Rational(12) * n - UniPoly::constant(Rational(8), 'N');
  UniPoly tau2 = n2 + Rational(4) * n - UniPoly::constant(Rational(4), 'N');
  return tau2 * X * X - n2 * Y * Y;
}

SignCertificate certify_sigma_condition(const AppendixPolynomials& P) {
  const int N = P.N;
  const long n = N;
  SignCertificate cert;
  Rational lo(0), hi(N - 4);
  if (N <= 4) {
    cert = trivial_certificate("sigma_condition", "holds for N = 3, 4: the range (0, N-4) is empty");
  } else {
    RadicalForm direct{P.Q4, P.Q3, P.M, radicand_num(P)};
    cert = certify("sigma_condition", direct, Interval::open(lo, hi), ClaimedSign::positive);
    Interval closed = Interval::closed(lo, hi);
    cert.steps.push_back(certify_polynomial("Q3", P.Q3, closed, ClaimedSign::positive));
    UniPoly nh = c(n) - H;
    Rational extra = Rational(4 * (n - 1)) + make_rational(4, n + 1);
    UniPoly fre = P.M - (nh * nh + UniPoly::constant(extra)) * radicand_num(P);
    cert.steps.push_back(certify_polynomial("R_lower_bound", fre, closed, ClaimedSign::nonnegative));
    UniPoly tau2_num = c(n * n + 4 * n - 4);
    UniPoly tau_bound = Rational(n * n) * P.M - tau2_num * nh * nh * radicand_num(P);
    cert.steps.push_back(certify_polynomial("R_tau_bound", tau_bound, closed, ClaimedSign::nonnegative));
    RadicalForm q5{P.Q4, nh * P.Q3, tau2_num, c(n * n)};
    cert.steps.push_back(certify("Q5", q5, closed, ClaimedSign::positive));

    Rational tau2 = make_rational(n * n + 4 * n - 4, n * n);
    auto q5_at = [&](const Rational& h) { return QuadSurd(P.Q4(h), (n - h) * P.Q3(h), tau2); };
    UniPoly d_lin = (nh * P.Q3).derivative();
    QuadSurd slope(P.Q4.derivative()(Rational(0)), d_lin(Rational(0)), tau2);
    int s0 = q5_at(lo).sign(), s1 = q5_at(hi).sign(), s2 = slope.sign();
    int sp = q5_slope_polynomial().sign_at(Rational(N));
    cert.notes.push_back(std::string("Q5(0) ") + sign_word(s0) + ", Q5(N-4) " + sign_word(s1) + ", Q5'(0) " +
                         sign_word(s2) + ", slope polynomial at N " + sign_word(sp));
    if (s0 <= 0) refute_with(cert, lo, "Q5(0) not positive");
    if (s1 <= 0) refute_with(cert, hi, "Q5(N-4) not positive");
    if (s2 <= 0 || sp <= 0) refute_with(cert, lo, "Q5'(0) not positive");
  }
  // immediacy for h >= N-4: p0 > 1 - q from G~(1 - q, q) < 0 while 1 - q >= 0
  Rational a = std::max(Rational(N - 4), Rational(0));
  UniPoly one_minus_q = c(1) - make_rational(1, n - 1) * H;
  UniPoly gline = P.G_display.substitute_p(one_minus_q);
  cert.steps.push_back(certify_polynomial("p0_above_one_minus_q", gline, Interval::left_open(a, Rational(N - 1)),
                                          ClaimedSign::negative));
  cert.steps.back().notes.push_back("for h > N-1 the bound is immediate since 1 - q < 0 < p0");
  cert.steps.push_back(certify_m0_shift_positive(P));
  return cert;
}

SignCertificate certify_sigma_condition(int N) { return certify_sigma_condition(build_appendix_polynomials(N)); }

UniPoly inclusion_polynomial_i(const AppendixPolynomials& P) {
  UniPoly line = (c(P.N + 3) - H) * make_rational(1, P.N - 1);
  return Rational(P.N - 1) * P.G_display.substitute_p(line);
}

UniPoly inclusion_polynomial_ii(const AppendixPolynomials& P) {
  const long n = P.N;
  const UniPoly p = UniPoly::variable('p');
  const UniPoly one = UniPoly::constant(Rational(1), 'p');
  // h(p) = num(p) / p
  UniPoly num = Rational(n - 1) * p + (p + one) * (p + one) - Rational(n - 1) * p * p;
  if (P.G_display.degree_h() > 2) throw DomainError("inclusion substitution needs degree <= 2 in h");
  UniPoly acc(std::vector<Rational>{}, 'p');
  for (int i = 0; i <= P.G_display.degree_p(); ++i) {
    const UniPoly ci = P.G_display.coeff(i);
    for (int j = 0; j <= ci.degree(); ++j) {
      UniPoly term = UniPoly::monomial(ci.coeff(j), static_cast<unsigned>(2 - j + i), 'p') * pow(num, j);
      acc += term;
    }
  }
  return Rational(n - 1) * exact_divide(acc, (p + one) * (p + one));
}

InclusionCertificates region_inclusion_certificates(int N) {
  AppendixPolynomials P = build_appendix_polynomials(N);
  const long n = N;
  InclusionCertificates out;

  UniPoly r1 = inclusion_polynomial_i(P);
  UniPoly t1 = -((H + c(2)) * (H - c(2)) * (H - c(3))) - c(4 * n);
  out.case_i = certify_polynomial("inclusion_case_i", r1, Interval::closed(Rational(0), Rational(2 * (N - 1))),
                                  ClaimedSign::negative);
  out.case_i.notes.push_back(std::string("closed form -(h+2)(h-2)(h-3) - 4N: ") + (r1 == t1 ? "holds" : "fails"));
  out.case_i.notes.push_back("value at h = 2: " + r1(Rational(2)).get_str());
  if (r1 != t1) refute_with(out.case_i, Rational(0), "closed form mismatch");

  const UniPoly p = UniPoly::variable('p');
  UniPoly r2 = inclusion_polynomial_ii(P);
  UniPoly t2 = Rational(-n * n) * p * (p - UniPoly({1}, 'p')) * (p - UniPoly({1}, 'p')) +
               Rational(n) * UniPoly({-1, -1, -2, 3}, 'p') - p * p * UniPoly({1, 2}, 'p');
  out.case_ii = certify_polynomial("inclusion_case_ii", r2, Interval::closed(Rational(0), Rational(1)),
                                   ClaimedSign::negative);
  out.case_ii.notes.push_back(std::string("closed form -p(p-1)^2N^2 + (3p^3-2p^2-p-1)N - p^2(2p+1): ") +
                              (r2 == t2 ? "holds" : "fails"));
  if (r2 != t2) refute_with(out.case_ii, Rational(0), "closed form mismatch");
  return out;
}

bool AppendixResult::proven() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const SignCertificate& c) { return c.proven(); });
}

static AppendixResult run_one(int N) {
  auto t0 = std::chrono::steady_clock::now();
  AppendixPolynomials P = build_appendix_polynomials(N);
  AppendixResult r;
  r.N = N;
  r.certificates.push_back(certify_m0_negative(P));
  r.certificates.push_back(certify_m0_shift_positive(P));
  r.certificates.push_back(certify_sigma_condition(P));
  InclusionCertificates inc = region_inclusion_certificates(N);
  r.certificates.push_back(std::move(inc.case_i));
  r.certificates.push_back(std::move(inc.case_ii));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<AppendixResult> run_appendix_suite(const std::vector<int>& dims) {
  std::vector<std::future<AppendixResult>> jobs;
  jobs.reserve(dims.size());
  for (int N : dims) jobs.push_back(std::async(std::launch::async, run_one, N));
  std::vector<AppendixResult> out;
  out.reserve(dims.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

static const SignCertificate* first_refuted(const SignCertificate& cert) {
  if (cert.verdict != Verdict::proven) return &cert;
  for (const auto& s : cert.steps)
    if (const SignCertificate* f = first_refuted(s)) return f;
  return nullptr;
}

void require_proven(const SignCertificate& cert) {
  if (const SignCertificate* f = first_refuted(cert)) {
    std::string ce = f->counterexample ? f->counterexample->get_str() : std::string("none");
    throw CertificationFailed("certificate " + f->label + " refuted", ce);
  }
}

}  // namespace gradpde
