#include "gradpde/certificate.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "gradpde/errors.hpp"

namespace gradpde {

const char* to_string(ClaimedSign s) {
  switch (s) {
    case ClaimedSign::positive: return "positive";
    case ClaimedSign::negative: return "negative";
    case ClaimedSign::nonnegative: return "nonnegative";
    case ClaimedSign::nonpositive: return "nonpositive";
  }
  return "?";
}

const char* to_string(Method m) { return m == Method::sturm ? "sturm" : "subdivision"; }
const char* to_string(Verdict v) { return v == Verdict::proven ? "proven" : "refuted"; }

bool sign_satisfies(int s, ClaimedSign claim) {
  switch (claim) {
    case ClaimedSign::positive: return s > 0;
    case ClaimedSign::negative: return s < 0;
    case ClaimedSign::nonnegative: return s >= 0;
    case ClaimedSign::nonpositive: return s <= 0;
  }
  return false;
}

static bool strict(ClaimedSign c) { return c == ClaimedSign::positive || c == ClaimedSign::negative; }
static int target_sign(ClaimedSign c) {
  return (c == ClaimedSign::positive || c == ClaimedSign::nonnegative) ? 1 : -1;
}

bool Interval::contains(const Rational& x) const {
  bool left = lo_open ? x > lo : x >= lo;
  bool right = hi_open ? x < hi : x <= hi;
  return left && right;
}

std::string Interval::str() const {
  return std::string(lo_open ? "(" : "[") + lo.get_str() + ", " + hi.get_str() + (hi_open ? ")" : "]");
}

int RadicalForm::sign_at(const Rational& x) const {
  if (is_polynomial()) return A.sign_at(x);
  Rational v = V(x);
  if (sgn(v) == 0) throw DomainError("radical denominator vanishes");
  Rational w = U(x) / v;
  if (sgn(w) < 0) throw DomainError("negative radicand");
  return QuadSurd(A(x), B(x), w).sign();
}

double RadicalForm::eval(double x) const {
  if (is_polynomial()) return A.eval(x);
  return A.eval(x) + B.eval(x) * std::sqrt(U.eval(x) / V.eval(x));
}

UniPoly RadicalForm::squared_out() const {
  if (is_polynomial()) return A;
  return A * A * V - B * B * U;
}

bool SignCertificate::proven() const {
  if (verdict != Verdict::proven) return false;
  for (const auto& s : steps)
    if (!s.proven()) return false;
  return true;
}

namespace {

bool expression_vanishes(const RadicalForm& f, int sA, int sB, int sU) {
  if (f.is_polynomial()) return sA == 0;
  if (sU == 0) return sA == 0;
  return (sA == 0 && sB == 0) || (sA * sB < 0);
}

// Samples strictly inside each gap between the ordered point set.
std::vector<Rational> gap_samples(const Interval& iv, const std::vector<RootInterval>& zeros) {
  std::vector<Rational> out;
  Rational left = iv.lo;
  for (const auto& z : zeros) {
    if (z.lo > left) out.push_back((left + z.lo) / 2);
    left = z.hi;
  }
  if (iv.hi > left) out.push_back((left + iv.hi) / 2);
  return out;
}

}  // namespace

SignCertificate certify(std::string label, const RadicalForm& expr, const Interval& iv, ClaimedSign claim,
                        bool allow_endpoint_equality) {
  SignCertificate cert;
  cert.label = std::move(label);
  cert.expr = expr;
  cert.interval = iv;
  cert.claimed = claim;
  cert.method = Method::sturm;
  cert.verdict = Verdict::proven;

  auto refute = [&](const Rational& x, const std::string& why) {
    cert.verdict = Verdict::refuted;
    cert.counterexample = x;
    cert.notes.push_back(why);
    return cert;
  };

  Interval closure = Interval::closed(iv.lo, iv.hi);
  if (!expr.is_polynomial()) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sv = expr.V.sign_at(mid);
    if (sv == 0) sv = 1;
    cert.steps.push_back(certify_polynomial(cert.label + ".denominator", expr.V, closure,
                                            sv > 0 ? ClaimedSign::positive : ClaimedSign::negative));
    cert.steps.push_back(certify_polynomial(cert.label + ".radicand", expr.U, closure,
                                            sv > 0 ? ClaimedSign::nonnegative : ClaimedSign::nonpositive));
    for (const auto& s : cert.steps)
      if (s.verdict != Verdict::proven) return refute(*s.counterexample, "radical not real on the interval");
  }

  UniPoly D = expr.squared_out();
  if (D.is_zero()) throw DomainError("degenerate radical form (squared-out polynomial vanishes)");
  UniPoly S = squarefree(D);
  cert.witness_polynomial = D;
  cert.sturm_length = static_cast<int>(SturmSequence(D).chain().size());

  const Rational fine = (iv.hi - iv.lo) / 1024;

  // pieces between roots of A*B
  if (!expr.is_polynomial()) {
    UniPoly AB = squarefree(expr.A * expr.B);
    std::vector<RootInterval> inner;
    for (auto r : isolate_roots(AB, iv.lo, iv.hi)) {
      if (r.exact() && (r.lo == iv.lo || r.lo == iv.hi)) continue;
      refine(AB, r, fine);
      inner.push_back(r);
    }
    for (const Rational& x : gap_samples(Interval::open(iv.lo, iv.hi), inner)) {
      Piece pc;
      pc.sample = x;
      pc.sign_A = expr.A.sign_at(x);
      pc.sign_B = expr.B.sign_at(x);
      int t = target_sign(claim);
      pc.immediate = (pc.sign_A == t || pc.sign_A == 0) && (pc.sign_B == t || pc.sign_B == 0);
      cert.pieces.push_back(pc);
    }
  }

  std::vector<RootInterval> zeros;
  for (auto r : isolate_roots(D, iv.lo, iv.hi)) {
    RootWitness w;
    w.sign_A = sign_at_root(S, r, expr.A);
    w.sign_B = expr.is_polynomial() ? 0 : sign_at_root(S, r, expr.B);
    w.sign_U = expr.is_polynomial() ? 1 : sign_at_root(S, r, expr.U);
    w.where = r;
    w.expression_vanishes = expression_vanishes(expr, w.sign_A, w.sign_B, w.sign_U);
    cert.roots.push_back(w);
    if (!w.expression_vanishes) continue;
    bool at_lo = r.exact() && r.lo == iv.lo;
    bool at_hi = r.exact() && r.lo == iv.hi;
    if ((at_lo && iv.lo_open) || (at_hi && iv.hi_open)) {
      cert.equality_points.push_back(r.lo);
      cert.notes.push_back("vanishes at open endpoint " + r.lo.get_str());
      continue;
    }
    if (at_lo || at_hi) {
      if (strict(claim) && !allow_endpoint_equality)
        return refute(r.lo, "vanishes at closed endpoint " + r.lo.get_str());
      cert.equality_points.push_back(r.lo);
      cert.notes.push_back("equality at endpoint " + r.lo.get_str());
      zeros.push_back(r);
      continue;
    }
    if (strict(claim)) {
      if (r.exact()) return refute(r.lo, "vanishes at " + r.lo.get_str());
      RootInterval t = r;
      refine(S, t, make_rational(1, 1L << 40));
      if (t.exact()) return refute(t.lo, "vanishes at " + t.lo.get_str());
      for (const Rational& x : {t.lo, t.hi, Rational((t.lo + t.hi) / 2)})
        if (!sign_satisfies(expr.sign_at(x), claim)) return refute(x, "sign change near an algebraic zero");
      return refute((t.lo + t.hi) / 2, "touches zero at an algebraic point");
    }
    if (r.exact()) cert.equality_points.push_back(r.lo);
    refine(S, r, fine);
    zeros.push_back(r);
  }

  auto samples = gap_samples(iv, zeros);
  if (samples.empty()) samples.push_back((iv.lo + iv.hi) / 2);
  int t = target_sign(claim);
  bool first = true;
  for (const Rational& x : samples) {
    int s = expr.sign_at(x);
    if (first) {
      cert.sample = x;
      cert.sample_sign = s;
      first = false;
    }
    if (s != t) return refute(x, "wrong sign at sample point");
  }
  return cert;
}

SignCertificate certify_polynomial(std::string label, const UniPoly& p, const Interval& iv, ClaimedSign claim,
                                   bool allow_endpoint_equality) {
  return certify(std::move(label), RadicalForm::polynomial(p), iv, claim, allow_endpoint_equality);
}

std::optional<Rational> resample(const SignCertificate& cert, int count) {
  const Interval& iv = cert.interval;
  auto is_equality = [&](const Rational& x) {
    for (const auto& e : cert.equality_points)
      if (e == x) return true;
    return false;
  };
  std::vector<Rational> pts;
  if (!iv.lo_open) pts.push_back(iv.lo);
  if (!iv.hi_open) pts.push_back(iv.hi);
  for (int k = 1; k <= count; ++k) pts.push_back(iv.lo + (iv.hi - iv.lo) * make_rational(k, count + 1));
  for (const auto& x : pts) {
    if (is_equality(x)) continue;
    if (!sign_satisfies(cert.expr.sign_at(x), cert.claimed)) return x;
  }
  return std::nullopt;
}

static void write_coeffs(std::ostream& os, const UniPoly& p) {
  if (p.is_zero()) {
    os << " 0";
    return;
  }
  for (const auto& c : p.coefficients()) os << ' ' << c.get_str();
}

static const char* sign_char(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

void write_certificate(std::ostream& os, const SignCertificate& c, int depth) {
  std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
  os << ind << "begin certificate " << c.label << '\n';
  os << ind << "  claim " << to_string(c.claimed) << '\n';
  os << ind << "  interval " << c.interval.str() << '\n';
  os << ind << "  expr.A";
  write_coeffs(os, c.expr.A);
  os << '\n';
  if (!c.expr.is_polynomial()) {
    os << ind << "  expr.B";
    write_coeffs(os, c.expr.B);
    os << '\n' << ind << "  expr.U";
    write_coeffs(os, c.expr.U);
    os << '\n' << ind << "  expr.V";
    write_coeffs(os, c.expr.V);
    os << '\n';
  }
  os << ind << "  method " << to_string(c.method) << '\n';
  os << ind << "  witness.polynomial";
  write_coeffs(os, c.witness_polynomial);
  os << '\n';
  os << ind << "  witness.sturm_length " << c.sturm_length << '\n';
  for (const auto& r : c.roots) {
    os << ind << "  root [" << r.where.lo.get_str() << ", " << r.where.hi.get_str() << "] A" << sign_char(r.sign_A)
       << " B" << sign_char(r.sign_B) << " U" << sign_char(r.sign_U)
       << (r.expression_vanishes ? " vanishes" : " nonzero") << '\n';
  }
  for (const auto& p : c.pieces) {
    os << ind << "  piece " << p.sample.get_str() << " A" << sign_char(p.sign_A) << " B" << sign_char(p.sign_B)
       << (p.immediate ? " immediate" : " squared") << '\n';
  }
  os << ind << "  sample " << c.sample.get_str() << ' ' << sign_char(c.sample_sign) << '\n';
  for (const auto& e : c.equality_points) os << ind << "  equality " << e.get_str() << '\n';
  for (const auto& n : c.notes) os << ind << "  note " << n << '\n';
  for (const auto& s : c.steps) write_certificate(os, s, depth + 1);
  os << ind << "  verdict " << to_string(c.verdict) << '\n';
  if (c.counterexample) os << ind << "  counterexample " << c.counterexample->get_str() << '\n';
  os << ind << "end\n";
}

std::string serialize(const SignCertificate& cert) {
  std::ostringstream os;
  write_certificate(os, cert);
  return os.str();
}

}  // namespace gradpde
