#include "gradpde/sturm.hpp"

#include "gradpde/errors.hpp"

namespace gradpde {

SturmSequence::SturmSequence(const UniPoly& p) {
  UniPoly s = squarefree(p);
  seq_.push_back(s);
  if (s.degree() <= 0) return;
  seq_.push_back(s.derivative());
  while (true) {
    const UniPoly& a = seq_[seq_.size() - 2];
    const UniPoly& b = seq_.back();
    UniPoly r = -UniPoly::divmod(a, b).second;
    if (r.is_zero()) break;
    seq_.push_back(std::move(r));
  }
}

static int count_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::variations(const Rational& x) const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& p : seq_) s.push_back(p.sign_at(x));
  return count_changes(s);
}

int SturmSequence::variations_pos_inf() const {
  std::vector<int> s;
  for (const auto& p : seq_) s.push_back(sgn(p.leading()));
  return count_changes(s);
}

int SturmSequence::variations_neg_inf() const {
  std::vector<int> s;
  for (const auto& p : seq_) {
    int sg = sgn(p.leading());
    if (p.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return count_changes(s);
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (seq_.front().degree() <= 0) return 0;
  if (b < a) return 0;
  return variations(a) - variations(b);
}

int SturmSequence::count_real() const {
  if (seq_.front().degree() <= 0) return 0;
  return variations_neg_inf() - variations_pos_inf();
}

Rational root_bound(const UniPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational lead = abs(p.leading());
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(i)) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

namespace {

void isolate_rec(const SturmSequence& sq, const Rational& a, const Rational& b, int cnt,
                 std::vector<RootInterval>& out) {
  if (cnt <= 0) return;
  const UniPoly& s = sq.base();
  if (cnt == 1 && s.sign_at(a) != 0) {
    if (s.sign_at(b) == 0) {
      out.push_back({b, b});
      return;
    }
    Rational m = (a + b) / 2;
    if (s.sign_at(m) != 0) {
      out.push_back({a, b});
      return;
    }
  }
  Rational m = (a + b) / 2;
  int left = sq.count(a, m);
  isolate_rec(sq, a, m, left, out);
  isolate_rec(sq, m, b, cnt - left, out);
}

}  // namespace

std::vector<RootInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<RootInterval> out;
  if (hi < lo) return out;
  SturmSequence sq(p);
  const UniPoly& s = sq.base();
  if (s.degree() <= 0) return out;
  if (s.sign_at(lo) == 0) out.push_back({lo, lo});
  if (lo == hi) return out;
  isolate_rec(sq, lo, hi, sq.count(lo, hi), out);
  return out;
}

std::vector<RootInterval> isolate_all_roots(const UniPoly& p) {
  Rational b = root_bound(p);
  return isolate_roots(p, -b, b);
}

void refine(const UniPoly& s, RootInterval& iv, const Rational& width) {
  if (iv.exact()) return;
  int sl = s.sign_at(iv.lo);
  while (iv.hi - iv.lo > width) {
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = s.sign_at(m);
    if (sm == 0) {
      iv.lo = iv.hi = m;
      return;
    }
    if (sm == sl) iv.lo = m;
    else iv.hi = m;
  }
}

int sign_at_root(const UniPoly& s, RootInterval& iv, const UniPoly& q) {
  if (iv.exact()) return q.sign_at(iv.lo);
  if (q.is_zero()) return 0;
  UniPoly g = gcd(s, q);
  if (g.degree() > 0) {
    // the root is a root of q iff g vanishes in the isolating interval
    if (g.sign_at(iv.lo) == 0 || g.sign_at(iv.hi) == 0) {
      throw DomainError("isolating interval endpoint is a root");
    }
    SturmSequence gs(g);
    if (gs.count(iv.lo, iv.hi) > 0) return 0;
  }
  SturmSequence qs(q);
  int sl = s.sign_at(iv.lo);
  while (qs.count(iv.lo, iv.hi) > 0 || q.sign_at(iv.lo) == 0) {
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = s.sign_at(m);
    if (sm == 0) {
      iv.lo = iv.hi = m;
      return q.sign_at(m);
    }
    if (sm == sl) iv.lo = m;
    else iv.hi = m;
  }
  return q.sign_at(iv.lo);
}

}  // namespace gradpde
