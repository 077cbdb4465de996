#include "gradpde/poly.hpp"

#include <algorithm>
#include <sstream>

#include "gradpde/errors.hpp"

namespace gradpde {

UniPoly::UniPoly(std::vector<Rational> coefficients, char var) : c_(std::move(coefficients)), var_(var) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

UniPoly::UniPoly(std::initializer_list<long> coefficients, char var) : var_(var) {
  for (long c : coefficients) c_.emplace_back(c);
  trim();
}

UniPoly UniPoly::constant(const Rational& c, char var) { return UniPoly(std::vector<Rational>{c}, var); }

UniPoly UniPoly::monomial(const Rational& c, unsigned k, char var) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UniPoly(std::move(v), var);
}

UniPoly UniPoly::variable(char var) { return monomial(Rational(1), 1, var); }

UniPoly UniPoly::with_var(char v) const {
  UniPoly out = *this;
  out.var_ = v;
  return out;
}

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

Rational UniPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int UniPoly::sign_at(const Rational& x) const { return sgn((*this)(x)); }

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(std::vector<Rational>{}, var_);
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d), var_);
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc(std::vector<Rational>{}, inner.var_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += UniPoly::constant(*it, inner.var_);
  }
  return acc;
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  UniPoly out = *this;
  Rational inv = 1 / leading();
  out *= inv;
  return out;
}

UniPoly UniPoly::reflect() const {
  UniPoly out = *this;
  for (std::size_t i = 1; i < out.c_.size(); i += 2) out.c_[i] = -out.c_[i];
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {UniPoly(std::vector<Rational>{}, a.var_), a};
  std::vector<Rational> quo(da - db + 1, Rational(0));
  Rational lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    Rational f = rem[k + db] / lead;
    quo[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.c_[j];
  }
  rem.resize(db);
  return {UniPoly(std::move(quo), a.var_), UniPoly(std::move(rem), a.var_)};
}

UniPoly pow(const UniPoly& p, unsigned k) {
  UniPoly acc = UniPoly::constant(Rational(1), p.var());
  for (unsigned i = 0; i < k; ++i) acc *= p;
  return acc;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = UniPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = gcd(p, p.derivative());
  return UniPoly::divmod(p, g).first.monic();
}

UniPoly exact_divide(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = UniPoly::divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

std::string to_string(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k > 0) {
      if (a != 1) os << "*";
      os << p.var();
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

}  // namespace gradpde
