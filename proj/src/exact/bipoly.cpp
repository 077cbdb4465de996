#include "gradpde/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace gradpde {

BiPoly::BiPoly(std::vector<UniPoly> coefficients) : c_(std::move(coefficients)) { trim(); }

BiPoly BiPoly::in_h(const UniPoly& c) { return BiPoly(std::vector<UniPoly>{c}); }

BiPoly BiPoly::p_power(unsigned k) {
  std::vector<UniPoly> v(k + 1);
  v[k] = UniPoly::constant(Rational(1));
  return BiPoly(std::move(v));
}

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int BiPoly::degree_h() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

UniPoly BiPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : UniPoly(); }

UniPoly& BiPoly::coeff_ref(std::size_t i) {
  if (i >= c_.size()) c_.resize(i + 1);
  return c_[i];
}

Rational BiPoly::operator()(const Rational& p, const Rational& h) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + (*it)(h);
  return acc;
}

QuadSurd BiPoly::operator()(const QuadSurd& p, const Rational& h) const {
  QuadSurd acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + QuadSurd((*it)(h));
  return acc;
}

UniPoly BiPoly::at_h(const Rational& h) const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c(h));
  return UniPoly(std::move(v), 'p');
}

UniPoly BiPoly::substitute_p(const UniPoly& p_of_h) const {
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= p_of_h;
    acc += *it;
  }
  return acc;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<UniPoly> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

BiPoly& BiPoly::operator*=(const UniPoly& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

BiPoly& BiPoly::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

std::string to_string(const BiPoly& b) {
  std::ostringstream os;
  bool first = true;
  for (int i = b.degree_p(); i >= 0; --i) {
    UniPoly c = b.coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << to_string(c) << ")";
    if (i > 0) os << "*p";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace gradpde
