#pragma once

#include <vector>

#include "gradpde/poly.hpp"

namespace gradpde {

class SturmSequence {
 public:
  // Built from the squarefree part, so counts are of distinct roots.
  explicit SturmSequence(const UniPoly& p);

  int variations(const Rational& x) const;
  int variations_neg_inf() const;
  int variations_pos_inf() const;
  // Distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const;
  int count_real() const;

  const UniPoly& base() const { return seq_.front(); }
  const std::vector<UniPoly>& chain() const { return seq_; }

 private:
  std::vector<UniPoly> seq_;
};

// Closed rational interval holding exactly one root of the squarefree base;
// lo == hi marks an exact rational root.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

// Cauchy bound: all real roots lie in (-B, B).
Rational root_bound(const UniPoly& p);

// Disjoint isolating intervals (ascending) for the distinct roots of p in the
// closed interval [lo, hi].  Interior isolating intervals never have a root
// at an endpoint unless they are exact.
std::vector<RootInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi);
std::vector<RootInterval> isolate_all_roots(const UniPoly& p);

// Shrinks a non-exact isolating interval of the squarefree polynomial s below
// the given width (or to an exact root if bisection hits it).
void refine(const UniPoly& s, RootInterval& iv, const Rational& width);

// Sign of q at the root isolated by iv (s squarefree, iv isolates one root
// of s).  Exact: uses gcd(s, q) to detect q(root) = 0.
int sign_at_root(const UniPoly& s, RootInterval& iv, const UniPoly& q);

}  // namespace gradpde
