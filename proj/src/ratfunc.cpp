#include "vfinv/ratfunc.hpp"

#include <set>

namespace vfinv {

RatFunc::RatFunc(Poly n, Poly d) {
  if (d.is_zero()) throw DivisionByZero();
  if (n.is_zero()) {
    num_ = Poly();
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = poly_gcd(n, d);
  n = exact_divide(n, g);
  d = exact_divide(d, g);
  // Push the denominator's rational content (and sign) into the numerator.
  Rational c = d.content();
  num_ = n.scaled(Rational(1) / c);
  den_ = d.scaled(Rational(1) / c);
}

RatFunc RatFunc::pow(int k) const {
  if (k == 0) return RatFunc(Rational(1));
  if (k < 0) {
    if (is_zero()) throw DivisionByZero("zero raised to a negative power");
    return RatFunc(den_.pow(-k), num_.pow(-k));
  }
  // Coprime parts stay coprime under powers, but re-reduce for the
  // denominator-content normalization.
  return RatFunc(num_.pow(k), den_.pow(k));
}

std::vector<Var> RatFunc::vars() const {
  std::set<Var> s;
  for (const Var& v : num_.vars()) s.insert(v);
  for (const Var& v : den_.vars()) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace vfinv
