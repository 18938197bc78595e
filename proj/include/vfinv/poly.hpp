#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vfinv/rational.hpp"
#include "vfinv/variable.hpp"

namespace vfinv {

// A monomial is a sorted (by Var) list of variable/exponent pairs with all
// exponents > 0.  The empty monomial is 1.
using Monomial = std::vector<std::pair<Var, int>>;

int total_degree(const Monomial& m);

// Graded lexicographic order: compare total degree first; on ties the
// monomial with the larger exponent on the earliest variable is larger.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& d, const Monomial& m);
Monomial mono_div(const Monomial& m, const Monomial& d);  // requires divisibility

// Sparse multivariate polynomial over the rationals.  The term map never
// stores zero coefficients, so is_zero() is just emptiness.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) terms_[Monomial{}] = c;
  }
  explicit Poly(long long c) : Poly(Rational(c)) {}

  static Poly var(const Var& v) {
    Poly p;
    p.terms_[Monomial{{v, 1}}] = 1;
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {  // only meaningful when is_constant()
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  // Leading term in grlex order.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(int k) const;  // k >= 0

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::vector<Var> vars() const;  // sorted, unique
  bool has_atoms() const;
  int degree_in(const Var& v) const;

  // View as a univariate polynomial in v with Poly coefficients.
  std::map<int, Poly> univar(const Var& v) const;
  static Poly from_univar(const Var& v, const std::map<int, Poly>& coeffs);

  Poly partial(const Var& v) const;

  // Signed rational content: gcd of all coefficients, carrying the sign of
  // the grlex-leading coefficient.  Zero polynomial has content 0.
  Rational content() const;
  // this / content(): integer coprime coefficients, positive leading one.
  Poly primitive() const;

  Poly scaled(const Rational& c) const;  // c * this

 private:
  TermMap terms_;
};

// Primitive gcd with positive leading coefficient (grlex); gcd(0,0) = 0,
// gcd of anything with a nonzero constant is 1.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact division: returns true and sets *q when d divides p.
bool try_divide(const Poly& p, const Poly& d, Poly* q);
Poly exact_divide(const Poly& p, const Poly& d);  // throws on non-divisibility

}  // namespace vfinv
