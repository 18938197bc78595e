#pragma once

#include <vector>

#include "vfinv/errors.hpp"
#include "vfinv/poly.hpp"

namespace vfinv {

// Canonical rational function num/den: gcd(num, den) = 1, den has integer
// coprime coefficients with positive grlex-leading coefficient, zero is 0/1.
// Two equal rational functions always have identical (num, den) pairs, so
// operator== is exact semantic equality.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  explicit RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
  explicit RatFunc(long long c) : num_(Rational(c)), den_(Rational(1)) {}
  RatFunc(Poly n, Poly d);  // reduces; throws DivisionByZero if d == 0

  static RatFunc var(const Var& v) { return RatFunc(Poly::var(v), Poly(Rational(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == Poly(Rational(1)); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc pow(int k) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::vector<Var> vars() const;
  bool has_atoms() const { return num_.has_atoms() || den_.has_atoms(); }

  RatFunc partial(const Var& v) const {
    return RatFunc(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
  }

 private:
  Poly num_;
  Poly den_;
};

}  // namespace vfinv
