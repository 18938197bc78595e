#pragma once

#include <map>
#include <string>
#include <vector>

#include "vfinv/expr.hpp"

namespace vfinv {

// First-order differential operator  sum_t c_t d/dt  on the coordinate ring
// spanned by the x^i and the jet coordinates A_{i,J}.  Coefficients are kept
// in canonical form and zero terms are dropped, so term-map equality is exact
// operator equality.  Reparametrization symbols xi<i>p<j> occurring in
// coefficients are treated as formal constants by apply().
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(int n) : n_(n) {}

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Var, ExprPtr>& terms() const { return terms_; }

  // Normalizes coeff; drops the term when it vanishes.  Targets must be
  // x or jet coordinates.
  void set_term(const Var& target, const ExprPtr& coeff);
  void add_term(const Var& target, const ExprPtr& coeff);

  ExprPtr coefficient(const Var& target) const;  // zero when absent

  // Derivation action: sum_t c_t * partial(f, t).
  ExprPtr apply(const ExprPtr& f) const;

  // Keep only the given targets.
  DiffOperator restricted(const std::vector<Var>& coords) const;

  DiffOperator scaled(const ExprPtr& factor) const;

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);

  friend bool operator==(const DiffOperator& a, const DiffOperator& b);
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  std::string str() const;
  std::string latex() const;

 private:
  int n_ = 0;
  std::map<Var, ExprPtr> terms_;
};

// Lie bracket [p, q] = p q - q p, again a first-order operator:
// coefficient on t is p(q_t) - q(p_t).
DiffOperator commutator(const DiffOperator& p, const DiffOperator& q);

}  // namespace vfinv
