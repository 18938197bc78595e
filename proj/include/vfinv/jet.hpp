#pragma once

#include <utility>

#include "vfinv/operators.hpp"

namespace vfinv {

// Symbolic machinery needs n in 2..9: the structure theory degenerates at
// n = 1, and the token grammar keeps jet multi-indices unambiguous up to 9.
void check_dim(int n);

// Generator of the coefficient transformation pseudo-group induced by
// componentwise reparametrizations x^i -> psi^i(x^i):
//   sum_i xi^i d/dx^i + sum_i A_i xi^i(1) d/dA_i.
DiffOperator build_generator(int n);

// Coefficient of d/dA_{i,J} in the prolonged generator, in closed form
// (J is a multi-index with |J| <= 2).
ExprPtr prolongation_coefficient(int i, const std::vector<int>& J);

// Prolongs build_generator(n) to all jet coordinates of order <= `order`
// (order 1 or 2).  `op` must equal build_generator(n).
DiffOperator prolong(const DiffOperator& op, int order);

// The same operator computed by the recursion
//   eta_{i,{}} = A_i xi^i(1),
//   eta_{i,J+k} = D_k(eta_{i,J}) - sum_m D_k(xi^m) A_{i,J+m}
// with D_k the total derivative.  Independent of the closed forms; used to
// cross-check them.
DiffOperator generic_prolong_oracle(int n, int order);

// All multi-indices over 1..n with lo <= |J| <= hi, as sorted multisets in
// enumeration order (sizes ascending, entries lexicographic).
std::vector<std::vector<int>> multi_indices(int n, int lo, int hi);

// A prolonged generator's coefficients are linear forms over the symbols
// xi<i>p<j>; slot (i,j) is the operator multiplying xi<i>p<j>.
struct XiDecomposition {
  int n = 0;
  std::map<std::pair<int, int>, DiffOperator> slots;

  const DiffOperator& slot(int i, int j) const;  // throws when absent
  bool has(int i, int j) const { return slots.count({i, j}) > 0; }
  DiffOperator reassemble() const;  // sum_{i,j} xi<i>p<j> * slot(i,j)
};

// Throws StructureError unless every coefficient is xi-linear with xi-free
// denominator.
XiDecomposition xi_decompose(const DiffOperator& op);

// Coordinates on which the order-`order` reduction acts:
//   order 1: A_i plus the off-axis A_{i,k} (k != i)          (n^2 of them)
//   order 2: all A_{i,J}, |J| <= 2, except A_{i,{i,i}}       (n^2(3+n)/2)
std::vector<Var> invariant_coordinates(int n, int order);

// Slot operators of the prolonged generator, restricted to the invariant
// coordinates: families xi<i>p1 (order >= 1) and xi<i>p2 (order 2).
struct DeterminingSystem {
  int n = 0;
  int order = 1;
  std::vector<DiffOperator> ops;
  std::vector<std::pair<int, int>> labels;  // (i, j) per op, same order as ops
  std::vector<Var> coords;

  const DiffOperator& op_for(int i, int j) const;
};
DeterminingSystem determining_system(int n, int order);

// Multiplicity-weighted view of an operator: the coefficient on d/dA_{i,J}
// is scaled by the number of ordered tuples realizing the multiset J
// (e.g. 2 for J = {j,k} with j != k).  This matches conventions that index
// jets by ordered derivative tuples rather than multisets; bracket and
// adjoint tables are commonly stated that way, so commands that emit them
// default to this view.
DiffOperator multiplicity_weighted(const DiffOperator& op);
std::vector<DiffOperator> multiplicity_weighted(const std::vector<DiffOperator>& ops);
int multi_index_multiplicity(const std::vector<int>& J);

}  // namespace vfinv
