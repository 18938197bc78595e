#pragma once

#include <set>
#include <string>

#include "vfinv/jet.hpp"
#include "vfinv/lie.hpp"

namespace vfinv {

struct Invariant {
  char family = 'T';      // 'T', 'K', 'L' (and 'J' for the named rational function)
  std::vector<int> idx;   // T/K/J: {i,j};  L: {i,j,k}
  ExprPtr expr;

  std::string name() const;        // "T12", "K21", "L123"
  std::string latex_name() const;  // "T_{12}"
};

// The basic rational differential functions on the jet coordinates:
//   T_ij = A_{i,j} A_j / A_i                      (i != j)
//   K_ij = A_{i,jj} A_j / A_{i,j} + A_{j,j}       (i != j)
//   L_ijk = A_{i,jk} A_j A_k / A_i                (j < k, i not in {j,k})
//   J_ij = A_{i,ij} A_i A_j / A_{i,j} - 2 A_{i,i} (i != j; NOT an invariant)
ExprPtr T_invariant(int i, int j);
ExprPtr K_invariant(int i, int j);
ExprPtr L_invariant(int i, int j, int k);
ExprPtr J_function(int i, int j);

// Pairs (i,j) declaring that the coordinate A_{i,j} vanishes identically on
// the equations under study; the T_ij/K_ij built on them are then dropped.
using VanishingSet = std::set<std::pair<int, int>>;

struct InvariantSet {
  int n = 0;
  int order = 1;
  std::vector<Invariant> invariants;
  // At order 2 and n >= 4 the T/K/L list is a verified fundamental subset,
  // not the complete count, which is only conjectured.
  bool fundamental_subset_only = false;
  long long conjectured_total = 0;  // meaningful when fundamental_subset_only
};

// The n(n-1) - p functions T_ij, each verified to be annihilated by the
// first-order determining operators (a failure throws InternalInconsistency).
InvariantSet first_order_invariants(int n, const VanishingSet& vanishing = {});

// T, K (and for n >= 3, L) verified against the second-order determining
// operators.
InvariantSet second_order_invariants(int n, const VanishingSet& vanishing = {});

struct AnnihilationReport {
  bool annihilated = true;
  std::vector<bool> per_op;
  std::vector<ExprPtr> residuals;  // op_t(f), normalized, one per operator
};
AnnihilationReport verify_annihilated(const ExprPtr& f, const std::vector<DiffOperator>& ops);

// Order-0 sanity chart: the 2n slot operators of the unprolonged generator
// acting on (x^i, A_i) have full rank 2n, leaving no invariants.
struct ZerothOrderReport {
  int n = 0;
  int num_ops = 0;
  int num_coords = 0;
  int rank = 0;
  int invariant_count = 0;
};
ZerothOrderReport zeroth_order_report(int n);

// Jacobian-style adjoint of a square-pivot system: with P the pivot block
// (coefficients of ops on `pivots`) and N the rest, row t of `matrix` gives
// the nonpivot coefficients of Delta_t = d/d(pivot_t) + sum_s M_ts d/d(nonpivot_s),
// M = P^{-1} N.  Throws StructureError when P is singular or a target is
// missing from pivots+nonpivots.
struct AdjointSystem {
  std::vector<Var> pivots;
  std::vector<Var> nonpivots;
  std::vector<DiffOperator> ops;
  SymbolicMatrix matrix;  // |ops| x |nonpivots|
  // True when the pivot block is diagonal and each row equals
  // (operator coefficients) / (its pivot coefficient), recomputed directly.
  bool reconstruction_ok = false;
};
AdjointSystem jacobian_adjoint(const std::vector<DiffOperator>& ops,
                               const std::vector<Var>& pivots,
                               const std::vector<Var>& nonpivots);

// Conventional coordinate orderings for the order-2 adjoint of the
// determining system (pivots A_1..A_n, A_11..A_nn, and a fixed nonpivot
// sequence for n = 2, 3 matching the reference tables; the global Var order
// otherwise).
std::vector<Var> default_pivots(int n, int order);
std::vector<Var> default_nonpivots(int n, int order);

// Counting helpers (valid for n up to 20; all fit in long long).
long long count_first_order(int n, int p = 0);  // n(n-1) - p
long long count_tkl(int n);                     // n(n-1)(n+2)/2
long long conjectured_m2(int n);                // n(2^(n-1) + n - 2)
long long weighted_binomial_sum(int n);         // sum_{j=2}^n j C(n,j) = n(2^(n-1) - 1)

}  // namespace vfinv
