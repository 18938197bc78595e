#include "vfinv/invariants.hpp"

#include <algorithm>

namespace vfinv {

std::string Invariant::name() const {
  std::string s(1, family);
  for (int v : idx) s += std::to_string(v);
  return s;
}

std::string Invariant::latex_name() const {
  std::string s(1, family);
  s += "_{";
  for (int v : idx) s += std::to_string(v);
  return s + "}";
}

namespace {

void check_pair(int n, int i, int j) {
  check_dim(n);
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw DomainError("indices must be distinct and within 1..n");
}

}  // namespace

ExprPtr T_invariant(int i, int j) {
  if (i == j) throw DomainError("T_ij needs i != j");
  return normalize(div_expr(mul(A_(i, {j}), A_(j)), A_(i)));
}

ExprPtr K_invariant(int i, int j) {
  if (i == j) throw DomainError("K_ij needs i != j");
  return normalize(add(div_expr(mul(A_(i, {j, j}), A_(j)), A_(i, {j})), A_(j, {j})));
}

ExprPtr L_invariant(int i, int j, int k) {
  if (j >= k || i == j || i == k) throw DomainError("L_ijk needs j < k and i distinct from both");
  return normalize(div_expr(mul(mul(A_(i, {j, k}), A_(j)), A_(k)), A_(i)));
}

ExprPtr J_function(int i, int j) {
  if (i == j) throw DomainError("J_ij needs i != j");
  return normalize(sub(div_expr(mul(mul(A_(i, {i, j}), A_(i)), A_(j)), A_(i, {j})),
                       mul(make_num(2), A_(i, {i}))));
}

AnnihilationReport verify_annihilated(const ExprPtr& f, const std::vector<DiffOperator>& ops) {
  AnnihilationReport rep;
  rep.per_op.reserve(ops.size());
  rep.residuals.reserve(ops.size());
  for (const auto& op : ops) {
    ExprPtr r = op.apply(f);
    bool zero = to_ratfunc(r).is_zero();
    rep.per_op.push_back(zero);
    rep.residuals.push_back(r);
    rep.annihilated = rep.annihilated && zero;
  }
  return rep;
}

namespace {

void validate_vanishing(int n, const VanishingSet& vanishing) {
  for (const auto& [i, j] : vanishing) check_pair(n, i, j);
}

// Every function handed out as an invariant is re-verified against the
// determining operators; a failure is a library bug.
void certify(const InvariantSet& set, const std::vector<DiffOperator>& ops) {
  for (const Invariant& inv : set.invariants) {
    AnnihilationReport rep = verify_annihilated(inv.expr, ops);
    if (!rep.annihilated)
      throw InternalInconsistency("invariant " + inv.name() +
                                  " is not annihilated by the determining system");
  }
}

}  // namespace

InvariantSet first_order_invariants(int n, const VanishingSet& vanishing) {
  check_dim(n);
  validate_vanishing(n, vanishing);
  InvariantSet set;
  set.n = n;
  set.order = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || vanishing.count({i, j})) continue;
      set.invariants.push_back({'T', {i, j}, T_invariant(i, j)});
    }
  certify(set, determining_system(n, 1).ops);
  return set;
}

InvariantSet second_order_invariants(int n, const VanishingSet& vanishing) {
  check_dim(n);
  validate_vanishing(n, vanishing);
  InvariantSet set;
  set.n = n;
  set.order = 2;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || vanishing.count({i, j})) continue;
      set.invariants.push_back({'T', {i, j}, T_invariant(i, j)});
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || vanishing.count({i, j})) continue;
      set.invariants.push_back({'K', {i, j}, K_invariant(i, j)});
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        if (i == j || i == k) continue;
        set.invariants.push_back({'L', {i, j, k}, L_invariant(i, j, k)});
      }
  if (n >= 4) {
    set.fundamental_subset_only = true;
    set.conjectured_total = conjectured_m2(n);
  }
  certify(set, determining_system(n, 2).ops);
  return set;
}

ZerothOrderReport zeroth_order_report(int n) {
  ZerothOrderReport rep;
  rep.n = n;
  XiDecomposition d = xi_decompose(build_generator(n));
  std::vector<DiffOperator> ops;
  for (const auto& [key, op] : d.slots) ops.push_back(op);
  std::vector<Var> coords;
  for (int i = 1; i <= n; ++i) coords.push_back(Var::indep(i));
  for (int i = 1; i <= n; ++i) coords.push_back(Var::jet(i, {}));
  std::sort(coords.begin(), coords.end());
  rep.num_ops = static_cast<int>(ops.size());
  rep.num_coords = static_cast<int>(coords.size());
  rep.rank = symbolic_rank(coefficient_matrix(ops, coords));
  rep.invariant_count = rep.num_coords - rep.rank;
  return rep;
}

AdjointSystem jacobian_adjoint(const std::vector<DiffOperator>& ops,
                               const std::vector<Var>& pivots,
                               const std::vector<Var>& nonpivots) {
  if (ops.size() != pivots.size())
    throw StructureError("need exactly one pivot coordinate per operator");
  std::set<Var> seen;
  for (const Var& v : pivots)
    if (!seen.insert(v).second) throw StructureError("duplicate pivot " + v.name());
  for (const Var& v : nonpivots)
    if (!seen.insert(v).second) throw StructureError("duplicate coordinate " + v.name());
  for (const auto& op : ops)
    for (const auto& [target, coeff] : op.terms())
      if (!seen.count(target))
        throw StructureError("operator targets " + target.name() +
                             ", which is neither pivot nor nonpivot");

  std::size_t tau = ops.size(), p = nonpivots.size();
  // Gauss-Jordan on [P | N] -> [I | P^{-1} N].
  std::vector<std::vector<RatFunc>> m(tau);
  for (std::size_t t = 0; t < tau; ++t) {
    m[t].reserve(tau + p);
    for (const Var& v : pivots) m[t].push_back(to_ratfunc(ops[t].coefficient(v)));
    for (const Var& v : nonpivots) m[t].push_back(to_ratfunc(ops[t].coefficient(v)));
  }
  for (std::size_t c = 0; c < tau; ++c) {
    std::size_t piv = tau;
    for (std::size_t r = c; r < tau; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv == tau) throw StructureError("pivot block is singular");
    std::swap(m[c], m[piv]);
    RatFunc lead = m[c][c];
    for (std::size_t cc = 0; cc < tau + p; ++cc) m[c][cc] = m[c][cc] / lead;
    for (std::size_t r = 0; r < tau; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      RatFunc f = m[r][c];
      for (std::size_t cc = 0; cc < tau + p; ++cc) m[r][cc] = m[r][cc] - f * m[c][cc];
    }
  }

  AdjointSystem adj;
  adj.pivots = pivots;
  adj.nonpivots = nonpivots;
  adj.ops = ops;
  adj.matrix.rows = tau;
  adj.matrix.cols = p;
  adj.matrix.col_labels = nonpivots;
  adj.matrix.entry.resize(tau);
  for (std::size_t t = 0; t < tau; ++t) {
    adj.matrix.entry[t].reserve(p);
    for (std::size_t s = 0; s < p; ++s) adj.matrix.entry[t].push_back(canonical(m[t][tau + s]));
  }

  // Independent cross-check for the diagonal-pivot case:
  // Delta_t must equal ops[t] divided by its pivot coefficient.
  bool diagonal = true;
  for (std::size_t t = 0; t < tau && diagonal; ++t)
    for (std::size_t s = 0; s < tau && diagonal; ++s)
      if (s != t && !to_ratfunc(ops[t].coefficient(pivots[s])).is_zero()) diagonal = false;
  if (diagonal) {
    adj.reconstruction_ok = true;
    for (std::size_t t = 0; t < tau && adj.reconstruction_ok; ++t) {
      RatFunc pc = to_ratfunc(ops[t].coefficient(pivots[t]));
      for (std::size_t s = 0; s < p; ++s) {
        RatFunc direct = to_ratfunc(ops[t].coefficient(nonpivots[s])) / pc;
        if (direct != *adj.matrix.entry[t][s]->canon) {
          adj.reconstruction_ok = false;
          break;
        }
      }
    }
  }
  return adj;
}

std::vector<Var> default_pivots(int n, int order) {
  check_dim(n);
  std::vector<Var> p;
  for (int i = 1; i <= n; ++i) p.push_back(Var::jet(i, {}));
  if (order >= 2)
    for (int i = 1; i <= n; ++i) p.push_back(Var::jet(i, {i}));
  return p;
}

std::vector<Var> default_nonpivots(int n, int order) {
  std::vector<Var> pivots = default_pivots(n, order);
  std::set<Var> pset(pivots.begin(), pivots.end());
  std::vector<Var> head;
  if (order == 2 && n == 2) {
    head = {Var::jet(1, {1, 2}), Var::jet(1, {2, 2}), Var::jet(2, {1}),
            Var::jet(1, {2}),    Var::jet(2, {1, 1}), Var::jet(2, {1, 2})};
  } else if (order == 2 && n == 3) {
    head = {Var::jet(1, {1, 2}), Var::jet(1, {1, 3}), Var::jet(1, {2, 2}),
            Var::jet(1, {2, 3}), Var::jet(1, {3, 3}), Var::jet(2, {1})};
  }
  std::set<Var> hset(head.begin(), head.end());
  std::vector<Var> rest;
  for (const Var& v : invariant_coordinates(n, order))
    if (!pset.count(v) && !hset.count(v)) rest.push_back(v);
  head.insert(head.end(), rest.begin(), rest.end());
  return head;
}

long long count_first_order(int n, int p) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  long long max_vanishing = static_cast<long long>(n) * (n - 1);
  if (p < 0 || p > max_vanishing) throw DomainError("vanishing count out of range");
  return max_vanishing - p;
}

long long count_tkl(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  return static_cast<long long>(n) * (n - 1) * (n + 2) / 2;
}

long long conjectured_m2(int n) {
  if (n < 2 || n > 20) throw DomainError("dimension must be in 2..20");
  return static_cast<long long>(n) * ((1LL << (n - 1)) + n - 2);
}

long long weighted_binomial_sum(int n) {
  if (n < 2 || n > 20) throw DomainError("dimension must be in 2..20");
  // sum_{j=2}^n j * C(n,j), accumulated term by term
  long long total = 0, binom = n;  // binom = C(n,1)
  for (int j = 2; j <= n; ++j) {
    binom = binom * (n - j + 1) / j;  // C(n,j)
    total += static_cast<long long>(j) * binom;
  }
  return total;
}

}  // namespace vfinv
