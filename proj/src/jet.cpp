#include "vfinv/jet.hpp"

#include <algorithm>

namespace vfinv {

void check_dim(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (n > 9) throw DomainError("dimension must be at most 9 for symbolic coordinates");
}

DiffOperator build_generator(int n) {
  check_dim(n);
  DiffOperator op(n);
  for (int i = 1; i <= n; ++i) {
    op.set_term(Var::indep(i), xi_(i, 0));
    op.set_term(Var::jet(i, {}), mul(A_(i), xi_(i, 1)));
  }
  return op;
}

ExprPtr prolongation_coefficient(int i, const std::vector<int>& J) {
  std::vector<int> m = J;
  std::sort(m.begin(), m.end());
  if (m.empty()) return mul(A_(i), xi_(i, 1));
  if (m.size() == 1) {
    int k = m[0];
    if (k == i) return mul(A_(i), xi_(i, 2));
    return mul(A_(i, {k}), sub(xi_(i, 1), xi_(k, 1)));
  }
  if (m.size() == 2) {
    int a = m[0], b = m[1];
    if (a == i && b == i)  // J = {i,i}
      return add(add(mul(A_(i, {i}), xi_(i, 2)), mul(A_(i), xi_(i, 3))),
                 neg(mul(xi_(i, 1), A_(i, {i, i}))));
    if (a == b)  // J = {k,k}, k != i
      return sub(mul(sub(xi_(i, 1), mul(make_num(2), xi_(a, 1))), A_(i, {a, a})),
                 mul(A_(i, {a}), xi_(a, 2)));
    if (a == i || b == i) {  // J = {i,k}, k != i
      int k = a == i ? b : a;
      return sub(mul(A_(i, {k}), xi_(i, 2)), mul(A_(i, {i, k}), xi_(k, 1)));
    }
    // J = {j,k}, j < k, both different from i
    return mul(A_(i, {a, b}), sub(sub(xi_(i, 1), xi_(a, 1)), xi_(b, 1)));
  }
  throw DomainError("prolongation coefficients are provided for |J| <= 2");
}

std::vector<std::vector<int>> multi_indices(int n, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // multisets as nondecreasing sequences
  auto rec = [&](auto&& self, int min_next, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = min_next; k <= n; ++k) {
      cur.push_back(k);
      self(self, k, remaining - 1);
      cur.pop_back();
    }
  };
  for (int size = lo; size <= hi; ++size) rec(rec, 1, size);
  return out;
}

DiffOperator prolong(const DiffOperator& op, int order) {
  int n = op.dim();
  check_dim(n);
  if (op != build_generator(n))
    throw StructureError("prolong expects the unprolonged generator returned by build_generator");
  if (order < 1 || order > 2) throw DomainError("prolongation order must be 1 or 2");
  DiffOperator r = op;
  for (int i = 1; i <= n; ++i)
    for (const auto& J : multi_indices(n, 1, order))
      r.set_term(Var::jet(i, J), prolongation_coefficient(i, J));
  return r;
}

DiffOperator generic_prolong_oracle(int n, int order) {
  check_dim(n);
  if (order < 1 || order > 2) throw DomainError("prolongation order must be 1 or 2");
  std::map<std::pair<int, std::vector<int>>, ExprPtr> eta;
  for (int i = 1; i <= n; ++i) eta[{i, {}}] = normalize(mul(A_(i), xi_(i, 1)));
  DiffOperator r = build_generator(n);
  for (const auto& J : multi_indices(n, 1, order)) {
    std::vector<int> parent(J.begin(), J.end() - 1);
    int k = J.back();
    for (int i = 1; i <= n; ++i) {
      // D_k applied to xi^m is nonzero only for m = k, giving xi^k(1).
      ExprPtr e = sub(diff_total(eta.at({i, parent}), k), mul(xi_(k, 1), A_(i, J)));
      eta[{i, J}] = normalize(e);
      r.set_term(Var::jet(i, J), eta[{i, J}]);
    }
  }
  return r;
}

const DiffOperator& XiDecomposition::slot(int i, int j) const {
  auto it = slots.find({i, j});
  if (it == slots.end())
    throw DomainError("no slot xi" + std::to_string(i) + "p" + std::to_string(j));
  return it->second;
}

DiffOperator XiDecomposition::reassemble() const {
  DiffOperator r(n);
  for (const auto& [key, op] : slots) r = r + op.scaled(xi_(key.first, key.second));
  return r;
}

XiDecomposition xi_decompose(const DiffOperator& op) {
  XiDecomposition d;
  d.n = op.dim();
  for (const auto& [target, coeff] : op.terms()) {
    RatFunc r = to_ratfunc(coeff);
    for (const Var& v : r.den().vars())
      if (v.kind() == VarKind::Xi)
        throw StructureError("coefficient of d/d" + target.name() + " has xi in a denominator");
    // Split the numerator by its (single, linear) xi factor.
    std::map<std::pair<int, int>, Poly> parts;
    for (const auto& [mono, c] : r.num().terms()) {
      const Var* xi_var = nullptr;
      int xi_exp = 0;
      Monomial rest;
      for (const auto& [v, e] : mono) {
        if (v.kind() == VarKind::Xi) {
          if (xi_var) throw StructureError("coefficient of d/d" + target.name() + " is not xi-linear");
          xi_var = &v;
          xi_exp = e;
        } else {
          rest.emplace_back(v, e);
        }
      }
      if (!xi_var || xi_exp != 1)
        throw StructureError("coefficient of d/d" + target.name() + " is not xi-linear");
      parts[{xi_var->index(), xi_var->xi_order()}].add_term(rest, c);
    }
    for (const auto& [key, num] : parts) {
      auto [it, inserted] = d.slots.try_emplace(key, DiffOperator(d.n));
      it->second.set_term(target, canonical(RatFunc(num, r.den())));
    }
  }
  return d;
}

std::vector<Var> invariant_coordinates(int n, int order) {
  check_dim(n);
  if (order < 1 || order > 2) throw DomainError("order must be 1 or 2");
  std::vector<Var> coords;
  for (int i = 1; i <= n; ++i) coords.push_back(Var::jet(i, {}));
  for (int i = 1; i <= n; ++i)
    for (const auto& J : multi_indices(n, 1, order)) {
      if (order == 1 && J[0] == i) continue;                      // drop A_{i,i}
      if (J.size() == 2 && J[0] == i && J[1] == i) continue;      // drop A_{i,ii}
      coords.push_back(Var::jet(i, J));
    }
  std::sort(coords.begin(), coords.end());
  return coords;
}

const DiffOperator& DeterminingSystem::op_for(int i, int j) const {
  for (std::size_t t = 0; t < labels.size(); ++t)
    if (labels[t] == std::make_pair(i, j)) return ops[t];
  throw DomainError("determining system has no operator for xi" + std::to_string(i) + "p" +
                    std::to_string(j));
}

DeterminingSystem determining_system(int n, int order) {
  DeterminingSystem sys;
  sys.n = n;
  sys.order = order;
  sys.coords = invariant_coordinates(n, order);
  XiDecomposition d = xi_decompose(prolong(build_generator(n), order));
  for (int j = 1; j <= order; ++j)
    for (int i = 1; i <= n; ++i) {
      sys.ops.push_back(d.slot(i, j).restricted(sys.coords));
      sys.labels.emplace_back(i, j);
    }
  return sys;
}

int multi_index_multiplicity(const std::vector<int>& J) {
  // Number of ordered tuples realizing the sorted multiset J:
  // |J|! / prod_v (multiplicity of v)!
  static const int fact[4] = {1, 1, 2, 6};
  if (J.size() > 3) throw DomainError("multiplicity implemented for |J| <= 3");
  int denom = 1, run = 1;
  for (std::size_t t = 1; t < J.size(); ++t) {
    run = J[t] == J[t - 1] ? run + 1 : 1;
    denom *= run;  // multiplying by 2, 3, ... as a run extends builds m!
  }
  return fact[J.size()] / denom;
}

DiffOperator multiplicity_weighted(const DiffOperator& op) {
  DiffOperator r(op.dim());
  for (const auto& [target, coeff] : op.terms()) {
    int w = target.kind() == VarKind::Jet ? multi_index_multiplicity(target.multi()) : 1;
    r.set_term(target, w == 1 ? coeff : mul(make_num(w), coeff));
  }
  return r;
}

std::vector<DiffOperator> multiplicity_weighted(const std::vector<DiffOperator>& ops) {
  std::vector<DiffOperator> r;
  r.reserve(ops.size());
  for (const auto& op : ops) r.push_back(multiplicity_weighted(op));
  return r;
}

}  // namespace vfinv
