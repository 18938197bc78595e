#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "vfinv/jet.hpp"

using namespace vfinv;

namespace {

ExprPtr P(const std::string& s, int n = 9) { return parse(s, n); }

bool expr_zero(const ExprPtr& e) {
  auto v = zero_verdict(e);
  return v.zero;
}

// Independent re-implementation of the prolongation recursion used to check
// path independence: extend the multi-index one slot at a time in a caller
// chosen order.
ExprPtr eta_step(int i, const std::vector<int>& J, const ExprPtr& eta_J, int k, int n) {
  // D_k(eta_J) - xi^k(1) * A_{i, J+k}
  std::vector<int> Jk = J;
  Jk.push_back(k);
  ExprPtr dk = diff_total(eta_J, k);
  ExprPtr corr = mul(make_var(Var::xi(k, 1)), make_var(Var::jet(i, Jk)));
  return normalize(sub(dk, corr));
}

}  // namespace

TEST_CASE("base generator structure") {
  for (int n = 2; n <= 4; ++n) {
    DiffOperator g = build_generator(n);
    CHECK(g.dim() == n);
    // Terms: n translations x^i with coefficient xi<i>p0?  The generator uses
    // xi<i> as an opaque translation coefficient on x^i and A_i xi<i>p1 on A_i.
    for (int i = 1; i <= n; ++i) {
      ExprPtr ci = g.coefficient(Var::jet(i, {}));
      ExprPtr want = mul(make_var(Var::jet(i, {})), make_var(Var::xi(i, 1)));
      CHECK(expr_zero(sub(ci, want)));
    }
  }
  CHECK_THROWS_AS(build_generator(1), DomainError);
  CHECK_THROWS_AS(build_generator(10), DomainError);
}

TEST_CASE("closed-form prolongation coefficients") {
  // All seven shapes, written out for concrete indices with n >= 3.
  struct Case {
    int i;
    std::vector<int> J;
    std::string want;  // expression over A-jets and xi symbols
  };
  const std::vector<Case> cases = {
      {1, {}, "A1 * xi1p1"},
      {1, {1}, "A1 * xi1p2"},
      {1, {2}, "A1_2 * (xi1p1 - xi2p1)"},
      {1, {1, 1}, "A1_1 * xi1p2 + A1 * xi1p3 - xi1p1 * A1_11"},
      {1, {2, 2}, "(xi1p1 - 2 * xi2p1) * A1_22 - A1_2 * xi2p2"},
      {1, {1, 2}, "A1_2 * xi1p2 - A1_12 * xi2p1"},
      {2, {1, 3}, "A2_13 * (xi2p1 - xi1p1 - xi3p1)"},
  };
  for (const auto& c : cases) {
    ExprPtr got = prolongation_coefficient(c.i, c.J);
    CHECK_MESSAGE(expr_zero(sub(got, P(c.want))),
                  "i=", c.i, " got=", to_string(got), " want=", c.want);
  }
  CHECK_THROWS_AS(prolongation_coefficient(1, {1, 2, 3}), DomainError);
}

TEST_CASE("closed forms match the recursion oracle everywhere") {
  for (int n = 2; n <= 4; ++n) {
    for (int order = 1; order <= 2; ++order) {
      DiffOperator fast = prolong(build_generator(n), order);
      DiffOperator slow = generic_prolong_oracle(n, order);
      CHECK(fast.dim() == slow.dim());
      // Exact equality of term maps, diagonal-cubed targets included.
      const auto& ft = fast.terms();
      const auto& st = slow.terms();
      CHECK(ft.size() == st.size());
      for (const auto& [target, coeff] : st) {
        ExprPtr other = fast.coefficient(target);
        CHECK_MESSAGE(expr_zero(sub(coeff, other)),
                      "n=", n, " order=", order, " target=", target.name());
      }
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("oracle recursion is path independent") {
  // eta_{1,{1,2}} via {} -> {1} -> {1,2} equals via {} -> {2} -> {1,2}.
  for (int n = 2; n <= 3; ++n) {
    ExprPtr seed = normalize(mul(make_var(Var::jet(1, {})), make_var(Var::xi(1, 1))));
    ExprPtr via1 = eta_step(1, {1}, eta_step(1, {}, seed, 1, n), 2, n);
    ExprPtr via2 = eta_step(1, {2}, eta_step(1, {}, seed, 2, n), 1, n);
    CHECK(expr_zero(sub(via1, via2)));
    // And both equal the closed form.
    CHECK(expr_zero(sub(via1, prolongation_coefficient(1, {1, 2}))));
  }
  // A fully mixed target for n = 3.
  ExprPtr seed = normalize(mul(make_var(Var::jet(1, {})), make_var(Var::xi(1, 1))));
  ExprPtr a = eta_step(1, {2}, eta_step(1, {}, seed, 2, 3), 3, 3);
  ExprPtr b = eta_step(1, {3}, eta_step(1, {}, seed, 3, 3), 2, 3);
  CHECK(expr_zero(sub(a, b)));
  CHECK(expr_zero(sub(a, prolongation_coefficient(1, {2, 3}))));
}

TEST_CASE("multi index enumeration and multiplicities") {
  auto idx = multi_indices(2, 1, 2);
  std::vector<std::vector<int>> want = {{1}, {2}, {1, 1}, {1, 2}, {2, 2}};
  CHECK(idx == want);

  auto idx3 = multi_indices(3, 2, 2);
  CHECK(idx3.size() == 6);  // multisets of size 2 from 3 symbols
  CHECK(idx3.front() == std::vector<int>{1, 1});
  CHECK(idx3.back() == std::vector<int>{3, 3});

  CHECK(multi_index_multiplicity({1}) == 1);
  CHECK(multi_index_multiplicity({1, 1}) == 1);
  CHECK(multi_index_multiplicity({1, 2}) == 2);
  CHECK(multi_index_multiplicity({1, 1, 2}) == 3);
  CHECK(multi_index_multiplicity({1, 2, 3}) == 6);
}

TEST_CASE("xi decomposition splits and reassembles") {
  for (int n = 2; n <= 3; ++n) {
    for (int order = 1; order <= 2; ++order) {
      DiffOperator full = prolong(build_generator(n), order);
      XiDecomposition dec = xi_decompose(full);
      CHECK(dec.n == n);
      // Slots present: (i, j) for 1 <= j <= order + 1 plus the translation
      // slots; every slot's coefficients must be xi-free.
      for (const auto& [key, op] : dec.slots) {
        for (const auto& [target, coeff] : op.terms()) {
          (void)target;
          for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= order + 1; ++j)
              CHECK(expr_zero(partial(coeff, Var::xi(i, j))));
        }
      }
      CHECK(dec.reassemble() == full);
    }
  }

  // Not xi-linear: coefficient xi1p1^2.
  DiffOperator bad(2);
  bad.set_term(Var::jet(1, {}), P("xi1p1 * xi1p1"));
  CHECK_THROWS_AS(xi_decompose(bad), StructureError);

  // xi in a denominator.
  DiffOperator bad2(2);
  bad2.set_term(Var::jet(1, {}), P("A1 / xi1p1"));
  CHECK_THROWS_AS(xi_decompose(bad2), StructureError);
}

TEST_CASE("first order slot operators for n = 2") {
  DiffOperator full = prolong(build_generator(2), 1);
  XiDecomposition dec = xi_decompose(full);

  // xi1p1 slot: A1 d/dA1 + A1_2 d/dA1_2 - A2_1 d/dA2_1 (+ x-translation free).
  const DiffOperator& s11 = dec.slot(1, 1);
  CHECK(expr_zero(sub(s11.coefficient(Var::jet(1, {})), P("A1"))));
  CHECK(expr_zero(sub(s11.coefficient(Var::jet(1, {2})), P("A1_2"))));
  CHECK(expr_zero(sub(s11.coefficient(Var::jet(2, {1})), P("-A2_1"))));
  CHECK(expr_zero(s11.coefficient(Var::jet(2, {}))));

  // xi1p2 slot: A1 d/dA1_1.
  const DiffOperator& s12 = dec.slot(1, 2);
  CHECK(expr_zero(sub(s12.coefficient(Var::jet(1, {1})), P("A1"))));
  CHECK(expr_zero(s12.coefficient(Var::jet(1, {}))));
}

TEST_CASE("invariant coordinate charts") {
  for (int n = 2; n <= 6; ++n) {
    auto c1 = invariant_coordinates(n, 1);
    CHECK((int)c1.size() == n * n);
    auto c2 = invariant_coordinates(n, 2);
    CHECK((int)c2.size() == n * n * (3 + n) / 2);
    // No diagonal-squared jets in the chart.
    for (const auto& v : c2) CHECK(v.name().find(std::to_string(1) + "_11") == std::string::npos);
  }
  // Explicit chart for n = 2, order 1: A1, A2, A1_2, A2_1.
  auto c = invariant_coordinates(2, 1);
  std::set<std::string> names;
  for (const auto& v : c) names.insert(v.name());
  CHECK(names == std::set<std::string>{"A1", "A2", "A1_2", "A2_1"});
}

TEST_CASE("determining system layout") {
  for (int n = 2; n <= 4; ++n) {
    DeterminingSystem sys = determining_system(n, 1);
    CHECK((int)sys.ops.size() == n);
    for (int i = 1; i <= n; ++i) {
      CHECK(sys.labels[i - 1] == std::make_pair(i, 1));
      CHECK(&sys.op_for(i, 1) == &sys.ops[i - 1]);
    }
    DeterminingSystem sys2 = determining_system(n, 2);
    CHECK((int)sys2.ops.size() == 2 * n);
    // Labels: (1,1)..(n,1), then (1,2)..(n,2).
    for (int i = 1; i <= n; ++i) {
      CHECK(sys2.labels[i - 1] == std::make_pair(i, 1));
      CHECK(sys2.labels[n + i - 1] == std::make_pair(i, 2));
    }
    CHECK(sys2.coords.size() == invariant_coordinates(n, 2).size());
  }
  CHECK_THROWS_AS(determining_system(2, 3), DomainError);
  CHECK_THROWS_AS(determining_system(2, 0), DomainError);
}

TEST_CASE("determining operators restrict the slots to the chart") {
  DeterminingSystem sys = determining_system(2, 2);
  // op_for(1,1) on A2_11 is -2 A2_11 already in the unweighted (multiset)
  // view: the {k,k} coefficient form carries the factor 2 itself.
  CHECK(expr_zero(sub(sys.op_for(1, 1).coefficient(Var::jet(2, {1, 1})), P("-2 * A2_11"))));
  // op_for(1,2) on A1_12 is A1_2 unweighted.
  CHECK(expr_zero(sub(sys.op_for(1, 2).coefficient(Var::jet(1, {1, 2})), P("A1_2"))));
  // No diagonal-squared target appears anywhere.
  for (const auto& op : sys.ops)
    for (const auto& [target, coeff] : op.terms()) {
      (void)coeff;
      if (target.kind() == VarKind::Jet) {
        auto J = target.multi();
        bool diag2 = J.size() == 2 && J[0] == J[1] && J[0] == target.index();
        CHECK_FALSE(diag2);
      }
    }
}

TEST_CASE("multiplicity weighting matches the standard printed tables") {
  DeterminingSystem sys = determining_system(2, 2);
  auto w = multiplicity_weighted(sys.ops);

  // Weighted xi1p1 slot:
  //   A1 d/dA1 + A1_2 d/dA1_2 + A1_22 d/dA1_22
  //   - A2_1 d/dA2_1 - 2 A2_11 d/dA2_11 - 2 A2_12 d/dA2_12.
  const DiffOperator& w11 = w[0];
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(1, {})), P("A1"))));
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(1, {2})), P("A1_2"))));
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(1, {2, 2})), P("A1_22"))));
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(2, {1})), P("-A2_1"))));
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(2, {1, 1})), P("-2 * A2_11"))));
  CHECK(expr_zero(sub(w11.coefficient(Var::jet(2, {1, 2})), P("-2 * A2_12"))));

  // Weighted xi1p2 slot: A1 d/dA1_1 + 2 A1_2 d/dA1_12 - A2_1 d/dA2_11.
  const DiffOperator& w12 = w[2];
  CHECK(expr_zero(sub(w12.coefficient(Var::jet(1, {1})), P("A1"))));
  CHECK(expr_zero(sub(w12.coefficient(Var::jet(1, {1, 2})), P("2 * A1_2"))));
  CHECK(expr_zero(sub(w12.coefficient(Var::jet(2, {1, 1})), P("-A2_1"))));

  // Weighted xi2p2 slot: -A1_2 d/dA1_22 + A2 d/dA2_2 + 2 A2_1 d/dA2_12.
  const DiffOperator& w22 = w[3];
  CHECK(expr_zero(sub(w22.coefficient(Var::jet(1, {2, 2})), P("-A1_2"))));
  CHECK(expr_zero(sub(w22.coefficient(Var::jet(2, {2})), P("A2"))));
  CHECK(expr_zero(sub(w22.coefficient(Var::jet(2, {1, 2})), P("2 * A2_1"))));

  // Weighting touches only order-2 mixed targets here; first-order and
  // non-jet targets are unchanged.
  for (std::size_t t = 0; t < w.size(); ++t)
    for (const auto& [target, coeff] : sys.ops[t].terms()) {
      if (target.kind() != VarKind::Jet || target.multi().size() < 2) {
        CHECK(expr_zero(sub(w[t].coefficient(target), coeff)));
      }
    }
}

TEST_CASE("prolongation rejects foreign input") {
  DiffOperator junk(2);
  junk.set_term(Var::indep(1), P("x1"));
  CHECK_THROWS_AS(prolong(junk, 1), StructureError);
  CHECK_THROWS_AS(prolong(build_generator(2), 3), DomainError);
}
