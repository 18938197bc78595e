#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vfinv/invariants.hpp"

using namespace vfinv;

namespace {

ExprPtr P(const std::string& s, int n = 9) { return parse(s, n); }

bool expr_zero(const ExprPtr& e) { return zero_verdict(e).zero; }

bool same(const ExprPtr& a, const std::string& b) { return expr_zero(sub(a, P(b))); }

std::set<std::string> names_of(const InvariantSet& s) {
  std::set<std::string> out;
  for (const auto& inv : s.invariants) out.insert(inv.name());
  return out;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

TEST_CASE("basic rational function forms") {
  CHECK(same(T_invariant(1, 2), "A1_2 * A2 / A1"));
  CHECK(same(T_invariant(2, 1), "A2_1 * A1 / A2"));
  CHECK(same(K_invariant(1, 2), "A1_22 * A2 / A1_2 + A2_2"));
  CHECK(same(L_invariant(1, 2, 3), "A1_23 * A2 * A3 / A1"));
  CHECK(same(J_function(1, 2), "A1_12 * A1 * A2 / A1_2 - 2 * A1_1"));

  CHECK_THROWS_AS(T_invariant(1, 1), DomainError);
  CHECK_THROWS_AS(K_invariant(2, 2), DomainError);
  CHECK_THROWS_AS(L_invariant(1, 3, 2), DomainError);
  CHECK_THROWS_AS(L_invariant(2, 2, 3), DomainError);
  CHECK_THROWS_AS(J_function(1, 1), DomainError);
}

TEST_CASE("invariant naming") {
  InvariantSet s = second_order_invariants(3);
  bool saw_t = false, saw_k = false, saw_l = false;
  for (const auto& inv : s.invariants) {
    if (inv.name() == "T12") {
      saw_t = true;
      CHECK(inv.latex_name() == "T_{12}");
    }
    if (inv.name() == "K21") {
      saw_k = true;
      CHECK(inv.latex_name() == "K_{21}");
    }
    if (inv.name() == "L123") {
      saw_l = true;
      CHECK(inv.latex_name() == "L_{123}");
    }
  }
  CHECK(saw_t);
  CHECK(saw_k);
  CHECK(saw_l);
}

TEST_CASE("set sizes across dimensions") {
  CHECK(first_order_invariants(2).invariants.size() == 2);
  CHECK(first_order_invariants(3).invariants.size() == 6);
  CHECK(first_order_invariants(4).invariants.size() == 12);
  CHECK(second_order_invariants(2).invariants.size() == 4);
  CHECK(second_order_invariants(3).invariants.size() == 15);

  InvariantSet s2 = second_order_invariants(2);
  CHECK_FALSE(s2.fundamental_subset_only);
  InvariantSet s3 = second_order_invariants(3);
  CHECK_FALSE(s3.fundamental_subset_only);
  InvariantSet s4 = second_order_invariants(4);
  CHECK(s4.invariants.size() == count_tkl(4));
  CHECK(s4.fundamental_subset_only);
  CHECK(s4.conjectured_total == conjectured_m2(4));
}

TEST_CASE("every listed function is annihilated by its determining system") {
  for (int n = 2; n <= 3; ++n) {
    DeterminingSystem d1 = determining_system(n, 1);
    for (const auto& inv : first_order_invariants(n).invariants) {
      AnnihilationReport r = verify_annihilated(inv.expr, d1.ops);
      CHECK(r.annihilated);
      for (const auto& res : r.residuals) CHECK(expr_zero(res));
    }
    DeterminingSystem d2 = determining_system(n, 2);
    for (const auto& inv : second_order_invariants(n).invariants) {
      AnnihilationReport r = verify_annihilated(inv.expr, d2.ops);
      CHECK(r.annihilated);
      for (std::size_t t = 0; t < r.per_op.size(); ++t) CHECK(r.per_op[t]);
    }
  }
  // Weighted view annihilates them too (rescaling coordinates preserves
  // annihilation of functions expressed in either view's coordinates only
  // when the function uses matching conventions; T and K do).
  DeterminingSystem d = determining_system(2, 2);
  auto w = multiplicity_weighted(d.ops);
  for (const auto& inv : second_order_invariants(2).invariants)
    CHECK(verify_annihilated(inv.expr, w).annihilated);
}

TEST_CASE("vanishing coordinates drop their invariants") {
  InvariantSet s = first_order_invariants(3, {{1, 2}});
  CHECK(s.invariants.size() == 5);
  auto names = names_of(s);
  CHECK(names.count("T12") == 0);
  CHECK(names.count("T21") == 1);
  CHECK((long long)s.invariants.size() == count_first_order(3, 1));

  // Second order: dropping A_{1,2} removes T12 and K12.
  InvariantSet s2 = second_order_invariants(3, {{1, 2}});
  auto names2 = names_of(s2);
  CHECK(names2.count("T12") == 0);
  CHECK(names2.count("K12") == 0);
  CHECK(names2.count("K21") == 1);
}

TEST_CASE("the J functions are not invariants") {
  DeterminingSystem sys = determining_system(2, 2);
  ExprPtr j12 = J_function(1, 2);
  AnnihilationReport plain = verify_annihilated(j12, sys.ops);
  CHECK_FALSE(plain.annihilated);
  // The xi1'' slot (third operator) carries the obstruction A1 A2 - 2 A1.
  CHECK_FALSE(plain.per_op[2]);
  CHECK(same(plain.residuals[2], "A1 * A2 - 2 * A1"));

  auto w = multiplicity_weighted(sys.ops);
  AnnihilationReport weighted = verify_annihilated(j12, w);
  CHECK_FALSE(weighted.annihilated);
  CHECK(same(weighted.residuals[2], "2 * A1 * A2 - 2 * A1"));

  // Symmetric partner J21 fails on the xi2'' slot (fourth operator).
  ExprPtr j21 = J_function(2, 1);
  AnnihilationReport p21 = verify_annihilated(j21, sys.ops);
  CHECK_FALSE(p21.annihilated);
  CHECK(same(p21.residuals[3], "A1 * A2 - 2 * A2"));
  AnnihilationReport w21 = verify_annihilated(j21, w);
  CHECK(same(w21.residuals[3], "2 * A1 * A2 - 2 * A2"));
}

TEST_CASE("the J obstruction survives pivot elimination") {
  // Solving J12 = 0 for the pivot A1_1 gives A1_1 = A1_12 A1 A2 / (2 A1_2).
  // The obstruction residual contains no pivot coordinates, so substituting
  // the solved pivot leaves it untouched and nonzero: the failure is not an
  // artifact of the pivot choice.
  DeterminingSystem sys = determining_system(2, 2);
  auto w = multiplicity_weighted(sys.ops);
  AnnihilationReport rep = verify_annihilated(J_function(1, 2), w);
  ExprPtr r = rep.residuals[2];
  std::map<Var, ExprPtr> solved = {
      {Var::jet(1, {1}), P("A1_12 * A1 * A2 / (2 * A1_2)")}};
  ExprPtr r_sub = normalize(substitute(r, solved));
  CHECK(expr_zero(sub(r, r_sub)));
  CHECK_FALSE(zero_verdict(r_sub).zero);
}

TEST_CASE("order zero leaves nothing invariant") {
  for (int n = 2; n <= 5; ++n) {
    ZerothOrderReport rep = zeroth_order_report(n);
    CHECK(rep.n == n);
    CHECK(rep.num_ops == 2 * n);
    CHECK(rep.num_coords == 2 * n);
    CHECK(rep.rank == 2 * n);
    CHECK(rep.invariant_count == 0);
  }
}

TEST_CASE("default adjoint coordinate orderings") {
  auto piv = default_pivots(2, 2);
  std::vector<std::string> pn;
  for (const auto& v : piv) pn.push_back(v.name());
  CHECK(pn == std::vector<std::string>{"A1", "A2", "A1_1", "A2_2"});

  auto nonpiv = default_nonpivots(2, 2);
  std::vector<std::string> nn;
  for (const auto& v : nonpiv) nn.push_back(v.name());
  CHECK(nn == std::vector<std::string>{"A1_12", "A1_22", "A2_1", "A1_2", "A2_11", "A2_12"});

  auto piv3 = default_pivots(3, 2);
  std::vector<std::string> p3;
  for (const auto& v : piv3) p3.push_back(v.name());
  CHECK(p3 == std::vector<std::string>{"A1", "A2", "A3", "A1_1", "A2_2", "A3_3"});

  auto np3 = default_nonpivots(3, 2);
  REQUIRE(np3.size() >= 6);
  std::vector<std::string> n3;
  for (int t = 0; t < 6; ++t) n3.push_back(np3[t].name());
  CHECK(n3 == std::vector<std::string>{"A1_12", "A1_13", "A1_22", "A1_23", "A1_33", "A2_1"});

  // Pivots + nonpivots tile the full chart exactly.
  auto chart = invariant_coordinates(3, 2);
  CHECK(piv3.size() + np3.size() == chart.size());
}

TEST_CASE("adjoint table for two independent variables") {
  DeterminingSystem sys = determining_system(2, 2);
  AdjointSystem adj = jacobian_adjoint(multiplicity_weighted(sys.ops),
                                       default_pivots(2, 2), default_nonpivots(2, 2));
  CHECK(adj.reconstruction_ok);
  REQUIRE(adj.matrix.rows == 4);
  REQUIRE(adj.matrix.cols == 6);

  // Columns: A1_12, A1_22, A2_1, A1_2, A2_11, A2_12.
  const std::vector<std::vector<std::string>> want = {
      {"0", "A1_22 / A1", "-A2_1 / A1", "A1_2 / A1", "-2 * A2_11 / A1", "-2 * A2_12 / A1"},
      {"-2 * A1_12 / A2", "-2 * A1_22 / A2", "A2_1 / A2", "-A1_2 / A2", "A2_11 / A2", "0"},
      {"2 * A1_2 / A1", "0", "0", "0", "-A2_1 / A1", "0"},
      {"0", "-A1_2 / A2", "0", "0", "0", "2 * A2_1 / A2"},
  };
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      CHECK_MESSAGE(same(adj.matrix.at(r, c), want[r][c]),
                    "row ", r, " col ", c, " got ", to_string(adj.matrix.at(r, c)));

  // Reconstruction identity, checked directly: for each operator t and
  // nonpivot s, coefficient(op_t, s) == coefficient(op_t, pivot_t) * M[t][s].
  for (std::size_t t = 0; t < adj.ops.size(); ++t) {
    ExprPtr pc = adj.ops[t].coefficient(adj.pivots[t]);
    for (std::size_t s = 0; s < adj.nonpivots.size(); ++s) {
      ExprPtr lhs = adj.ops[t].coefficient(adj.nonpivots[s]);
      ExprPtr rhs = normalize(mul(pc, adj.matrix.at(t, s)));
      CHECK(expr_zero(sub(lhs, rhs)));
    }
  }
}

TEST_CASE("adjoint table for three independent variables, leading block") {
  DeterminingSystem sys = determining_system(3, 2);
  AdjointSystem adj = jacobian_adjoint(multiplicity_weighted(sys.ops),
                                       default_pivots(3, 2), default_nonpivots(3, 2));
  CHECK(adj.reconstruction_ok);
  REQUIRE(adj.matrix.rows == 6);
  REQUIRE(adj.matrix.cols == 21);

  // First six columns: A1_12, A1_13, A1_22, A1_23, A1_33, A2_1.
  const std::vector<std::vector<std::string>> want = {
      {"0", "0", "A1_22 / A1", "2 * A1_23 / A1", "A1_33 / A1", "-A2_1 / A1"},
      {"-2 * A1_12 / A2", "0", "-2 * A1_22 / A2", "-2 * A1_23 / A2", "0", "A2_1 / A2"},
      {"0", "-2 * A1_13 / A3", "0", "-2 * A1_23 / A3", "-2 * A1_33 / A3", "0"},
      {"2 * A1_2 / A1", "2 * A1_3 / A1", "0", "0", "0", "0"},
      {"0", "0", "-A1_2 / A2", "0", "0", "0"},
      {"0", "0", "0", "0", "-A1_3 / A3", "0"},
  };
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      CHECK_MESSAGE(same(adj.matrix.at(r, c), want[r][c]),
                    "row ", r, " col ", c, " got ", to_string(adj.matrix.at(r, c)));
}

TEST_CASE("adjoint construction rejects malformed pivot data") {
  DeterminingSystem sys = determining_system(2, 1);

  // Duplicate pivot.
  CHECK_THROWS_AS(jacobian_adjoint(sys.ops, {Var::jet(1, {}), Var::jet(1, {})},
                                   {Var::jet(1, {2}), Var::jet(2, {1})}),
                  StructureError);

  // Target not covered by pivots + nonpivots.
  CHECK_THROWS_AS(jacobian_adjoint(sys.ops, {Var::jet(1, {}), Var::jet(2, {})},
                                   {Var::jet(1, {2})}),
                  StructureError);

  // Singular pivot block: the off-diagonal columns are proportional.
  CHECK_THROWS_AS(jacobian_adjoint(sys.ops, {Var::jet(1, {2}), Var::jet(2, {1})},
                                   {Var::jet(1, {}), Var::jet(2, {})}),
                  StructureError);

  // Pivot count must match operator count.
  CHECK_THROWS_AS(jacobian_adjoint(sys.ops, {Var::jet(1, {})},
                                   {Var::jet(1, {2}), Var::jet(2, {1}), Var::jet(2, {})}),
                  StructureError);
}

TEST_CASE("counting formulas") {
  for (int n = 2; n <= 20; ++n) {
    CHECK(count_first_order(n) == (long long)n * (n - 1));
    CHECK(count_first_order(n, 1) == (long long)n * (n - 1) - 1);
    // T + K + L assembled combinatorially.
    long long t = (long long)n * (n - 1);
    long long k = (long long)n * (n - 1);
    long long l = (long long)n * binom(n - 1, 2);
    CHECK(count_tkl(n) == t + k + l);
    CHECK(count_tkl(n) == (long long)n * (n - 1) * (n + 2) / 2);
    // Weighted binomial identity: sum_{j=2}^n j C(n,j) = n (2^(n-1) - 1).
    long long s = 0;
    for (int j = 2; j <= n; ++j) s += (long long)j * binom(n, j);
    CHECK(weighted_binomial_sum(n) == s);
  }
  CHECK(conjectured_m2(4) == 40);
  CHECK(conjectured_m2(5) == 95);
  CHECK(weighted_binomial_sum(5) == 75);
  CHECK(count_tkl(5) == 70);
  CHECK(count_first_order(5) == 20);

  CHECK_THROWS_AS(count_tkl(1), DomainError);
  CHECK_THROWS_AS(conjectured_m2(1), DomainError);
  CHECK_THROWS_AS(conjectured_m2(21), DomainError);
  CHECK_THROWS_AS(weighted_binomial_sum(21), DomainError);
  CHECK_THROWS_AS(count_first_order(3, 7), DomainError);
}
