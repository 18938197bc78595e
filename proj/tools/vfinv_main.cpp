// vfinv — command-line front end for the equivalence-group machinery of
// first-order linear PDEs sum_i A_i(x) dU/dx^i = 0.
//
// Subcommands, flags, output shapes, and exit codes are frozen in docs/cli.md.
// Exit codes: 0 success (including "not equivalent" verdicts), 1 usage or
// input error, 2 internal inconsistency.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vfinv/equivalence.hpp"
#include "vfinv/json_io.hpp"
#include "vfinv/lie.hpp"

namespace {

using namespace vfinv;

enum class Format { Text, Json, Latex };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  return Format::Latex;  // CLI11 validator restricts to the three names
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Slot tokens name the formal derivative symbols: xi<i>p<j> (and xi<i> for
// the underived symbol, j = 0).
std::pair<int, int> parse_slot_token(const std::string& tok, int n) {
  auto fail = [&] { throw DomainError("bad slot token '" + tok + "' (expected xi<i> or xi<i>p<j>)"); };
  if (tok.size() < 3 || tok.compare(0, 2, "xi") != 0) fail();
  std::size_t pos = 2;
  if (!std::isdigit(static_cast<unsigned char>(tok[pos]))) fail();
  int i = tok[pos] - '0';
  ++pos;
  int j = 0;
  if (pos != tok.size()) {
    if (tok[pos] != 'p' || pos + 1 >= tok.size()) fail();
    ++pos;
    if (!std::isdigit(static_cast<unsigned char>(tok[pos])) || pos + 1 != tok.size()) fail();
    j = tok[pos] - '0';
  }
  if (i < 1 || i > n) throw DomainError("slot index out of range in '" + tok + "'");
  return {i, j};
}

// --vanish takes "i,j;k,l;..." — the ordered pairs whose A_{i,j} vanish.
VanishingSet parse_vanish(const std::string& s, int n) {
  VanishingSet v;
  if (s.empty()) return v;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t comma = item.find(',');
    if (comma == std::string::npos)
      throw DomainError("bad --vanish entry '" + item + "' (expected i,j)");
    int i = 0, j = 0;
    try {
      i = std::stoi(item.substr(0, comma));
      j = std::stoi(item.substr(comma + 1));
    } catch (const std::exception&) {
      throw DomainError("bad --vanish entry '" + item + "' (expected i,j)");
    }
    if (i < 1 || i > n || j < 1 || j > n || i == j)
      throw DomainError("bad --vanish pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    v.insert({i, j});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return v;
}

std::string slot_label(int i, int j) { return Var::xi(i, j).name(); }

std::string slot_latex(int i, int j) {
  return "\\mathcal{V}_{\\xi^{" + std::to_string(i) + "(" + std::to_string(j) + ")}}";
}

// ---- subcommand bodies ------------------------------------------------------

// The stored expressions are canonical rational forms; for reading, K is
// conventionally shown split as A_ijj A_j / A_ij + A_jj rather than over a
// common denominator.
ExprPtr display_expr(const Invariant& inv) {
  if (inv.family == 'K') {
    int i = inv.idx[0], j = inv.idx[1];
    return add(div_expr(mul(A_(i, {j, j}), A_(j)), A_(i, {j})), A_(j, {j}));
  }
  return inv.expr;
}

void run_invariants(int n, int order, const std::string& vanish, Format fmt) {
  VanishingSet v = parse_vanish(vanish, n);
  InvariantSet set = order == 1 ? first_order_invariants(n, v) : second_order_invariants(n, v);
  if (fmt == Format::Json) {
    emit_json(invariant_set_to_json(set));
    return;
  }
  for (const Invariant& inv : set.invariants) {
    if (fmt == Format::Text)
      std::cout << inv.name() << " = " << to_string(display_expr(inv)) << "\n";
    else
      std::cout << inv.latex_name() << " = " << to_latex(display_expr(inv)) << "\n";
  }
  if (set.fundamental_subset_only) {
    const char* lead = fmt == Format::Text ? "# " : "% ";
    std::cout << lead << "fundamental subset only; conjectured total "
              << set.conjectured_total << "\n";
  }
}

void run_generator(int n, int order, bool decompose, bool weighted, Format fmt) {
  DiffOperator op = build_generator(n);
  if (order > 0) op = prolong(op, order);
  if (weighted) op = multiplicity_weighted(op);
  if (!decompose) {
    if (fmt == Format::Json) {
      Json j;
      j["n"] = n;
      j["order"] = order;
      j["weighted"] = weighted;
      j["operator"] = operator_to_json(op);
      emit_json(j);
    } else {
      std::cout << (fmt == Format::Text ? op.str() : op.latex()) << "\n";
    }
    return;
  }
  XiDecomposition d = xi_decompose(op);
  if (fmt == Format::Json) {
    Json j;
    j["n"] = n;
    j["order"] = order;
    j["weighted"] = weighted;
    j["slots"] = Json::array();
    for (const auto& [ij, slot_op] : d.slots) {
      Json s;
      s["slot"] = slot_label(ij.first, ij.second);
      s["i"] = ij.first;
      s["j"] = ij.second;
      s["operator"] = operator_to_json(slot_op);
      j["slots"].push_back(s);
    }
    emit_json(j);
    return;
  }
  for (const auto& [ij, slot_op] : d.slots) {
    if (fmt == Format::Text)
      std::cout << slot_label(ij.first, ij.second) << ": " << slot_op.str() << "\n";
    else
      std::cout << slot_latex(ij.first, ij.second) << " = " << slot_op.latex() << "\n";
  }
}

void run_commutator(int n, int order, const std::string& left, const std::string& right,
                    bool plain, Format fmt) {
  auto [li, lj] = parse_slot_token(left, n);
  auto [ri, rj] = parse_slot_token(right, n);
  if (lj < 1 || lj > order || rj < 1 || rj > order)
    throw DomainError("commutator slots must have derivative order between 1 and " +
                      std::to_string(order));
  DeterminingSystem sys = determining_system(n, order);
  DiffOperator a = sys.op_for(li, lj);
  DiffOperator b = sys.op_for(ri, rj);
  if (!plain) {
    a = multiplicity_weighted(a);
    b = multiplicity_weighted(b);
  }
  DiffOperator c = commutator(a, b);
  if (fmt == Format::Json) {
    Json j;
    j["n"] = n;
    j["order"] = order;
    j["weighted"] = !plain;
    j["left"] = slot_label(li, lj);
    j["right"] = slot_label(ri, rj);
    j["bracket"] = operator_to_json(c);
    emit_json(j);
  } else if (fmt == Format::Text) {
    std::cout << c.str() << "\n";
  } else {
    std::cout << "\\left[" << slot_latex(li, lj) << ", " << slot_latex(ri, rj)
              << "\\right] = " << c.latex() << "\n";
  }
}

void run_verify(int n, int order, const std::string& expr_text, bool weighted, Format fmt) {
  ExprPtr f = parse(expr_text, n);
  DeterminingSystem sys = determining_system(n, order);
  std::vector<DiffOperator> ops = weighted ? multiplicity_weighted(sys.ops) : sys.ops;
  AnnihilationReport rep = verify_annihilated(f, ops);
  if (fmt == Format::Json) {
    Json j;
    j["n"] = n;
    j["order"] = order;
    j["weighted"] = weighted;
    j["expr"] = to_string(normalize(f));
    j["annihilated"] = rep.annihilated;
    j["residuals"] = Json::array();
    for (std::size_t t = 0; t < ops.size(); ++t) {
      Json r;
      r["slot"] = slot_label(sys.labels[t].first, sys.labels[t].second);
      r["residual"] = to_string(rep.residuals[t]);
      r["zero"] = static_cast<bool>(rep.per_op[t]);
      j["residuals"].push_back(r);
    }
    emit_json(j);
    return;
  }
  if (fmt == Format::Text) {
    std::cout << "annihilated: " << (rep.annihilated ? "yes" : "no") << "\n";
    for (std::size_t t = 0; t < ops.size(); ++t)
      std::cout << slot_label(sys.labels[t].first, sys.labels[t].second) << ": "
                << to_string(rep.residuals[t]) << "\n";
  } else {
    for (std::size_t t = 0; t < ops.size(); ++t)
      std::cout << slot_latex(sys.labels[t].first, sys.labels[t].second)
                << "\\,f = " << to_latex(rep.residuals[t]) << "\n";
  }
}

void run_adjoint(int n, int order, bool plain, Format fmt) {
  DeterminingSystem sys = determining_system(n, order);
  std::vector<DiffOperator> ops = plain ? sys.ops : multiplicity_weighted(sys.ops);
  AdjointSystem adj = jacobian_adjoint(ops, default_pivots(n, order), default_nonpivots(n, order));
  std::vector<std::string> row_labels;
  for (const auto& [i, j] : sys.labels) row_labels.push_back(slot_label(i, j));
  if (fmt == Format::Json) {
    Json j;
    j["n"] = n;
    j["order"] = order;
    j["weighted"] = !plain;
    j["pivots"] = Json::array();
    for (const Var& v : adj.pivots) j["pivots"].push_back(v.name());
    j["nonpivots"] = Json::array();
    for (const Var& v : adj.nonpivots) j["nonpivots"].push_back(v.name());
    j["rows"] = row_labels;
    j["matrix"] = matrix_to_json(adj.matrix);
    j["reconstruction_ok"] = adj.reconstruction_ok;
    emit_json(j);
    return;
  }
  if (fmt == Format::Text) {
    std::cout << "pivots:";
    for (const Var& v : adj.pivots) std::cout << " " << v.name();
    std::cout << "\nnonpivots:";
    for (const Var& v : adj.nonpivots) std::cout << " " << v.name();
    std::cout << "\n";
    for (std::size_t r = 0; r < adj.matrix.rows; ++r) {
      std::cout << row_labels[r] << ":";
      for (std::size_t c = 0; c < adj.matrix.cols; ++c)
        std::cout << (c == 0 ? " " : " | ") << to_string(adj.matrix.entry[r][c]);
      std::cout << "\n";
    }
    std::cout << "reconstruction: " << (adj.reconstruction_ok ? "ok" : "FAILED") << "\n";
  } else {
    std::cout << "\\begin{bmatrix}\n";
    for (std::size_t r = 0; r < adj.matrix.rows; ++r) {
      for (std::size_t c = 0; c < adj.matrix.cols; ++c)
        std::cout << (c == 0 ? "" : " & ") << to_latex(adj.matrix.entry[r][c]);
      std::cout << (r + 1 < adj.matrix.rows ? " \\\\" : "") << "\n";
    }
    std::cout << "\\end{bmatrix}\n";
  }
}

void run_count(int n, int p, Format fmt) {
  long long first = count_first_order(n, p);
  long long tkl = count_tkl(n);
  long long m2 = conjectured_m2(n);
  long long wbs = weighted_binomial_sum(n);
  if (fmt == Format::Json) {
    Json j;
    j["n"] = n;
    j["p"] = p;
    j["first_order"] = first;
    j["tkl"] = tkl;
    j["conjectured_m2"] = m2;
    j["weighted_binomial_sum"] = wbs;
    emit_json(j);
    return;
  }
  std::cout << "n: " << n << "\n"
            << "p: " << p << "\n"
            << "first_order: " << first << "\n"
            << "tkl: " << tkl << "\n"
            << "conjectured_m2: " << m2 << "\n"
            << "weighted_binomial_sum: " << wbs << "\n";
}

void run_transform(const std::string& eqfile, const std::string& mapfile, Format fmt) {
  Equation eq = equation_from_json(load_json_file(eqfile));
  PointTransformation tr = transformation_from_json(load_json_file(mapfile));
  Equation out = apply_transformation(eq, tr);
  if (fmt == Format::Json) {
    emit_json(equation_to_json(out));
    return;
  }
  for (int i = 1; i <= out.n; ++i) {
    if (fmt == Format::Text)
      std::cout << "B" << i << " = " << to_string(out.coeffs[i - 1]) << "\n";
    else
      std::cout << "B_{" << i << "} = " << to_latex(out.coeffs[i - 1]) << "\n";
  }
}

void run_equivalent(const std::string& filea, const std::string& fileb, const std::string& mode,
                    int samples, double tol, std::optional<std::uint64_t> seed,
                    const std::string& mapfile, Format fmt) {
  Equation a = equation_from_json(load_json_file(filea));
  Equation b = equation_from_json(load_json_file(fileb));
  OrbitOptions opts;
  opts.mode = mode == "numeric" ? OrbitOptions::Mode::Numeric : OrbitOptions::Mode::Symbolic;
  opts.samples = samples;
  opts.tol = tol;
  opts.seed = seed;
  if (!mapfile.empty()) opts.alignment = transformation_from_json(load_json_file(mapfile));
  OrbitVerdict v = orbit_equivalent(a, b, opts);
  if (fmt == Format::Json) {
    Json j;
    j["mode"] = mode;
    j["equivalent"] = v.equivalent;
    j["pattern_match"] = v.pattern_match;
    j["probabilistic"] = v.probabilistic;
    j["detail"] = v.detail;
    emit_json(j);
    return;
  }
  std::cout << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
  std::cout << "pattern match: " << (v.pattern_match ? "yes" : "no") << "\n";
  std::cout << "probabilistic: " << (v.probabilistic ? "yes" : "no") << "\n";
  for (const std::string& d : v.detail) std::cout << d << "\n";
}

// ---- selfcheck: the embedded golden suite -----------------------------------

int run_selfcheck(Format fmt) {
  struct Check {
    std::string name;
    bool pass = false;
  };
  std::vector<Check> checks;
  auto check = [&](const std::string& name, bool pass) { checks.push_back({name, pass}); };

  // First-order slots, n = 2.
  {
    DeterminingSystem s = determining_system(2, 1);
    DiffOperator e1(2), e2(2);
    e1.set_term(Var::jet(1, {}), parse("A1", 2));
    e1.set_term(Var::jet(1, {2}), parse("A1_2", 2));
    e1.set_term(Var::jet(2, {1}), parse("-A2_1", 2));
    e2.set_term(Var::jet(2, {}), parse("A2", 2));
    e2.set_term(Var::jet(1, {2}), parse("-A1_2", 2));
    e2.set_term(Var::jet(2, {1}), parse("A2_1", 2));
    check("first-order slots (n=2)", s.op_for(1, 1) == e1 && s.op_for(2, 1) == e2);
  }
  // Commutator identities.
  {
    DeterminingSystem s = determining_system(2, 2);
    auto W = [&](int i, int j) { return multiplicity_weighted(s.op_for(i, j)); };
    bool ok = commutator(W(1, 1), W(1, 2)) == W(1, 2) &&
              commutator(W(2, 1), W(2, 2)) == W(2, 2) &&
              commutator(s.op_for(1, 1), s.op_for(1, 2)) == s.op_for(1, 2);
    check("within-family brackets reproduce the second-derivative slot", ok);
    DiffOperator expect(2);
    expect.set_term(Var::jet(1, {1, 2}), parse("-2*A1_2", 2));
    check("weighted cross bracket (n=2)", commutator(W(1, 2), W(2, 1)) == expect);
    check("plain cross brackets vanish (n=2)",
          commutator(s.op_for(1, 2), s.op_for(2, 1)).is_zero() &&
              commutator(s.op_for(1, 1), s.op_for(2, 2)).is_zero());
  }
  {
    DeterminingSystem s = determining_system(3, 2);
    auto W = [&](int i, int j) { return multiplicity_weighted(s.op_for(i, j)); };
    DiffOperator expect(3);
    expect.set_term(Var::jet(3, {1, 3}), parse("2*A3_1", 3));
    check("weighted cross bracket (n=3)", commutator(W(1, 1), W(3, 2)) == expect);
  }
  // Completeness dichotomy.
  {
    DeterminingSystem s = determining_system(2, 2);
    CompletenessReport plain = is_complete_system(s.ops);
    CompletenessReport weighted = is_complete_system(multiplicity_weighted(s.ops));
    check("plain second-order system closes under brackets", plain.complete);
    check("weighted second-order system has a bracket witness",
          !weighted.complete && !weighted.witness_bracket.is_zero());
  }
  // Invariant sets (constructors certify annihilation internally).
  {
    bool ok = first_order_invariants(2).invariants.size() == 2 &&
              first_order_invariants(3).invariants.size() == 6 &&
              second_order_invariants(2).invariants.size() == 4 &&
              second_order_invariants(3).invariants.size() == 15;
    check("invariant set sizes (n=2,3)", ok);
  }
  // The J functions fail annihilation with the recorded residuals.
  {
    DeterminingSystem s = determining_system(2, 2);
    ExprPtr j12 = J_function(1, 2);
    ExprPtr plain_res = normalize(s.op_for(1, 2).apply(j12));
    ExprPtr weighted_res = normalize(multiplicity_weighted(s.op_for(1, 2)).apply(j12));
    bool ok = equal_normalized(plain_res, parse("A1*A2 - 2*A1", 2)) &&
              equal_normalized(weighted_res, parse("2*A1*A2 - 2*A1", 2));
    check("J12 residuals under the xi1p2 slot", ok);
  }
  // Adjoint spot checks (weighted, n=2).
  {
    DeterminingSystem s = determining_system(2, 2);
    AdjointSystem adj = jacobian_adjoint(multiplicity_weighted(s.ops), default_pivots(2, 2),
                                         default_nonpivots(2, 2));
    auto entry = [&](std::size_t r, const char* col) {
      for (std::size_t c = 0; c < adj.matrix.cols; ++c)
        if (adj.matrix.col_labels[c].name() == col) return to_string(adj.matrix.entry[r][c]);
      return std::string("<missing>");
    };
    bool ok = adj.reconstruction_ok && entry(0, "A1_22") == "A1_22 / A1" &&
              entry(0, "A2_11") == "-2 * A2_11 / A1" && entry(2, "A1_12") == "2 * A1_2 / A1" &&
              entry(3, "A2_12") == "2 * A2_1 / A2";
    check("adjoint matrix spot entries (n=2, weighted)", ok);
  }
  // Counting formulas.
  {
    bool ok = count_first_order(5) == 20 && count_tkl(5) == 70 && conjectured_m2(4) == 40 &&
              conjectured_m2(5) == 95;
    for (int n = 2; n <= 20 && ok; ++n)
      ok = weighted_binomial_sum(n) == static_cast<long long>(n) * ((1LL << (n - 1)) - 1);
    check("counting formulas", ok);
  }
  // Orbit verdicts.
  {
    Equation one = make_equation(2, {parse("1", 2), parse("1", 2)});
    Equation sep = make_equation(2, {parse("exp(x1)", 2), parse("1+x2^2", 2)});
    Equation swp = make_equation(2, {parse("x2", 2), parse("x1", 2)});
    OrbitOptions sym;
    bool ok = orbit_equivalent(sep, one, sym).equivalent &&
              !orbit_equivalent(swp, one, sym).equivalent;
    PointTransformation tr =
        make_transformation(2, {parse("2*y1", 2), parse("y2 + y2^3/3", 2)});
    OrbitOptions aligned;
    aligned.alignment = tr;
    ok = ok && orbit_equivalent(swp, apply_transformation(swp, tr), aligned).equivalent;
    check("orbit classifier verdicts", ok);
  }

  bool all = true;
  for (const Check& c : checks) all = all && c.pass;
  if (fmt == Format::Json) {
    Json j;
    j["checks"] = Json::array();
    for (const Check& c : checks) {
      Json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      j["checks"].push_back(e);
    }
    j["all_pass"] = all;
    emit_json(j);
  } else {
    for (const Check& c : checks)
      std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << "\n";
    std::cout << (all ? "all checks passed" : "SELFCHECK FAILED") << "\n";
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivalence-group machinery for first-order linear PDEs"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed_value, "random seed (numeric orbit mode)");
  // Let --format/--seed appear after the subcommand name as well.
  app.fallthrough();

  // invariants
  auto* inv = app.add_subcommand("invariants", "fundamental differential invariants");
  int inv_n = 2, inv_order = 1;
  std::string inv_vanish;
  inv->add_option("--n", inv_n, "dimension")->required()->check(CLI::Range(2, 9));
  inv->add_option("--order", inv_order, "prolongation order")->check(CLI::Range(1, 2));
  inv->add_option("--vanish", inv_vanish, "vanishing pairs i,j;k,l");

  // generator
  auto* gen = app.add_subcommand("generator", "group generator and its prolongations");
  int gen_n = 2, gen_order = 0;
  bool gen_decompose = false, gen_weighted = false;
  gen->add_option("--n", gen_n, "dimension")->required()->check(CLI::Range(2, 9));
  gen->add_option("--order", gen_order, "prolongation order")->check(CLI::Range(0, 2));
  gen->add_flag("--decompose", gen_decompose, "list the xi-derivative slot operators");
  gen->add_flag("--weighted", gen_weighted, "scale jet targets by derivative-tuple multiplicity");

  // commutator
  auto* com = app.add_subcommand("commutator", "bracket of two slot operators");
  int com_n = 2, com_order = 2;
  std::string com_left, com_right;
  bool com_plain = false;
  com->add_option("--n", com_n, "dimension")->required()->check(CLI::Range(2, 9));
  com->add_option("--order", com_order, "determining-system order")->check(CLI::Range(1, 2));
  com->add_option("--left", com_left, "left slot, e.g. xi1p2")->required();
  com->add_option("--right", com_right, "right slot, e.g. xi2p1")->required();
  com->add_flag("--plain", com_plain, "use unweighted (multiset) slot operators");

  // verify
  auto* ver = app.add_subcommand("verify", "test an expression against the determining system");
  int ver_n = 2, ver_order = 2;
  std::string ver_expr;
  bool ver_weighted = false;
  ver->add_option("--n", ver_n, "dimension")->required()->check(CLI::Range(2, 9));
  ver->add_option("--order", ver_order, "determining-system order")->check(CLI::Range(1, 2));
  ver->add_option("--expr", ver_expr, "candidate invariant expression")->required();
  ver->add_flag("--weighted", ver_weighted, "use multiplicity-weighted slot operators");

  // adjoint
  auto* adjc = app.add_subcommand("adjoint", "solved-pivot adjoint matrix of the system");
  int adj_n = 2, adj_order = 2;
  bool adj_plain = false;
  adjc->add_option("--n", adj_n, "dimension")->required()->check(CLI::Range(2, 9));
  adjc->add_option("--order", adj_order, "determining-system order")->check(CLI::Range(1, 2));
  adjc->add_flag("--plain", adj_plain, "use unweighted (multiset) slot operators");

  // count
  auto* cnt = app.add_subcommand("count", "invariant counting formulas");
  int cnt_n = 2, cnt_p = 0;
  cnt->add_option("--n", cnt_n, "dimension")->required()->check(CLI::Range(2, 20));
  cnt->add_option("--p", cnt_p, "number of identically vanishing off-axis derivatives")
      ->check(CLI::Range(0, 380));

  // transform
  auto* tra = app.add_subcommand("transform", "push an equation forward along a map");
  std::string tra_eqfile, tra_mapfile;
  tra->add_option("eqfile", tra_eqfile, "equation JSON file")->required();
  tra->add_option("--map", tra_mapfile, "transformation JSON file")->required();

  // equivalent
  auto* eqv = app.add_subcommand("equivalent", "same-orbit test for two equations");
  std::string eqv_a, eqv_b, eqv_mode = "symbolic", eqv_map;
  int eqv_samples = 64;
  double eqv_tol = 1e-9;
  eqv->add_option("filea", eqv_a, "first equation JSON file")->required();
  eqv->add_option("fileb", eqv_b, "second equation JSON file")->required();
  eqv->add_option("--mode", eqv_mode, "comparison mode")
      ->check(CLI::IsMember({"symbolic", "numeric"}))
      ->capture_default_str();
  eqv->add_option("--samples", eqv_samples, "sample count (numeric mode)")
      ->check(CLI::Range(1, 1000000));
  eqv->add_option("--tol", eqv_tol, "relative tolerance (numeric mode)")
      ->check(CLI::PositiveNumber);
  eqv->add_option("--map", eqv_map, "alignment map JSON file (compose first signature with it)");

  // selfcheck
  app.add_subcommand("selfcheck", "run the embedded golden suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::optional<std::uint64_t> seed;
    if (seed_opt->count() > 0) seed = seed_value;
    if (const char* env = std::getenv("VFINV_SEED")) {
      // The environment variable takes precedence over --seed.
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: VFINV_SEED is not an unsigned integer\n";
        return 1;
      }
    }
    Format fmt = parse_format(format);

    if (app.got_subcommand(inv)) run_invariants(inv_n, inv_order, inv_vanish, fmt);
    else if (app.got_subcommand(gen)) run_generator(gen_n, gen_order, gen_decompose, gen_weighted, fmt);
    else if (app.got_subcommand(com)) run_commutator(com_n, com_order, com_left, com_right, com_plain, fmt);
    else if (app.got_subcommand(ver)) run_verify(ver_n, ver_order, ver_expr, ver_weighted, fmt);
    else if (app.got_subcommand(adjc)) run_adjoint(adj_n, adj_order, adj_plain, fmt);
    else if (app.got_subcommand(cnt)) run_count(cnt_n, cnt_p, fmt);
    else if (app.got_subcommand(tra)) run_transform(tra_eqfile, tra_mapfile, fmt);
    else if (app.got_subcommand(eqv))
      run_equivalent(eqv_a, eqv_b, eqv_mode, eqv_samples, eqv_tol, seed, eqv_map, fmt);
    else return run_selfcheck(fmt);
    return 0;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
