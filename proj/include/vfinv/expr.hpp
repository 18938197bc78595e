#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vfinv/ratfunc.hpp"

namespace vfinv {

// Immutable expression tree.  parse() produces trees out of the grammar
// image; normalize() collapses any tree into a single Canon node holding the
// canonical rational function (opaque function applications become atoms).
enum class ExprKind : std::uint8_t { Num, VarRef, Neg, Add, Mul, Div, Pow, Call, Canon };

struct Expr {
  ExprKind kind = ExprKind::Num;
  Rational value;                        // Num
  Var var;                               // VarRef (never an atom)
  std::vector<ExprPtr> kids;             // Neg/Call: 1, Div: 2, Pow: 1, Add/Mul: >= 2
  int exponent = 0;                      // Pow
  Func func = Func::Exp;                 // Call
  std::shared_ptr<const RatFunc> canon;  // Canon
};

// ---- constructors ----------------------------------------------------------
ExprPtr make_num(const Rational& q);
ExprPtr make_num(long long v);
ExprPtr make_var(const Var& v);  // rejects atoms
ExprPtr x_(int i);
ExprPtr A_(int base, std::vector<int> multi = {});
ExprPtr xi_(int i, int order = 0);

ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div_expr(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr pow_expr(ExprPtr base, int exponent);
ExprPtr call(Func f, ExprPtr arg);
ExprPtr sum(std::vector<ExprPtr> kids);      // empty -> 0, singleton -> itself
ExprPtr product(std::vector<ExprPtr> kids);  // empty -> 1, singleton -> itself
ExprPtr canonical(RatFunc f);

// ---- core operations -------------------------------------------------------

// Canonical rational-function image of the tree (atoms opaque).
RatFunc to_ratfunc(const ExprPtr& e);

// Canon node wrapping to_ratfunc(e).
ExprPtr normalize(const ExprPtr& e);

bool equal_normalized(const ExprPtr& a, const ExprPtr& b);

// Total derivative along x^direction: jets shift A_{i,J} -> A_{i,J+k}, the
// reparametrization symbols shift xi^i(j) -> xi^i(j+1) on the matching axis,
// atoms follow the chain rule.  Stepping past `cap` throws DomainError.
ExprPtr diff_total(const ExprPtr& e, int direction, int cap = kJetOrderCap);

// Partial derivative with respect to one coordinate (all coordinates,
// including jets, treated as independent).
ExprPtr partial(const ExprPtr& e, const Var& v);

// Exact substitution of coordinates by expressions; reaches inside atom
// arguments.  Keys must be non-atom variables.
ExprPtr substitute(const ExprPtr& e, const std::map<Var, ExprPtr>& repl);

// ---- zero testing ----------------------------------------------------------

struct ZeroOptions {
  int points = 8;              // random evaluations when atoms are present
  std::uint64_t seed = 0x76f1; // deterministic by default
  double tol = 1e-12;          // relative to the evaluated term-magnitude sum
  int max_resamples = 512;     // draws discarded due to singular points
};

struct ZeroVerdict {
  bool zero = false;
  // true when the answer rests on random evaluation (atoms present) rather
  // than on the exact canonical form
  bool probabilistic = false;
};

ZeroVerdict zero_verdict(const ExprPtr& e, const ZeroOptions& opts = {});
bool is_zero(const ExprPtr& e);

// ---- numeric evaluation ----------------------------------------------------

using Point = std::map<Var, double>;

// Guard: denominators (and negative-power bases) with magnitude below this
// raise EvalError instead of producing infinities.
inline constexpr double kEvalDenominatorGuard = 1e-300;

double eval_numeric(const ExprPtr& e, const Point& point);

// ---- introspection ---------------------------------------------------------

// Variables of the canonical form; atoms appear as themselves.
std::vector<Var> variables(const ExprPtr& e);
// Same, but atoms are replaced by the variables inside their arguments.
std::vector<Var> base_variables(const ExprPtr& e);

// ---- printing (print.cpp) --------------------------------------------------

// Exact-inverse printer: for any tree in the parser image,
// parse(to_string(t)) reproduces t node-for-node.  Canon nodes print the
// canonical num/den form, which re-parses to a normalize-equal tree.
std::string to_string(const ExprPtr& e);
std::string to_string(const RatFunc& f);
std::string to_latex(const ExprPtr& e);
std::string to_latex(const RatFunc& f);
std::string to_latex(const Var& v);

// ---- parsing (parse.cpp) ---------------------------------------------------

// Grammar (dimension bound n <= 9 keeps jet tokens unambiguous):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' intexp)?
//   intexp  := '-'? digits | '(' '-'? digits ')'
//   primary := number | token | func '(' expr ')' | '(' expr ')'
//   token   := x<i> | y<i> | A<i> | A<i>_<dirs> | xi<i> | xi<i>p<j>
//   func    := exp | log | sin | cos | sqrt
// y<i> is an input alias for x<i> (handy for transformed-coordinate files);
// number literals may be decimal and convert exactly to rationals.
ExprPtr parse(const std::string& text, int n = 9);

}  // namespace vfinv
