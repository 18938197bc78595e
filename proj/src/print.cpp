#include <sstream>
#include <string>

#include "vfinv/expr.hpp"

namespace vfinv {

std::string Var::name() const {
  switch (kind_) {
    case VarKind::Indep:
      return "x" + std::to_string(index_);
    case VarKind::Jet: {
      std::string s = "A" + std::to_string(index_);
      if (!multi_.empty()) {
        s += "_";
        for (int d : multi_) s += std::to_string(d);
      }
      return s;
    }
    case VarKind::Xi: {
      std::string s = "xi" + std::to_string(index_);
      if (order_ > 0) s += "p" + std::to_string(order_);
      return s;
    }
    case VarKind::Atom:
      return std::string(func_name(func_)) + "(" + key_ + ")";
  }
  return "?";
}

namespace {

std::string rational_str(const Rational& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

// ---- canonical rational-function printer -----------------------------------

std::string factor_str(const Var& v, int e) {
  std::string s = v.name();
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

// |c| * monomial, sign handled by the caller.
std::string term_str(const Rational& c_abs, const Monomial& m) {
  std::string s;
  if (m.empty()) return rational_str(c_abs);
  if (c_abs != 1) s = rational_str(c_abs) + " * ";
  bool first = true;
  for (const auto& [v, e] : m) {
    if (!first) s += " * ";
    s += factor_str(v, e);
    first = false;
  }
  return s;
}

std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool negative = c < 0;
    Rational a = negative ? Rational(-c) : c;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    s += term_str(a, m);
    first = false;
  }
  return s;
}

bool den_is_plain_factor(const Poly& d) {
  if (d.terms().size() != 1) return false;
  const auto& [m, c] = *d.terms().begin();
  return c == 1 && m.size() == 1;
}

std::string rat_str(const RatFunc& r) {
  if (r.is_polynomial()) return poly_str(r.num());
  std::string numpart;
  if (r.num().terms().size() == 1) {
    const auto& [m, c] = *r.num().terms().begin();
    numpart = (c < 0 ? "-" : "") + term_str(c < 0 ? Rational(-c) : c, m);
  } else {
    numpart = "(" + poly_str(r.num()) + ")";
  }
  std::string denpart;
  if (den_is_plain_factor(r.den())) {
    const auto& [m, c] = *r.den().terms().begin();
    denpart = factor_str(m[0].first, m[0].second);
  } else {
    denpart = "(" + poly_str(r.den()) + ")";
  }
  return numpart + " / " + denpart;
}

// Print-precedence level the canonical string starts/ends at, for embedding
// a Canon node inside a tree printout.
int rat_level(const RatFunc& r) {
  if (!r.is_polynomial()) return 2;
  const Poly& p = r.num();
  if (p.is_zero()) return 5;
  if (p.terms().size() > 1) return 1;
  const auto& [m, c] = *p.terms().begin();
  if (c < 0) return m.empty() && rat_den(c) == 1 ? 3 : (m.empty() ? 2 : 1);
  if (m.empty()) return rat_den(c) == 1 ? 5 : 2;
  if (c == 1 && m.size() == 1) return m[0].second == 1 ? 5 : 4;
  return 2;
}

// ---- tree printer -----------------------------------------------------------
// Levels: Add=1, Mul/Div=2, unary minus=3, Pow=4, primary=5.  A node is
// parenthesized when its level is below what its context requires; the result
// re-parses to the identical tree for any tree in the parser image.

int level(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      if (rat_den(e->value) != 1) return 2;    // prints as p/q
      return e->value < 0 ? 3 : 5;
    case ExprKind::VarRef:
    case ExprKind::Call:
      return 5;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Add:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Pow:
      return 4;
    case ExprKind::Canon:
      return rat_level(*e->canon);
  }
  return 5;
}

std::string render(const ExprPtr& e, int req);

std::string raw(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      return rational_str(e->value);
    case ExprKind::VarRef:
      return e->var.name();
    case ExprKind::Neg:
      return "-" + render(e->kids[0], 3);
    case ExprKind::Add: {
      std::string s = render(e->kids[0], 1);
      for (std::size_t i = 1; i < e->kids.size(); ++i) {
        const ExprPtr& k = e->kids[i];
        if (k->kind == ExprKind::Neg) {
          s += " - " + render(k->kids[0], 2);
        } else if (k->kind == ExprKind::Num && k->value < 0) {
          s += " - " + render(make_num(Rational(-k->value)), 2);
        } else {
          s += " + " + render(k, 2);
        }
      }
      return s;
    }
    case ExprKind::Mul: {
      std::string s = render(e->kids[0], 2);
      for (std::size_t i = 1; i < e->kids.size(); ++i) s += " * " + render(e->kids[i], 3);
      return s;
    }
    case ExprKind::Div:
      return render(e->kids[0], 2) + " / " + render(e->kids[1], 3);
    case ExprKind::Pow: {
      std::string ex = std::to_string(e->exponent);
      if (e->exponent < 0) ex = "(" + ex + ")";
      return render(e->kids[0], 5) + "^" + ex;
    }
    case ExprKind::Call:
      return std::string(func_name(e->func)) + "(" + render(e->kids[0], 1) + ")";
    case ExprKind::Canon:
      return rat_str(*e->canon);
  }
  return "?";
}

std::string render(const ExprPtr& e, int req) {
  std::string s = raw(e);
  if (level(e) < req) s = "(" + s + ")";
  return s;
}

// ---- LaTeX ------------------------------------------------------------------

std::string latex_rational(const Rational& q) {
  if (rat_den(q) == 1) return rat_num(q).str();
  std::string n = rat_num(q).str();
  bool negative = false;
  if (!n.empty() && n[0] == '-') {
    negative = true;
    n = n.substr(1);
  }
  return std::string(negative ? "-" : "") + "\\frac{" + n + "}{" + rat_den(q).str() + "}";
}

std::string latex_poly(const Poly& p);

std::string latex_var(const Var& v) {
  switch (v.kind()) {
    case VarKind::Indep:
      return "x^{" + std::to_string(v.index()) + "}";
    case VarKind::Jet: {
      std::string sub = std::to_string(v.index());
      for (int d : v.multi()) sub += std::to_string(d);
      return "A_{" + sub + "}";
    }
    case VarKind::Xi: {
      std::string s = "\\xi^{" + std::to_string(v.index());
      if (v.xi_order() > 0) s += "(" + std::to_string(v.xi_order()) + ")";
      return s + "}";
    }
    case VarKind::Atom: {
      RatFunc arg = to_ratfunc(v.atom_arg());
      std::string inner = arg.is_polynomial() ? latex_poly(arg.num())
                                              : "\\frac{" + latex_poly(arg.num()) + "}{" + latex_poly(arg.den()) + "}";
      if (v.func() == Func::Sqrt) return "\\sqrt{" + inner + "}";
      return std::string("\\") + func_name(v.func()) + "\\left(" + inner + "\\right)";
    }
  }
  return "?";
}

std::string latex_term(const Rational& c_abs, const Monomial& m) {
  std::string s;
  if (m.empty()) return latex_rational(c_abs);
  if (c_abs != 1) s = latex_rational(c_abs) + " ";
  bool first = true;
  for (const auto& [v, e] : m) {
    if (!first) s += " ";
    s += latex_var(v);
    if (e != 1) s += "^{" + std::to_string(e) + "}";
    first = false;
  }
  return s;
}

std::string latex_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool negative = c < 0;
    Rational a = negative ? Rational(-c) : c;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    s += latex_term(a, m);
    first = false;
  }
  return s;
}

}  // namespace

std::string to_string(const ExprPtr& e) { return render(e, 1); }

std::string to_string(const RatFunc& f) { return rat_str(f); }

std::string to_latex(const RatFunc& f) {
  if (f.is_polynomial()) return latex_poly(f.num());
  return "\\frac{" + latex_poly(f.num()) + "}{" + latex_poly(f.den()) + "}";
}

std::string to_latex(const Var& v) { return latex_var(v); }

std::string to_latex(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Canon:
      return to_latex(*e->canon);
    case ExprKind::Num:
      return latex_rational(e->value);
    case ExprKind::VarRef:
      return latex_var(e->var);
    case ExprKind::Neg:
      return "-\\left(" + to_latex(e->kids[0]) + "\\right)";
    case ExprKind::Add: {
      std::string s = to_latex(e->kids[0]);
      for (std::size_t i = 1; i < e->kids.size(); ++i) s += " + " + to_latex(e->kids[i]);
      return s;
    }
    case ExprKind::Mul: {
      std::string s;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) {
          // Juxtaposition reads naturally except between two bare numerals.
          bool both_num = e->kids[i - 1]->kind == ExprKind::Num &&
                          e->kids[i]->kind == ExprKind::Num;
          s += both_num ? " \\cdot " : " ";
        }
        bool wrap = level(e->kids[i]) < 2;
        s += wrap ? "\\left(" + to_latex(e->kids[i]) + "\\right)" : to_latex(e->kids[i]);
      }
      return s;
    }
    case ExprKind::Div:
      return "\\frac{" + to_latex(e->kids[0]) + "}{" + to_latex(e->kids[1]) + "}";
    case ExprKind::Pow: {
      bool wrap = level(e->kids[0]) < 5;
      std::string b = wrap ? "\\left(" + to_latex(e->kids[0]) + "\\right)" : to_latex(e->kids[0]);
      return b + "^{" + std::to_string(e->exponent) + "}";
    }
    case ExprKind::Call: {
      std::string inner = to_latex(e->kids[0]);
      if (e->func == Func::Sqrt) return "\\sqrt{" + inner + "}";
      return std::string("\\") + func_name(e->func) + "\\left(" + inner + "\\right)";
    }
  }
  return "?";
}

}  // namespace vfinv
