#include "vfinv/expr.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace vfinv {

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::shared_ptr<Expr> node(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

}  // namespace

ExprPtr make_num(const Rational& q) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Num;
  e->value = q;
  return e;
}

ExprPtr make_num(long long v) { return make_num(Rational(v)); }

ExprPtr make_var(const Var& v) {
  if (v.is_atom()) throw DomainError("make_var: atoms are not directly constructible");
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::VarRef;
  e->var = v;
  return e;
}

ExprPtr x_(int i) { return make_var(Var::indep(i)); }
ExprPtr A_(int base, std::vector<int> multi) { return make_var(Var::jet(base, std::move(multi))); }
ExprPtr xi_(int i, int order) { return make_var(Var::xi(i, order)); }

ExprPtr add(ExprPtr a, ExprPtr b) {
  auto e = node(ExprKind::Add);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprPtr sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }

ExprPtr mul(ExprPtr a, ExprPtr b) {
  auto e = node(ExprKind::Mul);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprPtr div_expr(ExprPtr a, ExprPtr b) {
  // Fold literal quotients so "3/4" means the rational number, keeping the
  // printer's output an exact fixed point of the parser.
  if (a->kind == ExprKind::Num && b->kind == ExprKind::Num) {
    if (b->value == 0) throw DivisionByZero();
    if (rat_den(a->value) == 1 && rat_den(b->value) == 1) return make_num(a->value / b->value);
  }
  auto e = node(ExprKind::Div);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprPtr neg(ExprPtr a) {
  if (a->kind == ExprKind::Num) return make_num(-a->value);  // fold literal sign
  auto e = node(ExprKind::Neg);
  e->kids = {std::move(a)};
  return e;
}

ExprPtr pow_expr(ExprPtr base, int exponent) {
  auto e = node(ExprKind::Pow);
  e->kids = {std::move(base)};
  e->exponent = exponent;
  return e;
}

ExprPtr call(Func f, ExprPtr arg) {
  auto e = node(ExprKind::Call);
  e->func = f;
  e->kids = {std::move(arg)};
  return e;
}

ExprPtr sum(std::vector<ExprPtr> kids) {
  if (kids.empty()) return make_num(0);
  if (kids.size() == 1) return kids[0];
  auto e = node(ExprKind::Add);
  e->kids = std::move(kids);
  return e;
}

ExprPtr product(std::vector<ExprPtr> kids) {
  if (kids.empty()) return make_num(1);
  if (kids.size() == 1) return kids[0];
  auto e = node(ExprKind::Mul);
  e->kids = std::move(kids);
  return e;
}

ExprPtr canonical(RatFunc f) {
  auto e = node(ExprKind::Canon);
  e->canon = std::make_shared<const RatFunc>(std::move(f));
  return e;
}

// ---- normalization ---------------------------------------------------------

namespace {

Var make_atom(Func f, const ExprPtr& canon_arg) {
  return Var::atom(f, canon_arg, to_string(canon_arg));
}

}  // namespace

RatFunc to_ratfunc(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      return RatFunc(e->value);
    case ExprKind::VarRef:
      return RatFunc::var(e->var);
    case ExprKind::Neg:
      return -to_ratfunc(e->kids[0]);
    case ExprKind::Add: {
      RatFunc r;
      for (const auto& k : e->kids) r += to_ratfunc(k);
      return r;
    }
    case ExprKind::Mul: {
      RatFunc r{Rational(1)};
      for (const auto& k : e->kids) r *= to_ratfunc(k);
      return r;
    }
    case ExprKind::Div:
      return to_ratfunc(e->kids[0]) / to_ratfunc(e->kids[1]);
    case ExprKind::Pow:
      return to_ratfunc(e->kids[0]).pow(e->exponent);
    case ExprKind::Call: {
      ExprPtr arg = canonical(to_ratfunc(e->kids[0]));
      return RatFunc::var(make_atom(e->func, arg));
    }
    case ExprKind::Canon:
      return *e->canon;
  }
  throw InternalInconsistency("to_ratfunc: unhandled node kind");
}

ExprPtr normalize(const ExprPtr& e) { return canonical(to_ratfunc(e)); }

bool equal_normalized(const ExprPtr& a, const ExprPtr& b) {
  return to_ratfunc(a) == to_ratfunc(b);
}

// ---- derivatives -----------------------------------------------------------

namespace {

using LeafRule = std::function<RatFunc(const Var&)>;

RatFunc rf_derive(const RatFunc& r, const LeafRule& leaf);

// Derivative of a single ring generator under the leaf rule (chain rule for
// atoms).
RatFunc var_derivative(const Var& v, const LeafRule& leaf) {
  if (!v.is_atom()) return leaf(v);
  RatFunc u = to_ratfunc(v.atom_arg());
  RatFunc du = rf_derive(u, leaf);
  if (du.is_zero()) return RatFunc();
  switch (v.func()) {
    case Func::Exp:
      return RatFunc::var(v) * du;
    case Func::Log:
      return du / u;
    case Func::Sin:
      return RatFunc::var(make_atom(Func::Cos, v.atom_arg())) * du;
    case Func::Cos:
      return -RatFunc::var(make_atom(Func::Sin, v.atom_arg())) * du;
    case Func::Sqrt:
      return du / (RatFunc(2) * RatFunc::var(v));
  }
  throw InternalInconsistency("var_derivative: unhandled function");
}

RatFunc poly_derive(const Poly& p, const LeafRule& leaf) {
  RatFunc acc;
  for (const Var& v : p.vars()) {
    RatFunc dv = var_derivative(v, leaf);
    if (dv.is_zero()) continue;
    acc += RatFunc(p.partial(v), Poly(Rational(1))) * dv;
  }
  return acc;
}

RatFunc rf_derive(const RatFunc& r, const LeafRule& leaf) {
  RatFunc dn = poly_derive(r.num(), leaf);
  RatFunc dd = poly_derive(r.den(), leaf);
  RatFunc den(r.den(), Poly(Rational(1)));
  // (n/d)' = n'/d - n d'/d^2
  RatFunc res = dn / den;
  if (!dd.is_zero()) res -= RatFunc(r.num(), Poly(Rational(1))) * dd / (den * den);
  return res;
}

}  // namespace

ExprPtr diff_total(const ExprPtr& e, int direction, int cap) {
  if (direction < 1) throw DomainError("diff_total: direction index must be >= 1");
  LeafRule leaf = [direction, cap](const Var& v) -> RatFunc {
    switch (v.kind()) {
      case VarKind::Indep:
        return v.index() == direction ? RatFunc(Rational(1)) : RatFunc();
      case VarKind::Jet: {
        std::vector<int> m = v.multi();
        if (static_cast<int>(m.size()) + 1 > cap)
          throw DomainError("diff_total: jet order cap exceeded");
        m.push_back(direction);
        return RatFunc::var(Var::jet(v.index(), std::move(m), cap));
      }
      case VarKind::Xi:
        if (v.index() != direction) return RatFunc();
        if (v.xi_order() + 1 > kXiOrderCap)
          throw DomainError("diff_total: xi derivative order cap exceeded");
        return RatFunc::var(Var::xi(v.index(), v.xi_order() + 1));
      case VarKind::Atom:
        break;  // handled by var_derivative
    }
    throw InternalInconsistency("diff_total: leaf rule reached an atom");
  };
  return canonical(rf_derive(to_ratfunc(e), leaf));
}

ExprPtr partial(const ExprPtr& e, const Var& v) {
  LeafRule leaf = [&v](const Var& w) -> RatFunc {
    return w == v ? RatFunc(Rational(1)) : RatFunc();
  };
  if (!v.is_atom()) return canonical(rf_derive(to_ratfunc(e), leaf));
  // Partial w.r.t. an opaque atom treats that atom as a coordinate.
  return canonical(to_ratfunc(e).partial(v));
}

// ---- substitution ----------------------------------------------------------

namespace {

RatFunc rf_subst(const RatFunc& r, const std::map<Var, RatFunc>& m);

RatFunc poly_subst(const Poly& p, const std::map<Var, RatFunc>& m) {
  RatFunc acc;
  for (const auto& [mono, c] : p.terms()) {
    RatFunc t{c};
    for (const auto& [v, e] : mono) {
      RatFunc val;
      if (!v.is_atom()) {
        auto it = m.find(v);
        val = it == m.end() ? RatFunc::var(v) : it->second;
      } else {
        RatFunc u = to_ratfunc(v.atom_arg());
        RatFunc u2 = rf_subst(u, m);
        if (u2 == u) {
          val = RatFunc::var(v);
        } else {
          val = RatFunc::var(make_atom(v.func(), canonical(u2)));
        }
      }
      t *= val.pow(e);
    }
    acc += t;
  }
  return acc;
}

RatFunc rf_subst(const RatFunc& r, const std::map<Var, RatFunc>& m) {
  RatFunc n = poly_subst(r.num(), m);
  RatFunc d = poly_subst(r.den(), m);
  if (d.is_zero()) throw DivisionByZero("substitution makes a denominator vanish");
  return n / d;
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::map<Var, ExprPtr>& repl) {
  std::map<Var, RatFunc> m;
  for (const auto& [v, val] : repl) {
    if (v.is_atom()) throw DomainError("substitute: keys must be coordinates, not atoms");
    m.emplace(v, to_ratfunc(val));
  }
  return canonical(rf_subst(to_ratfunc(e), m));
}

// ---- introspection ---------------------------------------------------------

std::vector<Var> variables(const ExprPtr& e) { return to_ratfunc(e).vars(); }

namespace {

void collect_base(const RatFunc& r, std::set<Var>& out) {
  for (const Var& v : r.vars()) {
    if (v.is_atom())
      collect_base(to_ratfunc(v.atom_arg()), out);
    else
      out.insert(v);
  }
}

}  // namespace

std::vector<Var> base_variables(const ExprPtr& e) {
  std::set<Var> s;
  collect_base(to_ratfunc(e), s);
  return {s.begin(), s.end()};
}

// ---- numeric evaluation ----------------------------------------------------

namespace {

double eval_atom(const Var& v, const Point& point);

// Evaluates p at `point`, also accumulating the sum of absolute term values
// (used as the scale reference for the probabilistic zero test).
double poly_eval(const Poly& p, const Point& point, double* scale) {
  double total = 0.0;
  for (const auto& [mono, c] : p.terms()) {
    double t = to_double(c);
    for (const auto& [v, e] : mono) {
      double val;
      if (v.is_atom()) {
        val = eval_atom(v, point);
      } else {
        auto it = point.find(v);
        if (it == point.end()) throw EvalError("no value assigned to " + v.name());
        val = it->second;
      }
      t *= std::pow(val, e);
    }
    total += t;
    if (scale) *scale += std::abs(t);
  }
  return total;
}

double apply_func(Func f, double u) {
  switch (f) {
    case Func::Exp:
      return std::exp(u);
    case Func::Log:
      if (u <= 0) throw EvalError("log argument must be positive");
      return std::log(u);
    case Func::Sin:
      return std::sin(u);
    case Func::Cos:
      return std::cos(u);
    case Func::Sqrt:
      if (u < 0) throw EvalError("sqrt argument must be nonnegative");
      return std::sqrt(u);
  }
  throw InternalInconsistency("apply_func: unhandled function");
}

double ratfunc_eval(const RatFunc& r, const Point& point) {
  double d = poly_eval(r.den(), point, nullptr);
  if (std::abs(d) < kEvalDenominatorGuard) throw EvalError("denominator vanishes at evaluation point");
  return poly_eval(r.num(), point, nullptr) / d;
}

double eval_atom(const Var& v, const Point& point) {
  return apply_func(v.func(), ratfunc_eval(to_ratfunc(v.atom_arg()), point));
}

}  // namespace

double eval_numeric(const ExprPtr& e, const Point& point) {
  switch (e->kind) {
    case ExprKind::Num:
      return to_double(e->value);
    case ExprKind::VarRef: {
      auto it = point.find(e->var);
      if (it == point.end()) throw EvalError("no value assigned to " + e->var.name());
      return it->second;
    }
    case ExprKind::Neg:
      return -eval_numeric(e->kids[0], point);
    case ExprKind::Add: {
      double s = 0;
      for (const auto& k : e->kids) s += eval_numeric(k, point);
      return s;
    }
    case ExprKind::Mul: {
      double p = 1;
      for (const auto& k : e->kids) p *= eval_numeric(k, point);
      return p;
    }
    case ExprKind::Div: {
      double d = eval_numeric(e->kids[1], point);
      if (std::abs(d) < kEvalDenominatorGuard) throw EvalError("denominator vanishes at evaluation point");
      return eval_numeric(e->kids[0], point) / d;
    }
    case ExprKind::Pow: {
      double b = eval_numeric(e->kids[0], point);
      if (e->exponent < 0 && std::abs(b) < kEvalDenominatorGuard)
        throw EvalError("negative power of a vanishing base");
      return std::pow(b, e->exponent);
    }
    case ExprKind::Call:
      return apply_func(e->func, eval_numeric(e->kids[0], point));
    case ExprKind::Canon:
      return ratfunc_eval(*e->canon, point);
  }
  throw InternalInconsistency("eval_numeric: unhandled node kind");
}

// ---- zero testing ----------------------------------------------------------

ZeroVerdict zero_verdict(const ExprPtr& e, const ZeroOptions& opts) {
  RatFunc r = to_ratfunc(e);
  if (r.num().is_zero()) return {true, false};
  if (!r.has_atoms()) return {false, false};

  // Atoms make the canonical form incomplete (it cannot see identities such
  // as relations among sin, cos, exp, log), so fall back to randomized
  // evaluation and say so in the verdict.
  std::set<Var> base;
  collect_base(r, base);
  std::mt19937_64 rng(opts.seed);
  auto draw = [&rng]() {
    // positive values keep log/sqrt arguments in range more often
    return 0.25 + static_cast<double>(rng() >> 11) / 9007199254740992.0 * 3.0;
  };
  int resamples = 0;
  for (int k = 0; k < opts.points; ++k) {
    for (;;) {
      Point pt;
      for (const Var& v : base) pt[v] = draw();
      try {
        double scale = 0.0;
        double val = poly_eval(r.num(), pt, &scale);
        if (std::abs(val) > opts.tol * (1.0 + scale)) return {false, true};
        break;
      } catch (const EvalError&) {
        if (++resamples > opts.max_resamples)
          throw EvalError("zero test could not sample an admissible point");
      }
    }
  }
  return {true, true};
}

bool is_zero(const ExprPtr& e) { return zero_verdict(e).zero; }

}  // namespace vfinv
