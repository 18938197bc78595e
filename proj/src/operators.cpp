#include "vfinv/operators.hpp"

#include <set>

namespace vfinv {

void DiffOperator::set_term(const Var& target, const ExprPtr& coeff) {
  if (target.kind() != VarKind::Indep && target.kind() != VarKind::Jet)
    throw StructureError("operator targets must be x or jet coordinates, got " + target.name());
  ExprPtr c = normalize(coeff);
  if (to_ratfunc(c).is_zero())
    terms_.erase(target);
  else
    terms_[target] = c;
}

void DiffOperator::add_term(const Var& target, const ExprPtr& coeff) {
  auto it = terms_.find(target);
  set_term(target, it == terms_.end() ? coeff : add(it->second, coeff));
}

ExprPtr DiffOperator::coefficient(const Var& target) const {
  auto it = terms_.find(target);
  return it == terms_.end() ? make_num(0) : it->second;
}

ExprPtr DiffOperator::apply(const ExprPtr& f) const {
  RatFunc acc;
  for (const auto& [target, coeff] : terms_) {
    RatFunc df = to_ratfunc(partial(f, target));
    if (df.is_zero()) continue;
    acc += to_ratfunc(coeff) * df;
  }
  return canonical(acc);
}

DiffOperator DiffOperator::restricted(const std::vector<Var>& coords) const {
  std::set<Var> keep(coords.begin(), coords.end());
  DiffOperator r(n_);
  for (const auto& [target, coeff] : terms_)
    if (keep.count(target)) r.terms_.emplace(target, coeff);
  return r;
}

DiffOperator DiffOperator::scaled(const ExprPtr& factor) const {
  DiffOperator r(n_);
  for (const auto& [target, coeff] : terms_) r.set_term(target, mul(factor, coeff));
  return r;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  if (a.n_ != b.n_) throw DomainError("operator dimensions differ");
  DiffOperator r = a;
  for (const auto& [target, coeff] : b.terms_) r.add_term(target, coeff);
  return r;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
  if (a.n_ != b.n_) throw DomainError("operator dimensions differ");
  DiffOperator r = a;
  for (const auto& [target, coeff] : b.terms_) r.add_term(target, neg(coeff));
  return r;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    if (!equal_normalized(ia->second, ib->second)) return false;
  }
  return true;
}

DiffOperator commutator(const DiffOperator& p, const DiffOperator& q) {
  if (p.dim() != q.dim()) throw DomainError("operator dimensions differ");
  std::set<Var> targets;
  for (const auto& [t, c] : p.terms()) targets.insert(t);
  for (const auto& [t, c] : q.terms()) targets.insert(t);
  DiffOperator r(p.dim());
  for (const Var& t : targets) r.set_term(t, sub(p.apply(q.coefficient(t)), q.apply(p.coefficient(t))));
  return r;
}

namespace {

// Appends "coeff * d/dt" with the sign pulled out front when the canonical
// numerator leads with a negative coefficient.
void append_term(std::string& s, const ExprPtr& coeff, const std::string& dvar, bool latex_mode) {
  RatFunc r = to_ratfunc(coeff);
  bool negative = !r.num().is_zero() && r.num().leading().second < 0;
  if (negative) r = -r;
  if (s.empty()) {
    if (negative) s += "-";
  } else {
    s += negative ? " - " : " + ";
  }
  bool unit = r.is_polynomial() && r.num().is_constant() && r.num().constant_value() == 1;
  if (!unit) {
    std::string c = latex_mode ? to_latex(r) : to_string(r);
    bool wrap = !latex_mode && r.is_polynomial() && r.num().terms().size() > 1;
    s += wrap ? "(" + c + ")" : c;
    s += latex_mode ? " \\, " : " * ";
  }
  s += dvar;
}

}  // namespace

std::string DiffOperator::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [target, coeff] : terms_) append_term(s, coeff, "d/d" + target.name(), false);
  return s;
}

std::string DiffOperator::latex() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [target, coeff] : terms_)
    append_term(s, coeff, "\\partial_{" + to_latex(target) + "}", true);
  return s;
}

}  // namespace vfinv
