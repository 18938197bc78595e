#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vfinv/errors.hpp"

namespace vfinv {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Highest jet order the coordinate ring carries.  Total derivatives that
// would step past a caller-supplied cap throw DomainError; this is the
// default cap and also the hard ceiling baked into the coordinate model.
inline constexpr int kJetOrderCap = 3;

// Derivative symbols of the per-axis reparametrizations are tracked up to
// this order (value 0 is the reparametrization component itself).
inline constexpr int kXiOrderCap = 3;

enum class VarKind : std::uint8_t {
  Indep = 0,  // x^i
  Jet = 1,    // A_i and its derivative coordinates A_{i,J}
  Xi = 2,     // xi^i and its formal derivatives xi^i(j)
  Atom = 3,   // opaque function application, e.g. exp(x1)
};

enum class Func : std::uint8_t { Exp, Log, Sin, Cos, Sqrt };

const char* func_name(Func f);

// A single generator of the polynomial ring.  Total ordering:
// kind first (Indep < Jet < Xi < Atom), then within a kind:
//   Indep: index
//   Jet:   (base, |J|, J lexicographic)   with J a sorted multi-index
//   Xi:    (index, derivative order)
//   Atom:  (function, canonical argument string)
class Var {
 public:
  Var() = default;

  static Var indep(int i) {
    require(i >= 1, "independent-variable index must be >= 1");
    Var v;
    v.kind_ = VarKind::Indep;
    v.index_ = i;
    return v;
  }

  static Var jet(int base, std::vector<int> multi, int cap = kJetOrderCap) {
    require(base >= 1, "jet base index must be >= 1");
    require(static_cast<int>(multi.size()) <= cap, "jet order exceeds cap");
    for (int d : multi) require(d >= 1, "jet direction index must be >= 1");
    std::sort(multi.begin(), multi.end());
    Var v;
    v.kind_ = VarKind::Jet;
    v.index_ = base;
    v.multi_ = std::move(multi);
    return v;
  }

  static Var xi(int i, int order) {
    require(i >= 1, "xi index must be >= 1");
    require(order >= 0 && order <= kXiOrderCap, "xi derivative order out of range");
    Var v;
    v.kind_ = VarKind::Xi;
    v.index_ = i;
    v.order_ = order;
    return v;
  }

  static Var atom(Func f, ExprPtr arg, std::string key) {
    Var v;
    v.kind_ = VarKind::Atom;
    v.func_ = f;
    v.arg_ = std::move(arg);
    v.key_ = std::move(key);
    return v;
  }

  VarKind kind() const { return kind_; }
  int index() const { return index_; }
  const std::vector<int>& multi() const { return multi_; }
  int xi_order() const { return order_; }
  Func func() const { return func_; }
  const ExprPtr& atom_arg() const { return arg_; }
  const std::string& atom_key() const { return key_; }

  bool is_atom() const { return kind_ == VarKind::Atom; }

  // Token form used by the printer and parser: x1, A2, A1_23, xi1, xi2p1.
  // Atoms render as func(arg) and are therefore not single tokens.
  std::string name() const;

  friend bool operator==(const Var& a, const Var& b) {
    return a.kind_ == b.kind_ && a.index_ == b.index_ && a.multi_ == b.multi_ &&
           a.order_ == b.order_ && (a.kind_ != VarKind::Atom || (a.func_ == b.func_ && a.key_ == b.key_));
  }
  friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }

  friend bool operator<(const Var& a, const Var& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    switch (a.kind_) {
      case VarKind::Indep:
        return a.index_ < b.index_;
      case VarKind::Jet:
        if (a.index_ != b.index_) return a.index_ < b.index_;
        if (a.multi_.size() != b.multi_.size()) return a.multi_.size() < b.multi_.size();
        return a.multi_ < b.multi_;
      case VarKind::Xi:
        if (a.index_ != b.index_) return a.index_ < b.index_;
        return a.order_ < b.order_;
      case VarKind::Atom:
        if (a.func_ != b.func_) return a.func_ < b.func_;
        return a.key_ < b.key_;
    }
    return false;
  }

 private:
  static void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
  }

  VarKind kind_ = VarKind::Indep;
  int index_ = 1;
  std::vector<int> multi_;
  int order_ = 0;
  Func func_ = Func::Exp;
  ExprPtr arg_;
  std::string key_;
};

}  // namespace vfinv
