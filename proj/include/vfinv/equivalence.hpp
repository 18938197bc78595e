#pragma once

#include <optional>

#include "vfinv/invariants.hpp"

namespace vfinv {

// A first-order homogeneous linear equation sum_i A_i(x) dU/dx^i = 0,
// represented by its coefficient functions (each must not vanish
// identically).
struct Equation {
  int n = 0;
  std::vector<ExprPtr> coeffs;  // coeffs[i-1] = A_i(x^1..x^n)
};
Equation make_equation(int n, std::vector<ExprPtr> coeffs);

// Componentwise change of variables x^i = psi^i(y^i); each psi^i depends on
// its own axis only and must have a nonvanishing derivative on its sampling
// interval (checked on a grid).  Written in terms of x<i> (or the alias
// y<i>), since components never mix axes.
struct PointTransformation {
  int n = 0;
  std::vector<ExprPtr> psi;
  std::vector<std::pair<double, double>> domain;  // per-axis sampling interval
};
inline constexpr std::pair<double, double> kDefaultAxisDomain{1.0, 2.0};
inline constexpr int kDerivativeGridSamples = 33;
inline constexpr double kDerivativeFloor = 1e-12;

PointTransformation make_transformation(int n, std::vector<ExprPtr> psi,
                                        std::vector<std::pair<double, double>> domain = {});

// Coefficient pushforward under x^i = psi^i(y^i):
//   B_j(y) = A_j(psi(y)) / (psi^j)'(y^j).
Equation apply_transformation(const Equation& eq, const PointTransformation& tr);

// outer then inner: psi_i = outer.psi_i composed with inner.psi_i, so
// apply(apply(eq, outer), inner) == apply(eq, compose(outer, inner)).
PointTransformation compose(const PointTransformation& outer, const PointTransformation& inner);

struct SignatureEntry {
  char family = 'T';  // 'T' at order 1; 'K' entries appear at order 2
  int i = 0, j = 0;
  ExprPtr value;  // concrete function of x
  ZeroVerdict vanish;
};

// T_ij(eq) = dA_i/dx^j * A_j / A_i evaluated on the equation's coefficients;
// at order 2, K entries are added for pairs whose T does not vanish.
std::vector<SignatureEntry> invariant_signature(const Equation& eq, int order = 1);

struct OrbitOptions {
  enum class Mode { Symbolic, Numeric };
  Mode mode = Mode::Symbolic;
  int samples = 64;
  double tol = 1e-9;                     // relative tolerance per invariant
  std::optional<std::uint64_t> seed;     // REQUIRED in numeric mode
  double admissibility = 1e-9;           // reject points where |A_i| is below this
  int max_resamples = 4096;
  // When b is known to be the pushforward of a along a componentwise map
  // (b == apply_transformation(a, m)), pass m here: a's signature entries are
  // composed with the map before comparison, matching the chain-rule identity
  // T_ij^b(Y) = T_ij^a(psi(Y)).  Absent, entries are compared in the shared
  // coordinates as they stand.
  std::optional<PointTransformation> alignment;
};

struct OrbitVerdict {
  bool equivalent = false;
  bool probabilistic = false;  // verdict rests on sampling, not exact algebra
  bool pattern_match = false;  // vanishing patterns of the T's agree
  std::vector<std::string> detail;
};

// Same-orbit test under componentwise reparametrizations: the vanishing
// patterns of the T's must agree, and matching entries must be equal as
// functions (after composing a's entries with the alignment map when one is
// supplied).  Symbolic mode decides exactly for rational coefficients and
// degrades to a flagged probabilistic test when opaque functions appear;
// numeric mode compares at random sample points in [1,2]^n.  The detail
// strings report one residual line per nonvanishing pair.
OrbitVerdict orbit_equivalent(const Equation& a, const Equation& b, const OrbitOptions& opts = {});

}  // namespace vfinv
