#include "vfinv/equivalence.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace vfinv {

Equation make_equation(int n, std::vector<ExprPtr> coeffs) {
  check_dim(n);
  if (static_cast<int>(coeffs.size()) != n)
    throw DomainError("expected " + std::to_string(n) + " coefficient functions");
  for (int i = 0; i < n; ++i) {
    for (const Var& v : base_variables(coeffs[i]))
      if (v.kind() != VarKind::Indep || v.index() > n)
        throw DomainError("coefficient " + std::to_string(i + 1) +
                          " must be a function of x1..x" + std::to_string(n));
    if (zero_verdict(coeffs[i]).zero)
      throw DomainError("coefficient " + std::to_string(i + 1) + " vanishes identically");
  }
  Equation eq;
  eq.n = n;
  eq.coeffs = std::move(coeffs);
  return eq;
}

PointTransformation make_transformation(int n, std::vector<ExprPtr> psi,
                                        std::vector<std::pair<double, double>> domain) {
  check_dim(n);
  if (static_cast<int>(psi.size()) != n)
    throw DomainError("expected " + std::to_string(n) + " transformation components");
  if (domain.empty()) domain.assign(n, kDefaultAxisDomain);
  if (static_cast<int>(domain.size()) != n)
    throw DomainError("expected one sampling interval per axis");
  for (int i = 0; i < n; ++i) {
    if (domain[i].first >= domain[i].second)
      throw DomainError("axis " + std::to_string(i + 1) + " interval is empty");
    for (const Var& v : base_variables(psi[i]))
      if (v.kind() != VarKind::Indep || v.index() != i + 1)
        throw DomainError("component " + std::to_string(i + 1) +
                          " must depend only on its own axis variable");
    // Reject derivatives that vanish (or blow up) somewhere on the grid.
    ExprPtr d = partial(psi[i], Var::indep(i + 1));
    for (int s = 0; s < kDerivativeGridSamples; ++s) {
      double t = domain[i].first +
                 (domain[i].second - domain[i].first) * s / (kDerivativeGridSamples - 1);
      double dv;
      try {
        dv = eval_numeric(d, {{Var::indep(i + 1), t}});
      } catch (const EvalError&) {
        throw DomainError("component " + std::to_string(i + 1) +
                          " is singular on its sampling interval");
      }
      if (!std::isfinite(dv) || std::abs(dv) < kDerivativeFloor)
        throw DomainError("component " + std::to_string(i + 1) +
                          " has a vanishing derivative on its sampling interval");
    }
  }
  PointTransformation tr;
  tr.n = n;
  tr.psi = std::move(psi);
  tr.domain = std::move(domain);
  return tr;
}

Equation apply_transformation(const Equation& eq, const PointTransformation& tr) {
  if (eq.n != tr.n) throw DomainError("equation and transformation dimensions differ");
  std::map<Var, ExprPtr> repl;
  for (int k = 1; k <= eq.n; ++k) repl[Var::indep(k)] = tr.psi[k - 1];
  std::vector<ExprPtr> out;
  out.reserve(eq.n);
  for (int j = 1; j <= eq.n; ++j) {
    ExprPtr pushed = substitute(eq.coeffs[j - 1], repl);
    ExprPtr dpsi = partial(tr.psi[j - 1], Var::indep(j));
    out.push_back(normalize(div_expr(pushed, dpsi)));
  }
  return make_equation(eq.n, std::move(out));
}

PointTransformation compose(const PointTransformation& outer, const PointTransformation& inner) {
  if (outer.n != inner.n) throw DomainError("transformation dimensions differ");
  std::vector<ExprPtr> psi;
  psi.reserve(outer.n);
  for (int i = 1; i <= outer.n; ++i)
    psi.push_back(substitute(outer.psi[i - 1], {{Var::indep(i), inner.psi[i - 1]}}));
  return make_transformation(outer.n, std::move(psi), inner.domain);
}

namespace {

ExprPtr signature_T(const Equation& eq, int i, int j) {
  ExprPtr dAi = partial(eq.coeffs[i - 1], Var::indep(j));
  return normalize(div_expr(mul(dAi, eq.coeffs[j - 1]), eq.coeffs[i - 1]));
}

ExprPtr signature_K(const Equation& eq, int i, int j) {
  Var xj = Var::indep(j);
  ExprPtr dAi = partial(eq.coeffs[i - 1], xj);
  ExprPtr ddAi = partial(dAi, xj);
  ExprPtr dAj = partial(eq.coeffs[j - 1], xj);
  return normalize(add(div_expr(mul(ddAi, eq.coeffs[j - 1]), dAi), dAj));
}

}  // namespace

std::vector<SignatureEntry> invariant_signature(const Equation& eq, int order) {
  if (order < 1 || order > 2) throw DomainError("signature order must be 1 or 2");
  std::vector<SignatureEntry> sig;
  for (int i = 1; i <= eq.n; ++i)
    for (int j = 1; j <= eq.n; ++j) {
      if (i == j) continue;
      SignatureEntry e;
      e.family = 'T';
      e.i = i;
      e.j = j;
      e.value = signature_T(eq, i, j);
      e.vanish = zero_verdict(e.value);
      sig.push_back(e);
    }
  if (order == 2) {
    std::vector<SignatureEntry> ks;
    for (const SignatureEntry& t : sig) {
      if (t.vanish.zero) continue;  // K_ij needs dA_i/dx^j != 0
      SignatureEntry e;
      e.family = 'K';
      e.i = t.i;
      e.j = t.j;
      e.value = signature_K(eq, t.i, t.j);
      e.vanish = zero_verdict(e.value);
      ks.push_back(e);
    }
    sig.insert(sig.end(), ks.begin(), ks.end());
  }
  return sig;
}

OrbitVerdict orbit_equivalent(const Equation& a, const Equation& b, const OrbitOptions& opts) {
  if (a.n != b.n) throw DomainError("equations live in different dimensions");
  OrbitVerdict verdict;

  std::vector<SignatureEntry> sa = invariant_signature(a, 1);
  std::vector<SignatureEntry> sb = invariant_signature(b, 1);
  if (opts.alignment.has_value()) {
    const PointTransformation& al = *opts.alignment;
    if (al.n != a.n) throw DomainError("alignment map dimension mismatch");
    std::map<Var, ExprPtr> repl;
    for (int k = 1; k <= a.n; ++k) repl[Var::indep(k)] = al.psi[k - 1];
    for (SignatureEntry& e : sa) {
      e.value = normalize(substitute(e.value, repl));
      e.vanish = zero_verdict(e.value);
    }
  }
  auto pair_name = [&](std::size_t t) {
    return "T" + std::to_string(sa[t].i) + std::to_string(sa[t].j);
  };

  verdict.pattern_match = true;
  for (std::size_t t = 0; t < sa.size(); ++t) {
    verdict.probabilistic =
        verdict.probabilistic || sa[t].vanish.probabilistic || sb[t].vanish.probabilistic;
    if (sa[t].vanish.zero != sb[t].vanish.zero) {
      verdict.pattern_match = false;
      verdict.detail.push_back(pair_name(t) + " vanishes for one equation but not the other");
    }
  }
  if (!verdict.pattern_match) return verdict;  // equivalent stays false

  if (opts.mode == OrbitOptions::Mode::Symbolic) {
    bool all = true;
    for (std::size_t t = 0; t < sa.size(); ++t) {
      if (sa[t].vanish.zero) continue;
      ZeroVerdict z = zero_verdict(sub(sa[t].value, sb[t].value));
      verdict.probabilistic = verdict.probabilistic || z.probabilistic;
      if (!z.zero) all = false;
      verdict.detail.push_back(pair_name(t) +
                               (z.zero ? ": residual is zero" : ": residual is nonzero"));
    }
    verdict.equivalent = all;
    return verdict;
  }

  // Numeric mode
  if (!opts.seed.has_value()) throw DomainError("numeric mode requires a seed");
  if (opts.samples < 1) throw DomainError("need at least one sample");
  verdict.probabilistic = true;
  std::mt19937_64 rng(*opts.seed);
  auto draw = [&rng]() { return 1.0 + static_cast<double>(rng() >> 11) / 9007199254740992.0; };

  std::vector<double> max_dev(sa.size(), 0.0);
  int resamples = 0;
  bool all = true;
  for (int s = 0; s < opts.samples; ++s) {
    for (;;) {
      Point pt;
      for (int k = 1; k <= a.n; ++k) pt[Var::indep(k)] = draw();
      try {
        // Admissibility gate: every coefficient of b at the sample point, and
        // of a at the corresponding (aligned) point, stays away from zero.
        Point pa = pt;
        if (opts.alignment.has_value())
          for (int k = 1; k <= a.n; ++k)
            pa[Var::indep(k)] = eval_numeric(opts.alignment->psi[k - 1], pt);
        bool admissible = true;
        for (int k = 1; k <= a.n && admissible; ++k) {
          if (std::abs(eval_numeric(a.coeffs[k - 1], pa)) < opts.admissibility) admissible = false;
          if (std::abs(eval_numeric(b.coeffs[k - 1], pt)) < opts.admissibility) admissible = false;
        }
        if (!admissible) throw EvalError("inadmissible point");
        for (std::size_t t = 0; t < sa.size(); ++t) {
          if (sa[t].vanish.zero) continue;
          double va = eval_numeric(sa[t].value, pt);
          double vb = eval_numeric(sb[t].value, pt);
          double dev = std::abs(va - vb) / (1.0 + std::abs(va));
          max_dev[t] = std::max(max_dev[t], dev);
        }
        break;
      } catch (const EvalError&) {
        if (++resamples > opts.max_resamples)
          throw EvalError("orbit test could not sample enough admissible points");
      }
    }
  }
  for (std::size_t t = 0; t < sa.size(); ++t) {
    if (sa[t].vanish.zero) continue;
    bool ok = max_dev[t] <= opts.tol;
    if (!ok) all = false;
    std::ostringstream line;
    line << pair_name(t) << ": max relative deviation " << std::scientific
         << std::setprecision(3) << max_dev[t] << " over " << opts.samples << " samples";
    verdict.detail.push_back(line.str());
  }
  verdict.equivalent = all;
  return verdict;
}

}  // namespace vfinv
