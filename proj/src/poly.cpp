#include "vfinv/poly.hpp"

#include <set>

#include "vfinv/errors.hpp"

namespace vfinv {

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) return false;  // a puts degree on an earlier var
    if (b[j].first < a[i].first) return true;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  // Equal total degree forces both to exhaust together once prefixes match.
  return false;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else if (b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (const auto& [v, e] : d) {
    while (j < m.size() && m[j].first < v) ++j;
    if (j == m.size() || !(m[j].first == v) || m[j].second < e) return false;
  }
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial r;
  std::size_t j = 0;
  for (const auto& [v, e] : m) {
    int sub = 0;
    if (j < d.size() && d[j].first == v) {
      sub = d[j].second;
      ++j;
    }
    if (e - sub > 0) r.emplace_back(v, e - sub);
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw DomainError("polynomial power must be nonnegative");
  Poly r(Rational(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r *= base;
    base = (k >>= 1) ? base * base : base;
  }
  return r;
}

std::vector<Var> Poly::vars() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) s.insert(v);
  return {s.begin(), s.end()};
}

bool Poly::has_atoms() const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (v.is_atom()) return true;
  return false;
}

int Poly::degree_in(const Var& v) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [mv, e] : m)
      if (mv == v && e > d) d = e;
  return d;
}

std::map<int, Poly> Poly::univar(const Var& v) const {
  std::map<int, Poly> r;
  for (const auto& [m, c] : terms_) {
    int e = 0;
    Monomial rest;
    for (const auto& [mv, me] : m) {
      if (mv == v)
        e = me;
      else
        rest.emplace_back(mv, me);
    }
    r[e].add_term(rest, c);
  }
  return r;
}

Poly Poly::from_univar(const Var& v, const std::map<int, Poly>& coeffs) {
  Poly r;
  for (const auto& [deg, coeff] : coeffs) {
    Poly t = coeff;
    if (deg > 0) t *= Poly::var(v).pow(deg);
    r += t;
  }
  return r;
}

Poly Poly::partial(const Var& v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].first == v) {
        Monomial dm;
        for (std::size_t t = 0; t < m.size(); ++t) {
          int e = m[t].second - (t == k ? 1 : 0);
          if (e > 0) dm.emplace_back(m[t].first, e);
        }
        r.add_term(dm, c * m[k].second);
      }
    }
  }
  return r;
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  BigInt g = 0, l = 1;
  for (const auto& [m, c] : terms_) {
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(rat_num(c)));
    l = boost::multiprecision::lcm(l, rat_den(c));
  }
  Rational r(g, l);
  if (leading().second < 0) r = -r;
  return r;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  return scaled(Rational(1) / c);
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
  return r;
}

bool try_divide(const Poly& p, const Poly& d, Poly* q) {
  if (d.is_zero()) return false;
  Poly r = p, quo;
  while (!r.is_zero()) {
    const auto& [lm, lc] = r.leading();
    const auto& [dm, dc] = d.leading();
    if (!mono_divides(dm, lm)) return false;
    Monomial qm = mono_div(lm, dm);
    Rational qc = lc / dc;
    quo.add_term(qm, qc);
    Poly t;
    t.add_term(qm, qc);
    r -= d * t;
  }
  *q = quo;
  return true;
}

Poly exact_divide(const Poly& p, const Poly& d) {
  Poly q;
  if (!try_divide(p, d, &q)) throw InternalInconsistency("exact_divide: divisor does not divide");
  return q;
}

namespace {

// gcd of the Poly coefficients of p viewed as univariate in v.
Poly content_in(const Poly& p, const Var& v) {
  Poly g;
  for (const auto& [deg, coeff] : p.univar(v)) g = poly_gcd(g, coeff);
  return g;
}

Poly primitive_part_in(const Poly& p, const Var& v) {
  if (p.is_zero()) return p;
  return exact_divide(p, content_in(p, v)).primitive();
}

// Pseudo-remainder of a by b w.r.t. v (up to a factor of lc(b)^k, which the
// primitive-PRS loop strips anyway).
Poly pseudo_rem(const Poly& a, const Poly& b, const Var& v) {
  int db = b.degree_in(v);
  Poly lb = b.univar(v).at(db);
  Poly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(v);
    if (dr < db) break;
    Poly lr = r.univar(v).at(dr);
    r = lb * r - lr * Poly::var(v).pow(dr - db) * b;
  }
  return r;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));

  Var va = a.vars().back(), vb = b.vars().back();
  Var v = va < vb ? vb : va;
  bool in_a = a.degree_in(v) > 0, in_b = b.degree_in(v) > 0;
  if (!in_a) return poly_gcd(a, content_in(b, v));
  if (!in_b) return poly_gcd(content_in(a, v), b);

  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly gc = poly_gcd(ca, cb);
  Poly A = exact_divide(a, ca), B = exact_divide(b, cb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (true) {
    if (B.degree_in(v) == 0) return gc.primitive();  // primitive w.r.t. v and v-free => unit
    Poly r = pseudo_rem(A, B, v);
    if (r.is_zero()) return (gc * primitive_part_in(B, v)).primitive();
    A = B;
    B = primitive_part_in(r, v);
  }
}

}  // namespace vfinv
