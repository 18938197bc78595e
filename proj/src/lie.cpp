#include "vfinv/lie.hpp"

#include <random>
#include <set>

namespace vfinv {

SymbolicMatrix coefficient_matrix(const std::vector<DiffOperator>& ops,
                                  const std::vector<Var>& coords) {
  std::set<Var> allowed(coords.begin(), coords.end());
  for (const auto& op : ops)
    for (const auto& [target, coeff] : op.terms())
      if (!allowed.count(target))
        throw StructureError("operator targets " + target.name() +
                             ", which is not among the matrix columns");
  SymbolicMatrix m;
  m.rows = ops.size();
  m.cols = coords.size();
  m.col_labels = coords;
  m.entry.resize(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    m.entry[r].reserve(m.cols);
    for (const Var& c : coords) m.entry[r].push_back(normalize(ops[r].coefficient(c)));
  }
  return m;
}

namespace {

using Grid = std::vector<std::vector<RatFunc>>;

std::size_t rank_over_field(Grid g) {
  std::size_t rows = g.size();
  if (rows == 0) return 0;
  std::size_t cols = g[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = rows, best_size = static_cast<std::size_t>(-1);
    for (std::size_t r = rank; r < rows; ++r) {
      if (g[r][c].is_zero()) continue;
      std::size_t sz = g[r][c].num().terms().size() + g[r][c].den().terms().size();
      if (sz < best_size) {
        best_size = sz;
        best = r;
      }
    }
    if (best == rows) continue;
    std::swap(g[rank], g[best]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (g[r][c].is_zero()) continue;
      RatFunc f = g[r][c] / g[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) g[r][cc] = g[r][cc] - f * g[rank][cc];
    }
    ++rank;
  }
  return rank;
}

Rational eval_poly_q(const Poly& p, const std::map<Var, Rational>& pt) {
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      const Rational& val = pt.at(v);
      for (int i = 0; i < e; ++i) t *= val;
    }
    acc += t;
  }
  return acc;
}

std::size_t rank_over_q(std::vector<std::vector<Rational>> g) {
  std::size_t rows = g.size();
  if (rows == 0) return 0;
  std::size_t cols = g[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (g[r][c] != 0) {
        best = r;
        break;
      }
    if (best == rows) continue;
    std::swap(g[rank], g[best]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (g[r][c] == 0) continue;
      Rational f = g[r][c] / g[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) g[r][cc] -= f * g[rank][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int symbolic_rank(const SymbolicMatrix& m, const RankOptions& opts) {
  Grid g(m.rows);
  bool atoms = false;
  std::set<Var> vars;
  for (std::size_t r = 0; r < m.rows; ++r) {
    g[r].reserve(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
      RatFunc f = to_ratfunc(m.entry[r][c]);
      atoms = atoms || f.has_atoms();
      for (const Var& v : f.vars()) vars.insert(v);
      g[r].push_back(std::move(f));
    }
  }
  int rank = static_cast<int>(rank_over_field(g));
  if (atoms) return rank;  // exact-point confirmation needs rational entries

  // Confirm by ranking exact evaluations at random integer points.  The rank
  // can only drop on a measure-zero locus, so with the fixed seed this check
  // is deterministic and a mismatch means an elimination bug.
  std::mt19937_64 rng(opts.seed);
  auto draw_int = [&rng]() {
    long long v = static_cast<long long>(rng() % 2000001) - 1000000;
    return Rational(v == 0 ? 1 : v);
  };
  int resamples = 0;
  for (int t = 0; t < opts.confirmations; ++t) {
    std::vector<std::vector<Rational>> num(m.rows, std::vector<Rational>(m.cols, Rational(0)));
    for (;;) {
      std::map<Var, Rational> pt;
      for (const Var& v : vars) pt[v] = draw_int();
      bool singular = false;
      for (std::size_t r = 0; r < m.rows && !singular; ++r)
        for (std::size_t c = 0; c < m.cols && !singular; ++c) {
          RatFunc& f = g[r][c];
          Rational d = eval_poly_q(f.den(), pt);
          if (d == 0) {
            singular = true;
            break;
          }
          num[r][c] = eval_poly_q(f.num(), pt) / d;
        }
      if (!singular) break;
      if (++resamples > opts.max_resamples)
        throw EvalError("symbolic_rank: could not sample a point off the singular locus");
    }
    int qrank = static_cast<int>(rank_over_q(num));
    if (qrank != rank)
      throw InternalInconsistency("symbolic_rank: exact elimination and random-point rank disagree (" +
                                  std::to_string(rank) + " vs " + std::to_string(qrank) + ")");
  }
  return rank;
}

CompletenessReport is_complete_system(const std::vector<DiffOperator>& ops) {
  CompletenessReport report;
  if (ops.empty()) return report;
  int n = ops[0].dim();
  for (const auto& op : ops)
    if (op.dim() != n) throw DomainError("operators live in different dimensions");

  std::set<Var> tset;
  for (const auto& op : ops)
    for (const auto& [t, c] : op.terms()) tset.insert(t);
  std::vector<Var> coords(tset.begin(), tset.end());

  // Columns are the operators; a bracket is in the span iff appending it as a
  // right-hand side keeps the rank.
  Grid base(coords.size());
  for (std::size_t r = 0; r < coords.size(); ++r) {
    base[r].reserve(ops.size() + 1);
    for (const auto& op : ops) base[r].push_back(to_ratfunc(op.coefficient(coords[r])));
  }
  std::size_t base_rank = rank_over_field(base);

  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      DiffOperator br = commutator(ops[i], ops[j]);
      if (br.is_zero()) continue;
      Grid aug = base;
      for (std::size_t r = 0; r < coords.size(); ++r)
        aug[r].push_back(to_ratfunc(br.coefficient(coords[r])));
      if (rank_over_field(aug) > base_rank) {
        report.complete = false;
        report.witness_pair = {static_cast<int>(i), static_cast<int>(j)};
        report.witness_bracket = br;
        return report;
      }
    }
  }
  return report;
}

}  // namespace vfinv
