#pragma once

#include <cstdint>
#include <optional>

#include "vfinv/operators.hpp"

namespace vfinv {

struct SymbolicMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Var> col_labels;              // empty when columns are anonymous
  std::vector<std::vector<ExprPtr>> entry;  // rows x cols, normalized

  const ExprPtr& at(std::size_t r, std::size_t c) const { return entry[r][c]; }
};

// Row t = coefficients of ops[t] on `coords`.  Throws StructureError when an
// operator has a target outside `coords`.
SymbolicMatrix coefficient_matrix(const std::vector<DiffOperator>& ops,
                                  const std::vector<Var>& coords);

struct RankOptions {
  std::uint64_t seed = 0xc0ffee;
  int confirmations = 3;       // random rational points cross-checking the rank
  int max_resamples = 256;     // draws discarded for hitting a denominator zero
};

// Exact rank over the rational-function field, cross-checked by evaluating
// the matrix at random integer points in [-10^6, 10^6] and ranking exactly
// over Q.  A disagreement throws InternalInconsistency.  Matrices containing
// opaque function atoms skip the numeric confirmation.
int symbolic_rank(const SymbolicMatrix& m, const RankOptions& opts = {});

struct CompletenessReport {
  bool complete = true;
  // First offending pair when incomplete: [ops[i], ops[j]] does not lie in
  // the function-coefficient span of the system.
  std::optional<std::pair<int, int>> witness_pair;
  DiffOperator witness_bracket;
};

// A system is complete when every pairwise bracket is a rational-function-
// coefficient combination of the system's operators.
CompletenessReport is_complete_system(const std::vector<DiffOperator>& ops);

}  // namespace vfinv
