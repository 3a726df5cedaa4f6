#pragma once

#include <string>
#include <vector>

#include "flexauction/types.hpp"

namespace flexauction {

// The instance has more buyers than the exact solver is willing to enumerate.
class SizeLimitError : public ValidationError {
 public:
  explicit SizeLimitError(const std::string& what) : ValidationError(what) {}
};

struct OracleResult {
  double optimal_welfare = 0.0;
  std::vector<std::string> optimal_winner_set;  // sorted by buyer_id
  bool feasible = true;
};

// Exact welfare maximisation by branch-and-bound over winner subsets.
//
// A subset W is feasible iff, with every winner's adjustable portion used in
// full, each band's residual stays non-negative and the aggregate equivalent
// demand fits the equivalent supply. Fixing the adjustments at their maxima
// is optimal: they only relax the per-band constraints and never appear in
// the objective.
//
// Pruning uses the fractional relaxation of the aggregate equivalent
// constraint (a fractional knapsack over unit surplus), which upper-bounds
// every completion. Among equally good subsets the lexicographically
// smallest sorted buyer-id set is returned, so results are reproducible.
OracleResult solve_exact(const Instance& instance, int max_buyers = 20);

}  // namespace flexauction
