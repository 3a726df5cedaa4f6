#include "flexauction/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace flexauction {

namespace {

struct Candidate {
  std::size_t bid_index = 0;
  double equivalent_demand = 0.0;
  double unit_surplus = 0.0;  // equivalent price minus reserve, > 0
  double surplus = 0.0;       // price - reserve * equivalent_demand, > 0
};

struct SearchContext {
  const Instance* instance = nullptr;
  std::vector<Candidate> candidates;  // descending unit surplus
  double equivalent_capacity = 0.0;
  double capacity_slack = 0.0;  // float robustness for the aggregate check

  std::vector<int> band_used;
  double equivalent_used = 0.0;
  double welfare = 0.0;
  std::vector<std::size_t> chosen;  // bid indices along the current path

  double best_welfare = 0.0;
  std::vector<std::string> best_ids;  // sorted
};

// Fractional knapsack over the aggregate equivalent constraint only;
// admissible because it ignores the per-band constraints.
double upper_bound(const SearchContext& ctx, std::size_t from) {
  double capacity = ctx.equivalent_capacity + ctx.capacity_slack - ctx.equivalent_used;
  double bound = 0.0;
  for (std::size_t i = from; i < ctx.candidates.size() && capacity > 0.0; ++i) {
    const Candidate& c = ctx.candidates[i];
    const double take = std::min(c.equivalent_demand, capacity);
    bound += take * c.unit_surplus;
    capacity -= take;
  }
  return bound;
}

std::vector<std::string> sorted_ids(const SearchContext& ctx) {
  std::vector<std::string> ids;
  ids.reserve(ctx.chosen.size());
  for (std::size_t index : ctx.chosen) {
    ids.push_back(ctx.instance->bids[index].buyer_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void consider_current(SearchContext& ctx) {
  const double tie_eps = 1e-9 * std::max(1.0, std::abs(ctx.best_welfare));
  if (ctx.welfare > ctx.best_welfare + tie_eps) {
    ctx.best_welfare = ctx.welfare;
    ctx.best_ids = sorted_ids(ctx);
    return;
  }
  if (ctx.welfare >= ctx.best_welfare - tie_eps) {
    std::vector<std::string> ids = sorted_ids(ctx);
    if (std::lexicographical_compare(ids.begin(), ids.end(), ctx.best_ids.begin(),
                                     ctx.best_ids.end())) {
      ctx.best_ids = std::move(ids);
      ctx.best_welfare = std::max(ctx.best_welfare, ctx.welfare);
    }
  }
}

void search(SearchContext& ctx, std::size_t depth) {
  if (depth == ctx.candidates.size()) {
    consider_current(ctx);
    return;
  }
  const double tie_eps = 1e-9 * std::max(1.0, std::abs(ctx.best_welfare));
  if (ctx.welfare + upper_bound(ctx, depth) < ctx.best_welfare - tie_eps) {
    return;  // no completion can match the incumbent
  }

  const Candidate& c = ctx.candidates[depth];
  const Bid& bid = ctx.instance->bids[c.bid_index];
  const int bands = ctx.instance->bands();

  bool fits = ctx.equivalent_used + c.equivalent_demand <=
              ctx.equivalent_capacity + ctx.capacity_slack;
  for (int k = 0; fits && k < bands; ++k) {
    fits = ctx.band_used[k] + bid.base_demand[k] - bid.adjust_range[k] <=
           ctx.instance->ask.supply[k];
  }
  if (fits) {
    for (int k = 0; k < bands; ++k) {
      ctx.band_used[k] += bid.base_demand[k] - bid.adjust_range[k];
    }
    ctx.equivalent_used += c.equivalent_demand;
    ctx.welfare += c.surplus;
    ctx.chosen.push_back(c.bid_index);

    search(ctx, depth + 1);

    ctx.chosen.pop_back();
    ctx.welfare -= c.surplus;
    ctx.equivalent_used -= c.equivalent_demand;
    for (int k = 0; k < bands; ++k) {
      ctx.band_used[k] -= bid.base_demand[k] - bid.adjust_range[k];
    }
  }
  search(ctx, depth + 1);
}

}  // namespace

OracleResult solve_exact(const Instance& instance, int max_buyers) {
  validate_instance(instance);
  if (instance.num_buyers() > max_buyers) {
    throw SizeLimitError("instance has " + std::to_string(instance.num_buyers()) +
                         " buyers, exact solver limit is " + std::to_string(max_buyers));
  }

  SearchContext ctx;
  ctx.instance = &instance;
  ctx.equivalent_capacity = equivalent_supply(instance.ask, instance.sem);
  ctx.capacity_slack = 1e-9 * std::max(1.0, ctx.equivalent_capacity);
  ctx.band_used.assign(instance.bands(), 0);

  // Only buyers with strictly positive surplus can be part of an optimum;
  // zero-surplus buyers are dropped as well since the lexicographic
  // tie-break prefers the smaller set.
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const Bid& bid = instance.bids[i];
    Candidate c;
    c.bid_index = i;
    c.equivalent_demand = equivalent_demand(bid, instance.sem);
    c.surplus = bid.price - instance.ask.reserve * c.equivalent_demand;
    c.unit_surplus = c.surplus / c.equivalent_demand;
    if (c.surplus > 0.0) {
      ctx.candidates.push_back(c);
    }
  }
  std::sort(ctx.candidates.begin(), ctx.candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              if (a.unit_surplus != b.unit_surplus) {
                return a.unit_surplus > b.unit_surplus;
              }
              return instance.bids[a.bid_index].buyer_id <
                     instance.bids[b.bid_index].buyer_id;
            });

  // The empty set is feasible with welfare zero, so the incumbent starts
  // there and never goes below it.
  ctx.best_welfare = 0.0;
  ctx.best_ids.clear();
  search(ctx, 0);

  OracleResult result;
  result.optimal_welfare = ctx.best_welfare;
  result.optimal_winner_set = std::move(ctx.best_ids);
  result.feasible = true;
  return result;
}

}  // namespace flexauction
