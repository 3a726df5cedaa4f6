#include "flexauction/gmwd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flexauction {

namespace {

// determine_payments and realize_allocation accept a caller-supplied state;
// reject states that were clearly not produced from this instance.
void check_state_matches(const Instance& instance, const GmwdState& state) {
  const std::size_t n = instance.bids.size();
  if (state.ranking.size() != n || state.winner_flags.size() != n ||
      state.actual_remaining.size() != static_cast<std::size_t>(instance.bands())) {
    throw ValidationError("state does not match instance: size mismatch");
  }
  for (const RankedBuyer& entry : state.ranking) {
    if (entry.bid_index >= n || instance.bids[entry.bid_index].buyer_id != entry.buyer_id) {
      throw ValidationError("state does not match instance: ranking refers to unknown bid");
    }
  }
  for (std::size_t pos : state.winner_ranks) {
    if (pos >= state.ranking.size()) {
      throw ValidationError("state does not match instance: winner rank out of range");
    }
  }
}

}  // namespace

GmwdState run_gmwd(const Instance& instance, StopPolicy policy) {
  validate_instance(instance);

  GmwdState state;
  state.ranking = rank_buyers(instance);
  state.winner_flags.assign(instance.bids.size(), 0);

  const double reserve = instance.ask.reserve;
  std::size_t candidates = 0;
  while (candidates < state.ranking.size() &&
         state.ranking[candidates].equivalent_price >= reserve) {
    ++candidates;
  }
  state.candidate_count = candidates;

  const int bands = instance.bands();
  state.actual_remaining.resize(bands);
  for (int k = 0; k < bands; ++k) {
    state.actual_remaining[k] = static_cast<double>(instance.ask.supply[k]);
  }
  state.equivalent_remaining = equivalent_supply(instance.ask, instance.sem);

  for (std::size_t pos = 0; pos < candidates; ++pos) {
    const RankedBuyer& entry = state.ranking[pos];
    const Bid& bid = instance.bids[entry.bid_index];

    // Tentative deduction: the whole package against the equivalent
    // residual, only the non-adjustable part against each band.
    const double equivalent_after = state.equivalent_remaining - entry.equivalent_demand;
    bool fits = equivalent_after >= 0.0;
    for (int k = 0; fits && k < bands; ++k) {
      fits = state.actual_remaining[k] -
                 static_cast<double>(bid.base_demand[k] - bid.adjust_range[k]) >=
             0.0;
    }
    if (!fits) {
      if (policy == StopPolicy::kBreak) break;
      continue;  // kSkip: tentative deduction leaves no trace
    }

    state.equivalent_remaining = equivalent_after;
    for (int k = 0; k < bands; ++k) {
      state.actual_remaining[k] -=
          static_cast<double>(bid.base_demand[k] - bid.adjust_range[k]);
    }
    state.winner_flags[entry.bid_index] = 1;
    state.winner_ranks.push_back(pos);
  }
  return state;
}

std::map<std::string, double> determine_payments(const Instance& instance,
                                                 const GmwdState& state) {
  check_state_matches(instance, state);

  const std::size_t winner_count = state.winner_ranks.size();
  double unit_price = instance.ask.reserve;
  if (winner_count < state.ranking.size()) {
    const RankedBuyer& next = state.ranking[winner_count];
    if (next.equivalent_price >= instance.ask.reserve) {
      unit_price = next.equivalent_price;
    }
  }

  std::map<std::string, double> payments;
  for (std::size_t pos : state.winner_ranks) {
    const RankedBuyer& winner = state.ranking[pos];
    payments[winner.buyer_id] = unit_price * winner.equivalent_demand;
  }
  return payments;
}

std::map<std::string, std::vector<double>> realize_allocation(const Instance& instance,
                                                              const GmwdState& state) {
  check_state_matches(instance, state);

  const int bands = instance.bands();
  std::vector<double> residual(bands);
  for (int k = 0; k < bands; ++k) {
    residual[k] = static_cast<double>(instance.ask.supply[k]);
  }
  for (std::size_t pos : state.winner_ranks) {
    const Bid& bid = instance.bids[state.ranking[pos].bid_index];
    for (int k = 0; k < bands; ++k) {
      residual[k] -= static_cast<double>(bid.base_demand[k] - bid.adjust_range[k]);
      if (residual[k] < 0.0) {
        throw InternalError("allocation infeasible: band " + std::to_string(k) +
                            " oversubscribed by committed winners");
      }
    }
  }

  // Fill order for substituted spectrum: densest band first, index for ties.
  std::vector<int> band_order(bands);
  std::iota(band_order.begin(), band_order.end(), 0);
  std::stable_sort(band_order.begin(), band_order.end(), [&](int a, int b) {
    return instance.sem.rho[a] > instance.sem.rho[b];
  });

  std::map<std::string, std::vector<double>> allocation;
  for (std::size_t pos : state.winner_ranks) {
    const RankedBuyer& winner = state.ranking[pos];
    const Bid& bid = instance.bids[winner.bid_index];

    std::vector<double> grant(bands);
    double needed = 0.0;  // substituted portion, in equivalent units
    for (int k = 0; k < bands; ++k) {
      grant[k] = static_cast<double>(bid.base_demand[k] - bid.adjust_range[k]);
      needed += static_cast<double>(bid.adjust_range[k]) * instance.sem.rho[k];
    }

    const double tolerance = 1e-9 * std::max(1.0, needed);
    for (int k : band_order) {
      if (needed <= tolerance) break;
      if (residual[k] <= 0.0) continue;
      const double channels = std::min(residual[k], needed / instance.sem.rho[k]);
      grant[k] += channels;
      residual[k] -= channels;
      needed = std::max(0.0, needed - channels * instance.sem.rho[k]);
    }
    if (needed > tolerance) {
      throw InternalError("allocation infeasible: could not place " +
                          std::to_string(needed) + " equivalent units for buyer '" +
                          winner.buyer_id + "'");
    }
    allocation[winner.buyer_id] = std::move(grant);
  }
  return allocation;
}

AuctionOutcome clear(const Instance& instance, StopPolicy policy) {
  const GmwdState state = run_gmwd(instance, policy);

  AuctionOutcome outcome;
  outcome.payments = determine_payments(instance, state);
  outcome.allocation = realize_allocation(instance, state);

  double total_bid = 0.0;
  double total_equivalent = 0.0;
  for (std::size_t pos : state.winner_ranks) {
    const RankedBuyer& winner = state.ranking[pos];
    outcome.winners.push_back(winner.buyer_id);
    total_bid += instance.bids[winner.bid_index].price;
    total_equivalent += winner.equivalent_demand;
  }
  outcome.seller_revenue = instance.ask.reserve * total_equivalent;
  outcome.social_welfare = total_bid - outcome.seller_revenue;
  return outcome;
}

}  // namespace flexauction
