#include "flexauction/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace flexauction {

namespace {

std::unordered_map<std::string, std::size_t> bid_index_by_id(const Instance& instance) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(instance.bids.size());
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    index.emplace(instance.bids[i].buyer_id, i);
  }
  return index;
}

}  // namespace

bool check_individual_rationality(const Instance& instance, const AuctionOutcome& outcome) {
  const auto index = bid_index_by_id(instance);
  const std::unordered_set<std::string> winners(outcome.winners.begin(),
                                                outcome.winners.end());
  for (const auto& [buyer_id, payment] : outcome.payments) {
    const auto it = index.find(buyer_id);
    if (it == index.end()) {
      throw ValidationError("outcome pays unknown buyer '" + buyer_id + "'");
    }
    if (!winners.count(buyer_id)) {
      return false;  // a loser is being charged
    }
    const double price = instance.bids[it->second].price;
    if (price - payment < -1e-9 * std::max(1.0, price)) {
      return false;
    }
  }
  // Winners without a recorded payment count as paying an undefined amount.
  for (const std::string& winner : outcome.winners) {
    if (!index.count(winner)) {
      throw ValidationError("outcome declares unknown winner '" + winner + "'");
    }
    if (!outcome.payments.count(winner)) {
      return false;
    }
  }
  return true;
}

bool check_budget_balance(const Instance& instance, const AuctionOutcome& outcome) {
  (void)instance;
  double collected = 0.0;
  for (const auto& [buyer_id, payment] : outcome.payments) {
    collected += payment;
  }
  return collected - outcome.seller_revenue >=
         -1e-9 * std::max(1.0, outcome.seller_revenue);
}

bool scs_holds(const Instance& instance, const AuctionOutcome& outcome) {
  double max_bid = 0.0;
  for (const Bid& bid : instance.bids) {
    max_bid = std::max(max_bid, bid.price);
  }
  return max_bid <= outcome.social_welfare +
                        1e-9 * std::max(1.0, outcome.social_welfare);
}

void audit_outcome(const Instance& instance, const AuctionOutcome& outcome,
                   PropertyReport& report) {
  ++report.instances_checked;
  if (!check_individual_rationality(instance, outcome)) ++report.ir_violations;
  if (!check_budget_balance(instance, outcome)) ++report.bb_violations;
}

double manipulation_gain_search(const Instance& instance, const std::string& buyer_id,
                                std::span<const double> price_multipliers,
                                long long* samples_out) {
  const auto index = bid_index_by_id(instance);
  const auto it = index.find(buyer_id);
  if (it == index.end()) {
    throw ValidationError("no buyer '" + buyer_id + "' in instance");
  }
  const std::size_t bid_pos = it->second;
  const double true_value = instance.bids[bid_pos].price;

  const auto utility_for = [&](const Instance& market) {
    const AuctionOutcome outcome = clear(market, StopPolicy::kBreak);
    const auto paid = outcome.payments.find(buyer_id);
    if (paid == outcome.payments.end()) return 0.0;  // lost, utility zero
    return true_value - paid->second;
  };

  const double truthful_utility = utility_for(instance);

  // Adjustment-range misreports: withdrawn, halved, and as submitted.
  std::vector<std::vector<int>> adjust_variants;
  {
    const std::vector<int>& full = instance.bids[bid_pos].adjust_range;
    std::vector<int> zero(full.size(), 0);
    std::vector<int> half(full.size());
    for (std::size_t k = 0; k < full.size(); ++k) half[k] = full[k] / 2;
    adjust_variants = {std::move(zero), std::move(half), full};
  }

  long long samples = 0;
  double best_misreport_utility = -std::numeric_limits<double>::infinity();
  Instance modified = instance;
  for (double multiplier : price_multipliers) {
    if (!(multiplier > 0.0)) {
      throw ValidationError("price multipliers must be positive");
    }
    for (const std::vector<int>& adjust : adjust_variants) {
      modified.bids[bid_pos].price = true_value * multiplier;
      modified.bids[bid_pos].adjust_range = adjust;
      best_misreport_utility = std::max(best_misreport_utility, utility_for(modified));
      ++samples;
    }
  }
  if (samples_out != nullptr) *samples_out = samples;
  return best_misreport_utility - truthful_utility;
}

}  // namespace flexauction
