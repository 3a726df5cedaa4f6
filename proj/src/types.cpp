#include "flexauction/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace flexauction {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void validate_instance(const Instance& instance) {
  const int bands = instance.bands();
  if (bands < 1) {
    throw ValidationError("sem coefficients must contain at least one band");
  }
  for (int k = 0; k < bands; ++k) {
    const double rho = instance.sem.rho[k];
    if (!std::isfinite(rho) || rho <= 0.0) {
      throw ValidationError("sem coefficient for band " + std::to_string(k) +
                            " must be a positive real, got " + std::to_string(rho));
    }
  }

  if (static_cast<int>(instance.ask.supply.size()) != bands) {
    throw ValidationError("ask supply has " + std::to_string(instance.ask.supply.size()) +
                          " bands, expected " + std::to_string(bands));
  }
  for (int k = 0; k < bands; ++k) {
    if (instance.ask.supply[k] < 0) {
      throw ValidationError("ask supply for band " + std::to_string(k) + " is negative");
    }
  }
  if (!finite_nonneg(instance.ask.reserve)) {
    throw ValidationError("reserve price must be a non-negative real");
  }

  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(instance.bids.size());
  for (const Bid& bid : instance.bids) {
    if (bid.buyer_id.empty()) {
      throw ValidationError("bid with empty buyer_id");
    }
    if (!seen_ids.insert(bid.buyer_id).second) {
      throw ValidationError("duplicate buyer_id '" + bid.buyer_id + "'");
    }
    if (static_cast<int>(bid.base_demand.size()) != bands ||
        static_cast<int>(bid.adjust_range.size()) != bands) {
      throw ValidationError("bid '" + bid.buyer_id + "' has demand vectors of length " +
                            std::to_string(bid.base_demand.size()) + "/" +
                            std::to_string(bid.adjust_range.size()) + ", expected " +
                            std::to_string(bands));
    }
    bool any_demand = false;
    for (int k = 0; k < bands; ++k) {
      if (bid.base_demand[k] < 0) {
        throw ValidationError("bid '" + bid.buyer_id + "' has negative demand in band " +
                              std::to_string(k));
      }
      if (bid.adjust_range[k] < 0 || bid.adjust_range[k] > bid.base_demand[k]) {
        throw ValidationError("bid '" + bid.buyer_id + "' adjust_range in band " +
                              std::to_string(k) + " must lie in [0, base_demand]");
      }
      any_demand = any_demand || bid.base_demand[k] > 0;
    }
    if (!any_demand) {
      throw ValidationError("bid '" + bid.buyer_id +
                            "' requests nothing; at least one band demand must be positive");
    }
    if (!finite_nonneg(bid.price)) {
      throw ValidationError("bid '" + bid.buyer_id + "' price must be a non-negative real");
    }
  }
}

double equivalent_demand(const Bid& bid, const SemCoefficients& sem) {
  if (bid.base_demand.size() != sem.rho.size()) {
    throw ValidationError("bid '" + bid.buyer_id + "' has " +
                          std::to_string(bid.base_demand.size()) + " bands, sem has " +
                          std::to_string(sem.rho.size()));
  }
  double total = 0.0;
  bool any_demand = false;
  for (std::size_t k = 0; k < sem.rho.size(); ++k) {
    total += static_cast<double>(bid.base_demand[k]) * sem.rho[k];
    any_demand = any_demand || bid.base_demand[k] > 0;
  }
  if (!any_demand) {
    throw UndefinedPriceError("bid '" + bid.buyer_id +
                              "' has all-zero base demand; equivalent price is undefined");
  }
  return total;
}

double equivalent_price(const Bid& bid, const SemCoefficients& sem) {
  return bid.price / equivalent_demand(bid, sem);
}

double equivalent_supply(const Ask& ask, const SemCoefficients& sem) {
  if (ask.supply.size() != sem.rho.size()) {
    throw ValidationError("ask has " + std::to_string(ask.supply.size()) +
                          " bands, sem has " + std::to_string(sem.rho.size()));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < sem.rho.size(); ++k) {
    total += static_cast<double>(ask.supply[k]) * sem.rho[k];
  }
  return total;
}

std::vector<RankedBuyer> rank_buyers(const Instance& instance) {
  std::vector<RankedBuyer> ranking;
  ranking.reserve(instance.bids.size());
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const Bid& bid = instance.bids[i];
    RankedBuyer entry;
    entry.buyer_id = bid.buyer_id;
    entry.equivalent_demand = equivalent_demand(bid, instance.sem);
    entry.equivalent_price = bid.price / entry.equivalent_demand;
    entry.bid_index = i;
    ranking.push_back(std::move(entry));
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedBuyer& a, const RankedBuyer& b) {
    if (a.equivalent_price != b.equivalent_price) {
      return a.equivalent_price > b.equivalent_price;
    }
    return a.buyer_id < b.buyer_id;
  });
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    ranking[i].rank = static_cast<int>(i) + 1;
  }
  return ranking;
}

}  // namespace flexauction
