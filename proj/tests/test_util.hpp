#pragma once

#include <random>
#include <string>
#include <vector>

#include "flexauction/types.hpp"

namespace testutil {

inline flexauction::Bid make_bid(std::string id, std::vector<int> demand,
                                 std::vector<int> adjust, double price) {
  flexauction::Bid bid;
  bid.buyer_id = std::move(id);
  bid.base_demand = std::move(demand);
  bid.adjust_range = std::move(adjust);
  bid.price = price;
  return bid;
}

inline flexauction::Instance make_instance(std::vector<double> rho, std::vector<int> supply,
                                           double reserve,
                                           std::vector<flexauction::Bid> bids) {
  flexauction::Instance instance;
  instance.sem.rho = std::move(rho);
  instance.ask.supply = std::move(supply);
  instance.ask.reserve = reserve;
  instance.bids = std::move(bids);
  return instance;
}

// Small random markets for property-style tests. Kept independent of the
// library's own generator so generator bugs cannot mask mechanism bugs.
inline flexauction::Instance random_instance(std::mt19937& rng, int max_buyers = 10,
                                             int max_bands = 4) {
  std::uniform_int_distribution<int> bands_dist(1, max_bands);
  std::uniform_int_distribution<int> buyers_dist(1, max_buyers);
  std::uniform_real_distribution<double> rho_dist(0.5, 10.0);
  std::uniform_int_distribution<int> supply_dist(0, 12);
  std::uniform_int_distribution<int> demand_dist(0, 6);
  std::uniform_real_distribution<double> value_dist(0.2, 3.0);
  std::uniform_real_distribution<double> reserve_dist(0.0, 1.5);

  const int bands = bands_dist(rng);
  const int buyers = buyers_dist(rng);

  flexauction::Instance instance;
  instance.sem.rho.resize(bands);
  for (double& rho : instance.sem.rho) rho = rho_dist(rng);
  instance.ask.supply.resize(bands);
  for (int& supply : instance.ask.supply) supply = supply_dist(rng);
  instance.ask.reserve = reserve_dist(rng);

  for (int m = 0; m < buyers; ++m) {
    flexauction::Bid bid;
    bid.buyer_id = "b" + std::to_string(100 + m);
    bid.base_demand.resize(bands);
    bid.adjust_range.resize(bands);
    bool any = false;
    for (int k = 0; k < bands; ++k) {
      bid.base_demand[k] = demand_dist(rng);
      any = any || bid.base_demand[k] > 0;
    }
    if (!any) bid.base_demand[0] = 1;
    for (int k = 0; k < bands; ++k) {
      std::uniform_int_distribution<int> adjust_dist(0, bid.base_demand[k]);
      bid.adjust_range[k] = adjust_dist(rng);
    }
    double equivalent = 0.0;
    for (int k = 0; k < bands; ++k) {
      equivalent += bid.base_demand[k] * instance.sem.rho[k];
    }
    bid.price = value_dist(rng) * equivalent;
    instance.bids.push_back(std::move(bid));
  }
  return instance;
}

}  // namespace testutil
