#include "flexauction/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flexauction {

const char* mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::kGmwd: return "gmwd";
    case MechanismId::kTcda: return "tcda";
    case MechanismId::kThimble: return "thimble-approx";
  }
  throw InternalError("unknown mechanism id");
}

MechanismId mechanism_from_name(const std::string& name) {
  if (name == "gmwd") return MechanismId::kGmwd;
  if (name == "tcda") return MechanismId::kTcda;
  if (name == "thimble" || name == "thimble-approx") return MechanismId::kThimble;
  throw ValidationError("unknown mechanism '" + name + "' (expected gmwd, tcda or thimble)");
}

AuctionOutcome clear_tcda(const Instance& instance) {
  Instance rigid = instance;
  for (Bid& bid : rigid.bids) {
    std::fill(bid.adjust_range.begin(), bid.adjust_range.end(), 0);
  }
  return clear(rigid, StopPolicy::kBreak);
}

std::vector<VirtualBid> thimble_virtual_bids(const Instance& instance, int num_virtual) {
  validate_instance(instance);
  if (num_virtual < 1) {
    throw ValidationError("num_virtual must be at least 1, got " +
                          std::to_string(num_virtual));
  }
  std::vector<VirtualBid> bids;
  bids.reserve(instance.bids.size() * static_cast<std::size_t>(num_virtual));
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const Bid& bid = instance.bids[i];
    const double full_units = equivalent_demand(bid, instance.sem);
    for (int j = 1; j <= num_virtual; ++j) {
      VirtualBid vb;
      vb.bid_index = i;
      vb.buyer_id = bid.buyer_id;
      vb.split = j;
      vb.units = std::ceil(full_units * j / num_virtual);
      vb.price = bid.price * j / num_virtual;
      vb.unit_price = vb.price / vb.units;
      bids.push_back(std::move(vb));
    }
  }
  return bids;
}

AuctionOutcome clear_thimble(const Instance& instance, int num_virtual) {
  std::vector<VirtualBid> bids = thimble_virtual_bids(instance, num_virtual);

  // Unit price descending; on ties prefer the fuller package of the
  // lexicographically smaller buyer, which keeps runs reproducible.
  std::sort(bids.begin(), bids.end(), [](const VirtualBid& a, const VirtualBid& b) {
    if (a.unit_price != b.unit_price) return a.unit_price > b.unit_price;
    if (a.buyer_id != b.buyer_id) return a.buyer_id < b.buyer_id;
    return a.split > b.split;
  });

  const double reserve = instance.ask.reserve;
  double capacity = equivalent_supply(instance.ask, instance.sem);

  std::vector<char> buyer_won(instance.bids.size(), 0);
  std::vector<std::size_t> accepted;  // positions in `bids`, accept order
  std::size_t last_accepted_pos = 0;
  for (std::size_t pos = 0; pos < bids.size(); ++pos) {
    const VirtualBid& vb = bids[pos];
    if (vb.unit_price < reserve) break;  // sorted, nothing below meets the reserve
    if (buyer_won[vb.bid_index]) continue;
    if (capacity - vb.units < 0.0) continue;  // skip, a smaller split may fit later
    capacity -= vb.units;
    buyer_won[vb.bid_index] = 1;
    accepted.push_back(pos);
    last_accepted_pos = pos;
  }

  AuctionOutcome outcome;
  if (accepted.empty()) {
    return outcome;
  }

  // Critical unit price: the first entry after the last accepted one that
  // belongs to a buyer who won nothing. Below the reserve (or absent), the
  // reserve applies instead.
  double paid_unit_price = reserve;
  for (std::size_t pos = last_accepted_pos + 1; pos < bids.size(); ++pos) {
    if (!buyer_won[bids[pos].bid_index]) {
      if (bids[pos].unit_price >= reserve) {
        paid_unit_price = bids[pos].unit_price;
      }
      break;
    }
  }

  const int bands = instance.bands();
  std::vector<int> band_order(bands);
  std::iota(band_order.begin(), band_order.end(), 0);
  std::stable_sort(band_order.begin(), band_order.end(), [&](int a, int b) {
    return instance.sem.rho[a] > instance.sem.rho[b];
  });
  std::vector<double> residual(bands);
  for (int k = 0; k < bands; ++k) {
    residual[k] = static_cast<double>(instance.ask.supply[k]);
  }

  double total_price = 0.0;
  double total_units = 0.0;
  for (std::size_t pos : accepted) {
    const VirtualBid& vb = bids[pos];
    outcome.winners.push_back(vb.buyer_id);
    outcome.payments[vb.buyer_id] = paid_unit_price * vb.units;
    total_price += vb.price;
    total_units += vb.units;

    // The homogeneous equivalent grant, realized as concrete channels from
    // the densest bands first.
    std::vector<double> grant(bands, 0.0);
    double needed = vb.units;
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
      throw InternalError("virtual-bid allocation could not place " +
                          std::to_string(needed) + " equivalent units for buyer '" +
                          vb.buyer_id + "'");
    }
    outcome.allocation[vb.buyer_id] = std::move(grant);
  }
  outcome.seller_revenue = reserve * total_units;
  outcome.social_welfare = total_price - outcome.seller_revenue;
  return outcome;
}

AuctionOutcome clear_mechanism(const Instance& instance, const MechanismConfig& config) {
  switch (config.mechanism) {
    case MechanismId::kGmwd: return clear(instance, config.policy);
    case MechanismId::kTcda: return clear_tcda(instance);
    case MechanismId::kThimble: return clear_thimble(instance, config.num_virtual);
  }
  throw InternalError("unknown mechanism id");
}

}  // namespace flexauction
