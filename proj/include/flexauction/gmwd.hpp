#pragma once

#include <map>
#include <string>
#include <vector>

#include "flexauction/types.hpp"

namespace flexauction {

// What to do when a candidate does not fit the remaining spectrum.
//   kBreak: stop processing entirely (the literal greedy rule; default).
//   kSkip:  roll the tentative deduction back and try the next candidate.
enum class StopPolicy { kBreak, kSkip };

// Result of the greedy winner-determination pass. Winners keep their full
// requested package; the adjustable portion of each winning bid is always
// used in full, so per-band residuals are charged only the non-adjustable
// part while the equivalent residual is charged the whole package.
struct GmwdState {
  std::vector<RankedBuyer> ranking;       // all buyers, descending unit price
  std::size_t candidate_count = 0;        // prefix of `ranking` meeting the reserve
  std::vector<char> winner_flags;         // indexed like Instance::bids
  std::vector<std::size_t> winner_ranks;  // positions in `ranking`, commit order
  double equivalent_remaining = 0.0;      // after all committed deductions
  std::vector<double> actual_remaining;   // per band, after all committed deductions
};

// Cleared market: winners in rank order, what each pays, the concrete
// per-band channel grant, and the seller-side aggregates.
struct AuctionOutcome {
  std::vector<std::string> winners;
  std::map<std::string, double> payments;
  std::map<std::string, std::vector<double>> allocation;  // channels per band
  double seller_revenue = 0.0;
  double social_welfare = 0.0;

  bool operator==(const AuctionOutcome&) const = default;
};

// Greedy winner determination: filter out buyers below the reserve unit
// price, then admit buyers in descending unit-price order while every
// per-band residual (net of the adjustable portion) and the aggregate
// equivalent residual stay non-negative.
GmwdState run_gmwd(const Instance& instance, StopPolicy policy = StopPolicy::kBreak);

// Critical-value payments. With N winners, every winner pays the rank-(N+1)
// buyer's equivalent unit price when that buyer exists and meets the
// reserve; otherwise the reserve price. Unit price times the winner's own
// equivalent demand.
std::map<std::string, double> determine_payments(const Instance& instance,
                                                 const GmwdState& state);

// Concrete per-band channel grant. Each winner receives base_demand -
// adjust_range in every band as a floor; the substituted remainder is drawn
// from residual bands in descending-coefficient order until the winner's
// equivalent total matches its equivalent demand. Fractional channels are
// permitted in the substituted portion.
std::map<std::string, std::vector<double>> realize_allocation(const Instance& instance,
                                                              const GmwdState& state);

// Full pipeline: winner determination, payments, allocation, and the
// welfare / revenue aggregates.
AuctionOutcome clear(const Instance& instance, StopPolicy policy = StopPolicy::kBreak);

}  // namespace flexauction
