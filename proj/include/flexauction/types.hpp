#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flexauction {

// Bad input: a file or an in-memory structure violates a documented
// invariant (dimension mismatch, duplicate buyer ids, negative quantity...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A bid whose base demand is zero in every band has no per-unit price.
class UndefinedPriceError : public ValidationError {
 public:
  explicit UndefinedPriceError(const std::string& what) : ValidationError(what) {}
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Per-band conversion ratios into the common "equivalent public band" space.
// One channel of band k counts as rho[k] equivalent units.
struct SemCoefficients {
  std::vector<double> rho;

  int bands() const { return static_cast<int>(rho.size()); }
};

// One buyer's combinatorial request: per-band base demand, the per-band
// portion of it the auctioneer may substitute with other bands, and a single
// price for the whole package.
struct Bid {
  std::string buyer_id;
  std::vector<int> base_demand;   // channels requested per band
  std::vector<int> adjust_range;  // substitutable channels per band, <= base_demand
  double price = 0.0;             // currency for the whole package

  bool operator==(const Bid&) const = default;
};

// Seller side: channel supply per band and the reserve price per
// equivalent-spectrum unit.
struct Ask {
  std::vector<int> supply;
  double reserve = 0.0;

  bool operator==(const Ask&) const = default;
};

// A complete single-seller market: coefficients, ask, and all bids.
struct Instance {
  SemCoefficients sem;
  Ask ask;
  std::vector<Bid> bids;

  int bands() const { return sem.bands(); }
  int num_buyers() const { return static_cast<int>(bids.size()); }
};

// One entry of the descending-unit-price buyer ordering.
struct RankedBuyer {
  std::string buyer_id;
  double equivalent_price = 0.0;   // price per equivalent unit
  double equivalent_demand = 0.0;  // sum_k base_demand[k] * rho[k]
  int rank = 0;                    // 1-based position in the sorted list
  std::size_t bid_index = 0;       // index into Instance::bids
};

// Throws ValidationError if any structural invariant is violated:
// matching dimensions, positive coefficients, non-negative quantities,
// adjust_range <= base_demand, at least one positive demand per bid,
// unique non-empty buyer ids.
void validate_instance(const Instance& instance);

// Total demand of a bid expressed in equivalent units: sum_k D^k rho^k.
// Throws on dimension mismatch; throws UndefinedPriceError if the base
// demand is zero everywhere.
double equivalent_demand(const Bid& bid, const SemCoefficients& sem);

// Package price per equivalent unit: price / equivalent_demand.
double equivalent_price(const Bid& bid, const SemCoefficients& sem);

// Seller supply expressed in equivalent units: sum_k L^k rho^k.
double equivalent_supply(const Ask& ask, const SemCoefficients& sem);

// All buyers sorted by equivalent unit price, descending. Ties broken by
// ascending buyer_id so seeded runs are reproducible. Ranks are 1..M.
std::vector<RankedBuyer> rank_buyers(const Instance& instance);

}  // namespace flexauction
