#pragma once

#include <string>
#include <vector>

#include "flexauction/gmwd.hpp"
#include "flexauction/types.hpp"

namespace flexauction {

enum class MechanismId { kGmwd, kTcda, kThimble };

// Names as they appear in CSV output and CLI flags. The virtual-bid
// benchmark is labelled "thimble-approx": it is a comparison-fidelity
// reimplementation, not the original mechanism.
const char* mechanism_name(MechanismId id);
MechanismId mechanism_from_name(const std::string& name);

// All-or-nothing baseline: the greedy pipeline with every adjustable range
// forced to zero, so a package is granted in full or rejected in full.
AuctionOutcome clear_tcda(const Instance& instance);

// One buyer's alternative over the homogeneous equivalent band: j parts in
// num_virtual of the full package, price scaled linearly, units rounded up.
struct VirtualBid {
  std::size_t bid_index = 0;
  std::string buyer_id;
  int split = 0;            // j in 1..num_virtual
  double units = 0.0;       // equivalent units requested
  double price = 0.0;       // currency for this partial package
  double unit_price = 0.0;  // price / units
};

// The expansion used by clear_thimble, exposed for inspection and tests.
std::vector<VirtualBid> thimble_virtual_bids(const Instance& instance, int num_virtual);

// Virtual-bid benchmark over a single homogeneous equivalent band: every
// buyer is expanded into num_virtual proportional partial packages, a
// unit-price greedy over the aggregate equivalent supply accepts at most
// one of them per buyer (infeasible entries are skipped, not terminal), and
// winners pay the first excluded competitor's unit price, or the reserve
// when no such competitor exists or it falls below the reserve.
AuctionOutcome clear_thimble(const Instance& instance, int num_virtual = 3);

// Mechanism selection plus the per-mechanism knobs, as used by sweeps and
// the CLI.
struct MechanismConfig {
  MechanismId mechanism = MechanismId::kGmwd;
  int delta = 0;  // uniform adjustment range fed to the instance generator
  int num_virtual = 3;
  StopPolicy policy = StopPolicy::kBreak;
};

AuctionOutcome clear_mechanism(const Instance& instance, const MechanismConfig& config);

}  // namespace flexauction
