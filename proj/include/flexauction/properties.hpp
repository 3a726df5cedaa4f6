#pragma once

#include <span>
#include <string>
#include <vector>

#include "flexauction/gmwd.hpp"
#include "flexauction/types.hpp"

namespace flexauction {

// Aggregated audit counters over a batch of cleared instances.
struct PropertyReport {
  long long instances_checked = 0;
  long long ir_violations = 0;
  long long bb_violations = 0;
  double max_manipulation_gain = 0.0;
  long long manipulation_samples = 0;
};

// True iff every winner's utility (bid price minus payment) is non-negative
// within 1e-9 relative tolerance and nobody outside the winner set pays
// anything. Payments for buyers unknown to the instance are a structural
// error, not a violation.
bool check_individual_rationality(const Instance& instance, const AuctionOutcome& outcome);

// True iff collected payments cover the seller's reserve-priced revenue,
// within 1e-9 relative tolerance.
bool check_budget_balance(const Instance& instance, const AuctionOutcome& outcome);

// Diagnostic only: no single bid exceeds the realized social welfare. Can
// legitimately fail on degenerate instances (e.g. nobody wins), so callers
// report it rather than assert it.
bool scs_holds(const Instance& instance, const AuctionOutcome& outcome);

// Runs both audits against one cleared instance and bumps the counters.
void audit_outcome(const Instance& instance, const AuctionOutcome& outcome,
                   PropertyReport& report);

inline constexpr double kDefaultMisreportMultipliers[] = {0.5, 0.8, 0.9, 1.1, 1.25, 2.0};

// Empirical manipulation probe for one buyer under the default greedy
// mechanism. Tries every price multiplier crossed with shrunk adjustment
// ranges (none, half, full), re-clears the market, and evaluates the buyer's
// utility at its TRUE package value. Returns the best misreport's utility
// advantage over truthful bidding; may be negative when every misreport
// hurts. `samples_out`, when non-null, receives the number of misreports
// evaluated.
double manipulation_gain_search(
    const Instance& instance, const std::string& buyer_id,
    std::span<const double> price_multipliers = kDefaultMisreportMultipliers,
    long long* samples_out = nullptr);

}  // namespace flexauction
