#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flexauction/benchmarks.hpp"
#include "flexauction/types.hpp"

namespace flexauction {

enum class ValuationModel { kUniformUnitPrice };

// Seeded market generator. Per replication, each band's supply is Poisson
// with a mean drawn uniformly from supply_mean_range, and each buyer's
// per-band demand is Poisson with a buyer-specific mean drawn uniformly
// from demand_mean_range. Package prices are a uniform per-equivalent-unit
// value times the package's equivalent demand. All draws are derived from
// (seed, replication) alone, so replications are independent of execution
// order and reproduce bit-identically.
struct GeneratorConfig {
  int bands = 5;
  std::array<double, 2> supply_mean_range{50.0, 100.0};
  std::array<double, 2> demand_mean_range{8.0, 16.0};
  SemCoefficients sem{{10.0, 8.0, 6.0, 4.0, 2.0}};
  int delta = 0;  // uniform adjustment range; clipped per band at the demand
  int num_buyers = 15;
  double reserve = 1.0;
  ValuationModel valuation_model = ValuationModel::kUniformUnitPrice;
  std::array<double, 2> unit_value_range{1.0, 3.0};
  std::uint64_t seed = 0;
  // When set, supply means are drawn once from the seed instead of per
  // replication, trading variance for a fixed market size.
  bool freeze_supply_means = false;
};

void validate_config(const GeneratorConfig& config);

// The per-band supply means used for one replication (a fixed draw when
// freeze_supply_means is set). Exposed so tests and reports can see them.
std::vector<double> supply_means_for(const GeneratorConfig& config,
                                     std::uint64_t replication);

Instance generate_instance(const GeneratorConfig& config, std::uint64_t replication);

// Monte Carlo aggregates for one (generator, mechanism) grid point.
struct MetricsSummary {
  MechanismId mechanism = MechanismId::kGmwd;
  double mean_welfare = 0.0;
  double welfare_std = 0.0;  // sample standard deviation
  double mean_winner_count = 0.0;
  double mean_revenue = 0.0;
  long long replications = 0;
};

struct SweepPoint {
  GeneratorConfig generator;
  MechanismConfig mechanism;
};

// Clears `replications` generated instances at every grid point and
// aggregates welfare, winner-count and revenue statistics. Grid points that
// share a generator seed see identical instance streams, which is what
// makes cross-mechanism comparisons paired. Replications run in parallel;
// results are identical for any thread count. A replication that throws
// aborts the sweep with the offending (seed, replication) named.
std::vector<MetricsSummary> run_sweep(std::span<const SweepPoint> points,
                                      long long replications, int num_threads = 0);

}  // namespace flexauction
