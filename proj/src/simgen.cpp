#include "flexauction/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <thread>

namespace flexauction {

namespace {

// Distinct draw streams per replication, derived with splitmix64 so the
// stream for (seed, replication, purpose) never depends on any other draw.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kSupplyStream = 0x5355504C59;    // "SUPLY"
constexpr std::uint64_t kBuyerStream = 0x4255594552;     // "BUYER"

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t replication,
                           std::uint64_t purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(purpose));
  h = splitmix64(h ^ splitmix64(replication));
  return std::mt19937_64(h);
}

// Hand-rolled samplers: the standard distributions are not pinned by the
// standard, and seeded outputs here must be stable across toolchains.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double uniform_in(std::mt19937_64& rng, const std::array<double, 2>& range) {
  return range[0] + (range[1] - range[0]) * uniform01(rng);
}

// Knuth's product method; linear in the mean, which stays modest here.
int sample_poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean > 600.0) {
    throw ValidationError("poisson mean " + std::to_string(mean) +
                          " exceeds the supported range");
  }
  const double threshold = std::exp(-mean);
  int count = 0;
  double product = 1.0;
  do {
    ++count;
    product *= (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  } while (product > threshold);
  return count - 1;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

std::string buyer_name(int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d", index + 1);
  return buffer;
}

}  // namespace

void validate_config(const GeneratorConfig& config) {
  require(config.bands >= 1, "generator needs at least one band");
  require(config.sem.bands() == config.bands,
          "generator sem coefficients must match the band count");
  for (double rho : config.sem.rho) {
    require(std::isfinite(rho) && rho > 0.0, "sem coefficients must be positive");
  }
  require(config.supply_mean_range[0] >= 0.0 &&
              config.supply_mean_range[0] <= config.supply_mean_range[1],
          "supply mean range must be well-ordered and non-negative");
  require(config.demand_mean_range[0] > 0.0 &&
              config.demand_mean_range[0] <= config.demand_mean_range[1],
          "demand mean range must be well-ordered and positive");
  require(config.delta >= 0, "delta must be non-negative");
  require(config.num_buyers >= 0 && config.num_buyers <= 9999,
          "num_buyers must lie in [0, 9999]");
  require(std::isfinite(config.reserve) && config.reserve >= 0.0,
          "reserve must be a non-negative real");
  require(config.unit_value_range[0] >= 0.0 &&
              config.unit_value_range[0] <= config.unit_value_range[1],
          "unit value range must be well-ordered and non-negative");
}

std::vector<double> supply_means_for(const GeneratorConfig& config,
                                     std::uint64_t replication) {
  validate_config(config);
  const std::uint64_t stream_rep = config.freeze_supply_means ? 0 : replication;
  std::mt19937_64 rng = stream_rng(config.seed, stream_rep, kSupplyStream);
  std::vector<double> means(config.bands);
  for (double& mean : means) {
    mean = uniform_in(rng, config.supply_mean_range);
  }
  return means;
}

Instance generate_instance(const GeneratorConfig& config, std::uint64_t replication) {
  validate_config(config);

  Instance instance;
  instance.sem = config.sem;
  instance.ask.reserve = config.reserve;

  const std::vector<double> supply_means = supply_means_for(config, replication);
  std::mt19937_64 supply_rng = stream_rng(config.seed, replication, kSupplyStream + 1);
  instance.ask.supply.resize(config.bands);
  for (int k = 0; k < config.bands; ++k) {
    instance.ask.supply[k] = sample_poisson(supply_rng, supply_means[k]);
  }

  std::mt19937_64 rng = stream_rng(config.seed, replication, kBuyerStream);
  instance.bids.reserve(config.num_buyers);
  for (int m = 0; m < config.num_buyers; ++m) {
    Bid bid;
    bid.buyer_id = buyer_name(m);
    bid.base_demand.resize(config.bands);
    bid.adjust_range.resize(config.bands);

    // Redraw buyers whose demand came out zero in every band.
    bool any_demand = false;
    for (int attempt = 0; !any_demand; ++attempt) {
      if (attempt >= 1000000) {
        throw ValidationError("demand means too small: buyer demand is always zero");
      }
      const double demand_mean = uniform_in(rng, config.demand_mean_range);
      for (int k = 0; k < config.bands; ++k) {
        bid.base_demand[k] = sample_poisson(rng, demand_mean);
        any_demand = any_demand || bid.base_demand[k] > 0;
      }
    }
    for (int k = 0; k < config.bands; ++k) {
      bid.adjust_range[k] = std::min(config.delta, bid.base_demand[k]);
    }
    const double unit_value = uniform_in(rng, config.unit_value_range);
    bid.price = unit_value * equivalent_demand(bid, instance.sem);
    instance.bids.push_back(std::move(bid));
  }
  return instance;
}

std::vector<MetricsSummary> run_sweep(std::span<const SweepPoint> points,
                                      long long replications, int num_threads) {
  require(replications >= 1, "replications must be at least 1");
  if (num_threads <= 0) {
    num_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (num_threads <= 0) num_threads = 1;
  }

  std::vector<MetricsSummary> summaries;
  summaries.reserve(points.size());
  for (const SweepPoint& point : points) {
    validate_config(point.generator);

    std::vector<double> welfare(replications);
    std::vector<double> winner_count(replications);
    std::vector<double> revenue(replications);

    std::mutex error_mutex;
    std::uint64_t first_error_rep = ~0ull;
    std::string error_message;

    const auto worker = [&](long long begin, long long end) {
      for (long long rep = begin; rep < end; ++rep) {
        try {
          const Instance instance =
              generate_instance(point.generator, static_cast<std::uint64_t>(rep));
          const AuctionOutcome outcome = clear_mechanism(instance, point.mechanism);
          welfare[rep] = outcome.social_welfare;
          winner_count[rep] = static_cast<double>(outcome.winners.size());
          revenue[rep] = outcome.seller_revenue;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (static_cast<std::uint64_t>(rep) < first_error_rep) {
            first_error_rep = static_cast<std::uint64_t>(rep);
            error_message = e.what();
          }
        }
      }
    };

    const int threads_used =
        static_cast<int>(std::min<long long>(num_threads, replications));
    std::vector<std::thread> pool;
    pool.reserve(threads_used);
    const long long chunk = (replications + threads_used - 1) / threads_used;
    for (int t = 0; t < threads_used; ++t) {
      const long long begin = t * chunk;
      const long long end = std::min(replications, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (std::thread& thread : pool) thread.join();

    if (first_error_rep != ~0ull) {
      throw ValidationError("sweep failed at seed " + std::to_string(point.generator.seed) +
                            ", replication " + std::to_string(first_error_rep) + ": " +
                            error_message);
    }

    MetricsSummary summary;
    summary.mechanism = point.mechanism.mechanism;
    summary.replications = replications;
    double welfare_sum = 0.0, winners_sum = 0.0, revenue_sum = 0.0;
    for (long long rep = 0; rep < replications; ++rep) {
      welfare_sum += welfare[rep];
      winners_sum += winner_count[rep];
      revenue_sum += revenue[rep];
    }
    const double n = static_cast<double>(replications);
    summary.mean_welfare = welfare_sum / n;
    summary.mean_winner_count = winners_sum / n;
    summary.mean_revenue = revenue_sum / n;
    if (replications > 1) {
      double squared = 0.0;
      for (long long rep = 0; rep < replications; ++rep) {
        const double d = welfare[rep] - summary.mean_welfare;
        squared += d * d;
      }
      summary.welfare_std = std::sqrt(squared / (n - 1.0));
    }
    summaries.push_back(summary);
  }
  return summaries;
}

}  // namespace flexauction
