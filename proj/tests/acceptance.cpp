// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit when a
// hard criterion fails. Soft criteria (the virtual-bid benchmark's position
// in the welfare ordering, and the demand-spread shape checks) are reported
// but do not fail the run: the virtual-bid benchmark is an approximation and
// the shape checks ride on smoothed Monte Carlo means.
//
// Set FLEXAUCTION_ACCEPTANCE_QUICK=1 to cut replication counts for local
// iteration; the official run uses the defaults.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "flexauction/experiment.hpp"
#include "flexauction/io.hpp"
#include "flexauction/oracle.hpp"
#include "flexauction/properties.hpp"
#include "flexauction/simgen.hpp"

using namespace flexauction;

namespace {

struct Criterion {
  std::string label;
  bool passed = false;
  bool hard = true;
  std::string detail;
};

std::vector<Criterion> g_results;

void record(const std::string& label, bool passed, bool hard, const std::string& detail) {
  g_results.push_back({label, passed, hard, detail});
  std::cout << (passed ? "PASS" : "FAIL") << (hard ? "      " : " soft ") << label;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n" << std::flush;
}

long long scaled(long long full, long long quick) {
  static const bool is_quick = []() {
    const char* env = std::getenv("FLEXAUCTION_ACCEPTANCE_QUICK");
    return env != nullptr && std::string(env) != "0";
  }();
  return is_quick ? quick : full;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_seconds(double seconds) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << seconds << "s";
  return out.str();
}

GeneratorConfig base_generator(std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  return config;
}

// ---------------------------------------------------------------------------
// 1. Zero IR and BB violations across mechanisms, buyer counts and deltas.
void criterion_properties() {
  const auto start = std::chrono::steady_clock::now();
  const long long instances = scaled(10200, 600);
  PropertyReport report;
  for (long long i = 0; i < instances; ++i) {
    GeneratorConfig config = base_generator(101);
    config.num_buyers = 5 + static_cast<int>(i % 26);   // 5..30
    config.delta = static_cast<int>(i % 11);            // 0..10
    const Instance instance = generate_instance(config, static_cast<std::uint64_t>(i));
    audit_outcome(instance, clear(instance), report);
    audit_outcome(instance, clear_tcda(instance), report);
    audit_outcome(instance, clear_thimble(instance, 3), report);
  }
  const double seconds = elapsed_seconds(start);
  const bool passed =
      report.ir_violations == 0 && report.bb_violations == 0 && seconds < 60.0;
  record("C1  economic properties", passed, true,
         std::to_string(report.instances_checked) + " outcomes, " +
             std::to_string(report.ir_violations) + " IR / " +
             std::to_string(report.bb_violations) + " BB violations, " +
             format_seconds(seconds));
}

// ---------------------------------------------------------------------------
// 2. The exact optimum dominates the greedy mechanism; report the mean ratio.
void criterion_oracle_dominance() {
  const auto start = std::chrono::steady_clock::now();
  const long long instances = scaled(1000, 100);
  long long dominance_failures = 0;
  double ratio_sum = 0.0;
  long long ratio_count = 0;
  for (long long i = 0; i < instances; ++i) {
    GeneratorConfig config = base_generator(202);
    config.num_buyers = 4 + static_cast<int>(i % 9);  // 4..12
    config.delta = static_cast<int>(i % 11);
    // Tighter supply keeps the optimum non-trivial at these sizes.
    config.supply_mean_range = {20.0, 60.0};
    const Instance instance = generate_instance(config, static_cast<std::uint64_t>(i));
    const AuctionOutcome greedy = clear(instance);
    const OracleResult exact = solve_exact(instance);
    if (greedy.social_welfare >
        exact.optimal_welfare + 1e-9 * std::max(1.0, exact.optimal_welfare)) {
      ++dominance_failures;
    }
    if (exact.optimal_welfare > 0.0) {
      ratio_sum += greedy.social_welfare / exact.optimal_welfare;
      ++ratio_count;
    } else {
      ratio_sum += 1.0;  // both optima are zero
      ++ratio_count;
    }
  }
  const double seconds = elapsed_seconds(start);
  const double mean_ratio = ratio_sum / static_cast<double>(ratio_count);
  const bool passed = dominance_failures == 0 && seconds < 300.0;
  std::ostringstream detail;
  detail.precision(4);
  detail << dominance_failures << " dominance failures, mean greedy/optimal welfare "
         << std::fixed << mean_ratio << ", " << format_seconds(seconds);
  record("C2  oracle dominance", passed, true, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Single-band rigid markets: the oracle equals a DP knapsack exactly.
double knapsack_optimum(const std::vector<int>& weights, const std::vector<double>& values,
                        int capacity) {
  std::vector<double> best(capacity + 1, 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (int c = capacity; c >= weights[i]; --c) {
      best[c] = std::max(best[c], best[c - weights[i]] + values[i]);
    }
  }
  return best[capacity];
}

void criterion_knapsack() {
  const long long instances = scaled(200, 50);
  long long mismatches = 0;
  for (long long i = 0; i < instances; ++i) {
    GeneratorConfig config = base_generator(303);
    config.bands = 1;
    config.sem.rho = {1.0};
    config.num_buyers = 4 + static_cast<int>(i % 9);
    config.delta = 0;
    config.reserve = 0.0;
    config.supply_mean_range = {10.0, 40.0};
    config.demand_mean_range = {3.0, 9.0};
    Instance instance = generate_instance(config, static_cast<std::uint64_t>(i));
    // Snap prices to a dyadic grid so both routes sum without rounding.
    std::vector<int> weights;
    std::vector<double> values;
    for (Bid& bid : instance.bids) {
      bid.price = std::round(bid.price * 64.0) / 64.0;
      weights.push_back(bid.base_demand[0]);
      values.push_back(bid.price);
    }
    const OracleResult exact = solve_exact(instance);
    const double dp = knapsack_optimum(weights, values, instance.ask.supply[0]);
    if (exact.optimal_welfare != dp) ++mismatches;
  }
  record("C3  knapsack cross-check", mismatches == 0, true,
         std::to_string(instances) + " instances, " + std::to_string(mismatches) +
             " mismatches");
}

// ---------------------------------------------------------------------------
// 4. Welfare is monotone in the adjustment range, instance by instance.
void criterion_delta_monotonicity() {
  const long long instances = scaled(1000, 200);
  const std::vector<int> deltas = {0, 2, 4, 6, 8, 10};
  long long violations = 0;
  for (long long i = 0; i < instances; ++i) {
    double previous = -1.0;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      GeneratorConfig config = base_generator(404);
      config.num_buyers = 12;
      config.delta = deltas[d];
      const Instance instance = generate_instance(config, static_cast<std::uint64_t>(i));
      const double welfare = clear(instance).social_welfare;
      if (d > 0 && welfare < previous - 1e-9 * std::max(1.0, previous)) {
        ++violations;
      }
      previous = welfare;
    }
  }
  record("C4  delta monotonicity", violations == 0, true,
         std::to_string(instances) + " paired instances, " + std::to_string(violations) +
             " violations");
}

// ---------------------------------------------------------------------------
// 5. The rigid baseline coincides with the greedy mechanism at delta zero.
void criterion_tcda_equivalence() {
  const long long instances = scaled(1000, 200);
  long long mismatches = 0;
  for (long long i = 0; i < instances; ++i) {
    GeneratorConfig flexible = base_generator(505);
    flexible.num_buyers = 15;
    flexible.delta = 6;
    GeneratorConfig rigid = flexible;
    rigid.delta = 0;
    const Instance with_adjustments =
        generate_instance(flexible, static_cast<std::uint64_t>(i));
    const Instance without = generate_instance(rigid, static_cast<std::uint64_t>(i));
    if (!(clear_tcda(with_adjustments) == clear(without))) ++mismatches;
  }
  record("C5  rigid-baseline equivalence", mismatches == 0, true,
         std::to_string(instances) + " paired instances, " + std::to_string(mismatches) +
             " mismatches (bit-exact outcome comparison)");
}

// ---------------------------------------------------------------------------
// 6. Welfare ordering across mechanisms as the market grows.
void criterion_buyer_sweep_ordering() {
  const long long replications = scaled(10000, 500);
  const std::vector<int> buyer_counts = {5, 10, 15, 20, 25, 30};

  MechanismConfig gmwd6;
  gmwd6.delta = 6;
  MechanismConfig gmwd2;
  gmwd2.delta = 2;
  MechanismConfig tcda;
  tcda.mechanism = MechanismId::kTcda;
  MechanismConfig thimble;
  thimble.mechanism = MechanismId::kThimble;

  bool hard_ok = true;
  bool soft_ok = true;
  std::ostringstream detail;
  detail.precision(0);
  detail << std::fixed;
  for (int buyers : buyer_counts) {
    std::vector<SweepPoint> points;
    for (const MechanismConfig& mech : {gmwd6, gmwd2, tcda, thimble}) {
      GeneratorConfig gen = base_generator(606);
      gen.num_buyers = buyers;
      gen.delta = mech.mechanism == MechanismId::kGmwd ? mech.delta : 0;
      points.push_back({gen, mech});
    }
    const auto summaries = run_sweep(points, replications);
    const double w6 = summaries[0].mean_welfare;
    const double w2 = summaries[1].mean_welfare;
    const double wt = summaries[2].mean_welfare;
    const double wv = summaries[3].mean_welfare;
    hard_ok = hard_ok && w6 > w2 && w2 > wt;
    soft_ok = soft_ok && w6 > wv && wv > w2;
    detail << "M=" << buyers << ": " << w6 << "/" << wv << "/" << w2 << "/" << wt << "  ";
  }
  record("C6a buyer-sweep ordering delta6 > delta2 > rigid", hard_ok, true,
         "means delta6/virtual/delta2/rigid: " + detail.str());
  record("C6b virtual-bid benchmark sits between delta6 and delta2", soft_ok, false,
         soft_ok ? "" : "approximate benchmark ranks differently, see C6a detail");
}

// ---------------------------------------------------------------------------
// 7. Welfare grows with the market and with the adjustment range.
void criterion_growth_trends() {
  const long long replications = scaled(10000, 500);
  const std::vector<int> buyer_counts = {5, 10, 15, 20};
  const std::vector<int> deltas = {0, 2, 4, 6, 8, 10};

  std::map<std::pair<int, int>, double> mean_welfare;
  for (int buyers : buyer_counts) {
    std::vector<SweepPoint> points;
    for (int delta : deltas) {
      MechanismConfig mech;
      mech.delta = delta;
      GeneratorConfig gen = base_generator(707);
      gen.num_buyers = buyers;
      gen.delta = delta;
      points.push_back({gen, mech});
    }
    const auto summaries = run_sweep(points, replications);
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      mean_welfare[{buyers, deltas[d]}] = summaries[d].mean_welfare;
    }
  }

  bool increasing_in_buyers = true;
  for (int delta : deltas) {
    for (std::size_t b = 1; b < buyer_counts.size(); ++b) {
      increasing_in_buyers =
          increasing_in_buyers && mean_welfare[{buyer_counts[b], delta}] >
                                      mean_welfare[{buyer_counts[b - 1], delta}];
    }
  }
  bool nondecreasing_in_delta = true;
  for (int buyers : buyer_counts) {
    for (std::size_t d = 1; d < deltas.size(); ++d) {
      nondecreasing_in_delta =
          nondecreasing_in_delta &&
          mean_welfare[{buyers, deltas[d]}] >=
              mean_welfare[{buyers, deltas[d - 1]}] -
                  1e-9 * std::max(1.0, mean_welfare[{buyers, deltas[d - 1]}]);
    }
  }
  record("C7  welfare trends in market size and adjustment range",
         increasing_in_buyers && nondecreasing_in_delta, true,
         std::string("strictly increasing in buyers: ") +
             (increasing_in_buyers ? "yes" : "NO") +
             ", non-decreasing in delta: " + (nondecreasing_in_delta ? "yes" : "NO"));
}

// ---------------------------------------------------------------------------
// 8. Demand-spread response: rise-then-decline for small adjustment ranges,
//    with the small-delta turning point earlier; near-monotone at delta 10.
std::vector<double> smooth3(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double sum = values[i];
    int count = 1;
    if (i > 0) { sum += values[i - 1]; ++count; }
    if (i + 1 < values.size()) { sum += values[i + 1]; ++count; }
    out[i] = sum / count;
  }
  return out;
}

void criterion_demand_spread_shape() {
  const long long replications = scaled(10000, 500);
  const std::vector<double> widths = {0, 4, 8, 12, 16, 20};
  const std::vector<int> deltas = {2, 4, 10};

  std::map<int, std::vector<double>> curves;
  for (int delta : deltas) {
    std::vector<SweepPoint> points;
    for (double width : widths) {
      MechanismConfig mech;
      mech.delta = delta;
      GeneratorConfig gen = base_generator(808);
      gen.num_buyers = 15;
      gen.delta = delta;
      gen.demand_mean_range = {12.0 - width / 2.0, 12.0 + width / 2.0};
      points.push_back({gen, mech});
    }
    const auto summaries = run_sweep(points, replications);
    std::vector<double> means;
    for (const auto& summary : summaries) means.push_back(summary.mean_welfare);
    curves[delta] = smooth3(means);
  }

  const double slack = 0.01;  // 1% of the peak, absorbs Monte Carlo noise
  const auto argmax = [](const std::vector<double>& values) {
    return static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
  };
  const auto rises_then_declines = [&](const std::vector<double>& values) {
    const std::size_t peak = argmax(values);
    if (peak == 0 || peak + 1 == values.size()) return false;
    const double tolerance = slack * values[peak];
    return values.front() < values[peak] - tolerance &&
           values.back() < values[peak] - tolerance;
  };

  const bool shape2 = rises_then_declines(curves[2]);
  const bool shape4 = rises_then_declines(curves[4]);
  const bool earlier_turn = argmax(curves[2]) < argmax(curves[4]);
  bool wide_nondecreasing = true;
  for (std::size_t i = 1; i < curves[10].size(); ++i) {
    wide_nondecreasing =
        wide_nondecreasing && curves[10][i] >= curves[10][i - 1] * (1.0 - slack);
  }

  std::ostringstream detail;
  detail.precision(0);
  detail << std::fixed << "smoothed means d2:";
  for (double v : curves[2]) detail << " " << v;
  detail << "; d4:";
  for (double v : curves[4]) detail << " " << v;
  detail << "; d10:";
  for (double v : curves[10]) detail << " " << v;
  record("C8  demand-spread shape", shape2 && shape4 && earlier_turn && wide_nondecreasing,
         false, detail.str());
}

// ---------------------------------------------------------------------------
// 9. Payments are independent of the winner's own bid while the order holds.
void criterion_payment_independence() {
  const long long instances = scaled(1000, 200);
  const double scalings[] = {1.1, 1.5, 2.0};
  long long violations = 0;
  long long comparisons = 0;
  for (long long i = 0; i < instances; ++i) {
    GeneratorConfig config = base_generator(909);
    config.num_buyers = 10;
    config.delta = static_cast<int>(i % 11);
    const Instance instance = generate_instance(config, static_cast<std::uint64_t>(i));
    const AuctionOutcome outcome = clear(instance);
    if (outcome.winners.empty()) continue;

    std::vector<std::string> base_order;
    for (const RankedBuyer& entry : rank_buyers(instance)) {
      base_order.push_back(entry.buyer_id);
    }
    for (const std::string& winner : outcome.winners) {
      for (double scale : scalings) {
        Instance modified = instance;
        for (Bid& bid : modified.bids) {
          if (bid.buyer_id == winner) bid.price *= scale;
        }
        std::vector<std::string> new_order;
        for (const RankedBuyer& entry : rank_buyers(modified)) {
          new_order.push_back(entry.buyer_id);
        }
        if (new_order != base_order) continue;  // the scaling reordered the market
        ++comparisons;
        const AuctionOutcome modified_outcome = clear(modified);
        const double before = outcome.payments.at(winner);
        const auto after = modified_outcome.payments.find(winner);
        if (after == modified_outcome.payments.end() ||
            std::abs(after->second - before) > 1e-9 * std::max(1.0, before)) {
          ++violations;
        }
      }
    }
  }
  record("C9  payment independence", violations == 0, true,
         std::to_string(comparisons) + " order-preserving upward misreports, " +
             std::to_string(violations) + " payment changes");
}

// ---------------------------------------------------------------------------
// 10. Preset experiments are byte-deterministic under a fixed seed.
void criterion_determinism() {
  RunOverrides overrides;
  overrides.replications = scaled(500, 100);
  const auto specs = preset_experiments("fig1");
  const std::string first = run_experiments_csv(specs, overrides);
  const std::string second = run_experiments_csv(specs, overrides);
  record("C10 byte-identical preset reruns", first == second, true,
         std::to_string(first.size()) + " bytes compared");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_properties();
  criterion_oracle_dominance();
  criterion_knapsack();
  criterion_delta_monotonicity();
  criterion_tcda_equivalence();
  criterion_buyer_sweep_ordering();
  criterion_growth_trends();
  criterion_demand_spread_shape();
  criterion_payment_independence();
  criterion_determinism();

  int hard_failures = 0;
  int soft_failures = 0;
  for (const Criterion& criterion : g_results) {
    if (!criterion.passed) {
      (criterion.hard ? hard_failures : soft_failures) += 1;
    }
  }
  std::cout << "----\n"
            << g_results.size() << " criteria, " << hard_failures << " hard failures, "
            << soft_failures << " soft failures, total "
            << format_seconds(elapsed_seconds(start)) << "\n";
  return hard_failures == 0 ? 0 : 1;
}
