#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexauction/benchmarks.hpp"
#include "flexauction/properties.hpp"
#include "flexauction/simgen.hpp"

namespace flexauction {

enum class SweepVariable { kBuyers, kDelta, kDemandRange };

const char* sweep_variable_name(SweepVariable variable);
SweepVariable sweep_variable_from_name(const std::string& name);

// One sweep: a seeded generator, the mechanisms to compare on identical
// instance streams, and the variable swept across sweep_values.
//   buyers        sweep_values are buyer counts
//   delta         sweep_values are uniform adjustment ranges (greedy only)
//   demand_range  sweep_values are demand-mean interval widths, centered on
//                 the midpoint of the generator's demand_mean_range
struct ExperimentSpec {
  std::string name;
  GeneratorConfig generator;
  std::vector<MechanismConfig> mechanisms;
  SweepVariable sweep_variable = SweepVariable::kBuyers;
  std::vector<double> sweep_values;
  long long replications = 10000;
  std::string output_path;

  // Audit-only knobs: how many replications to probe for profitable
  // misreports, and with which price multipliers.
  long long manipulation_instances = 0;
  std::vector<double> manipulation_multipliers{
      std::begin(kDefaultMisreportMultipliers), std::end(kDefaultMisreportMultipliers)};
};

// Bundled parameter sets reproducing the shipped comparison studies:
//   fig1  welfare vs buyer count, all mechanisms
//   fig2  welfare vs demand-spread width, small adjustment ranges
//   fig3  welfare vs buyer count at each adjustment range
//   fig4  welfare vs demand-spread width at each adjustment range
std::vector<ExperimentSpec> preset_experiments(const std::string& name);
std::vector<std::string> preset_names();

// Parses a single spec object or an array of them.
std::vector<ExperimentSpec> experiment_specs_from_json(const nlohmann::json& j);

struct RunOverrides {
  std::optional<long long> replications;
  std::optional<std::uint64_t> seed;
};

// All rows for the given specs, ready to write:
//   sweep_var,sweep_value,mechanism,delta,replications,
//   mean_welfare,welfare_std,mean_winners,mean_revenue,seed
std::string run_experiments_csv(const std::vector<ExperimentSpec>& specs,
                                const RunOverrides& overrides);

struct AuditResult {
  PropertyReport report;
  long long scs_diagnostic_failures = 0;
  std::vector<double> manipulation_gains;  // one per probed (instance, buyer)
  nlohmann::json to_json() const;
};

AuditResult run_audit(const std::vector<ExperimentSpec>& specs,
                      const RunOverrides& overrides);

// Command bodies behind the CLI, also driven directly by tests. Each writes
// its output file and returns the process exit code: 0 success, 2 property
// violation. Validation problems throw ValidationError (exit 1 at the CLI),
// anything else bubbles up as exit 3.
int cmd_clear(const std::string& instance_path, const std::string& out_path,
              const MechanismConfig& mechanism, std::optional<int> delta_override);
int cmd_experiment(const std::vector<ExperimentSpec>& specs, const RunOverrides& overrides,
                   const std::string& out_path);
int cmd_audit(const std::vector<ExperimentSpec>& specs, const RunOverrides& overrides,
              const std::string& out_path);

}  // namespace flexauction
