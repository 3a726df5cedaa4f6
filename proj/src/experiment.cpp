#include "flexauction/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "flexauction/io.hpp"

namespace flexauction {

namespace {

using nlohmann::json;

GeneratorConfig paper_setup() {
  GeneratorConfig config;  // defaults already carry the shipped study setup
  config.seed = 42;
  return config;
}

MechanismConfig gmwd_with_delta(int delta) {
  MechanismConfig mech;
  mech.mechanism = MechanismId::kGmwd;
  mech.delta = delta;
  return mech;
}

MechanismConfig tcda_config() {
  MechanismConfig mech;
  mech.mechanism = MechanismId::kTcda;
  return mech;
}

MechanismConfig thimble_config() {
  MechanismConfig mech;
  mech.mechanism = MechanismId::kThimble;
  return mech;
}

// The adjustment range shown in CSV rows and fed to the generator: only the
// greedy mechanism consumes per-bid adjustment ranges.
int effective_delta(const MechanismConfig& mech) {
  return mech.mechanism == MechanismId::kGmwd ? mech.delta : 0;
}

GeneratorConfig generator_at(const ExperimentSpec& spec, double sweep_value,
                             const MechanismConfig& mech) {
  GeneratorConfig gen = spec.generator;
  switch (spec.sweep_variable) {
    case SweepVariable::kBuyers:
      gen.num_buyers = static_cast<int>(sweep_value);
      break;
    case SweepVariable::kDelta:
      break;  // handled through the mechanism config
    case SweepVariable::kDemandRange: {
      const double center = (gen.demand_mean_range[0] + gen.demand_mean_range[1]) / 2.0;
      gen.demand_mean_range = {center - sweep_value / 2.0, center + sweep_value / 2.0};
      break;
    }
  }
  gen.delta = effective_delta(mech);
  return gen;
}

MechanismConfig mechanism_at(const ExperimentSpec& spec, double sweep_value,
                             const MechanismConfig& mech) {
  MechanismConfig adjusted = mech;
  if (spec.sweep_variable == SweepVariable::kDelta &&
      mech.mechanism == MechanismId::kGmwd) {
    adjusted.delta = static_cast<int>(sweep_value);
  }
  return adjusted;
}

void validate_specs(const std::vector<ExperimentSpec>& specs) {
  if (specs.empty()) {
    throw ValidationError("no experiment specs given");
  }
  std::set<std::string> names;
  for (const ExperimentSpec& spec : specs) {
    if (spec.name.empty()) {
      throw ValidationError("experiment spec without a name");
    }
    if (!names.insert(spec.name).second) {
      throw ValidationError("duplicate experiment name '" + spec.name + "'");
    }
    if (spec.sweep_values.empty()) {
      throw ValidationError("experiment '" + spec.name + "' has no sweep values");
    }
    if (spec.mechanisms.empty()) {
      throw ValidationError("experiment '" + spec.name + "' has no mechanisms");
    }
    if (spec.replications < 1) {
      throw ValidationError("experiment '" + spec.name + "' needs at least 1 replication");
    }
    validate_config(spec.generator);
  }
}

ExperimentSpec apply_overrides(ExperimentSpec spec, const RunOverrides& overrides) {
  if (overrides.replications) spec.replications = *overrides.replications;
  if (overrides.seed) spec.generator.seed = *overrides.seed;
  return spec;
}

StopPolicy policy_from_name(const std::string& name) {
  if (name == "break") return StopPolicy::kBreak;
  if (name == "skip") return StopPolicy::kSkip;
  throw ValidationError("unknown stop policy '" + name + "' (expected break or skip)");
}

}  // namespace

const char* sweep_variable_name(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::kBuyers: return "buyers";
    case SweepVariable::kDelta: return "delta";
    case SweepVariable::kDemandRange: return "demand_range";
  }
  throw InternalError("unknown sweep variable");
}

SweepVariable sweep_variable_from_name(const std::string& name) {
  if (name == "buyers") return SweepVariable::kBuyers;
  if (name == "delta") return SweepVariable::kDelta;
  if (name == "demand_range") return SweepVariable::kDemandRange;
  throw ValidationError("unknown sweep variable '" + name +
                        "' (expected buyers, delta or demand_range)");
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

std::vector<ExperimentSpec> preset_experiments(const std::string& name) {
  std::vector<ExperimentSpec> specs;
  if (name == "fig1") {
    ExperimentSpec spec;
    spec.name = "fig1";
    spec.generator = paper_setup();
    spec.mechanisms = {gmwd_with_delta(6), gmwd_with_delta(2), tcda_config(),
                       thimble_config()};
    spec.sweep_variable = SweepVariable::kBuyers;
    spec.sweep_values = {5, 10, 15, 20, 25, 30};
    specs.push_back(std::move(spec));
  } else if (name == "fig2") {
    ExperimentSpec spec;
    spec.name = "fig2";
    spec.generator = paper_setup();
    spec.generator.num_buyers = 15;
    spec.mechanisms = {gmwd_with_delta(2), gmwd_with_delta(4), tcda_config()};
    spec.sweep_variable = SweepVariable::kDemandRange;
    spec.sweep_values = {0, 4, 8, 12, 16, 20};
    specs.push_back(std::move(spec));
  } else if (name == "fig3") {
    for (int delta : {0, 2, 4, 6, 8, 10}) {
      ExperimentSpec spec;
      spec.name = "fig3-delta" + std::to_string(delta);
      spec.generator = paper_setup();
      spec.mechanisms = {gmwd_with_delta(delta)};
      spec.sweep_variable = SweepVariable::kBuyers;
      spec.sweep_values = {5, 10, 15, 20};
      specs.push_back(std::move(spec));
    }
  } else if (name == "fig4") {
    for (int delta : {0, 2, 4, 6, 8, 10}) {
      ExperimentSpec spec;
      spec.name = "fig4-delta" + std::to_string(delta);
      spec.generator = paper_setup();
      spec.generator.num_buyers = 15;
      spec.mechanisms = {gmwd_with_delta(delta)};
      spec.sweep_variable = SweepVariable::kDemandRange;
      spec.sweep_values = {4, 8, 12, 16};
      specs.push_back(std::move(spec));
    }
  } else {
    throw ValidationError("unknown preset '" + name + "' (expected fig1..fig4)");
  }
  return specs;
}

std::vector<ExperimentSpec> experiment_specs_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<ExperimentSpec> specs;
    for (const json& element : j) {
      auto parsed = experiment_specs_from_json(element);
      specs.insert(specs.end(), parsed.begin(), parsed.end());
    }
    return specs;
  }
  if (!j.is_object()) {
    throw ValidationError("experiment spec must be an object or an array of objects");
  }

  ExperimentSpec spec;
  spec.name = j.value("name", std::string{});

  if (j.contains("generator")) {
    const json& g = j["generator"];
    GeneratorConfig& gen = spec.generator;
    gen.bands = g.value("bands", gen.bands);
    if (g.contains("rho")) {
      gen.sem.rho = g["rho"].get<std::vector<double>>();
    } else if (gen.bands != gen.sem.bands()) {
      gen.sem.rho.assign(gen.bands, 1.0);
    }
    if (g.contains("supply_mean_range")) {
      gen.supply_mean_range = g["supply_mean_range"].get<std::array<double, 2>>();
    }
    if (g.contains("demand_mean_range")) {
      gen.demand_mean_range = g["demand_mean_range"].get<std::array<double, 2>>();
    }
    gen.delta = g.value("delta", gen.delta);
    gen.num_buyers = g.value("num_buyers", gen.num_buyers);
    gen.reserve = g.value("reserve", gen.reserve);
    if (g.contains("unit_value_range")) {
      gen.unit_value_range = g["unit_value_range"].get<std::array<double, 2>>();
    }
    gen.seed = g.value("seed", gen.seed);
    gen.freeze_supply_means = g.value("freeze_supply_means", gen.freeze_supply_means);
  }

  if (j.contains("mechanisms")) {
    for (const json& m : j["mechanisms"]) {
      MechanismConfig mech;
      if (m.is_string()) {
        mech.mechanism = mechanism_from_name(m.get<std::string>());
      } else if (m.is_object()) {
        mech.mechanism = mechanism_from_name(m.value("mechanism", std::string{"gmwd"}));
        mech.delta = m.value("delta", spec.generator.delta);
        mech.num_virtual = m.value("num_virtual", mech.num_virtual);
        mech.policy = policy_from_name(m.value("policy", std::string{"break"}));
      } else {
        throw ValidationError("mechanism entries must be names or objects");
      }
      spec.mechanisms.push_back(mech);
    }
  } else {
    spec.mechanisms = {gmwd_with_delta(spec.generator.delta)};
  }

  if (j.contains("sweep_variable")) {
    spec.sweep_variable = sweep_variable_from_name(j["sweep_variable"].get<std::string>());
  }
  if (j.contains("sweep_values")) {
    spec.sweep_values = j["sweep_values"].get<std::vector<double>>();
  }
  spec.replications = j.value("replications", spec.replications);
  spec.output_path = j.value("output_path", spec.output_path);
  spec.manipulation_instances =
      j.value("manipulation_instances", spec.manipulation_instances);
  if (j.contains("manipulation_multipliers")) {
    spec.manipulation_multipliers =
        j["manipulation_multipliers"].get<std::vector<double>>();
  }
  return {std::move(spec)};
}

std::string run_experiments_csv(const std::vector<ExperimentSpec>& raw_specs,
                                const RunOverrides& overrides) {
  std::vector<ExperimentSpec> specs;
  specs.reserve(raw_specs.size());
  for (const ExperimentSpec& spec : raw_specs) {
    specs.push_back(apply_overrides(spec, overrides));
  }
  validate_specs(specs);

  std::ostringstream csv;
  csv << "sweep_var,sweep_value,mechanism,delta,replications,mean_welfare,"
         "welfare_std,mean_winners,mean_revenue,seed\n";
  for (const ExperimentSpec& spec : specs) {
    for (double sweep_value : spec.sweep_values) {
      std::vector<SweepPoint> points;
      points.reserve(spec.mechanisms.size());
      for (const MechanismConfig& mech : spec.mechanisms) {
        const MechanismConfig adjusted = mechanism_at(spec, sweep_value, mech);
        points.push_back({generator_at(spec, sweep_value, adjusted), adjusted});
      }
      const std::vector<MetricsSummary> summaries =
          run_sweep(points, spec.replications);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const MetricsSummary& summary = summaries[i];
        csv << sweep_variable_name(spec.sweep_variable) << ','
            << format_double(sweep_value) << ','
            << mechanism_name(points[i].mechanism.mechanism) << ','
            << effective_delta(points[i].mechanism) << ','
            << summary.replications << ','
            << format_double(summary.mean_welfare) << ','
            << format_double(summary.welfare_std) << ','
            << format_double(summary.mean_winner_count) << ','
            << format_double(summary.mean_revenue) << ','
            << spec.generator.seed << '\n';
      }
    }
  }
  return csv.str();
}

AuditResult run_audit(const std::vector<ExperimentSpec>& raw_specs,
                      const RunOverrides& overrides) {
  std::vector<ExperimentSpec> specs;
  specs.reserve(raw_specs.size());
  for (const ExperimentSpec& spec : raw_specs) {
    specs.push_back(apply_overrides(spec, overrides));
  }
  validate_specs(specs);

  AuditResult result;
  for (const ExperimentSpec& spec : specs) {
    for (double sweep_value : spec.sweep_values) {
      for (const MechanismConfig& mech : spec.mechanisms) {
        const MechanismConfig adjusted = mechanism_at(spec, sweep_value, mech);
        const GeneratorConfig gen = generator_at(spec, sweep_value, adjusted);
        for (long long rep = 0; rep < spec.replications; ++rep) {
          const Instance instance = generate_instance(gen, static_cast<std::uint64_t>(rep));
          const AuctionOutcome outcome = clear_mechanism(instance, adjusted);
          audit_outcome(instance, outcome, result.report);
          if (!scs_holds(instance, outcome)) ++result.scs_diagnostic_failures;
        }
      }
    }

    // Misreport probes run against the first sweep point's market with the
    // first greedy mechanism config (or the default when none is listed).
    if (spec.manipulation_instances > 0) {
      MechanismConfig probe_mech = gmwd_with_delta(spec.generator.delta);
      for (const MechanismConfig& mech : spec.mechanisms) {
        if (mech.mechanism == MechanismId::kGmwd) {
          probe_mech = mech;
          break;
        }
      }
      const GeneratorConfig gen =
          generator_at(spec, spec.sweep_values.front(), probe_mech);
      for (long long rep = 0; rep < spec.manipulation_instances; ++rep) {
        const Instance instance = generate_instance(gen, static_cast<std::uint64_t>(rep));
        for (const Bid& bid : instance.bids) {
          long long samples = 0;
          const double gain = manipulation_gain_search(
              instance, bid.buyer_id, spec.manipulation_multipliers, &samples);
          result.manipulation_gains.push_back(gain);
          result.report.manipulation_samples += samples;
          result.report.max_manipulation_gain =
              std::max(result.report.max_manipulation_gain, gain);
        }
      }
    }
  }
  return result;
}

nlohmann::json AuditResult::to_json() const {
  json histogram = json::object();
  const auto bucket_of = [](double gain) -> const char* {
    if (gain <= 0.0) return "<=0";
    if (gain <= 1e-9) return "(0,1e-9]";
    if (gain <= 1e-6) return "(1e-9,1e-6]";
    if (gain <= 1e-3) return "(1e-6,1e-3]";
    if (gain <= 1.0) return "(1e-3,1]";
    return ">1";
  };
  for (const char* bucket :
       {"<=0", "(0,1e-9]", "(1e-9,1e-6]", "(1e-6,1e-3]", "(1e-3,1]", ">1"}) {
    histogram[bucket] = 0;
  }
  for (double gain : manipulation_gains) {
    histogram[bucket_of(gain)] = histogram[bucket_of(gain)].get<long long>() + 1;
  }

  json j;
  j["instances_checked"] = report.instances_checked;
  j["ir_violations"] = report.ir_violations;
  j["bb_violations"] = report.bb_violations;
  j["max_manipulation_gain"] = report.max_manipulation_gain;
  j["manipulation_samples"] = report.manipulation_samples;
  j["scs_diagnostic_failures"] = scs_diagnostic_failures;
  j["manipulation_gain_histogram"] = histogram;
  return j;
}

int cmd_clear(const std::string& instance_path, const std::string& out_path,
              const MechanismConfig& mechanism, std::optional<int> delta_override) {
  Instance instance = read_instance_file(instance_path);
  if (delta_override) {
    if (*delta_override < 0) {
      throw ValidationError("delta override must be non-negative");
    }
    for (Bid& bid : instance.bids) {
      for (std::size_t k = 0; k < bid.base_demand.size(); ++k) {
        bid.adjust_range[k] = std::min(*delta_override, bid.base_demand[k]);
      }
    }
  }

  const AuctionOutcome outcome = clear_mechanism(instance, mechanism);
  const bool ir_ok = check_individual_rationality(instance, outcome);
  const bool bb_ok = check_budget_balance(instance, outcome);

  nlohmann::json j = outcome_to_json(outcome);
  j["audit"]["individual_rationality"] = ir_ok;
  j["audit"]["budget_balance"] = bb_ok;
  write_text_file(out_path, j.dump(2) + "\n");
  return (ir_ok && bb_ok) ? 0 : 2;
}

int cmd_experiment(const std::vector<ExperimentSpec>& specs, const RunOverrides& overrides,
                   const std::string& out_path) {
  write_text_file(out_path, run_experiments_csv(specs, overrides));
  return 0;
}

int cmd_audit(const std::vector<ExperimentSpec>& specs, const RunOverrides& overrides,
              const std::string& out_path) {
  const AuditResult result = run_audit(specs, overrides);
  write_text_file(out_path, result.to_json().dump(2) + "\n");
  return (result.report.ir_violations == 0 && result.report.bb_violations == 0) ? 0 : 2;
}

}  // namespace flexauction
