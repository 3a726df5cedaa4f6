// Command-line front end: ad-hoc market clearing, Monte Carlo comparison
// sweeps (with the fig1..fig4 presets), and economic-property audits.
//
// Exit codes: 0 success, 1 validation error, 2 property violation,
// 3 internal error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexauction/experiment.hpp"
#include "flexauction/io.hpp"

namespace {

using namespace flexauction;

std::vector<ExperimentSpec> load_specs(const std::string& preset,
                                       const std::string& spec_path) {
  if (!preset.empty() && !spec_path.empty()) {
    throw ValidationError("give either --preset or --spec, not both");
  }
  if (!preset.empty()) {
    return preset_experiments(preset);
  }
  if (!spec_path.empty()) {
    auto specs = experiment_specs_from_json(read_json_file(spec_path));
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (specs[i].name.empty()) {
        specs[i].name = spec_path + "#" + std::to_string(i);
      }
    }
    return specs;
  }
  throw ValidationError("one of --preset or --spec is required");
}

RunOverrides make_overrides(const std::optional<long long>& replications,
                            const std::optional<std::uint64_t>& seed) {
  RunOverrides overrides;
  overrides.replications = replications;
  overrides.seed = seed;
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible-bidding combinatorial spectrum auction engine"};
  app.require_subcommand(1);

  // clear ------------------------------------------------------------------
  auto* clear_cmd = app.add_subcommand("clear", "Clear one market instance file");
  std::string instance_path, clear_out = "outcome.json";
  std::string clear_mechanism = "gmwd", clear_policy = "break";
  int clear_num_virtual = 3;
  std::optional<int> clear_delta;
  clear_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
  clear_cmd->add_option("--out", clear_out, "Outcome JSON file");
  clear_cmd->add_option("--mechanism", clear_mechanism, "gmwd, tcda or thimble");
  clear_cmd->add_option("--policy", clear_policy, "break or skip (gmwd only)");
  clear_cmd->add_option("--num-virtual", clear_num_virtual,
                        "Virtual bids per buyer (thimble only)");
  clear_cmd->add_option("--delta", clear_delta,
                        "Override every bid's adjustment range with min(delta, demand)");

  // experiment ---------------------------------------------------------------
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Run a Monte Carlo comparison sweep to CSV");
  std::string experiment_preset, experiment_spec, experiment_out;
  std::optional<long long> experiment_reps;
  std::optional<std::uint64_t> experiment_seed;
  experiment_cmd->add_option("--preset", experiment_preset, "fig1, fig2, fig3 or fig4");
  experiment_cmd->add_option("--spec", experiment_spec, "Experiment spec JSON file");
  experiment_cmd->add_option("--out", experiment_out, "Output CSV path");
  experiment_cmd->add_option("--replications", experiment_reps,
                             "Override replications per grid point");
  experiment_cmd->add_option("--seed", experiment_seed, "Override the generator seed");

  // audit --------------------------------------------------------------------
  auto* audit_cmd =
      app.add_subcommand("audit", "Audit economic properties over a spec's instances");
  std::string audit_preset, audit_spec, audit_out;
  std::optional<long long> audit_reps;
  std::optional<std::uint64_t> audit_seed;
  std::optional<long long> audit_manipulation;
  audit_cmd->add_option("--preset", audit_preset, "fig1, fig2, fig3 or fig4");
  audit_cmd->add_option("--spec", audit_spec, "Experiment spec JSON file");
  audit_cmd->add_option("--out", audit_out, "Report JSON path");
  audit_cmd->add_option("--replications", audit_reps,
                        "Override replications per grid point");
  audit_cmd->add_option("--seed", audit_seed, "Override the generator seed");
  audit_cmd->add_option("--manipulation-instances", audit_manipulation,
                        "Replications to probe for profitable misreports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (clear_cmd->parsed()) {
      MechanismConfig mech;
      mech.mechanism = mechanism_from_name(clear_mechanism);
      if (clear_policy == "break") {
        mech.policy = StopPolicy::kBreak;
      } else if (clear_policy == "skip") {
        mech.policy = StopPolicy::kSkip;
      } else {
        throw ValidationError("unknown policy '" + clear_policy + "'");
      }
      mech.num_virtual = clear_num_virtual;
      return cmd_clear(instance_path, clear_out, mech, clear_delta);
    }

    if (experiment_cmd->parsed()) {
      auto specs = load_specs(experiment_preset, experiment_spec);
      std::string out = experiment_out;
      if (out.empty()) out = specs.front().output_path;
      if (out.empty()) {
        out = (experiment_preset.empty() ? std::string{"experiment"} : experiment_preset) +
              ".csv";
      }
      const int code =
          cmd_experiment(specs, make_overrides(experiment_reps, experiment_seed), out);
      std::cout << "wrote " << out << "\n";
      return code;
    }

    if (audit_cmd->parsed()) {
      auto specs = load_specs(audit_preset, audit_spec);
      if (audit_manipulation) {
        for (ExperimentSpec& spec : specs) {
          spec.manipulation_instances = *audit_manipulation;
        }
      }
      std::string out = audit_out.empty() ? std::string{"audit.json"} : audit_out;
      const int code = cmd_audit(specs, make_overrides(audit_reps, audit_seed), out);
      std::cout << "wrote " << out << (code == 0 ? " (no violations)\n" : " (VIOLATIONS)\n");
      return code;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
