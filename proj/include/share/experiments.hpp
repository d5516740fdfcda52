#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "share/metrics.hpp"
#include "share/scenario.hpp"

namespace share {

/// Error carrying the pipeline stage it originated from.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class NonConvergenceError : public StageError {
 public:
  explicit NonConvergenceError(const std::string& message) : StageError("allocation", message) {}
};

struct PipelineResult {
  EquilibriumReport report;
  AllocationTrace trace;
  std::vector<double> totals_used;  // per share_mode
  std::vector<int> budgets;
  ChannelAssignment assignment;
  double fitness = 0.0;
  bool collision = false;
};

/// Allocation -> budgets -> selection -> metrics, as one deterministic run.
/// Throws NonConvergenceError when the allocation stage does not settle.
PipelineResult run_pipeline(const Scenario& scenario, std::uint64_t replication = 0);

/// Allocation stage only, against a fresh mediator.
std::pair<EquilibriumReport, AllocationTrace> run_scenario_allocation(const Scenario& scenario);

/// Fraction of replications in which at least one cross-network collision
/// occurred; replication seeds derive from the master seed.
double collision_probability(const Scenario& scenario, int runs, std::uint64_t master_seed);

// Built-in scenarios behind the experiment drivers.
Scenario fig2_scenario();
Scenario fig3_scenario();

struct FairnessSample {
  double share_fairness = 0.0;
  double equal_split_fairness = 0.0;
};

/// One randomized weighted-fairness replication: n networks, requirements
/// uniform in {1..5}, N = 4n, full allocation dynamics.
FairnessSample fairness_replication(int n, std::uint64_t seed);

struct StrategyPoint {
  double mean_fitness = 0.0;
  double collision_probability = 0.0;
};

/// Fixed single-channel budgets (M_i = 1) over N channels, n networks.
StrategyPoint fig5_point(int n, const std::string& strategy, int runs, std::uint64_t master_seed,
                         int num_channels = 20);

/// Random requirements R_i uniform over integers in [m - sigma, m + sigma];
/// budgets come from the proportional equilibrium split per replication.
StrategyPoint fig6_point(int sigma, const std::string& strategy, int runs,
                         std::uint64_t master_seed, int n = 5, int mean_requirement = 4,
                         int num_channels = 20);

struct ExperimentOptions {
  int runs = 0;  // 0 selects the driver default
  std::optional<std::uint64_t> seed;
};

/// Runs one of the named experiment drivers (fig2..fig6) and writes its CSV
/// files under `out_dir`; returns the written paths.
std::vector<std::string> run_experiment(const std::string& name, const ExperimentOptions& options,
                                        const std::string& out_dir);

/// Per-round trace CSV with a reproducibility metadata header.
void write_trace_csv(const std::string& path, const Scenario& scenario,
                     const AllocationTrace& trace);

}  // namespace share
