#pragma once

#include <cstdint>
#include <vector>

#include "share/allocation.hpp"
#include "share/foraging.hpp"

namespace share {

/// Per-metric replication record; statistics are recomputable from the
/// stored per-run values and seeds.
struct ExperimentStats {
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;

  int count() const { return static_cast<int>(values.size()); }
  double mean() const;
  double stddev() const;  // sample standard deviation
};

/// true iff some channel appears in the selections of two distinct networks.
bool collision_occurred(const ChannelAssignment& assignment);

/// First round after which max |delta| stays below `tolerance` for the rest
/// of the trace. Throws on a trace that did not end converged.
int measured_convergence_rounds(const AllocationTrace& trace, double tolerance);

struct SelectionOutcome {
  double fitness = 0.0;
  bool collision = false;
};

/// One seeded selection replication over a fresh mediator.
SelectionOutcome run_selection_once(int num_channels, const std::vector<std::string>& network_ids,
                                    const std::vector<int>& budgets,
                                    const StrategyAssignment& assignment, std::uint64_t seed);

struct SelectionStats {
  ExperimentStats fitness;
  std::vector<bool> collisions;

  double collision_probability() const;
};

/// Replicated selection with per-replication seeds derived from the master
/// seed by the fixed splitting rule; deterministic for a given master seed.
SelectionStats replicate_selection(int num_channels, const std::vector<std::string>& network_ids,
                                   const std::vector<int>& budgets,
                                   const StrategyAssignment& assignment, int runs,
                                   std::uint64_t master_seed);

}  // namespace share
