#include "share/metrics.hpp"

#include <cmath>
#include <set>

#include "share/rng.hpp"

namespace share {

double ExperimentStats::mean() const {
  if (values.empty()) throw Error("stats: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / values.size();
}

double ExperimentStats::stddev() const {
  if (values.size() < 2) return 0.0;
  const double m = mean();
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / (values.size() - 1));
}

bool collision_occurred(const ChannelAssignment& assignment) {
  std::set<int> seen;
  for (const auto& set : assignment.channels) {
    for (int h : set)
      if (!seen.insert(h).second) return true;
  }
  return false;
}

int measured_convergence_rounds(const AllocationTrace& trace, double tolerance) {
  if (trace.rounds.empty() || !(trace.rounds.back().max_abs_delta < tolerance))
    throw Error("measured_convergence_rounds: trace did not converge");
  int first_quiet = trace.rounds.back().round;
  for (auto it = trace.rounds.rbegin(); it != trace.rounds.rend(); ++it) {
    if (!(it->max_abs_delta < tolerance)) break;
    first_quiet = it->round;
  }
  return first_quiet;
}

SelectionOutcome run_selection_once(int num_channels, const std::vector<std::string>& network_ids,
                                    const std::vector<int>& budgets,
                                    const StrategyAssignment& assignment, std::uint64_t seed) {
  Mediator mediator(num_channels);
  for (const auto& id : network_ids) mediator.register_network(id);
  std::mt19937_64 rng(seed);
  const ChannelAssignment result =
      run_selection(network_ids, budgets, assignment, mediator, rng);
  return {system_fitness(result), collision_occurred(result)};
}

double SelectionStats::collision_probability() const {
  if (collisions.empty()) throw Error("stats: no replications");
  double hits = 0.0;
  for (bool c : collisions) hits += c ? 1.0 : 0.0;
  return hits / collisions.size();
}

SelectionStats replicate_selection(int num_channels, const std::vector<std::string>& network_ids,
                                   const std::vector<int>& budgets,
                                   const StrategyAssignment& assignment, int runs,
                                   std::uint64_t master_seed) {
  if (runs < 1) throw Error("replicate_selection: runs must be >= 1");
  SelectionStats stats;
  for (int k = 0; k < runs; ++k) {
    const std::uint64_t seed = split_seed(master_seed, static_cast<std::uint64_t>(k));
    const SelectionOutcome outcome =
        run_selection_once(num_channels, network_ids, budgets, assignment, seed);
    stats.fitness.values.push_back(outcome.fitness);
    stats.fitness.seeds.push_back(seed);
    stats.collisions.push_back(outcome.collision);
  }
  return stats;
}

}  // namespace share
