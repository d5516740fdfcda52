#include "share/foraging.hpp"

#include <algorithm>
#include <numeric>

namespace share {

StrategyAssignment StrategyAssignment::all_share(int n) {
  return {std::vector<Strategy>(static_cast<std::size_t>(n), Strategy::ShareGreedy)};
}

StrategyAssignment StrategyAssignment::all_random(int n) {
  return {std::vector<Strategy>(static_cast<std::size_t>(n), Strategy::UniformRandom)};
}

StrategyAssignment StrategyAssignment::hybrid1(int n) {
  auto a = all_share(n);
  if (n >= 1) a.per_network[0] = Strategy::UniformRandom;
  return a;
}

StrategyAssignment StrategyAssignment::hybrid2(int n) {
  auto a = all_share(n);
  for (int i = 0; i < n / 2; ++i) a.per_network[static_cast<std::size_t>(i)] = Strategy::UniformRandom;
  return a;
}

StrategyAssignment StrategyAssignment::preset(const std::string& name, int n) {
  if (name == "all_share") return all_share(n);
  if (name == "all_random") return all_random(n);
  if (name == "hybrid1") return hybrid1(n);
  if (name == "hybrid2") return hybrid2(n);
  throw Error("unknown strategy preset: " + name);
}

std::vector<int> ChannelAssignment::occupancy() const {
  std::vector<int> counts(static_cast<std::size_t>(num_channels), 0);
  for (const auto& set : channels)
    for (int h : set) ++counts[static_cast<std::size_t>(h)];
  return counts;
}

std::vector<double> ChannelAssignment::agent_fitness() const {
  const auto counts = occupancy();
  std::vector<double> fitness;
  for (const auto& set : channels)
    for (int h : set) fitness.push_back(1.0 / counts[static_cast<std::size_t>(h)]);
  return fitness;
}

int greedy_pick(const std::vector<Selectivity>& selectivities, const std::set<int>& own_channels) {
  int best = -1;
  for (std::size_t h = 0; h < selectivities.size(); ++h) {
    if (own_channels.count(static_cast<int>(h))) continue;
    if (best < 0 || selectivity_less(selectivities[static_cast<std::size_t>(best)],
                                     selectivities[h]))
      best = static_cast<int>(h);
  }
  if (best < 0) throw Error("budget exceeds channels");
  return best;
}

int random_pick(int num_channels, const std::set<int>& own_channels, std::mt19937_64& rng) {
  if (static_cast<int>(own_channels.size()) >= num_channels)
    throw Error("budget exceeds channels");
  std::vector<int> free_channels;
  for (int h = 0; h < num_channels; ++h)
    if (!own_channels.count(h)) free_channels.push_back(h);
  std::uniform_int_distribution<std::size_t> pick(0, free_channels.size() - 1);
  return free_channels[pick(rng)];
}

ChannelAssignment run_selection(const std::vector<std::string>& network_ids,
                                const std::vector<int>& budgets,
                                const StrategyAssignment& assignment, Mediator& mediator,
                                std::mt19937_64& rng) {
  const std::size_t n = network_ids.size();
  if (budgets.size() != n || assignment.per_network.size() != n)
    throw Error("run_selection: ids, budgets and strategies must align");
  long total_budget = std::accumulate(budgets.begin(), budgets.end(), 0L);
  if (total_budget > mediator.num_channels())
    throw Error("run_selection: total budget exceeds channel count");
  for (int b : budgets)
    if (b < 1) throw Error("run_selection: every budget must be >= 1");

  ChannelAssignment result;
  result.num_channels = mediator.num_channels();
  result.network_ids = network_ids;
  result.channels.assign(n, {});

  std::vector<std::set<int>> own(n);
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<int>(result.channels[i].size()) >= budgets[i]) continue;
      int pick;
      if (assignment.per_network[i] == Strategy::ShareGreedy) {
        pick = greedy_pick(mediator.selectivity_vector(network_ids[i]), own[i]);
      } else {
        pick = random_pick(mediator.num_channels(), own[i], rng);
      }
      mediator.record_selection(network_ids[i], pick);
      result.channels[i].push_back(pick);
      own[i].insert(pick);
      progressed = true;
    }
  }
  return result;
}

double system_fitness(const ChannelAssignment& assignment) {
  const auto fitness = assignment.agent_fitness();
  if (fitness.empty()) throw Error("system_fitness: no agents");
  return *std::min_element(fitness.begin(), fitness.end());
}

bool ess_deviation_check(const ChannelAssignment& assignment) {
  const auto counts = assignment.occupancy();
  for (const auto& set : assignment.channels) {
    for (int h : set) {
      const int y_h = counts[static_cast<std::size_t>(h)];
      for (int g = 0; g < assignment.num_channels; ++g) {
        if (g == h) continue;
        // Vacate h, join g: the deviator's fitness becomes 1/(y_g + 1).
        if (counts[static_cast<std::size_t>(g)] + 1 < y_h) return false;
      }
    }
  }
  return true;
}

}  // namespace share
