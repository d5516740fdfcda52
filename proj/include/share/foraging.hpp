#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "share/mediator.hpp"

namespace share {

enum class Strategy { ShareGreedy, UniformRandom };

struct StrategyAssignment {
  std::vector<Strategy> per_network;

  static StrategyAssignment all_share(int n);
  static StrategyAssignment all_random(int n);
  /// Exactly one UniformRandom network (the lowest-indexed one).
  static StrategyAssignment hybrid1(int n);
  /// The floor(n/2) lowest-indexed networks take UniformRandom.
  static StrategyAssignment hybrid2(int n);
  static StrategyAssignment preset(const std::string& name, int n);
};

struct ChannelAssignment {
  int num_channels = 0;
  std::vector<std::string> network_ids;
  std::vector<std::vector<int>> channels;  // per-network ordered channel sets

  std::vector<int> occupancy() const;
  /// One entry per selected (network, channel) slot: 1 / y_channel.
  std::vector<double> agent_fitness() const;
};

/// Greedy argmax over channels the network does not already hold.
/// Unoccupied outranks every finite selectivity; ties break to the lowest
/// channel index.
int greedy_pick(const std::vector<Selectivity>& selectivities, const std::set<int>& own_channels);

/// Uniform over the channels this network has not yet taken. The network
/// has no view of other networks' selections.
int random_pick(int num_channels, const std::set<int>& own_channels, std::mt19937_64& rng);

/// Round-robin channel selection (registration order, one agent per turn)
/// until every network holds exactly its budget of channels. Greedy
/// networks query the mediator's selectivity vector; random networks draw
/// from the scenario generator. Every pick is recorded with the mediator.
ChannelAssignment run_selection(const std::vector<std::string>& network_ids,
                                const std::vector<int>& budgets,
                                const StrategyAssignment& assignment, Mediator& mediator,
                                std::mt19937_64& rng);

/// Minimum agent fitness over all selected slots; 1 iff every selected
/// channel is exclusively held.
double system_fitness(const ChannelAssignment& assignment);

/// true iff no single agent can strictly raise its fitness by vacating its
/// channel and joining any other one.
bool ess_deviation_check(const ChannelAssignment& assignment);

}  // namespace share
