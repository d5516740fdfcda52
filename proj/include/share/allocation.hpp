#pragma once

#include <string>
#include <utility>
#include <vector>

#include "share/mediator.hpp"
#include "share/model_core.hpp"

namespace share {

struct DisturbanceEvent {
  enum class Kind { Silence, Delete };
  Kind kind = Kind::Silence;
  std::string network_id;
  int sub_index = 1;    // 1-based sub-species index within the network
  int start_round = 1;
  int end_round = 1;    // inclusive; ignored for Delete
};

struct RoundSnapshot {
  int round = 0;
  std::vector<Eigen::VectorXd> sub_shares;  // one vector per network, per-round copy
  std::vector<double> totals;
  double max_abs_delta = 0.0;
  std::vector<std::string> event_markers;
};

struct AllocationTrace {
  std::vector<std::string> network_ids;
  std::vector<RoundSnapshot> rounds;
};

/// Runs the synchronous share-allocation rounds through the mediator: each
/// round every network fetches its sanitized foreign sum, steps all its
/// sub-species, and reports its new total. Disturbances fire at their
/// scheduled rounds; a silenced sub-species holds share zero and is
/// re-seeded with `reseed_share` when its window ends.
std::pair<EquilibriumReport, AllocationTrace> run_allocation(
    std::vector<NetworkAllocState> networks, const CompetitionParams& params,
    const std::vector<DisturbanceEvent>& disturbances, Mediator& mediator,
    double reseed_share = 0.1);

/// Channels a network may occupy given its (normalized) total share:
/// floor(S_i) + 1, never less than one.
int allocated_channel_count(double total_share);

/// Trims per-network channel budgets until their sum fits in N, dropping
/// from the entry whose share has the smallest fractional part (ties break
/// toward the higher network index), never below one channel.
std::vector<int> clamp_channel_budgets(const std::vector<int>& counts,
                                       const std::vector<double>& shares, int num_channels);

}  // namespace share
