#include "share/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace share {

namespace {

int find_network(const std::vector<NetworkAllocState>& networks, const std::string& id) {
  for (std::size_t i = 0; i < networks.size(); ++i)
    if (networks[i].network_id == id) return static_cast<int>(i);
  throw Error("disturbance targets unknown network " + id);
}

void remove_sub_species(NetworkAllocState& net, int sub_index_1based) {
  if (sub_index_1based < 1 || sub_index_1based > net.requirement)
    throw Error("disturbance targets missing sub-species of " + net.network_id);
  if (net.requirement == 1) throw Error("cannot delete the last sub-species of " + net.network_id);

  Eigen::VectorXd kept(net.requirement - 1);
  int out = 0;
  for (int k = 0; k < net.requirement; ++k)
    if (k != sub_index_1based - 1) kept[out++] = net.sub_shares[k];
  net.sub_shares = std::move(kept);
  net.requirement -= 1;
}

}  // namespace

std::pair<EquilibriumReport, AllocationTrace> run_allocation(
    std::vector<NetworkAllocState> networks, const CompetitionParams& params,
    const std::vector<DisturbanceEvent>& disturbances, Mediator& mediator, double reseed_share) {
  params.validate();
  if (networks.empty()) throw Error("run_allocation: no networks");
  for (const auto& net : networks) net.validate();
  for (const auto& ev : disturbances) {
    const auto& net = networks[static_cast<std::size_t>(find_network(networks, ev.network_id))];
    if (ev.sub_index < 1 || ev.sub_index > net.requirement)
      throw Error("disturbance targets missing sub-species of " + ev.network_id);
    if (ev.kind == DisturbanceEvent::Kind::Silence && ev.start_round > ev.end_round)
      throw Error("silence window must satisfy start_round <= end_round");
  }

  const std::size_t n = networks.size();
  AllocationTrace trace;
  for (const auto& net : networks) trace.network_ids.push_back(net.network_id);

  EquilibriumReport report;

  // Degenerate N == n: nothing to contest, everyone reports zero.
  if (params.capacity == 0.0) {
    for (auto& net : networks) {
      net.sub_shares.setZero();
      mediator.report_share(net.network_id, 0.0);
    }
    report.converged = true;
    report.final_states = networks;
    report.raw_totals.assign(n, 0.0);
    report.normalized_totals.assign(n, 0.0);
    return {report, trace};
  }

  for (const auto& net : networks) mediator.report_share(net.network_id, net.total());

  {
    RoundSnapshot initial;
    initial.round = 0;
    initial.max_abs_delta = std::numeric_limits<double>::infinity();
    for (const auto& net : networks) {
      initial.sub_shares.push_back(net.sub_shares);
      initial.totals.push_back(net.total());
    }
    trace.rounds.push_back(std::move(initial));
  }

  bool converged = false;
  int round = 0;
  while (round < params.max_rounds && !converged) {
    ++round;
    RoundSnapshot snap;
    snap.round = round;

    bool events_outstanding = false;
    for (const auto& ev : disturbances) {
      const int idx = find_network(networks, ev.network_id);
      auto& net = networks[static_cast<std::size_t>(idx)];
      if (ev.kind == DisturbanceEvent::Kind::Delete) {
        if (ev.start_round == round) {
          remove_sub_species(net, ev.sub_index);
          snap.event_markers.push_back("delete:" + ev.network_id + "," +
                                       std::to_string(ev.sub_index));
        }
        if (ev.start_round > round) events_outstanding = true;
      } else {  // Silence
        if (ev.start_round == round) {
          net.sub_shares[ev.sub_index - 1] = 0.0;  // zero share is absorbing until re-seeded
          snap.event_markers.push_back("silence:" + ev.network_id + "," +
                                       std::to_string(ev.sub_index));
        }
        if (ev.end_round + 1 == round) {
          net.sub_shares[ev.sub_index - 1] = reseed_share;
          snap.event_markers.push_back("release:" + ev.network_id + "," +
                                       std::to_string(ev.sub_index));
        }
        if (ev.end_round + 1 > round) events_outstanding = true;
      }
    }

    // All betas are snapshots of the previous round's reports; only then do
    // the networks step and re-report.
    std::vector<double> betas(n);
    for (std::size_t i = 0; i < n; ++i) betas[i] = mediator.sanitized_sum(networks[i].network_id);

    double round_max_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto [next, max_abs_delta] = step_network(networks[i], betas[i], params);
      networks[i] = std::move(next);
      round_max_delta = std::max(round_max_delta, max_abs_delta);
    }
    for (const auto& net : networks) mediator.report_share(net.network_id, net.total());

    snap.max_abs_delta = round_max_delta;
    for (const auto& net : networks) {
      snap.sub_shares.push_back(net.sub_shares);
      snap.totals.push_back(net.total());
    }
    trace.rounds.push_back(std::move(snap));

    converged = round_max_delta < params.tolerance && !events_outstanding;
  }

  report.converged = converged;
  report.rounds = round;
  report.final_states = networks;
  double raw_sum = 0.0;
  for (const auto& net : networks) {
    report.raw_totals.push_back(net.total());
    raw_sum += net.total();
  }
  report.normalized_totals.assign(n, 0.0);
  if (raw_sum > 0.0)
    for (std::size_t i = 0; i < n; ++i)
      report.normalized_totals[i] = report.raw_totals[i] * params.capacity / raw_sum;
  return {report, trace};
}

int allocated_channel_count(double total_share) {
  if (total_share < 0.0) throw Error("allocated_channel_count: share must be >= 0");
  return static_cast<int>(std::floor(total_share)) + 1;
}

std::vector<int> clamp_channel_budgets(const std::vector<int>& counts,
                                       const std::vector<double>& shares, int num_channels) {
  if (counts.size() != shares.size()) throw Error("clamp: counts/shares length mismatch");
  if (num_channels < static_cast<int>(counts.size())) throw Error("insufficient channels");
  for (int c : counts)
    if (c < 1) throw Error("clamp: every budget must be >= 1");

  std::vector<int> clamped = counts;
  long total = 0;
  for (int c : clamped) total += c;
  while (total > num_channels) {
    int victim = -1;
    double victim_frac = 0.0;
    for (std::size_t i = 0; i < clamped.size(); ++i) {
      if (clamped[i] <= 1) continue;
      const double frac = shares[i] - std::floor(shares[i]);
      if (victim < 0 || frac < victim_frac ||
          (frac == victim_frac && static_cast<int>(i) > victim)) {
        victim = static_cast<int>(i);
        victim_frac = frac;
      }
    }
    if (victim < 0) break;  // everyone at the floor of one channel
    --clamped[static_cast<std::size_t>(victim)];
    --total;
  }
  return clamped;
}

}  // namespace share
