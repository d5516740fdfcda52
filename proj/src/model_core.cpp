#include "share/model_core.hpp"

#include <cmath>
#include <numeric>

#include "share/error.hpp"

namespace share {

void NetworkAllocState::validate() const {
  if (requirement < 1) throw Error("network " + network_id + ": requirement must be >= 1");
  if (sub_shares.size() != requirement)
    throw Error("network " + network_id + ": sub_shares length must equal requirement");
  if ((sub_shares.array() < 0.0).any())
    throw Error("network " + network_id + ": negative sub-species share");
}

double growth_delta(double sub_share, double own_siblings_sum, double foreign_sum,
                    const CompetitionParams& params) {
  if (params.capacity <= 0.0) throw Error("growth_delta: capacity must be > 0");
  const double crowd = sub_share + params.alpha * (own_siblings_sum + foreign_sum);
  return params.r * sub_share * (1.0 - crowd / params.capacity);
}

std::pair<NetworkAllocState, double> step_network(const NetworkAllocState& state, double beta,
                                                  const CompetitionParams& params) {
  if (beta < 0.0) throw Error("step_network: beta must be >= 0");
  state.validate();

  NetworkAllocState next = state;
  const double own_total = state.total();
  double max_abs_delta = 0.0;
  for (Eigen::Index k = 0; k < state.sub_shares.size(); ++k) {
    const double s = state.sub_shares[k];
    const double delta = growth_delta(s, own_total - s, beta, params);
    next.sub_shares[k] = std::max(0.0, s + params.step * delta);
    max_abs_delta = std::max(max_abs_delta, std::abs(delta));
  }
  return {std::move(next), max_abs_delta};
}

namespace {

double requirement_sum(const std::vector<int>& requirements) {
  double total = 0.0;
  for (int r : requirements) {
    if (r < 1) throw Error("requirements: every entry must be >= 1");
    total += r;
  }
  return total;
}

}  // namespace

std::vector<double> closed_form_equilibrium(const std::vector<int>& requirements,
                                            int num_channels) {
  const int n = static_cast<int>(requirements.size());
  if (num_channels < n) throw Error("insufficient channels");
  const double total_req = requirement_sum(requirements);
  const double capacity = num_channels - n;

  std::vector<double> shares(requirements.size());
  for (std::size_t i = 0; i < requirements.size(); ++i)
    shares[i] = requirements[i] * capacity / total_req;
  return shares;
}

std::vector<double> interior_fixed_point(const std::vector<int>& requirements, int num_channels,
                                         double alpha) {
  const int n = static_cast<int>(requirements.size());
  if (num_channels < n) throw Error("insufficient channels");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha: must be in (0, 1]");
  const double l = requirement_sum(requirements);
  const double capacity = num_channels - n;
  const double per_sub = capacity / (1.0 + alpha * (l - 1.0));

  std::vector<double> shares(requirements.size());
  for (std::size_t i = 0; i < requirements.size(); ++i) shares[i] = requirements[i] * per_sub;
  return shares;
}

std::pair<double, double> stability_eigenvalues(int total_sub_species,
                                                const CompetitionParams& params) {
  if (total_sub_species < 1) throw Error("stability_eigenvalues: l must be >= 1");
  const double l = total_sub_species;
  const double major = -params.r / l - (l - 1.0) * params.r * params.alpha / l;
  const double minor = params.r * (params.alpha - 1.0) / l;
  return {major, minor};
}

double predicted_convergence_time(double s0, double s_target, const CompetitionParams& params,
                                  int total_sub_species) {
  if (!(s0 > 0.0)) throw Error("predicted_convergence_time: s0 must be > 0");
  if (s_target < s0) throw Error("predicted_convergence_time: s_target must be >= s0");
  const double capacity = params.capacity;
  const double foreign_mass = (total_sub_species - 1.0) * s0;
  const double asymptote = capacity - params.alpha * foreign_mass;
  if (s_target >= asymptote) throw Error("target beyond logistic asymptote");

  return capacity / (params.r * asymptote) *
         std::log(s_target * (asymptote - s0) / (s0 * (asymptote - s_target)));
}

double fairness_index(const std::vector<double>& shares,
                      const std::vector<double>& requirements) {
  if (shares.empty() || shares.size() != requirements.size())
    throw Error("fairness_index: shares and requirements must be same non-zero length");

  double share_sum = 0.0, req_sum = 0.0, weighted_sq = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (!(requirements[i] > 0.0)) throw Error("fairness_index: requirements must be > 0");
    share_sum += shares[i];
    req_sum += requirements[i];
    const double ratio = shares[i] / requirements[i];
    weighted_sq += requirements[i] * ratio * ratio;
  }
  if (weighted_sq == 0.0) throw Error("fairness undefined");
  return share_sum * share_sum / (req_sum * weighted_sq);
}

}  // namespace share
