#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "share/params.hpp"

namespace share {

/// One network's view of the competition: its integer bandwidth
/// requirement and one share per sub-species.
struct NetworkAllocState {
  std::string network_id;
  int requirement = 1;
  Eigen::VectorXd sub_shares;  // length == requirement, entries >= 0

  double total() const { return sub_shares.sum(); }
  void validate() const;
};

struct EquilibriumReport {
  bool converged = false;
  int rounds = 0;
  std::vector<NetworkAllocState> final_states;
  std::vector<double> raw_totals;
  std::vector<double> normalized_totals;  // rescaled to sum to capacity
};

/// Per-iteration change of one sub-species' share. Pure. Throws on
/// capacity == 0 (the degenerate N == n case is handled by callers).
double growth_delta(double sub_share, double own_siblings_sum, double foreign_sum,
                    const CompetitionParams& params);

/// Applies one synchronous round to a network: sibling sums are taken from
/// the state at round start, updates clamp at zero. Returns the updated
/// state and the largest |delta| observed.
std::pair<NetworkAllocState, double> step_network(const NetworkAllocState& state, double beta,
                                                  const CompetitionParams& params);

/// Proportional split of the contested channels: S_i = R_i (N - n) / sum R.
std::vector<double> closed_form_equilibrium(const std::vector<int>& requirements, int num_channels);

/// Exact interior rest point of the coupled dynamics under symmetric
/// coupling: S_i = R_i (N - n) / (1 + alpha (l - 1)) with l = sum R.
/// Coincides with closed_form_equilibrium only as alpha -> 1.
std::vector<double> interior_fixed_point(const std::vector<int>& requirements, int num_channels,
                                         double alpha);

/// Closed-form Jacobian eigenvalues of the linearized l-dimensional system:
/// (lambda_major, lambda_minor) = (-r/l - (l-1) r alpha / l, r (alpha-1)/l).
std::pair<double, double> stability_eigenvalues(int total_sub_species,
                                                const CompetitionParams& params);

/// Logistic time-to-target with the foreign mass frozen at A = (l-1) s0.
/// Throws when s_target >= C - alpha A (beyond the logistic asymptote).
double predicted_convergence_time(double s0, double s_target, const CompetitionParams& params,
                                  int total_sub_species);

/// Weighted fairness index in (0, 1]; equals 1 iff shares are proportional
/// to requirements. Throws when every share is zero.
double fairness_index(const std::vector<double>& shares, const std::vector<double>& requirements);

}  // namespace share
