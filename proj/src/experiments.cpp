#include "share/experiments.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "share/rng.hpp"

namespace share {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<NetworkAllocState> initial_states(const std::vector<std::string>& ids,
                                              const std::vector<int>& requirements, double s0) {
  std::vector<NetworkAllocState> states;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    NetworkAllocState state;
    state.network_id = ids[i];
    state.requirement = requirements[i];
    state.sub_shares = Eigen::VectorXd::Constant(requirements[i], s0);
    states.push_back(std::move(state));
  }
  return states;
}

std::vector<int> derive_budgets(const std::vector<double>& totals, int num_channels) {
  std::vector<int> budgets;
  for (double t : totals) budgets.push_back(allocated_channel_count(t));
  return clamp_channel_budgets(budgets, totals, num_channels);
}

std::vector<std::string> default_ids(int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back("net" + std::to_string(i));
  return ids;
}

}  // namespace

std::pair<EquilibriumReport, AllocationTrace> run_scenario_allocation(const Scenario& scenario) {
  scenario.validate();
  Mediator mediator(scenario.channels);
  const auto ids = scenario.network_ids();
  for (const auto& id : ids) mediator.register_network(id);
  return run_allocation(initial_states(ids, scenario.requirements(), scenario.s0),
                        scenario.params, scenario.disturbances, mediator, scenario.s0);
}

PipelineResult run_pipeline(const Scenario& scenario, std::uint64_t replication) {
  scenario.validate();
  PipelineResult result;

  Mediator mediator(scenario.channels);
  const auto ids = scenario.network_ids();
  for (const auto& id : ids) mediator.register_network(id);

  try {
    auto [report, trace] =
        run_allocation(initial_states(ids, scenario.requirements(), scenario.s0), scenario.params,
                       scenario.disturbances, mediator, scenario.s0);
    result.report = std::move(report);
    result.trace = std::move(trace);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("allocation", e.what());
  }
  if (!result.report.converged)
    throw NonConvergenceError("no convergence after " + std::to_string(result.report.rounds) +
                              " rounds");

  result.totals_used = scenario.share_mode == ShareMode::Normalized
                           ? result.report.normalized_totals
                           : result.report.raw_totals;
  try {
    result.budgets = derive_budgets(result.totals_used, scenario.channels);
  } catch (const Error& e) {
    throw StageError("budgeting", e.what());
  }

  try {
    const auto assignment = StrategyAssignment::preset(scenario.strategy, scenario.network_count());
    std::mt19937_64 rng(split_seed(scenario.master_seed.value_or(0), replication));
    result.assignment = run_selection(ids, result.budgets, assignment, mediator, rng);
  } catch (const Error& e) {
    throw StageError("selection", e.what());
  }

  result.fitness = system_fitness(result.assignment);
  result.collision = collision_occurred(result.assignment);
  return result;
}

double collision_probability(const Scenario& scenario, int runs, std::uint64_t master_seed) {
  scenario.validate();
  auto [report, trace] = run_scenario_allocation(scenario);
  if (!report.converged) throw NonConvergenceError("no convergence");
  const auto totals = scenario.share_mode == ShareMode::Normalized ? report.normalized_totals
                                                                   : report.raw_totals;
  const auto budgets = derive_budgets(totals, scenario.channels);
  const auto assignment = StrategyAssignment::preset(scenario.strategy, scenario.network_count());
  return replicate_selection(scenario.channels, scenario.network_ids(), budgets, assignment, runs,
                             master_seed)
      .collision_probability();
}

Scenario fig2_scenario() {
  Scenario sc;
  sc.channels = 20;
  sc.networks = {{"net1", 2}, {"net2", 3}};
  sc.params.capacity = 18.0;
  sc.master_seed = 1;
  return sc;
}

Scenario fig3_scenario() {
  Scenario sc = fig2_scenario();
  sc.disturbances = {
      {DisturbanceEvent::Kind::Silence, "net2", 3, 500, 519},
      {DisturbanceEvent::Kind::Delete, "net2", 3, 1000, 1000},
  };
  return sc;
}

FairnessSample fairness_replication(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> requirement(1, 5);
  std::vector<int> reqs;
  for (int i = 0; i < n; ++i) reqs.push_back(requirement(rng));

  Scenario sc;
  sc.channels = 4 * n;
  for (int i = 0; i < n; ++i) sc.networks.push_back({"net" + std::to_string(i + 1), reqs[i]});
  sc.params.capacity = sc.channels - n;

  auto [report, trace] = run_scenario_allocation(sc);
  if (!report.converged) throw NonConvergenceError("fairness replication did not converge");

  std::vector<double> req_d(reqs.begin(), reqs.end());
  const double capacity = sc.params.capacity;
  std::vector<double> equal_split(static_cast<std::size_t>(n), capacity / n);

  FairnessSample sample;
  sample.share_fairness = fairness_index(report.normalized_totals, req_d);
  sample.equal_split_fairness = fairness_index(equal_split, req_d);
  return sample;
}

StrategyPoint fig5_point(int n, const std::string& strategy, int runs, std::uint64_t master_seed,
                         int num_channels) {
  const auto ids = default_ids(n);
  const std::vector<int> budgets(static_cast<std::size_t>(n), 1);
  const auto stats = replicate_selection(num_channels, ids, budgets,
                                         StrategyAssignment::preset(strategy, n), runs, master_seed);
  return {stats.fitness.mean(), stats.collision_probability()};
}

StrategyPoint fig6_point(int sigma, const std::string& strategy, int runs,
                         std::uint64_t master_seed, int n, int mean_requirement,
                         int num_channels) {
  if (sigma < 0 || sigma >= mean_requirement)
    throw Error("fig6: sigma must be in [0, mean_requirement)");
  const auto ids = default_ids(n);
  const auto assignment = StrategyAssignment::preset(strategy, n);

  // Budgets depend only on the drawn requirement vector; the proportional
  // equilibrium split is deterministic, so it is computed once per vector.
  std::map<std::vector<int>, std::vector<int>> budget_cache;

  double fitness_sum = 0.0;
  int collisions = 0;
  std::uniform_int_distribution<int> requirement(mean_requirement - sigma,
                                                 mean_requirement + sigma);
  for (int k = 0; k < runs; ++k) {
    std::mt19937_64 rng(split_seed(master_seed, static_cast<std::uint64_t>(k)));
    std::vector<int> reqs;
    for (int i = 0; i < n; ++i) reqs.push_back(requirement(rng));

    auto it = budget_cache.find(reqs);
    if (it == budget_cache.end()) {
      const auto totals = closed_form_equilibrium(reqs, num_channels);
      it = budget_cache.emplace(reqs, derive_budgets(totals, num_channels)).first;
    }

    Mediator mediator(num_channels);
    for (const auto& id : ids) mediator.register_network(id);
    const auto result = run_selection(ids, it->second, assignment, mediator, rng);
    fitness_sum += system_fitness(result);
    if (collision_occurred(result)) ++collisions;
  }
  return {fitness_sum / runs, static_cast<double>(collisions) / runs};
}

void write_trace_csv(const std::string& path, const Scenario& scenario,
                     const AllocationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);

  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, scenario.hash());
  out << "# scenario_hash=" << hash_buf << "\n";
  out << "# " << scenario.canonical_description() << "\n";

  std::vector<int> sub_counts;
  for (std::size_t i = 0; i < trace.network_ids.size(); ++i)
    sub_counts.push_back(trace.rounds.empty()
                             ? 0
                             : static_cast<int>(trace.rounds.front().sub_shares[i].size()));

  out << "round";
  for (std::size_t i = 0; i < trace.network_ids.size(); ++i) {
    for (int k = 1; k <= sub_counts[i]; ++k)
      out << ",S_" << trace.network_ids[i] << "_" << k;
    out << ",S_" << trace.network_ids[i];
  }
  out << ",max_abs_delta,events\n";

  for (const auto& snap : trace.rounds) {
    out << snap.round;
    for (std::size_t i = 0; i < trace.network_ids.size(); ++i) {
      const auto& subs = snap.sub_shares[i];
      for (int k = 0; k < sub_counts[i]; ++k) {
        out << ",";
        if (k < subs.size()) out << num(subs[k]);  // deleted sub-species leave the column empty
      }
      out << "," << num(snap.totals[i]);
    }
    out << "," << (std::isinf(snap.max_abs_delta) ? "" : num(snap.max_abs_delta)) << ",";
    for (std::size_t e = 0; e < snap.event_markers.size(); ++e) {
      if (e) out << ";";
      out << snap.event_markers[e];
    }
    out << "\n";
  }
}

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string run_trace_experiment(const Scenario& scenario, const std::string& out_dir,
                                 const std::string& file) {
  auto [report, trace] = run_scenario_allocation(scenario);
  if (!report.converged) throw NonConvergenceError("trace experiment did not converge");
  const std::string path = join_path(out_dir, file);
  write_trace_csv(path, scenario, trace);
  return path;
}

std::string run_fig4(int runs, std::uint64_t seed, const std::string& out_dir) {
  const std::string path = join_path(out_dir, "fig4.csv");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# experiment=fig4 seed=" << seed << " runs_per_n=" << runs
      << " n_range=2..10 requirement_range=1..5 channels=4n\n";
  out << "n,replication,seed,share_fairness,equal_split_fairness\n";
  std::uint64_t idx = 0;
  for (int n = 2; n <= 10; ++n) {
    for (int rep = 0; rep < runs; ++rep) {
      const std::uint64_t rep_seed = split_seed(seed, idx++);
      const FairnessSample sample = fairness_replication(n, rep_seed);
      out << n << "," << rep << "," << rep_seed << "," << num(sample.share_fairness) << ","
          << num(sample.equal_split_fairness) << "\n";
    }
  }
  return path;
}

const char* kStrategies[] = {"all_share", "all_random", "hybrid1", "hybrid2"};

std::string run_fig5(int runs, std::uint64_t seed, const std::string& out_dir) {
  const std::string path = join_path(out_dir, "fig5.csv");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# experiment=fig5 seed=" << seed << " runs=" << runs
      << " channels=20 budget_per_network=1 n_range=2..20\n";
  out << "n,strategy,mean_fitness,collision_probability\n";
  std::uint64_t idx = 0;
  for (int n = 2; n <= 20; ++n) {
    for (const char* strategy : kStrategies) {
      const StrategyPoint point = fig5_point(n, strategy, runs, split_seed(seed, idx++));
      out << n << "," << strategy << "," << num(point.mean_fitness) << ","
          << num(point.collision_probability) << "\n";
    }
  }
  return path;
}

std::string run_fig6(int runs, std::uint64_t seed, const std::string& out_dir) {
  const std::string path = join_path(out_dir, "fig6.csv");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# experiment=fig6 seed=" << seed << " runs=" << runs
      << " channels=20 networks=5 mean_requirement=4 sigma_range=0..3\n";
  out << "sigma,strategy,mean_fitness,collision_probability\n";
  std::uint64_t idx = 0;
  for (int sigma = 0; sigma <= 3; ++sigma) {
    for (const char* strategy : kStrategies) {
      const StrategyPoint point = fig6_point(sigma, strategy, runs, split_seed(seed, idx++));
      out << sigma << "," << strategy << "," << num(point.mean_fitness) << ","
          << num(point.collision_probability) << "\n";
    }
  }
  return path;
}

}  // namespace

std::vector<std::string> run_experiment(const std::string& name, const ExperimentOptions& options,
                                        const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::uint64_t seed = options.seed.value_or(1);

  if (name == "fig2") return {run_trace_experiment(fig2_scenario(), out_dir, "fig2.csv")};
  if (name == "fig3") return {run_trace_experiment(fig3_scenario(), out_dir, "fig3.csv")};
  if (name == "fig4") return {run_fig4(options.runs > 0 ? options.runs : 12, seed, out_dir)};
  if (name == "fig5") return {run_fig5(options.runs > 0 ? options.runs : 2000, seed, out_dir)};
  if (name == "fig6") return {run_fig6(options.runs > 0 ? options.runs : 2000, seed, out_dir)};
  throw Error("unknown experiment '" + name + "'; valid names: fig2 fig3 fig4 fig5 fig6");
}

}  // namespace share
