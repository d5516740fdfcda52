// Acceptance gate: one line of output per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "share/experiments.hpp"
#include "share/wire.hpp"

using namespace share;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", index, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

bool near(double value, double target, double tol) { return std::abs(value - target) <= tol; }

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Equilibrium reproduction on the reference two-network scenario.

void criterion_equilibrium() {
  const auto start = std::chrono::steady_clock::now();
  const auto [eq, trace] = run_scenario_allocation(fig2_scenario());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool ok = eq.converged && eq.rounds <= 2000 && seconds < 1.0;
  ok = ok && near(eq.raw_totals[0], 7.826087, 1e-3) && near(eq.raw_totals[1], 11.739130, 1e-3);
  ok = ok && near(eq.normalized_totals[0], 7.2, 1e-3) && near(eq.normalized_totals[1], 10.8, 1e-3);
  report(1, ok, "equilibrium reproduction",
         fmt("%d rounds, raw [%.6f, %.6f], normalized [%.6f, %.6f], %.3f s", eq.rounds,
             eq.raw_totals[0], eq.raw_totals[1], eq.normalized_totals[0], eq.normalized_totals[1],
             seconds));
}

// ---------------------------------------------------------------------------
// 2. Weighted fairness over randomized scenarios, against equal split.

void criterion_fairness() {
  int scenarios = 0;
  double worst = 1.0;
  bool ok = true;
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const FairnessSample sample = fairness_replication(n, seed);
      ++scenarios;
      worst = std::min(worst, sample.share_fairness);
      if (sample.share_fairness < 1.0 - 1e-6) ok = false;
      if (sample.equal_split_fairness > sample.share_fairness + 1e-12) ok = false;
    }
  }
  report(2, ok, "weighted fairness",
         fmt("%d randomized scenarios, min fairness %.9f, equal split never ahead", scenarios,
             worst));
}

// ---------------------------------------------------------------------------
// 3. Stability under disturbances plus the eigenvalue grid.

void criterion_stability() {
  const auto [baseline, baseline_trace] = run_scenario_allocation(fig2_scenario());

  Scenario silenced = fig2_scenario();
  silenced.disturbances = {{DisturbanceEvent::Kind::Silence, "net2", 3, 500, 519}};
  const auto [after_silence, silence_trace] = run_scenario_allocation(silenced);
  bool ok = after_silence.converged &&
            near(after_silence.raw_totals[0], baseline.raw_totals[0], 1e-3) &&
            near(after_silence.raw_totals[1], baseline.raw_totals[1], 1e-3);

  Scenario deleted = fig2_scenario();
  deleted.disturbances = {{DisturbanceEvent::Kind::Delete, "net2", 3, 1000, 1000}};
  const auto [after_delete, delete_trace] = run_scenario_allocation(deleted);
  ok = ok && after_delete.converged && near(after_delete.normalized_totals[0], 9.0, 1e-3) &&
       near(after_delete.normalized_totals[1], 9.0, 1e-3);

  int grid_points = 0;
  bool grid_ok = true;
  for (double alpha = 0.05; alpha < 0.951; alpha += 0.05) {
    for (double r = 0.1; r < 1.951; r += 0.05) {
      for (int l = 2; l <= 30; ++l) {
        CompetitionParams params;
        params.alpha = alpha;
        params.r = r;
        params.capacity = 18.0;
        const auto [major, minor] = stability_eigenvalues(l, params);
        ++grid_points;
        if (major >= 0.0 || minor >= 0.0) grid_ok = false;
      }
    }
  }
  ok = ok && grid_ok;
  report(3, ok, "stability",
         fmt("silence recovers to [%.4f, %.4f], delete settles at [%.4f, %.4f], %d eigenvalue "
             "grid points negative",
             after_silence.raw_totals[0], after_silence.raw_totals[1],
             after_delete.normalized_totals[0], after_delete.normalized_totals[1], grid_points));
}

// ---------------------------------------------------------------------------
// 4. Convergence rounds follow a + b ln C.

void criterion_convergence_trend() {
  const std::vector<int> capacities = {9, 18, 36, 72};
  Eigen::MatrixXd design(4, 2);
  Eigen::VectorXd observed(4);
  for (int i = 0; i < 4; ++i) {
    Scenario sc = fig2_scenario();
    sc.channels = capacities[i] + 2;
    sc.params.capacity = capacities[i];
    // r = 1 keeps the approach monotone; near r = 2 a period-2 ringing
    // transient adds deterministic noise that swamps a four-point fit.
    sc.params.r = 1.0;
    const auto [eq, trace] = run_scenario_allocation(sc);
    design(i, 0) = 1.0;
    design(i, 1) = std::log(static_cast<double>(capacities[i]));
    observed(i) = measured_convergence_rounds(trace, 1e-6);
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(observed);
  const Eigen::VectorXd residual = observed - design * coeffs;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (observed.array() - observed.mean()).matrix().squaredNorm();
  const double r_squared = 1.0 - ss_res / ss_tot;

  report(4, r_squared >= 0.9 && coeffs(1) > 0.0, "logarithmic convergence trend",
         fmt("rounds {%g, %g, %g, %g} fit a=%.2f b=%.2f, R^2=%.4f", observed(0), observed(1),
             observed(2), observed(3), coeffs(0), coeffs(1), r_squared));
}

// ---------------------------------------------------------------------------
// 5. Channel selection: greedy optimality, ESS, random collision behaviour.

ChannelAssignment select_once(int channels, const std::vector<int>& budgets,
                              const StrategyAssignment& strategies, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < budgets.size(); ++i) ids.push_back("net" + std::to_string(i + 1));
  Mediator mediator(channels);
  for (const auto& id : ids) mediator.register_network(id);
  std::mt19937_64 rng(seed);
  return run_selection(ids, budgets, strategies, mediator, rng);
}

void criterion_selection() {
  bool greedy_ok = true;
  for (int n = 2; n <= 20; ++n) {
    const std::vector<int> budgets(static_cast<std::size_t>(n), 1);
    const auto result = select_once(20, budgets, StrategyAssignment::all_share(n), 1);
    if (system_fitness(result) != 1.0 || collision_occurred(result)) greedy_ok = false;
  }

  bool ess_ok = true;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> nets(2, 8), budget(1, 4), slack(0, 4);
    const int n = nets(rng);
    std::vector<int> budgets;
    int total = 0;
    for (int i = 0; i < n; ++i) {
      budgets.push_back(budget(rng));
      total += budgets.back();
    }
    const auto result =
        select_once(total + slack(rng), budgets, StrategyAssignment::all_share(n), rng());
    if (!ess_deviation_check(result)) ess_ok = false;
  }

  const auto head_to_head =
      replicate_selection(2, {"net1", "net2"}, {1, 1}, StrategyAssignment::all_random(2), 10000, 3);
  const double p_two = head_to_head.collision_probability();
  const bool coin_ok = std::abs(p_two - 0.5) <= 0.02;

  // Monotone trend in n: no adjacent step may drop by more than 3 sigma and
  // the ends must differ by more than 3 sigma.
  const int runs = 10000;
  std::vector<double> p;
  for (int n = 2; n <= 20; ++n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("net" + std::to_string(i + 1));
    const std::vector<int> budgets(static_cast<std::size_t>(n), 1);
    p.push_back(replicate_selection(20, ids, budgets, StrategyAssignment::all_random(n), runs, 7)
                    .collision_probability());
  }
  const auto sigma = [&](double a, double b) {
    return std::sqrt((a * (1 - a) + b * (1 - b)) / runs);
  };
  bool monotone_ok = p.back() - p.front() > 3 * sigma(p.front(), p.back());
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i + 1] - p[i] < -3 * sigma(p[i], p[i + 1])) monotone_ok = false;

  report(5, greedy_ok && ess_ok && coin_ok && monotone_ok, "channel selection",
         fmt("greedy fitness 1 for n in 2..20, ESS on 100 outcomes %s, two-network random "
             "collision %.4f, random trend %.4f -> %.4f monotone within 3 sigma",
             ess_ok ? "clean" : "violated", p_two, p.front(), p.back()));
}

// ---------------------------------------------------------------------------
// 6. Requirement spread lowers the collision probability.

void criterion_requirement_spread() {
  bool ok = true;
  std::string detail;
  for (const std::string strategy : {"all_random", "hybrid1", "hybrid2"}) {
    // The all-random gap is real but tiny (collision probability 0.9999 vs
    // 1.0), so it takes far more than the minimum 10000 runs to resolve at
    // 3 sigma.
    const int runs = strategy == "all_random" ? 500000 : 20000;
    const StrategyPoint narrow = fig6_point(0, strategy, runs, 11);
    const StrategyPoint wide = fig6_point(3, strategy, runs, 11);
    const double sigma =
        std::sqrt((narrow.collision_probability * (1 - narrow.collision_probability) +
                   wide.collision_probability * (1 - wide.collision_probability)) /
                  runs);
    const bool lower =
        narrow.collision_probability - wide.collision_probability > 3 * sigma &&
        wide.mean_fitness > narrow.mean_fitness;
    ok = ok && lower;
    if (!detail.empty()) detail += ", ";
    detail += fmt("%s %.4f->%.4f (fitness %.4f->%.4f)", strategy.c_str(),
                  narrow.collision_probability, wide.collision_probability, narrow.mean_fitness,
                  wide.mean_fitness);
  }
  report(6, ok, "requirement spread", detail);
}

// ---------------------------------------------------------------------------
// 7. Mediator log replay and wire-mode parity.

void criterion_protocol() {
  std::mt19937_64 rng(29);
  const std::vector<std::string> names = {"net1", "net2", "net3", "ghost"};
  const auto random_request = [&](std::uint64_t seq) {
    Request req;
    req.seq = seq;
    req.network = names[rng() % names.size()];
    switch (rng() % 5) {
      case 0: req.op = Op::Register; break;
      case 1:
        req.op = Op::ReportShare;
        req.share = static_cast<double>(rng() % 2000) / 100.0;
        break;
      case 2: req.op = Op::GetBeta; break;
      case 3: req.op = Op::GetSelectivity; break;
      default:
        req.op = Op::Select;
        req.channel = static_cast<int>(rng() % 12) - 1;  // -1 probes the range check
        break;
    }
    return req;
  };

  Mediator logged(10);
  for (std::uint64_t seq = 1; seq <= 10000; ++seq) logged.process(random_request(seq));
  const auto replayed = replay_log(logged.request_log(), 10);
  bool replay_ok = replayed.size() == logged.request_log().size();
  for (std::size_t i = 0; replay_ok && i < replayed.size(); ++i)
    replay_ok = encode_response(replayed[i]) == encode_response(logged.request_log()[i].response);

  MediatorServer server(10, "127.0.0.1", 0);
  server.start();
  Mediator reference(10);
  bool wire_ok = true;
  {
    WireClient client("127.0.0.1", server.port());
    std::mt19937_64 wire_rng(31);
    std::swap(rng, wire_rng);
    for (std::uint64_t seq = 1; seq <= 10000 && wire_ok; ++seq) {
      const Request req = random_request(seq);
      wire_ok = client.roundtrip_line(encode_request(req)) ==
                encode_response(reference.process(req));
    }
    std::swap(rng, wire_rng);
  }
  server.stop();

  report(7, replay_ok && wire_ok, "mediator protocol",
         fmt("10000-entry log replays byte-for-byte (%s), 10000 socket round trips match "
             "in-process (%s)",
             replay_ok ? "yes" : "no", wire_ok ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion_equilibrium();
  criterion_fairness();
  criterion_stability();
  criterion_convergence_trend();
  criterion_selection();
  criterion_requirement_spread();
  criterion_protocol();

  if (failures == 0) {
    std::printf("acceptance: all 7 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
