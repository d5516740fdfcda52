#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "share/experiments.hpp"
#include "share/wire.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitIo = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void print_report(const share::Scenario& scenario, const share::EquilibriumReport& report) {
  std::cout << "converged: " << (report.converged ? "true" : "false") << "\n"
            << "rounds: " << report.rounds << "\n";
  for (std::size_t i = 0; i < scenario.networks.size(); ++i) {
    std::cout << scenario.networks[i].id << ": R=" << scenario.networks[i].requirement
              << " raw=" << num(report.raw_totals[i])
              << " normalized=" << num(report.normalized_totals[i]) << "\n";
  }
}

int cmd_allocate(const std::string& config, const std::string& trace_path) {
  const share::Scenario scenario = share::load_scenario(config);
  auto [report, trace] = share::run_scenario_allocation(scenario);
  print_report(scenario, report);
  if (!trace_path.empty()) share::write_trace_csv(trace_path, scenario, trace);
  return report.converged ? kExitOk : kExitNonConvergence;
}

int cmd_select(const std::string& config) {
  const share::Scenario scenario = share::load_scenario(config);
  const share::PipelineResult result = share::run_pipeline(scenario);
  for (std::size_t i = 0; i < result.assignment.network_ids.size(); ++i) {
    std::cout << result.assignment.network_ids[i] << ": budget=" << result.budgets[i]
              << " channels=";
    const auto& set = result.assignment.channels[i];
    for (std::size_t k = 0; k < set.size(); ++k) std::cout << (k ? "," : "") << set[k];
    std::cout << "\n";
  }
  std::cout << "system_fitness: " << num(result.fitness) << "\n"
            << "collision: " << (result.collision ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_pipeline(const std::string& config, const std::string& out_dir) {
  const share::Scenario scenario = share::load_scenario(config);
  const share::PipelineResult result = share::run_pipeline(scenario);

  std::filesystem::create_directories(out_dir);
  share::write_trace_csv((std::filesystem::path(out_dir) / "trace.csv").string(), scenario,
                         result.trace);

  const auto summary_path = std::filesystem::path(out_dir) / "summary.csv";
  std::ofstream out(summary_path);
  if (!out) throw share::IoError("cannot write " + summary_path.string());
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(scenario.hash()));
  out << "# scenario_hash=" << hash_buf << "\n# " << scenario.canonical_description() << "\n";
  out << "network,requirement,raw_total,normalized_total,budget,channels\n";
  for (std::size_t i = 0; i < scenario.networks.size(); ++i) {
    out << scenario.networks[i].id << "," << scenario.networks[i].requirement << ","
        << num(result.report.raw_totals[i]) << "," << num(result.report.normalized_totals[i])
        << "," << result.budgets[i] << ",";
    const auto& set = result.assignment.channels[i];
    for (std::size_t k = 0; k < set.size(); ++k) out << (k ? ";" : "") << set[k];
    out << "\n";
  }
  out << "# system_fitness=" << num(result.fitness)
      << " collision=" << (result.collision ? "true" : "false")
      << " rounds=" << result.report.rounds << "\n";

  print_report(scenario, result.report);
  std::cout << "system_fitness: " << num(result.fitness) << "\n"
            << "wrote: " << out_dir << "/trace.csv " << out_dir << "/summary.csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SHARE spectrum coexistence simulator"};
  app.require_subcommand(1);

  std::string config, trace_path, out_dir, listen_addr = "127.0.0.1:7420", experiment_name;
  int runs = 0, serve_channels = 20;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* allocate = app.add_subcommand("allocate", "Run the spectrum share allocation stage");
  allocate->add_option("--config", config, "Scenario file")->required();
  allocate->add_option("--trace", trace_path, "Write the per-round trace CSV here");

  auto* select = app.add_subcommand("select", "Run allocation then channel selection");
  select->add_option("--config", config, "Scenario file")->required();

  auto* pipeline = app.add_subcommand("pipeline", "Full allocation/selection pipeline with CSVs");
  pipeline->add_option("--config", config, "Scenario file")->required();
  pipeline->add_option("--out", out_dir, "Output directory")->required();

  auto* experiment = app.add_subcommand("experiment", "Run a named experiment driver");
  experiment->add_option("name", experiment_name, "One of fig2 fig3 fig4 fig5 fig6")->required();
  experiment->add_option("--runs", runs, "Replications (driver default when omitted)");
  experiment->add_option("--seed", seed, "Master seed")->each([&](const std::string&) {
    seed_set = true;
  });
  experiment->add_option("--out", out_dir, "Output directory")->required();

  auto* mediator = app.add_subcommand("mediator", "Mediator service");
  auto* serve = mediator->add_subcommand("serve", "Serve the wire protocol on a TCP socket");
  serve->add_option("--listen", listen_addr, "[host:]port to listen on")->required();
  serve->add_option("--channels", serve_channels, "Number of channels N");
  mediator->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (allocate->parsed()) return cmd_allocate(config, trace_path);
    if (select->parsed()) return cmd_select(config);
    if (pipeline->parsed()) return cmd_pipeline(config, out_dir);
    if (experiment->parsed()) {
      share::ExperimentOptions options;
      options.runs = runs;
      if (seed_set) options.seed = seed;
      const auto files = share::run_experiment(experiment_name, options, out_dir);
      for (const auto& file : files) std::cout << "wrote: " << file << "\n";
      return kExitOk;
    }
    if (serve->parsed()) {
      const auto [host, port] = share::parse_listen_address(listen_addr);
      share::MediatorServer server(serve_channels, host, port);
      std::cout << "mediator listening on " << host << ":" << server.port() << "\n";
      server.run();
      return kExitOk;
    }
  } catch (const share::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const share::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const share::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
