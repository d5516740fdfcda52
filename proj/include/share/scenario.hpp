#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "share/allocation.hpp"
#include "share/params.hpp"

namespace share {

enum class ShareMode { Normalized, Raw };

struct NetworkSpec {
  std::string id;
  int requirement = 1;
};

/// A full experiment description as loaded from a scenario file, with all
/// defaults applied.
struct Scenario {
  int channels = 0;  // N
  std::vector<NetworkSpec> networks;
  CompetitionParams params;  // capacity derived as N - n
  double s0 = 0.1;
  std::string strategy = "all_share";
  std::vector<DisturbanceEvent> disturbances;
  std::optional<std::uint64_t> master_seed;
  int runs = 1;
  ShareMode share_mode = ShareMode::Normalized;

  int network_count() const { return static_cast<int>(networks.size()); }
  std::vector<int> requirements() const;
  std::vector<std::string> network_ids() const;

  void validate() const;  // throws Error naming the offending field

  /// Canonical key=value listing of every effective setting, defaults
  /// included; the basis of CSV metadata headers and the scenario hash.
  std::string canonical_description() const;
  std::uint64_t hash() const;  // FNV-1a over canonical_description()
};

/// Minimal TOML reader covering the scenario schema: comments, [tables],
/// [[arrays of tables]], and scalar / flat-array values.
nlohmann::json parse_toml_subset(const std::string& text);

Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace share
