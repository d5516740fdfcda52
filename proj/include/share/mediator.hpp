#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "share/error.hpp"

namespace share {

/// Channel selectivity as reported by the mediator. An unoccupied channel
/// (y_h == 0) is represented by nullopt and ranks above every finite value.
using Selectivity = std::optional<double>;

/// true when a ranks strictly below b in attractiveness.
inline bool selectivity_less(const Selectivity& a, const Selectivity& b) {
  if (a.has_value() && !b.has_value()) return true;   // finite < unoccupied
  if (!a.has_value()) return false;                   // unoccupied is maximal
  return *a < *b;
}

enum class Op { Register, ReportShare, GetBeta, GetSelectivity, Select };

struct Request {
  std::uint64_t seq = 0;
  Op op = Op::Register;
  std::string network;
  double share = 0.0;  // ReportShare only
  int channel = -1;    // Select only
};

/// Responses deliberately have no field that could carry another network's
/// individual share or channel set; only the aggregate beta and the
/// per-channel selectivity vector exist in the schema.
struct Response {
  std::uint64_t seq = 0;
  bool ok = false;
  std::optional<double> beta;
  std::optional<std::vector<Selectivity>> selectivity;
  std::string error;
};

struct LogEntry {
  std::uint64_t log_seq = 0;  // strictly increasing, gap-free
  Request request;
  Response response;
};

/// The coexistence information server. Stores reported totals and channel
/// occupancy, answers sanitized queries, and processes every request in a
/// single total order captured by the request log. It never learns any
/// network's bandwidth requirement.
class Mediator {
 public:
  explicit Mediator(int num_channels);

  /// Executes one request, appends it to the log, and returns the response.
  /// Protocol violations come back as ok == false, never as exceptions.
  Response process(const Request& request);

  // In-process convenience wrappers; these throw Error on a failed request.
  void register_network(const std::string& network_id);
  void report_share(const std::string& network_id, double share);
  double sanitized_sum(const std::string& network_id);
  std::vector<Selectivity> selectivity_vector(const std::string& network_id);
  void record_selection(const std::string& network_id, int channel);

  int num_channels() const { return num_channels_; }
  const std::vector<int>& occupancy() const { return occupancy_; }
  const std::vector<std::string>& registration_order() const { return registration_order_; }
  const std::vector<LogEntry>& request_log() const { return log_; }

 private:
  Response execute(const Request& request) const;
  void commit(const Request& request);

  int num_channels_;
  std::map<std::string, double> latest_share_;
  std::vector<std::string> registration_order_;
  std::vector<int> occupancy_;
  std::vector<LogEntry> log_;
  std::uint64_t next_log_seq_ = 1;
};

/// Re-executes a log's requests against a fresh mediator and returns the
/// responses produced, in order. Used to audit sequential consistency.
std::vector<Response> replay_log(const std::vector<LogEntry>& log, int num_channels);

}  // namespace share
