#pragma once

#include <atomic>
#include <mutex>
#include <string>
#include <thread>

#include "share/mediator.hpp"

namespace share {

/// Newline-delimited message codec for the mediator service. Encoding is
/// deterministic: fixed field order, doubles printed with 17 significant
/// digits so values survive the round trip exactly.
std::string encode_request(const Request& request);
Request decode_request(const std::string& line);
std::string encode_response(const Response& response);
Response decode_response(const std::string& line);

/// Blocking single-threaded mediator service on a local TCP socket. All
/// requests, across all connections, are processed in arrival order.
class MediatorServer {
 public:
  MediatorServer(int num_channels, const std::string& host, int port);
  ~MediatorServer();

  MediatorServer(const MediatorServer&) = delete;
  MediatorServer& operator=(const MediatorServer&) = delete;

  /// Accept/serve loop; returns when stop() is called.
  void run();
  /// Launches run() on a background thread.
  void start();
  void stop();

  int port() const { return port_; }  // actual port when constructed with 0

 private:
  void serve_connection(int client_fd);

  Mediator mediator_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex client_mutex_;
  int client_fd_ = -1;  // connection currently being served, if any
  std::thread thread_;
};

/// Line-oriented client for the mediator service.
class WireClient {
 public:
  WireClient(const std::string& host, int port);
  ~WireClient();

  WireClient(const WireClient&) = delete;
  WireClient& operator=(const WireClient&) = delete;

  /// Sends one request line and returns the raw response line.
  std::string roundtrip_line(const std::string& request_line);
  Response roundtrip(const Request& request);

 private:
  int fd_ = -1;
  std::string buffer_;
};

/// Splits "host:port"; host defaults to 127.0.0.1 when absent.
std::pair<std::string, int> parse_listen_address(const std::string& address);

}  // namespace share
