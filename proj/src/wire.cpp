#include "share/wire.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>

#include <nlohmann/json.hpp>

namespace share {

namespace {

using nlohmann::json;

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

const char* op_name(Op op) {
  switch (op) {
    case Op::Register: return "register";
    case Op::ReportShare: return "report_share";
    case Op::GetBeta: return "get_beta";
    case Op::GetSelectivity: return "get_selectivity";
    case Op::Select: return "select";
  }
  throw Error("wire: bad op");
}

Op op_from_name(const std::string& name) {
  if (name == "register") return Op::Register;
  if (name == "report_share") return Op::ReportShare;
  if (name == "get_beta") return Op::GetBeta;
  if (name == "get_selectivity") return Op::GetSelectivity;
  if (name == "select") return Op::Select;
  throw Error("wire: unknown op '" + name + "'");
}

}  // namespace

std::string encode_request(const Request& request) {
  std::string line = "{\"seq\":" + std::to_string(request.seq) + ",\"op\":\"" +
                     op_name(request.op) + "\",\"network\":" + quoted(request.network);
  if (request.op == Op::ReportShare) line += ",\"share\":" + num17(request.share);
  if (request.op == Op::Select) line += ",\"channel\":" + std::to_string(request.channel);
  return line + "}";
}

Request decode_request(const std::string& line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("wire: bad request: ") + e.what());
  }
  Request req;
  req.seq = doc.value("seq", std::uint64_t{0});
  req.op = op_from_name(doc.at("op").get<std::string>());
  req.network = doc.value("network", std::string{});
  if (req.op == Op::ReportShare) req.share = doc.at("share").get<double>();
  if (req.op == Op::Select) req.channel = doc.at("channel").get<int>();
  return req;
}

std::string encode_response(const Response& response) {
  std::string line =
      "{\"seq\":" + std::to_string(response.seq) + ",\"ok\":" + (response.ok ? "true" : "false");
  if (response.beta) line += ",\"beta\":" + num17(*response.beta);
  if (response.selectivity) {
    line += ",\"selectivity\":[";
    for (std::size_t h = 0; h < response.selectivity->size(); ++h) {
      if (h) line += ",";
      const Selectivity& s = (*response.selectivity)[h];
      line += s ? num17(*s) : "null";
    }
    line += "]";
  }
  if (!response.ok) line += ",\"error\":" + quoted(response.error);
  return line + "}";
}

Response decode_response(const std::string& line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("wire: bad response: ") + e.what());
  }
  Response resp;
  resp.seq = doc.value("seq", std::uint64_t{0});
  resp.ok = doc.at("ok").get<bool>();
  if (doc.contains("beta")) resp.beta = doc.at("beta").get<double>();
  if (doc.contains("selectivity")) {
    std::vector<Selectivity> sel;
    for (const auto& item : doc.at("selectivity"))
      sel.push_back(item.is_null() ? Selectivity{} : Selectivity{item.get<double>()});
    resp.selectivity = std::move(sel);
  }
  if (doc.contains("error")) resp.error = doc.at("error").get<std::string>();
  return resp;
}

std::pair<std::string, int> parse_listen_address(const std::string& address) {
  const std::size_t colon = address.rfind(':');
  std::string host = "127.0.0.1";
  std::string port_str = address;
  if (colon != std::string::npos) {
    if (colon > 0) host = address.substr(0, colon);
    port_str = address.substr(colon + 1);
  }
  try {
    return {host, std::stoi(port_str)};
  } catch (const std::exception&) {
    throw Error("bad listen address '" + address + "' (expected [host:]port)");
  }
}

MediatorServer::MediatorServer(int num_channels, const std::string& host, int port)
    : mediator_(num_channels) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error("mediator serve: cannot create socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw Error("mediator serve: bad host '" + host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 8) != 0) {
    ::close(listen_fd_);
    throw Error("mediator serve: cannot bind " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

MediatorServer::~MediatorServer() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void MediatorServer::serve_connection(int client_fd) {
  {
    std::lock_guard<std::mutex> lock(client_mutex_);
    client_fd_ = client_fd;
  }
  std::string buffer;
  char chunk[4096];
  while (!stopping_) {
    const ssize_t got = ::recv(client_fd, chunk, sizeof(chunk), 0);
    if (got <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(got));

    std::size_t start = 0;
    std::size_t newline;
    while ((newline = buffer.find('\n', start)) != std::string::npos) {
      const std::string line = buffer.substr(start, newline - start);
      start = newline + 1;
      if (line.empty()) continue;

      std::string reply;
      try {
        reply = encode_response(mediator_.process(decode_request(line)));
      } catch (const Error& e) {
        Response bad;
        bad.error = e.what();
        reply = encode_response(bad);
      }
      reply += '\n';
      if (::send(client_fd, reply.data(), reply.size(), 0) < 0) break;
    }
    buffer.erase(0, start);
  }
  {
    std::lock_guard<std::mutex> lock(client_mutex_);
    client_fd_ = -1;
  }
  ::close(client_fd);
}

void MediatorServer::run() {
  while (!stopping_) {
    const int client_fd = ::accept(listen_fd_, nullptr, nullptr);
    if (client_fd < 0) {
      if (stopping_) break;
      continue;
    }
    serve_connection(client_fd);
  }
}

void MediatorServer::start() {
  thread_ = std::thread([this] { run(); });
}

void MediatorServer::stop() {
  if (stopping_.exchange(true)) {
    if (thread_.joinable()) thread_.join();
    return;
  }
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  {
    // Wake the serve loop if it is blocked reading an open connection.
    std::lock_guard<std::mutex> lock(client_mutex_);
    if (client_fd_ >= 0) ::shutdown(client_fd_, SHUT_RDWR);
  }
  if (thread_.joinable()) thread_.join();
}

WireClient::WireClient(const std::string& host, int port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error("wire client: cannot create socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1 ||
      ::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    throw Error("wire client: cannot connect to " + host + ":" + std::to_string(port));
  }
}

WireClient::~WireClient() {
  if (fd_ >= 0) ::close(fd_);
}

std::string WireClient::roundtrip_line(const std::string& request_line) {
  std::string payload = request_line;
  payload += '\n';
  if (::send(fd_, payload.data(), payload.size(), 0) < 0)
    throw Error("wire client: send failed");

  char chunk[4096];
  while (true) {
    const std::size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      const std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return line;
    }
    const ssize_t got = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (got <= 0) throw Error("wire client: connection closed");
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
}

Response WireClient::roundtrip(const Request& request) {
  return decode_response(roundtrip_line(encode_request(request)));
}

}  // namespace share
