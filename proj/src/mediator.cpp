#include "share/mediator.hpp"

namespace share {

Mediator::Mediator(int num_channels) : num_channels_(num_channels) {
  if (num_channels < 1) throw Error("mediator: num_channels must be >= 1");
  occupancy_.assign(static_cast<std::size_t>(num_channels), 0);
}

Response Mediator::execute(const Request& request) const {
  Response resp;
  resp.seq = request.seq;

  const bool known = latest_share_.count(request.network) > 0;
  if (request.op != Op::Register && !known) {
    resp.error = "unknown network";
    return resp;
  }

  switch (request.op) {
    case Op::Register:
      if (known) {
        resp.error = "already registered";
        return resp;
      }
      break;
    case Op::ReportShare:
      if (request.share < 0.0) {
        resp.error = "negative share";
        return resp;
      }
      break;
    case Op::GetBeta: {
      double sum = 0.0;
      for (const auto& [id, share] : latest_share_)
        if (id != request.network) sum += share;
      resp.beta = sum;
      break;
    }
    case Op::GetSelectivity: {
      std::vector<Selectivity> sel(occupancy_.size());
      for (std::size_t h = 0; h < occupancy_.size(); ++h)
        if (occupancy_[h] > 0) sel[h] = 1.0 / occupancy_[h];
      resp.selectivity = std::move(sel);
      break;
    }
    case Op::Select:
      if (request.channel < 0 || request.channel >= num_channels_) {
        resp.error = "channel out of range";
        return resp;
      }
      break;
  }
  resp.ok = true;
  return resp;
}

void Mediator::commit(const Request& request) {
  switch (request.op) {
    case Op::Register:
      latest_share_[request.network] = 0.0;
      registration_order_.push_back(request.network);
      break;
    case Op::ReportShare:
      latest_share_[request.network] = request.share;  // overwrite, not accumulate
      break;
    case Op::Select:
      ++occupancy_[static_cast<std::size_t>(request.channel)];
      break;
    case Op::GetBeta:
    case Op::GetSelectivity:
      break;
  }
}

Response Mediator::process(const Request& request) {
  Response resp = execute(request);
  if (resp.ok) commit(request);
  log_.push_back(LogEntry{next_log_seq_++, request, resp});
  return resp;
}

namespace {

Response must_ok(Mediator& m, const Request& req) {
  Response resp = m.process(req);
  if (!resp.ok) throw Error("mediator: " + resp.error);
  return resp;
}

}  // namespace

void Mediator::register_network(const std::string& network_id) {
  must_ok(*this, Request{0, Op::Register, network_id, 0.0, -1});
}

void Mediator::report_share(const std::string& network_id, double share) {
  must_ok(*this, Request{0, Op::ReportShare, network_id, share, -1});
}

double Mediator::sanitized_sum(const std::string& network_id) {
  return *must_ok(*this, Request{0, Op::GetBeta, network_id, 0.0, -1}).beta;
}

std::vector<Selectivity> Mediator::selectivity_vector(const std::string& network_id) {
  return *must_ok(*this, Request{0, Op::GetSelectivity, network_id, 0.0, -1}).selectivity;
}

void Mediator::record_selection(const std::string& network_id, int channel) {
  must_ok(*this, Request{0, Op::Select, network_id, 0.0, channel});
}

std::vector<Response> replay_log(const std::vector<LogEntry>& log, int num_channels) {
  Mediator fresh(num_channels);
  std::vector<Response> responses;
  responses.reserve(log.size());
  for (const LogEntry& entry : log) responses.push_back(fresh.process(entry.request));
  return responses;
}

}  // namespace share
