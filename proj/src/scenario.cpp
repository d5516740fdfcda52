#include "share/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "share/foraging.hpp"

namespace share {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

json parse_scalar(const std::string& raw) {
  const std::string tok = trim(raw);
  if (tok.empty()) throw Error("toml: empty value");
  if (tok.front() == '"') {
    if (tok.size() < 2 || tok.back() != '"') throw Error("toml: unterminated string: " + tok);
    return tok.substr(1, tok.size() - 2);
  }
  if (tok == "true") return true;
  if (tok == "false") return false;
  if (tok.find_first_of(".eE") != std::string::npos &&
      tok.find_first_not_of("+-0123456789.eE") == std::string::npos) {
    return std::stod(tok);
  }
  if (tok.find_first_not_of("+-0123456789") == std::string::npos) {
    return std::stoll(tok);
  }
  throw Error("toml: unrecognized value: " + tok);
}

json parse_value(const std::string& raw) {
  const std::string tok = trim(raw);
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') throw Error("toml: unterminated array: " + tok);
    json arr = json::array();
    std::string inner = tok.substr(1, tok.size() - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) arr.push_back(parse_scalar(item));
    return arr;
  }
  return parse_scalar(tok);
}

}  // namespace

json parse_toml_subset(const std::string& text) {
  json doc = json::object();
  json* current = &doc;

  std::stringstream ss(text);
  std::string raw_line;
  int lineno = 0;
  while (std::getline(ss, raw_line)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw_line));
    if (line.empty()) continue;

    try {
      if (line.size() >= 4 && line.substr(0, 2) == "[[" &&
          line.substr(line.size() - 2) == "]]") {
        const std::string name = trim(line.substr(2, line.size() - 4));
        if (!doc.contains(name)) doc[name] = json::array();
        doc[name].push_back(json::object());
        current = &doc[name].back();
      } else if (line.front() == '[' && line.back() == ']') {
        const std::string name = trim(line.substr(1, line.size() - 2));
        if (!doc.contains(name)) doc[name] = json::object();
        current = &doc[name];
      } else {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw Error("toml: expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw Error("toml: empty key");
        (*current)[key] = parse_value(line.substr(eq + 1));
      }
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }
  return doc;
}

namespace {

template <typename T>
T field_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("scenario field '" + key + "': wrong type");
  }
}

template <typename T>
T required_field(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw Error("scenario field '" + key + "': missing");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("scenario field '" + key + "': wrong type");
  }
}

}  // namespace

std::vector<int> Scenario::requirements() const {
  std::vector<int> reqs;
  for (const auto& net : networks) reqs.push_back(net.requirement);
  return reqs;
}

std::vector<std::string> Scenario::network_ids() const {
  std::vector<std::string> ids;
  for (const auto& net : networks) ids.push_back(net.id);
  return ids;
}

void Scenario::validate() const {
  if (networks.empty()) throw Error("scenario field 'networks': at least one network required");
  if (channels < network_count()) throw Error("scenario field 'channels': N < n");
  for (const auto& net : networks) {
    if (net.id.empty()) throw Error("scenario field 'networks.id': empty");
    if (net.requirement < 1) throw Error("scenario field 'networks.requirement': must be >= 1");
  }
  for (std::size_t i = 0; i < networks.size(); ++i)
    for (std::size_t j = i + 1; j < networks.size(); ++j)
      if (networks[i].id == networks[j].id)
        throw Error("scenario field 'networks.id': duplicate '" + networks[i].id + "'");
  params.validate();
  if (!(s0 > 0.0)) throw Error("scenario field 's0': must be > 0");
  if (runs < 1) throw Error("scenario field 'runs': must be >= 1");
  if (strategy != "all_share" && !master_seed.has_value())
    throw Error("scenario field 'master_seed': required for randomized strategies");
  StrategyAssignment::preset(strategy, network_count());  // rejects unknown names
}

std::string Scenario::canonical_description() const {
  std::ostringstream out;
  out.precision(17);
  out << "channels=" << channels;
  for (const auto& net : networks) out << ";net=" << net.id << ":" << net.requirement;
  out << ";alpha=" << params.alpha << ";r=" << params.r << ";step=" << params.step
      << ";tolerance=" << params.tolerance << ";max_rounds=" << params.max_rounds
      << ";s0=" << s0 << ";strategy=" << strategy
      << ";share_mode=" << (share_mode == ShareMode::Normalized ? "normalized" : "raw")
      << ";runs=" << runs;
  if (master_seed) out << ";master_seed=" << *master_seed;
  for (const auto& ev : disturbances) {
    out << ";event=" << (ev.kind == DisturbanceEvent::Kind::Silence ? "silence" : "delete") << ":"
        << ev.network_id << ":" << ev.sub_index << ":" << ev.start_round << ":" << ev.end_round;
  }
  return out.str();
}

std::uint64_t Scenario::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : canonical_description()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

Scenario scenario_from_json(const json& doc) {
  Scenario sc;
  sc.channels = static_cast<int>(required_field<std::int64_t>(doc, "channels"));

  if (!doc.contains("networks") || !doc.at("networks").is_array())
    throw Error("scenario field 'networks': missing");
  for (const auto& net : doc.at("networks")) {
    NetworkSpec spec;
    spec.id = required_field<std::string>(net, "id");
    spec.requirement = static_cast<int>(required_field<std::int64_t>(net, "requirement"));
    sc.networks.push_back(spec);
  }

  const json params = doc.contains("params") ? doc.at("params") : json::object();
  sc.params.alpha = field_or<double>(params, "alpha", 0.9);
  sc.params.r = field_or<double>(params, "r", 1.95);
  sc.params.step = field_or<double>(params, "step", 1.0);
  sc.params.tolerance = field_or<double>(params, "tolerance", 1e-6);
  sc.params.max_rounds = static_cast<int>(field_or<std::int64_t>(params, "max_rounds", 10000));
  sc.params.capacity = sc.channels - sc.network_count();

  sc.s0 = field_or<double>(doc, "s0", 0.1);
  sc.strategy = field_or<std::string>(doc, "strategy", "all_share");
  sc.runs = static_cast<int>(field_or<std::int64_t>(doc, "runs", 1));
  if (doc.contains("master_seed"))
    sc.master_seed = static_cast<std::uint64_t>(required_field<std::int64_t>(doc, "master_seed"));

  const std::string mode = field_or<std::string>(doc, "share_mode", "normalized");
  if (mode == "normalized") {
    sc.share_mode = ShareMode::Normalized;
  } else if (mode == "raw") {
    sc.share_mode = ShareMode::Raw;
  } else {
    throw Error("scenario field 'share_mode': must be 'normalized' or 'raw'");
  }

  if (doc.contains("disturbances")) {
    for (const auto& ev : doc.at("disturbances")) {
      DisturbanceEvent event;
      const std::string kind = required_field<std::string>(ev, "kind");
      if (kind == "silence") {
        event.kind = DisturbanceEvent::Kind::Silence;
      } else if (kind == "delete") {
        event.kind = DisturbanceEvent::Kind::Delete;
      } else {
        throw Error("scenario field 'disturbances.kind': must be 'silence' or 'delete'");
      }
      event.network_id = required_field<std::string>(ev, "network");
      event.sub_index = static_cast<int>(required_field<std::int64_t>(ev, "sub"));
      event.start_round = static_cast<int>(required_field<std::int64_t>(ev, "start"));
      event.end_round = static_cast<int>(field_or<std::int64_t>(ev, "end", event.start_round));
      sc.disturbances.push_back(event);
    }
  }

  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(parse_toml_subset(buf.str()));
}

}  // namespace share
