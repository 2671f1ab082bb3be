#include "apportion/records.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "apportion/error.hpp"

namespace apportion {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class Int>
Int parse_int(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  Int value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": bad " + what + " '" +
                                       std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<Units> parse_scenario(std::istream& in) {
  std::vector<Units> sizes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    sizes.push_back(parse_int<Units>(body, lineno, "order size"));
  }
  return sizes;
}

std::vector<LimitOrder> parse_replay(std::istream& in) {
  std::vector<LimitOrder> orders;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, ',');
    if (fields.size() != 4) {
      throw Error(Errc::parse_error,
                  "line " + std::to_string(lineno) + ": expected id,side,size,price");
    }
    LimitOrder o;
    o.id = parse_int<OrderId>(fields[0], lineno, "id");
    const auto side = trim(fields[1]);
    if (side == "b") {
      o.side = Side::buy;
    } else if (side == "s") {
      o.side = Side::sell;
    } else {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": side must be b or s");
    }
    o.size = parse_int<Units>(fields[2], lineno, "size");
    o.price = parse_int<Price>(fields[3], lineno, "price");
    if (!orders.empty() && o.id <= orders.back().id) {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": ids must increase");
    }
    orders.push_back(o);
  }
  return orders;
}

std::string format_replay_line(const LimitOrder& order) {
  std::ostringstream os;
  os << order.id << ',' << static_cast<char>(order.side) << ',' << order.size << ','
     << order.price;
  return os.str();
}

std::vector<LimitOrder> snapshot_as_replay(std::vector<SnapshotEntry> snapshot) {
  std::sort(snapshot.begin(), snapshot.end(),
            [](const LimitOrder& a, const LimitOrder& b) { return a.id < b.id; });
  return snapshot;
}

std::vector<MethodSpec> parse_method_list(const std::string& list, std::uint64_t rss_seed) {
  std::vector<MethodSpec> out;
  for (const auto name : split(list, ',')) {
    const auto t = trim(name);
    if (t.empty()) throw Error(Errc::parse_error, "empty method name in '" + list + "'");
    out.push_back(parse_method(t, rss_seed));
  }
  return out;
}

Json config_to_json(const SimulationConfig& config, SimulationMode mode) {
  Json methods = Json::array();
  for (const auto& m : config.methods) methods.push_back(method_name(m));
  return Json{{"mode", mode == SimulationMode::distance ? "distance" : "quota"},
              {"n", config.n},
              {"q", config.quantum},
              {"iters", config.iterations},
              {"decay", config.decay},
              {"seed", config.seed},
              {"methods", methods}};
}

SimulationConfig config_from_json(const Json& j, SimulationMode* mode) {
  try {
    SimulationConfig c;
    c.n = j.at("n").get<std::size_t>();
    c.quantum = j.at("q").get<Units>();
    c.iterations = j.at("iters").get<std::size_t>();
    c.decay = j.at("decay").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
    if (mode != nullptr) {
      const auto name = j.at("mode").get<std::string>();
      if (name == "distance") {
        *mode = SimulationMode::distance;
      } else if (name == "quota") {
        *mode = SimulationMode::quota;
      } else {
        throw Error(Errc::parse_error, "unknown mode '" + name + "'");
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, std::string("config record: ") + e.what());
  }
}

Json to_json(const SimSummary& summary) {
  Json methods = Json::array();
  for (const auto& m : summary.methods) {
    methods.push_back({{"method", m.method},
                       {"mu1", m.mu1},
                       {"sigma1", m.sigma1},
                       {"mu2", m.mu2},
                       {"sigma2", m.sigma2},
                       {"samples", m.samples},
                       {"skipped", m.skipped},
                       {"min_rho1", m.min_rho1},
                       {"min_rho2", m.min_rho2}});
  }
  return Json{{"record", "distance_summary"},
              {"config", config_to_json(summary.config, SimulationMode::distance)},
              {"methods", methods}};
}

Json to_json(const QuotaStats& stats) {
  return Json{{"record", "quota_summary"},
              {"config", config_to_json(stats.config, SimulationMode::quota)},
              {"method", stats.method},
              {"lambda", stats.lambda},
              {"violating", stats.violating},
              {"u", stats.u},
              {"v", stats.v}};
}

Json to_json(const IterationRecord& record, const SimulationConfig& config) {
  Json rho = Json::array();
  for (std::size_t k = 0; k < record.rho.size(); ++k) {
    const auto& r = record.rho[k];
    Json entry{{"method", method_name(config.methods.at(k))}, {"defined", r.defined}};
    if (r.defined) {
      entry["rho1"] = r.rho1;
      entry["rho2"] = r.rho2;
    }
    rho.push_back(entry);
  }
  return Json{{"record", "iteration"}, {"iteration", record.iteration}, {"n", record.n},
              {"total", record.total},  {"incoming", record.incoming},   {"rho", rho}};
}

Json to_json(const QuotaIteration& record) {
  return Json{{"record", "quota_iteration"},
              {"iteration", record.iteration},
              {"violated", record.violated},
              {"min_extent", record.min_extent},
              {"max_extent", record.max_extent}};
}

Json to_json(const ExecutionReport& report) {
  Json fills = Json::array();
  for (const auto& f : report.fills) fills.push_back({{"maker", f.maker}, {"units", f.units}});
  return Json{{"record", "execution"},
              {"taker", report.taker},
              {"fills", fills},
              {"residual", report.residual}};
}

Json to_json(const std::vector<SnapshotEntry>& snapshot) {
  Json orders = Json::array();
  for (const auto& o : snapshot) {
    orders.push_back({{"id", o.id},
                      {"side", std::string(1, static_cast<char>(o.side))},
                      {"remaining", o.size},
                      {"price", o.price}});
  }
  return Json{{"record", "snapshot"}, {"orders", orders}};
}

}  // namespace apportion
