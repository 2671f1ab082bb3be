#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "apportion/engine.hpp"
#include "apportion/metrics.hpp"
#include "apportion/simgen.hpp"

namespace apportion {

using Json = nlohmann::json;

/// Header-less scenario file: one resting order size per line. Blank lines
/// and lines starting with '#' are skipped. Throws ParseError.
std::vector<Units> parse_scenario(std::istream& in);

/// Replay file: one `id,side,size,price` per line, side in {b, s}, ids
/// strictly increasing. Throws ParseError.
std::vector<LimitOrder> parse_replay(std::istream& in);
std::string format_replay_line(const LimitOrder& order);

/// Snapshot rows re-ordered by id so that they replay into an equal book.
std::vector<LimitOrder> snapshot_as_replay(std::vector<SnapshotEntry> snapshot);

/// Comma-separated method names. Throws ParseError.
std::vector<MethodSpec> parse_method_list(const std::string& list, std::uint64_t rss_seed = 0);

enum class SimulationMode { distance, quota };

Json config_to_json(const SimulationConfig& config, SimulationMode mode);
/// Inverse of config_to_json. Throws ParseError.
SimulationConfig config_from_json(const Json& j, SimulationMode* mode = nullptr);

Json to_json(const SimSummary& summary);
Json to_json(const QuotaStats& stats);
Json to_json(const IterationRecord& record, const SimulationConfig& config);
Json to_json(const QuotaIteration& record);
Json to_json(const ExecutionReport& report);
Json to_json(const std::vector<SnapshotEntry>& snapshot);

}  // namespace apportion
