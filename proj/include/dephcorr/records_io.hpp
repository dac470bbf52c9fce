#pragma once

// CSV trajectories and JSON scenario sidecars. Files are written to a temporary
// sibling and renamed into place, so a failed run leaves nothing behind.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dephcorr/experiments.hpp"
#include "dephcorr/measures.hpp"

namespace dephcorr {

inline constexpr const char* kRecordHeader =
    "t,negativity,purity,hs_participation,effective_hs_rank,energy1,energy2";

std::string format_records(const std::vector<CorrelationRecord>& records);
std::vector<CorrelationRecord> parse_records(const std::string& csv);

void write_records(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path);
std::vector<CorrelationRecord> read_records(const std::filesystem::path& path);

nlohmann::json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const nlohmann::json& j);

/// CSV plus `<stem>.json` holding the full configuration and the k that was run.
void write_run(const std::vector<CorrelationRecord>& records, const ScenarioConfig& cfg, int k,
               const std::filesystem::path& csv_path);

nlohmann::json fit_to_json(const ScenarioConfig& cfg, const ScalingFit& fit);

/// Writes `text` atomically (temp file + rename). Throws std::runtime_error naming the path.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace dephcorr
