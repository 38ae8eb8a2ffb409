#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaitkit/selection.hpp"
#include "gaitkit/types.hpp"

namespace gaitkit {

/// CSV with header `name1,...,nameN,label`; values printed with enough
/// digits to round-trip exactly.
std::string features_to_csv(const FeatureMatrix& m);
FeatureMatrix features_from_csv(const std::string& csv_text);

nlohmann::json features_to_json(const FeatureMatrix& m);
FeatureMatrix features_from_json(const nlohmann::json& j);

nlohmann::json windows_to_json(const std::vector<Window>& windows, double sample_rate_hz);
std::pair<std::vector<Window>, double> windows_from_json(const nlohmann::json& j);

nlohmann::json selection_to_json(const SelectionResult& r);
SelectionResult selection_from_json(const nlohmann::json& j);

/// Loads every `<subject>_<session>_<node>.csv` pair under dir into raw
/// recordings (sorted by subject then session). Throws MalformedInput when
/// a node file is missing its partner.
std::vector<RawRecording> load_data_dir(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace gaitkit
