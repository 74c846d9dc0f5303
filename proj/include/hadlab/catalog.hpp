#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hadlab {

struct CatalogRecord {
  std::string timestamp;  ///< UTC, ISO-8601
  std::vector<std::string> argv;
  std::string input_hash;  ///< FNV-1a 64 over the input bytes, hex; empty without input
  nlohmann::json result;
  std::string tool_version;

  std::string command_line() const;
  nlohmann::json to_json() const;
  static CatalogRecord from_json(const nlohmann::json& j);
};

std::string fnv1a_hex(std::string_view bytes);
std::string file_hash(const std::filesystem::path& path);
std::string utc_timestamp();

/// Appends one JSON line. Appends from threads of this process are serialized.
void append_catalog(const CatalogRecord& record, const std::filesystem::path& path);

std::vector<CatalogRecord> read_catalog(const std::filesystem::path& path);

}  // namespace hadlab
