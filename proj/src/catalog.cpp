#include "hadlab/catalog.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hadlab {

namespace {
std::mutex catalog_mutex;
}

std::string CatalogRecord::command_line() const {
  std::string s;
  for (const auto& a : argv) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

nlohmann::json CatalogRecord::to_json() const {
  return nlohmann::json{{"timestamp", timestamp}, {"command", command_line()}, {"argv", argv},
                        {"input_hash", input_hash}, {"result", result},   {"tool_version", tool_version}};
}

CatalogRecord CatalogRecord::from_json(const nlohmann::json& j) {
  CatalogRecord r;
  r.timestamp = j.at("timestamp").get<std::string>();
  r.argv = j.at("argv").get<std::vector<std::string>>();
  r.input_hash = j.at("input_hash").get<std::string>();
  r.result = j.at("result");
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a_hex(data);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void append_catalog(const CatalogRecord& record, const std::filesystem::path& path) {
  const std::string line = record.to_json().dump() + "\n";
  std::lock_guard<std::mutex> lock(catalog_mutex);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open catalog " + path.string());
  out << line;
  out.flush();
  if (!out) throw std::runtime_error("failed writing catalog " + path.string());
}

std::vector<CatalogRecord> read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read catalog " + path.string());
  std::vector<CatalogRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(CatalogRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("catalog line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hadlab
