#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hadlab/constructors.hpp"
#include "hadlab/matrix.hpp"

namespace hadlab {

inline constexpr const char* kToolVersion = "hadlab 0.1.0";

/// Optional construction data carried alongside a matrix.
struct Provenance {
  std::string constructor;
  std::vector<std::int64_t> orders;             ///< truncated Fourier: group orders
  std::vector<std::vector<std::int64_t>> rows;  ///< truncated Fourier: row elements
  std::optional<MasterSpec> master;
};

struct MatrixDocument {
  PHMatrix matrix;
  std::optional<Provenance> provenance;
};

/// Chooses butson when every entry is exact with a small common order,
/// turns when every entry is a turn, cartesian otherwise.
nlohmann::json matrix_to_json(const PHMatrix& h, const std::optional<Provenance>& provenance = std::nullopt);

/// Validates the phm-v1 layout; throws InvalidInput with the offending
/// location on any violation.
MatrixDocument matrix_from_json(const nlohmann::json& doc);

MatrixDocument read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const PHMatrix& h,
                       const std::optional<Provenance>& provenance = std::nullopt);

nlohmann::json phase_to_json(const Phase& p);
Phase phase_from_json(const nlohmann::json& v);

/// "p/q" or a decimal turn.
Phase parse_turns(const std::string& text);

}  // namespace hadlab
