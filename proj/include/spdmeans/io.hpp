#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "spdmeans/types.hpp"

namespace spdmeans {

/// Matrix file document: {"dim": m, "entries": [[[re, im], ...], ...]},
/// row-major, explicit zero imaginary parts for real inputs. Serialization
/// round-trips doubles bit-exactly.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Parses and enforces Hermiticity within 1e-12 absolute, then symmetrizes.
HermitianMatrix hermitian_from_json(const nlohmann::json& j);
SpdMatrix spd_from_json(const nlohmann::json& j);

HermitianMatrix load_hermitian(const std::filesystem::path& path);
SpdMatrix load_spd(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

/// FNV-1a over the canonical dump; used as the inputs digest in run reports.
std::uint64_t digest(const nlohmann::json& j);

/// Scalar formatted with 15 significant digits (round-half-even), the fixed
/// print format for every scalar in text reports.
std::string format_scalar(double v);

struct RunReport {
  std::string command;
  std::uint64_t inputs_digest = 0;
  nlohmann::json outputs = nlohmann::json::object();
  nlohmann::json verdicts = nlohmann::json::object();
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

}  // namespace spdmeans
