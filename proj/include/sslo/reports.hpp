#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace sslo::reports {

// Raised when an artifact with the same name but different content already exists.
class ArtifactConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits so values round-trip exactly.
std::string format_double(double v);
std::string csv_escape(const std::string& field);

// 64-bit FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

// Long-format table; every row gets a trailing config_hash column on output.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& row();
  CsvTable& add(const std::string& v);
  CsvTable& add(const char* v) { return add(std::string(v)); }
  CsvTable& add(double v);
  CsvTable& add(long long v);
  CsvTable& add(int v) { return add(static_cast<long long>(v)); }
  CsvTable& add(std::size_t v) { return add(static_cast<long long>(v)); }

  std::size_t rows() const { return rows_.size(); }
  std::string render(const std::string& hash) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes <dir>/<stem>; identical existing content is left alone, differing content throws.
std::filesystem::path write_artifact(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& content);

}  // namespace sslo::reports
