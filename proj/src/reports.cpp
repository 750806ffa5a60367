#include "sslo/reports.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sslo::reports {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string config_hash(const nlohmann::json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
  return *this;
}

CsvTable& CsvTable::add(const std::string& v) {
  if (rows_.empty()) throw std::logic_error("CsvTable::add called before row()");
  if (rows_.back().size() >= columns_.size()) throw std::logic_error("CsvTable: too many fields in row");
  rows_.back().push_back(csv_escape(v));
  return *this;
}

CsvTable& CsvTable::add(double v) { return add(format_double(v)); }
CsvTable& CsvTable::add(long long v) { return add(std::to_string(v)); }

std::string CsvTable::render(const std::string& hash) const {
  std::string out;
  for (const auto& c : columns_) out += csv_escape(c) + ",";
  out += "config_hash\n";
  for (const auto& r : rows_) {
    if (r.size() != columns_.size()) throw std::logic_error("CsvTable: short row");
    for (const auto& f : r) out += f + ",";
    out += hash + "\n";
  }
  return out;
}

std::filesystem::path write_artifact(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("output directory unreachable: " + dir.string());
  const fs::path path = dir / stem;
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream old;
    old << in.rdbuf();
    if (old.str() == content) return path;
    throw ArtifactConflict("refusing to overwrite differing artifact: " + path.string());
  }
  const fs::path tmp = dir / (stem + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
  return path;
}

}  // namespace sslo::reports
