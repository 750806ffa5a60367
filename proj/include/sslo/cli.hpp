#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sslo::cli {

enum class Command { BasisVerify, Spectrum, Partition, Counting, BoundsSweep };

std::string command_name(Command c);

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitViolation = 2;

struct RunConfig {
  Command command = Command::Spectrum;
  int d = 1;
  std::vector<double> W;  // bandwidths (spectrum uses the first, bounds-sweep all)
  std::optional<double> r;
  int n = 0;  // 0 picks the per-command default
  std::vector<double> eps;
  double delta = 0.05;
  std::optional<double> eta;
  nlohmann::json body = {{"kind", "ball"}, {"radius", 1.0}};
  int k_max = 64;
  double delta_min = 1.0 / 4096.0;
  std::string lattice = "half";
  int samples = 0;
  double rho_min = 5.0;
  double rho_max = 40.0;
  bool full_records = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;

  // Everything that affects artifact content; output_dir and threads are excluded.
  nlohmann::json to_json() const;
  // Per-command invariants; throws std::invalid_argument with a diagnostic.
  void validate() const;
};

// Throws std::invalid_argument on malformed input; returns nullopt when only help was requested.
std::optional<RunConfig> parse_args(int argc, const char* const* argv);

// Parses --body: a JSON object, @path to a JSON file, or one of ball | cube | l1 (unit size).
nlohmann::json parse_body_arg(const std::string& text);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;
  std::string summary;
};
RunResult run(const RunConfig& config);

// parse_args + run with diagnostics on stderr.
int main_entry(int argc, const char* const* argv);

}  // namespace sslo::cli
