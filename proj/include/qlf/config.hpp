#pragma once
// Run configuration shared by every subcommand. Precedence, lowest first:
// built-in defaults, JSON config file, QC_* environment variables, flags.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qlf/smoothing.hpp"

namespace qlf {

struct RunConfig {
  int threads = 0;  // 0 = machine parallelism
  std::string weight = "plateau";
  double Z = 32.0;
  long long euler_cutoff = 10'000'000;
  double eps = 1e-12;
  long long max_d = 1'000'000;   // QC_MAX_D: largest d any sweep may touch
  double max_x = 500'000.0;      // QC_MAX_X: largest X for moment and mollifier sweeps
  long long sieve_bytes = 1LL << 30;  // QC_SIEVE_BYTES
  std::filesystem::path out_dir = "out";

  // Throws DomainError on a non-positive field or an unknown weight.
  void validate() const;
  int effective_threads() const;
  SmoothWeight make_weight() const;
  nlohmann::json to_json() const;
};

// Overlay the keys present in `j` (unknown keys are a DomainError).
void apply_json(RunConfig& cfg, const nlohmann::json& j);
void apply_json_file(RunConfig& cfg, const std::filesystem::path& path);
// Overlay QC_THREADS, QC_MAX_D, QC_MAX_X, QC_SIEVE_BYTES, QC_EULER_CUTOFF when set.
void apply_env(RunConfig& cfg);

}  // namespace qlf
