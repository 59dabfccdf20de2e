#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "predict/engine/variant.hpp"

namespace predict::harness {

/// Everything a run needs. Built from a flat key=value file plus overrides;
/// README.md lists every key.
struct RunConfig {
  std::string env = "pickup";  // pickup | plume-summary | plume-email
  std::vector<std::string> variants = {"full"};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::optional<int> users;  // default: 10 for pickup, every source for plume
  int examples_per_user = 5;
  std::string backend = "remote";  // remote | perfect | scripted:<file> | replay:<file>
  bool script_strict = true;
  std::filesystem::path out = "runs/latest";
  std::optional<int> max_steps;
  std::optional<double> threshold;
  std::optional<int> min_validations;
  std::optional<int> retrieval_k;
  double failure_budget = 0.10;
  int workers = 0;  // 0: hardware concurrency
  std::filesystem::path corpus_manifest = "data/corpus/manifest.csv";
  double generation_temperature = 1.0;
  int max_tokens = 1024;
  bool record = true;
  std::string similarity = "token_f1";  // token_f1 | embedding:<model>
  int grid_size = 5;
  int grid_objects = 7;

  bool is_pickup() const { return env == "pickup"; }

  // Variant with the env defaults and any predict.* overrides applied.
  engine::VariantConfig variant(const std::string& name) const;

  // Canonical key=value text; the config hash is taken over it.
  std::string canonical() const;
  std::string hash() const;
};

// Applies one key. Throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Reads "key = value" lines; '#' starts a comment.
RunConfig load_config(const std::filesystem::path& path);
void apply_file(RunConfig& cfg, const std::filesystem::path& path);

// Checks cross-key constraints (distinct seeds, supported variants, ...).
void validate(const RunConfig& cfg);

// "5" -> 0..4, "1,3,7" -> {1,3,7}
std::vector<std::uint64_t> parse_seeds(const std::string& value);

}  // namespace predict::harness
