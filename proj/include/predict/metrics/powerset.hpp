#pragma once

#include <optional>
#include <string>
#include <vector>

#include "predict/metrics/metrics.hpp"
#include "predict/plume/agents.hpp"

namespace predict::metrics {

struct PowersetOptions {
  plume::WriteOptions write;
  Similarity* similarity = nullptr;  // adds a "similarity" column when set
};

struct PowersetRow {
  std::vector<std::string> subset;
  int instance = 0;
  std::vector<double> values;  // aligned with PowersetTable::metrics
};

struct MetricCorrelation {
  std::string a, b;
  std::optional<double> r;  // empty when either column is constant
};

struct PowersetTable {
  std::vector<std::string> metrics;
  std::vector<PowersetRow> rows;
  std::vector<MetricCorrelation> correlations;
  int failed_generations = 0;
  bool partial() const { return failed_generations > 0; }
  std::string similarity_mode;
};

/// Conditions one agent on every subset of true_prefs (at most 6
/// components), has it complete each task, and scores every generation
/// against the synthetic user's sample for the same task. Preference
/// quality columns: iou (and similarity); action quality: l_dist,
/// ln_l_dist, ppcm. Correlations are Pearson r over all generations.
/// A generation that fails is skipped and counted.
PowersetTable powerset_correlation(llm::LlmSession& s, const std::vector<plume::WritingTask>& tasks,
                                   const PreferenceSet& true_prefs, const PowersetOptions& opts = {});

std::string to_csv(const PowersetTable& t);
std::string correlations_csv(const PowersetTable& t);

}  // namespace predict::metrics
