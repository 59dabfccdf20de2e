#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "predict/core/episode.hpp"

namespace predict::harness {

struct RunData {
  std::filesystem::path dir;
  nlohmann::json manifest;
  std::vector<EpisodeLog> episodes;
};

// Reads manifest.json and episodes.jsonl. Throws MissingFile or ParseError.
RunData load_run(const std::filesystem::path& dir);

struct ReportRow {
  std::string env;
  std::string variant;
  std::string metric;
  std::vector<std::uint64_t> seeds;
  std::vector<double> per_seed;  // mean over the seed's scored, non-failed episodes
  double mean = 0.0;             // across seeds
  double std = 0.0;              // sample std across seeds
  std::size_t episodes = 0;
  // Rescaled so the np row maps to 0 and the oracle row to 100.
  std::optional<double> percentile;
  std::optional<double> percentile_std;
};

struct DeltaRow {
  std::string env;
  std::string metric;
  std::string a;
  std::string b;
  double delta = 0.0;  // mean(a) - mean(b)
  std::optional<double> percentile_delta;
};

struct ReportOptions {
  // Throw MissingBaseline unless every env has np and oracle episodes.
  bool require_baselines = false;
};

struct Report {
  std::vector<ReportRow> rows;  // sorted by env, metric, variant
  std::vector<DeltaRow> deltas;
  std::vector<std::string> similarity_modes;

  const ReportRow* find(const std::string& env, const std::string& variant, const std::string& metric) const;
};

Report build_report(const std::vector<EpisodeLog>& episodes, const ReportOptions& opts = {});
Report build_report(const std::vector<RunData>& runs, const ReportOptions& opts = {});

std::string report_csv(const Report& r);
std::string deltas_csv(const Report& r);

// Bars with mean +- std whiskers, one per label.
std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& means, const std::vector<double>& stds);

// report.csv, deltas.csv, learning_curve.csv and charts/<env>_<metric>.svg.
void write_report(const Report& r, const std::vector<EpisodeLog>& episodes, const std::filesystem::path& dir);

struct CurvePoint {
  std::string env;
  std::string variant;
  std::string metric;
  int example_index = 0;
  std::size_t seeds = 0;
  double mean = 0.0;
  double std = 0.0;
};

/// Metric means per example index, first (unscored) index included, taken
/// per seed over non-failed episodes and then mean +- std across seeds.
std::vector<CurvePoint> learning_curve(const std::vector<EpisodeLog>& episodes);
std::string learning_curve_csv(const std::vector<CurvePoint>& points);

// One task's score per variant, including "np" and "oracle".
using ScoreColumn = std::map<std::string, double>;

// percentile(a) - percentile(b) against the column's np and oracle values.
// Throws MissingBaseline if either is absent.
double percentile_delta(const ScoreColumn& column, const std::string& a, const std::string& b);

// Mean of percentile_delta over the columns.
double mean_percentile_delta(std::span<const ScoreColumn> columns, const std::string& a, const std::string& b);

}  // namespace predict::harness
