#include "predict/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "predict/core/error.hpp"
#include "predict/harness/run.hpp"
#include "predict/metrics/metrics.hpp"

namespace predict::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using Key = std::tuple<std::string, std::string, std::string>;  // env, metric, variant

// env, metric, variant -> seed -> values
using Grouped = std::map<Key, std::map<std::uint64_t, std::vector<double>>>;

Grouped group_scored(const std::vector<EpisodeLog>& episodes) {
  Grouped g;
  for (const auto& e : episodes) {
    if (!e.scored || e.failed) continue;
    for (const auto& [metric, value] : e.metrics) g[{e.env, metric, e.variant}][e.seed].push_back(value);
  }
  return g;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MissingFile("cannot write " + path.string());
  out << content;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

RunData load_run(const fs::path& dir) {
  RunData r;
  r.dir = dir;
  std::ifstream in(dir / "manifest.json");
  if (!in) throw MissingFile("no manifest.json in " + dir.string());
  try {
    r.manifest = json::parse(in);
  } catch (const json::exception& ex) {
    throw ParseError("bad manifest in " + dir.string() + ": " + ex.what());
  }
  r.episodes = read_episodes(dir / "episodes.jsonl");
  return r;
}

const ReportRow* Report::find(const std::string& env, const std::string& variant, const std::string& metric) const {
  for (const auto& r : rows) {
    if (r.env == env && r.variant == variant && r.metric == metric) return &r;
  }
  return nullptr;
}

Report build_report(const std::vector<EpisodeLog>& episodes, const ReportOptions& opts) {
  Report rep;
  for (const auto& [key, by_seed] : group_scored(episodes)) {
    ReportRow row;
    std::tie(row.env, row.metric, row.variant) = key;
    for (const auto& [seed, values] : by_seed) {
      row.seeds.push_back(seed);
      row.per_seed.push_back(metrics::mean(values));
      row.episodes += values.size();
    }
    row.mean = metrics::mean(row.per_seed);
    row.std = metrics::sample_std(row.per_seed);
    rep.rows.push_back(std::move(row));
  }

  std::set<std::string> envs;
  for (const auto& e : episodes) envs.insert(e.env);
  if (opts.require_baselines) {
    for (const auto& env : envs) {
      bool np = false, oracle = false;
      for (const auto& r : rep.rows) {
        np |= r.env == env && r.variant == "np";
        oracle |= r.env == env && r.variant == "oracle";
      }
      if (!np || !oracle) throw MissingBaseline("percentile scores for " + env + " need both np and oracle runs");
    }
  }

  for (auto& row : rep.rows) {
    const auto* np = rep.find(row.env, "np", row.metric);
    const auto* oracle = rep.find(row.env, "oracle", row.metric);
    if (!np || !oracle || oracle->mean == np->mean) continue;
    row.percentile = metrics::percentile_score(row.mean, np->mean, oracle->mean);
    row.percentile_std = 100.0 * row.std / std::abs(oracle->mean - np->mean);
  }

  for (const auto& a : rep.rows) {
    for (const auto& b : rep.rows) {
      if (a.env != b.env || a.metric != b.metric || a.variant == b.variant) continue;
      DeltaRow d{a.env, a.metric, a.variant, b.variant, a.mean - b.mean, std::nullopt};
      if (a.percentile && b.percentile) d.percentile_delta = *a.percentile - *b.percentile;
      rep.deltas.push_back(std::move(d));
    }
  }
  return rep;
}

Report build_report(const std::vector<RunData>& runs, const ReportOptions& opts) {
  std::vector<EpisodeLog> all;
  std::set<std::string> modes;
  for (const auto& r : runs) {
    all.insert(all.end(), r.episodes.begin(), r.episodes.end());
    if (r.manifest.contains("similarity")) modes.insert(r.manifest["similarity"].get<std::string>());
  }
  auto rep = build_report(all, opts);
  rep.similarity_modes.assign(modes.begin(), modes.end());
  return rep;
}

std::string report_csv(const Report& r) {
  std::ostringstream o;
  o << "env,variant,metric,mean,std,seeds,episodes,percentile,percentile_std,per_seed\n";
  for (const auto& row : r.rows) {
    std::string per_seed;
    for (std::size_t i = 0; i < row.per_seed.size(); ++i) {
      if (i) per_seed += ';';
      per_seed += std::to_string(row.seeds[i]) + ":" + fmt(row.per_seed[i]);
    }
    o << csv_field(row.env) << ',' << csv_field(row.variant) << ',' << csv_field(row.metric) << ','
      << fmt(row.mean) << ',' << fmt(row.std) << ',' << row.seeds.size() << ',' << row.episodes << ','
      << fmt(row.percentile) << ',' << fmt(row.percentile_std) << ',' << per_seed << '\n';
  }
  return o.str();
}

std::string deltas_csv(const Report& r) {
  std::ostringstream o;
  o << "env,metric,a,b,delta,percentile_delta\n";
  for (const auto& d : r.deltas) {
    o << csv_field(d.env) << ',' << csv_field(d.metric) << ',' << csv_field(d.a) << ',' << csv_field(d.b) << ','
      << fmt(d.delta) << ',' << fmt(d.percentile_delta) << '\n';
  }
  return o.str();
}

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& means, const std::vector<double>& stds) {
  const double bar_w = 48, gap = 20, left = 60, top = 40, plot_h = 240;
  const double width = left + static_cast<double>(labels.size()) * (bar_w + gap) + gap;
  const double height = top + plot_h + 50;

  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double s = i < stds.size() ? stds[i] : 0.0;
    lo = std::min(lo, means[i] - s);
    hi = std::max(hi, means[i] + s);
  }
  if (hi == lo) hi = lo + 1;
  auto y = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };

  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  o << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(title)
    << "</text>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << y(0) << "\" x2=\"" << width - gap / 2 << "\" y2=\"" << y(0)
    << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << left - 6 << "\" y=\"" << y(hi) + 4 << "\" font-family=\"sans-serif\" font-size=\"10\" "
    << "text-anchor=\"end\">" << hi << "</text>\n";
  o << "<text x=\"" << left - 6 << "\" y=\"" << y(lo) + 4 << "\" font-family=\"sans-serif\" font-size=\"10\" "
    << "text-anchor=\"end\">" << lo << "</text>\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = left + gap + static_cast<double>(i) * (bar_w + gap);
    const double m = i < means.size() ? means[i] : 0.0;
    const double s = i < stds.size() ? stds[i] : 0.0;
    const double y0 = std::min(y(m), y(0)), h = std::abs(y(m) - y(0));
    o << "<rect x=\"" << x << "\" y=\"" << y0 << "\" width=\"" << bar_w << "\" height=\"" << h
      << "\" fill=\"#4a78b0\"/>\n";
    const double cx = x + bar_w / 2;
    o << "<line x1=\"" << cx << "\" y1=\"" << y(m - s) << "\" x2=\"" << cx << "\" y2=\"" << y(m + s)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << cx << "\" y=\"" << top + plot_h + 20 << "\" font-family=\"sans-serif\" font-size=\"11\" "
      << "text-anchor=\"middle\">" << xml_escape(labels[i]) << "</text>\n";
    o << "<text x=\"" << cx << "\" y=\"" << top + plot_h + 34 << "\" font-family=\"sans-serif\" font-size=\"9\" "
      << "text-anchor=\"middle\">" << m << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_report(const Report& r, const std::vector<EpisodeLog>& episodes, const fs::path& dir) {
  fs::create_directories(dir / "charts");
  write_file(dir / "report.csv", report_csv(r));
  write_file(dir / "deltas.csv", deltas_csv(r));
  write_file(dir / "learning_curve.csv", learning_curve_csv(learning_curve(episodes)));

  std::map<std::pair<std::string, std::string>, std::vector<const ReportRow*>> charts;
  for (const auto& row : r.rows) charts[{row.env, row.metric}].push_back(&row);
  for (const auto& [key, rows] : charts) {
    std::vector<std::string> labels;
    std::vector<double> means, stds;
    for (const auto* row : rows) {
      labels.push_back(row->variant);
      means.push_back(row->mean);
      stds.push_back(row->std);
    }
    write_file(dir / "charts" / (key.first + "_" + key.second + ".svg"),
               bar_chart_svg(key.first + " " + key.second + " (mean +- std over seeds)", labels, means, stds));
  }
}

std::vector<CurvePoint> learning_curve(const std::vector<EpisodeLog>& episodes) {
  // env, variant, metric, index -> seed -> values
  std::map<std::tuple<std::string, std::string, std::string, int>, std::map<std::uint64_t, std::vector<double>>> g;
  for (const auto& e : episodes) {
    if (e.failed) continue;
    for (const auto& [metric, value] : e.metrics) g[{e.env, e.variant, metric, e.example_index}][e.seed].push_back(value);
  }
  std::vector<CurvePoint> out;
  for (const auto& [key, by_seed] : g) {
    CurvePoint p;
    std::tie(p.env, p.variant, p.metric, p.example_index) = key;
    std::vector<double> per_seed;
    for (const auto& [seed, values] : by_seed) per_seed.push_back(metrics::mean(values));
    p.seeds = per_seed.size();
    p.mean = metrics::mean(per_seed);
    p.std = metrics::sample_std(per_seed);
    out.push_back(std::move(p));
  }
  return out;
}

std::string learning_curve_csv(const std::vector<CurvePoint>& points) {
  std::ostringstream o;
  o << "env,variant,metric,example_index,seeds,mean,std\n";
  for (const auto& p : points) {
    o << csv_field(p.env) << ',' << csv_field(p.variant) << ',' << csv_field(p.metric) << ',' << p.example_index
      << ',' << p.seeds << ',' << fmt(p.mean) << ',' << fmt(p.std) << '\n';
  }
  return o.str();
}

double percentile_delta(const ScoreColumn& column, const std::string& a, const std::string& b) {
  auto get = [&](const std::string& k) {
    auto it = column.find(k);
    if (it == column.end()) {
      if (k == "np" || k == "oracle") throw MissingBaseline("score column has no " + k + " value");
      throw ConfigError("score column has no value for " + k);
    }
    return it->second;
  };
  const double np = get("np"), oracle = get("oracle");
  return metrics::percentile_score(get(a), np, oracle) - metrics::percentile_score(get(b), np, oracle);
}

double mean_percentile_delta(std::span<const ScoreColumn> columns, const std::string& a, const std::string& b) {
  if (columns.empty()) throw ConfigError("no score columns");
  std::vector<double> d;
  for (const auto& c : columns) d.push_back(percentile_delta(c, a, b));
  return metrics::mean(d);
}

}  // namespace predict::harness
