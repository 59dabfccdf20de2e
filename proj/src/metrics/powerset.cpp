#include "predict/metrics/powerset.hpp"

#include <cstdio>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict::metrics {

PowersetTable powerset_correlation(llm::LlmSession& s, const std::vector<plume::WritingTask>& tasks,
                                   const PreferenceSet& true_prefs, const PowersetOptions& opts) {
  const auto n = true_prefs.size();
  if (n > 6) throw ConfigError("powerset limited to 6 components");
  if (tasks.empty()) throw ConfigError("powerset needs at least one task");

  PowersetTable t;
  t.metrics = {"iou"};
  if (opts.similarity) {
    t.metrics.push_back("similarity");
    t.similarity_mode = opts.similarity->mode();
  }
  t.metrics.insert(t.metrics.end(), {"l_dist", "ln_l_dist", "ppcm"});

  std::vector<std::vector<std::string>> user_tokens;
  for (const auto& task : tasks) user_tokens.push_back(tokenize(plume::synthetic_user_write(s, task, true_prefs, opts.write).text));

  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    PreferenceSet subset;
    subset.provenance = Provenance::inferred;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) subset.components.push_back(true_prefs.components[i]);
    }
    const double pref_iou = iou(subset, true_prefs);
    std::optional<double> sim;
    if (opts.similarity) sim = opts.similarity->score(preference_text(subset), preference_text(true_prefs));
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      try {
        const auto sample = plume::agent_write(s, tasks[k], subset, opts.write);
        const auto tokens = tokenize(sample.text);
        PowersetRow row{subset.rendered(), static_cast<int>(k), {pref_iou}};
        if (sim) row.values.push_back(*sim);
        row.values.push_back(static_cast<double>(levenshtein(tokens, user_tokens[k])));
        row.values.push_back(ln_levenshtein(tokens, user_tokens[k]));
        row.values.push_back(ppcm(s, sample, tasks[k].kind, true_prefs).score);
        t.rows.push_back(std::move(row));
      } catch (const Error&) {
        ++t.failed_generations;
      }
    }
  }

  for (std::size_t i = 0; i < t.metrics.size(); ++i) {
    for (std::size_t j = i + 1; j < t.metrics.size(); ++j) {
      std::vector<double> xs, ys;
      for (const auto& r : t.rows) {
        xs.push_back(r.values[i]);
        ys.push_back(r.values[j]);
      }
      MetricCorrelation c{t.metrics[i], t.metrics[j], std::nullopt};
      try {
        c.r = pearson_r(xs, ys);
      } catch (const Error&) {
      }
      t.correlations.push_back(c);
    }
  }
  return t;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const PowersetTable& t) {
  std::string out = "subset,instance";
  for (const auto& m : t.metrics) out += "," + m;
  out += "\n";
  for (const auto& r : t.rows) {
    out += csv_field(text::join(r.subset, "; ")) + "," + std::to_string(r.instance);
    for (double v : r.values) out += "," + num(v);
    out += "\n";
  }
  return out;
}

std::string correlations_csv(const PowersetTable& t) {
  std::string out = "metric_a,metric_b,pearson_r,n,partial\n";
  for (const auto& c : t.correlations) {
    out += c.a + "," + c.b + "," + (c.r ? num(*c.r) : std::string("NA")) + "," + std::to_string(t.rows.size()) + "," +
           (t.partial() ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace predict::metrics
