#include "predict/metrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"
#include "predict/core/verdict.hpp"
#include "predict/llm/parse.hpp"
#include "predict/llm/templates.hpp"
#include "predict/metrics/kernels.hpp"

namespace predict::metrics {

double iou(const PreferenceSet& a, const PreferenceSet& b) {
  const auto ka = a.keys();
  const auto kb = b.keys();
  const std::set<std::string> sa(ka.begin(), ka.end()), sb(kb.begin(), kb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& k : sa) inter += sb.count(k);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      flush();
    } else if (std::ispunct(c) && c != '\'' && c != '-') {
      // apostrophes and hyphens stay inside words ("don't", "step-by-step")
      flush();
      out.emplace_back(1, static_cast<char>(c));
    } else {
      cur.push_back(static_cast<char>(c));
    }
  }
  flush();
  return out;
}

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double ln_levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  const auto m = std::max(a.size(), b.size());
  if (m == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

PpcmResult ppcm(llm::LlmSession& s, const plume::WritingSample& sample, plume::TaskKind kind,
                const PreferenceSet& true_prefs) {
  if (true_prefs.empty()) throw ConfigError("ppcm needs at least one true preference");
  PpcmResult r;
  const auto noun = plume::task_words(kind).output_noun;
  for (const auto& c : true_prefs.components) {
    auto req = llm::render_template("judge", {{"output_noun", noun}, {"completion", sample.text}, {"preference", c.render()}});
    req.tag = std::string(llm::tag::judge);
    auto score = s.ask(req, [](const std::string& t) {
      auto v = parse_judge_verdict(llm::extract_marked_line(t, llm::kVerdictMarker));
      if (!v) throw ParseError("unrecognized judge verdict");
      return *v;
    });
    if (!score) {
      ++r.unparsed;
      ++s.counts().fallbacks;
    }
    r.scores.push_back(score.value_or(0));
  }
  double total = 0;
  for (int v : r.scores) total += v;
  r.score = total / static_cast<double>(r.scores.size());
  return r;
}

double percentile_score(double x, double np, double oracle) {
  if (oracle == np) throw DegenerateRange("oracle and no-preference baselines coincide");
  return 100.0 * (x - np) / (oracle - np);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return kernels::sum(xs) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  return std::sqrt(kernels::centered_sumsq(xs, m) / static_cast<double>(xs.size() - 1));
}

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw ConfigError("pearson_r needs two equal series of length >= 2");
  const double mx = mean(xs), my = mean(ys);
  const double sxx = kernels::centered_sumsq(xs, mx);
  const double syy = kernels::centered_sumsq(ys, my);
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson_r of a constant series");
  const double r = kernels::centered_dot(xs, ys, mx, my) / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("cosine_similarity of vectors with different sizes");
  const double na = kernels::dot(a, a), nb = kernels::dot(b, b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(kernels::dot(a, b) / std::sqrt(na * nb), -1.0, 1.0);
}

namespace {

std::map<std::string, int> word_bag(const std::string& s) {
  std::map<std::string, int> bag;
  for (const auto& t : tokenize(s)) {
    if (t.size() == 1 && std::ispunct(static_cast<unsigned char>(t[0]))) continue;
    ++bag[text::to_lower(t)];
  }
  return bag;
}

}  // namespace

double TokenF1Similarity::score(const std::string& a, const std::string& b) {
  const auto ba = word_bag(a), bb = word_bag(b);
  int na = 0, nb = 0, overlap = 0;
  for (const auto& [w, n] : ba) na += n;
  for (const auto& [w, n] : bb) nb += n;
  if (na == 0 && nb == 0) return 1.0;
  for (const auto& [w, n] : ba) {
    auto it = bb.find(w);
    if (it != bb.end()) overlap += std::min(n, it->second);
  }
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / na;
  const double r = static_cast<double>(overlap) / nb;
  return 2 * p * r / (p + r);
}

EmbeddingSimilarity::EmbeddingSimilarity(llm::RemoteConfig cfg, std::string model)
    : cfg_(std::move(cfg)), model_(std::move(model)), limit_(cfg_.max_in_flight) {}

std::vector<double> EmbeddingSimilarity::embed(const std::string& text) {
  auto http = llm::post_json(cfg_, "/embeddings", {{"model", model_}, {"input", text}}, limit_);
  try {
    return http.body.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& ex) {
    throw BackendError(std::string("malformed embeddings response: ") + ex.what());
  }
}

double EmbeddingSimilarity::score(const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  const auto ea = embed(a), eb = embed(b);
  return cosine_similarity(ea, eb);
}

std::unique_ptr<Similarity> make_similarity(const std::string& spec) {
  if (spec.empty() || spec == "token_f1") return std::make_unique<TokenF1Similarity>();
  if (spec.rfind("embedding:", 0) == 0) {
    return std::make_unique<EmbeddingSimilarity>(llm::RemoteConfig::from_env(), spec.substr(10));
  }
  throw ConfigError("unknown similarity '" + spec + "'");
}

std::string preference_text(const PreferenceSet& s) { return text::join(s.rendered(), "; "); }

}  // namespace predict::metrics
