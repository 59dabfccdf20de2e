#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "predict/core/preference.hpp"
#include "predict/llm/remote.hpp"
#include "predict/llm/session.hpp"
#include "predict/plume/writing.hpp"

namespace predict::metrics {

// |a ∩ b| / |a ∪ b| by component key; 1 when both are empty.
double iou(const PreferenceSet& a, const PreferenceSet& b);

// Word tokens with punctuation split off: "Hi, there!" -> Hi , there !
std::vector<std::string> tokenize(std::string_view text);

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b);
// Distance over max length; 0 when both are empty.
double ln_levenshtein(std::span<const std::string> a, std::span<const std::string> b);

struct PpcmResult {
  double score = 0.0;       // mean of component scores
  std::vector<int> scores;  // one per true component
  int unparsed = 0;         // components scored 0 because no verdict was found
};

/// Per preference-component match: one judge call per true component, each
/// verdict mapped to [-2, 2], averaged. Throws ConfigError on an empty set.
PpcmResult ppcm(llm::LlmSession& s, const plume::WritingSample& sample, plume::TaskKind kind,
                const PreferenceSet& true_prefs);

// 100 (x - np) / (oracle - np). Throws DegenerateRange if oracle == np.
double percentile_score(double x, double np, double oracle);

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_std(std::span<const double> xs);
// Throws ConfigError on mismatched or short input, ZeroVariance on a constant series.
double pearson_r(std::span<const double> xs, std::span<const double> ys);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Text similarity used to compare preference descriptions.
class Similarity {
 public:
  virtual ~Similarity() = default;
  virtual double score(const std::string& a, const std::string& b) = 0;
  // "embedding:<model>" or "token_f1"; recorded next to reported values.
  virtual std::string mode() const = 0;
};

// F1 of lowercased word-token multisets, punctuation ignored.
class TokenF1Similarity final : public Similarity {
 public:
  double score(const std::string& a, const std::string& b) override;
  std::string mode() const override { return "token_f1"; }
};

// Cosine of embeddings from an OpenAI-compatible /embeddings endpoint.
class EmbeddingSimilarity final : public Similarity {
 public:
  EmbeddingSimilarity(llm::RemoteConfig cfg, std::string model);
  double score(const std::string& a, const std::string& b) override;
  std::string mode() const override { return "embedding:" + model_; }
  std::vector<double> embed(const std::string& text);

 private:
  llm::RemoteConfig cfg_;
  std::string model_;
  llm::InFlightLimit limit_;
};

// "token_f1" or "embedding:<model>" (endpoint taken from the environment).
std::unique_ptr<Similarity> make_similarity(const std::string& spec);

// Preferences as one comparable string, components joined by "; ".
std::string preference_text(const PreferenceSet& s);

}  // namespace predict::metrics
