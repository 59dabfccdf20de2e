#include "predict/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"

namespace predict::harness {

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) {
    auto t = text::trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto t = text::trim(v);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError("bad value for " + key + ": '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto t = text::trim(v);
    double d = std::stod(t, &used);
    if (used != t.size()) throw ConfigError("");
    return d;
  } catch (...) {
    throw ConfigError("bad value for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  const auto t = text::to_lower(text::trim(v));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("bad value for " + key + ": '" + v + "'");
}

std::string num(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& value) {
  const auto items = split_list(value);
  if (items.size() == 1 && value.find(',') == std::string::npos) {
    const auto n = parse_number<std::uint64_t>("seeds", items[0]);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::vector<std::uint64_t> out;
  for (const auto& s : items) out.push_back(parse_number<std::uint64_t>("seeds", s));
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const auto key = text::trim(raw_key);
  const auto v = text::trim(value);
  if (key == "env") {
    if (v != "pickup" && v != "plume-summary" && v != "plume-email") throw ConfigError("unknown env '" + v + "'");
    cfg.env = v;
  } else if (key == "variants" || key == "variant") {
    cfg.variants = split_list(v);
  } else if (key == "seeds") {
    cfg.seeds = parse_seeds(v);
  } else if (key == "users") {
    cfg.users = v == "default" ? std::nullopt : std::optional(parse_number<int>(key, v));
  } else if (key == "examples_per_user") {
    cfg.examples_per_user = parse_number<int>(key, v);
  } else if (key == "backend") {
    cfg.backend = v;
  } else if (key == "script.strict") {
    cfg.script_strict = parse_bool(key, v);
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "predict.max_steps") {
    cfg.max_steps = v == "default" ? std::nullopt : std::optional(parse_number<int>(key, v));
  } else if (key == "predict.threshold") {
    cfg.threshold = v == "default" ? std::nullopt : std::optional(parse_double(key, v));
  } else if (key == "predict.min_validations") {
    cfg.min_validations = v == "default" ? std::nullopt : std::optional(parse_number<int>(key, v));
  } else if (key == "predict.retrieval_k") {
    cfg.retrieval_k = v == "default" ? std::nullopt : std::optional(parse_number<int>(key, v));
  } else if (key == "failure_budget") {
    cfg.failure_budget = parse_double(key, v);
  } else if (key == "workers") {
    cfg.workers = parse_number<int>(key, v);
  } else if (key == "corpus.manifest") {
    cfg.corpus_manifest = v;
  } else if (key == "temperature.generation") {
    cfg.generation_temperature = parse_double(key, v);
  } else if (key == "max_tokens") {
    cfg.max_tokens = parse_number<int>(key, v);
  } else if (key == "record") {
    cfg.record = parse_bool(key, v);
  } else if (key == "similarity") {
    cfg.similarity = v;
  } else if (key == "pickup.grid_size") {
    cfg.grid_size = parse_number<int>(key, v);
  } else if (key == "pickup.objects") {
    cfg.grid_objects = parse_number<int>(key, v);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (text::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  apply_file(cfg, path);
  return cfg;
}

engine::VariantConfig RunConfig::variant(const std::string& name) const {
  auto v = engine::VariantConfig::from_string(name);
  engine::apply_env_defaults(v, is_pickup() ? "pickup" : "plume");
  if (v.learns()) {
    if (max_steps) v.max_refinement_steps = *max_steps;
    if (threshold) v.validation_threshold = *threshold;
    if (min_validations) v.min_validations = *min_validations;
  }
  if (retrieval_k) v.retrieval_k = *retrieval_k;
  return v;
}

void validate(const RunConfig& cfg) {
  if (cfg.variants.empty()) throw ConfigError("no variants configured");
  if (cfg.seeds.empty()) throw ConfigError("no seeds configured");
  if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (cfg.examples_per_user < 1) throw ConfigError("examples_per_user must be >= 1");
  if (cfg.users && *cfg.users < 1) throw ConfigError("users must be >= 1");
  if (cfg.failure_budget < 0 || cfg.failure_budget > 1) throw ConfigError("failure_budget must be in [0, 1]");
  if (cfg.max_steps && *cfg.max_steps < 0) throw ConfigError("predict.max_steps must be >= 0");
  if (cfg.retrieval_k && *cfg.retrieval_k < 0) throw ConfigError("predict.retrieval_k must be >= 0");
  for (const auto& name : cfg.variants) {
    const auto v = engine::VariantConfig::from_string(name);
    if (cfg.is_pickup() && (v.name == engine::VariantName::cp || v.uses_icl())) {
      throw ConfigError("variant " + name + " is not defined for pickup");
    }
  }
  if (cfg.backend == "perfect" && !cfg.is_pickup()) throw ConfigError("the perfect backend only exists for pickup");
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["env"] = env;
  kv["variants"] = text::join(variants, ",");
  std::vector<std::string> s;
  for (auto x : seeds) s.push_back(std::to_string(x));
  // A lone seed keeps a trailing comma so it is not read back as a count.
  kv["seeds"] = text::join(s, ",") + (s.size() == 1 ? "," : "");
  kv["users"] = users ? std::to_string(*users) : "default";
  kv["examples_per_user"] = std::to_string(examples_per_user);
  kv["backend"] = backend;
  kv["script.strict"] = script_strict ? "true" : "false";
  kv["predict.max_steps"] = max_steps ? std::to_string(*max_steps) : "default";
  kv["predict.threshold"] = threshold ? num(*threshold) : "default";
  kv["predict.min_validations"] = min_validations ? std::to_string(*min_validations) : "default";
  kv["predict.retrieval_k"] = retrieval_k ? std::to_string(*retrieval_k) : "default";
  kv["failure_budget"] = num(failure_budget);
  kv["corpus.manifest"] = corpus_manifest.string();
  kv["temperature.generation"] = num(generation_temperature);
  kv["max_tokens"] = std::to_string(max_tokens);
  kv["similarity"] = similarity;
  kv["pickup.grid_size"] = std::to_string(grid_size);
  kv["pickup.objects"] = std::to_string(grid_objects);
  // out, workers and record do not change results and are left out.
  std::string outs;
  for (const auto& [k, v] : kv) outs += k + "=" + v + "\n";
  return outs;
}

std::string RunConfig::hash() const { return text::hex64(text::fnv1a64(canonical())); }

}  // namespace predict::harness
