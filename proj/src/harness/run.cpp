#include "predict/harness/run.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "predict/core/error.hpp"
#include "predict/core/rng.hpp"
#include "predict/core/text.hpp"
#include "predict/engine/environment.hpp"
#include "predict/engine/predict.hpp"
#include "predict/harness/report.hpp"
#include "predict/llm/remote.hpp"
#include "predict/llm/session.hpp"
#include "predict/metrics/kernels.hpp"
#include "predict/pickup/world.hpp"
#include "predict/plume/corpus.hpp"
#include "predict/plume/preferences.hpp"

namespace predict::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string stream_name(std::uint64_t seed, const std::string& variant, const std::string& user_id) {
  return "seed" + std::to_string(seed) + "/" + variant + "/" + user_id;
}

namespace {

std::string pickup_user_id(int u) {
  std::string n = std::to_string(u);
  return "user" + std::string(n.size() < 2 ? 2 - n.size() : 0, '0') + n;
}

plume::TaskKind plume_kind(const RunConfig& cfg) {
  return cfg.env == "plume-email" ? plume::TaskKind::email : plume::TaskKind::summary;
}

std::vector<UserPlan> plan_pickup(const RunConfig& cfg, std::uint64_t seed) {
  const int users = cfg.users.value_or(10);
  pickup::LayoutConfig layout_cfg;
  layout_cfg.width = cfg.grid_size;
  layout_cfg.height = cfg.grid_size;
  layout_cfg.objects = cfg.grid_objects;

  std::vector<UserPlan> out;
  for (int u = 0; u < users; ++u) {
    UserPlan p;
    p.user_id = pickup_user_id(u);
    Rng profile_rng(derive_seed(seed, static_cast<std::uint64_t>(u) + 1, 0));
    p.truth = pickup::generate_user_profile(profile_rng, layout_cfg.vocab, p.user_id).true_preferences;
    for (int k = 0; k < cfg.examples_per_user; ++k) {
      Rng layout_rng(derive_seed(seed, static_cast<std::uint64_t>(u) + 1, static_cast<std::uint64_t>(k) + 1));
      TaskInstance t;
      t.id = p.user_id + "/" + std::to_string(k);
      t.user_id = p.user_id;
      t.context_id = "pickup";
      t.payload = pickup::generate_layout(layout_rng, layout_cfg);
      p.tasks.push_back(std::move(t));
    }
    out.push_back(std::move(p));
  }
  return out;
}

// One user per document source of the task kind. Documents of a source are
// dealt round-robin, so a source with fewer documents than examples repeats.
std::vector<UserPlan> plan_plume(const RunConfig& cfg) {
  const auto kind = plume_kind(cfg);
  const auto corpus = plume::load_corpus(cfg.corpus_manifest);
  const auto& table = plume::builtin_preference_table(plume::TableVersion::plume);

  std::vector<std::string> sources;
  for (const auto& s : plume::document_sources()) {
    if (s.kind == kind) sources.push_back(s.id);
  }
  const int users = cfg.users.value_or(static_cast<int>(sources.size()));
  if (users > static_cast<int>(sources.size())) {
    throw ConfigError(cfg.env + " has " + std::to_string(sources.size()) + " sources; users must not exceed that");
  }

  std::vector<UserPlan> out;
  for (int u = 0; u < users; ++u) {
    const auto& source = sources[static_cast<std::size_t>(u)];
    std::vector<const plume::WritingTask*> docs;
    for (const auto& d : corpus) {
      if (d.source_id == source) docs.push_back(&d);
    }
    if (docs.empty()) throw ConfigError("corpus has no documents for source " + source);

    UserPlan p;
    p.user_id = source;
    p.truth = table.at(source);
    p.truth.provenance = Provenance::true_user;
    for (int k = 0; k < cfg.examples_per_user; ++k) {
      TaskInstance t;
      t.id = source + "/" + std::to_string(k);
      t.user_id = source;
      t.context_id = source;
      t.payload = *docs[static_cast<std::size_t>(k) % docs.size()];
      p.tasks.push_back(std::move(t));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::unique_ptr<engine::Environment> make_environment(const RunConfig& cfg) {
  if (cfg.is_pickup()) return std::make_unique<engine::PickupEnvironment>();
  plume::WriteOptions w;
  w.temperature = cfg.generation_temperature;
  w.max_tokens = cfg.max_tokens;
  return std::make_unique<engine::PlumeEnvironment>(metrics::make_similarity(cfg.similarity), w);
}

json rule_to_json(const llm::ScriptedRule& r) {
  std::string m = r.matcher == llm::Matcher::exact_prompt_hash    ? "exact_prompt_hash"
                  : r.matcher == llm::Matcher::contains_substring ? "contains_substring"
                                                                  : "tag_equals";
  json j = {{"match", m}, {"pattern", r.pattern}, {"response", r.response}};
  j["uses"] = r.remaining_uses ? json(*r.remaining_uses) : json(nullptr);
  if (!r.stream.empty()) j["stream"] = r.stream;
  return j;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MissingFile("cannot write " + path.string());
  out << content;
}

void add_counts(CallCounts& into, const CallCounts& c) {
  into.coalesce += c.coalesce;
  into.refine += c.refine;
  into.breakdown += c.breakdown;
  into.regenerate += c.regenerate;
  into.validate += c.validate;
  into.generate += c.generate;
  into.judge += c.judge;
  into.user_write += c.user_write;
  into.retries += c.retries;
  into.fallbacks += c.fallbacks;
  into.prompt_tokens += c.prompt_tokens;
  into.completion_tokens += c.completion_tokens;
}

json counts_json(const CallCounts& c) {
  return {{"coalesce", c.coalesce},   {"refine", c.refine},         {"breakdown", c.breakdown},
          {"regenerate", c.regenerate}, {"validate", c.validate},   {"generate", c.generate},
          {"judge", c.judge},         {"user_write", c.user_write}, {"retries", c.retries},
          {"fallbacks", c.fallbacks}};
}

}  // namespace

std::vector<UserPlan> plan_users(const RunConfig& cfg, std::uint64_t seed) {
  return cfg.is_pickup() ? plan_pickup(cfg, seed) : plan_plume(cfg);
}

std::vector<llm::ScriptedRule> perfect_inferrer_script(const RunConfig& cfg) {
  std::vector<llm::ScriptedRule> rules;
  for (auto seed : cfg.seeds) {
    for (const auto& user : plan_users(cfg, seed)) {
      const std::string glob = "seed" + std::to_string(seed) + "/*/" + user.user_id;
      const std::string prefs = "Preferences: " + render_list(user.truth.rendered());
      for (auto t : {llm::tag::coalesce, llm::tag::refine, llm::tag::breakdown}) {
        rules.push_back({llm::Matcher::tag_equals, std::string(t), prefs, std::nullopt, glob});
      }
      rules.push_back({llm::Matcher::tag_equals, std::string(llm::tag::validate),
                       "Verdict: strongly confirms the preference", std::nullopt, glob});
    }
  }
  return rules;
}

std::unique_ptr<llm::Backend> make_backend(const RunConfig& cfg) {
  const auto& b = cfg.backend;
  if (b == "remote") return std::make_unique<llm::RemoteBackend>(llm::RemoteConfig::from_env());
  if (b == "perfect") {
    return std::make_unique<llm::ScriptedBackend>(perfect_inferrer_script(cfg), true, "scripted:perfect");
  }
  if (b.rfind("scripted:", 0) == 0) {
    const fs::path path = b.substr(9);
    return std::make_unique<llm::ScriptedBackend>(llm::load_script(path), cfg.script_strict,
                                                  "scripted:" + path.filename().string());
  }
  if (b.rfind("replay:", 0) == 0) {
    return std::make_unique<llm::ScriptedBackend>(llm::replay_rules(b.substr(7)), true, "replay");
  }
  throw ConfigError("unknown backend '" + b + "' (remote, perfect, scripted:<file>, replay:<file>)");
}

RunSummary run(const RunConfig& cfg) {
  validate(cfg);
  auto backend = make_backend(cfg);
  return run(cfg, *backend);
}

RunSummary run(const RunConfig& cfg, llm::Backend& backend) {
  validate(cfg);

  struct Job {
    std::uint64_t seed;
    std::string variant;
    UserPlan user;
    std::vector<EpisodeLog> episodes;
    std::size_t skipped_episodes = 0;
  };
  std::vector<Job> jobs;
  for (auto seed : cfg.seeds) {
    const auto users = plan_users(cfg, seed);
    for (const auto& v : cfg.variants) {
      for (const auto& u : users) jobs.push_back({seed, v, u, {}, 0});
    }
  }
  const std::size_t total = jobs.size() * static_cast<std::size_t>(cfg.examples_per_user);
  const auto allowed_failures = static_cast<std::size_t>(cfg.failure_budget * static_cast<double>(total));

  llm::TranscriptSink sink;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failures{0};
  std::atomic<bool> abort{false};
  std::mutex first_error_mu;
  std::string first_error;

  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      auto& job = jobs[i];
      if (abort.load()) {
        job.skipped_episodes = job.user.tasks.size();
        continue;
      }
      auto env = make_environment(cfg);
      const auto variant = cfg.variant(job.variant);
      llm::LlmSession session(backend, stream_name(job.seed, job.variant, job.user.user_id),
                              cfg.record ? &sink : nullptr);
      engine::ExampleStore store;
      for (std::size_t k = 0; k < job.user.tasks.size(); ++k) {
        if (abort.load()) {
          job.skipped_episodes = job.user.tasks.size() - k;
          break;
        }
        engine::EpisodeInput in;
        in.task = job.user.tasks[k];
        in.truth = job.user.truth;
        in.example_index = static_cast<int>(k);
        in.seed = job.seed;
        auto e = engine::run_episode(session, *env, variant, store, in);
        e.env = cfg.env;
        if (e.failed) {
          {
            std::lock_guard lock(first_error_mu);
            if (first_error.empty()) first_error = e.stream + ": " + e.error;
          }
          if (failures.fetch_add(1) + 1 > allowed_failures) abort.store(true);
        }
        job.episodes.push_back(std::move(e));
      }
    }
  };

  int n_workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::clamp(n_workers, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RunSummary summary;
  summary.dir = cfg.out;
  fs::create_directories(cfg.out);

  std::vector<EpisodeLog> all;
  {
    std::ofstream out(cfg.out / "episodes.jsonl", std::ios::binary);
    if (!out) throw MissingFile("cannot write " + (cfg.out / "episodes.jsonl").string());
    for (const auto& job : jobs) {
      summary.skipped += job.skipped_episodes;
      for (const auto& e : job.episodes) {
        out << to_jsonl_line(e) << '\n';
        ++summary.episodes;
        if (e.scored && !e.failed) ++summary.scored;
        if (e.failed) ++summary.failed;
        add_counts(summary.totals, e.calls);
        all.push_back(e);
      }
    }
  }
  if (cfg.record) sink.write_jsonl(cfg.out / "transcript.jsonl");
  write_text(cfg.out / "config.txt", cfg.canonical());
  if (cfg.backend == "perfect") {
    std::string script;
    for (const auto& r : perfect_inferrer_script(cfg)) script += rule_to_json(r).dump() + "\n";
    write_text(cfg.out / "perfect_script.jsonl", script);
  }

  const auto failed_or_skipped = summary.failed + summary.skipped;
  summary.over_budget = failed_or_skipped > allowed_failures;
  if (summary.over_budget) {
    std::ostringstream d;
    d << failed_or_skipped << " of " << total << " episodes failed or were skipped (budget "
      << allowed_failures << ")";
    if (!first_error.empty()) d << "; first error: " << first_error;
    summary.diagnostic = d.str();
  }

  std::string similarity = cfg.is_pickup() ? "none" : cfg.similarity;
  json manifest = {
      {"schema", "predict-lab/manifest/1"},
      {"config_hash", cfg.hash()},
      {"env", cfg.env},
      {"variants", cfg.variants},
      {"seeds", cfg.seeds},
      {"examples_per_user", cfg.examples_per_user},
      {"backend", backend.id()},
      {"episodes", summary.episodes},
      {"scored", summary.scored},
      {"failed", summary.failed},
      {"skipped", summary.skipped},
      {"over_budget", summary.over_budget},
      {"diagnostic", summary.diagnostic},
      {"calls", counts_json(summary.totals)},
      {"token_totals",
       {{"prompt", summary.totals.prompt_tokens}, {"completion", summary.totals.completion_tokens}}},
      {"similarity", similarity},
      {"simd", std::string(metrics::kernels::to_string(metrics::kernels::active().isa))},
  };
  write_text(cfg.out / "manifest.json", manifest.dump(2) + "\n");

  const auto report = build_report(all);
  write_report(report, all, cfg.out);
  return summary;
}

std::vector<EpisodeLog> read_episodes(const fs::path& jsonl) {
  std::ifstream in(jsonl, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + jsonl.string());
  std::vector<EpisodeLog> out;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    out.push_back(episode_from_jsonl_line(line));
  }
  return out;
}

}  // namespace predict::harness
