// predict-lab: run preference-inference experiments and summarize them.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "predict/core/error.hpp"
#include "predict/core/rng.hpp"
#include "predict/core/text.hpp"
#include "predict/harness/config.hpp"
#include "predict/harness/report.hpp"
#include "predict/harness/run.hpp"
#include "predict/llm/session.hpp"
#include "predict/metrics/powerset.hpp"
#include "predict/pickup/ascii.hpp"
#include "predict/pickup/planner.hpp"
#include "predict/plume/corpus.hpp"
#include "predict/plume/preferences.hpp"

namespace fs = std::filesystem;
using namespace predict;

namespace {

struct RunArgs {
  std::string config;
  std::string env;
  std::vector<std::string> variants;
  std::string seeds;
  int users = 0;
  int examples = 0;
  std::string backend;
  std::string out;
  int workers = 0;
  std::vector<std::string> sets;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config,-c", a.config, "key=value config file");
  cmd->add_option("--env", a.env, "pickup | plume-summary | plume-email");
  cmd->add_option("--variant,--variants", a.variants, "variant names (repeat or comma separate)")->delimiter(',');
  cmd->add_option("--seeds", a.seeds, "seed count (N means 0..N-1) or comma list");
  cmd->add_option("--users", a.users, "users per seed");
  cmd->add_option("--examples", a.examples, "examples per user");
  cmd->add_option("--backend", a.backend, "remote | perfect | scripted:<file> | replay:<file>");
  cmd->add_option("--out,-o", a.out, "run directory");
  cmd->add_option("--workers,-j", a.workers, "worker threads (0: all cores)");
  cmd->add_option("--set", a.sets, "extra key=value setting, repeatable");
}

harness::RunConfig build_config(const RunArgs& a) {
  harness::RunConfig cfg;
  if (!a.config.empty()) harness::apply_file(cfg, a.config);
  if (!a.env.empty()) cfg.env = a.env;
  if (!a.variants.empty()) cfg.variants = a.variants;
  if (!a.seeds.empty()) cfg.seeds = harness::parse_seeds(a.seeds);
  if (a.users > 0) cfg.users = a.users;
  if (a.examples > 0) cfg.examples_per_user = a.examples;
  if (!a.backend.empty()) cfg.backend = a.backend;
  if (!a.out.empty()) cfg.out = a.out;
  if (a.workers > 0) cfg.workers = a.workers;
  for (const auto& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    harness::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int finish_run(const harness::RunSummary& s) {
  std::cout << "run directory: " << s.dir.string() << "\n"
            << "episodes: " << s.episodes << " (scored " << s.scored << ", failed " << s.failed << ", skipped "
            << s.skipped << ")\n"
            << "tokens: " << s.totals.prompt_tokens << " prompt, " << s.totals.completion_tokens << " completion\n";
  if (s.over_budget) {
    std::cerr << "error: failure budget exceeded: " << s.diagnostic << "\n";
    return 1;
  }
  return 0;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const harness::Report& r) {
  std::cout << "env,variant,metric,mean,std,seeds,percentile\n";
  for (const auto& row : r.rows) {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << row.env << ',' << row.variant << ',' << row.metric << ',' << row.mean << ',' << row.std << ','
         << row.seeds.size() << ',';
    if (row.percentile) {
      line.precision(1);
      line << *row.percentile;
    } else {
      line << "NA";
    }
    std::cout << line.str() << "\n";
  }
  if (!r.similarity_modes.empty()) std::cout << "similarity: " << text::join(r.similarity_modes, ", ") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference inference experiments over gridworld and writing tasks"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run an experiment and write a run directory");
  add_run_options(run_cmd, run_args);

  std::vector<std::string> report_dirs;
  std::string report_out;
  bool require_baselines = false;
  auto* report_cmd = app.add_subcommand("report", "aggregate one or more run directories");
  report_cmd->add_option("dirs", report_dirs, "run directories")->required();
  report_cmd->add_option("--out,-o", report_out, "write report.csv, deltas.csv and charts here");
  report_cmd->add_flag("--percentile", require_baselines, "fail unless np and oracle runs are present");

  std::string corr_env = "plume-summary", corr_source, corr_backend = "remote", corr_out = "runs/correlate",
              corr_similarity = "token_f1", corr_manifest = "data/corpus/manifest.csv";
  int corr_instances = 0;
  auto* corr_cmd = app.add_subcommand("correlate", "powerset correlation between preference and output metrics");
  corr_cmd->add_option("--env", corr_env, "plume-summary | plume-email");
  corr_cmd->add_option("--source", corr_source, "document source whose preferences are used");
  corr_cmd->add_option("--instances", corr_instances, "documents to use (0: all for the source)");
  corr_cmd->add_option("--backend", corr_backend, "remote | scripted:<file>");
  corr_cmd->add_option("--similarity", corr_similarity, "token_f1 | embedding:<model>");
  corr_cmd->add_option("--corpus", corr_manifest, "corpus manifest");
  corr_cmd->add_option("--out,-o", corr_out, "output directory");

  std::string replay_transcript, replay_config, replay_out, replay_run;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded run from its transcript");
  replay_cmd->add_option("--run", replay_run, "recorded run directory (uses its config.txt and transcript.jsonl)");
  replay_cmd->add_option("--transcript", replay_transcript, "transcript.jsonl to replay");
  replay_cmd->add_option("--config,-c", replay_config, "config of the recorded run");
  replay_cmd->add_option("--out,-o", replay_out, "run directory for the replay")->required();

  std::uint64_t grid_seed = 0;
  int grid_user = 0, grid_example = 0, grid_size = 5, grid_objects = 7;
  auto* grid_cmd = app.add_subcommand("grid", "print a generated layout with the user's trajectory");
  grid_cmd->add_option("--seed", grid_seed);
  grid_cmd->add_option("--user", grid_user);
  grid_cmd->add_option("--example", grid_example);
  grid_cmd->add_option("--size", grid_size);
  grid_cmd->add_option("--objects", grid_objects);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return finish_run(harness::run(build_config(run_args)));

    if (*report_cmd) {
      std::vector<harness::RunData> runs;
      for (const auto& d : report_dirs) runs.push_back(harness::load_run(d));
      harness::ReportOptions opts;
      opts.require_baselines = require_baselines;
      const auto rep = harness::build_report(runs, opts);
      print_report(rep);
      if (!report_out.empty()) {
        std::vector<EpisodeLog> all;
        for (const auto& r : runs) all.insert(all.end(), r.episodes.begin(), r.episodes.end());
        harness::write_report(rep, all, report_out);
      }
      return 0;
    }

    if (*corr_cmd) {
      harness::RunConfig cfg;
      cfg.env = corr_env;
      cfg.backend = corr_backend;
      if (cfg.is_pickup()) throw ConfigError("correlate works on the writing tasks");
      const auto kind = corr_env == "plume-email" ? plume::TaskKind::email : plume::TaskKind::summary;
      if (corr_source.empty()) {
        for (const auto& s : plume::document_sources()) {
          if (s.kind == kind) {
            corr_source = s.id;
            break;
          }
        }
      }
      if (plume::source_info(corr_source).kind != kind) throw ConfigError(corr_source + " is not a " + corr_env + " source");
      std::vector<plume::WritingTask> tasks;
      for (auto& d : plume::load_corpus(corr_manifest)) {
        if (d.source_id == corr_source) tasks.push_back(std::move(d));
      }
      if (corr_instances > 0 && static_cast<std::size_t>(corr_instances) < tasks.size()) tasks.resize(corr_instances);
      auto backend = harness::make_backend(cfg);
      llm::TranscriptSink sink;
      llm::LlmSession session(*backend, "correlate/" + corr_source, &sink);
      auto similarity = metrics::make_similarity(corr_similarity);
      metrics::PowersetOptions opts;
      opts.similarity = similarity.get();
      auto truth = plume::builtin_preference_table(plume::TableVersion::plume).at(corr_source);
      const auto table = metrics::powerset_correlation(session, tasks, truth, opts);
      fs::create_directories(corr_out);
      std::ofstream(fs::path(corr_out) / "powerset.csv") << metrics::to_csv(table);
      std::ofstream(fs::path(corr_out) / "correlations.csv") << metrics::correlations_csv(table);
      sink.write_jsonl(fs::path(corr_out) / "transcript.jsonl");
      std::cout << metrics::correlations_csv(table);
      if (table.partial()) std::cerr << "warning: " << table.failed_generations << " generations failed\n";
      return 0;
    }

    if (*replay_cmd) {
      harness::RunConfig cfg;
      fs::path transcript = replay_transcript;
      if (!replay_run.empty()) {
        harness::apply_file(cfg, fs::path(replay_run) / "config.txt");
        if (transcript.empty()) transcript = fs::path(replay_run) / "transcript.jsonl";
      } else if (!replay_config.empty()) {
        harness::apply_file(cfg, replay_config);
      } else {
        throw ConfigError("replay needs --run or --config");
      }
      if (transcript.empty()) throw ConfigError("replay needs --transcript");
      cfg.backend = "replay:" + transcript.string();
      cfg.out = replay_out;
      const int rc = finish_run(harness::run(cfg));
      if (!replay_run.empty()) {
        const bool same = read_all(fs::path(replay_run) / "episodes.jsonl") == read_all(cfg.out / "episodes.jsonl");
        std::cout << "episodes.jsonl " << (same ? "identical to" : "differs from") << " the recorded run\n";
        if (!same) return 1;
      }
      return rc;
    }

    if (*grid_cmd) {
      harness::RunConfig cfg;
      cfg.env = "pickup";
      cfg.users = grid_user + 1;
      cfg.examples_per_user = grid_example + 1;
      cfg.grid_size = grid_size;
      cfg.grid_objects = grid_objects;
      const auto users = harness::plan_users(cfg, grid_seed);
      const auto& u = users.back();
      const auto& layout = u.tasks.back().layout();
      const auto traj = pickup::plan_trajectory(layout, u.truth);
      std::cout << u.user_id << ": " << render_list(u.truth.rendered()) << "\n" << pickup::render_ascii(layout, &traj);
      return 0;
    }
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
