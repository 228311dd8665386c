// Copyright 2026 The mmcurate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mmcurate/backends/structured.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/common/log.hpp"
#include "mmcurate/dataset/export.hpp"
#include "mmcurate/dataset/manifest.hpp"
#include "mmcurate/dataset/split.hpp"
#include "mmcurate/dataset/stats.hpp"
#include "mmcurate/eval/eval.hpp"
#include "mmcurate/pipeline/config.hpp"
#include "mmcurate/pipeline/pipeline.hpp"
#include "mmcurate/verify/audit.hpp"

namespace mmcurate::cli {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using pipeline::Stage;

namespace {

struct Common {
  std::string config;
  std::string run_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallelism;
  std::vector<std::string> backends;
  bool mock = false;
  std::string log_level = "info";
};

struct PipelineArgs {
  bool retry_quarantined = false;
};

struct ManifestArgs {
  std::string manifest;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("--config", c.config, "Run configuration (JSON)")->envname("MMCURATE_CONFIG");
  if (config_required) opt->required();
  cmd->add_option("--run-dir", c.run_dir, "Run directory (overrides run_root/run_id)")->envname("MMCURATE_RUN_DIR");
  cmd->add_option("--seed", c.seed, "Global seed (also seeds the split)")->envname("MMCURATE_SEED");
  cmd->add_option("--parallelism", c.parallelism, "Worker threads")->envname("MMCURATE_PARALLELISM")->check(
      CLI::PositiveNumber);
  cmd->add_option("--backend", c.backends, "Backend endpoint as name=url (chat, cot_chat, eval_chat, sidecar)")
      ->envname("MMCURATE_BACKEND")
      ->delimiter(',');
  cmd->add_flag("--mock", c.mock, "Force mock backends")->envname("MMCURATE_MOCK");
  cmd->add_option("--log-level", c.log_level, "debug|info|warn|error|off")
      ->envname("MMCURATE_LOG_LEVEL")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
}

log::Level parse_level(const std::string& s) {
  if (s == "debug") return log::Level::kDebug;
  if (s == "warn") return log::Level::kWarn;
  if (s == "error") return log::Level::kError;
  if (s == "off") return log::Level::kOff;
  return log::Level::kInfo;
}

pipeline::RunConfig load(const Common& c) {
  auto config = pipeline::load_config(c.config);
  if (c.seed) {
    config.seed = *c.seed;
    if (config.split) config.split->seed = *c.seed;
  }
  if (c.parallelism) config.parallelism = *c.parallelism;
  if (c.mock) config.backends.mock = true;
  for (const auto& kv : c.backends) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--backend expects name=url, got \"" + kv + "\"");
    config.backends.urls[kv.substr(0, eq)] = kv.substr(eq + 1);
    config.backends.mock = c.mock;
  }
  if (!c.run_dir.empty()) {
    const fs::path dir = fs::absolute(c.run_dir).lexically_normal();
    config.run_root = dir.parent_path();
    config.run_id = dir.filename().string();
  }
  config.validate();
  return config;
}

int run_stage(const Common& c, const PipelineArgs& p, std::optional<Stage> stop, bool split, std::ostream& out) {
  auto config = load(c);
  auto backends = pipeline::make_backends(config);
  pipeline::RunOptions opt;
  opt.stop_after = stop;
  opt.retry_quarantined = p.retry_quarantined;
  opt.split = split;
  auto report = pipeline::run_pipeline(config, backends, opt);
  out << pipeline::to_json(report).dump(2) << "\n";
  return kExitOk;
}

fs::path run_manifest(const Common& c) { return load(c).run_dir() / "manifest.jsonl"; }

fs::path manifest_arg(const Common& c, const ManifestArgs& m) {
  if (!m.manifest.empty()) return m.manifest;
  if (c.config.empty()) throw ConfigError("either --manifest or --config is required");
  return run_manifest(c);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curate multimodal instruction data from narrated videos"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  PipelineArgs pargs;
  ManifestArgs margs;

  struct StageCommand {
    const char* name;
    const char* help;
    std::optional<Stage> stop;
  };
  const std::vector<StageCommand> stage_commands{
      {"ingest", "Filter videos by metadata, keywords, and relevance", Stage::kIngested},
      {"segment", "Split videos into episodes and pick keyframes", Stage::kSegmented},
      {"refine", "Keep clinical regions and mask identifying content", Stage::kRefined},
      {"curate", "Separate visual scenes and apply the quality gates", Stage::kScored},
      {"synthesize", "Generate VQA, conversation, and CoT instances", Stage::kSynthesized},
      {"verify", "Check generated instances against their context", Stage::kVerified},
      {"assemble", "Write the unsplit manifest and statistics", Stage::kAssembled},
  };
  std::map<CLI::App*, std::optional<Stage>> stage_of;
  for (const auto& sc : stage_commands) {
    auto* cmd = app.add_subcommand(sc.name, sc.help);
    add_common(cmd, common, true);
    cmd->add_flag("--retry-quarantined", pargs.retry_quarantined, "Retry items quarantined at any stage");
    stage_of[cmd] = sc.stop;
  }
  auto* run_all = app.add_subcommand("run-all", "Run every stage, split, and write the manifest");
  add_common(run_all, common, true);
  run_all->add_flag("--retry-quarantined", pargs.retry_quarantined, "Retry items quarantined at any stage");

  auto* split = app.add_subcommand("split", "Label the evaluation split in a manifest");
  add_common(split, common, false);
  split->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  split->add_option("--out", margs.out, "Output manifest (default: overwrite)");
  std::string targets;
  split->add_option("--targets", targets, "yes_no=N,what=N,where=N");

  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  add_common(stats, common, false);
  stats->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  stats->add_flag("--json", margs.json, "Machine-readable output");

  auto* exp = app.add_subcommand("export", "Export training records");
  add_common(exp, common, false);
  exp->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  exp->add_option("--out", margs.out, "Output directory")->required();
  bool include_test = false;
  bool exclude_unsplit = false;
  std::string kinds = "vqa,conversation,cot";
  exp->add_flag("--include-test", include_test, "Also export test instances");
  exp->add_flag("--exclude-unsplit", exclude_unsplit, "Skip instances without a split label");
  exp->add_option("--kinds", kinds, "Comma-separated kinds");

  auto* ev = app.add_subcommand("eval", "Score model predictions on the test split");
  add_common(ev, common, true);
  std::string predictions;
  bool delimiters = false;
  std::string records_out;
  ev->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  ev->add_option("--predictions", predictions, "Line-delimited {question_id, response}")->required();
  ev->add_option("--out", margs.out, "Report JSON path");
  ev->add_option("--records", records_out, "Per-item records (line-delimited JSON)");
  ev->add_flag("--answer-delimiters", delimiters, "Responses wrap answers in <answer> tags");

  auto* as = app.add_subcommand("audit-sample", "Draw a stratified sample for expert review");
  add_common(as, common, false);
  std::size_t audit_n = 100;
  std::uint64_t audit_seed = 0;
  std::string sources;
  std::string fields = "kind,modality";
  as->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  as->add_option("--n", audit_n, "Sample size")->required();
  as->add_option("--sample-seed", audit_seed, "Sampling seed");
  as->add_option("--sources", sources, "Provenance blobs (sources.jsonl)");
  as->add_option("--fields", fields, "Stratification fields");
  as->add_option("--out", margs.out, "Bundle path")->required();

  auto* aa = app.add_subcommand("audit-apply", "Apply expert decisions to a manifest");
  add_common(aa, common, false);
  std::string decisions;
  std::string trail;
  aa->add_option("--manifest", margs.manifest, "Manifest (default: the run's manifest)");
  aa->add_option("--decisions", decisions, "Reviewed bundle or decision file")->required();
  aa->add_option("--out", margs.out, "Output manifest")->required();
  aa->add_option("--trail", trail, "Audit trail (line-delimited JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitInvalid;
  }

  log::set_level(parse_level(common.log_level));
  auto* cmd = app.get_subcommands().front();
  try {
    if (auto it = stage_of.find(cmd); it != stage_of.end())
      return run_stage(common, pargs, it->second, false, out);
    if (cmd == run_all) return run_stage(common, pargs, std::nullopt, true, out);

    if (cmd == split) {
      dataset::SplitSpec spec;
      if (!common.config.empty()) {
        auto config = load(common);
        if (config.split) spec = *config.split;
      }
      if (common.seed) spec.seed = *common.seed;
      if (!targets.empty()) {
        spec.targets.clear();
        for (const auto& kv : split_csv(targets)) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw ConfigError("--targets expects subtype=N pairs");
          spec.targets[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
        }
      }
      spec.validate();
      const auto in = manifest_arg(common, margs);
      auto m = dataset::split_eval(dataset::read_manifest(in), spec);
      const fs::path dest = margs.out.empty() ? in : fs::path(margs.out);
      dataset::write_manifest(dest, m);
      out << dataset::format_table(dataset::compute_stats(m));
      return kExitOk;
    }
    if (cmd == stats) {
      const auto s = dataset::compute_stats(dataset::read_manifest(manifest_arg(common, margs)));
      if (margs.json) out << dataset::to_json(s).dump(2) << "\n";
      else out << dataset::format_table(s);
      return kExitOk;
    }
    if (cmd == exp) {
      dataset::ExportOptions opt;
      opt.include_test = include_test;
      opt.include_unsplit = !exclude_unsplit;
      opt.kinds.clear();
      for (const auto& k : split_csv(kinds)) opt.kinds.push_back(dataset::instance_kind_from_string(k));
      auto index = dataset::write_sft(margs.out, dataset::read_manifest(manifest_arg(common, margs)), opt);
      out << index.dump(2) << "\n";
      return kExitOk;
    }
    if (cmd == ev) {
      auto config = load(common);
      const auto manifest = dataset::read_manifest(margs.manifest.empty() ? config.run_dir() / "manifest.jsonl"
                                                                          : fs::path(margs.manifest));
      std::map<std::string, std::string> preds;
      for (const auto& line : read_jsonl(predictions)) {
        preds[line.at("question_id").get<std::string>()] = line.at("response").get<std::string>();
      }
      eval::EvalOptions opt;
      opt.answer_delimiters = delimiters;
      opt.policy = config.retry;
      opt.gen = config.generation;
      const auto backends = pipeline::make_backends(config);
      const auto records = eval::evaluate(eval::eval_items(manifest), preds, backends, opt);
      const auto report = eval::aggregate_report(records);
      if (!margs.out.empty()) write_json_file(margs.out, eval::to_json(report));
      if (!records_out.empty()) {
        std::vector<Json> lines;
        for (const auto& r : records) lines.push_back(r);
        write_jsonl(records_out, lines);
      }
      for (const auto& w : report.warnings) log::warn(w);
      out << eval::format_report(report);
      return kExitOk;
    }
    if (cmd == as) {
      std::map<std::string, Json> src;
      fs::path source_path = sources;
      if (source_path.empty() && margs.manifest.empty() && !common.config.empty())
        source_path = load(common).run_dir() / "sources.jsonl";
      if (!source_path.empty()) {
        for (auto& line : read_jsonl(source_path)) src[line.at("episode_id").get<std::string>()] = line;
      }
      auto bundle = verify::sample_for_audit(dataset::read_manifest(manifest_arg(common, margs)), audit_n,
                                             audit_seed, split_csv(fields), src);
      verify::write_audit_bundle(margs.out, bundle);
      out << Json{{"sampled", bundle.entries.size()}, {"strata", bundle.strata_sampled}}.dump(2) << "\n";
      return kExitOk;
    }
    if (cmd == aa) {
      auto outcome =
          verify::apply_audit(dataset::read_manifest(manifest_arg(common, margs)), verify::read_audit_decisions(decisions));
      dataset::write_manifest(margs.out, outcome.manifest);
      if (!trail.empty()) write_jsonl(trail, outcome.trail);
      out << dataset::format_table(dataset::compute_stats(outcome.manifest));
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    log::error("invalid configuration", {{"error", e.what()}});
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    log::error("validation failed", {{"error", e.what()}});
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ResumeError& e) {
    log::error("cannot resume", {{"error", e.what()}});
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    log::error("pipeline failure", {{"error", e.what()}});
    err << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitInvalid;
}

}  // namespace mmcurate::cli
