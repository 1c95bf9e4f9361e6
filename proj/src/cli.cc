//
// Copyright 2026 The crsadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "crsadv/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crsadv/adapter.h"
#include "crsadv/corpus.h"
#include "crsadv/errors.h"
#include "crsadv/harness.h"
#include "crsadv/knowledge.h"
#include "crsadv/lexicon.h"
#include "crsadv/metrics.h"
#include "crsadv/perturb.h"
#include "crsadv/report.h"
#include "crsadv/text.h"

namespace crsadv::cli {
namespace {

namespace fs = std::filesystem;

struct Paths {
  std::string lexicon;
  std::string kb;
};

// Flag, then environment, then the bundled data directory.
std::string Resolve(const std::string& flag, const char* env, const char* bundled) {
  if (!flag.empty()) return flag;
  if (const char* value = std::getenv(env); value && *value) return value;
  return (fs::path(CRSADV_DATA_DIR) / bundled).string();
}

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string LexiconDigest(const lexicon::Lexicon& lexicon) {
  std::ostringstream s;
  lexicon.Save(s);
  return Hex(text::Fnv1a64(s.str()));
}

std::string KbDigest(const knowledge::KnowledgeBase& kb) {
  return Hex(text::Fnv1a64(kb.ToJson().dump()));
}

std::ofstream OpenOut(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

perturb::PerturbedFile ReadPerturbedPath(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return perturb::ReadPerturbed(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

struct IngestArgs {
  std::string format;
  std::string input;
  std::string out;
  std::string kb;
};

int Ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  std::string kb_path = a.kb;
  if (kb_path.empty()) {
    if (const char* env = std::getenv("CRSADV_KB"); env && *env) kb_path = env;
  }
  std::optional<knowledge::KnowledgeBase> kb;
  if (!kb_path.empty()) kb = knowledge::KnowledgeBase::Load(kb_path);
  const knowledge::KnowledgeBase* kb_ptr = kb ? &*kb : nullptr;

  corpus::LoadResult loaded;
  if (a.format == "redial") {
    loaded = corpus::LoadRedial(a.input, kb_ptr);
  } else if (a.format == "opendialkg") {
    loaded = corpus::LoadOpenDialKg(a.input, kb_ptr);
  } else {
    throw UsageError("unknown format '" + a.format + "' (expected redial or opendialkg)");
  }
  for (const std::string& w : loaded.warnings) err << "warning: " << w << '\n';
  std::ofstream file = OpenOut(a.out);
  corpus::WriteCorpus(file, loaded.dialogues);
  std::size_t turns = 0;
  for (const corpus::Dialogue& d : loaded.dialogues) turns += d.turns.size();
  out << "ingested " << loaded.dialogues.size() << " dialogues, " << turns
      << " utterances -> " << a.out << '\n';
  return 0;
}

struct PerturbArgs {
  std::string corpus;
  std::string scenario;
  std::uint64_t seed = 42;
  std::string out;
  std::string lexicon;
  std::string kb;
  std::string cat2_mode = "auto";
  std::string replace = "all";
  bool last_only = false;
};

int Perturb(const PerturbArgs& a, std::ostream& out) {
  std::vector<perturb::Scenario> scenarios;
  if (a.scenario == "all") {
    scenarios.assign(std::begin(perturb::kAllScenarios), std::end(perturb::kAllScenarios));
  } else if (auto s = perturb::ParseScenario(a.scenario)) {
    scenarios.push_back(*s);
  } else {
    throw UsageError("unknown scenario '" + a.scenario + "'");
  }
  perturb::PerturbOptions options;
  const auto mode = perturb::ParseCat2Mode(a.cat2_mode);
  if (!mode) throw UsageError("unknown cat2 mode '" + a.cat2_mode + "'");
  options.cat2_mode = *mode;
  const auto policy = perturb::ParseReplacePolicy(a.replace);
  if (!policy) throw UsageError("unknown replace policy '" + a.replace + "'");
  options.replace_policy = *policy;

  const lexicon::Lexicon lexicon =
      lexicon::Lexicon::Load(Resolve(a.lexicon, "CRSADV_LEXICON", "lexicon.tsv"));
  const knowledge::KnowledgeBase kb =
      knowledge::KnowledgeBase::Load(Resolve(a.kb, "CRSADV_KB", "toy_kb.json"));
  const std::vector<corpus::Dialogue> dialogues = corpus::ReadCorpus(fs::path(a.corpus));
  const std::vector<corpus::EvalInstance> instances =
      corpus::ExtractInstances(dialogues, a.last_only);

  for (perturb::Scenario scenario : scenarios) {
    const auto results =
        perturb::PerturbCorpus(instances, scenario, lexicon, &kb, a.seed, options);
    perturb::PerturbedHeader header;
    header.scenario = scenario;
    header.seed = a.seed;
    header.cat2_mode = options.cat2_mode;
    header.replace_policy = options.replace_policy;
    header.lexicon_digest = LexiconDigest(lexicon);
    header.kb_digest = KbDigest(kb);
    header.count = results.size();
    const fs::path path = a.scenario == "all"
                              ? fs::path(a.out) / (std::string(perturb::ToString(scenario)) + ".jsonl")
                              : fs::path(a.out);
    std::ofstream file = OpenOut(path);
    perturb::WritePerturbed(file, header, results);
    std::size_t skipped = 0;
    for (const auto& r : results) skipped += r.skipped ? 1 : 0;
    out << perturb::ToString(scenario) << ": " << results.size() << " instances, "
        << skipped << " skipped -> " << path.string() << '\n';
  }
  return 0;
}

struct EvaluateArgs {
  std::vector<std::string> perturbed;
  std::string adapter = "builtin";
  std::string kb;
  std::string out;
  std::string cutoffs = "1,10,50";
  int workers = 1;
  int timeout_ms = 30000;
};

int Evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const adapter::AdapterSpec spec = adapter::AdapterSpec::Parse(a.adapter);
  const std::vector<int> cutoffs = metrics::ParseCutoffs(a.cutoffs);
  if (a.workers < 1) throw UsageError("--workers must be at least 1");
  if (a.timeout_ms < 1) throw UsageError("--timeout-ms must be positive");
  const int k_max = cutoffs.back();

  std::optional<knowledge::KnowledgeBase> kb;
  if (spec.kind == adapter::AdapterSpec::Kind::kBuiltin) {
    kb = knowledge::KnowledgeBase::Load(Resolve(a.kb, "CRSADV_KB", "toy_kb.json"));
  }
  const adapter::RecommenderFactory factory = adapter::MakeFactory(
      spec, kb ? &*kb : nullptr, std::chrono::milliseconds(a.timeout_ms));

  std::vector<perturb::PerturbedFile> files;
  for (const std::string& path : a.perturbed) files.push_back(ReadPerturbedPath(path));
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (files[i].header.scenario == files[j].header.scenario) {
        throw UsageError("two perturbed files for scenario " +
                         std::string(perturb::ToString(files[i].header.scenario)));
      }
    }
  }

  std::size_t total = 0;
  std::size_t failed = 0;
  auto run = [&](const std::string& input, const std::vector<harness::Job>& jobs) {
    harness::ScoresFile scores;
    scores.header = {input, spec.ToString(), cutoffs};
    scores.outcomes = harness::Run(jobs, factory, a.workers);
    const harness::Summary summary = harness::Summarize(scores.outcomes);
    total += summary.total - summary.skipped;
    failed += summary.failed;
    for (const harness::Outcome& o : scores.outcomes) {
      if (o.failed) err << "warning: " << input << " " << o.id << ": " << o.error << '\n';
    }
    const fs::path base = fs::path(a.out) / (input + ".scores");
    std::ofstream jsonl = OpenOut(base.string() + ".jsonl");
    harness::WriteScores(jsonl, scores);
    std::ofstream csv = OpenOut(base.string() + ".csv");
    harness::WriteScoresCsv(csv, scores);
    out << input << ": " << summary.total << " instances, " << summary.failed
        << " failed, " << summary.skipped << " skipped -> " << base.string()
        << ".jsonl\n";
  };

  run("original", harness::OriginalJobs(files, k_max));
  for (const perturb::PerturbedFile& file : files) {
    run(std::string(perturb::ToString(file.header.scenario)),
        harness::AdversarialJobs(file, k_max));
  }
  if (failed > 0) {
    err << "warning: " << failed << " of " << total << " requests failed\n";
    if (failed == total) throw AdapterError("every request failed");
  }
  return 0;
}

struct ReportArgs {
  std::string scores_dir;
  std::string original;
  std::vector<std::string> adversarial;
  std::string out;
  std::vector<std::string> formats = {"json", "csv", "md"};
  double cat1_tolerance = 0.05;
  double cat2_shift = 0.5;
};

int Report(const ReportArgs& a, std::ostream& out) {
  std::string original_path = a.original;
  std::vector<std::string> adversarial = a.adversarial;
  if (!a.scores_dir.empty()) {
    if (original_path.empty()) {
      original_path = (fs::path(a.scores_dir) / "original.scores.jsonl").string();
    }
    if (adversarial.empty()) {
      for (perturb::Scenario s : perturb::kAllScenarios) {
        const fs::path p =
            fs::path(a.scores_dir) / (std::string(perturb::ToString(s)) + ".scores.jsonl");
        if (fs::exists(p)) adversarial.push_back(p.string());
      }
    }
  }
  if (original_path.empty()) throw UsageError("report needs --scores-dir or --original");
  if (adversarial.empty()) throw UsageError("no adversarial score files given");

  report::Thresholds thresholds{a.cat1_tolerance, a.cat2_shift};
  const harness::ScoresFile original = harness::ReadScores(fs::path(original_path));
  report::ReportBundle bundle;
  bundle.adapter = original.header.adapter;
  bundle.overall_original = harness::OverallOriginal(original);
  for (const std::string& path : adversarial) {
    const harness::ScoresFile adv = harness::ReadScores(fs::path(path));
    const auto scenario = perturb::ParseScenario(adv.header.input);
    if (!scenario) throw DataError(path + ": not an adversarial score file");
    bundle.reports.push_back(harness::CompareScores(original, adv, *scenario, thresholds));
  }

  for (const std::string& name : a.formats) {
    const auto format = report::ParseFormat(name);
    if (!format) throw UsageError("unknown report format '" + name + "'");
    const std::string ext = *format == report::Format::kMarkdown ? "md" : name;
    const std::string doc = report::Render(bundle, *format);
    if (a.out.empty()) {
      out << doc;
    } else {
      std::ofstream file = OpenOut(fs::path(a.out) / ("report." + ext));
      file << doc;
    }
  }
  if (!a.out.empty()) {
    out << report::Render(bundle, report::Format::kMarkdown);
    out << "wrote report files to " << a.out << '\n';
  }
  return 0;
}

void PrintVersion(std::ostream& out) {
  out << "crsadv " << kVersion << '\n'
      << "corpus " << corpus::kCorpusSchema << '\n'
      << "perturbed " << perturb::kPerturbedSchema << '\n'
      << "scores " << harness::kScoresSchema << '\n'
      << "report crsadv.report/1\n"
      << "lexicon " << lexicon::Lexicon::kHeader.substr(2) << '\n';
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial robustness benchmark for conversational recommenders",
               "crsadv"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print tool and file-format versions");

  IngestArgs ingest;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "Normalize a raw dialogue corpus");
  ingest_cmd->add_option("--format", ingest.format, "redial or opendialkg")->required();
  ingest_cmd->add_option("input", ingest.input, "Raw corpus file")->required();
  ingest_cmd->add_option("--out", ingest.out, "Normalized corpus output")->required();
  ingest_cmd->add_option("--kb", ingest.kb, "Knowledge base for titles and filtering");

  PerturbArgs perturb_args;
  CLI::App* perturb_cmd = app.add_subcommand("perturb", "Generate adversarial answers");
  perturb_cmd->add_option("--corpus", perturb_args.corpus, "Normalized corpus")->required();
  perturb_cmd->add_option("--scenario", perturb_args.scenario,
                          "cat1-change, cat1-add, cat2-change, cat2-add or all")
      ->required();
  perturb_cmd->add_option("--seed", perturb_args.seed, "Run seed")->capture_default_str();
  perturb_cmd->add_option("--out", perturb_args.out,
                          "Output file (a directory with --scenario all)")
      ->required();
  perturb_cmd->add_option("--lexicon", perturb_args.lexicon, "Lexicon TSV");
  perturb_cmd->add_option("--kb", perturb_args.kb, "Knowledge base JSON");
  perturb_cmd->add_option("--cat2-mode", perturb_args.cat2_mode, "antonym, negation or auto")
      ->capture_default_str();
  perturb_cmd->add_option("--replace", perturb_args.replace, "Cat1-Change policy: all or first")
      ->capture_default_str();
  perturb_cmd->add_flag("--last-only", perturb_args.last_only,
                        "Only the last recommendation of each dialogue");

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score original and adversarial answers");
  eval_cmd->add_option("--perturbed", eval.perturbed, "Perturbed-instance files")
      ->required();
  eval_cmd->add_option("--adapter", eval.adapter, "builtin, cmd:<command> or http:<url>")
      ->capture_default_str();
  eval_cmd->add_option("--kb", eval.kb, "Knowledge base for the builtin adapter");
  eval_cmd->add_option("--out", eval.out, "Output directory")->required();
  eval_cmd->add_option("--cutoffs", eval.cutoffs, "Metric cutoffs")->capture_default_str();
  eval_cmd->add_option("--workers", eval.workers, "Concurrent requests")->capture_default_str();
  eval_cmd->add_option("--timeout-ms", eval.timeout_ms, "Per-request adapter timeout")
      ->capture_default_str();

  ReportArgs rep;
  CLI::App* report_cmd = app.add_subcommand("report", "Compare original and adversarial scores");
  report_cmd->add_option("--scores-dir", rep.scores_dir, "Directory written by evaluate");
  report_cmd->add_option("--original", rep.original, "Original score file");
  report_cmd->add_option("--adversarial", rep.adversarial, "Adversarial score files");
  report_cmd->add_option("--out", rep.out, "Output directory (stdout when omitted)");
  report_cmd->add_option("--format", rep.formats, "json, csv, md")->delimiter(',');
  report_cmd->add_option("--cat1-tolerance", rep.cat1_tolerance, "Relative drop tolerance")
      ->capture_default_str();
  report_cmd->add_option("--cat2-shift", rep.cat2_shift, "Minimum top-1 shift rate")
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kUsage);
  }

  try {
    if (version) {
      PrintVersion(out);
      return 0;
    }
    if (ingest_cmd->parsed()) return Ingest(ingest, out, err);
    if (perturb_cmd->parsed()) return Perturb(perturb_args, out);
    if (eval_cmd->parsed()) return Evaluate(eval, out, err);
    if (report_cmd->parsed()) return Report(rep, out);
    err << app.help();
    return static_cast<int>(ErrorKind::kUsage);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kData);
  }
}

}  // namespace crsadv::cli
