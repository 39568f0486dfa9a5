/* Copyright 2026 The deprecparse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line driver: extract, oracle, train, parse, eval, baseline and
// annotate-to-tree over line-delimited JSON datasets.

#include <fmt/format.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "deprecparse/baseline.h"
#include "deprecparse/code_expression.h"
#include "deprecparse/corpus.h"
#include "deprecparse/errors.h"
#include "deprecparse/evaluation.h"
#include "deprecparse/parallel.h"
#include "deprecparse/pipeline.h"

namespace deprecparse {
namespace {

using Config = std::vector<std::pair<std::string, std::string>>;

void LogConfig(const std::string &command, const Config &config) {
  std::string line = "deprecparse " + command + ":";
  for (const auto &[k, v] : config) line += " " + k + "=" + v;
  std::cerr << line << '\n';
}

template <typename T>
std::string Str(const T &v) {
  return fmt::format("{}", v);
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteLines(const std::vector<std::string> &lines, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const std::string &l : lines) out << l << '\n';
  if (!out) throw Error("cannot write " + path);
}

struct Options {
  uint64_t seed = 0;
  int jobs = 0;

  std::vector<std::string> html;
  std::string data;
  std::string output;
  std::string model;
  std::string oracle_file;
  std::string predictions;
  std::string library;
  std::string version;
  std::string url;
  std::string id_prefix;
  std::vector<std::string> headings;

  OracleConfig oracle;
  TrainingSettings training;
  DecodeConfig decode;
  int folds = 10;

  bool json = false;
  bool with_examples = false;
  bool pretty = false;
  std::vector<std::string> depr;
  std::vector<std::string> repl;
};

Config OracleEntries(const Options &o) {
  return {{"oracle_breadth", Str(o.oracle.max_breadth)},
          {"oracle_depth", Str(o.oracle.max_depth)},
          {"threshold", Str(o.oracle.accept_threshold)}};
}

Config TrainingEntries(const Options &o) {
  return {{"hash_bits", Str(o.training.hash_bits)},
          {"learning_rate", Str(o.training.learning_rate)},
          {"epochs", Str(o.training.epochs)},
          {"batch_size", Str(o.training.batch_size)},
          {"l2", Str(o.training.l2)},
          {"seed", Str(o.training.seed)}};
}

Config DecodeEntries(const Options &o) {
  return {{"beam_width", Str(o.decode.beam_width)},
          {"max_steps", o.decode.max_steps > 0 ? Str(o.decode.max_steps)
                                               : std::string("4n+8")}};
}

Config Join(std::initializer_list<Config> parts) {
  Config out;
  for (const Config &c : parts) out.insert(out.end(), c.begin(), c.end());
  return out;
}

int RunExtract(const Options &o) {
  ExtractOptions eo;
  if (!o.headings.empty()) eo.headings = o.headings;
  eo.library = o.library;
  eo.version = o.version;
  eo.url = o.url;
  std::string headings;
  for (const std::string &h : eo.headings) {
    headings += (headings.empty() ? "" : "|") + h;
  }
  LogConfig("extract", {{"inputs", Str(o.html.size())},
                        {"headings", headings},
                        {"library", o.library},
                        {"version", o.version},
                        {"output", o.output}});
  std::vector<AnnotatedExample> out;
  std::set<std::string> ids;
  for (const std::string &path : o.html) {
    const ExtractResult r = ExtractDeprecations(ReadText(path), eo);
    for (const std::string &w : r.warnings) {
      std::cerr << path << ": warning: " << w << '\n';
    }
    const std::string prefix = o.id_prefix.empty()
                                   ? std::filesystem::path(path).stem().string()
                                   : o.id_prefix;
    for (size_t i = 0; i < r.items.size(); ++i) {
      std::string id = fmt::format("{}-{}", prefix, i + 1);
      if (!ids.insert(id).second) {
        throw Error("duplicate record id " + id +
                    "; pass distinct files or --id-prefix");
      }
      out.push_back(ExampleFromItem(r.items[i], std::move(id)));
    }
    std::cerr << path << ": " << r.items.size() << " items\n";
  }
  WriteDataset(out, o.output);
  return 0;
}

int RunOracleCommand(const Options &o) {
  LogConfig("oracle", Join({{{"data", o.data}, {"output", o.output},
                             {"jobs", Str(o.jobs)}},
                            OracleEntries(o)}));
  const auto ds = ReadDataset(o.data);
  const auto outcomes = RunOracle(ds, o.oracle, o.jobs);
  std::vector<std::string> lines;
  int accepted = 0, perfect = 0, skipped = 0;
  for (const OracleOutcome &r : outcomes) {
    lines.push_back(OracleOutcomeToJson(r));
    skipped += r.skipped;
    if (r.skipped) continue;
    accepted += r.result.accepted;
    perfect += r.result.overlap == 1.0;
    std::cout << fmt::format("{}\taccepted={}\toverlap={:.4f}\tsteps={}\n",
                             r.id, r.result.accepted, r.result.overlap,
                             r.result.sequence.size());
  }
  std::cerr << fmt::format(
      "oracle: {} of {} accepted, {} with overlap 1.0, {} skipped\n",
      accepted, outcomes.size() - skipped, perfect, skipped);
  if (!o.output.empty()) WriteLines(lines, o.output);
  return 0;
}

std::vector<OracleOutcome> OracleFor(const Options &o,
                                     const std::vector<AnnotatedExample> &ds) {
  if (!o.oracle_file.empty()) return ReadOracleOutcomes(o.oracle_file);
  return RunOracle(ds, o.oracle, o.jobs);
}

int RunTrain(const Options &o) {
  LogConfig("train",
            Join({{{"data", o.data}, {"model", o.model},
                   {"oracle_file", o.oracle_file.empty() ? "-" : o.oracle_file},
                   {"jobs", Str(o.jobs)}},
                  OracleEntries(o), TrainingEntries(o)}));
  const auto ds = ReadDataset(o.data);
  const auto outcomes = OracleFor(o, ds);
  const auto instances = CollectInstances(ds, outcomes, AllIndices(ds.size()));
  if (instances.empty()) {
    throw DegenerateInputError(
        "no oracle-accepted examples to train on in " + o.data);
  }
  TrainingReport report;
  const LinearScorer model = LinearScorer::Train(instances, o.training, &report);
  for (const std::string &w : report.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  std::cerr << fmt::format(
      "train: {} instances, {} transitions, accuracy {:.4f}, loss {:.4f}\n",
      instances.size(), model.vocabulary().size(), report.accuracy,
      report.loss);
  model.Save(o.model);
  return 0;
}

int RunParse(const Options &o, bool folds_given) {
  if (!o.model.empty() && folds_given) {
    throw Error("--model and --folds are mutually exclusive");
  }
  const auto ds = ReadDataset(o.data);
  if (!o.model.empty()) {
    LogConfig("parse", Join({{{"data", o.data}, {"model", o.model},
                              {"output", o.output}, {"jobs", Str(o.jobs)}},
                             DecodeEntries(o)}));
    const LinearScorer model = LinearScorer::Load(o.model);
    WritePredictions(
        ParseExamples(model, ds, AllIndices(ds.size()), o.decode, o.jobs),
        nullptr, o.output);
    return 0;
  }
  LogConfig("parse", Join({{{"data", o.data}, {"mode", "cross-validation"},
                            {"folds", Str(o.folds)}, {"output", o.output},
                            {"jobs", Str(o.jobs)}},
                           OracleEntries(o), TrainingEntries(o),
                           DecodeEntries(o)}));
  if (o.folds < 2) throw Error("cross-validation needs at least 2 folds");
  const auto outcomes = OracleFor(o, ds);
  const CrossValidationResult cv = CrossValidate(
      ds, outcomes, o.folds, o.seed, o.training, o.decode, o.jobs);
  for (size_t f = 0; f < cv.training.size(); ++f) {
    for (const std::string &w : cv.training[f].warnings) {
      std::cerr << "fold " << f << ": warning: " << w << '\n';
    }
  }
  WritePredictions(cv.predictions, &cv.folds, o.output);
  return 0;
}

int RunEval(const Options &o) {
  LogConfig("eval", {{"data", o.data},
                     {"predictions", o.predictions},
                     {"format", o.json ? "json" : "table"}});
  const auto ds = ReadDataset(o.data);
  std::vector<int> pred_folds;
  const auto preds = ReadPredictions(o.predictions, &pred_folds);
  // Folds are recorded per prediction; map them back to dataset order.
  std::vector<int> folds;
  bool have_folds = !preds.empty();
  for (int f : pred_folds) have_folds = have_folds && f >= 0;
  if (have_folds) {
    std::map<std::string, int> by_id;
    for (size_t i = 0; i < preds.size(); ++i) by_id[preds[i].id] = pred_folds[i];
    for (const AnnotatedExample &ex : ds) {
      auto it = by_id.find(ex.id);
      folds.push_back(it == by_id.end() ? -1 : it->second);
    }
  }
  const CorpusReport report =
      EvaluateCorpus(preds, ds, have_folds ? &folds : nullptr);
  if (o.json) {
    std::cout << ReportToJson(report, o.with_examples) << '\n';
  } else {
    std::cout << FormatReport(report);
  }
  return 0;
}

int RunBaseline(const Options &o) {
  LogConfig("baseline", {{"data", o.data}, {"output", o.output}});
  const auto ds = ReadDataset(o.data);
  std::vector<Prediction> preds;
  for (const AnnotatedExample &ex : ds) {
    Prediction p;
    p.id = ex.id;
    if (!ex.code_spans.empty()) p.codes = SplitBaseline(ex);
    p.partial = false;
    preds.push_back(std::move(p));
  }
  WritePredictions(preds, nullptr, o.output);
  return 0;
}

int RunAnnotateToTree(const Options &o) {
  if (!o.data.empty()) {
    LogConfig("annotate-to-tree", {{"data", o.data}, {"output", o.output}});
    if (o.output.empty()) throw Error("--output is required with --data");
    auto ds = ReadDataset(o.data);
    for (AnnotatedExample &ex : ds) {
      if (!ex.gold_depr.empty()) {
        ex.gold_tree = AnnotationToTree(ex.gold_depr, ex.gold_repl);
      }
    }
    WriteDataset(ds, o.output);
    return 0;
  }
  LogConfig("annotate-to-tree", {{"depr", Str(o.depr.size())},
                                 {"repl", Str(o.repl.size())}});
  if (o.depr.empty()) throw Error("give --depr expressions or --data");
  const SemTree tree = AnnotationToTree(o.depr, o.repl);
  std::cout << (o.pretty ? ToBracketedPretty(tree) : ToBracketed(tree))
            << '\n';
  return 0;
}

void AddOracleFlags(CLI::App *cmd, Options *o) {
  cmd->add_option("--oracle-breadth", o->oracle.max_breadth,
                  "configurations kept per oracle level")
      ->capture_default_str();
  cmd->add_option("--oracle-depth", o->oracle.max_depth,
                  "maximum oracle sequence length")
      ->capture_default_str();
  cmd->add_option("--threshold", o->oracle.accept_threshold,
                  "minimum overlap for an oracle sequence to be accepted")
      ->capture_default_str();
}

void AddTrainingFlags(CLI::App *cmd, Options *o) {
  cmd->add_option("--oracle-file", o->oracle_file,
                  "precomputed oracle output (default: run the oracle)");
  cmd->add_option("--epochs", o->training.epochs)->capture_default_str();
  cmd->add_option("--learning-rate", o->training.learning_rate)
      ->capture_default_str();
  cmd->add_option("--batch-size", o->training.batch_size)
      ->capture_default_str();
  cmd->add_option("--l2", o->training.l2)->capture_default_str();
  cmd->add_option("--hash-bits", o->training.hash_bits,
                  "log2 of the number of feature buckets")
      ->capture_default_str();
}

void AddDecodeFlags(CLI::App *cmd, Options *o) {
  cmd->add_option("--beam-width", o->decode.beam_width)->capture_default_str();
  cmd->add_option("--max-steps", o->decode.max_steps,
                  "decoding step cap (0: 4 * entities + 8)")
      ->capture_default_str();
}

int Main(int argc, char **argv) {
  CLI::App app{
      "Parses API deprecation notes into semantic trees with a "
      "transition-based parser."};
  app.require_subcommand(1);
  Options o;
  o.jobs = DefaultJobs();
  app.add_option("--seed", o.seed,
                 "seed for training and fold assignment (env "
                 "DEPREC_PARSE_SEED)")
      ->envname("DEPREC_PARSE_SEED")
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads across examples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App *extract =
      app.add_subcommand("extract", "collect deprecation items from HTML");
  extract->add_option("html", o.html, "release-notes HTML files")
      ->required()
      ->check(CLI::ExistingFile);
  extract->add_option("-o,--output", o.output, "dataset to write")->required();
  extract->add_option("--library", o.library);
  extract->add_option("--version", o.version);
  extract->add_option("--url", o.url, "source URL recorded per item");
  extract->add_option("--heading", o.headings,
                      "section heading to collect (repeatable; default "
                      "Deprecations, Deprecated)");
  extract->add_option("--id-prefix", o.id_prefix,
                      "record id prefix (default: file stem)");

  CLI::App *oracle =
      app.add_subcommand("oracle", "search gold transition sequences");
  oracle->add_option("-d,--data", o.data, "dataset")->required();
  oracle->add_option("-o,--output", o.output, "oracle records to write");
  AddOracleFlags(oracle, &o);

  CLI::App *train = app.add_subcommand(
      "train", "fit the transition scorer on oracle sequences");
  train->add_option("-d,--data", o.data, "dataset")->required();
  train->add_option("-m,--model", o.model, "model file to write")->required();
  AddOracleFlags(train, &o);
  AddTrainingFlags(train, &o);

  CLI::App *parse = app.add_subcommand(
      "parse",
      "decode a dataset with --model, or cross-validate without one");
  parse->add_option("-d,--data", o.data, "dataset")->required();
  parse->add_option("-m,--model", o.model, "trained model");
  parse->add_option("-o,--output", o.output, "predictions to write")
      ->required();
  CLI::Option *folds_opt =
      parse->add_option("--folds", o.folds, "cross-validation folds")
          ->capture_default_str();
  AddDecodeFlags(parse, &o);
  AddOracleFlags(parse, &o);
  AddTrainingFlags(parse, &o);

  CLI::App *eval =
      app.add_subcommand("eval", "score predictions against a dataset");
  eval->add_option("-d,--data", o.data, "dataset")->required();
  eval->add_option("-p,--predictions", o.predictions, "predictions file")
      ->required();
  eval->add_flag("--json", o.json, "print the report as JSON");
  eval->add_flag("--examples", o.with_examples,
                 "include per-example rows in JSON output");

  CLI::App *baseline = app.add_subcommand(
      "baseline", "split-on-\"deprecated\" predictions");
  baseline->add_option("-d,--data", o.data, "dataset")->required();
  baseline->add_option("-o,--output", o.output, "predictions to write")
      ->required();

  CLI::App *to_tree = app.add_subcommand(
      "annotate-to-tree", "build gold trees from code expressions");
  to_tree->add_option("--depr", o.depr, "deprecated code expression");
  to_tree->add_option("--repl", o.repl, "replacement code expression");
  to_tree->add_flag("--pretty", o.pretty, "indented output");
  to_tree->add_option("-d,--data", o.data,
                       "dataset whose gold_tree fields are filled in");
  to_tree->add_option("-o,--output", o.output, "dataset to write");

  for (CLI::App *sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  o.training.seed = o.seed;

  try {
    o.oracle.Check();
    o.training.Check();
    o.decode.Check();
    if (extract->parsed()) return RunExtract(o);
    if (oracle->parsed()) return RunOracleCommand(o);
    if (train->parsed()) return RunTrain(o);
    if (parse->parsed()) return RunParse(o, folds_opt->count() > 0);
    if (eval->parsed()) return RunEval(o);
    if (baseline->parsed()) return RunBaseline(o);
    if (to_tree->parsed()) return RunAnnotateToTree(o);
  } catch (const Error &e) {
    std::cerr << "deprecparse: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "deprecparse: internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace
}  // namespace deprecparse

int main(int argc, char **argv) { return deprecparse::Main(argc, argv); }
