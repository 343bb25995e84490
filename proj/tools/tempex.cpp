// Copyright 2026 The Tempex Authors
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

// Command-line front end: recognize | normalize | annotate | train | label |
// score over canonical-format JSON documents. All I/O goes through files,
// stdin ("-" never needed: documents are single files) and stdout; outputs
// are deterministic functions of the inputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempex/tempex.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tempex::Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes via a temp file + rename so partial output never lands under the
// final name. "-" writes to stdout.
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw tempex::Error("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

tempex::Document load_document(const std::string& path,
                               const std::string& dct_override) {
  tempex::Document doc = tempex::parse_document(read_file(path));
  if (!dct_override.empty()) doc.dct = tempex::parse_iso_date(dct_override);
  return doc;
}

tempex::Ruleset load_ruleset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tempex::Error("cannot open " + path);
  return tempex::load_ruleset(in);
}

tempex::SignalLexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tempex::Error("cannot open " + path);
  return tempex::load_lexicon(in);
}

std::string spans_to_json(const tempex::Document& doc,
                          const std::vector<tempex::RuleMatch>& matches) {
  Json root;
  root["id"] = doc.id;
  Json spans = Json::array();
  for (const auto& match : matches) {
    Json j;
    j["s"] = match.span.sentence;
    j["start"] = match.span.start;
    j["end"] = match.span.end;
    j["text"] = doc.surface(match.span);
    j["rule"] = match.rule;
    spans.push_back(std::move(j));
  }
  root["spans"] = std::move(spans);
  return root.dump(2) + "\n";
}

std::vector<tempex::RuleMatch> spans_from_json(const std::string& text,
                                               const tempex::Document& doc) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw tempex::ParseError(std::string("malformed spans JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("id") || !root.contains("spans")) {
    throw tempex::ParseError("spans file must be {\"id\": ..., \"spans\": [...]}");
  }
  if (root["id"].get<std::string>() != doc.id) {
    throw tempex::ValidationError("spans file is for document '" +
                                  root["id"].get<std::string>() +
                                  "', not '" + doc.id + "'");
  }
  std::vector<tempex::RuleMatch> matches;
  for (const Json& j : root["spans"]) {
    tempex::RuleMatch match;
    match.span.sentence = j.at("s").get<int>();
    match.span.start = j.at("start").get<int>();
    match.span.end = j.at("end").get<int>();
    match.rule = j.value("rule", std::string());
    tempex::check_span(match.span, doc, "spans file entry");
    if (j.contains("text") &&
        j["text"].get<std::string>() != doc.surface(match.span)) {
      throw tempex::ValidationError(
          "spans file entry text '" + j["text"].get<std::string>() +
          "' does not match document surface '" + doc.surface(match.span) +
          "'");
    }
    matches.push_back(std::move(match));
  }
  return matches;
}

std::string format_accuracy(const tempex::AccuracyCounts& counts) {
  if (counts.total == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", counts.accuracy());
  return buf;
}

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  std::string output = "-";
  std::string spans;
  std::string ruleset;
  std::string lexicon;
  std::string model;
  std::string dct;
  std::string task;
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  int f_days = 14;
  int max_n = 5;
  int max_iterations = 200;
  double tol = 1e-6;
  double sigma2 = 1.0;
  bool json_report = false;
};

int run_recognize(const Options& opt) {
  tempex::Document doc = load_document(opt.input, opt.dct);
  tempex::Ruleset ruleset = load_ruleset_file(opt.ruleset);
  tempex::RecognizerConfig config{opt.max_n};
  auto matches = tempex::recognize_matches(doc, ruleset, config);
  write_output(opt.output, spans_to_json(doc, matches));
  return 0;
}

int run_normalize(const Options& opt) {
  tempex::Document doc = load_document(opt.input, opt.dct);
  auto matches = spans_from_json(read_file(opt.spans), doc);
  tempex::NormalizerConfig config;
  config.f_days = opt.f_days;
  tempex::Document annotated = tempex::attach_timexes(doc, matches, config);
  validate_document(annotated);
  write_output(opt.output, tempex::serialize(annotated));
  return 0;
}

int run_annotate(const Options& opt) {
  tempex::Document doc = load_document(opt.input, opt.dct);
  tempex::Ruleset ruleset = load_ruleset_file(opt.ruleset);
  tempex::RecognizerConfig rconfig{opt.max_n};
  tempex::NormalizerConfig nconfig;
  nconfig.f_days = opt.f_days;
  tempex::Document annotated =
      tempex::annotate_document(doc, ruleset, rconfig, nconfig);
  validate_document(annotated);
  write_output(opt.output, tempex::serialize(annotated));
  return 0;
}

int run_train(const Options& opt) {
  tempex::Task task = tempex::parse_task(opt.task);
  tempex::SignalLexicon lexicon = load_lexicon_file(opt.lexicon);
  std::vector<tempex::Document> docs;
  for (const auto& path : opt.inputs) {
    docs.push_back(tempex::parse_document(read_file(path)));
  }
  tempex::TrainingSet set = tempex::build_training_set(docs, task, lexicon);
  if (set.skipped > 0) {
    std::cerr << "warning: skipped " << set.skipped
              << " instance(s) not matching the task shape\n";
  }
  if (set.examples.empty()) {
    throw tempex::ValidationError("no task-shaped training instances found");
  }
  tempex::TrainingConfig config;
  config.max_iterations = opt.max_iterations;
  config.convergence_tol = opt.tol;
  config.l2_sigma2 = opt.sigma2;
  tempex::TrainingTrace trace;
  tempex::MaxEntModel model = tempex::train(
      set.examples, config, tempex::kFeatureSchemaVersion, &trace);
  if (model.labels().size() == 1) {
    std::cerr << "warning: training data has a single label '"
              << model.labels()[0] << "'; the model always predicts it\n";
  }
  std::cerr << "trained on " << set.examples.size() << " example(s), "
            << model.labels().size() << " label(s), " << trace.iterations
            << " iteration(s)" << (trace.converged ? "" : " (not converged)")
            << "\n";
  std::ostringstream out;
  tempex::save_model(model, out);
  write_output(opt.output, out.str());
  return 0;
}

int run_label(const Options& opt) {
  tempex::Task task = tempex::parse_task(opt.task);
  tempex::SignalLexicon lexicon = load_lexicon_file(opt.lexicon);
  tempex::Document doc = load_document(opt.input, opt.dct);
  std::istringstream model_in(read_file(opt.model));
  tempex::MaxEntModel model =
      tempex::load_model(model_in, tempex::kFeatureSchemaVersion);
  auto predictions =
      tempex::label_relations({doc}, task, model, lexicon);
  for (const auto& prediction : predictions) {
    for (auto& relation : doc.relations) {
      if (relation.id == prediction.instance_id) {
        relation.label = prediction.label;
      }
    }
  }
  write_output(opt.output, tempex::serialize(doc));
  return 0;
}

int run_score(const Options& opt) {
  if (opt.gold.size() != opt.pred.size()) {
    throw tempex::ValidationError("--gold and --pred counts must match");
  }
  tempex::ExtentScore extent;
  tempex::AccuracyCounts type_counts, value_counts, relation_counts;
  for (size_t i = 0; i < opt.gold.size(); ++i) {
    tempex::Document gold = tempex::parse_document(read_file(opt.gold[i]));
    tempex::Document pred = tempex::parse_document(read_file(opt.pred[i]));
    std::vector<tempex::Span> gold_spans, pred_spans;
    for (const auto& t : gold.timexes) gold_spans.push_back(t.span);
    for (const auto& t : pred.timexes) pred_spans.push_back(t.span);
    tempex::ExtentScore e = tempex::score_extents(gold_spans, pred_spans);
    extent.tp += e.tp;
    extent.fp += e.fp;
    extent.fn += e.fn;
    auto add = [](tempex::AccuracyCounts& into, tempex::AccuracyCounts from) {
      into.total += from.total;
      into.correct += from.correct;
    };
    add(type_counts, tempex::attribute_counts(gold.timexes, pred.timexes,
                                              tempex::TimexAttribute::kType));
    add(value_counts, tempex::attribute_counts(gold.timexes, pred.timexes,
                                               tempex::TimexAttribute::kValue));
    std::vector<std::pair<std::string, tempex::RelationLabel>> gr, pr;
    for (const auto& r : gold.relations) {
      if (r.label) gr.emplace_back(r.id, *r.label);
    }
    for (const auto& r : pred.relations) {
      if (r.label) pr.emplace_back(r.id, *r.label);
    }
    add(relation_counts, tempex::relation_counts(gr, pr));
  }
  extent.precision =
      extent.tp + extent.fp == 0
          ? 1.0
          : static_cast<double>(extent.tp) / (extent.tp + extent.fp);
  extent.recall = extent.tp + extent.fn == 0
                      ? 1.0
                      : static_cast<double>(extent.tp) / (extent.tp + extent.fn);
  double pr = extent.precision + extent.recall;
  extent.f1 = pr > 0.0 ? 2.0 * extent.precision * extent.recall / pr : 0.0;

  if (opt.json_report) {
    Json root;
    Json e;
    e["precision"] = extent.precision;
    e["recall"] = extent.recall;
    e["f1"] = extent.f1;
    e["tp"] = extent.tp;
    e["fp"] = extent.fp;
    e["fn"] = extent.fn;
    root["extent"] = std::move(e);
    auto acc = [](const tempex::AccuracyCounts& c) {
      return c.total == 0 ? Json(nullptr) : Json(c.accuracy());
    };
    root["type_accuracy"] = acc(type_counts);
    root["value_accuracy"] = acc(value_counts);
    root["relation_accuracy"] = acc(relation_counts);
    write_output(opt.output, root.dump(2) + "\n");
  } else {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "extents    P=%.3f R=%.3f F1=%.3f (tp=%ld fp=%ld fn=%ld)\n",
                  extent.precision, extent.recall, extent.f1, extent.tp,
                  extent.fp, extent.fn);
    std::string report = line;
    std::snprintf(line, sizeof(line), "type       acc=%s (%ld/%ld)\n",
                  format_accuracy(type_counts).c_str(), type_counts.correct,
                  type_counts.total);
    report += line;
    std::snprintf(line, sizeof(line), "value      acc=%s (%ld/%ld)\n",
                  format_accuracy(value_counts).c_str(), value_counts.correct,
                  value_counts.total);
    report += line;
    std::snprintf(line, sizeof(line), "relations  acc=%s (%ld/%ld)\n",
                  format_accuracy(relation_counts).c_str(),
                  relation_counts.correct, relation_counts.total);
    report += line;
    write_output(opt.output, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal expression annotation and relation labeling"};
  app.require_subcommand(1);
  Options opt;

  auto add_doc_io = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "input document (canonical JSON)")
        ->required();
    cmd->add_option("--output", opt.output, "output path ('-' for stdout)");
    cmd->add_option("--dct", opt.dct,
                    "override the document creation time (YYYY-MM-DD)");
  };

  CLI::App* recognize =
      app.add_subcommand("recognize", "find temporal expression spans");
  add_doc_io(recognize);
  recognize->add_option("--ruleset", opt.ruleset, "ruleset TSV")->required();
  recognize->add_option("--max-n", opt.max_n, "n-gram ceiling (default 5)");

  CLI::App* normalize = app.add_subcommand(
      "normalize", "assign types and values to recognized spans");
  add_doc_io(normalize);
  normalize->add_option("--spans", opt.spans, "spans JSON from recognize")
      ->required();
  normalize->add_option("--f-days", opt.f_days,
                        "year-resolution limit in days (default 14)");

  CLI::App* annotate = app.add_subcommand(
      "annotate", "recognize and normalize in one pass");
  add_doc_io(annotate);
  annotate->add_option("--ruleset", opt.ruleset, "ruleset TSV")->required();
  annotate->add_option("--max-n", opt.max_n, "n-gram ceiling (default 5)");
  annotate->add_option("--f-days", opt.f_days,
                       "year-resolution limit in days (default 14)");

  CLI::App* train =
      app.add_subcommand("train", "train a relation labeling model");
  train->add_option("--task", opt.task, "task shape: C or E")
      ->required()
      ->check(CLI::IsMember({"C", "E"}));
  train->add_option("--input", opt.inputs,
                    "gold document(s), repeatable")
      ->required();
  train->add_option("--lexicon", opt.lexicon, "signal lexicon TSV")->required();
  train->add_option("--output", opt.output, "model output path")->required();
  train->add_option("--sigma2", opt.sigma2, "L2 prior variance (default 1.0)");
  train->add_option("--max-iterations", opt.max_iterations,
                    "optimizer iteration cap (default 200)");
  train->add_option("--tol", opt.tol,
                    "relative log-likelihood tolerance (default 1e-6)");

  CLI::App* label =
      app.add_subcommand("label", "label relations with a trained model");
  add_doc_io(label);
  label->add_option("--task", opt.task, "task shape: C or E")
      ->required()
      ->check(CLI::IsMember({"C", "E"}));
  label->add_option("--lexicon", opt.lexicon, "signal lexicon TSV")->required();
  label->add_option("--model", opt.model, "trained model file")->required();

  CLI::App* score =
      app.add_subcommand("score", "score predicted annotations against gold");
  score->add_option("--gold", opt.gold, "gold document(s)")->required();
  score->add_option("--pred", opt.pred, "predicted document(s)")->required();
  score->add_option("--output", opt.output, "report path ('-' for stdout)");
  score->add_flag("--json", opt.json_report, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::endl;
    return 2;
  }

  try {
    if (app.got_subcommand(recognize)) return run_recognize(opt);
    if (app.got_subcommand(normalize)) return run_normalize(opt);
    if (app.got_subcommand(annotate)) return run_annotate(opt);
    if (app.got_subcommand(train)) return run_train(opt);
    if (app.got_subcommand(label)) return run_label(opt);
    if (app.got_subcommand(score)) return run_score(opt);
  } catch (const tempex::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
