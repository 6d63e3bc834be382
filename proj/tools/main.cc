// Copyright 2026 The codemix Authors
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

// codemix: command-line front end for the corpus curation pipeline.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "codemix/bootstrap.h"
#include "codemix/conll.h"
#include "codemix/corpus_io.h"
#include "codemix/error.h"
#include "codemix/lid_model.h"
#include "codemix/metrics.h"
#include "codemix/normalize.h"
#include "codemix/review_service.h"
#include "codemix/selector.h"
#include "codemix/tokenize.h"
#include "streams.h"

namespace codemix::cli {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  bool quiet = false;
  int threads = 1;
};

Globals g_globals;

void note(const std::string& message) {
  if (!g_globals.quiet) std::cerr << message << '\n';
}

void report_line_errors(const std::vector<LineError>& errors) {
  for (const LineError& e : errors) {
    note("warning: line " + std::to_string(e.line_no) + ": " + e.message);
  }
}

struct PolicyFlags {
  std::string script = "roman";
  NormalizePolicy policy;

  void attach(CLI::App* cmd) {
    cmd->add_option("--script", script, "Script policy: roman keeps Basic Latin, "
                                        "mixed also keeps Devanagari")
        ->check(CLI::IsMember({"roman", "mixed"}))
        ->capture_default_str();
    cmd->add_flag("--keep-emoji,!--no-emoji", policy.keep_emoji, "Keep emoji (default on)");
    cmd->add_flag("--strip-mentions,!--keep-mentions", policy.strip_mentions,
                  "Remove @mentions (default on)");
    cmd->add_flag("--strip-urls,!--keep-urls", policy.strip_urls,
                  "Remove http(s) and t.co URLs (default on)");
  }

  NormalizePolicy resolve() const {
    NormalizePolicy p = policy;
    p.script_mode = script == "mixed" ? ScriptMode::kMixed : ScriptMode::kRomanOnly;
    return p;
  }
};

struct ModelFlags {
  FeatureConfig features;
  TrainParams train;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ngram-min", features.ngram_min, "Shortest character n-gram")
        ->capture_default_str();
    cmd->add_option("--ngram-max", features.ngram_max, "Longest character n-gram (<= 6)")
        ->capture_default_str();
    cmd->add_option("--hash-dim", features.hash_dim,
                    "Hashed feature rows, a power of two >= 1024")
        ->capture_default_str();
    cmd->add_flag("--word-feature,!--no-word-feature", features.use_word_feature,
                  "Whole-word identity feature (default on)");
    cmd->add_option("--context-window", features.context_window,
                    "Neighbouring words on each side used as features")
        ->capture_default_str();
    cmd->add_option("--epochs", train.epochs, "Passes over the training tokens")
        ->capture_default_str();
    cmd->add_option("--lr", train.learning_rate,
                    "Initial learning rate, decayed linearly to 0")
        ->capture_default_str();
    cmd->add_option("--l2", train.l2, "L2 penalty on touched weight rows")
        ->capture_default_str();
  }

  TrainParams resolve_train() const {
    TrainParams p = train;
    p.seed = g_globals.seed;
    return p;
  }
};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<std::string> read_lines_or_stdin(const std::string& path,
                                             std::vector<LineError>* errors) {
  InputSource in(path);
  RawCorpus corpus = read_sentences(in.stream());
  if (errors != nullptr) *errors = corpus.errors;
  return std::move(corpus.sentences);
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  OutputSink out(path);
  for (const std::string& line : lines) out.stream() << line << '\n';
  out.commit();
}

LabeledCorpus read_labeled(const std::vector<std::string>& paths) {
  LabeledCorpus all;
  for (std::size_t f = 0; f < paths.size(); ++f) {
    const std::string prefix = paths.size() == 1 ? "s" : "f" + std::to_string(f + 1) + "s";
    LabeledCorpus part = read_conll_file(paths[f], prefix);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

LabeledSentence predict_labeled(const LidModel& model, const LabeledSentence& gold) {
  return to_labeled(predict_sentence(model, to_tokenized(gold)), gold.id);
}

fs::path resolve_in(const fs::path& dir, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : dir / p;
}

// ---------------------------------------------------------------------------

struct NormalizeCmd {
  std::string input, out;
  PolicyFlags policy;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("normalize", "Strip mentions/URLs, apply the script "
                                                "policy, collapse whitespace");
    cmd->add_option("input", input, "Raw text, one sentence per line (default stdin)");
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    policy.attach(cmd);
    cmd->footer("Sentences that normalize to nothing are dropped. Counts go to stderr.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    const NormalizePolicy p = policy.resolve();
    InputSource in(input);
    OutputSink sink(out);
    SentenceReader reader(in.stream());
    std::size_t kept = 0, dropped = 0;
    std::string line;
    while (reader.next(line)) {
      if (auto n = normalize_sentence(line, p)) {
        sink.stream() << *n << '\n';
        ++kept;
      } else {
        ++dropped;
      }
    }
    sink.commit();
    report_line_errors(reader.errors());
    note("kept=" + std::to_string(kept) + " dropped=" + std::to_string(dropped) +
         " invalid_utf8=" + std::to_string(reader.errors().size()));
  }
};

struct TokenizeCmd {
  std::string input, out;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("tokenize", "Split normalized sentences into tokens");
    cmd->add_option("input", input, "Normalized text (default stdin)");
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    cmd->footer("Output: one 'token<TAB>KIND' line per token (KIND is WORD, PUNCT, "
                "EMOJI or NUMBER), blank line between sentences.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    InputSource in(input);
    OutputSink sink(out);
    SentenceReader reader(in.stream());
    std::string line;
    while (reader.next(line)) {
      const TokenizedSentence s = tokenize(line);
      if (s.tokens.empty()) continue;
      for (const Token& t : s.tokens) {
        sink.stream() << t.text << '\t' << token_kind_name(t.kind) << '\n';
      }
      sink.stream() << '\n';
    }
    sink.commit();
    report_line_errors(reader.errors());
  }
};

struct TrainCmd {
  std::string train_path, valid_path, out;
  ModelFlags model;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("train-lid", "Train the word-level language classifier");
    cmd->add_option("train", train_path, "Labeled corpus, 'token<TAB>label' lines")->required();
    cmd->add_option("-o,--out", out, "Model file to write")->required();
    cmd->add_option("--valid", valid_path, "Labeled corpus for a held-out accuracy report");
    model.attach(cmd);
    cmd->footer("Training is single-threaded and deterministic given --seed.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    model.features.validate();
    const TrainParams params = model.resolve_train();
    params.validate();
    const LabeledCorpus corpus = read_conll_file(train_path);
    LabeledCorpus valid;
    if (!valid_path.empty()) valid = read_conll_file(valid_path);
    TrainReport report;
    LidModel trained = train(corpus, model.features, params, &report);
    save_model(trained, out);
    note("sentences=" + std::to_string(corpus.size()) +
         " initial_loss=" + fixed4(report.initial_loss) +
         " final_loss=" + fixed4(report.final_loss));
    if (!valid_path.empty()) {
      note("valid_accuracy=" + fixed4(heldout_accuracy(trained, valid)));
    }
  }
};

struct PredictCmd {
  std::string model_path, input, out, format = "text";
  bool confidence = false;
  PolicyFlags policy;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("predict-lid", "Label every token of a corpus");
    cmd->add_option("-m,--model", model_path, "Model file")->required();
    cmd->add_option("input", input, "Input (default stdin)");
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    cmd->add_option("--input-format", format,
                    "text: raw lines, normalized then tokenized; conll: re-label an "
                    "existing labeled corpus")
        ->check(CLI::IsMember({"text", "conll"}))
        ->capture_default_str();
    cmd->add_flag("--confidence", confidence, "Add a third column with the confidence");
    policy.attach(cmd);
    cmd->footer("Output is a labeled corpus with '# id = ' comment lines.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    const LidModel model = load_model(model_path);
    InputSource in(input);
    OutputSink sink(out);
    if (format == "conll") {
      const LabeledCorpus gold = read_conll(in.stream());
      for (const LabeledSentence& s : gold) {
        write_conll(sink.stream(), {predict_labeled(model, s)}, true, confidence);
      }
    } else {
      const NormalizePolicy p = policy.resolve();
      SentenceReader reader(in.stream());
      std::string line;
      while (reader.next(line)) {
        auto normalized = normalize_sentence(line, p);
        if (!normalized) continue;
        const TokenizedSentence labeled = predict_sentence(model, tokenize(*normalized));
        write_conll(sink.stream(),
                    {to_labeled(labeled, "s" + std::to_string(reader.line_no()))}, true,
                    confidence);
      }
      report_line_errors(reader.errors());
    }
    sink.commit();
  }
};

struct FilterCmd {
  std::string model_path, input, out_positional, out, stats_path;
  FilterConfig config;
  PolicyFlags policy;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("filter", "Keep sentences with enough Hindi and "
                                              "English words");
    cmd->add_option("-m,--model", model_path, "Model file")->required();
    cmd->add_option("input", input, "Raw text, one sentence per line")->required();
    cmd->add_option("output", out_positional, "Accepted sentences (default stdout)");
    cmd->add_option("-o,--out", out, "Same as the output positional");
    cmd->add_option("--stats", stats_path, "Write the JSON stats report here "
                                           "(default stderr)");
    cmd->add_option("--min-hi", config.min_hi, "Minimum HI word tokens")->capture_default_str();
    cmd->add_option("--min-en", config.min_en, "Minimum EN word tokens")->capture_default_str();
    policy.attach(cmd);
    cmd->footer("Accepted sentences are written in normalized form. Stats keys: total, "
                "accepted, rejected_low_hi, rejected_low_en, rejected_empty, "
                "invalid_utf8, acceptance_rate.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    if (!out.empty() && !out_positional.empty() && out != out_positional) {
      throw InvalidArgument("give the output either positionally or with --out");
    }
    config.validate();
    const LidModel model = load_model(model_path);
    InputSource in(input);
    OutputSink sink(out.empty() ? out_positional : out);
    const FilterStats stats = filter_corpus(model, in.stream(), sink.stream(),
                                            policy.resolve(), config, g_globals.threads);
    sink.commit();
    report_line_errors(stats.errors);
    const std::string report = format_filter_stats(stats);
    if (!stats_path.empty()) {
      write_file_atomic(stats_path, report);
    } else if (!g_globals.quiet) {
      std::cerr << report;
    }
  }
};

struct CmiCmd {
  std::vector<std::string> inputs;
  std::string out, other = "independent";

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("cmi", "Code-mixing index of labeled corpora");
    cmd->add_option("inputs", inputs, "Labeled corpora")->required();
    cmd->add_option("-o,--out", out, "Report file (default stdout)");
    cmd->add_option("--other", other,
                    "independent: OTHER tokens are language independent and "
                    "sentences without language tokens score 0; exclude: such "
                    "sentences are left out of the aggregate")
        ->check(CLI::IsMember({"independent", "exclude"}))
        ->capture_default_str();
    cmd->footer("Keys: sentences, skipped, empty, mean_cmi, monolingual_fraction, "
                "hist_00_10 .. hist_90_100.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    CmiAccumulator acc(other == "exclude" ? OtherMode::kExclude : OtherMode::kIndependent);
    for (const LabeledSentence& s : read_labeled(inputs)) acc.add(s);
    OutputSink sink(out);
    sink.stream() << format_cmi_report(acc.report());
    sink.commit();
  }
};

struct StatsCmd {
  std::vector<std::string> inputs;
  std::string out;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("stats", "Sentence and per-label token counts");
    cmd->add_option("inputs", inputs, "Labeled corpora (counts are summed)")->required();
    cmd->add_option("-o,--out", out, "Report file (default stdout)");
    cmd->footer("Keys: sentences, tokens, tokens_en, tokens_hi, tokens_other, "
                "mean_tokens_per_sentence.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    CorpusStats total;
    for (const std::string& path : inputs) total += corpus_stats(read_conll_file(path));
    OutputSink sink(out);
    sink.stream() << format_corpus_stats(total);
    sink.commit();
  }
};

struct EvalCmd {
  std::string gold_path, pred_path, model_path, out, model_name = "codemix-lid",
                                                     format = "kv";

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("eval", "Token-level LID accuracy and F1");
    cmd->add_option("gold", gold_path, "Gold labeled corpus")->required();
    cmd->add_option("predicted", pred_path, "Predicted labeled corpus");
    cmd->add_option("-m,--model", model_path, "Predict with this model instead");
    cmd->add_option("-o,--out", out, "Report file (default stdout)");
    cmd->add_option("--format", format, "kv: key=value report; table: one results row")
        ->check(CLI::IsMember({"kv", "table"}))
        ->capture_default_str();
    cmd->add_option("--model-name", model_name, "Row label for --format table")
        ->capture_default_str();
    cmd->footer("Exactly one of a predicted corpus or --model is required.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    if (pred_path.empty() == model_path.empty()) {
      throw InvalidArgument("eval needs exactly one of PREDICTED or --model");
    }
    const LabeledCorpus gold = read_conll_file(gold_path);
    LabeledCorpus predicted;
    if (!model_path.empty()) {
      const LidModel model = load_model(model_path);
      for (const LabeledSentence& s : gold) predicted.push_back(predict_labeled(model, s));
    } else {
      predicted = read_conll_file(pred_path);
    }
    const EvalReport report = evaluate_lid(gold, predicted);
    OutputSink sink(out);
    sink.stream() << (format == "table" ? format_eval_table(report, model_name)
                                        : format_eval_report(report));
    sink.commit();
  }
};

struct SplitCmd {
  std::string input, train_out, valid_out;
  double fraction = SplitSpec{}.valid_fraction;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("split", "Deterministic train/validation split");
    cmd->add_option("input", input, "Sentences, one per line (default stdin)");
    cmd->add_option("--train", train_out, "Training output")->required();
    cmd->add_option("--valid", valid_out, "Validation output")->required();
    cmd->add_option("--fraction", fraction, "Validation fraction in [0, 1)")
        ->capture_default_str();
    cmd->footer("Exactly round(fraction * N) lines go to validation; order is preserved.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    std::vector<LineError> errors;
    const auto lines = read_lines_or_stdin(input, &errors);
    const Split split = split_corpus(lines, {fraction, g_globals.seed});
    write_lines(split.train, train_out);
    write_lines(split.valid, valid_out);
    report_line_errors(errors);
    note("total=" + std::to_string(lines.size()) + " train=" +
         std::to_string(split.train.size()) + " valid=" + std::to_string(split.valid.size()));
  }
};

struct DedupCmd {
  std::string input, out;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("dedup", "Drop exact duplicate lines, keeping the first");
    cmd->add_option("input", input, "Sentences (default stdin)");
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    std::vector<LineError> errors;
    DedupResult r = dedup(read_lines_or_stdin(input, &errors));
    write_lines(r.sentences, out);
    report_line_errors(errors);
    note("kept=" + std::to_string(r.sentences.size()) + " removed=" + std::to_string(r.removed));
  }
};

struct ShuffleCmd {
  std::string input, out;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("shuffle", "Seeded in-memory shuffle of lines");
    cmd->add_option("input", input, "Sentences (default stdin)");
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    std::vector<LineError> errors;
    auto lines = read_lines_or_stdin(input, &errors);
    write_lines(shuffle(std::move(lines), g_globals.seed), out);
    report_line_errors(errors);
  }
};

struct KeywordsCmd {
  std::vector<std::string> inputs;
  std::string vocab_path, out;
  std::size_t min_freq = 10;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("propose-keywords",
                                   "Frequent HI words missing from the scrape vocabulary");
    cmd->add_option("inputs", inputs, "Labeled corpora")->required();
    cmd->add_option("--vocab", vocab_path, "Known vocabulary, one word per line");
    cmd->add_option("--min-freq", min_freq, "Minimum frequency")->capture_default_str();
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
    cmd->footer("Output: 'word<TAB>count' lines, most frequent first.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    std::unordered_set<std::string> vocab;
    if (!vocab_path.empty()) {
      for (std::string& w : read_sentences(vocab_path).sentences) vocab.insert(std::move(w));
    }
    const auto keywords = propose_keywords(read_labeled(inputs), vocab, min_freq);
    OutputSink sink(out);
    for (const KeywordCandidate& k : keywords) sink.stream() << k.word << '\t' << k.count << '\n';
    sink.commit();
  }
};

struct BootstrapCmd {
  std::string dir, seed_path, validation_path, pool_path;
  double threshold = 0.9;
  bool force = false;
  ModelFlags model;
  PolicyFlags policy;
  CLI::App* init = nullptr;
  CLI::App* round = nullptr;
  CLI::App* status = nullptr;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("bootstrap", "Semi-supervised LID training rounds");
    cmd->require_subcommand(1);
    init = cmd->add_subcommand("init", "Create a state directory from a seed set");
    init->add_option("--seed-set", seed_path, "Gold labeled corpus")->required();
    init->add_option("-d,--dir", dir, "State directory")->required();
    init->add_option("--threshold", threshold, "Auto-accept confidence in (0, 1]")
        ->capture_default_str();
    init->add_option("--validation", validation_path, "Gold corpus scored after each round");
    init->add_flag("--force", force, "Overwrite an existing state");

    round = cmd->add_subcommand("round", "Merge reviews, retrain, pseudo-label a pool");
    round->add_option("-d,--dir", dir, "State directory")->required();
    round->add_option("--pool", pool_path, "Unlabeled raw text for pseudo-labeling");
    model.attach(round);
    policy.attach(round);
    round->footer("Every review item must be resolved first. Writes model-vN.bin, "
                  "state.json, accepted.conll, reviewed.conll, held_back.conll and "
                  "queue.tsv into the state directory.");

    status = cmd->add_subcommand("status", "Summarize a state directory");
    status->add_option("-d,--dir", dir, "State directory")->required();

    table.emplace_back(init, [this] { run_init(); });
    table.emplace_back(round, [this] { run_round(); });
    table.emplace_back(status, [this] { run_status(); });
  }

  void run_init() {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
      throw InvalidArgument("threshold must be in (0, 1]");
    }
    if (fs::exists(fs::path(dir) / kStateManifest) && !force) {
      throw InvalidArgument("state already exists in " + dir + " (use --force)");
    }
    BootstrapState state;
    state.threshold = threshold;
    state.seed_set = read_conll_file(seed_path, "seed");
    if (!validation_path.empty()) {
      read_conll_file(validation_path);
      state.validation_path = fs::absolute(validation_path).string();
    }
    save_state(dir, state);
    note("seed_sentences=" + std::to_string(state.seed_set.size()));
  }

  void run_round() {
    model.features.validate();
    const TrainParams params = model.resolve_train();
    params.validate();
    const BootstrapState state = load_state(dir);
    std::vector<std::string> lines;
    if (!pool_path.empty()) {
      std::vector<LineError> errors;
      lines = read_lines_or_stdin(pool_path, &errors);
      report_line_errors(errors);
    }
    const auto pool = prepare_pool(lines, policy.resolve(),
                                   "r" + std::to_string(state.iteration + 1) + "-");
    LabeledCorpus validation;
    if (state.validation_path) {
      validation = read_conll_file(resolve_in(dir, *state.validation_path).string());
    }
    RoundResult result = bootstrap_round(state, pool, model.features, params,
                                         state.validation_path ? &validation : nullptr);
    save_model(result.model, (fs::path(dir) / result.state.model_path).string());
    save_state(dir, result.state);
    const RoundRecord& r = result.state.history.back();
    std::string summary = "iteration=" + std::to_string(r.iteration) +
                          " train_sentences=" + std::to_string(r.train_sentences) +
                          " accepted_added=" + std::to_string(r.accepted_added) +
                          " held_back=" + std::to_string(r.held_back) +
                          " queued=" + std::to_string(r.queued);
    if (r.valid_accuracy) summary += " valid_accuracy=" + fixed4(*r.valid_accuracy);
    note(summary);
  }

  void run_status() {
    const BootstrapState state = load_state(dir);
    std::size_t corrected = 0, confirmed = 0;
    for (const ReviewItem& item : state.queue) {
      corrected += item.status == ReviewStatus::kCorrected;
      confirmed += item.status == ReviewStatus::kConfirmed;
    }
    std::cout << "iteration=" << state.iteration << "\n"
              << "threshold=" << fixed4(state.threshold) << "\n"
              << "model=" << state.model_path << "\n"
              << "seed_sentences=" << state.seed_set.size() << "\n"
              << "accepted_sentences=" << state.accepted.size() << "\n"
              << "reviewed_sentences=" << state.reviewed.size() << "\n"
              << "held_back_sentences=" << state.held_back.size() << "\n"
              << "pending=" << state.pending_count() << "\n"
              << "corrected=" << corrected << "\n"
              << "confirmed=" << confirmed << "\n";
  }
};

struct ServeCmd {
  std::string dir, bind = "127.0.0.1:8765", ui;

  void attach(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void()>>>& table) {
    auto* cmd = app.add_subcommand("review-serve", "Serve the review queue over HTTP");
    cmd->add_option("-d,--dir", dir, "Bootstrap state directory")->required();
    cmd->add_option("--bind", bind, "host:port (port 0 picks a free port)")
        ->capture_default_str();
    cmd->add_option("--ui", ui, "Static files served under /ui");
    cmd->footer("Endpoints: GET /queue?limit=N&cursor=C, POST /corrections, GET /progress. "
                "Stops on SIGINT or SIGTERM.");
    table.emplace_back(cmd, [this] { run(); });
  }

  void run() {
    const auto [host, port] = parse_bind_address(bind);
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    ReviewStore store(dir);
    ReviewServer server(store, ui.empty() ? std::nullopt
                                          : std::optional<fs::path>(fs::path(ui)));
    const int bound = server.bind(host, port);
    std::cerr << "listening on http://" << host << ":" << bound << std::endl;
    std::thread worker([&server] { server.listen(); });
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
    worker.join();
    const ReviewProgress p = store.progress();
    note("pending=" + std::to_string(p.pending) + " corrected=" +
         std::to_string(p.corrected) + " confirmed=" + std::to_string(p.confirmed));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Curate code-mixed Hindi-English corpora", "codemix"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.add_option("--seed", g_globals.seed, "Seed for shuffling, splitting and training")
      ->envname("CODEMIX_SEED")
      ->capture_default_str();
  app.add_flag("-q,--quiet", g_globals.quiet, "Suppress diagnostics on stderr");
  app.add_option("--threads", g_globals.threads, "Worker threads where supported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::pair<CLI::App*, std::function<void()>>> table;
  NormalizeCmd normalize_cmd;
  TokenizeCmd tokenize_cmd;
  TrainCmd train_cmd;
  PredictCmd predict_cmd;
  BootstrapCmd bootstrap_cmd;
  ServeCmd serve_cmd;
  FilterCmd filter_cmd;
  CmiCmd cmi_cmd;
  StatsCmd stats_cmd;
  EvalCmd eval_cmd;
  SplitCmd split_cmd;
  DedupCmd dedup_cmd;
  ShuffleCmd shuffle_cmd;
  KeywordsCmd keywords_cmd;
  normalize_cmd.attach(app, table);
  tokenize_cmd.attach(app, table);
  train_cmd.attach(app, table);
  predict_cmd.attach(app, table);
  bootstrap_cmd.attach(app, table);
  serve_cmd.attach(app, table);
  filter_cmd.attach(app, table);
  cmi_cmd.attach(app, table);
  stats_cmd.attach(app, table);
  eval_cmd.attach(app, table);
  split_cmd.attach(app, table);
  dedup_cmd.attach(app, table);
  shuffle_cmd.attach(app, table);
  keywords_cmd.attach(app, table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (auto& [cmd, action] : table) {
      if (cmd->parsed()) {
        action();
        return 0;
      }
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace
}  // namespace codemix::cli

int main(int argc, char** argv) { return codemix::cli::run(argc, argv); }
