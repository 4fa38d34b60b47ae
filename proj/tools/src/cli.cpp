#include "bnlf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

#include "bnlf/dataset.hpp"
#include "bnlf/error.hpp"
#include "bnlf/evaluation.hpp"
#include "bnlf/inference.hpp"
#include "bnlf/influence.hpp"
#include "bnlf/pipeline.hpp"
#include "bnlf/records.hpp"
#include "bnlf/serialize.hpp"

namespace bnlf::cli {
namespace {

namespace fs = std::filesystem;

enum class Format { Table, Csv, Json };

struct Options {
  std::string records;
  std::string model;
  std::string models = "finbert,roberta,bertweet";
  double split = 0.8;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  std::vector<std::string> sets;
  std::string metric = "euclidean";
  std::string agg = "average";
  std::string out;
  std::string format = "table";
};

Format format_of(const Options& o) {
  if (o.format == "json") return Format::Json;
  if (o.format == "csv") return Format::Csv;
  return Format::Table;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(std::move(t));
  return out;
}

std::string render(const TextTable& t, Format f) { return f == Format::Csv ? t.to_csv() : t.to_text(); }

std::string issue_summary(const std::vector<Issue>& issues) {
  std::map<std::string, std::size_t> by_kind;
  std::size_t dropped = 0;
  for (const auto& i : issues) {
    ++by_kind[std::string(to_string(i.kind))];
    dropped += i.dropped;
  }
  std::string s = std::to_string(issues.size()) + " issue(s), " + std::to_string(dropped) + " dropped";
  for (const auto& [kind, n] : by_kind) s += "; " + kind + ": " + std::to_string(n);
  return s;
}

ParseResult load(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::IoError, "no such file: " + path);
  return load_records(path);
}

fs::path manifest_path_for(const fs::path& model_path) {
  return model_path.parent_path() / (model_path.stem().string() + ".manifest.json");
}

struct LoadedModel {
  FittedModel fitted;
  std::optional<SplitManifest> manifest;
};

LoadedModel load_model(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::IoError, "no such file: " + path);
  LoadedModel m{fitted_model_from_json(read_json_file(path)), std::nullopt};
  if (!m.fitted.manifest_ref.empty()) {
    const fs::path ref = fs::path(path).parent_path() / m.fitted.manifest_ref;
    if (!fs::exists(ref)) throw Error(ErrorCode::IoError, "split manifest not found: " + ref.string());
    m.manifest = manifest_from_json(read_json_file(ref));
  }
  return m;
}

/// Records outside the model's training partition.
std::vector<PredictionRecord> held_out(const std::vector<PredictionRecord>& records, const LoadedModel& m) {
  if (!m.manifest) return records;
  std::vector<PredictionRecord> out;
  for (const auto& r : records)
    if (!std::binary_search(m.manifest->train_ids.begin(), m.manifest->train_ids.end(), r.id)) out.push_back(r);
  return out;
}

void emit_json(const Options& o, const nlohmann::json& doc, std::ostream& out) {
  if (!o.out.empty()) write_text_file(o.out, dump_json(doc));
  if (format_of(o) == Format::Json) out << dump_json(doc);
}

BnlfConfig config_from(const Options& o) {
  BnlfConfig cfg;
  cfg.model_names = split_csv(o.models);
  cfg.smoothing = SmoothingConfig::laplace(o.alpha);
  cfg.split = SplitSpec{o.split, o.seed, false};
  return cfg;
}

EnsembleOptions ensemble_from(const Options& o, const std::vector<std::string>& fallback_models) {
  EnsembleOptions e;
  auto models = split_csv(o.models);
  if (models.empty()) models = fallback_models;
  e.models = models;
  e.fallback = models.front();
  return e;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto parsed = load(o.records);
  const auto stats = validate_dataset_stats(parsed.records);
  const nlohmann::json doc{{"records", parsed.records.size()},
                           {"stats", stats_to_json(stats)},
                           {"issues", issues_to_json(parsed.issues)}};
  if (format_of(o) != Format::Json) {
    out << render(stats_table(stats), format_of(o));
    out << parsed.records.size() << " valid record(s); " << issue_summary(parsed.issues) << "\n";
  }
  emit_json(o, doc, out);
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto parsed = load(o.records);
  const auto cfg = config_from(o);
  const auto res = fit(cfg, parsed.records);

  const fs::path model_path = o.out;
  const fs::path manifest_path = manifest_path_for(model_path);
  write_text_file(manifest_path, dump_json(manifest_to_json(res.manifest)));
  write_text_file(model_path, dump_json(fitted_model_to_json(res.network, res.config,
                                                             manifest_path.filename().string())));

  std::vector<Issue> issues = parsed.issues;
  issues.insert(issues.end(), res.issues.begin(), res.issues.end());
  out << "trained on " << res.train_rows << " of " << res.manifest.train_ids.size() << " training record(s); "
      << res.manifest.test_ids.size() << " held out\n";
  out << "corpus states:";
  for (const auto& c : res.config.corpus_states) out << " " << c;
  out << "\n" << issue_summary(issues) << "\n";
  out << "model: " << model_path.string() << "\nmanifest: " << manifest_path.string() << "\n";
  return kOk;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream& err) {
  const auto model = load_model(o.model);
  const auto parsed = load(o.records);
  const auto targets = held_out(parsed.records, model);
  const auto batch = predict_batch(model.fitted.network, targets, model.fitted.config.model_names);
  const std::string lines = predictions_to_jsonl(targets, batch);

  std::size_t flagged = 0;
  for (const auto& p : batch.predictions) flagged += !p.flags.empty();
  std::ostream& human = o.out.empty() ? err : out;
  if (o.out.empty()) out << lines;
  else write_text_file(o.out, lines);
  human << "predicted " << batch.predictions.size() << " of " << targets.size() << " record(s); " << flagged
        << " flagged; " << issue_summary(batch.issues) << "\n";
  return kOk;
}

std::vector<PredictionRecord> scored_records(const Options& o) {
  auto records = load(o.records).records;
  if (o.model.empty()) return records;
  const auto model = load_model(o.model);
  auto targets = held_out(records, model);
  const auto batch = predict_batch(model.fitted.network, targets, model.fitted.config.model_names);
  auto scored = attach_predictions(targets, batch);
  std::erase_if(scored, [](const PredictionRecord& r) { return !r.preds.count("bnlf"); });
  return scored;
}

void print_evaluation(const EvaluationReport& report, Format f, std::ostream& out) {
  bool first = true;
  for (const auto& [name, table] : evaluation_tables(report)) {
    if (!first) out << "\n";
    first = false;
    if (f == Format::Table) out << "[" << name << "]\n";
    else out << "# " << name << "\n";
    out << render(table, f);
  }
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto records = scored_records(o);
  const auto sources = sources_from_records(records, ensemble_from(o, EnsembleOptions{}.models));
  const auto report = evaluate(records, sources.sources);
  auto doc = evaluation_to_json(report);
  doc["issues"] = issues_to_json(sources.issues);
  if (format_of(o) != Format::Json) {
    print_evaluation(report, format_of(o), out);
    if (!sources.issues.empty()) out << issue_summary(sources.issues) << "\n";
  }
  emit_json(o, doc, out);
  return kOk;
}

std::optional<std::string> match_ci(const std::vector<std::string>& names, const std::string& wanted) {
  const std::string w = lower(wanted);
  for (const auto& n : names)
    if (n == wanted) return n;
  for (const auto& n : names)
    if (lower(n) == w) return n;
  return std::nullopt;
}

Assignment evidence_from(const Network& net, const std::vector<std::string>& sets) {
  std::vector<std::string> node_names;
  for (const auto& n : net.nodes()) node_names.push_back(n.name);
  Assignment ev;
  for (const auto& item : sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw CLI::ValidationError("--set", "expected NODE=STATE, got '" + item + "'");
    const std::string node_text = trim(item.substr(0, eq));
    const std::string state_text = trim(item.substr(eq + 1));
    const auto node = match_ci(node_names, node_text);
    if (!node) throw Error(ErrorCode::UnknownNode, "no node named '" + node_text + "'");
    const auto& states = net.nodes()[net.index_of(*node)].states;
    auto state = match_ci(states, state_text);
    if (!state) {
      if (auto mapped = LabelMap::standard().lookup(state_text))
        state = match_ci(states, std::string(to_string(*mapped)));
    }
    if (!state) {
      if (*node == kCorpusNode)
        throw Error(ErrorCode::UnknownCorpusState, "corpus '" + state_text + "' is not a state of the fitted model");
      throw Error(ErrorCode::UnknownState, "node '" + *node + "' has no state '" + state_text + "'");
    }
    ev.set(*node, *state);
  }
  return ev;
}

int cmd_infer(const Options& o, std::ostream& out) {
  const auto model = load_model(o.model);
  const Network& net = model.fitted.network;
  const auto ev = evidence_from(net, o.sets);
  const auto post = posterior(net, kSentimentNode, ev);
  const auto& states = net.nodes()[net.index_of(kSentimentNode)].states;
  const std::string label = states[argmax_first(post.distribution)];

  nlohmann::json evidence = nlohmann::json::object();
  for (const auto& [k, v] : ev.bindings()) evidence[k] = v;
  nlohmann::json dist = nlohmann::json::object();
  TextTable table({"State", "Probability"});
  for (std::size_t i = 0; i < states.size(); ++i) {
    dist[states[i]] = post.distribution[i];
    table.add_row({states[i], fixed4(post.distribution[i])});
  }
  const nlohmann::json doc{{"query", kSentimentNode}, {"evidence", evidence}, {"posterior", dist}, {"label", label}};
  if (format_of(o) != Format::Json) {
    out << render(table, format_of(o));
    if (format_of(o) == Format::Table) out << "label: " << label << "\n";
  }
  emit_json(o, doc, out);
  return kOk;
}

InfluenceSettings influence_settings(const Options& o) {
  InfluenceSettings s;
  s.metric = parse_metric(o.metric);
  s.aggregation = parse_aggregation(o.agg);
  return s;
}

int cmd_influence(const Options& o, std::ostream& out) {
  const auto model = load_model(o.model);
  const auto report = influence_report(model.fitted.network, influence_settings(o));
  const auto doc = influence_to_json(report);
  if (format_of(o) == Format::Table) out << influence_to_table(report);
  else if (format_of(o) == Format::Csv) out << influence_to_csv(report);
  emit_json(o, doc, out);
  return kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto parsed = load(o.records);
  const auto cfg = config_from(o);
  const auto run = run_pipeline(cfg, parsed.records, ensemble_from(o, cfg.model_names));
  const auto stats = validate_dataset_stats(parsed.records);
  const auto influence = influence_report(run.fit.network, influence_settings(o));

  std::vector<Issue> issues = parsed.issues;
  for (const auto* list : {&run.fit.issues, &run.batch.issues, &run.sources.issues})
    issues.insert(issues.end(), list->begin(), list->end());

  const nlohmann::json doc{{"dataset", stats_to_json(stats)},
                           {"split", {{"seed", run.fit.manifest.seed},
                                      {"fraction", run.fit.manifest.fraction},
                                      {"train", run.fit.manifest.train_ids.size()},
                                      {"test", run.fit.manifest.test_ids.size()}}},
                           {"evaluation", evaluation_to_json(run.evaluation)},
                           {"influence", influence_to_json(influence)},
                           {"issues", issues_to_json(issues)}};
  const Format f = format_of(o);
  if (f != Format::Json) {
    out << (f == Format::Table ? "[dataset]\n" : "# dataset\n") << render(stats_table(stats), f) << "\n";
    print_evaluation(run.evaluation, f, out);
    out << (f == Format::Table ? "\n[influence]\n" : "\n# influence\n")
        << (f == Format::Table ? influence_to_table(influence) : influence_to_csv(influence));
    out << "\n" << issue_summary(issues) << "\n";
  }
  emit_json(o, doc, out);
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::Data: return kData;
    case ErrorClass::Model: return kModel;
    case ErrorClass::Internal: break;
  }
  return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian-network fusion of sentiment classifier predictions", "bnlf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  Options o;

  const std::vector<std::string> formats{"json", "csv", "table"};
  auto records = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--records", o.records, "Prediction records (JSONL, or .csv)");
    if (required) opt->required();
  };
  auto model = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--model", o.model, "Fitted model file");
    if (required) opt->required();
  };
  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  };
  auto out_opt = [&](CLI::App* c, const std::string& what, bool required) {
    auto* opt = c->add_option("--out", o.out, what);
    if (required) opt->required();
  };
  auto training = [&](CLI::App* c) {
    c->add_option("--models", o.models, "Comma-separated model names")->capture_default_str();
    c->add_option("--split", o.split, "Training fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c->add_option("--seed", o.seed, "Split seed")->capture_default_str();
    c->add_option("--alpha", o.alpha, "Additive smoothing pseudo-count")->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto influence_opts = [&](CLI::App* c) {
    c->add_option("--metric", o.metric, "Row distance")
        ->check(CLI::IsMember({"euclidean", "hellinger", "max_abs"}))
        ->capture_default_str();
    c->add_option("--agg", o.agg, "Aggregation over row pairs")
        ->check(CLI::IsMember({"average", "maximum"}))
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Parse records and print corpus statistics");
  records(validate, true);
  format(validate);
  out_opt(validate, "JSON summary with statistics and issues", false);

  auto* fit_cmd = app.add_subcommand("fit", "Split records and learn the fusion network");
  records(fit_cmd, true);
  training(fit_cmd);
  out_opt(fit_cmd, "Model file; the split manifest is written next to it", true);

  auto* predict = app.add_subcommand("predict", "Predict every record outside the model's training split");
  model(predict, true);
  records(predict, true);
  out_opt(predict, "Prediction JSONL (standard output when omitted)", false);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score every prediction source against the gold labels");
  records(evaluate_cmd, true);
  model(evaluate_cmd, false);
  evaluate_cmd->add_option("--models", o.models, "Models used by the majority and averaging baselines")
      ->capture_default_str();
  format(evaluate_cmd);
  out_opt(evaluate_cmd, "JSON report", false);

  auto* infer = app.add_subcommand("infer", "Posterior of Sentiment under fixed node states");
  model(infer, true);
  infer->add_option("--set", o.sets, "Evidence NODE=STATE (repeatable)");
  format(infer);
  out_opt(infer, "JSON posterior", false);

  auto* influence = app.add_subcommand("influence", "Strength of influence of every arc");
  model(influence, true);
  influence_opts(influence);
  format(influence);
  out_opt(influence, "JSON report", false);

  auto* report = app.add_subcommand("report", "Fit, predict, evaluate and analyse in one run");
  records(report, true);
  training(report);
  influence_opts(report);
  format(report);
  out_opt(report, "JSON report", false);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*fit_cmd) return cmd_fit(o, out);
    if (*predict) return cmd_predict(o, out, err);
    if (*evaluate_cmd) return cmd_evaluate(o, out);
    if (*infer) return cmd_infer(o, out);
    if (*influence) return cmd_influence(o, out);
    if (*report) return cmd_report(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace bnlf::cli
