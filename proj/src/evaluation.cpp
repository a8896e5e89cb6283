#include "termrec/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "termrec/error.hpp"
#include "termrec/user_model.hpp"

namespace termrec {

MetricReport evaluate(std::span<const ItemId> recommended, const std::set<ItemId>& liked,
                      std::size_t total) {
  const std::size_t n = recommended.size();
  if (n == 0) throw invalid_argument("evaluate: no recommendations (N = 0)");
  if (n > total) throw invalid_argument("evaluate: more recommendations than items");
  if (liked.size() > total) throw invalid_argument("evaluate: more liked items than items");
  const std::set<ItemId> unique(recommended.begin(), recommended.end());
  if (unique.size() != n) throw invalid_argument("evaluate: duplicate recommended item");

  std::size_t tp = 0;
  for (const ItemId& id : unique) tp += liked.count(id);
  // Items neither recommended nor liked.
  const std::size_t tn = total - n - liked.size() + tp;

  MetricReport report;
  report.precision = static_cast<double>(tp) / static_cast<double>(n);
  report.accuracy = static_cast<double>(tp + tn) / static_cast<double>(total);
  report.users = 1;
  return report;
}

const char* to_string(EvaluationMethod method) {
  switch (method) {
    case EvaluationMethod::Engine: return "engine";
    case EvaluationMethod::FullVocabTfidf: return "tfidf";
    case EvaluationMethod::EmbeddingSum: return "embedding_sum";
  }
  return "unknown";
}

EvaluationMethod evaluation_method_from_string(std::string_view name) {
  if (name == "engine") return EvaluationMethod::Engine;
  if (name == "tfidf") return EvaluationMethod::FullVocabTfidf;
  if (name == "embedding_sum") return EvaluationMethod::EmbeddingSum;
  throw invalid_argument("unknown evaluation method '" + std::string(name) + "'");
}

namespace {

void run_workbook(const LabeledWorkbook& workbook, const EvaluationRun& run,
                  const EvaluationResources& resources, double& precision_sum,
                  double& accuracy_sum, std::size_t& users) {
  const EngineConfig& config = run.config;
  const ItemIndex index =
      ItemIndex::build({config.field_count, config.normalize_options()}, workbook.events);

  if (run.train_events >= workbook.events.size()) {
    throw invalid_argument("train_events leaves no events to evaluate");
  }
  std::unordered_set<ItemId> held_out;
  for (std::size_t e = 0; e < run.train_events; ++e) held_out.insert(workbook.events[e].id);
  const std::size_t eval_total = workbook.events.size() - held_out.size();

  const SynonymTable no_synonyms;
  const SynonymSource& synonyms = resources.synonyms ? *resources.synonyms : no_synonyms;

  std::vector<UserModel> initial;
  if (run.method == EvaluationMethod::Engine) {
    for (const WorkbookUser& user : workbook.users) {
      initial.push_back(create_initial_model(user.keywords, config.synonyms_per_keyword,
                                             config.keyword_weight, synonyms)
                            .model);
    }
  }

  for (std::size_t u = 0; u < workbook.users.size(); ++u) {
    const WorkbookUser& user = workbook.users[u];
    std::set<ItemId> liked;
    for (const ItemId& id : user.liked) {
      if (!held_out.count(id)) liked.insert(id);
    }
    if (liked.empty()) continue;
    const std::size_t top_n = std::min(run.top_n.value_or(liked.size()), eval_total);

    std::vector<ItemId> recommended;
    switch (run.method) {
      case EvaluationMethod::Engine: {
        UserModel model = initial[u];
        if (run.apply_feedback && !held_out.empty()) {
          std::set<std::string> foreign;
          for (std::size_t other = 0; other < initial.size(); ++other) {
            if (other == u) continue;
            for (const ModelEntry& entry : initial[other].entries) foreign.insert(entry.word);
          }
          model = update_model_words(std::move(model), foreign);
          const std::set<ItemId> all_liked(user.liked.begin(), user.liked.end());
          std::vector<FeedbackRecord> history;
          for (std::size_t e = 0; e < run.train_events; ++e) {
            const ItemId& id = workbook.events[e].id;
            history.push_back({id,
                               all_liked.count(id) ? FeedbackLabel::Positive
                                                   : FeedbackLabel::Negative,
                               static_cast<std::int64_t>(e)});
          }
          model = update_model_weights(std::move(model), history, config.learning_rate, index,
                                       config);
        }
        const RefinedModel refined = refine_model(model, config.normalize_options());
        for (const Recommendation& r : recommend_top_n(refined, index, config, top_n, held_out)) {
          recommended.push_back(r.item_id);
        }
        break;
      }
      case EvaluationMethod::FullVocabTfidf:
        recommended = baseline_fullvocab_tfidf(user.keywords, index, top_n, held_out);
        break;
      case EvaluationMethod::EmbeddingSum:
        if (!resources.embeddings) throw invalid_argument("embedding_sum needs an embedding store");
        recommended =
            baseline_embedding_sum(user.keywords, workbook.events, *resources.embeddings, top_n,
                                   held_out);
        break;
    }
    const MetricReport m = evaluate(recommended, liked, eval_total);
    precision_sum += m.precision;
    accuracy_sum += m.accuracy;
    ++users;
  }
}

}  // namespace

std::vector<MetricReport> run_ablation(std::span<const LabeledWorkbook> workbooks,
                                       std::span<const EvaluationRun> grid,
                                       const EvaluationResources& resources) {
  if (grid.empty()) throw invalid_argument("ablation grid is empty");
  std::vector<MetricReport> reports;
  for (const EvaluationRun& run : grid) {
    MetricReport report;
    report.config_label = run.label;
    try {
      run.config.validate();
      double precision_sum = 0.0, accuracy_sum = 0.0;
      std::size_t users = 0;
      for (const LabeledWorkbook& workbook : workbooks) {
        run_workbook(workbook, run, resources, precision_sum, accuracy_sum, users);
      }
      if (users == 0) throw invalid_argument("no user could be evaluated");
      report.precision = precision_sum / static_cast<double>(users);
      report.accuracy = accuracy_sum / static_cast<double>(users);
      report.users = users;
    } catch (const std::exception& e) {
      report.precision = 0.0;
      report.accuracy = 0.0;
      report.users = 0;
      report.error = e.what();
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<TableReport> run_tables(std::span<const LabeledWorkbook> workbooks,
                                    std::span<const AblationTable> tables,
                                    const EvaluationResources& resources) {
  std::vector<TableReport> out;
  for (const AblationTable& table : tables) {
    out.push_back({table.title, run_ablation(workbooks, table.rows, resources)});
  }
  return out;
}

std::vector<AblationTable> grid_from_json(const nlohmann::json& j, const EngineConfig& defaults) {
  if (!j.is_object() || !j.contains("tables")) {
    throw invalid_argument("grid document needs a 'tables' array");
  }
  EngineConfig base = defaults;
  if (j.contains("base")) from_json(j.at("base"), base);

  std::vector<AblationTable> tables;
  try {
    for (const auto& t : j.at("tables")) {
      AblationTable table;
      table.title = t.value("title", std::string());
      for (const auto& r : t.at("rows")) {
        EvaluationRun run;
        run.label = r.at("label").get<std::string>();
        run.config = base;
        if (r.contains("config")) from_json(r.at("config"), run.config);
        if (r.contains("method")) {
          run.method = evaluation_method_from_string(r.at("method").get<std::string>());
        }
        run.train_events = r.value("train_events", std::size_t{0});
        run.apply_feedback = r.value("apply_feedback", false);
        if (r.contains("N")) run.top_n = r.at("N").get<std::size_t>();
        table.rows.push_back(std::move(run));
      }
      if (table.rows.empty()) throw invalid_argument("grid table '" + table.title + "' has no rows");
      tables.push_back(std::move(table));
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("grid: ") + e.what());
  }
  if (tables.empty()) throw invalid_argument("grid has no tables");
  return tables;
}

std::vector<AblationTable> load_grid_file(const std::string& path, const EngineConfig& defaults) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open grid file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "grid file '" + path + "': " + e.what());
  }
  return grid_from_json(j, defaults);
}

namespace {

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Display width in code points; labels may carry UTF-8 punctuation.
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

}  // namespace

std::string format_table(const TableReport& table) {
  std::size_t width = std::string("Method").size();
  for (const MetricReport& row : table.rows) width = std::max(width, display_width(row.config_label));

  std::ostringstream out;
  if (!table.title.empty()) out << table.title << '\n';
  auto pad = [width](const std::string& s) { return s + std::string(width - display_width(s) + 2, ' '); };
  out << pad("Method") << "Precision  Accuracy\n";
  out << std::string(width + 2 + 19, '-') << '\n';
  for (const MetricReport& row : table.rows) {
    out << pad(row.config_label);
    if (row.error) {
      out << "error: " << *row.error << '\n';
    } else {
      out << fixed(row.precision, 3) << "      " << fixed(row.accuracy, 3) << '\n';
    }
  }
  return out.str();
}

std::string format_machine_lines(const TableReport& table) {
  std::ostringstream out;
  for (const MetricReport& row : table.rows) {
    out << row.config_label << '\t';
    if (row.error) {
      out << "nan\tnan\n";
    } else {
      out << fixed(row.precision, 6) << '\t' << fixed(row.accuracy, 6) << '\n';
    }
  }
  return out.str();
}

}  // namespace termrec
