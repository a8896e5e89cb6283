// termrec: command-line front end for the recommender.
//
//   termrec ingest <items-file>
//   termrec expand <keyword> [-s S]
//   termrec user <keyword>...
//   termrec model <user-id>
//   termrec recommend <user-id> [-n N] [--include-rated]
//   termrec feedback <user-id> <item-id> <pos|neg>
//   termrec evaluate <workbook-file> [--grid <grid-file>] [--machine]
//   termrec serve [--port P] [--state-dir D]
//   termrec synth [--seed S] [--embeddings-out F] [--workbook-out F]

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "termrec/engine.hpp"
#include "termrec/error.hpp"
#include "termrec/evaluation.hpp"
#include "termrec/http_service.hpp"
#include "termrec/item_json.hpp"
#include "termrec/synthetic.hpp"
#include "termrec/workbook.hpp"

namespace {

using namespace termrec;

struct GlobalOptions {
  std::string state_dir = "state";
  std::string config_file;
  std::string embeddings;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return (value && *value) ? value : fallback;
}

// Persisted config, then --config overrides, then EMBEDDINGS_PATH, then
// --embeddings.
EngineConfig resolve_config(const GlobalOptions& g, const EngineConfig& persisted) {
  EngineConfig config = persisted;
  if (!g.config_file.empty()) {
    std::ifstream in(g.config_file);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + g.config_file + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, "config file '" + g.config_file + "': " + e.what());
    }
    from_json(j, config);
  }
  config.embedding_path = env_or("EMBEDDINGS_PATH", config.embedding_path);
  if (!g.embeddings.empty()) config.embedding_path = g.embeddings;
  config.validate();
  return config;
}

std::unique_ptr<Engine> open_engine(const GlobalOptions& g) {
  PersistentState state = load_state(g.state_dir);
  state.config = resolve_config(g, state.config);
  auto synonyms = load_synonyms(state.config);
  return std::make_unique<Engine>(std::move(state), std::move(synonyms), g.state_dir);
}

void print_entries(const std::vector<ModelEntry>& entries) {
  for (const ModelEntry& e : entries) std::printf("%-20s %8.4f\n", e.word.c_str(), e.weight);
}

HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword-expansion content recommender"};
  app.require_subcommand(1);

  GlobalOptions g;
  g.state_dir = env_or("STATE_DIR", g.state_dir);
  app.add_option("--state-dir", g.state_dir, "State directory (env STATE_DIR)");
  app.add_option("--config", g.config_file, "JSON config document overriding stored config");
  app.add_option("--embeddings", g.embeddings, "Embedding file (env EMBEDDINGS_PATH)");

  std::string items_file;
  auto* ingest = app.add_subcommand("ingest", "Add items from a JSON-lines file");
  ingest->add_option("items-file", items_file)->required();

  std::string keyword;
  std::size_t synonym_count = 0;
  auto* expand = app.add_subcommand("expand", "Show the near-synonyms of a keyword");
  expand->add_option("keyword", keyword)->required();
  expand->add_option("-s", synonym_count, "Number of near-synonyms (default: config S)");

  std::vector<std::string> keywords;
  auto* user = app.add_subcommand("user", "Create a user from interest keywords");
  user->add_option("keywords", keywords)->required();

  std::string user_id;
  auto* model = app.add_subcommand("model", "Print a user's model");
  model->add_option("user-id", user_id)->required();

  std::size_t top_n = 0;
  bool include_rated = false;
  auto* recommend = app.add_subcommand("recommend", "Top-N items for a user");
  recommend->add_option("user-id", user_id)->required();
  recommend->add_option("-n", top_n, "Number of items (default: config N)");
  recommend->add_flag("--include-rated", include_rated, "Keep already rated items");

  std::string item_id, label;
  auto* feedback = app.add_subcommand("feedback", "Rate an item and update the user model");
  feedback->add_option("user-id", user_id)->required();
  feedback->add_option("item-id", item_id)->required();
  feedback->add_option("label", label)->required()->check(CLI::IsMember({"pos", "neg", "positive", "negative"}));

  std::string workbook_file, grid_file;
  bool machine = false;
  std::size_t eval_n = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Precision/accuracy over labeled workbooks");
  evaluate->add_option("workbook-file", workbook_file)->required();
  evaluate->add_option("--grid", grid_file, "Ablation grid document");
  evaluate->add_option("--top-n", eval_n, "Recommendations per user (default: liked count)");
  evaluate->add_flag("--machine", machine, "Emit label<TAB>precision<TAB>accuracy lines");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Listen port");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--state-dir", g.state_dir, "State directory (env STATE_DIR)");

  SyntheticOptions synth_options;
  std::string embeddings_out = "toy_glove.txt", workbook_out = "synthetic.json";
  auto* synth = app.add_subcommand("synth", "Write the seeded synthetic embeddings and workbooks");
  synth->add_option("--seed", synth_options.seed);
  synth->add_option("--embeddings-out", embeddings_out);
  synth->add_option("--workbook-out", workbook_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      auto engine = open_engine(g);
      auto items = load_items_file(items_file);
      const std::size_t count = items.size();
      engine->add_items(std::move(items));
      std::printf("ingested %zu items (%zu total)\n", count, engine->items().size());
    } else if (*expand) {
      const EngineConfig config = resolve_config(g, load_state(g.state_dir).config);
      if (config.embedding_path.empty()) {
        throw invalid_argument("no embedding file configured (--embeddings or EMBEDDINGS_PATH)");
      }
      const EmbeddingStore store = EmbeddingStore::load_file(config.embedding_path);
      const std::size_t s = synonym_count ? synonym_count : config.synonyms_per_keyword;
      const SynonymLookup lookup = store.near_synonyms(to_lower(keyword), s);
      if (lookup.out_of_vocabulary) {
        std::fprintf(stderr, "warning: '%s' is not in the embedding vocabulary\n", keyword.c_str());
      }
      for (const NearSynonym& syn : lookup.synonyms) std::printf("%s\t%.4f\n", syn.word.c_str(), syn.weight);
    } else if (*user) {
      auto engine = open_engine(g);
      const CreatedUser created = engine->create_user(keywords);
      std::printf("user_id %s\n", created.user_id.c_str());
      for (const std::string& k : created.unexpanded_keywords) {
        std::fprintf(stderr, "warning: no near-synonyms for '%s'\n", k.c_str());
      }
      print_entries(created.model.entries);
    } else if (*model) {
      auto engine = open_engine(g);
      print_entries(engine->user_model(user_id).entries);
    } else if (*recommend) {
      auto engine = open_engine(g);
      std::optional<std::size_t> n;
      if (top_n) n = top_n;
      for (const RecommendedItem& r : engine->recommend(user_id, n, include_rated)) {
        std::printf("%s\t%.6f\t%s\n", r.item.id.c_str(), r.score,
                    r.item.fields.empty() ? "" : r.item.fields.front().c_str());
      }
    } else if (*feedback) {
      auto engine = open_engine(g);
      const UserModel updated = engine->submit_feedback(user_id, item_id, feedback_label_from_string(label));
      print_entries(summarize(updated).top);
    } else if (*evaluate) {
      EngineConfig defaults = resolve_config(g, EngineConfig{});
      const auto workbooks = load_workbooks_file(workbook_file);
      std::vector<AblationTable> tables;
      if (grid_file.empty()) {
        EvaluationRun run;
        run.label = "Our method";
        run.config = defaults;
        tables.push_back({"", {run}});
      } else {
        tables = load_grid_file(grid_file, defaults);
      }
      if (eval_n) {
        for (auto& t : tables) {
          for (auto& r : t.rows) r.top_n = eval_n;
        }
      }
      std::unique_ptr<EmbeddingStore> store;
      if (!defaults.embedding_path.empty()) {
        store = std::make_unique<EmbeddingStore>(EmbeddingStore::load_file(defaults.embedding_path));
      }
      const EvaluationResources resources{store.get(), store.get()};
      const auto reports = run_tables(workbooks, tables, resources);
      for (const TableReport& report : reports) {
        std::cout << (machine ? format_machine_lines(report) : format_table(report) + "\n");
      }
    } else if (*serve) {
      auto engine = open_engine(g);
      HttpService service(*engine);
      if (service.bind(host, port) < 0) throw Error(ErrorKind::Io, "cannot bind " + host + ":" + std::to_string(port));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::printf("listening on http://%s:%d (state: %s)\n", host.c_str(), port, g.state_dir.c_str());
      std::fflush(stdout);
      service.listen_after_bind();
      g_service = nullptr;
    } else if (*synth) {
      const SyntheticCorpus corpus = generate_synthetic(synth_options);
      std::ofstream emb(embeddings_out);
      write_embeddings(emb, corpus);
      std::ofstream wb(workbook_out);
      nlohmann::json docs = nlohmann::json::array();
      for (const auto& w : corpus.workbooks) docs.push_back(workbook_to_json(w));
      wb << docs.dump(1) << '\n';
      std::printf("wrote %s (%zu words) and %s (%zu workbooks)\n", embeddings_out.c_str(),
                  corpus.words.size(), workbook_out.c_str(), corpus.workbooks.size());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
