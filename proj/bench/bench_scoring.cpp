// Serial vs OpenMP scoring and embedding-scan kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "termrec/embedding_store.hpp"
#include "termrec/recommender.hpp"

namespace {

using namespace termrec;

std::string random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letters(0, 7);
  std::string w = "w";
  for (int i = 0; i < 3; ++i) w.push_back(static_cast<char>('a' + letters(rng)));
  return w;
}

struct Corpus {
  ItemIndex index;
  RefinedModel model;
};

Corpus make_corpus(std::size_t items) {
  std::mt19937_64 rng(7);
  std::vector<Item> list;
  for (std::size_t i = 0; i < items; ++i) {
    Item item;
    item.id = "i" + std::to_string(i);
    for (int f = 0; f < 3; ++f) {
      std::string text;
      for (int t = 0; t < 12; ++t) text += random_word(rng) + " ";
      item.fields.push_back(text);
    }
    list.push_back(std::move(item));
  }
  Corpus c{ItemIndex::build(IndexOptions{3, NormalizeOptions{WordFormMode::Original, false}}, list), {}};
  for (int s = 0; s < 40; ++s) {
    c.model.words.push_back(random_word(rng));
    c.model.weights.push_back(1.0 + s % 3);
  }
  return c;
}

void run_scoring(benchmark::State& state, Execution exec) {
  const Corpus c = make_corpus(static_cast<std::size_t>(state.range(0)));
  EngineConfig config;
  config.word_form = WordFormMode::Original;
  config.trim_suffix = false;
  for (auto _ : state) benchmark::DoNotOptimize(score_items(c.model, c.index, config, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreSerial(benchmark::State& s) { run_scoring(s, Execution::Serial); }
void BM_ScoreOmp(benchmark::State& s) { run_scoring(s, Execution::Parallel); }
BENCHMARK(BM_ScoreSerial)->Arg(1000)->Arg(20000);
BENCHMARK(BM_ScoreOmp)->Arg(1000)->Arg(20000);

void BM_NearSynonyms(benchmark::State& state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 50;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<std::string> words;
  std::vector<double> values;
  for (std::size_t r = 0; r < rows; ++r) {
    words.push_back("w" + std::to_string(r));
    for (std::size_t d = 0; d < dim; ++d) values.push_back(g(rng));
  }
  const EmbeddingStore store(std::move(words), std::move(values), dim);
  for (auto _ : state) benchmark::DoNotOptimize(store.near_synonyms("w0", 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NearSynonyms)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
