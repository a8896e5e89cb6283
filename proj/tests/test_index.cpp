#include <doctest.h>

#include <random>

#include "support.hpp"
#include "termrec/error.hpp"
#include "termrec/item_index.hpp"
#include "termrec/similarity.hpp"

using namespace termrec;
using namespace termrec::test;

TEST_CASE("smoothed idf") {
  CHECK(smoothed_idf(3, 1) == doctest::Approx(std::log(2.0) + 1.0));
  CHECK(smoothed_idf(3, 3) == doctest::Approx(1.0));
  CHECK(smoothed_idf(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("index statistics match the oracle") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    const auto items = random_items(rng, 12);
    const NormalizeOptions options{WordFormMode::Stemmed, true};
    const ItemIndex index = ItemIndex::build({3, options}, items);
    const OracleCorpus oracle(items, options);
    for (std::size_t j = 0; j < 3; ++j) {
      for (const auto& [term, df] : oracle.df[j]) {
        CHECK(index.df(j, term) == static_cast<std::uint32_t>(df));
        CHECK(index.idf(j, term) == doctest::Approx(oracle.idf(j, term)));
      }
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (const auto& [term, c] : oracle.counts[i][j]) {
          CHECK(index.tf(i, j, term) == static_cast<std::uint32_t>(c));
        }
      }
    }
    CHECK(index.df(0, "absent") == 0);
  }
}

TEST_CASE("binary components are zero or idf and frequency dominates") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 30; ++round) {
    const auto items = random_items(rng, 10);
    const ItemIndex index = ItemIndex::build({3, {WordFormMode::Stemmed, true}}, items);
    std::vector<std::string> words;
    for (const auto& w : toy_vocabulary()) {
      for (const auto& f : normalize_term(w, WordFormMode::Stemmed)) words.push_back(f);
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const auto binary = index.field_vector(i, j, words, TfMode::Binary);
        const auto freq = index.field_vector(i, j, words, TfMode::Frequency);
        for (std::size_t w = 0; w < words.size(); ++w) {
          const bool zero = binary[w] == 0.0;
          CHECK((zero || binary[w] == index.idf(j, words[w])));
          CHECK(freq[w] >= binary[w]);
          CHECK(zero == (index.tf(i, j, words[w]) == 0));
        }
      }
    }
  }
}

TEST_CASE("ingest validation") {
  ItemIndex index({2, {}});
  index.ingest({"a", {"x", "y"}, {}});
  CHECK_THROWS_AS(index.ingest({"a", {"x", "y"}, {}}), Error);
  CHECK_THROWS_AS(index.ingest({"b", {"x"}, {}}), Error);
  CHECK_THROWS_AS(index.ingest({"", {"x", "y"}, {}}), Error);
  CHECK(index.item_count() == 1);
  CHECK_THROWS_AS(ItemIndex({0, {}}), Error);
  CHECK_THROWS_AS(index.df(2, "x"), Error);
}

TEST_CASE("build equals ordered ingestion") {
  std::mt19937_64 rng(3);
  const auto items = random_items(rng, 8);
  ItemIndex incremental;
  for (const auto& item : items) incremental.ingest(item);
  CHECK(incremental == ItemIndex::build({}, items));
}

TEST_CASE("item feature vector is the weighted field sum") {
  const auto& rows = table5_tfidf();
  const auto& expected = table6_vectors();
  const std::vector<double> weights{1.0, 0.8, 1.2};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto s = item_feature_vector(rows[i], weights);
    for (std::size_t w = 0; w < s.size(); ++w) CHECK(s[w] == doctest::Approx(expected[i][w]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(item_feature_vector(rows[0], std::vector<double>{1.0}), Error);
}

TEST_CASE("similarity measures") {
  const std::vector<double> a{1, 2, 2}, b{2, 0, 0}, z{0, 0, 0};
  CHECK(similarity_value(a, b, SimilarityMeasure::Cosine) == doctest::Approx(2.0 / 6.0));
  CHECK(similarity_value(a, b, SimilarityMeasure::DotProduct) == 2.0);
  CHECK(similarity_value(a, b, SimilarityMeasure::Euclidean) == doctest::Approx(-3.0));
  CHECK(similarity_value(a, b, SimilarityMeasure::Manhattan) == -5.0);
  CHECK(similarity_value(a, a, SimilarityMeasure::Cosine) == 1.0);
  const SimilarityResult zero = similarity(a, z, SimilarityMeasure::Cosine);
  CHECK(zero.value == 0.0);
  CHECK(zero.zero_vector);
  CHECK_THROWS_AS(similarity(a, std::vector<double>{1.0}, SimilarityMeasure::DotProduct), Error);
  for (auto m : {SimilarityMeasure::Cosine, SimilarityMeasure::DotProduct,
                 SimilarityMeasure::Euclidean, SimilarityMeasure::Manhattan}) {
    CHECK(similarity_from_string(to_string(m)) == m);
  }
}
