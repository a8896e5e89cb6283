#include "termrec/text_normalize.hpp"

#include <algorithm>

#include "termrec/error.hpp"
#include "termrec/lemmatizer.hpp"

namespace termrec {

const char* to_string(WordFormMode mode) {
  switch (mode) {
    case WordFormMode::Original: return "original";
    case WordFormMode::Stemmed: return "stemmed";
    case WordFormMode::Lemmatized: return "lemmatized";
    case WordFormMode::UnionStemLemma: return "union";
  }
  return "unknown";
}

WordFormMode word_form_from_string(std::string_view name) {
  if (name == "original") return WordFormMode::Original;
  if (name == "stemmed") return WordFormMode::Stemmed;
  if (name == "lemmatized") return WordFormMode::Lemmatized;
  if (name == "union") return WordFormMode::UnionStemLemma;
  throw invalid_argument("unknown word form mode '" + std::string(name) + "'");
}

namespace {

constexpr bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::string to_lower(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char c : text) {
    if (is_alpha(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string trim_suffix(std::string_view word, WordFormMode mode) {
  if (word.empty()) return std::string(word);
  const char last = word.back();
  const bool drop = (mode == WordFormMode::Stemmed && last == 'i') ||
                    (mode == WordFormMode::Lemmatized && (last == 'e' || last == 'y'));
  return std::string(drop ? word.substr(0, word.size() - 1) : word);
}

std::vector<std::string> normalize_term(std::string_view word,
                                        const NormalizeOptions& options) {
  return normalize_term(word, options, Lemmatizer::builtin());
}

std::vector<std::string> normalize_term(std::string_view word,
                                        const NormalizeOptions& options,
                                        const Lemmatizer& lemmatizer) {
  std::vector<std::string> forms;
  const std::string lowered = to_lower(word);
  if (lowered.empty()) return forms;

  auto push = [&forms](std::string form) {
    if (form.size() < kMinTermLength) return;
    if (std::find(forms.begin(), forms.end(), form) != forms.end()) return;
    forms.push_back(std::move(form));
  };
  auto stem_branch = [&] {
    std::string s = porter_stem(lowered);
    return options.trim_suffix ? trim_suffix(s, WordFormMode::Stemmed) : s;
  };
  auto lemma_branch = [&] {
    std::string l = lemmatizer.lemmatize(lowered);
    return options.trim_suffix ? trim_suffix(l, WordFormMode::Lemmatized) : l;
  };

  switch (options.mode) {
    case WordFormMode::Original:
      push(lowered);
      break;
    case WordFormMode::Stemmed:
      push(stem_branch());
      break;
    case WordFormMode::Lemmatized:
      push(lemma_branch());
      break;
    case WordFormMode::UnionStemLemma:
      push(stem_branch());
      push(lemma_branch());
      break;
  }
  return forms;
}

}  // namespace termrec
