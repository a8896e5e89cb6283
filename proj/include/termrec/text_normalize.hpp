#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace termrec {

class Lemmatizer;

enum class WordFormMode {
  Original,
  Stemmed,
  Lemmatized,
  UnionStemLemma,
};

const char* to_string(WordFormMode mode);
WordFormMode word_form_from_string(std::string_view name);

// Words shorter than this are dropped after stemming/lemmatizing.
inline constexpr std::size_t kMinTermLength = 3;

struct NormalizeOptions {
  WordFormMode mode = WordFormMode::Stemmed;
  // Drop a trailing 'i' after stemming, or a trailing 'e'/'y' after
  // lemmatizing. Never applied in Original mode.
  bool trim_suffix = true;
};

// Lowercases ASCII letters and splits on every non-alphabetic byte.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view word);

// Porter (1980) stemmer, steps 1 through 5 in a single pass. Input must be
// lowercase; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

// Single, non-recursive removal of the last letter. Stemmed: trailing 'i'.
// Lemmatized: trailing 'e' or 'y'. Other modes return the word unchanged.
std::string trim_suffix(std::string_view word, WordFormMode mode);

// Normalized forms of one word. Empty when every form falls under the
// length filter; UnionStemLemma yields up to two distinct forms (stem first).
// Uses the builtin lemma dictionary unless one is supplied.
std::vector<std::string> normalize_term(std::string_view word,
                                        const NormalizeOptions& options);
std::vector<std::string> normalize_term(std::string_view word,
                                        const NormalizeOptions& options,
                                        const Lemmatizer& lemmatizer);
inline std::vector<std::string> normalize_term(std::string_view word,
                                               WordFormMode mode) {
  return normalize_term(word, NormalizeOptions{mode, true});
}

}  // namespace termrec
