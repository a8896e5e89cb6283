#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace termrec {

// Dictionary lemmatizer: inflected form -> lemma, identity fallback.
// Dictionary format is one `inflected<TAB>lemma` pair per line; blank lines
// and lines starting with '#' are ignored.
class Lemmatizer {
 public:
  Lemmatizer() = default;

  static Lemmatizer from_stream(std::istream& in);
  static Lemmatizer from_file(const std::string& path);

  // Shared instance built from the dictionary compiled into the library.
  static const Lemmatizer& builtin();

  std::string lemmatize(std::string_view word) const;

  void add(std::string inflected, std::string lemma);
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, std::string> table_;
};

inline std::string lemmatize(std::string_view word) {
  return Lemmatizer::builtin().lemmatize(word);
}

}  // namespace termrec
