#include "termrec/lemmatizer.hpp"

#include <fstream>
#include <sstream>

#include "termrec/error.hpp"
#include "termrec/text_normalize.hpp"

namespace termrec {

namespace detail {
extern const char* const kBuiltinLemmaTsv;
}

Lemmatizer Lemmatizer::from_stream(std::istream& in) {
  Lemmatizer lemmatizer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(ErrorKind::Parse,
                  "lemma dictionary line " + std::to_string(line_no) +
                      ": expected 'inflected<TAB>lemma'");
    }
    lemmatizer.add(to_lower(line.substr(0, tab)), to_lower(line.substr(tab + 1)));
  }
  return lemmatizer;
}

Lemmatizer Lemmatizer::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open lemma dictionary '" + path + "'");
  return from_stream(in);
}

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer instance = [] {
    std::istringstream in(detail::kBuiltinLemmaTsv);
    return from_stream(in);
  }();
  return instance;
}

std::string Lemmatizer::lemmatize(std::string_view word) const {
  const auto it = table_.find(std::string(word));
  return it == table_.end() ? std::string(word) : it->second;
}

void Lemmatizer::add(std::string inflected, std::string lemma) {
  table_.insert_or_assign(std::move(inflected), std::move(lemma));
}

}  // namespace termrec
