#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "termrec/item_index.hpp"

namespace termrec {

struct WorkbookUser {
  std::vector<std::string> keywords;
  std::vector<ItemId> liked;
};

// A labeled evaluation unit: events plus, per user, keywords and the
// events that user picked as interesting.
struct LabeledWorkbook {
  std::vector<Item> events;
  std::vector<WorkbookUser> users;

  // liked ids must exist among events and be unique, with fewer liked
  // than events. Throws Error{InvalidArgument}.
  void validate() const;
};

LabeledWorkbook workbook_from_json(const nlohmann::json& j);
nlohmann::json workbook_to_json(const LabeledWorkbook& workbook);

// Accepts a single workbook document, a JSON array of them, or a sequence of
// concatenated / line-separated documents.
std::vector<LabeledWorkbook> read_workbooks(std::istream& in);
std::vector<LabeledWorkbook> load_workbooks_file(const std::string& path);

}  // namespace termrec
