#include "termrec/workbook.hpp"

#include <fstream>
#include <istream>
#include <set>

#include "termrec/error.hpp"
#include "termrec/item_json.hpp"

namespace termrec {

void LabeledWorkbook::validate() const {
  std::set<ItemId> ids;
  for (const Item& event : events) {
    if (!ids.insert(event.id).second) throw invalid_argument("workbook: duplicate event '" + event.id + "'");
  }
  for (std::size_t u = 0; u < users.size(); ++u) {
    const WorkbookUser& user = users[u];
    const std::string who = "workbook user " + std::to_string(u);
    if (user.keywords.empty()) throw invalid_argument(who + " has no keywords");
    if (user.liked.empty()) throw invalid_argument(who + " liked no events");
    std::set<ItemId> liked;
    for (const ItemId& id : user.liked) {
      if (!ids.count(id)) throw invalid_argument(who + " liked unknown event '" + id + "'");
      if (!liked.insert(id).second) throw invalid_argument(who + " liked '" + id + "' twice");
    }
    if (liked.size() >= events.size()) {
      throw invalid_argument(who + " must like fewer events than the workbook holds");
    }
  }
}

LabeledWorkbook workbook_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw invalid_argument("workbook must be a JSON object");
  LabeledWorkbook workbook;
  try {
    for (const auto& e : j.at("events")) workbook.events.push_back(item_from_json(e));
    for (const auto& u : j.at("users")) {
      WorkbookUser user;
      user.keywords = u.at("keywords").get<std::vector<std::string>>();
      for (const auto& id : u.at("liked")) {
        user.liked.push_back(id.is_string() ? id.get<std::string>()
                                            : std::to_string(id.get<long long>()));
      }
      workbook.users.push_back(std::move(user));
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("workbook: ") + e.what());
  }
  workbook.validate();
  return workbook;
}

nlohmann::json workbook_to_json(const LabeledWorkbook& workbook) {
  nlohmann::json j;
  j["events"] = nlohmann::json::array();
  for (const Item& e : workbook.events) j["events"].push_back(item_to_json(e));
  j["users"] = nlohmann::json::array();
  for (const WorkbookUser& u : workbook.users) {
    j["users"].push_back({{"keywords", u.keywords}, {"liked", u.liked}});
  }
  return j;
}

std::vector<LabeledWorkbook> read_workbooks(std::istream& in) {
  std::vector<LabeledWorkbook> workbooks;
  while ((in >> std::ws) && in.peek() != std::char_traits<char>::eof()) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("workbook file: ") + e.what());
    }
    if (doc.is_array()) {
      for (const auto& w : doc) workbooks.push_back(workbook_from_json(w));
    } else {
      workbooks.push_back(workbook_from_json(doc));
    }
  }
  if (workbooks.empty()) throw invalid_argument("workbook file holds no workbooks");
  return workbooks;
}

std::vector<LabeledWorkbook> load_workbooks_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open workbook file '" + path + "'");
  return read_workbooks(in);
}

}  // namespace termrec
