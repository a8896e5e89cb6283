#include "termrec/item_json.hpp"

#include <fstream>

#include "termrec/error.hpp"

namespace termrec {

Item item_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw invalid_argument("item document must be a JSON object");
  Item item;
  const auto id = j.find("item_id");
  if (id == j.end()) throw invalid_argument("item document lacks 'item_id'");
  if (id->is_string()) {
    item.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    item.id = std::to_string(id->get<long long>());
  } else {
    throw invalid_argument("'item_id' must be a string or an integer");
  }
  const auto fields = j.find("fields");
  if (fields == j.end() || !fields->is_array()) {
    throw invalid_argument("item '" + item.id + "' lacks a 'fields' array");
  }
  for (const auto& f : *fields) {
    if (!f.is_string()) throw invalid_argument("item '" + item.id + "': fields must be strings");
    item.fields.push_back(f.get<std::string>());
  }
  if (const auto meta = j.find("metadata"); meta != j.end() && !meta->is_null()) {
    if (!meta->is_object()) throw invalid_argument("item '" + item.id + "': metadata must be an object");
    for (const auto& [key, value] : meta->items()) {
      item.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return item;
}

nlohmann::json item_to_json(const Item& item) {
  nlohmann::json j{{"item_id", item.id}, {"fields", item.fields}};
  j["metadata"] = nlohmann::json::object();
  for (const auto& [key, value] : item.metadata) j["metadata"][key] = value;
  return j;
}

std::vector<Item> read_items_jsonl(std::istream& in, const std::string& source_name) {
  std::vector<Item> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      items.push_back(item_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Corrupt,
                  source_name + " line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::Corrupt,
                  source_name + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return items;
}

std::vector<Item> load_items_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open items file '" + path + "'");
  return read_items_jsonl(in, path);
}

}  // namespace termrec
