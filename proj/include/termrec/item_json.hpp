#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "termrec/item_index.hpp"

namespace termrec {

// {"item_id": ..., "fields": [...], "metadata": {...}}; numeric ids are
// accepted and stored as their decimal string.
Item item_from_json(const nlohmann::json& j);
nlohmann::json item_to_json(const Item& item);

// One item document per line; blank lines are skipped. Errors name the line.
std::vector<Item> read_items_jsonl(std::istream& in, const std::string& source_name);
std::vector<Item> load_items_file(const std::string& path);

}  // namespace termrec
