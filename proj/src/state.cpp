#include "termrec/state.hpp"

#include <algorithm>
#include <fstream>

#include "termrec/error.hpp"
#include "termrec/item_json.hpp"

namespace termrec {

namespace fs = std::filesystem;

bool is_valid_user_id(std::string_view id) {
  if (id.empty() || id.size() > 128) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

nlohmann::json user_to_json(const StoredUser& user) {
  nlohmann::json entries = nlohmann::json::array();
  for (const ModelEntry& e : user.model.entries) entries.push_back({{"word", e.word}, {"weight", e.weight}});
  return {{"user_id", user.user_id},
          {"keywords", user.keywords},
          {"entries", std::move(entries)},
          {"updated_at", user.updated_at}};
}

StoredUser user_from_json(const nlohmann::json& j) {
  StoredUser user;
  user.user_id = j.at("user_id").get<std::string>();
  user.keywords = j.at("keywords").get<std::vector<std::string>>();
  for (const auto& e : j.at("entries")) {
    user.model.entries.push_back({e.at("word").get<std::string>(), e.at("weight").get<double>()});
  }
  user.updated_at = j.value("updated_at", std::int64_t{0});
  if (!is_valid_user_id(user.user_id)) throw invalid_argument("invalid user id '" + user.user_id + "'");
  return user;
}

nlohmann::json feedback_to_json(const FeedbackEvent& event) {
  return {{"user_id", event.user_id},
          {"item_id", event.record.item_id},
          {"label", to_string(event.record.label)},
          {"timestamp", event.record.timestamp}};
}

FeedbackEvent feedback_from_json(const nlohmann::json& j) {
  FeedbackEvent event;
  event.user_id = j.at("user_id").get<std::string>();
  event.record.item_id = j.at("item_id").get<std::string>();
  event.record.label = feedback_label_from_string(j.at("label").get<std::string>());
  event.record.timestamp = j.at("timestamp").get<std::int64_t>();
  return event;
}

namespace {

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename onto '" + path.string() + "': " + ec.message());
}

void append_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorKind::Io, "cannot append to '" + path.string() + "'");
  for (const std::string& line : lines) out << line << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed appending to '" + path.string() + "'");
}

Error corrupt(const fs::path& file, std::size_t line, const std::string& what) {
  std::string where = file.string();
  if (line > 0) where += " line " + std::to_string(line);
  return Error(ErrorKind::Corrupt, "corrupt state file " + where + ": " + what);
}

nlohmann::json read_document(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(path, 0, e.what());
  }
}

template <typename Fn>
void for_each_jsonl(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw corrupt(path, line_no, e.what());
    } catch (const Error& e) {
      throw corrupt(path, line_no, e.what());
    }
  }
}

}  // namespace

StateStore::StateStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_ / "users", ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create state directory '" + dir_.string() + "': " + ec.message());
}

void StateStore::write_config(const EngineConfig& config) const {
  write_atomically(dir_ / "config.json", nlohmann::json(config).dump(2) + "\n");
}

void StateStore::append_items(const std::vector<Item>& items) {
  std::vector<std::string> lines;
  for (const Item& item : items) lines.push_back(item_to_json(item).dump());
  const std::lock_guard lock(append_mutex_);
  append_lines(dir_ / "items.jsonl", lines);
}

void StateStore::append_feedback(const FeedbackEvent& event) {
  const std::string line = feedback_to_json(event).dump();
  const std::lock_guard lock(append_mutex_);
  append_lines(dir_ / "feedback.jsonl", {line});
}

void StateStore::write_user(const StoredUser& user) const {
  if (!is_valid_user_id(user.user_id)) throw invalid_argument("invalid user id '" + user.user_id + "'");
  write_atomically(dir_ / "users" / (user.user_id + ".json"), user_to_json(user).dump(2) + "\n");
}

void save_state(const fs::path& dir, const PersistentState& state) {
  StateStore store(dir);
  store.write_config(state.config);

  std::string items;
  for (const Item& item : state.items) items += item_to_json(item).dump() + "\n";
  write_atomically(dir / "items.jsonl", items);

  std::string feedback;
  for (const FeedbackEvent& event : state.feedback) feedback += feedback_to_json(event).dump() + "\n";
  write_atomically(dir / "feedback.jsonl", feedback);

  // Drop user documents that are not part of the state being written.
  for (const auto& entry : fs::directory_iterator(dir / "users")) {
    const std::string stem = entry.path().stem().string();
    if (entry.path().extension() == ".json" && !state.users.count(stem)) fs::remove(entry.path());
  }
  for (const auto& [id, user] : state.users) store.write_user(user);
}

PersistentState load_state(const fs::path& dir) {
  PersistentState state;
  if (!fs::exists(dir)) return state;

  if (const fs::path config = dir / "config.json"; fs::exists(config)) {
    try {
      state.config = read_document(config).get<EngineConfig>();
      state.config.validate();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Corrupt) throw;
      throw corrupt(config, 0, e.what());
    }
  }
  if (const fs::path items = dir / "items.jsonl"; fs::exists(items)) {
    for_each_jsonl(items, [&](const nlohmann::json& j) { state.items.push_back(item_from_json(j)); });
  }
  if (const fs::path feedback = dir / "feedback.jsonl"; fs::exists(feedback)) {
    for_each_jsonl(feedback, [&](const nlohmann::json& j) { state.feedback.push_back(feedback_from_json(j)); });
  }
  if (const fs::path users = dir / "users"; fs::exists(users)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(users)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      StoredUser user;
      try {
        user = user_from_json(read_document(file));
      } catch (const nlohmann::json::exception& e) {
        throw corrupt(file, 0, e.what());
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Corrupt) throw;
        throw corrupt(file, 0, e.what());
      }
      if (user.user_id != file.stem().string()) throw corrupt(file, 0, "user id does not match file name");
      state.users.emplace(user.user_id, std::move(user));
    }
  }
  return state;
}

}  // namespace termrec
