#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "termrec/config.hpp"
#include "termrec/item_index.hpp"
#include "termrec/user_model.hpp"

namespace termrec {

struct StoredUser {
  std::string user_id;
  std::vector<std::string> keywords;
  UserModel model;
  std::int64_t updated_at = 0;

  bool operator==(const StoredUser&) const = default;
};

struct FeedbackEvent {
  std::string user_id;
  FeedbackRecord record;

  bool operator==(const FeedbackEvent&) const = default;
};

struct PersistentState {
  EngineConfig config;
  std::vector<Item> items;                   // ingestion order
  std::map<std::string, StoredUser> users;   // by user id
  std::vector<FeedbackEvent> feedback;       // append order

  bool operator==(const PersistentState&) const = default;
};

nlohmann::json user_to_json(const StoredUser& user);
StoredUser user_from_json(const nlohmann::json& j);
nlohmann::json feedback_to_json(const FeedbackEvent& event);
FeedbackEvent feedback_from_json(const nlohmann::json& j);

// User ids become file names, so only [A-Za-z0-9_-] is accepted.
bool is_valid_user_id(std::string_view id);

// On-disk layout of a state directory:
//   config.json       EngineConfig document
//   items.jsonl       append-only item documents
//   feedback.jsonl    append-only feedback records
//   users/<id>.json   one user-model document per user
// Whole-document writes go through a temporary file and a rename.
class StateStore {
 public:
  explicit StateStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  void write_config(const EngineConfig& config) const;
  void append_items(const std::vector<Item>& items);
  void append_feedback(const FeedbackEvent& event);
  void write_user(const StoredUser& user) const;

 private:
  std::filesystem::path dir_;
  std::mutex append_mutex_;
};

// Writes every part of `state` into `dir`, replacing existing logs.
void save_state(const std::filesystem::path& dir, const PersistentState& state);

// A missing directory or missing files yield empty parts (default config).
// Malformed content throws Error{Corrupt} naming the file and line.
PersistentState load_state(const std::filesystem::path& dir);

}  // namespace termrec
