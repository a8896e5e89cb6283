#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "termrec/config.hpp"
#include "termrec/embedding_store.hpp"
#include "termrec/item_index.hpp"
#include "termrec/recommender.hpp"
#include "termrec/state.hpp"
#include "termrec/user_model.hpp"

namespace termrec {

struct CreatedUser {
  std::string user_id;
  UserModel model;
  std::vector<std::string> unexpanded_keywords;
};

struct ModelSummary {
  std::vector<ModelEntry> top;  // highest weights first, ties on word
  std::size_t size = 0;
};

ModelSummary summarize(const UserModel& model, std::size_t count = 10);

struct RecommendedItem {
  Item item;
  double score = 0.0;
};

// Loads the embedding file named by the config, or an empty synonym table
// when no path is configured.
std::shared_ptr<const SynonymSource> load_synonyms(const EngineConfig& config);

// The running system: users, items, feedback and configuration, optionally
// persisted to a state directory after every mutation.
//
// Readers work on immutable snapshots (the item index and each user's model
// are swapped, never edited). Item ingestion and config changes are
// serialized globally; feedback is serialized per user. A failed request
// leaves the state unchanged.
class Engine {
 public:
  Engine(PersistentState state, std::shared_ptr<const SynonymSource> synonyms,
         std::optional<std::filesystem::path> state_dir = std::nullopt);

  // load_state(dir) plus persistence into the same directory.
  static Engine open(const std::filesystem::path& dir,
                     std::shared_ptr<const SynonymSource> synonyms);

  CreatedUser create_user(std::span<const std::string> keywords);
  UserModel user_model(const std::string& user_id) const;
  std::vector<std::string> user_ids() const;

  // Excludes every item the user rated unless `include_rated`.
  std::vector<RecommendedItem> recommend(const std::string& user_id,
                                         std::optional<std::size_t> top_n = std::nullopt,
                                         bool include_rated = false) const;

  // Word update against every other user's vocabulary, then the weight update
  // for this single record. Rejects a second rating of the same item.
  UserModel submit_feedback(const std::string& user_id, const ItemId& item_id,
                            FeedbackLabel label,
                            std::optional<std::int64_t> timestamp = std::nullopt);

  void add_item(Item item);
  // All or nothing.
  void add_items(std::vector<Item> items);
  std::vector<Item> items() const;

  EngineConfig config() const;
  // Rebuilds the index when the word form changes. Changing the field count
  // with items present is a conflict.
  void set_config(EngineConfig config);

  PersistentState snapshot() const;

 private:
  struct UserSnapshot {
    StoredUser user;
    std::set<ItemId> rated;
  };

  struct UserSlot {
    std::mutex write_mutex;          // one feedback writer per user
    mutable std::mutex read_mutex;   // guards the pointer swap only
    std::shared_ptr<const UserSnapshot> current;

    std::shared_ptr<const UserSnapshot> load() const {
      const std::lock_guard lock(read_mutex);
      return current;
    }
    void store(std::shared_ptr<const UserSnapshot> next) {
      const std::lock_guard lock(read_mutex);
      current = std::move(next);
    }
  };

  std::shared_ptr<UserSlot> slot(const std::string& user_id) const;

  mutable std::shared_mutex mutex_;  // config, index, synonyms, user map
  EngineConfig config_;
  std::shared_ptr<const ItemIndex> index_;
  std::shared_ptr<const SynonymSource> synonyms_;
  std::map<std::string, std::shared_ptr<UserSlot>> users_;
  std::uint64_t next_user_ = 1;

  mutable std::mutex feedback_mutex_;
  std::vector<FeedbackEvent> feedback_;

  std::unique_ptr<StateStore> store_;
};

}  // namespace termrec
