#include "termrec/engine.hpp"

#include <algorithm>
#include <chrono>

#include "termrec/error.hpp"

namespace termrec {

namespace {

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::uint64_t numeric_suffix(const std::string& id) {
  if (id.size() < 2 || id[0] != 'u') return 0;
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return 0;
    n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
  }
  return n;
}

}  // namespace

ModelSummary summarize(const UserModel& model, std::size_t count) {
  ModelSummary summary;
  summary.size = model.size();
  summary.top = model.entries;
  std::stable_sort(summary.top.begin(), summary.top.end(), [](const ModelEntry& a, const ModelEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.word < b.word;
  });
  if (summary.top.size() > count) summary.top.resize(count);
  return summary;
}

std::shared_ptr<const SynonymSource> load_synonyms(const EngineConfig& config) {
  if (config.embedding_path.empty()) return std::make_shared<SynonymTable>();
  return std::make_shared<EmbeddingStore>(EmbeddingStore::load_file(config.embedding_path));
}

Engine::Engine(PersistentState state, std::shared_ptr<const SynonymSource> synonyms,
               std::optional<std::filesystem::path> state_dir)
    : config_(std::move(state.config)),
      synonyms_(synonyms ? std::move(synonyms) : std::make_shared<SynonymTable>()) {
  config_.validate();
  index_ = std::make_shared<const ItemIndex>(
      ItemIndex::build({config_.field_count, config_.normalize_options()}, state.items));

  std::map<std::string, std::set<ItemId>> rated;
  for (const FeedbackEvent& event : state.feedback) rated[event.user_id].insert(event.record.item_id);
  feedback_ = std::move(state.feedback);

  for (auto& [id, user] : state.users) {
    auto slot = std::make_shared<UserSlot>();
    auto snapshot = std::make_shared<UserSnapshot>();
    snapshot->rated = rated[id];
    snapshot->user = std::move(user);
    slot->current = std::move(snapshot);
    users_.emplace(id, std::move(slot));
    next_user_ = std::max(next_user_, numeric_suffix(id) + 1);
  }

  if (state_dir) {
    store_ = std::make_unique<StateStore>(*state_dir);
    store_->write_config(config_);
  }
}

Engine Engine::open(const std::filesystem::path& dir, std::shared_ptr<const SynonymSource> synonyms) {
  return Engine(load_state(dir), std::move(synonyms), dir);
}

std::shared_ptr<Engine::UserSlot> Engine::slot(const std::string& user_id) const {
  const auto it = users_.find(user_id);
  if (it == users_.end()) throw not_found("unknown user '" + user_id + "'");
  return it->second;
}

CreatedUser Engine::create_user(std::span<const std::string> keywords) {
  EngineConfig config;
  std::shared_ptr<const SynonymSource> synonyms;
  {
    const std::shared_lock lock(mutex_);
    config = config_;
    synonyms = synonyms_;
  }
  InitialModel initial = create_initial_model(keywords, config.synonyms_per_keyword,
                                              config.keyword_weight, *synonyms);

  auto snapshot = std::make_shared<UserSnapshot>();
  snapshot->user.keywords = clean_keywords(keywords);
  snapshot->user.model = initial.model;
  snapshot->user.updated_at = now_seconds();

  const std::unique_lock lock(mutex_);
  std::string id;
  do {
    id = "u" + std::to_string(next_user_++);
  } while (users_.count(id));
  snapshot->user.user_id = id;
  if (store_) store_->write_user(snapshot->user);
  auto slot = std::make_shared<UserSlot>();
  slot->current = snapshot;
  users_.emplace(id, std::move(slot));
  return {id, std::move(initial.model), std::move(initial.unexpanded_keywords)};
}

UserModel Engine::user_model(const std::string& user_id) const {
  std::shared_ptr<UserSlot> s;
  {
    const std::shared_lock lock(mutex_);
    s = slot(user_id);
  }
  return s->load()->user.model;
}

std::vector<std::string> Engine::user_ids() const {
  const std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : users_) ids.push_back(id);
  return ids;
}

std::vector<RecommendedItem> Engine::recommend(const std::string& user_id,
                                               std::optional<std::size_t> top_n,
                                               bool include_rated) const {
  std::shared_ptr<UserSlot> s;
  std::shared_ptr<const ItemIndex> index;
  EngineConfig config;
  {
    const std::shared_lock lock(mutex_);
    s = slot(user_id);
    index = index_;
    config = config_;
  }
  if (index->empty()) throw conflict("no items have been ingested");
  const auto snapshot = s->load();
  const RefinedModel refined = refine_model(snapshot->user.model, config.normalize_options());

  std::unordered_set<ItemId> exclude;
  if (!include_rated) exclude.insert(snapshot->rated.begin(), snapshot->rated.end());
  const auto ranked =
      recommend_top_n(refined, *index, config, top_n.value_or(config.top_n), exclude);

  std::vector<RecommendedItem> out;
  out.reserve(ranked.size());
  for (const Recommendation& r : ranked) out.push_back({index->item(*index->position(r.item_id)), r.score});
  return out;
}

UserModel Engine::submit_feedback(const std::string& user_id, const ItemId& item_id,
                                  FeedbackLabel label, std::optional<std::int64_t> timestamp) {
  std::shared_ptr<UserSlot> s;
  std::shared_ptr<const ItemIndex> index;
  EngineConfig config;
  std::set<std::string> foreign;
  {
    const std::shared_lock lock(mutex_);
    s = slot(user_id);
    index = index_;
    config = config_;
    if (!index->position(item_id)) throw not_found("unknown item '" + item_id + "'");
    for (const auto& [other_id, other] : users_) {
      if (other_id == user_id) continue;
      const auto snapshot = other->load();  // keeps the entries alive while iterating
      for (const ModelEntry& e : snapshot->user.model.entries) foreign.insert(e.word);
    }
  }

  const std::lock_guard write(s->write_mutex);
  const auto current = s->load();
  if (current->rated.count(item_id)) {
    throw conflict("user '" + user_id + "' already rated item '" + item_id + "'");
  }
  const FeedbackEvent event{user_id, {item_id, label, timestamp.value_or(now_seconds())}};

  auto next = std::make_shared<UserSnapshot>(*current);
  next->user.model = update_model_words(current->user.model, foreign);
  next->user.model = update_model_weights(std::move(next->user.model), std::span(&event.record, 1),
                                          config.learning_rate, *index, config);
  next->user.updated_at = event.record.timestamp;
  next->rated.insert(item_id);

  if (store_) {
    store_->append_feedback(event);
    store_->write_user(next->user);
  }
  {
    const std::lock_guard lock(feedback_mutex_);
    feedback_.push_back(event);
  }
  UserModel result = next->user.model;
  s->store(std::move(next));
  return result;
}

void Engine::add_item(Item item) {
  std::vector<Item> items;
  items.push_back(std::move(item));
  add_items(std::move(items));
}

void Engine::add_items(std::vector<Item> items) {
  const std::unique_lock lock(mutex_);
  auto next = std::make_shared<ItemIndex>(*index_);
  for (const Item& item : items) next->ingest(item);
  if (store_) store_->append_items(items);
  index_ = std::move(next);
}

std::vector<Item> Engine::items() const {
  std::shared_ptr<const ItemIndex> index;
  {
    const std::shared_lock lock(mutex_);
    index = index_;
  }
  return index->items();
}

EngineConfig Engine::config() const {
  const std::shared_lock lock(mutex_);
  return config_;
}

void Engine::set_config(EngineConfig config) {
  config.validate();
  const std::unique_lock lock(mutex_);
  if (config.field_count != config_.field_count && !index_->empty()) {
    throw conflict("field_count cannot change while items are stored");
  }
  auto index = index_;
  const IndexOptions options{config.field_count, config.normalize_options()};
  if (!(options == index_->options())) {
    index = std::make_shared<const ItemIndex>(ItemIndex::build(options, index_->items()));
  }
  auto synonyms = synonyms_;
  if (config.embedding_path != config_.embedding_path) synonyms = load_synonyms(config);
  if (store_) store_->write_config(config);
  config_ = std::move(config);
  index_ = std::move(index);
  synonyms_ = std::move(synonyms);
}

PersistentState Engine::snapshot() const {
  PersistentState state;
  const std::shared_lock lock(mutex_);
  state.config = config_;
  state.items = index_->items();
  for (const auto& [id, s] : users_) state.users.emplace(id, s->load()->user);
  const std::lock_guard feedback_lock(feedback_mutex_);
  state.feedback = feedback_;
  return state;
}

}  // namespace termrec
