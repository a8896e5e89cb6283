#include <doctest.h>

#include <httplib.h>

#include <fstream>
#include <random>
#include <thread>

#include "support.hpp"
#include "termrec/engine.hpp"
#include "termrec/error.hpp"
#include "termrec/http_service.hpp"
#include "termrec/state.hpp"

using namespace termrec;
using namespace termrec::test;
using nlohmann::json;

namespace {

std::shared_ptr<const SynonymSource> worked_synonyms() {
  return std::make_shared<SynonymTable>(table1_synonyms());
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("state round trip through a directory") {
  const auto dir = temp_dir("state");
  PersistentState state;
  state.config.measure = SimilarityMeasure::DotProduct;
  state.items = worked_example_items();
  state.users["u1"] = {"u1", {"sport"}, UserModel{{{"sport", 2.0}, {"race", -0.25}}}, 42};
  state.users["u7"] = {"u7", {"chess"}, UserModel{{{"chess", 2.0}}}, 43};
  state.feedback.push_back({"u1", {"3", FeedbackLabel::Negative, 40}});
  save_state(dir, state);
  CHECK(load_state(dir) == state);

  state.users.erase("u7");
  save_state(dir, state);
  CHECK(!std::filesystem::exists(dir / "users" / "u7.json"));
  CHECK(load_state(dir) == state);

  CHECK(load_state(dir / "missing") == PersistentState{});
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt state names the file and line") {
  const auto dir = temp_dir("corrupt");
  PersistentState state;
  state.items = worked_example_items();
  save_state(dir, state);
  {
    std::ofstream out(dir / "items.jsonl", std::ios::app);
    out << "{not json\n";
  }
  try {
    (void)load_state(dir);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Corrupt);
    CHECK(std::string(e.what()).find("items.jsonl") != std::string::npos);
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }

  save_state(dir, state);
  {
    std::ofstream out(dir / "users" / "u9.json");
    out << R"({"user_id": "u8", "keywords": [], "model": [], "updated_at": 0})";
  }
  CHECK(kind_of([&] { (void)load_state(dir); }) == ErrorKind::Corrupt);
  std::filesystem::remove_all(dir);
}

TEST_CASE("user ids") {
  CHECK(is_valid_user_id("u12"));
  CHECK(is_valid_user_id("alice_b-2"));
  CHECK(!is_valid_user_id(""));
  CHECK(!is_valid_user_id("../etc"));
  CHECK(!is_valid_user_id("a b"));
}

TEST_CASE("engine onboarding, recommendation and feedback") {
  PersistentState initial;
  initial.items = worked_example_items();
  Engine engine(initial, worked_synonyms());

  const std::vector<std::string> keywords{"sport", "technology"};
  const CreatedUser user = engine.create_user(keywords);
  CHECK(user.user_id == "u1");
  CHECK(user.model == table2_model());

  const auto recs = engine.recommend(user.user_id, 2);
  const auto want = oracle_rank(initial.items, refine_model(user.model, engine.config().normalize_options()),
                                engine.config(), 2);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].item.id == want[0].id);
  CHECK(recs[1].item.id == want[1].id);
  CHECK(recs[0].score == doctest::Approx(want[0].score));

  const std::vector<std::string> art{"art"};
  const CreatedUser other = engine.create_user(art);
  const UserModel updated = engine.submit_feedback(user.user_id, "1", FeedbackLabel::Negative, 5);
  CHECK(updated.size() == 13);
  CHECK(updated.find("art")->weight == 0.0);
  CHECK(updated.find("football")->weight < 1.0);
  CHECK(engine.user_model(user.user_id) == updated);
  CHECK(engine.user_model(other.user_id).size() == 1);

  for (const auto& r : engine.recommend(user.user_id)) CHECK(r.item.id != "1");
  bool rated_included = false;
  for (const auto& r : engine.recommend(user.user_id, 5, true)) rated_included |= r.item.id == "1";
  CHECK(rated_included);

  CHECK(kind_of([&] { engine.submit_feedback(user.user_id, "1", FeedbackLabel::Positive); }) ==
        ErrorKind::Conflict);
  CHECK(kind_of([&] { engine.submit_feedback(user.user_id, "99", FeedbackLabel::Positive); }) ==
        ErrorKind::NotFound);
  CHECK(kind_of([&] { engine.submit_feedback("u404", "1", FeedbackLabel::Positive); }) ==
        ErrorKind::NotFound);
  CHECK(kind_of([&] { (void)engine.recommend("u404"); }) == ErrorKind::NotFound);
  const std::vector<std::string> none;
  CHECK(kind_of([&] { (void)engine.create_user(none); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("negative then positive on identical items restores the model") {
  PersistentState initial;
  initial.items = worked_example_items();
  initial.items.push_back(initial.items[0]);
  initial.items.back().id = "1b";
  Engine engine(initial, worked_synonyms());
  const std::vector<std::string> keywords{"sport", "technology"};
  const CreatedUser user = engine.create_user(keywords);
  // "1b" has the same text as "1", so both share M_Q.
  SUBCASE("word set fixed") {
    engine.submit_feedback(user.user_id, "1", FeedbackLabel::Negative, 1);
    const UserModel after = engine.submit_feedback(user.user_id, "1b", FeedbackLabel::Positive, 2);
    REQUIRE(after.size() == user.model.size());
    for (std::size_t w = 0; w < after.size(); ++w) {
      CHECK(std::fabs(after.entries[w].weight - user.model.entries[w].weight) <= 1e-9);
    }
  }
}

TEST_CASE("engine item ingestion is all or nothing") {
  Engine engine(PersistentState{}, worked_synonyms());
  CHECK(kind_of([&] { (void)engine.recommend("u1"); }) == ErrorKind::NotFound);
  const std::vector<std::string> keywords{"sport"};
  const CreatedUser user = engine.create_user(keywords);
  CHECK(kind_of([&] { (void)engine.recommend(user.user_id); }) == ErrorKind::Conflict);

  engine.add_items(worked_example_items());
  auto dup = worked_example_items();
  dup[0].id = "fresh";
  CHECK(kind_of([&] { engine.add_items(dup); }) == ErrorKind::Conflict);
  CHECK(engine.items().size() == 3);
  CHECK(kind_of([&] { engine.add_item({"bad", {"one field"}, {}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("engine config changes") {
  PersistentState initial;
  initial.items = worked_example_items();
  Engine engine(initial, worked_synonyms());
  EngineConfig c = engine.config();
  c.word_form = WordFormMode::Original;
  c.trim_suffix = false;
  engine.set_config(c);
  CHECK(engine.config() == c);
  c.field_count = 2;
  c.field_weights = {1.0, 1.0};
  CHECK(kind_of([&] { engine.set_config(c); }) == ErrorKind::Conflict);
  c = engine.config();
  c.learning_rate = -1;
  CHECK(kind_of([&] { engine.set_config(c); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("engine persists and restores through its state directory") {
  const auto dir = temp_dir("engine");
  std::vector<std::string> ids;
  std::vector<std::vector<RecommendedItem>> before;
  {
    Engine engine = Engine::open(dir, worked_synonyms());
    engine.add_items(worked_example_items());
    const std::vector<std::string> keywords{"sport", "technology"};
    ids.push_back(engine.create_user(keywords).user_id);
    ids.push_back(engine.create_user(keywords).user_id);
    engine.submit_feedback(ids[0], "2", FeedbackLabel::Positive, 10);
    for (const auto& id : ids) before.push_back(engine.recommend(id));
  }
  Engine restored = Engine::open(dir, worked_synonyms());
  CHECK(restored.user_ids() == ids);
  for (std::size_t u = 0; u < ids.size(); ++u) {
    const auto after = restored.recommend(ids[u]);
    REQUIRE(after.size() == before[u].size());
    for (std::size_t k = 0; k < after.size(); ++k) {
      CHECK(after[k].item == before[u][k].item);
      CHECK(after[k].score == before[u][k].score);
    }
  }
  CHECK(kind_of([&] { restored.submit_feedback(ids[0], "2", FeedbackLabel::Negative); }) ==
        ErrorKind::Conflict);
  const std::vector<std::string> keywords{"chess"};
  CHECK(restored.create_user(keywords).user_id == "u3");
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent feedback and reads keep every update") {
  std::mt19937_64 rng(12);
  PersistentState initial;
  initial.items = random_items(rng, 40);
  Engine engine(initial, nullptr);
  std::vector<std::string> users;
  for (int u = 0; u < 4; ++u) {
    const std::vector<std::string> keywords{toy_vocabulary()[u], toy_vocabulary()[u + 4]};
    users.push_back(engine.create_user(keywords).user_id);
  }
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        engine.submit_feedback(users[t], initial.items[i * 4 + t].id,
                               i % 2 ? FeedbackLabel::Positive : FeedbackLabel::Negative, i);
        (void)engine.recommend(users[(t + 1) % 4]);
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(engine.snapshot().feedback.size() == 40);
}

TEST_CASE("HTTP API") {
  PersistentState initial;
  initial.items = worked_example_items();
  Engine engine(initial, worked_synonyms());
  HttpService service(engine);
  const int port = service.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { service.listen_after_bind(); });
  httplib::Client client("127.0.0.1", port);
  for (int i = 0; i < 100 && !service.is_running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));

  auto res = client.Post("/api/users", R"({"keywords": ["sport", "technology"]})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  json body = json::parse(res->body);
  const std::string id = body["user_id"];
  CHECK(body["model"]["entries"].size() == 12);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");

  res = client.Get("/api/users/" + id + "/model");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["entries"][0] == json{{"word", "sport"}, {"weight", 2.0}});

  res = client.Get("/api/users/" + id + "/recommendations?n=2");
  REQUIRE(res);
  CHECK(res->status == 200);
  body = json::parse(res->body);
  REQUIRE(body["items"].size() == 2);
  const auto want = oracle_rank(initial.items, refine_model(table2_model(), engine.config().normalize_options()),
                                engine.config(), 2);
  CHECK(body["items"][0]["item"]["item_id"] == want[0].id);
  CHECK(body["items"][1]["item"]["item_id"] == want[1].id);
  CHECK(body["items"][0]["score"].is_number());

  res = client.Post("/api/users/" + id + "/feedback", R"({"item_id": "1", "label": "negative"})",
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  body = json::parse(res->body);
  CHECK(body["model_summary"]["size"] == 12);
  CHECK(body["model_summary"]["entries"].size() == 10);

  res = client.Post("/api/users/" + id + "/feedback", R"({"item_id": "1", "label": "positive"})",
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 409);
  CHECK(json::parse(res->body).contains("error"));

  res = client.Get("/api/users/" + id + "/recommendations");
  REQUIRE(res);
  body = json::parse(res->body);
  for (const auto& item : body["items"]) CHECK(item["item"]["item_id"] != "1");

  CHECK(client.Get("/api/users/" + id + "/recommendations?n=0")->status == 400);
  CHECK(client.Get("/api/users/" + id + "/recommendations?n=x")->status == 400);
  CHECK(client.Get("/api/users/u404/model")->status == 404);
  CHECK(client.Post("/api/users", "{oops", "application/json")->status == 400);
  CHECK(client.Post("/api/users", R"({"keywords": []})", "application/json")->status == 400);
  CHECK(client.Post("/api/users/" + id + "/feedback", R"({"item_id": "1", "label": "meh"})",
                    "application/json")
            ->status == 400);

  res = client.Post("/api/items", R"({"item_id": "4", "fields": ["Rowing club", "Join rowing", "sport"]})",
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK(client.Post("/api/items", R"({"item_id": "4", "fields": ["a", "b", "c"]})", "application/json")
            ->status == 409);
  CHECK(client.Post("/api/items", R"({"item_id": "5", "fields": ["a"]})", "application/json")->status ==
        400);
  CHECK(json::parse(client.Get("/api/items")->body)["items"].size() == 4);

  res = client.Get("/api/config");
  REQUIRE(res);
  CHECK(json::parse(res->body)["measure"] == "cosine");
  res = client.Put("/api/config", R"({"measure": "dot"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["measure"] == "dot");
  CHECK(json::parse(res->body)["S"] == 5);
  CHECK(client.Put("/api/config", R"({"alpha": 0})", "application/json")->status == 400);
  CHECK(engine.config().measure == SimilarityMeasure::DotProduct);
  CHECK(client.Options("/api/users")->status == 204);

  service.stop();
  server.join();
}
