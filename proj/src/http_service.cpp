#include "termrec/http_service.hpp"

#include <httplib.h>

#include <json.hpp>

#include "termrec/error.hpp"
#include "termrec/item_json.hpp"

namespace termrec {

using nlohmann::json;

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Parse:
      return 400;
    case ErrorKind::NotFound:
      return 404;
    case ErrorKind::Conflict:
      return 409;
    case ErrorKind::Corrupt:
    case ErrorKind::Io:
      return 500;
  }
  return 500;
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json entries_json(const std::vector<ModelEntry>& entries) {
  json out = json::array();
  for (const ModelEntry& e : entries) out.push_back({{"word", e.word}, {"weight", e.weight}});
  return out;
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("request body is not valid JSON: ") + e.what());
  }
}

// Runs a handler, translating library errors into JSON error responses.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      reply(res, status_for(e.kind()), {{"error", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

}  // namespace

struct HttpService::Impl {
  explicit Impl(Engine& e) : engine(e) { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server.Post("/api/users", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      if (!body.is_object() || !body.contains("keywords") || !body["keywords"].is_array()) {
        throw invalid_argument("body must be {\"keywords\": [...]}");
      }
      const auto keywords = body["keywords"].get<std::vector<std::string>>();
      const CreatedUser created = engine.create_user(keywords);
      reply(res, 201,
            {{"user_id", created.user_id},
             {"model", {{"entries", entries_json(created.model.entries)}}},
             {"unexpanded_keywords", created.unexpanded_keywords}});
    }));

    server.Get(R"(/api/users/([A-Za-z0-9_-]+)/model)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const UserModel model = engine.user_model(req.matches[1]);
                 reply(res, 200, {{"entries", entries_json(model.entries)}});
               }));

    server.Get(R"(/api/users/([A-Za-z0-9_-]+)/recommendations)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 std::optional<std::size_t> n;
                 if (req.has_param("n")) {
                   const std::string raw = req.get_param_value("n");
                   std::size_t used = 0;
                   long long value = 0;
                   try {
                     value = std::stoll(raw, &used);
                   } catch (const std::exception&) {
                     used = 0;
                   }
                   if (used != raw.size() || value < 1) throw invalid_argument("n must be a positive integer");
                   n = static_cast<std::size_t>(value);
                 }
                 const bool include_rated = req.get_param_value("include_rated") == "true";
                 json items = json::array();
                 for (const RecommendedItem& r : engine.recommend(req.matches[1], n, include_rated)) {
                   items.push_back({{"item", item_to_json(r.item)}, {"score", r.score}});
                 }
                 reply(res, 200, {{"items", std::move(items)}});
               }));

    server.Post(R"(/api/users/([A-Za-z0-9_-]+)/feedback)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const json body = parse_body(req);
                  if (!body.is_object()) throw invalid_argument("body must be a JSON object");
                  const auto& id = body.at("item_id");
                  const std::string item_id =
                      id.is_string() ? id.get<std::string>() : std::to_string(id.get<long long>());
                  const FeedbackLabel label =
                      feedback_label_from_string(body.at("label").get<std::string>());
                  const UserModel model = engine.submit_feedback(req.matches[1], item_id, label);
                  const ModelSummary summary = summarize(model);
                  reply(res, 200,
                        {{"model_summary", {{"entries", entries_json(summary.top)}, {"size", summary.size}}}});
                }));

    server.Post("/api/items", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Item item = item_from_json(parse_body(req));
      const std::string id = item.id;
      engine.add_item(std::move(item));
      reply(res, 201, {{"item_id", id}});
    }));

    server.Get("/api/items", guarded([this](const httplib::Request&, httplib::Response& res) {
      json items = json::array();
      for (const Item& item : engine.items()) items.push_back(item_to_json(item));
      reply(res, 200, {{"items", std::move(items)}});
    }));

    server.Get("/api/config", guarded([this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, json(engine.config()));
    }));

    server.Put("/api/config", guarded([this](const httplib::Request& req, httplib::Response& res) {
      EngineConfig config = engine.config();
      from_json(parse_body(req), config);
      engine.set_config(config);
      reply(res, 200, json(engine.config()));
    }));
  }

  Engine& engine;
  httplib::Server server;
};

HttpService::HttpService(Engine& engine) : impl_(std::make_unique<Impl>(engine)) {}
HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host.c_str());
  return impl_->server.bind_to_port(host.c_str(), port) ? port : -1;
}

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpService::stop() { impl_->server.stop(); }
bool HttpService::is_running() const { return impl_->server.is_running(); }

}  // namespace termrec
