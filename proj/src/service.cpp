#include "splitkit/service.hpp"

#include <httplib.h>

#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>

#include "splitkit/error.hpp"
#include "splitkit/json_io.hpp"

namespace splitkit {

namespace {

using nlohmann::json;

struct Session {
  std::mutex mutex;
  GameState state;
  Player human = Player::Split;
  std::chrono::system_clock::time_point created_at;
  std::optional<GameSolver> solver;

  GameSolver& engine() {
    if (!solver) solver.emplace(state.board(), state.first());
    return *solver;
  }
};

ServiceResponse error(int status, const std::string& message) { return {status, {{"error", message}}}; }

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json session_json(const std::string& id, const Session& s) {
  return {{"id", id}, {"human", std::string(to_string(s.human))}, {"createdAt", iso_time(s.created_at)},
          {"state", state_to_json(s.state)}};
}

// Runs fn and maps library errors to HTTP statuses.
template <class Fn>
ServiceResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    return error(422, std::string("malformed JSON: ") + e.what());
  } catch (const IllegalMove& e) {
    return error(409, e.what());
  } catch (const ContractViolation& e) {
    return error(422, e.what());
  } catch (const CapacityError& e) {
    return error(422, e.what());
  }
}

}  // namespace

struct GameService::Impl {
  mutable std::shared_mutex sessions_mutex;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mutex rng_mutex;
  std::mt19937_64 rng{std::random_device{}()};
  std::mutex log_mutex;
  std::optional<std::ofstream> log;

  std::string new_id() {
    std::lock_guard lock(rng_mutex);
    std::ostringstream os;
    os << std::hex << rng() << rng();
    return os.str();
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  void record(json event) {
    if (!log) return;
    event["at"] = iso_time(std::chrono::system_clock::now());
    std::lock_guard lock(log_mutex);
    *log << event.dump() << '\n';
    log->flush();
  }

  // Engine reply while it is the engine's turn; returns the element played.
  static std::optional<unsigned> engine_reply(Session& s) {
    if (s.state.over() || s.state.to_move() == s.human) return std::nullopt;
    const unsigned e = *s.engine().solve(s.state).principal;
    s.state = s.state.apply_move(e);
    return e;
  }
};

GameService::GameService(std::optional<std::string> event_log_path) : impl_(std::make_unique<Impl>()) {
  if (event_log_path) {
    impl_->log.emplace(*event_log_path, std::ios::app);
    if (!*impl_->log) throw std::runtime_error("cannot open event log " + *event_log_path);
  }
}

GameService::~GameService() = default;

ServiceResponse GameService::create(const std::string& body) {
  return guarded([&]() -> ServiceResponse {
    const json req = json::parse(body);
    if (!req.is_object()) return error(422, "request body must be a JSON object");
    Family board = req.contains("board") ? board_from_json(req.at("board")) : board_from_json(req);
    auto player_field = [&](const char* name) {
      if (!req.contains(name)) return Player::Split;
      const json& v = req.at(name);
      const auto p = v.is_string() ? parse_player(v.get<std::string>()) : std::nullopt;
      if (!p) throw ContractViolation(std::string(name) + " must be \"Split\" or \"Skew\"");
      return *p;
    };
    const Player first = player_field("first");
    const Player human = player_field("human");

    auto session = std::make_shared<Session>();
    session->state = GameState(std::move(board), first);
    session->human = human;
    session->created_at = std::chrono::system_clock::now();
    session->engine();  // fails early on boards the solver cannot handle
    const auto engine_move = Impl::engine_reply(*session);

    const std::string id = impl_->new_id();
    {
      std::unique_lock lock(impl_->sessions_mutex);
      impl_->sessions.emplace(id, session);
    }
    json out = session_json(id, *session);
    out["engineMove"] = engine_move ? json(*engine_move) : json(nullptr);
    impl_->record({{"event", "create"}, {"id", id}, {"request", req}, {"engineMove", out["engineMove"]}});
    return {201, out};
  });
}

ServiceResponse GameService::get(const std::string& id) const {
  auto session = impl_->find(id);
  if (!session) return error(404, "unknown game " + id);
  std::lock_guard lock(session->mutex);
  return {200, session_json(id, *session)};
}

ServiceResponse GameService::move(const std::string& id, const std::string& body) {
  auto session = impl_->find(id);
  if (!session) return error(404, "unknown game " + id);
  return guarded([&]() -> ServiceResponse {
    const json req = json::parse(body);
    if (!req.is_object() || !req.contains("element") || !req.at("element").is_number_integer()) {
      return error(422, "body must be {\"element\": int}");
    }
    const long long element = req.at("element").get<long long>();
    std::lock_guard lock(session->mutex);
    if (session->state.over()) return error(409, "the game is over");
    if (session->state.to_move() != session->human) return error(409, "it is not the human player's turn");
    if (element < 1 || element > static_cast<long long>(session->state.k())) {
      return error(409, "element " + std::to_string(element) + " is not on the board");
    }
    session->state = session->state.apply_move(static_cast<unsigned>(element));
    const auto engine_move = Impl::engine_reply(*session);
    json out = session_json(id, *session);
    out["humanMove"] = element;
    out["engineMove"] = engine_move ? json(*engine_move) : json(nullptr);
    impl_->record({{"event", "move"}, {"id", id}, {"humanMove", element}, {"engineMove", out["engineMove"]}});
    return {200, out};
  });
}

ServiceResponse GameService::hint(const std::string& id) {
  auto session = impl_->find(id);
  if (!session) return error(404, "unknown game " + id);
  return guarded([&]() -> ServiceResponse {
    std::lock_guard lock(session->mutex);
    if (session->state.over()) return error(409, "the game is over");
    const Solution s = session->engine().solve(session->state);
    return {200,
            {{"id", id},
             {"bestMove", *s.principal},
             {"toMove", std::string(to_string(session->state.to_move()))},
             {"winnerUnderPerfectPlay", std::string(to_string(s.winner))}}};
  });
}

ServiceResponse GameService::remove(const std::string& id) {
  {
    std::unique_lock lock(impl_->sessions_mutex);
    if (impl_->sessions.erase(id) == 0) return error(404, "unknown game " + id);
  }
  impl_->record({{"event", "delete"}, {"id", id}});
  return {200, {{"id", id}, {"deleted", true}}};
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(impl_->sessions_mutex);
  return impl_->sessions.size();
}

struct HttpServer::Impl {
  explicit Impl(GameService& s) : service(s) {}
  GameService& service;
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Post("/games", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->service.create(req.body));
  });
  srv.Get(R"(/games/([0-9a-f]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->service.get(req.matches[1]));
  });
  srv.Delete(R"(/games/([0-9a-f]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->service.remove(req.matches[1]));
  });
  srv.Post(R"(/games/([0-9a-f]+)/moves)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->service.move(req.matches[1], req.body));
  });
  srv.Get(R"(/games/([0-9a-f]+)/hint)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->service.hint(req.matches[1]));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  const int bound = port == 0 ? srv.bind_to_any_port(host) : (srv.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace splitkit
