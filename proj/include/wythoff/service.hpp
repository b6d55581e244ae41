#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wythoff/game.hpp"

namespace httplib {
class Server;
}

namespace wythoff::service {

enum class Mover { kHuman, kEngine };
enum class SessionStatus { kHumanToMove, kEngineToMove, kFinished };

struct Ply {
  Mover mover;
  Move move;
};

/// One human-vs-engine game of canonical odd-n Wythoff's game.
struct GameSession {
  std::string id;
  Position start;
  Position current;
  std::vector<Ply> history;
  SessionStatus status = SessionStatus::kHumanToMove;
  std::optional<Mover> winner;

  nlohmann::json to_json() const;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;

/// In-memory sessions. Each session is locked for the duration of an update,
/// so requests against one session are serialized while distinct sessions
/// proceed in parallel. Sessions idle longer than the expiry are dropped.
class SessionStore {
 public:
  explicit SessionStore(std::chrono::steady_clock::duration idle_expiry = std::chrono::minutes(30),
                        Clock clock = std::chrono::steady_clock::now);

  /// Stores the session under a fresh random id and returns that id.
  std::string insert(GameSession session);

  /// Runs fn on the session under its lock. Returns false if the id is
  /// unknown or expired.
  bool with_session(const std::string& id, const std::function<void(GameSession&)>& fn);

  std::size_t size();

 private:
  struct Entry {
    Entry(GameSession s, std::chrono::steady_clock::time_point t) : session(std::move(s)), last_access(t) {}
    std::mutex mutex;
    GameSession session;
    std::chrono::steady_clock::time_point last_access;
  };

  void expire_locked(std::chrono::steady_clock::time_point now);
  std::string fresh_id_locked();

  std::chrono::steady_clock::duration idle_expiry_;
  Clock clock_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

struct Reply {
  int status = 200;
  std::string body;
};

struct ServiceConfig {
  std::size_t max_cells = default_max_cells();
  std::chrono::steady_clock::duration idle_expiry = std::chrono::minutes(30);
  Clock clock = std::chrono::steady_clock::now;
};

/// Request handlers, independent of the HTTP transport. Every body is JSON.
class Service {
 public:
  explicit Service(ServiceConfig config = {});

  /// GET /api/verdict?pos=x1,...,xn
  Reply verdict(std::string_view pos);
  /// POST /api/session {n, start, human_first}
  Reply create_session(std::string_view body);
  /// GET /api/session/{id}
  Reply get_session(const std::string& id);
  /// POST /api/session/{id}/move {vector, k}
  Reply move(const std::string& id, std::string_view body);
  /// GET /api/session/{id}/hints
  Reply hints(const std::string& id);
  /// GET /api/sponge?n=..&m=..
  Reply sponge(std::string_view n, std::string_view m);

  /// Registers every route plus CORS handling on the server.
  void mount(httplib::Server& server);

  SessionStore& sessions() noexcept { return sessions_; }

 private:
  ServiceConfig config_;
  SessionStore sessions_;
  std::mutex cache_mutex_;
  std::map<std::pair<std::size_t, unsigned>, std::string> sponge_cache_;
};

nlohmann::json move_to_json(const Move& m);

/// Blocks serving the API on host:port until the process stops.
/// Returns false if the socket could not be bound.
bool serve(const std::string& host, int port, ServiceConfig config = {});

}  // namespace wythoff::service
