#include "wythoff/service.hpp"

#include <charconv>
#include <random>

#include "httplib.h"
#include "wythoff/errors.hpp"
#include "wythoff/oracle.hpp"
#include "wythoff/sponge.hpp"

namespace wythoff::service {

using nlohmann::json;

namespace {

Reply ok(const json& j) { return Reply{200, j.dump()}; }

Reply error_reply(int status, const std::string& message) {
  return Reply{status, json{{"error", message}}.dump()};
}

const char* to_string(Mover m) { return m == Mover::kHuman ? "human" : "engine"; }

const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::kHumanToMove:
      return "human-to-move";
    case SessionStatus::kEngineToMove:
      return "engine-to-move";
    case SessionStatus::kFinished:
      return "finished";
  }
  return "unknown";
}

json coords_json(std::span<const Natural> c) { return std::vector<Natural>(c.begin(), c.end()); }

std::vector<Natural> natural_array(const json& j, const char* field) {
  if (!j.is_array()) throw InvalidArgument(std::string(field) + " must be an array of integers");
  std::vector<Natural> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) {
      throw InvalidArgument(std::string(field) + " entries must be non-negative integers");
    }
    out.push_back(x.get<Natural>());
  }
  return out;
}

bool parse_unsigned(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

// The side to move at a terminal position has lost.
void finish_if_terminal(GameSession& s, Mover to_move) {
  const auto spec = GameSpec::wythoff(s.current.size());
  if (is_terminal(spec, s.current)) {
    s.status = SessionStatus::kFinished;
    s.winner = to_move == Mover::kHuman ? Mover::kEngine : Mover::kHuman;
  } else {
    s.status = to_move == Mover::kHuman ? SessionStatus::kHumanToMove : SessionStatus::kEngineToMove;
  }
}

void engine_reply(GameSession& s) {
  const auto m = engine_move(s.current);
  if (!m) {
    finish_if_terminal(s, Mover::kEngine);
    return;
  }
  s.current = apply_move(s.current, *m);
  s.history.push_back(Ply{Mover::kEngine, *m});
  finish_if_terminal(s, Mover::kHuman);
}

}  // namespace

json move_to_json(const Move& m) {
  return json{{"vector", coords_json(m.vector.coords())}, {"k", m.k}};
}

json GameSession::to_json() const {
  json j;
  j["id"] = id;
  j["n"] = current.size();
  j["start"] = coords_json(start.coords());
  j["current"] = coords_json(current.coords());
  j["history"] = json::array();
  for (const auto& ply : history) {
    j["history"].push_back(json{{"mover", service::to_string(ply.mover)}, {"move", move_to_json(ply.move)}});
  }
  j["status"] = service::to_string(status);
  j["winner"] = winner ? json(service::to_string(*winner)) : json(nullptr);
  j["nim_sum"] = nim_sum(current.coords());
  j["is_p"] = nim_sum(current.coords()) == 0;
  return j;
}

// ---------------------------------------------------------------------------
// SessionStore

SessionStore::SessionStore(std::chrono::steady_clock::duration idle_expiry, Clock clock)
    : idle_expiry_(idle_expiry), clock_(std::move(clock)), salt_(std::random_device{}()) {
  salt_ = (salt_ << 32) ^ std::random_device{}();
}

std::string SessionStore::fresh_id_locked() {
  std::mt19937_64 rng(salt_ ^ (++counter_ * 0x9e3779b97f4a7c15ULL));
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  while (id.empty() || entries_.contains(id)) {
    id.clear();
    for (int w = 0; w < 2; ++w) {
      std::uint64_t r = rng();
      for (int i = 0; i < 16; ++i, r >>= 4) id += kHex[r & 0xf];
    }
  }
  return id;
}

void SessionStore::expire_locked(std::chrono::steady_clock::time_point now) {
  std::erase_if(entries_, [&](const auto& kv) {
    std::unique_lock entry_lock(kv.second->mutex, std::try_to_lock);
    return entry_lock.owns_lock() && now - kv.second->last_access > idle_expiry_;
  });
}

std::string SessionStore::insert(GameSession session) {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  expire_locked(now);
  session.id = fresh_id_locked();
  const std::string id = session.id;
  auto entry = std::make_shared<Entry>(std::move(session), now);
  entries_.emplace(id, std::move(entry));
  return id;
}

bool SessionStore::with_session(const std::string& id, const std::function<void(GameSession&)>& fn) {
  std::shared_ptr<Entry> entry;
  std::chrono::steady_clock::time_point now;
  {
    std::lock_guard lock(mutex_);
    now = clock_();
    expire_locked(now);
    auto it = entries_.find(id);
    if (it == entries_.end()) return false;
    entry = it->second;
  }
  std::lock_guard entry_lock(entry->mutex);
  entry->last_access = now;
  fn(entry->session);
  return true;
}

std::size_t SessionStore::size() {
  std::lock_guard lock(mutex_);
  expire_locked(clock_());
  return entries_.size();
}

// ---------------------------------------------------------------------------
// Service

Service::Service(ServiceConfig config)
    : config_(std::move(config)), sessions_(config_.idle_expiry, config_.clock) {}

Reply Service::verdict(std::string_view pos) {
  Position p{0};
  try {
    p = parse_position(pos);
  } catch (const InvalidArgument& e) {
    return error_reply(400, e.what());
  }
  try {
    const bool is_p = is_p_position(p);
    return ok(json{{"is_p", is_p}, {"nim_sum", nim_sum(p.coords())}});
  } catch (const DimensionError& e) {
    return error_reply(422, e.what());
  }
}

Reply Service::create_session(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    return error_reply(400, "request body is not valid JSON");
  }
  std::size_t n = 0;
  std::vector<Natural> start;
  bool human_first = true;
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("start")) {
      return error_reply(400, "expected {\"n\": int, \"start\": [int,...], \"human_first\": bool}");
    }
    if (!j["n"].is_number_unsigned()) return error_reply(400, "n must be a positive integer");
    n = j["n"].get<std::size_t>();
    start = natural_array(j["start"], "start");
    if (j.contains("human_first")) {
      if (!j["human_first"].is_boolean()) return error_reply(400, "human_first must be a boolean");
      human_first = j["human_first"].get<bool>();
    }
  } catch (const InvalidArgument& e) {
    return error_reply(400, e.what());
  }
  if (start.size() != n) return error_reply(400, "start must have exactly n heaps");
  try {
    require_oracle_dimension(n);
  } catch (const DimensionError& e) {
    return error_reply(422, e.what());
  }

  const Position origin(start);
  GameSession s{"", origin, origin, {}, SessionStatus::kHumanToMove, std::nullopt};
  if (human_first) {
    finish_if_terminal(s, Mover::kHuman);
  } else {
    engine_reply(s);
  }
  const std::string id = sessions_.insert(s);
  s.id = id;
  return ok(s.to_json());
}

Reply Service::get_session(const std::string& id) {
  json out;
  if (!sessions_.with_session(id, [&](GameSession& s) { out = s.to_json(); })) {
    return error_reply(404, "unknown session");
  }
  return ok(out);
}

Reply Service::move(const std::string& id, std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    return error_reply(400, "request body is not valid JSON");
  }
  std::vector<Natural> vector;
  Natural k = 0;
  try {
    if (!j.is_object() || !j.contains("vector") || !j.contains("k")) {
      return error_reply(400, "expected {\"vector\": [int,...], \"k\": int}");
    }
    vector = natural_array(j["vector"], "vector");
    if (!j["k"].is_number_unsigned()) return error_reply(400, "k must be a non-negative integer");
    k = j["k"].get<Natural>();
  } catch (const InvalidArgument& e) {
    return error_reply(400, e.what());
  }

  Reply reply;
  const bool found = sessions_.with_session(id, [&](GameSession& s) {
    if (s.status != SessionStatus::kHumanToMove) {
      reply = error_reply(409, "it is not the human's turn");
      return;
    }
    const auto spec = GameSpec::wythoff(s.current.size());
    try {
      const MoveVector v(vector);
      if (v.size() != spec.n() ||
          std::find(spec.vectors().begin(), spec.vectors().end(), v) == spec.vectors().end()) {
        reply = error_reply(422, "vector is not a move vector of this game");
        return;
      }
      const Move m{v, k};
      s.current = apply_move(s.current, m);
      s.history.push_back(Ply{Mover::kHuman, m});
    } catch (const Error& e) {
      reply = error_reply(422, e.what());
      return;
    }
    finish_if_terminal(s, Mover::kEngine);
    if (s.status != SessionStatus::kFinished) engine_reply(s);
    reply = ok(s.to_json());
  });
  if (!found) return error_reply(404, "unknown session");
  return reply;
}

Reply Service::hints(const std::string& id) {
  json out = json::array();
  const bool found = sessions_.with_session(id, [&](GameSession& s) {
    const auto spec = GameSpec::wythoff(s.current.size());
    for (const auto& m : all_winning_moves(spec, s.current)) out.push_back(move_to_json(m));
  });
  if (!found) return error_reply(404, "unknown session");
  return ok(out);
}

Reply Service::sponge(std::string_view n_text, std::string_view m_text) {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (!parse_unsigned(n_text, n) || !parse_unsigned(m_text, m)) {
    return error_reply(400, "n and m must be non-negative integers");
  }
  if (n < 3 || n % 2 == 0) {
    return error_reply(422, "sponge undefined for this dimension: n = " + std::to_string(n));
  }
  if (m > 63) return error_reply(413, "sponge level exceeds the size budget");
  const auto key = std::make_pair(static_cast<std::size_t>(n), static_cast<unsigned>(m));
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = sponge_cache_.find(key); it != sponge_cache_.end()) return Reply{200, it->second};
  }
  std::string body;
  try {
    body = export_points(generate_level(key.first, key.second, config_.max_cells), ExportFormat::kJson);
  } catch (const BudgetExceeded& e) {
    return error_reply(413, e.what());
  }
  std::lock_guard lock(cache_mutex_);
  sponge_cache_.emplace(key, body);
  return Reply{200, body};
}

void Service::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };

  server.set_default_headers({
      {"Access-Control-Allow-Origin", "*"},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/api/verdict", [this, send](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("pos")) return send(res, error_reply(400, "missing pos parameter"));
    send(res, verdict(req.get_param_value("pos")));
  });
  server.Post("/api/session", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create_session(req.body));
  });
  server.Get(R"(/api/session/([0-9a-f]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_session(req.matches[1]));
  });
  server.Post(R"(/api/session/([0-9a-f]+)/move)",
              [this, send](const httplib::Request& req, httplib::Response& res) {
                send(res, move(req.matches[1], req.body));
              });
  server.Get(R"(/api/session/([0-9a-f]+)/hints)",
             [this, send](const httplib::Request& req, httplib::Response& res) {
               send(res, hints(req.matches[1]));
             });
  server.Get("/api/sponge", [this, send](const httplib::Request& req, httplib::Response& res) {
    const Reply r = sponge(req.get_param_value("n"), req.get_param_value("m"));
    if (r.status == 200) res.set_header("Cache-Control", "public, max-age=86400");
    send(res, r);
  });
}

bool serve(const std::string& host, int port, ServiceConfig config) {
  Service service(std::move(config));
  httplib::Server server;
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace wythoff::service
