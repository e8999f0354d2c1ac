// Copyright 2026 The Capacity Studio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "capstudio/tools/service.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>

#include <httplib.h>

#include "capstudio/errors.hpp"
#include "capstudio/semantic.hpp"

namespace capstudio::tools {

namespace {

using httplib::Request;
using httplib::Response;
using io::OrderedJson;

constexpr double kSatisfactionTolerance = 1e-6;

struct HttpError {
  int status;
  std::string message;
};

void send(Response& res, int status, const OrderedJson& body, std::int64_t revision = -1) {
  res.status = status;
  if (revision >= 0) res.set_header("ETag", "\"" + std::to_string(revision) + "\"");
  res.set_content(io::dump(body), "application/json");
}

OrderedJson error_body(const std::string& message) {
  OrderedJson body;
  body["error"] = message;
  return body;
}

using Handler = std::function<void(const Request&, Response&)>;

/// Maps the core exceptions onto status codes.
httplib::Server::Handler guarded(Handler handler) {
  return [handler = std::move(handler)](const Request& req, Response& res) {
    try {
      handler(req, res);
    } catch (const HttpError& e) {
      send(res, e.status, error_body(e.message));
    } catch (const InfeasibleError& e) {
      OrderedJson body = error_body("infeasible");
      body["report"] = io::infeasibility_to_json(e.report());
      send(res, 422, body);
    } catch (const NumericError& e) {
      send(res, 500, error_body(e.what()));
    } catch (const Error& e) {
      send(res, 400, error_body(e.what()));
    } catch (const nlohmann::json::exception& e) {
      send(res, 400, error_body(e.what()));
    }
  };
}

io::Json body_json(const Request& req) {
  if (req.body.empty()) return io::Json::object();
  return io::parse_json(req.body);
}

/// Honors an If-Match header carrying the expected revision.
void check_precondition(const Request& req, const Session& session) {
  if (!req.has_header("If-Match")) return;
  auto tag = req.get_header_value("If-Match");
  if (tag == "*") return;
  if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
  if (tag != std::to_string(session.revision))
    throw HttpError{409, "revision conflict: session is at revision " + std::to_string(session.revision)};
}

OrderedJson result_summary(const Session& s, const StoredResult& r) {
  OrderedJson out;
  out["index"] = r.index;
  out["method"] = r.result.method;
  out["revision"] = r.revision;
  out["stale"] = r.revision != s.revision;
  return out;
}

OrderedJson session_json(const Session& s) {
  OrderedJson out;
  out["id"] = s.id();
  out["revision"] = s.revision;
  out["n"] = s.inputs.n();
  out["criteria"] = s.inputs.criteria;
  out["preferences"] = io::preferences_to_json(s.inputs.preferences);
  const auto semantic = io::semantic_to_json(s.inputs.semantic);
  out["constraints"] = semantic["constraints"];
  out["intervals"] = semantic["intervals"];
  out["densities"] = s.inputs.densities ? io::densities_to_json(*s.inputs.densities) : OrderedJson();
  out["samples"] = io::samples_to_json(s.inputs.samples);
  out["concepts"] = io::concepts_to_json({s.inputs.criteria, s.inputs.concepts})["concepts"];
  OrderedJson results = OrderedJson::array();
  for (const auto& r : s.results) results.push_back(result_summary(s, r));
  out["results"] = std::move(results);
  return out;
}

std::vector<std::string> criteria_from_body(const io::Json& body) {
  if (!body.is_object()) throw ParseError("session body must be an object");
  if (const auto it = body.find("criteria"); it != body.end()) {
    if (!it->is_array()) throw ParseError("criteria must be an array of names");
    std::vector<std::string> names;
    for (const auto& v : *it) {
      if (!v.is_string()) throw ParseError("criterion names must be strings");
      names.push_back(v.get<std::string>());
    }
    return names;
  }
  if (const auto it = body.find("n"); it != body.end()) {
    if (!it->is_number_integer()) throw ParseError("n must be an integer");
    const int n = it->get<int>();
    require_criterion_count(n);
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("C" + std::to_string(i));
    return names;
  }
  throw ParseError("session body needs 'criteria' or 'n'");
}

OrderedJson terms_json() {
  OrderedJson out;
  for (auto kind : {LinguisticKind::importance, LinguisticKind::dependence, LinguisticKind::synergy}) {
    OrderedJson list = OrderedJson::array();
    for (const auto& term : linguistic_terms(kind)) {
      const auto b = linguistic_to_bounds(kind, term);
      list.push_back({{"term", term}, {"lo", b.lo}, {"hi", b.hi}});
    }
    const auto range = admissible_range(kind);
    out[to_string(kind)] = {{"terms", std::move(list)}, {"range", {range.lo, range.hi}}};
  }
  return out;
}

}  // namespace

ServiceConfig config_from_environment(ServiceConfig base) {
  if (const char* port = std::getenv("CAPACITY_STUDIO_PORT")) base.port = std::atoi(port);
  if (const char* tol = std::getenv("CAPACITY_STUDIO_TOL")) base.tolerance = std::strtod(tol, nullptr);
  return base;
}

Service::Service(ServiceConfig config) : config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  if (!config_.snapshot.empty() && std::filesystem::exists(config_.snapshot))
    store_.restore(io::read_json_file(config_.snapshot));
  routes();
  if (!config_.static_dir.empty()) server_->set_mount_point("/", config_.static_dir.string());
}

Service::~Service() = default;

int Service::bind() {
  if (config_.port == 0) return server_->bind_to_any_port(config_.host);
  return server_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
}

bool Service::listen() { return server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

void Service::save_snapshot() {
  if (config_.snapshot.empty()) return;
  std::lock_guard lock(snapshot_mutex_);
  const auto tmp = config_.snapshot.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << io::dump(store_.snapshot());
  }
  std::filesystem::rename(tmp, config_.snapshot);
}

void Service::routes() {
  auto& srv = *server_;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type, If-Match"},
                           {"Access-Control-Expose-Headers", "ETag"}});
  srv.Options(R"(/.*)", [](const Request&, Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
    res.status = 204;
  });

  auto session_of = [this](const Request& req) {
    auto s = store_.find(req.matches[1]);
    if (!s) throw HttpError{404, "unknown session '" + std::string(req.matches[1]) + "'"};
    return s;
  };

  srv.Get("/linguistic-terms", guarded([](const Request&, Response& res) { send(res, 200, terms_json()); }));

  srv.Post("/sessions", guarded([this](const Request& req, Response& res) {
    auto s = store_.create(criteria_from_body(body_json(req)));
    {
      std::lock_guard lock(s->mutex);
      send(res, 201, session_json(*s), s->revision);
    }
    save_snapshot();
  }));

  srv.Get(R"(/sessions/([^/]+))", guarded([session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    std::lock_guard lock(s->mutex);
    send(res, 200, session_json(*s), s->revision);
  }));

  srv.Delete(R"(/sessions/([^/]+))", guarded([this, session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    std::int64_t revision = 0;
    {
      std::lock_guard lock(s->mutex);
      check_precondition(req, *s);
      revision = s->revision;
    }
    store_.erase(s->id());
    OrderedJson body;
    body["deleted"] = s->id();
    body["revision"] = revision;
    send(res, 200, body, revision);
    save_snapshot();
  }));

  srv.Put(R"(/sessions/([^/]+)/constraints)", guarded([this, session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    const auto body = body_json(req);
    if (!body.is_object()) throw ParseError("constraint body must be an object");
    for (const auto& [key, value] : body.items())
      if (key != "preferences" && key != "constraints" && key != "intervals" && key != "densities")
        throw ParseError("constraint body: unknown key '" + key + "'");
    {
      std::lock_guard lock(s->mutex);
      check_precondition(req, *s);
      const int n = s->inputs.n();
      PreferenceSpec preferences;
      if (body.contains("preferences")) preferences = io::preferences_from_json(body["preferences"]);
      // Samples may arrive later, so rankings are checked against the largest
      // index they reference rather than the current sample count.
      int referenced = 0;
      for (const auto& r : preferences.rankings) referenced = std::max({referenced, r.better, r.worse});
      preferences.check(n, referenced);
      io::Json semantic = io::Json::object();
      if (body.contains("constraints")) semantic["constraints"] = body["constraints"];
      if (body.contains("intervals")) semantic["intervals"] = body["intervals"];
      auto inputs = io::semantic_from_json(semantic);
      semantic_constraints(n, inputs.constraints);
      std::optional<SingletonDensities> densities;
      if (body.contains("densities")) {
        densities = io::densities_from_json(body["densities"]);
        if (densities->n() != n) throw DimensionError("densities do not match the session criteria");
      }
      s->inputs.preferences = std::move(preferences);
      s->inputs.semantic = std::move(inputs);
      s->inputs.densities = std::move(densities);
      s->touch();
      send(res, 200, session_json(*s), s->revision);
    }
    save_snapshot();
  }));

  srv.Post(R"(/sessions/([^/]+)/samples)", guarded([this, session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    auto samples = io::samples_from_json(body_json(req));
    {
      std::lock_guard lock(s->mutex);
      check_precondition(req, *s);
      if (!samples.empty() && samples.front().f.size() != s->inputs.n())
        throw DimensionError("samples do not match the session criteria");
      s->inputs.samples = std::move(samples);
      s->touch();
      send(res, 200, session_json(*s), s->revision);
    }
    save_snapshot();
  }));

  srv.Post(R"(/sessions/([^/]+)/concepts)", guarded([this, session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    auto body = body_json(req);
    {
      std::lock_guard lock(s->mutex);
      check_precondition(req, *s);
      if (body.is_object() && !body.contains("criteria")) body["criteria"] = s->inputs.criteria;
      auto set = io::concepts_from_json(body);
      if (static_cast<int>(set.criteria.size()) != s->inputs.n())
        throw DimensionError("concepts do not match the session criteria");
      s->inputs.concepts = std::move(set.concepts);
      s->touch();
      send(res, 200, session_json(*s), s->revision);
    }
    save_snapshot();
  }));

  srv.Post(R"(/sessions/([^/]+)/identify)", guarded([this, session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    if (!req.has_param("method")) throw HttpError{400, "missing query parameter 'method'"};
    const auto method = req.get_param_value("method");
    std::lock_guard lock(s->mutex);
    check_precondition(req, *s);
    auto stored = identify(s->inputs, method);
    const auto report = validate(stored.result.capacity, config_.tolerance);
    if (!report.ok()) throw NumericError("identified capacity failed validation");
    stored.index = static_cast<int>(s->results.size());
    stored.revision = s->revision;
    auto body = io::result_to_json(stored.result);
    body["revision"] = s->revision;
    body["result_index"] = stored.index;
    body["constraint_report"] = {{"max_violation", stored.max_violation},
                                 {"satisfied", stored.max_violation <= kSatisfactionTolerance}};
    s->results.push_back(std::move(stored));
    send(res, 200, body, s->revision);
  }));

  srv.Get(R"(/sessions/([^/]+)/results)", guarded([session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    std::lock_guard lock(s->mutex);
    OrderedJson list = OrderedJson::array();
    for (const auto& r : s->results) list.push_back(result_summary(*s, r));
    OrderedJson body;
    body["revision"] = s->revision;
    body["results"] = std::move(list);
    send(res, 200, body, s->revision);
  }));

  srv.Get(R"(/sessions/([^/]+)/results/(\d+))", guarded([session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    std::lock_guard lock(s->mutex);
    const auto k = std::stoul(req.matches[2]);
    if (k >= s->results.size()) throw HttpError{404, "no result " + std::string(req.matches[2])};
    const auto& r = s->results[k];
    auto body = result_summary(*s, r);
    body["result"] = io::result_to_json(r.result);
    body["max_violation"] = r.max_violation;
    send(res, 200, body, s->revision);
  }));

  srv.Get(R"(/sessions/([^/]+)/indices)", guarded([session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    std::lock_guard lock(s->mutex);
    const auto method = req.has_param("method") ? req.get_param_value("method") : std::string();
    const auto* r = s->latest(method);
    if (!r) throw HttpError{404, "no identification result yet"};
    auto body = result_summary(*s, *r);
    body["indices"] = io::indices_to_json(r->result.indices);
    body["pair_semantics"] = io::pair_semantics_to_json(classify_pairs(r->result.capacity));
    body["two_additivity"] = io::two_additivity_to_json(is_two_additive(r->result.capacity));
    body["session_revision"] = s->revision;
    send(res, 200, body, s->revision);
  }));

  srv.Post(R"(/sessions/([^/]+)/rank)", guarded([session_of](const Request& req, Response& res) {
    auto s = session_of(req);
    const auto body = body_json(req);
    std::lock_guard lock(s->mutex);
    if (s->inputs.concepts.empty()) throw HttpError{400, "session has no concepts"};
    std::optional<Capacity> capacity;
    std::string source;
    if (body.is_object() && body.contains("capacity")) {
      capacity = io::capacity_from_json(body["capacity"]);
      source = "uploaded";
    } else {
      std::string method;
      if (body.is_object() && body.contains("method")) method = body["method"].get<std::string>();
      const auto* r = s->latest(method);
      if (!r) throw HttpError{404, "no identification result to rank with"};
      capacity = r->result.capacity;
      source = r->result.method;
    }
    OrderedJson out;
    out["revision"] = s->revision;
    out["capacity_source"] = source;
    out["ranking"] = io::ranking_to_json(rank_concepts(*capacity, s->inputs.concepts));
    send(res, 200, out, s->revision);
  }));
}

}  // namespace capstudio::tools
