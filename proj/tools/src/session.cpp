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

#include "capstudio/tools/session.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "capstudio/errors.hpp"
#include "capstudio/semantic.hpp"

namespace capstudio::tools {

namespace {

double worst_row(const ConstraintSet& rows, const Capacity& c) {
  const auto coeffs = c.to_vector();
  const Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  return std::max(0.0, detail::worst_violation(rows, u));
}

double worst_monotonicity(const Capacity& c) {
  double worst = 0.0;
  for (const auto& v : validate(c, 0.0).violations) worst = std::max(worst, v.gap);
  return worst;
}

}  // namespace

StoredResult identify(const SessionInputs& inputs, std::string_view method) {
  const int n = inputs.n();
  if (method == "sugeno") {
    if (!inputs.densities) throw DomainError("session has no singleton densities");
    if (inputs.densities->n() != n) throw DimensionError("densities do not match the session criteria");
    auto result = identify_sugeno(*inputs.densities);
    const double worst = worst_monotonicity(result.capacity);
    return {0, 0, std::move(result), worst};
  }
  if (method == "learn") {
    auto result = identify_from_data(n, inputs.samples, inputs.preferences);
    ConstraintSet rows(n);
    rows.inequalities = monotonicity_constraints(n);
    rows.append(preference_constraints(n, inputs.preferences, inputs.samples));
    const double worst = worst_row(rows, result.capacity);
    return {0, 0, std::move(result), worst};
  }
  if (method == "semantic") {
    SemanticProblem problem;
    problem.n = n;
    problem.constraints = inputs.semantic.constraints;
    problem.intervals = inputs.semantic.intervals;
    problem.samples = inputs.samples;
    problem.preferences = inputs.preferences;
    auto result = identify_semantic(problem);
    ConstraintSet rows(n);
    rows.inequalities = monotonicity_constraints(n);
    rows.inequalities.append(semantic_constraints(n, problem.constraints));
    rows.inequalities.append(interval_constraints(n, problem.intervals, problem.samples));
    rows.append(preference_constraints(n, problem.preferences, problem.samples));
    const double worst = worst_row(rows, result.capacity);
    return {0, 0, std::move(result), worst};
  }
  throw DomainError("unknown identification method '" + std::string(method) + "'");
}

Session::Session(std::string id, std::vector<std::string> criteria) : id_(std::move(id)) {
  require_criterion_count(static_cast<int>(criteria.size()));
  inputs.criteria = std::move(criteria);
}

const StoredResult* Session::latest(std::string_view method) const {
  for (auto it = results.rbegin(); it != results.rend(); ++it)
    if (method.empty() || it->result.method == method) return &*it;
  return nullptr;
}

std::string SessionStore::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[24];
  std::snprintf(buf, sizeof buf, "%08llx%04llx", static_cast<unsigned long long>(rng() & 0xffffffffULL),
                static_cast<unsigned long long>(++counter_ & 0xffffULL));
  return buf;
}

std::shared_ptr<Session> SessionStore::create(std::vector<std::string> criteria) {
  std::lock_guard lock(mutex_);
  auto session = std::make_shared<Session>(fresh_id(), std::move(criteria));
  sessions_[session->id()] = session;
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

io::OrderedJson SessionStore::snapshot() const {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  io::OrderedJson doc = io::OrderedJson::array();
  for (const auto& s : all) {
    std::lock_guard lock(s->mutex);
    io::OrderedJson r;
    r["id"] = s->id();
    r["revision"] = s->revision;
    r["criteria"] = s->inputs.criteria;
    r["preferences"] = io::preferences_to_json(s->inputs.preferences);
    r["semantic"] = io::semantic_to_json(s->inputs.semantic);
    if (s->inputs.densities) r["densities"] = io::densities_to_json(*s->inputs.densities);
    r["samples"] = io::samples_to_json(s->inputs.samples);
    r["concepts"] = io::concepts_to_json({s->inputs.criteria, s->inputs.concepts})["concepts"];
    doc.push_back(std::move(r));
  }
  return doc;
}

void SessionStore::restore(const io::Json& doc) {
  if (!doc.is_array()) throw ParseError("session snapshot must be an array");
  std::map<std::string, std::shared_ptr<Session>> loaded;
  for (const auto& r : doc) {
    auto session = std::make_shared<Session>(r.at("id").get<std::string>(), r.at("criteria").get<std::vector<std::string>>());
    session->revision = r.at("revision").get<std::int64_t>();
    auto& in = session->inputs;
    in.preferences = io::preferences_from_json(r.at("preferences"));
    in.semantic = io::semantic_from_json(r.at("semantic"));
    if (r.contains("densities")) in.densities = io::densities_from_json(r["densities"]);
    in.samples = io::samples_from_json(r.at("samples"));
    in.concepts = io::concepts_from_json({{"criteria", in.criteria}, {"concepts", r.at("concepts")}}).concepts;
    loaded[session->id()] = std::move(session);
  }
  std::lock_guard lock(mutex_);
  sessions_ = std::move(loaded);
}

}  // namespace capstudio::tools
