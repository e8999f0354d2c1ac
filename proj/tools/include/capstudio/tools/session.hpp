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

#ifndef CAPSTUDIO_TOOLS_SESSION_HPP
#define CAPSTUDIO_TOOLS_SESSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capstudio/concept.hpp"
#include "capstudio/identification.hpp"
#include "capstudio/io.hpp"
#include "capstudio/learn.hpp"
#include "capstudio/sugeno.hpp"

namespace capstudio::tools {

/// Everything a client uploads into a session.
struct SessionInputs {
  std::vector<std::string> criteria;
  PreferenceSpec preferences;
  io::SemanticInputs semantic;
  std::optional<SingletonDensities> densities;
  std::vector<LearningSample> samples;
  std::vector<Concept> concepts;

  int n() const { return static_cast<int>(criteria.size()); }
};

struct StoredResult {
  int index;
  std::int64_t revision;  // session revision the result was computed at
  IdentificationResult result;
  /// Largest violation of any monotonicity or user row by the result.
  double max_violation;
};

/// Solves `method` ("sugeno", "learn" or "semantic") over the inputs. Throws
/// the core errors unchanged.
StoredResult identify(const SessionInputs& inputs, std::string_view method);

class Session {
 public:
  Session(std::string id, std::vector<std::string> criteria);

  const std::string& id() const { return id_; }

  /// Guards every member below.
  std::mutex mutex;
  std::int64_t revision = 1;
  SessionInputs inputs;
  std::vector<StoredResult> results;

  const StoredResult* latest(std::string_view method = {}) const;
  void touch() { ++revision; }

 private:
  std::string id_;
};

class SessionStore {
 public:
  std::shared_ptr<Session> create(std::vector<std::string> criteria);
  std::shared_ptr<Session> find(const std::string& id) const;
  bool erase(const std::string& id);

  /// Session inputs and revisions; identification results are not kept.
  io::OrderedJson snapshot() const;
  void restore(const io::Json& doc);

 private:
  std::string fresh_id();

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace capstudio::tools

#endif  // CAPSTUDIO_TOOLS_SESSION_HPP
