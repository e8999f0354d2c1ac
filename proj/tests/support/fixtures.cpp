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

#include "fixtures.hpp"

namespace capstudio::test {

std::string fixture_path(const std::string& name) { return std::string(CAPSTUDIO_FIXTURE_DIR) + "/" + name; }

io::Json load_json(const std::string& name) { return io::read_json_file(fixture_path(name)); }

Capacity load_capacity(const std::string& name) { return io::capacity_from_json(load_json(name)); }

std::vector<LearningSample> load_samples() { return io::samples_from_json(load_json("learning-samples.json")); }

PreferenceSpec load_preferences() { return io::preferences_from_json(load_json("learning-preferences.json")); }

io::SemanticInputs load_semantic() { return io::semantic_from_json(load_json("semantic-constraints.json")); }

io::ConceptSet load_concepts() { return io::concepts_from_json(load_json("design-concepts.json")); }

}  // namespace capstudio::test
