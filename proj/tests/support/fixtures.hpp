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

#ifndef CAPSTUDIO_TESTS_FIXTURES_HPP
#define CAPSTUDIO_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "capstudio/capacity.hpp"
#include "capstudio/io.hpp"
#include "capstudio/learn.hpp"

namespace capstudio::test {

std::string fixture_path(const std::string& name);
io::Json load_json(const std::string& name);
Capacity load_capacity(const std::string& name);
std::vector<LearningSample> load_samples();
PreferenceSpec load_preferences();
io::SemanticInputs load_semantic();
io::ConceptSet load_concepts();

}  // namespace capstudio::test

#endif  // CAPSTUDIO_TESTS_FIXTURES_HPP
