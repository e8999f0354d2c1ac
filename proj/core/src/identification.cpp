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

#include "capstudio/identification.hpp"

#include <cstdio>
#include <sstream>

namespace capstudio {

const char* to_string(LambdaBranch branch) {
  switch (branch) {
    case LambdaBranch::negative:
      return "negative";
    case LambdaBranch::zero:
      return "zero";
    case LambdaBranch::positive:
      return "positive";
  }
  return "?";
}

std::string InfeasibilityReport::summary() const {
  std::ostringstream out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", max_violation);
  out << "constraints are infeasible (max violation " << buf << ")";
  if (!conflicting_subset.empty()) {
    out << "; conflicting:";
    for (const auto& s : conflicting_subset) out << " [" << s << "]";
  } else if (!most_violated.empty()) {
    out << "; most violated: " << most_violated.front().label;
  }
  return out.str();
}

}  // namespace capstudio
