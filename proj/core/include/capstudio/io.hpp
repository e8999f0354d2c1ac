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

#ifndef CAPSTUDIO_IO_HPP
#define CAPSTUDIO_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capstudio/capacity.hpp"
#include "capstudio/concept.hpp"
#include "capstudio/identification.hpp"
#include "capstudio/indices.hpp"
#include "capstudio/learn.hpp"
#include "capstudio/semantic.hpp"
#include "capstudio/sugeno.hpp"

namespace capstudio::io {

using Json = nlohmann::json;
/// Output documents keep insertion order so that emitted bytes are stable.
using OrderedJson = nlohmann::ordered_json;

/// Throws IoError when the file cannot be read or is not JSON.
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);
/// Two-space indentation and a trailing newline.
std::string dump(const OrderedJson& doc);

// Readers throw ParseError on schema violations and the module errors
// (DomainError, StructuralError, ...) on semantic ones.

/// {"n": int, "coefficients": {"1,3": 0.5, ...}}: keys are ascending
/// comma-joined members, the empty set is omitted, the full set is optional
/// and must equal 1 when given.
Capacity capacity_from_json(const Json& doc);
OrderedJson capacity_to_json(const Capacity& c);

/// The capacity format restricted to singleton keys.
SingletonDensities densities_from_json(const Json& doc);
OrderedJson densities_to_json(const SingletonDensities& d);

/// [{"f": [...], "y": number, "label": optional string}, ...]
std::vector<LearningSample> samples_from_json(const Json& doc);
OrderedJson samples_to_json(const std::vector<LearningSample>& samples);

/// [{"type": "ranking", "better", "worse", "margin"},
///  {"type": "shapley_order" | "shapley_equal", "i", "j", "margin"},
///  {"type": "interaction_order" | "interaction_equal", "first": [i, j], "second": [k, l], "margin"}]
PreferenceSpec preferences_from_json(const Json& doc);
OrderedJson preferences_to_json(const PreferenceSpec& spec);

struct SemanticInputs {
  std::vector<LinguisticConstraint> constraints;
  std::vector<IntervalScore> intervals;
};

/// Array of records {"kind", "a", "b", "term"} or {"kind", "a", "b", "lo", "hi"}
/// (optional "two_sided"), and interval records {"sample", "delta"}.
/// An object {"constraints": [...], "intervals": [...]} is accepted as well.
SemanticInputs semantic_from_json(const Json& doc);
OrderedJson semantic_to_json(const SemanticInputs& inputs);

struct ConceptSet {
  std::vector<std::string> criteria;
  std::vector<Concept> concepts;
};

/// {"criteria": [names], "concepts": [{"name", "values", "constraints_met", "attributes"}]}
/// where constraints_met is a bool or an array of bools, and attributes is an
/// optional free-form object describing the design.
ConceptSet concepts_from_json(const Json& doc);
OrderedJson concepts_to_json(const ConceptSet& set);

OrderedJson validation_to_json(const Capacity& c, const ValidationReport& report);
OrderedJson indices_to_json(const IndexReport& report);
OrderedJson pair_semantics_to_json(const PairSemantics& semantics);
OrderedJson two_additivity_to_json(const TwoAdditivityReport& report);
OrderedJson lambda_to_json(const LambdaSolution& lambda);
OrderedJson kkt_to_json(const KKTResiduals& kkt);
OrderedJson result_to_json(const IdentificationResult& result);
OrderedJson infeasibility_to_json(const InfeasibilityReport& report);
OrderedJson ranking_to_json(const std::vector<RankedConcept>& ranking);

}  // namespace capstudio::io

#endif  // CAPSTUDIO_IO_HPP
