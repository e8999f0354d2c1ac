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

#include "capstudio/io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string_view>

#include "capstudio/errors.hpp"

namespace capstudio::io {

namespace {

void require_object(const Json& doc, std::string_view what) {
  if (!doc.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
}

void require_array(const Json& doc, std::string_view what) {
  if (!doc.is_array()) throw ParseError(std::string(what) + " must be a JSON array");
}

void allow_keys(const Json& doc, std::initializer_list<std::string_view> allowed, std::string_view what) {
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError(std::string(what) + ": unknown key '" + key + "'");
  }
}

const Json& field(const Json& doc, const char* key, std::string_view what) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double number(const Json& v, std::string_view what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
  return x;
}

int integer(const Json& v, std::string_view what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::vector<int> integers(const Json& v, std::string_view what) {
  require_array(v, what);
  std::vector<int> out;
  for (const auto& x : v) out.push_back(integer(x, what));
  return out;
}

std::vector<double> numbers(const Json& v, std::string_view what) {
  require_array(v, what);
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

std::optional<double> optional_number(const Json& doc, const char* key, std::string_view what) {
  const auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  return number(*it, std::string(what) + " " + key);
}

CriterionPair pair(const Json& v, std::string_view what) {
  const auto members = integers(v, what);
  if (members.size() != 2) throw ParseError(std::string(what) + " must list two criteria");
  return {members[0], members[1]};
}

OrderedJson pair_json(const CriterionPair& p) { return OrderedJson::array({p.i, p.j}); }

/// Parses "1,3,5" into a mask; members must be ascending and within 1..n.
CriterionSet::Mask parse_key(const std::string& key, int n) {
  CriterionSet::Mask mask = 0;
  int previous = 0;
  std::stringstream in(key);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(' ');
    const auto last = token.find_last_not_of(' ');
    if (first == std::string::npos) throw ParseError("capacity key '" + key + "' is malformed");
    token = token.substr(first, last - first + 1);
    std::size_t used = 0;
    int member = 0;
    try {
      member = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw ParseError("capacity key '" + key + "' is malformed");
    }
    if (used != token.size()) throw ParseError("capacity key '" + key + "' is malformed");
    if (member < 1 || member > n) throw ParseError("capacity key '" + key + "' names a criterion outside 1.." + std::to_string(n));
    if (member <= previous) throw ParseError("capacity key '" + key + "' must list ascending distinct criteria");
    previous = member;
    mask |= CriterionSet::Mask{1} << (member - 1);
  }
  if (mask == 0) throw ParseError("capacity key '" + key + "' is malformed");
  return mask;
}

std::string key_of(int n, CriterionSet::Mask mask) {
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (!(mask >> (i - 1) & 1u)) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

int read_n(const Json& doc) {
  const int n = integer(field(doc, "n", "capacity"), "capacity n");
  require_criterion_count(n);
  return n;
}

LinguisticConstraint constraint_from_json(const Json& r) {
  allow_keys(r, {"kind", "a", "b", "term", "lo", "hi", "two_sided"}, "linguistic constraint");
  const auto kind_value = field(r, "kind", "linguistic constraint");
  if (!kind_value.is_string()) throw ParseError("linguistic constraint kind must be a string");
  const auto kind = parse_linguistic_kind(kind_value.get<std::string>());
  auto a = integers(field(r, "a", "linguistic constraint"), "linguistic constraint a");
  auto b = integers(field(r, "b", "linguistic constraint"), "linguistic constraint b");
  const bool has_term = r.contains("term");
  const bool has_bounds = r.contains("lo") || r.contains("hi");
  if (has_term == has_bounds) throw ParseError("linguistic constraint needs either a term or lo/hi bounds");
  LinguisticConstraint out = [&] {
    if (has_term) {
      if (!r["term"].is_string()) throw ParseError("linguistic constraint term must be a string");
      return LinguisticConstraint::from_term(kind, std::move(a), std::move(b), r["term"].get<std::string>());
    }
    return LinguisticConstraint::from_bounds(kind, std::move(a), std::move(b),
                                             number(field(r, "lo", "linguistic constraint"), "lo"),
                                             number(field(r, "hi", "linguistic constraint"), "hi"));
  }();
  if (const auto it = r.find("two_sided"); it != r.end()) {
    if (!it->is_boolean()) throw ParseError("two_sided must be a boolean");
    out.two_sided = it->get<bool>();
  }
  return out;
}

IntervalScore interval_from_json(const Json& r) {
  allow_keys(r, {"sample", "delta"}, "interval score");
  IntervalScore out{integer(field(r, "sample", "interval score"), "interval sample")};
  if (const auto delta = optional_number(r, "delta", "interval score")) out.delta = *delta;
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw IoError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

Capacity capacity_from_json(const Json& doc) {
  require_object(doc, "capacity");
  allow_keys(doc, {"n", "coefficients"}, "capacity");
  const int n = read_n(doc);
  const auto& coefficients = field(doc, "coefficients", "capacity");
  require_object(coefficients, "capacity coefficients");
  const auto full = CriterionSet::full_mask(n);
  std::vector<std::optional<double>> by_mask(std::size_t{1} << n);
  for (const auto& [key, value] : coefficients.items()) {
    const auto mask = parse_key(key, n);
    const double v = number(value, "coefficient " + key);
    if (v < 0.0 || v > 1.0) throw ParseError("coefficient " + key + " lies outside [0, 1]");
    if (mask == full && std::abs(v - 1.0) > 1e-12) throw ParseError("coefficient of the full set must equal 1");
    by_mask[mask] = v;
  }
  return Capacity::from_partial(n, by_mask);
}

OrderedJson capacity_to_json(const Capacity& c) {
  OrderedJson coefficients = OrderedJson::object();
  for (const auto mask : canonical_masks(c.n())) coefficients[key_of(c.n(), mask)] = c[mask];
  const auto full = CriterionSet::full_mask(c.n());
  coefficients[key_of(c.n(), full)] = c[full];
  OrderedJson doc;
  doc["n"] = c.n();
  doc["coefficients"] = std::move(coefficients);
  return doc;
}

SingletonDensities densities_from_json(const Json& doc) {
  require_object(doc, "densities");
  allow_keys(doc, {"n", "coefficients"}, "densities");
  const int n = read_n(doc);
  const auto& coefficients = field(doc, "coefficients", "densities");
  require_object(coefficients, "density coefficients");
  std::vector<std::optional<double>> values(static_cast<std::size_t>(n));
  for (const auto& [key, value] : coefficients.items()) {
    const auto mask = parse_key(key, n);
    if (std::popcount(mask) != 1) throw ParseError("density key '" + key + "' is not a singleton");
    values[static_cast<std::size_t>(std::countr_zero(mask))] = number(value, "density " + key);
  }
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    if (!values[static_cast<std::size_t>(i)]) throw ParseError("density of criterion " + std::to_string(i + 1) + " is missing");
    out.push_back(*values[static_cast<std::size_t>(i)]);
  }
  return SingletonDensities(std::move(out));
}

OrderedJson densities_to_json(const SingletonDensities& d) {
  OrderedJson coefficients = OrderedJson::object();
  for (int i = 0; i < d.n(); ++i) coefficients[std::to_string(i + 1)] = d[i];
  OrderedJson doc;
  doc["n"] = d.n();
  doc["coefficients"] = std::move(coefficients);
  return doc;
}

std::vector<LearningSample> samples_from_json(const Json& doc) {
  require_array(doc, "learning samples");
  std::vector<LearningSample> out;
  for (const auto& r : doc) {
    require_object(r, "learning sample");
    allow_keys(r, {"f", "y", "label"}, "learning sample");
    auto f = numbers(field(r, "f", "learning sample"), "sample f");
    const double y = number(field(r, "y", "learning sample"), "sample y");
    if (y < 0.0 || y > 1.0) throw DomainError("sample y must lie in [0, 1]");
    std::string label;
    if (const auto it = r.find("label"); it != r.end()) {
      if (!it->is_string()) throw ParseError("sample label must be a string");
      label = it->get<std::string>();
    }
    if (!out.empty() && static_cast<int>(f.size()) != out.front().f.size())
      throw DimensionError("learning samples differ in criterion count");
    out.push_back({CriteriaVector(std::move(f)), y, std::move(label)});
  }
  return out;
}

OrderedJson samples_to_json(const std::vector<LearningSample>& samples) {
  OrderedJson out = OrderedJson::array();
  for (const auto& s : samples) {
    OrderedJson r;
    r["f"] = std::vector<double>(s.f.values().begin(), s.f.values().end());
    r["y"] = s.y;
    if (!s.label.empty()) r["label"] = s.label;
    out.push_back(std::move(r));
  }
  return out;
}

PreferenceSpec preferences_from_json(const Json& doc) {
  require_array(doc, "preferences");
  PreferenceSpec spec;
  for (const auto& r : doc) {
    require_object(r, "preference");
    const auto& type_value = field(r, "type", "preference");
    if (!type_value.is_string()) throw ParseError("preference type must be a string");
    const auto type = type_value.get<std::string>();
    const auto margin = optional_number(r, "margin", "preference");
    if (type == "ranking") {
      allow_keys(r, {"type", "better", "worse", "margin"}, "ranking preference");
      spec.rankings.push_back({integer(field(r, "better", type), "better"), integer(field(r, "worse", type), "worse"),
                               margin.value_or(kDefaultRankingMargin)});
    } else if (type == "shapley_order") {
      allow_keys(r, {"type", "i", "j", "margin"}, "shapley order");
      spec.shapley_orders.push_back(
          {integer(field(r, "i", type), "i"), integer(field(r, "j", type), "j"), margin.value_or(kDefaultOrderMargin)});
    } else if (type == "shapley_equal") {
      allow_keys(r, {"type", "i", "j"}, "shapley equality");
      spec.shapley_equalities.push_back({integer(field(r, "i", type), "i"), integer(field(r, "j", type), "j")});
    } else if (type == "interaction_order") {
      allow_keys(r, {"type", "first", "second", "margin"}, "interaction order");
      spec.interaction_orders.push_back({pair(field(r, "first", type), "first"), pair(field(r, "second", type), "second"),
                                         margin.value_or(kDefaultOrderMargin)});
    } else if (type == "interaction_equal") {
      allow_keys(r, {"type", "first", "second"}, "interaction equality");
      spec.interaction_equalities.push_back(
          {pair(field(r, "first", type), "first"), pair(field(r, "second", type), "second")});
    } else {
      throw ParseError("unknown preference type '" + type + "'");
    }
  }
  return spec;
}

OrderedJson preferences_to_json(const PreferenceSpec& spec) {
  OrderedJson out = OrderedJson::array();
  for (const auto& p : spec.rankings)
    out.push_back({{"type", "ranking"}, {"better", p.better}, {"worse", p.worse}, {"margin", p.margin}});
  for (const auto& p : spec.shapley_orders)
    out.push_back({{"type", "shapley_order"}, {"i", p.i}, {"j", p.j}, {"margin", p.margin}});
  for (const auto& p : spec.shapley_equalities) out.push_back({{"type", "shapley_equal"}, {"i", p.i}, {"j", p.j}});
  for (const auto& p : spec.interaction_orders)
    out.push_back({{"type", "interaction_order"},
                   {"first", pair_json(p.first)},
                   {"second", pair_json(p.second)},
                   {"margin", p.margin}});
  for (const auto& p : spec.interaction_equalities)
    out.push_back({{"type", "interaction_equal"}, {"first", pair_json(p.first)}, {"second", pair_json(p.second)}});
  return out;
}

SemanticInputs semantic_from_json(const Json& doc) {
  SemanticInputs out;
  if (doc.is_object()) {
    allow_keys(doc, {"constraints", "intervals"}, "semantic inputs");
    if (const auto it = doc.find("constraints"); it != doc.end()) {
      require_array(*it, "constraints");
      for (const auto& r : *it) {
        require_object(r, "linguistic constraint");
        out.constraints.push_back(constraint_from_json(r));
      }
    }
    if (const auto it = doc.find("intervals"); it != doc.end()) {
      require_array(*it, "intervals");
      for (const auto& r : *it) {
        require_object(r, "interval score");
        out.intervals.push_back(interval_from_json(r));
      }
    }
    return out;
  }
  require_array(doc, "semantic inputs");
  for (const auto& r : doc) {
    require_object(r, "semantic record");
    if (r.contains("sample")) out.intervals.push_back(interval_from_json(r));
    else out.constraints.push_back(constraint_from_json(r));
  }
  return out;
}

OrderedJson semantic_to_json(const SemanticInputs& inputs) {
  OrderedJson constraints = OrderedJson::array();
  for (const auto& c : inputs.constraints) {
    OrderedJson r;
    r["kind"] = to_string(c.kind);
    r["a"] = c.a;
    r["b"] = c.b;
    if (!c.term.empty()) {
      r["term"] = c.term;
    } else {
      r["lo"] = c.bounds.lo;
      r["hi"] = c.bounds.hi;
    }
    r["two_sided"] = c.two_sided;
    constraints.push_back(std::move(r));
  }
  OrderedJson intervals = OrderedJson::array();
  for (const auto& s : inputs.intervals) intervals.push_back({{"sample", s.sample}, {"delta", s.delta}});
  OrderedJson doc;
  doc["constraints"] = std::move(constraints);
  doc["intervals"] = std::move(intervals);
  return doc;
}

ConceptSet concepts_from_json(const Json& doc) {
  require_object(doc, "concepts file");
  allow_keys(doc, {"criteria", "concepts"}, "concepts file");
  ConceptSet out;
  const auto& criteria = field(doc, "criteria", "concepts file");
  require_array(criteria, "criteria");
  for (const auto& name : criteria) {
    if (!name.is_string()) throw ParseError("criterion names must be strings");
    out.criteria.push_back(name.get<std::string>());
  }
  require_criterion_count(static_cast<int>(out.criteria.size()));
  const auto& concepts = field(doc, "concepts", "concepts file");
  require_array(concepts, "concepts");
  for (const auto& r : concepts) {
    require_object(r, "concept");
    allow_keys(r, {"name", "values", "constraints_met", "attributes"}, "concept");
    const auto& name = field(r, "name", "concept");
    if (!name.is_string()) throw ParseError("concept name must be a string");
    auto values = numbers(field(r, "values", "concept"), "concept values");
    if (values.size() != out.criteria.size())
      throw DimensionError("concept '" + name.get<std::string>() + "' does not match the criteria list");
    std::vector<bool> met;
    if (const auto it = r.find("constraints_met"); it != r.end()) {
      if (it->is_boolean()) {
        met.push_back(it->get<bool>());
      } else {
        require_array(*it, "constraints_met");
        for (const auto& g : *it) {
          if (!g.is_boolean()) throw ParseError("constraints_met entries must be booleans");
          met.push_back(g.get<bool>());
        }
      }
    }
    if (const auto it = r.find("attributes"); it != r.end()) require_object(*it, "concept attributes");
    out.concepts.push_back({name.get<std::string>(), CriteriaVector(std::move(values)), std::move(met)});
  }
  return out;
}

OrderedJson concepts_to_json(const ConceptSet& set) {
  OrderedJson concepts = OrderedJson::array();
  for (const auto& c : set.concepts) {
    OrderedJson r;
    r["name"] = c.name;
    r["values"] = std::vector<double>(c.values.values().begin(), c.values.values().end());
    r["constraints_met"] = c.constraints_met;
    concepts.push_back(std::move(r));
  }
  OrderedJson doc;
  doc["criteria"] = set.criteria;
  doc["concepts"] = std::move(concepts);
  return doc;
}

OrderedJson validation_to_json(const Capacity& c, const ValidationReport& report) {
  OrderedJson violations = OrderedJson::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"subset", v.subset.key()},
                          {"superset", v.superset.key()},
                          {"subset_value", c.value(v.subset)},
                          {"superset_value", c.value(v.superset)},
                          {"gap", v.gap}});
  }
  OrderedJson doc;
  doc["valid"] = report.ok();
  doc["violations"] = std::move(violations);
  return doc;
}

OrderedJson indices_to_json(const IndexReport& report) {
  OrderedJson interactions = OrderedJson::array();
  const int n = static_cast<int>(report.shapley.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) interactions.push_back({{"i", i + 1}, {"j", j + 1}, {"value", report.interactions(i, j)}});
  OrderedJson doc;
  doc["shapley"] = report.shapley;
  doc["scaled_shapley"] = report.scaled_shapley;
  doc["interactions"] = std::move(interactions);
  return doc;
}

OrderedJson pair_semantics_to_json(const PairSemantics& semantics) {
  OrderedJson pairs = OrderedJson::array();
  for (const auto& p : semantics.pairs)
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"label", to_string(p.label)}, {"excess", p.excess}});
  OrderedJson doc;
  doc["pairs"] = std::move(pairs);
  doc["veto"] = semantics.veto;
  doc["pass"] = semantics.pass;
  doc["pair_tolerance"] = semantics.pair_tolerance;
  doc["effect_tolerance"] = semantics.effect_tolerance;
  return doc;
}

OrderedJson two_additivity_to_json(const TwoAdditivityReport& report) {
  OrderedJson doc;
  doc["two_additive"] = report.two_additive;
  doc["normality"] = report.normality;
  doc["nonnegativity"] = report.nonnegativity;
  doc["monotonicity"] = report.monotonicity;
  doc["extension"] = report.extension;
  return doc;
}

OrderedJson lambda_to_json(const LambdaSolution& lambda) {
  OrderedJson doc;
  doc["lambda"] = lambda.lambda;
  doc["branch"] = to_string(lambda.branch);
  doc["residual"] = lambda.residual;
  doc["iterations"] = lambda.iterations;
  return doc;
}

OrderedJson kkt_to_json(const KKTResiduals& kkt) {
  OrderedJson doc;
  doc["stationarity"] = kkt.stationarity;
  doc["primal_feasibility"] = kkt.primal_feasibility;
  doc["complementarity"] = kkt.complementarity;
  doc["dual_feasibility"] = kkt.dual_feasibility;
  return doc;
}

OrderedJson result_to_json(const IdentificationResult& result) {
  OrderedJson doc;
  doc["method"] = result.method;
  doc["capacity"] = capacity_to_json(result.capacity);
  doc["indices"] = indices_to_json(result.indices);
  if (result.lambda) doc["lambda"] = lambda_to_json(*result.lambda);
  if (result.fit_error) doc["fit_error"] = *result.fit_error;
  if (result.distance) doc["distance"] = *result.distance;
  if (result.status) {
    doc["status"] = to_string(*result.status);
    doc["kkt"] = kkt_to_json(result.kkt);
    doc["iterations"] = result.iterations;
    doc["active_constraints"] = result.active_constraints;
  }
  doc["warnings"] = result.warnings;
  return doc;
}

OrderedJson infeasibility_to_json(const InfeasibilityReport& report) {
  OrderedJson violated = OrderedJson::array();
  for (const auto& v : report.most_violated) violated.push_back({{"label", v.label}, {"violation", v.violation}});
  OrderedJson doc;
  doc["max_violation"] = report.max_violation;
  doc["most_violated"] = std::move(violated);
  doc["conflicting_subset"] = report.conflicting_subset;
  return doc;
}

OrderedJson ranking_to_json(const std::vector<RankedConcept>& ranking) {
  OrderedJson out = OrderedJson::array();
  int position = 1;
  for (const auto& r : ranking) out.push_back({{"rank", position++}, {"name", r.name}, {"score", r.score}});
  return out;
}

}  // namespace capstudio::io
