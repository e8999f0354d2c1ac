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

#include "capstudio/tools/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capstudio/errors.hpp"
#include "capstudio/io.hpp"
#include "capstudio/semantic.hpp"
#include "capstudio/tools/service.hpp"

namespace capstudio::tools {

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string set_name(const CriterionSet& s) { return "{" + s.key() + "}"; }

double default_tolerance() {
  if (const char* tol = std::getenv("CAPACITY_STUDIO_TOL")) return std::strtod(tol, nullptr);
  return kValidityTolerance;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void print_capacity(std::ostream& out, const Capacity& c) {
  for (const auto mask : canonical_masks(c.n()))
    out << "  mu(" << set_name(CriterionSet(c.n(), mask)) << ") = " << fixed(c[mask]) << "\n";
}

void print_shapley(std::ostream& out, const IndexReport& report) {
  out << "Shapley importance:\n";
  for (std::size_t i = 0; i < report.shapley.size(); ++i)
    out << "  phi(" << i + 1 << ") = " << fixed(report.shapley[i]) << "   n*phi = " << fixed(report.scaled_shapley[i])
        << "\n";
}

struct Options {
  bool json = false;
  std::string capacity;
  std::string concepts;
  std::string input;
  std::string samples;
  std::string preferences;
  std::string output;
  double tolerance = default_tolerance();
  double pair_tolerance = kUserTolerance;
  ServiceConfig service = config_from_environment();
};

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto c = io::capacity_from_json(io::read_json_file(o.capacity));
  const auto report = validate(c, o.tolerance);
  if (o.json) out << io::dump(io::validation_to_json(c, report));
  for (const auto& v : report.violations)
    err << "monotonicity violated: mu(" << set_name(v.subset) << ") = " << c.value(v.subset) << " > mu("
        << set_name(v.superset) << ") = " << c.value(v.superset) << "\n";
  if (!report.ok()) return kExitValidation;
  if (!o.json) out << "valid capacity on " << c.n() << " criteria\n";
  return kExitOk;
}

io::ConceptSet load_concepts(const std::string& path) { return io::concepts_from_json(io::read_json_file(path)); }

Capacity load_valid_capacity(const std::string& path) {
  auto c = io::capacity_from_json(io::read_json_file(path));
  c.require_valid();
  return c;
}

int cmd_aggregate(const Options& o, std::ostream& out) {
  const auto c = load_valid_capacity(o.capacity);
  const auto set = load_concepts(o.concepts);
  io::OrderedJson list = io::OrderedJson::array();
  for (const auto& concept_entry : set.concepts) {
    const double score = gcs(c, concept_entry);
    if (o.json) list.push_back({{"name", concept_entry.name}, {"score", score}});
    else out << concept_entry.name << "\t" << fixed(score) << "\n";
  }
  if (o.json) out << io::dump(list);
  return kExitOk;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const auto c = load_valid_capacity(o.capacity);
  const auto set = load_concepts(o.concepts);
  const auto ranking = rank_concepts(c, set.concepts);
  if (o.json) {
    out << io::dump(io::ranking_to_json(ranking));
  } else {
    int position = 1;
    for (const auto& r : ranking) out << position++ << ". " << r.name << "\t" << fixed(r.score) << "\n";
  }
  return kExitOk;
}

int cmd_indices(const Options& o, std::ostream& out) {
  const auto c = load_valid_capacity(o.capacity);
  const auto report = index_report(c);
  const auto pairs = classify_pairs(c, o.pair_tolerance);
  const auto two = is_two_additive(c, o.tolerance);
  if (o.json) {
    io::OrderedJson doc;
    doc["indices"] = io::indices_to_json(report);
    doc["pair_semantics"] = io::pair_semantics_to_json(pairs);
    doc["two_additivity"] = io::two_additivity_to_json(two);
    out << io::dump(doc);
    return kExitOk;
  }
  print_shapley(out, report);
  out << "Interactions:\n";
  for (const auto& p : pairs.pairs)
    out << "  I(" << p.i << "," << p.j << ") = " << fixed(report.interactions(p.i - 1, p.j - 1), 5) << "   "
        << to_string(p.label) << "\n";
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (int i : v) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s.empty() ? std::string("none") : s;
  };
  out << "Veto criteria: " << list(pairs.veto) << "\n";
  out << "Pass criteria: " << list(pairs.pass) << "\n";
  out << "2-additive: " << (two.two_additive ? "yes" : "no") << "\n";
  return kExitOk;
}

void emit_result(const Options& o, const IdentificationResult& r, std::ostream& out) {
  if (!o.output.empty()) write_file(o.output, io::dump(io::capacity_to_json(r.capacity)));
  if (o.json) {
    out << io::dump(io::result_to_json(r));
    return;
  }
  if (r.lambda) out << "lambda = " << fixed(r.lambda->lambda) << " (" << to_string(r.lambda->branch) << " branch)\n";
  if (r.fit_error) out << "fit error E = " << fixed(*r.fit_error, 6) << "\n";
  if (r.distance) out << "distance to equidistributed = " << fixed(*r.distance, 6) << "\n";
  if (r.status) out << "solver: " << to_string(*r.status) << " after " << r.iterations << " working-set changes\n";
  out << "Capacity:\n";
  print_capacity(out, r.capacity);
  print_shapley(out, r.indices);
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

int cmd_identify_sugeno(const Options& o, std::ostream& out) {
  const auto d = io::densities_from_json(io::read_json_file(o.input));
  emit_result(o, identify_sugeno(d), out);
  return kExitOk;
}

PreferenceSpec load_preferences(const Options& o) {
  return o.preferences.empty() ? PreferenceSpec{} : io::preferences_from_json(io::read_json_file(o.preferences));
}

int cmd_identify_learn(const Options& o, std::ostream& out, std::ostream& err) {
  const auto samples = io::samples_from_json(io::read_json_file(o.input));
  if (samples.empty()) throw DomainError("learning needs at least one sample");
  const auto result = identify_from_data(samples.front().f.size(), samples, load_preferences(o));
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  emit_result(o, result, out);
  return kExitOk;
}

int cmd_identify_semantic(const Options& o, std::ostream& out, int n) {
  const auto inputs = io::semantic_from_json(io::read_json_file(o.input));
  SemanticProblem problem;
  problem.constraints = inputs.constraints;
  problem.intervals = inputs.intervals;
  if (!o.samples.empty()) problem.samples = io::samples_from_json(io::read_json_file(o.samples));
  problem.preferences = load_preferences(o);
  problem.n = n > 0 ? n : (!problem.samples.empty() ? problem.samples.front().f.size() : 0);
  if (problem.n == 0) throw DomainError("semantic identification needs --n or --samples");
  emit_result(o, identify_semantic(problem), out);
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  Service service(o.service);
  const int port = service.bind();
  if (port < 0) throw IoError("cannot bind " + o.service.host + ":" + std::to_string(o.service.port));
  out << "capstudio listening on http://" << o.service.host << ":" << port << "\n" << std::flush;
  return service.listen() ? kExitOk : kExitIo;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity identification and Choquet evaluation toolkit", "capstudio"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  int semantic_n = 0;
  app.add_flag("--json", o.json, "Emit machine-readable JSON");

  auto* validate_cmd = app.add_subcommand("validate", "Check a capacity file for monotonicity");
  validate_cmd->add_option("capacity", o.capacity, "Capacity file")->required();
  validate_cmd->add_option("--tol", o.tolerance, "Monotonicity tolerance");

  auto* aggregate_cmd = app.add_subcommand("aggregate", "Global concept scores in file order");
  aggregate_cmd->add_option("capacity", o.capacity, "Capacity file")->required();
  aggregate_cmd->add_option("concepts", o.concepts, "Concepts file")->required();

  auto* rank_cmd = app.add_subcommand("rank", "Rank concepts by global concept score");
  rank_cmd->add_option("capacity", o.capacity, "Capacity file")->required();
  rank_cmd->add_option("concepts", o.concepts, "Concepts file")->required();

  auto* indices_cmd = app.add_subcommand("indices", "Shapley values, interactions and pair semantics");
  indices_cmd->add_option("capacity", o.capacity, "Capacity file")->required();
  indices_cmd->add_option("--tol", o.tolerance, "2-additivity tolerance");
  indices_cmd->add_option("--pair-tol", o.pair_tolerance, "Band around zero treated as independence");

  auto* identify_cmd = app.add_subcommand("identify", "Identify a capacity");
  identify_cmd->require_subcommand(1);
  identify_cmd->fallthrough();
  auto* sugeno_cmd = identify_cmd->add_subcommand("sugeno", "Sugeno lambda-measure from singleton densities");
  sugeno_cmd->add_option("densities", o.input, "Densities file")->required();
  auto* learn_cmd = identify_cmd->add_subcommand("learn", "Least-squares fit to learning samples");
  learn_cmd->add_option("samples", o.input, "Learning samples file")->required();
  learn_cmd->add_option("--preferences", o.preferences, "Preference records file");
  auto* semantic_cmd = identify_cmd->add_subcommand("semantic", "Projection under linguistic constraints");
  semantic_cmd->add_option("constraints", o.input, "Linguistic constraints file")->required();
  semantic_cmd->add_option("--samples", o.samples, "Learning samples referenced by interval scores");
  semantic_cmd->add_option("--preferences", o.preferences, "Preference records file");
  semantic_cmd->add_option("--n", semantic_n, "Criterion count when no samples are given");
  for (auto* cmd : {sugeno_cmd, learn_cmd, semantic_cmd})
    cmd->add_option("-o,--output", o.output, "Write the capacity file here");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
  serve_cmd->add_option("--port", o.service.port, "Port (CAPACITY_STUDIO_PORT)");
  serve_cmd->add_option("--host", o.service.host, "Bind address");
  serve_cmd->add_option("--static", o.service.static_dir, "Directory served at /");
  serve_cmd->add_option("--snapshot", o.service.snapshot, "Session snapshot file");
  serve_cmd->add_option("--tol", o.service.tolerance, "Validity tolerance (CAPACITY_STUDIO_TOL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out, err);
    if (*aggregate_cmd) return cmd_aggregate(o, out);
    if (*rank_cmd) return cmd_rank(o, out);
    if (*indices_cmd) return cmd_indices(o, out);
    if (*sugeno_cmd) return cmd_identify_sugeno(o, out);
    if (*learn_cmd) return cmd_identify_learn(o, out, err);
    if (*semantic_cmd) return cmd_identify_semantic(o, out, semantic_n);
    if (*serve_cmd) return cmd_serve(o, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    if (o.json) out << io::dump(io::infeasibility_to_json(e.report()));
    return kExitInfeasible;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace capstudio::tools
