// Command-line front end: analyze functions, build and filter cognate
// ensembles, run constrained searches, assemble and inspect replacement
// tables, and elect the optimal variant. Subcommands communicate only
// through the documented file formats, so every pipeline stage is
// independently scriptable.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cognate/cognate.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cognate;

constexpr int kExitOk = 0;
constexpr int kExitBudget = 1;   // search budget exhausted
constexpr int kExitInvalid = 2;  // malformed input or impossible request

struct GlobalOptions {
  std::string out;  // empty means standard output
  std::uint64_t seed = 0;
  bool quiet = false;
};

void warn(const GlobalOptions& g, const std::string& message) {
  if (!g.quiet) std::cerr << "warning: " << message << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_output(const GlobalOptions& g, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + g.out + "'");
  out << content;
}

std::string fnv1a64_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// Honors SOURCE_DATE_EPOCH so archived runs can carry a frozen timestamp.
std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct InputDigest {
  std::string path;
  std::string digest;
};

json make_manifest(const std::string& subcommand, json config,
                   std::uint64_t seed, const std::vector<InputDigest>& inputs) {
  json m;
  m["tool"] = "cognate";
  m["version"] = kVersionString;
  m["subcommand"] = subcommand;
  m["config"] = std::move(config);
  m["seed"] = seed;
  json in = json::object();
  for (const auto& i : inputs) in[i.path] = i.digest;
  m["inputs"] = std::move(in);
  m["timestamp"] = utc_timestamp();
  return m;
}

json report_json(const PropertyReport& r) {
  json j;
  j["n"] = r.n;
  j["weight"] = r.weight;
  j["balanced"] = r.balanced;
  j["nonlinearity"] = r.nonlinearity;
  j["algebraic_degree"] = r.algebraic_degree;
  j["absolute_indicator"] = r.absolute_indicator;
  j["sum_of_squares"] = r.sum_of_squares;
  j["ci_order"] = r.ci_order;
  if (r.resiliency_order)
    j["resiliency_order"] = *r.resiliency_order;
  else
    j["resiliency_order"] = nullptr;
  if (r.algebraic_immunity)
    j["algebraic_immunity"] = *r.algebraic_immunity;
  else
    j["algebraic_immunity"] = nullptr;
  j["is_bent"] = r.is_bent;
  j["linear_structures"] = r.linear_structures;
  return j;
}

json constraints_json(const ConstraintSystem& cs) {
  json j = json::object();
  if (cs.n != 0) j["n"] = cs.n;
  if (cs.min_nonlinearity) j["min_nonlinearity"] = *cs.min_nonlinearity;
  if (cs.max_absolute_indicator)
    j["max_absolute_indicator"] = *cs.max_absolute_indicator;
  if (cs.max_sum_of_squares) j["max_sum_of_squares"] = *cs.max_sum_of_squares;
  if (cs.require_balanced) j["require_balanced"] = true;
  if (cs.min_degree) j["min_degree"] = *cs.min_degree;
  if (cs.min_ci_order) j["min_ci_order"] = *cs.min_ci_order;
  if (cs.min_algebraic_immunity)
    j["min_algebraic_immunity"] = *cs.min_algebraic_immunity;
  return j;
}

int run_analyze(const GlobalOptions& g, const std::string& table_path) {
  const std::string text = read_file(table_path);
  const TruthTable f = parse_truth_table(text);
  json out;
  out["manifest"] = make_manifest("analyze", json::object(), g.seed,
                                  {{table_path, fnv1a64_digest(text)}});
  out["table"] = format_truth_table(f);
  out["report"] = report_json(classify(f));
  write_output(g, out.dump(2) + "\n");
  return kExitOk;
}

int run_ensemble(const GlobalOptions& g, const std::string& nominal_path,
                 const std::string& constraints_path) {
  const std::string nominal_text = read_file(nominal_path);
  const std::string constraints_text = read_file(constraints_path);
  const TruthTable nominal = parse_truth_table(nominal_text);
  const ConstraintSystem cs = parse_constraints(constraints_text);

  // Filtering is a pure sieve: an unreachable bound simply keeps nothing,
  // so feasibility findings are advisory here (search treats them as fatal).
  const FeasibilityReport feas = check_feasibility(cs);
  for (const auto& e : feas.errors) warn(g, e);
  for (const auto& w : feas.warnings) warn(g, w);

  const CognateEnsemble initial = initial_ensemble(nominal);
  const FilterResult r = filter_ensemble(initial, cs);

  const json manifest = make_manifest(
      "ensemble", json{{"constraints", constraints_json(cs)}}, g.seed,
      {{nominal_path, fnv1a64_digest(nominal_text)},
       {constraints_path, fnv1a64_digest(constraints_text)}});

  const std::size_t kept = r.ensemble.members.size();
  const std::size_t total = initial.members.size();
  std::string body = format_ensemble(r);
  const auto header_end = body.find('\n') + 1;
  body.insert(header_end, "# manifest: " + manifest.dump() + "\n# nominal_pass=" +
                              (r.nominal_check.pass ? "true" : "false") + "\n");
  body += "# kept " + std::to_string(kept) + " of " + std::to_string(total) + "\n";
  write_output(g, body);

  if (kept == 0) warn(g, "no member satisfies the constraint system");
  return kExitOk;
}

int run_search(const GlobalOptions& g, const std::string& constraints_path,
               const SearchConfig& base_cfg) {
  const std::string constraints_text = read_file(constraints_path);
  const ConstraintSystem cs = parse_constraints(constraints_text);

  SearchConfig cfg = base_cfg;
  cfg.seed = g.seed;

  const json config{{"constraints", constraints_json(cs)},
                    {"max_iterations", cfg.max_iterations},
                    {"max_restarts", cfg.max_restarts},
                    {"sample_size", cfg.sample_size}};
  const json manifest =
      make_manifest("search", config, g.seed,
                    {{constraints_path, fnv1a64_digest(constraints_text)}});

  if (cs.n < 1) {
    std::cerr << "error: the constraint file must set n\n";
    return kExitInvalid;
  }
  const FeasibilityReport feas = check_feasibility(cs);
  if (!feas.ok()) {
    for (const auto& e : feas.errors) std::cerr << "error: " << e << '\n';
    return kExitInvalid;
  }
  for (const auto& w : feas.warnings) warn(g, w);

  auto render = [&manifest](const char* status, const std::string& extra,
                            const TruthTable& f, const PropertyReport& rep) {
    std::string out = "# status: ";
    out += status;
    out += '\n';
    out += extra;
    out += "# manifest: " + manifest.dump() + "\n";
    out += "# report: " + report_json(rep).dump() + "\n";
    out += format_truth_table(f) + "\n";
    return out;
  };

  try {
    const SearchResult r = gradient_descent_search(cs, cfg);
    const std::string extra = "# restart: " + std::to_string(r.restart) +
                              " iteration: " + std::to_string(r.iteration) + "\n";
    write_output(g, render("ok", extra, r.table, r.report));
    return kExitOk;
  } catch (const SearchFailure& e) {
    warn(g, e.what());
    write_output(g, render("failed", std::string("# reason: ") + e.what() + "\n",
                           e.best(), e.best_report()));
    return kExitBudget;
  }
}

int run_sbox_build(const GlobalOptions& g,
                   const std::vector<std::string>& component_paths) {
  std::vector<TruthTable> components;
  std::vector<InputDigest> digests;
  components.reserve(component_paths.size());
  for (const auto& path : component_paths) {
    const std::string text = read_file(path);
    components.push_back(parse_truth_table(text));
    digests.push_back({path, fnv1a64_digest(text)});
  }
  const SubstitutionTable s = build_sbox(components);
  const json manifest = make_manifest(
      "sbox build",
      json{{"inputs", components.size()}, {"outputs", s.output_bits()}}, g.seed,
      digests);
  write_output(g, "# manifest: " + manifest.dump() + "\n" + format_sbox(s));
  return kExitOk;
}

int run_sbox_analyze(const GlobalOptions& g, const std::string& table_path) {
  const std::string text = read_file(table_path);
  const SubstitutionTable s = parse_sbox(text);
  const SboxReport r = sbox_report(s);

  json rep;
  rep["n"] = r.n;
  rep["m"] = r.m;
  rep["min_nonlinearity"] = r.min_nonlinearity;
  rep["max_absolute_indicator"] = r.max_absolute_indicator;
  rep["worst_linear_structure_count"] = r.worst_linear_structure_count;
  if (r.bijective)
    rep["bijective"] = *r.bijective;
  else
    rep["bijective"] = nullptr;
  json combos = json::array();
  for (std::size_t c = 0; c < r.combinations.size(); ++c) {
    json entry;
    entry["mask"] = c + 1;
    entry["report"] = report_json(r.combinations[c]);
    combos.push_back(std::move(entry));
  }
  rep["combinations"] = std::move(combos);

  json out;
  out["manifest"] = make_manifest("sbox analyze", json::object(), g.seed,
                                  {{table_path, fnv1a64_digest(text)}});
  out["report"] = std::move(rep);
  write_output(g, out.dump(2) + "\n");
  return kExitOk;
}

int run_select(const GlobalOptions& g, const std::string& ensemble_path,
               const std::string& decision_path) {
  const std::string ensemble_text = read_file(ensemble_path);
  const std::string decision_text = read_file(decision_path);
  const ParsedEnsemble ensemble = parse_ensemble(ensemble_text);
  const DecisionSpec spec = parse_decision_spec(decision_text);

  std::vector<InputDigest> digests{{ensemble_path, fnv1a64_digest(ensemble_text)},
                                   {decision_path, fnv1a64_digest(decision_text)}};

  // alternatives are the passing rows, labeled by their file position
  std::vector<std::size_t> row_of;
  std::vector<std::string> labels;
  std::vector<PropertyReport> reports;
  for (std::size_t i = 0; i < ensemble.rows.size(); ++i) {
    if (!ensemble.rows[i].pass) continue;
    row_of.push_back(i);
    labels.push_back("member" + std::to_string(i));
    reports.push_back(classify(ensemble.rows[i].table));
  }
  if (labels.empty()) {
    std::cerr << "error: the ensemble has no passing members to choose from\n";
    return kExitInvalid;
  }

  // matrix paths resolve relative to the decision file
  const auto base = std::filesystem::path(decision_path).parent_path();
  auto load_matrix = [&](const std::string& rel) {
    const std::string path = (base / rel).string();
    const std::string text = read_file(path);
    digests.push_back({path, fnv1a64_digest(text)});
    return parse_matrix(text);
  };

  DecisionProblem problem{load_matrix(spec.criteria_matrix_path), labels, {}};
  for (const auto& c : spec.criteria) {
    Criterion crit;
    crit.name = c.name;
    if (c.is_judgment) {
      crit.judgment = load_matrix(c.matrix_path);
    } else {
      crit.direction = c.direction;
      for (const auto& rep : reports)
        crit.values.push_back(metric_value(rep, c.metric_key));
    }
    problem.criteria.push_back(std::move(crit));
  }

  const SynthesisResult s = synthesize(problem);

  if (s.criteria_priorities.consistency_ratio > kConsistencyRatioLimit)
    warn(g, "criteria matrix consistency ratio " +
                std::to_string(s.criteria_priorities.consistency_ratio) +
                " exceeds " + std::to_string(kConsistencyRatioLimit));

  json out;
  out["manifest"] = make_manifest("select", json::object(), g.seed, digests);
  out["nominal"] = format_truth_table(ensemble.nominal);
  json cm;
  cm["weights"] = s.criteria_priorities.weights;
  cm["lambda_max"] = s.criteria_priorities.lambda_max;
  cm["consistency_ratio"] = s.criteria_priorities.consistency_ratio;
  cm["inconsistent"] =
      s.criteria_priorities.consistency_ratio > kConsistencyRatioLimit;
  out["criteria_matrix"] = std::move(cm);

  json crits = json::array();
  for (std::size_t c = 0; c < s.criteria.size(); ++c) {
    const auto& cs = s.criteria[c];
    json entry;
    entry["name"] = cs.name;
    entry["weight"] = s.criteria_priorities.weights[c];
    entry["kind"] = spec.criteria[c].is_judgment ? "judgment" : "measured";
    if (!spec.criteria[c].is_judgment)
      entry["metric"] = spec.criteria[c].metric_key;
    entry["scores"] = cs.scores;
    if (cs.judgment_priorities) {
      const double cr = cs.judgment_priorities->consistency_ratio;
      entry["consistency_ratio"] = cr;
      entry["inconsistent"] = cr > kConsistencyRatioLimit;
      if (cr > kConsistencyRatioLimit)
        warn(g, "judgment matrix for '" + cs.name + "' has consistency ratio " +
                    std::to_string(cr));
    }
    crits.push_back(std::move(entry));
  }
  out["criteria"] = std::move(crits);

  json ranking = json::array();
  for (const auto& alt : s.ranking) {
    json entry;
    entry["label"] = alt.label;
    entry["table"] =
        format_truth_table(ensemble.rows[row_of[alt.index]].table);
    entry["score"] = alt.score;
    ranking.push_back(std::move(entry));
  }
  out["ranking"] = std::move(ranking);
  out["elected"] = out["ranking"].front();
  write_output(g, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions g;
  CLI::App app{"Cognate-form Boolean function toolkit"};
  app.require_subcommand(1);
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Random seed for seeded subcommands");
  app.add_flag("--quiet", g.quiet, "Suppress warnings");

  int rc = kExitOk;

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "Classify one Boolean function");
  analyze->fallthrough();
  analyze->add_option("table", analyze_path, "Truth-table file")->required();
  analyze->callback([&] { rc = run_analyze(g, analyze_path); });

  std::string ens_nominal, ens_constraints;
  auto* ensemble =
      app.add_subcommand("ensemble", "Build and filter the cognate ensemble");
  ensemble->fallthrough();
  ensemble->add_option("nominal", ens_nominal, "Nominal truth-table file")
      ->required();
  ensemble->add_option("constraints", ens_constraints, "Constraint file")
      ->required();
  ensemble->callback([&] { rc = run_ensemble(g, ens_nominal, ens_constraints); });

  std::string search_constraints;
  SearchConfig search_cfg;
  auto* search =
      app.add_subcommand("search", "Hill-climb toward a constraint system");
  search->fallthrough();
  search->add_option("constraints", search_constraints, "Constraint file")
      ->required();
  search->add_option("--max-iter", search_cfg.max_iterations,
                     "Iterations per restart");
  search->add_option("--restarts", search_cfg.max_restarts, "Restart count");
  search->add_option("--sample", search_cfg.sample_size,
                     "Moves sampled per iteration (0 scans all)");
  search->callback([&] { rc = run_search(g, search_constraints, search_cfg); });

  auto* sbox = app.add_subcommand("sbox", "Assemble or inspect replacement tables");
  sbox->require_subcommand(1);
  sbox->fallthrough();

  std::vector<std::string> build_paths;
  auto* build = sbox->add_subcommand("build", "Assemble a table from components");
  build->fallthrough();
  build->add_option("components", build_paths, "Component truth-table files")
      ->required()
      ->expected(-1);
  build->callback([&] { rc = run_sbox_build(g, build_paths); });

  std::string sbox_path;
  auto* sanalyze = sbox->add_subcommand("analyze", "Classify a replacement table");
  sanalyze->fallthrough();
  sanalyze->add_option("table", sbox_path, "Table file")->required();
  sanalyze->callback([&] { rc = run_sbox_analyze(g, sbox_path); });

  std::string sel_ensemble, sel_decision;
  auto* select = app.add_subcommand("select", "Elect the optimal variant");
  select->fallthrough();
  select->add_option("ensemble", sel_ensemble, "Ensemble file")->required();
  select->add_option("decision", sel_decision, "Decision file")->required();
  select->callback([&] { rc = run_select(g, sel_ensemble, sel_decision); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", column "
              << e.column << ")\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return rc;
}
